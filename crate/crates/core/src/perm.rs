//! Permutations stored as tables: cycle decomposition, cycle type and
//! conjugator search.

use std::fmt;

/// Multiset of cycle lengths, sorted in decreasing order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycleType(pub Vec<usize>);

impl CycleType {
    pub fn carrier_size(&self) -> usize {
        self.0.iter().sum()
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|l| l.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

pub fn is_permutation(table: &[usize]) -> bool {
    let mut seen = vec![false; table.len()];
    for &y in table {
        if y >= table.len() || seen[y] {
            return false;
        }
        seen[y] = true;
    }
    true
}

/// Cycles of a permutation, each starting at its least point, ordered by
/// that point.
pub fn cycles(p: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; p.len()];
    let mut out = Vec::new();
    for start in 0..p.len() {
        if seen[start] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            cycle.push(x);
            x = p[x];
        }
        out.push(cycle);
    }
    out
}

pub fn cycle_type(p: &[usize]) -> CycleType {
    let mut lengths: Vec<usize> = cycles(p).iter().map(Vec::len).collect();
    lengths.sort_unstable_by(|a, b| b.cmp(a));
    CycleType(lengths)
}

/// Inverse by walking each cycle backwards.
pub fn inverse(p: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; p.len()];
    for cycle in cycles(p) {
        for (i, &x) in cycle.iter().enumerate() {
            inv[cycle[(i + 1) % cycle.len()]] = x;
        }
    }
    inv
}

/// Least order `k ≥ 1` with `p^k = 1`.
pub fn order(p: &[usize]) -> u64 {
    cycles(p).iter().fold(1u64, |acc, c| num_integer::lcm(acc, c.len() as u64))
}

/// Searches for a bijection `k` with `k ∘ p = q ∘ k` that also satisfies
/// `compatible(x, y, x', y')` for every pair of assignments `x ↦ y`,
/// `x' ↦ y'`. Cycles of `p` are sent to cycles of `q` of equal length, one
/// rotation at a time, so only structure-respecting candidates are tried.
pub fn search_conjugator(
    p: &[usize],
    q: &[usize],
    compatible: &dyn Fn(usize, usize, usize, usize) -> bool,
) -> Option<Vec<usize>> {
    if p.len() != q.len() || cycle_type(p) != cycle_type(q) {
        return None;
    }
    let p_cycles = cycles(p);
    let q_cycles = cycles(q);
    let mut assignment: Vec<Option<usize>> = vec![None; p.len()];
    let mut used = vec![false; q_cycles.len()];
    if extend(&p_cycles, &q_cycles, 0, &mut assignment, &mut used, compatible) {
        Some(assignment.into_iter().map(|y| y.expect("every point assigned")).collect())
    } else {
        None
    }
}

fn extend(
    p_cycles: &[Vec<usize>],
    q_cycles: &[Vec<usize>],
    next: usize,
    assignment: &mut Vec<Option<usize>>,
    used: &mut Vec<bool>,
    compatible: &dyn Fn(usize, usize, usize, usize) -> bool,
) -> bool {
    let Some(cycle) = p_cycles.get(next) else {
        return true;
    };
    let len = cycle.len();
    for (qi, target) in q_cycles.iter().enumerate() {
        if used[qi] || target.len() != len {
            continue;
        }
        for offset in 0..len {
            let pairs: Vec<(usize, usize)> =
                (0..len).map(|i| (cycle[i], target[(i + offset) % len])).collect();
            let fits = pairs.iter().all(|&(x, y)| {
                pairs.iter().all(|&(x2, y2)| compatible(x, y, x2, y2))
                    && assignment
                        .iter()
                        .enumerate()
                        .filter_map(|(x2, y2)| y2.map(|y2| (x2, y2)))
                        .all(|(x2, y2)| compatible(x, y, x2, y2))
            });
            if !fits {
                continue;
            }
            for &(x, y) in &pairs {
                assignment[x] = Some(y);
            }
            used[qi] = true;
            if extend(p_cycles, q_cycles, next + 1, assignment, used, compatible) {
                return true;
            }
            used[qi] = false;
            for &(x, _) in &pairs {
                assignment[x] = None;
            }
        }
    }
    false
}
