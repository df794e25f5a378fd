//! Finite sets with the surjection/injection factorization.
//!
//! Points are 0-based indices and subsets are sorted index lists.

use std::collections::BTreeSet;

use crate::category::{Concrete, FactorizationSystem};
use crate::error::{Error, Result};
use crate::perm::{self, CycleType};
use crate::power::{self, PowerCycle};
use crate::verdict::Verdict;

/// A function `{0..n} → {0..m}` stored as its table.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FinFunction {
    codomain: usize,
    table: Vec<usize>,
}

impl FinFunction {
    pub fn new(codomain: usize, table: Vec<usize>) -> Result<Self> {
        if let Some((x, &y)) = table.iter().enumerate().find(|(_, &y)| y >= codomain) {
            return Err(Error::InvalidMorphism(format!(
                "table entry {x} ↦ {y} is outside a codomain of size {codomain}"
            )));
        }
        Ok(Self { codomain, table })
    }

    /// An endomorphism of `{0..table.len()}`.
    pub fn endo(table: Vec<usize>) -> Result<Self> {
        Self::new(table.len(), table)
    }

    pub fn identity(n: usize) -> Self {
        Self { codomain: n, table: (0..n).collect() }
    }

    pub fn domain(&self) -> usize {
        self.table.len()
    }

    pub fn codomain(&self) -> usize {
        self.codomain
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn apply(&self, x: usize) -> usize {
        self.table[x]
    }

    pub fn is_endo(&self) -> bool {
        self.codomain == self.table.len()
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.codomain];
        self.table.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
    }

    pub fn is_surjective(&self) -> bool {
        self.image().len() == self.codomain
    }

    pub fn is_bijective(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    /// Sorted distinct values.
    pub fn image(&self) -> Vec<usize> {
        let set: BTreeSet<usize> = self.table.iter().copied().collect();
        set.into_iter().collect()
    }

    /// `self ∘ f`.
    pub fn after(&self, f: &FinFunction) -> Result<FinFunction> {
        if f.codomain != self.domain() {
            return Err(Error::Composition(format!(
                "codomain {} does not match domain {}",
                f.codomain,
                self.domain()
            )));
        }
        Ok(FinFunction { codomain: self.codomain, table: f.table.iter().map(|&x| self.table[x]).collect() })
    }
}

fn require_endo(f: &FinFunction) -> Result<()> {
    if f.is_endo() {
        Ok(())
    } else {
        Err(Error::InvalidMorphism(format!(
            "expected an endomorphism, got a map {} → {}",
            f.domain(),
            f.codomain()
        )))
    }
}

/// The category of finite sets.
#[derive(Debug, Clone, Copy, Default)]
pub struct FinSet;

impl FactorizationSystem for FinSet {
    type Object = usize;
    type Morphism = FinFunction;
    const NAME: &'static str = "finset";

    fn domain(f: &FinFunction) -> usize {
        f.domain()
    }

    fn codomain(f: &FinFunction) -> usize {
        f.codomain
    }

    fn size(x: &usize) -> usize {
        *x
    }

    fn validate_object(_x: &usize) -> Result<()> {
        Ok(())
    }

    fn validate(f: &FinFunction) -> Result<()> {
        FinFunction::new(f.codomain, f.table.clone()).map(|_| ())
    }

    fn identity(x: &usize) -> FinFunction {
        FinFunction::identity(*x)
    }

    fn compose(g: &FinFunction, f: &FinFunction) -> Result<FinFunction> {
        g.after(f)
    }

    fn equal(a: &FinFunction, b: &FinFunction) -> bool {
        a == b
    }

    fn factorize(f: &FinFunction) -> (FinFunction, FinFunction) {
        factorize_finset(f)
    }

    fn is_embedding(f: &FinFunction) -> bool {
        f.is_injective()
    }

    fn is_covering(f: &FinFunction) -> bool {
        f.is_surjective()
    }

    fn invert_iso(f: &FinFunction) -> Result<FinFunction> {
        if !f.is_bijective() {
            return Err(Error::NotInvertible(format!("{:?} is not a bijection", f.table)));
        }
        Ok(FinFunction { codomain: f.domain(), table: perm::inverse(&f.table) })
    }

    fn same_subobject(a: &FinFunction, b: &FinFunction) -> bool {
        a.codomain == b.codomain && a.image() == b.image()
    }

    fn subobject_contained(a: &FinFunction, b: &FinFunction) -> bool {
        let outer: BTreeSet<usize> = b.table.iter().copied().collect();
        a.codomain == b.codomain && a.table.iter().all(|y| outer.contains(y))
    }

    fn same_quotient(a: &FinFunction, b: &FinFunction) -> bool {
        same_kernel(&a.table, &b.table)
    }

    fn conjugating_iso(a: &FinFunction, b: &FinFunction) -> Option<FinFunction> {
        if !a.is_bijective() || !b.is_bijective() {
            return None;
        }
        perm::search_conjugator(&a.table, &b.table, &|_, _, _, _| true)
            .map(|table| FinFunction { codomain: b.domain(), table })
    }

    fn enumerate_objects(max_size: usize) -> Option<Vec<usize>> {
        Some((0..=max_size).collect())
    }

    fn enumerate_morphisms(x: &usize, y: &usize) -> Option<Vec<FinFunction>> {
        Some(all_tables(*x, *y).into_iter().map(|table| FinFunction { codomain: *y, table }).collect())
    }

    fn enumerate_subobjects(x: &usize, guard: u128) -> Option<Vec<FinFunction>> {
        subsets(*x, guard).map(|subs| {
            subs.into_iter().map(|table| FinFunction { codomain: *x, table }).collect()
        })
    }
}

impl Concrete for FinSet {
    fn table(f: &FinFunction) -> &[usize] {
        &f.table
    }
}

/// Whether two tables on the same domain identify the same pairs of points.
pub(crate) fn same_kernel(a: &[usize], b: &[usize]) -> bool {
    a.len() == b.len()
        && (0..a.len()).all(|x| (0..a.len()).all(|y| (a[x] == a[y]) == (b[x] == b[y])))
}

/// Every table `{0..n} → {0..m}` in lexicographic order.
pub(crate) fn all_tables(n: usize, m: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    if m == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut current = vec![0usize; n];
    loop {
        out.push(current.clone());
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            current[i] += 1;
            if current[i] < m {
                break;
            }
            current[i] = 0;
        }
    }
}

/// Every subset of `{0..n}` as a sorted list, if there are at most `guard`.
pub(crate) fn subsets(n: usize, guard: u128) -> Option<Vec<Vec<usize>>> {
    if n >= 127 || (1u128 << n) > guard {
        return None;
    }
    Some(
        (0u128..(1u128 << n))
            .map(|mask| (0..n).filter(|&i| mask >> i & 1 == 1).collect())
            .collect(),
    )
}

/// Surjection onto the sorted image followed by its inclusion.
pub fn factorize_finset(f: &FinFunction) -> (FinFunction, FinFunction) {
    let image = f.image();
    let mut position = vec![usize::MAX; f.codomain];
    for (i, &y) in image.iter().enumerate() {
        position[y] = i;
    }
    let cover = FinFunction { codomain: image.len(), table: f.table.iter().map(|&y| position[y]).collect() };
    let embed = FinFunction { codomain: f.codomain, table: image };
    (cover, embed)
}

/// Points `x` with `f^k(x) = x` for some `k ≥ 1`.
pub fn periodic_points(f: &FinFunction) -> Result<Vec<usize>> {
    require_endo(f)?;
    let n = f.domain();
    Ok((0..n)
        .filter(|&x| {
            let mut y = f.apply(x);
            for _ in 0..n {
                if y == x {
                    return true;
                }
                y = f.apply(y);
            }
            false
        })
        .collect())
}

/// `f^∞(x)` by applying `f` `|X|` times and then the inverse of the induced
/// permutation of `im f^{|X|}` the same number of times.
pub fn back_and_forth(f: &FinFunction, x: usize) -> Result<usize> {
    require_endo(f)?;
    let n = f.domain();
    if x >= n {
        return Err(Error::InvalidMorphism(format!("point {x} outside a set of size {n}")));
    }
    let forward = |y: usize, times: usize| (0..times).fold(y, |z, _| f.apply(z));
    let eventual: BTreeSet<usize> = (0..n).map(|y| forward(y, n)).collect();
    let mut backward = vec![usize::MAX; n];
    for &y in &eventual {
        backward[f.apply(y)] = y;
    }
    Ok((0..n).fold(forward(x, n), |y, _| backward[y]))
}

/// Largest set size accepted by [`factorial_power`].
pub const FACTORIAL_POWER_GUARD: usize = 12;

/// `f^{|X|!}` by repeated squaring.
pub fn factorial_power(f: &FinFunction) -> Result<FinFunction> {
    require_endo(f)?;
    let n = f.domain();
    if n > FACTORIAL_POWER_GUARD {
        return Err(Error::GuardExceeded {
            what: format!("|X|! for |X| = {n}"),
            limit: FACTORIAL_POWER_GUARD as u128,
        });
    }
    let exponent = power::factorial_cap(n) as u64;
    crate::category::power::<FinSet>(f, exponent)
}

/// The idempotent among `f, f², …`, with the shape of the power sequence.
/// Every idempotent power up to preperiod + period is checked to coincide.
pub fn unique_idempotent_in_powers(f: &FinFunction) -> Result<PowerCycle<FinFunction>> {
    require_endo(f)?;
    let cycle = power::idempotent_power::<FinSet>(f, power::factorial_cap(f.domain()))?;
    let mut current = f.clone();
    for k in 1..=cycle.preperiod + cycle.period {
        let square = current.after(&current)?;
        if square == current && current != cycle.idempotent {
            return Err(Error::ContractViolation(format!(
                "f^{k} is a second idempotent power"
            )));
        }
        current = current.after(f)?;
    }
    Ok(cycle)
}

pub fn cycle_type(p: &FinFunction) -> Result<CycleType> {
    if !p.is_endo() || !p.is_bijective() {
        return Err(Error::NotInvertible(format!("{:?} is not a permutation", p.table)));
    }
    Ok(perm::cycle_type(&p.table))
}

/// A bijection `k` with `k ∘ p = q ∘ k`, if the permutations are conjugate.
pub fn conjugator(p: &FinFunction, q: &FinFunction) -> Result<Option<FinFunction>> {
    cycle_type(p)?;
    cycle_type(q)?;
    Ok(FinSet::conjugating_iso(p, q))
}

/// Conjugacy decided by cycle type, with an explicit conjugator on success.
pub fn conjugate(p: &FinFunction, q: &FinFunction) -> Result<Verdict> {
    let (tp, tq) = (cycle_type(p)?, cycle_type(q)?);
    Ok(match conjugator(p, q)? {
        Some(k) => Verdict::pass(format!("cycle types {tp} = {tq}; conjugator {:?}", k.table)),
        None => Verdict::fail(format!("cycle types differ: {tp} vs {tq}")),
    })
}
