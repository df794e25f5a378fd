//! Seedable random inputs for property tests and the CLI axiom suite.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::finmet::{Metric, ShortMap};
use crate::finposet::{MonotoneMap, Poset};
use crate::finset::FinFunction;
use crate::linalg::{Matrix, Poly};
use crate::scalar::Scalar;

pub fn endo_table<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<usize> {
    (0..n).map(|_| rng.gen_range(0..n)).collect()
}

pub fn fin_endo<R: Rng + ?Sized>(rng: &mut R, n: usize) -> FinFunction {
    FinFunction::endo(endo_table(rng, n)).expect("entries in range")
}

pub fn permutation<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

/// `p/q` with `|p| ≤ bound` and `1 ≤ q ≤ 3`.
pub fn rational<T: Scalar, R: Rng + ?Sized>(rng: &mut R, bound: i64) -> T {
    T::from_frac(rng.gen_range(-bound..=bound), rng.gen_range(1..=3))
}

fn dense<T: Scalar, R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize, bound: i64) -> Matrix<T> {
    let mut m = Matrix::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            m[(i, j)] = rational(rng, bound);
        }
    }
    m
}

/// Unit lower triangular times upper triangular with nonzero diagonal.
pub fn invertible_matrix<T: Scalar, R: Rng + ?Sized>(rng: &mut R, n: usize) -> Matrix<T> {
    let mut lower = Matrix::<T>::identity(n);
    let mut upper = Matrix::<T>::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            if j < i {
                lower[(i, j)] = T::from_i64(rng.gen_range(-2..=2));
            } else if j > i {
                upper[(i, j)] = rational(rng, 3);
            } else {
                let mut d = 0;
                while d == 0 {
                    d = rng.gen_range(-3..=3);
                }
                upper[(i, i)] = T::from_frac(d, rng.gen_range(1..=2));
            }
        }
    }
    lower.mul(&upper).expect("square factors")
}

/// Strictly upper triangular with random entries, hence nilpotent.
fn nilpotent<T: Scalar, R: Rng + ?Sized>(rng: &mut R, n: usize) -> Matrix<T> {
    let mut m = Matrix::zeros(n, n);
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(0.6) {
                m[(i, j)] = T::from_i64(rng.gen_range(-2..=2));
            }
        }
    }
    m
}

fn block_diagonal<T: Scalar>(a: &Matrix<T>, b: &Matrix<T>) -> Matrix<T> {
    let n = a.rows() + b.rows();
    let mut m = Matrix::zeros(n, n);
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            m[(i, j)] = a[(i, j)].clone();
        }
    }
    for i in 0..b.rows() {
        for j in 0..b.cols() {
            m[(a.rows() + i, a.cols() + j)] = b[(i, j)].clone();
        }
    }
    m
}

/// A square matrix drawn from a mix of shapes: dense small rationals,
/// low-rank products, and a conjugated invertible block beside a nilpotent
/// one, so singular inputs with long image chains are common.
pub fn matrix<T: Scalar, R: Rng + ?Sized>(rng: &mut R, n: usize) -> Matrix<T> {
    match rng.gen_range(0..3) {
        0 => dense(rng, n, n, 3),
        1 => {
            let r = rng.gen_range(0..=n);
            dense::<T, R>(rng, n, r, 2).mul(&dense(rng, r, n, 2)).expect("shapes agree")
        }
        _ => {
            let k = rng.gen_range(0..=n);
            let block = block_diagonal(&invertible_matrix::<T, R>(rng, k), &nilpotent(rng, n - k));
            let p = invertible_matrix::<T, R>(rng, n);
            let p_inv = p.inverse().expect("invertible by construction");
            p.mul(&block).and_then(|m| m.mul(&p_inv)).expect("square factors")
        }
    }
}

/// Commuting `p(T)`, `q(T)` for a random upper triangular `T`, conjugated by
/// a random invertible matrix.
pub fn commuting_pair<T: Scalar, R: Rng + ?Sized>(rng: &mut R, n: usize) -> (Matrix<T>, Matrix<T>) {
    let mut t = Matrix::<T>::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            t[(i, j)] = T::from_i64(rng.gen_range(-2..=2));
        }
    }
    let poly = |rng: &mut R| Poly::new((0..3).map(|_| T::from_i64(rng.gen_range(-2..=2))).collect());
    let (p, q) = (poly(rng), poly(rng));
    let conj = invertible_matrix::<T, R>(rng, n);
    let conj_inv = conj.inverse().expect("invertible by construction");
    let wrap = |m: Matrix<T>| conj.mul(&m).and_then(|x| x.mul(&conj_inv)).expect("square factors");
    (wrap(p.eval_matrix(&t).expect("square")), wrap(q.eval_matrix(&t).expect("square")))
}

/// A random metric: shortest-path distances over random positive edge weights.
pub fn metric<T: Scalar, R: Rng + ?Sized>(rng: &mut R, n: usize) -> Metric<T> {
    let mut d: Vec<Vec<T>> = vec![vec![T::zero(); n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let w = T::from_frac(rng.gen_range(1..=6), rng.gen_range(1..=2));
            d[i][j] = w.clone();
            d[j][i] = w;
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = d[i][k].clone() + d[k][j].clone();
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    Metric::new(d).expect("shortest paths form a metric")
}

/// A metric for which `table` is short:
/// `d(x, y) = Σ_{k ≤ K} c_k [f^k x ≠ f^k y]` with `0 < c₀ ≤ c₁ ≤ ⋯`.
pub fn metric_for_table<T: Scalar, R: Rng + ?Sized>(rng: &mut R, table: &[usize]) -> Metric<T> {
    let n = table.len();
    let mut weights = Vec::with_capacity(n + 1);
    let mut c = T::from_frac(rng.gen_range(1..=3), rng.gen_range(1..=3));
    for _ in 0..=n {
        weights.push(c.clone());
        c = c + T::from_frac(rng.gen_range(0..=2), rng.gen_range(1..=3));
    }
    let orbits: Vec<Vec<usize>> = (0..n)
        .map(|x| std::iter::successors(Some(x), |&y| Some(table[y])).take(n + 1).collect())
        .collect();
    let d = (0..n)
        .map(|x| {
            (0..n)
                .map(|y| {
                    (0..=n)
                        .filter(|&k| orbits[x][k] != orbits[y][k])
                        .fold(T::zero(), |acc, k| acc + weights[k].clone())
                })
                .collect()
        })
        .collect();
    Metric::new(d).expect("sum of orbit pseudometrics is a metric")
}

/// A short endomorphism of `space`, assigned point by point in random
/// order with backtracking. The constant maps guarantee success.
pub fn short_endo<T: Scalar, R: Rng + ?Sized>(rng: &mut R, space: &Arc<Metric<T>>) -> ShortMap<T> {
    let n = space.len();
    let ok = |x: usize, fx: usize, assigned: &[Option<usize>]| {
        assigned
            .iter()
            .enumerate()
            .all(|(y, fy)| fy.is_none_or(|fy| space.d(fx, fy) <= space.d(x, y)))
    };
    let table = assign(rng, n, n, &ok);
    ShortMap::endo(space.clone(), table).expect("short by construction")
}

/// A monotone endomorphism of `poset`, assigned with randomized backtracking.
pub fn monotone_endo<R: Rng + ?Sized>(rng: &mut R, poset: &Arc<Poset>) -> MonotoneMap {
    let n = poset.len();
    let ok = |x: usize, fx: usize, assigned: &[Option<usize>]| {
        assigned.iter().enumerate().all(|(y, fy)| {
            fy.is_none_or(|fy| (!poset.le(x, y) || poset.le(fx, fy)) && (!poset.le(y, x) || poset.le(fy, fx)))
        })
    };
    let table = assign(rng, n, n, &ok);
    MonotoneMap::endo(poset.clone(), table).expect("monotone by construction")
}

fn assign<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    m: usize,
    ok: &dyn Fn(usize, usize, &[Option<usize>]) -> bool,
) -> Vec<usize> {
    fn go<R: Rng + ?Sized>(
        rng: &mut R,
        order: &[usize],
        m: usize,
        assigned: &mut Vec<Option<usize>>,
        ok: &dyn Fn(usize, usize, &[Option<usize>]) -> bool,
    ) -> bool {
        let Some((&x, rest)) = order.split_first() else {
            return true;
        };
        let mut candidates: Vec<usize> = (0..m).collect();
        candidates.shuffle(rng);
        for fx in candidates {
            if ok(x, fx, assigned) {
                assigned[x] = Some(fx);
                if go(rng, rest, m, assigned, ok) {
                    return true;
                }
                assigned[x] = None;
            }
        }
        false
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut assigned = vec![None; n];
    assert!(go(rng, &order, m, &mut assigned, ok), "a constant map always fits");
    assigned.into_iter().map(|y| y.expect("assigned")).collect()
}

/// A random poset: edges of a random DAG, then their transitive closure.
pub fn poset<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Poset {
    let rank = permutation(rng, n);
    let density = rng.gen_range(0.1..0.6);
    let mut le: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| i == j).collect()).collect();
    for i in 0..n {
        for j in 0..n {
            if rank[i] < rank[j] && rng.gen_bool(density) {
                le[i][j] = true;
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if le[i][k] && le[k][j] {
                    le[i][j] = true;
                }
            }
        }
    }
    Poset::new(le).expect("closure of a DAG is a partial order")
}
