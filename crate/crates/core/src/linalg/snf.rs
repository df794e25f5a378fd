//! Characteristic polynomials and Smith normal form over `T[t]`.

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Poly};
use crate::scalar::Scalar;

/// `det(tI − A)` by the Faddeev–LeVerrier recurrence:
/// `M₀ = 0`, `Mₖ = A Mₖ₋₁ + cₙ₋ₖ₊₁ I`, `cₙ₋ₖ = −tr(A Mₖ)/k`.
pub fn faddeev_leverrier<T: Scalar>(a: &Matrix<T>) -> Result<Poly<T>> {
    if !a.is_square() {
        return Err(Error::InvalidMorphism("characteristic polynomial of a non-square matrix".into()));
    }
    let n = a.rows();
    let mut coeffs = vec![T::zero(); n + 1];
    coeffs[n] = T::one();
    let mut m = Matrix::<T>::zeros(n, n);
    for k in 1..=n {
        m = a.mul(&m)?.add(&Matrix::identity(n).scale(&coeffs[n - k + 1]))?;
        let am = a.mul(&m)?;
        coeffs[n - k] = -am.trace() / T::from_i64(k as i64);
    }
    Ok(Poly::new(coeffs))
}

/// `χ(t) = det(A − tI) = (−1)ⁿ det(tI − A)`.
pub fn char_poly<T: Scalar>(a: &Matrix<T>) -> Result<Poly<T>> {
    let p = faddeev_leverrier(a)?;
    Ok(if a.rows() % 2 == 0 { p } else { p.neg() })
}

/// Diagonal of the Smith normal form of a square polynomial matrix, each
/// entry monic and the list in divisibility order.
pub fn smith_diagonal<T: Scalar>(mut m: Vec<Vec<Poly<T>>>) -> Result<Vec<Poly<T>>> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return Err(Error::InvalidMorphism("Smith form of a non-square matrix".into()));
    }
    let mut diagonal = Vec::with_capacity(n);
    for k in 0..n {
        loop {
            let pivot = (k..n)
                .flat_map(|i| (k..n).map(move |j| (i, j)))
                .filter(|&(i, j)| !m[i][j].is_zero())
                .min_by_key(|&(i, j)| m[i][j].degree());
            let Some((pi, pj)) = pivot else {
                break;
            };
            m.swap(k, pi);
            for row in m.iter_mut() {
                row.swap(k, pj);
            }
            let mut clean = true;
            for i in k + 1..n {
                let (q, r) = m[i][k].div_rem(&m[k][k])?;
                for j in k..n {
                    m[i][j] = m[i][j].sub(&q.mul(&m[k][j]));
                }
                clean &= r.is_zero();
            }
            for j in k + 1..n {
                let (q, r) = m[k][j].div_rem(&m[k][k])?;
                for row in m.iter_mut().skip(k) {
                    row[j] = row[j].sub(&q.mul(&row[k]));
                }
                clean &= r.is_zero();
            }
            if !clean {
                continue;
            }
            // The pivot must divide the rest of the block; if not, fold the
            // offending row into row k and go again with a smaller pivot.
            let offender = (k + 1..n).find(|&i| {
                (k + 1..n).any(|j| m[i][j].div_rem(&m[k][k]).map(|(_, r)| !r.is_zero()).unwrap_or(true))
            });
            match offender {
                Some(i) => {
                    for j in k..n {
                        m[k][j] = m[k][j].add(&m[i][j]);
                    }
                }
                None => break,
            }
        }
        diagonal.push(m[k][k].monic());
    }
    Ok(diagonal)
}

/// Invariant factors of `A`: the Smith diagonal of `tI − A`.
pub fn invariant_factors<T: Scalar>(a: &Matrix<T>) -> Result<Vec<Poly<T>>> {
    if !a.is_square() {
        return Err(Error::InvalidMorphism("invariant factors of a non-square matrix".into()));
    }
    let n = a.rows();
    let m: Vec<Vec<Poly<T>>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let entry = Poly::constant(-a[(i, j)].clone());
                    if i == j {
                        entry.add(&Poly::t())
                    } else {
                        entry
                    }
                })
                .collect()
        })
        .collect();
    let mut diagonal = smith_diagonal(m)?;
    diagonal.sort_by_key(|p| p.degree());
    Ok(diagonal)
}
