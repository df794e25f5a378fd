//! Finite-dimensional vector spaces over an exact field.
//!
//! Objects are dimensions and morphisms `Tᵐ → Tⁿ` are `n × m` matrices
//! acting on column vectors. Embeddings are injective maps, coverings are
//! surjective maps, and a map factors through the canonical echelon basis
//! of its column space.

use std::marker::PhantomData;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::category::FactorizationSystem;
use crate::error::{Error, Result};
use crate::linalg::snf;
use crate::linalg::{Matrix, Poly, SubspaceBasis};
use crate::scalar::Scalar;
use crate::verdict::Verdict;

/// The category of finite-dimensional spaces `Tⁿ`.
#[derive(Debug, Clone, Copy, Default)]
pub struct FdVect<T>(PhantomData<T>);

fn require_square<T: Scalar>(f: &Matrix<T>, what: &str) -> Result<usize> {
    if f.is_square() {
        Ok(f.rows())
    } else {
        Err(Error::InvalidMorphism(format!("{what} needs a square matrix, got {}×{}", f.rows(), f.cols())))
    }
}

impl<T: Scalar> FactorizationSystem for FdVect<T> {
    type Object = usize;
    type Morphism = Matrix<T>;
    const NAME: &'static str = "fdvect";

    fn domain(f: &Matrix<T>) -> usize {
        f.cols()
    }

    fn codomain(f: &Matrix<T>) -> usize {
        f.rows()
    }

    fn size(x: &usize) -> usize {
        *x
    }

    fn validate_object(_x: &usize) -> Result<()> {
        Ok(())
    }

    fn validate(_f: &Matrix<T>) -> Result<()> {
        Ok(())
    }

    fn identity(x: &usize) -> Matrix<T> {
        Matrix::identity(*x)
    }

    fn compose(g: &Matrix<T>, f: &Matrix<T>) -> Result<Matrix<T>> {
        g.mul(f)
    }

    fn equal(a: &Matrix<T>, b: &Matrix<T>) -> bool {
        a == b
    }

    fn factorize(f: &Matrix<T>) -> (Matrix<T>, Matrix<T>) {
        let image = image_basis(f);
        // Basis vector i is 1 at pivot i and 0 at the other pivots, so the
        // coordinates of each column are its entries at the pivot rows.
        let cover = f.select_rows(image.pivots());
        (cover, image.as_matrix())
    }

    fn is_embedding(f: &Matrix<T>) -> bool {
        f.rank() == f.cols()
    }

    fn is_covering(f: &Matrix<T>) -> bool {
        f.rank() == f.rows()
    }

    fn invert_iso(f: &Matrix<T>) -> Result<Matrix<T>> {
        inverse_cayley_hamilton(f)
    }

    fn same_subobject(a: &Matrix<T>, b: &Matrix<T>) -> bool {
        a.rows() == b.rows() && image_basis(a) == image_basis(b)
    }

    fn subobject_contained(a: &Matrix<T>, b: &Matrix<T>) -> bool {
        a.rows() == b.rows() && image_basis(a).is_subspace_of(&image_basis(b))
    }

    fn same_quotient(a: &Matrix<T>, b: &Matrix<T>) -> bool {
        a.cols() == b.cols() && kernel_basis(a) == kernel_basis(b)
    }

    fn conjugating_iso(a: &Matrix<T>, b: &Matrix<T>) -> Option<Matrix<T>> {
        conjugator(a, b).ok().flatten()
    }

    /// `r(f)^{dim}` where `χ_f = ±tⁱ h(t)` and `r(t) = 1 − h(t)/h(0)`.
    ///
    /// The power sequence of a matrix over an infinite field need not be
    /// eventually periodic, so instead of searching it this takes the
    /// idempotent from the span of `f, f², …` directly: `h` annihilates the
    /// invertible part, so `r(f)` is the identity there and nilpotent on the
    /// eventual kernel.
    fn power_closure_idempotent(f: &Matrix<T>) -> Result<Matrix<T>> {
        let n = require_square(f, "power-closure idempotent")?;
        let (_, h) = char_poly(f)?.strip_t_power();
        let r = Poly::one().sub(&h.scale(&(T::one() / h.coeff(0))));
        r.eval_matrix(f)?.pow(n as u64)
    }
}

pub fn rank<T: Scalar>(m: &Matrix<T>) -> usize {
    m.rank()
}

pub fn image_basis<T: Scalar>(m: &Matrix<T>) -> SubspaceBasis<T> {
    SubspaceBasis::column_space(m)
}

pub fn kernel_basis<T: Scalar>(m: &Matrix<T>) -> SubspaceBasis<T> {
    SubspaceBasis::kernel(m)
}

/// `χ_f(t) = det(f − tI)`.
pub fn char_poly<T: Scalar>(f: &Matrix<T>) -> Result<Poly<T>> {
    snf::char_poly(f)
}

/// The matrix of `f` on an `f`-invariant subspace, in its canonical basis.
pub fn restrict<T: Scalar>(f: &Matrix<T>, subspace: &SubspaceBasis<T>) -> Result<Matrix<T>> {
    let columns = subspace
        .vectors()
        .iter()
        .map(|v| {
            subspace.coordinates(&f.apply(v)).ok_or_else(|| {
                Error::InvalidMorphism(format!("subspace is not invariant: f{v:?} leaves it"))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_columns(&columns, subspace.dim()))
}

/// Fitting decomposition `X = ei f ⊕ ek f`.
#[derive(Clone)]
pub struct Fitting<T> {
    /// `im f^{dim X}`.
    pub ei: SubspaceBasis<T>,
    /// `ker f^{dim X}`.
    pub ek: SubspaceBasis<T>,
    /// `f` on `ei`, invertible.
    pub auto: Matrix<T>,
    /// `f` on `ek`, nilpotent.
    pub nilpotent: Matrix<T>,
}

/// Computes and verifies the Fitting decomposition of `f`.
pub fn fitting<T: Scalar>(f: &Matrix<T>) -> Result<Fitting<T>> {
    let n = require_square(f, "Fitting decomposition")?;
    let top = f.pow(n as u64)?;
    let ei = image_basis(&top);
    let ek = kernel_basis(&top);
    if !ei.is_complement(&ek) {
        return Err(Error::ContractViolation("ei f and ek f are not complementary".into()));
    }
    let auto = restrict(f, &ei)?;
    let nilpotent = restrict(f, &ek)?;
    if auto.rank() != ei.dim() {
        return Err(Error::ContractViolation("f is not invertible on ei f".into()));
    }
    if !nilpotent.pow(ek.dim() as u64)?.is_zero() {
        return Err(Error::ContractViolation("f is not nilpotent on ek f".into()));
    }
    Ok(Fitting { ei, ek, auto, nilpotent })
}

/// `q(t) = (det g − χ_g(t)) / (det g · t)`, so that `q(g) = g⁻¹`.
pub fn cayley_hamilton_polynomial<T: Scalar>(g: &Matrix<T>) -> Result<Poly<T>> {
    require_square(g, "Cayley–Hamilton inverse")?;
    let chi = char_poly(g)?;
    let det = chi.coeff(0);
    if det.is_zero() {
        return Err(Error::NotInvertible("singular matrix".into()));
    }
    let numerator = Poly::constant(det.clone()).sub(&chi);
    let shifted = Poly::new(numerator.coeffs().iter().skip(1).cloned().collect());
    Ok(shifted.scale(&(T::one() / det)))
}

/// `g⁻¹` as `q(g)`, cross-checked against Gauss–Jordan elimination.
pub fn inverse_cayley_hamilton<T: Scalar>(g: &Matrix<T>) -> Result<Matrix<T>> {
    let q = cayley_hamilton_polynomial(g)?;
    let inverse = q.eval_matrix(g)?;
    if inverse != g.inverse()? {
        return Err(Error::ContractViolation("q(g) differs from the elimination inverse".into()));
    }
    Ok(inverse)
}

/// `f^∞` as an explicit polynomial in `f`.
#[derive(Clone)]
pub struct FInfinityPoly<T> {
    pub idempotent: Matrix<T>,
    /// `r(t) = 1 − χ_{f̄}(t)/det f̄`.
    pub r: Poly<T>,
    pub exponent: usize,
    /// `r(t)^exponent`, not reduced modulo the minimal polynomial.
    pub polynomial: Poly<T>,
}

impl<T: Scalar> FInfinityPoly<T> {
    /// Whether the witness has no constant term, i.e. lies in `span{f, f², …}`.
    pub fn in_power_span(&self) -> bool {
        self.exponent == 0 || self.polynomial.coeff(0).is_zero()
    }
}

/// `f^∞ = (1 − χ_{f̄}(f)/det f̄)^n` with `n = dim X`, where `f̄` is `f` on the
/// Fitting eventual image. For nilpotent `f` the empty automorphism has
/// `χ = 1` and `det = 1`, so `r = 0`.
pub fn f_infinity_poly<T: Scalar>(f: &Matrix<T>) -> Result<FInfinityPoly<T>> {
    let n = require_square(f, "f^∞ polynomial")?;
    let fit = fitting(f)?;
    let chi = char_poly(&fit.auto)?;
    let det = fit.auto.det()?;
    let r = Poly::one().sub(&chi.scale(&(T::one() / det.clone())));
    let base = Matrix::identity(n).sub(&chi.eval_matrix(f)?.scale(&(T::one() / det)))?;
    let idempotent = base.pow(n as u64)?;
    let polynomial = r.pow(n as u32);
    if polynomial.eval_matrix(f)? != idempotent {
        return Err(Error::ContractViolation("r(t)^n evaluated at f disagrees with the base power".into()));
    }
    Ok(FInfinityPoly { idempotent, r, exponent: n, polynomial })
}

/// Whether `x ∈ span{fx, f²x, …, f^{dim}x}`.
pub fn linearly_periodic<T: Scalar>(f: &Matrix<T>, x: &[T]) -> Result<bool> {
    let n = require_square(f, "linear periodicity")?;
    if x.len() != n {
        return Err(Error::InvalidMorphism(format!("vector of length {} in dimension {n}", x.len())));
    }
    let mut krylov = Vec::with_capacity(n);
    let mut y = x.to_vec();
    for _ in 0..n {
        y = f.apply(&y);
        krylov.push(y.clone());
    }
    Ok(SubspaceBasis::span(n, &krylov).contains(x))
}

/// `ker (f − λ)^{dim}`.
pub fn generalized_eigenspace<T: Scalar>(f: &Matrix<T>, lambda: &T) -> Result<SubspaceBasis<T>> {
    let n = require_square(f, "generalized eigenspace")?;
    let shifted = f.sub(&Matrix::identity(n).scale(lambda))?;
    Ok(kernel_basis(&shifted.pow(n as u64)?))
}

/// Relation `χ_f = sign · t^p · χ_g` up to the `t`-power factors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WilliamsRelation {
    /// Exponent difference: multiplicity of `t` in `χ_f` minus that in `χ_g`.
    pub p: i64,
    pub sign: i8,
}

/// Compares `χ_f` and `χ_g` after stripping powers of `t` and signs.
pub fn williams_relation<T: Scalar>(f: &Matrix<T>, g: &Matrix<T>) -> Result<Option<WilliamsRelation>> {
    let (i, hf) = char_poly(f)?.strip_t_power();
    let (j, hg) = char_poly(g)?.strip_t_power();
    let p = i as i64 - j as i64;
    Ok(if hf == hg {
        Some(WilliamsRelation { p, sign: 1 })
    } else if hf == hg.neg() {
        Some(WilliamsRelation { p, sign: -1 })
    } else {
        None
    })
}

pub fn williams_check<T: Scalar>(f: &Matrix<T>, g: &Matrix<T>) -> Verdict {
    let describe = |m: &Matrix<T>| char_poly(m).map(|p| p.to_string()).unwrap_or_else(|e| e.to_string());
    match williams_relation(f, g) {
        Ok(Some(rel)) => Verdict::pass(format!(
            "χ_f = {}t^{}·χ_g (p = {}, sign {})",
            if rel.sign < 0 { "-" } else { "" },
            rel.p,
            rel.p,
            rel.sign
        )),
        Ok(None) => Verdict::fail(format!(
            "χ_f = {} and χ_g = {} differ beyond ±t^p",
            describe(f),
            describe(g)
        )),
        Err(e) => Verdict::fail(e.to_string()),
    }
}

pub fn invariant_factors<T: Scalar>(f: &Matrix<T>) -> Result<Vec<Poly<T>>> {
    snf::invariant_factors(f)
}

/// Nontrivial invariant factors, rendered for reports.
pub fn describe_invariant_factors<T: Scalar>(f: &Matrix<T>) -> Result<Vec<String>> {
    Ok(invariant_factors(f)?
        .into_iter()
        .filter(|p| p.degree() != Some(0))
        .map(|p| p.to_string())
        .collect())
}

/// Similarity decided by invariant factors, with an explicit conjugator.
pub fn similar<T: Scalar>(f: &Matrix<T>, g: &Matrix<T>) -> Verdict {
    let run = || -> Result<Verdict> {
        if !f.is_square() || !g.is_square() || f.rows() != g.rows() {
            return Ok(Verdict::fail(format!(
                "shapes {}×{} and {}×{} cannot be similar",
                f.rows(),
                f.cols(),
                g.rows(),
                g.cols()
            )));
        }
        let a = describe_invariant_factors(f)?;
        let b = describe_invariant_factors(g)?;
        if a != b {
            return Ok(Verdict::fail(format!("invariant factors {a:?} vs {b:?}")));
        }
        match conjugator(f, g)? {
            Some(k) => Ok(Verdict::pass(format!("invariant factors {a:?}; conjugator {k:?}"))),
            None => Ok(Verdict::fail(format!("invariant factors {a:?} agree but no conjugator was found"))),
        }
    };
    run().unwrap_or_else(|e| Verdict::fail(e.to_string()))
}

const CONJUGATOR_SEED: u64 = 0x5eed_c0de;
const CONJUGATOR_ATTEMPTS: usize = 64;

/// An invertible `k` with `k a = b k`.
///
/// Solves the linear system for all `k` and then tries seeded random integer
/// combinations of the solution basis until one is invertible. The
/// determinant is a nonzero polynomial of degree `n` in the coefficients when
/// a solution exists, so each try fails with probability at most `n/(2B+1)`.
pub fn conjugator<T: Scalar>(a: &Matrix<T>, b: &Matrix<T>) -> Result<Option<Matrix<T>>> {
    let n = require_square(a, "conjugator")?;
    if require_square(b, "conjugator")? != n {
        return Ok(None);
    }
    if invariant_factors(a)? != invariant_factors(b)? {
        return Ok(None);
    }
    // Row-major unknown k_{ij} at index i·n + j; equation (k a − b k)_{ij} = 0.
    let mut system = Matrix::<T>::zeros(n * n, n * n);
    for i in 0..n {
        for j in 0..n {
            let row = i * n + j;
            for l in 0..n {
                system[(row, i * n + l)] = system[(row, i * n + l)].clone() + a[(l, j)].clone();
                system[(row, l * n + j)] = system[(row, l * n + j)].clone() - b[(i, l)].clone();
            }
        }
    }
    let solutions = kernel_basis(&system);
    let mut rng = StdRng::seed_from_u64(CONJUGATOR_SEED);
    let bound = 10 * n.max(1) as i64;
    for _ in 0..CONJUGATOR_ATTEMPTS {
        let mut k = Matrix::<T>::zeros(n, n);
        for v in solutions.vectors() {
            let c = T::from_i64(rng.gen_range(-bound..=bound));
            for (idx, entry) in v.iter().enumerate() {
                k[(idx / n, idx % n)] = k[(idx / n, idx % n)].clone() + entry.clone() * c.clone();
            }
        }
        if !k.det()?.is_zero() {
            if k.mul(a)? != b.mul(&k)? {
                return Err(Error::ContractViolation("conjugator does not intertwine".into()));
            }
            return Ok(Some(k));
        }
    }
    Err(Error::ContractViolation(format!(
        "equal invariant factors but no invertible conjugator in {CONJUGATOR_ATTEMPTS} tries"
    )))
}

/// The coalgebra oracle for vector spaces, where the lattice of invariant
/// subspaces cannot be enumerated.
///
/// Any `A ⊆ fA` satisfies `A ⊆ fⁿA ⊆ im fⁿ`, so the greatest post-fixpoint
/// is contained in `im f^{dim}`; this is computed by a direct matrix power.
/// The oracle checks that `E` is a fixpoint on which `f` is invertible, that
/// `im f^{dim} ⊆ E`, and that for each standard basis vector `x ∉ E`, the
/// space `E + span{x, fx, …}` is not a post-fixpoint.
pub fn coalgebra_oracle<T: Scalar>(f: &Matrix<T>, carrier: &SubspaceBasis<T>) -> Verdict {
    let run = || -> Result<Verdict> {
        let n = require_square(f, "coalgebra oracle")?;
        let e = carrier;
        let fe = e.image_under(f);
        if fe != *e {
            return Ok(Verdict::fail(format!("fE = {:?} differs from E = {:?}", fe.vectors(), e.vectors())));
        }
        if restrict(f, e)?.rank() != e.dim() {
            return Ok(Verdict::fail("f is not invertible on E"));
        }
        let top = image_basis(&f.pow(n as u64)?);
        if !top.is_subspace_of(e) {
            return Ok(Verdict::fail(format!(
                "im f^{n} = {:?} is not inside E = {:?}",
                top.vectors(),
                e.vectors()
            )));
        }
        let mut candidates = 0;
        for j in 0..n {
            let mut x = vec![T::zero(); n];
            x[j] = T::one();
            if e.contains(&x) {
                continue;
            }
            candidates += 1;
            let mut vectors = e.vectors().to_vec();
            let mut y = x;
            for _ in 0..n {
                vectors.push(y.clone());
                y = f.apply(&y);
            }
            let a = SubspaceBasis::span(n, &vectors);
            if a.is_subspace_of(&a.image_under(f)) {
                return Ok(Verdict::fail(format!(
                    "E + span(f^k e_{j}) = {:?} is a larger post-fixpoint",
                    a.vectors()
                )));
            }
        }
        Ok(Verdict::pass(format!(
            "E is a fixpoint of dimension {}, contains im f^{n}, and {candidates} extensions all fail A ⊆ fA",
            e.dim()
        )))
    };
    run().unwrap_or_else(|e| Verdict::fail(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algorithms::{eventual_image_chain, eventual_image_idempotent_power, image_chain, terminal_coalgebra};
    use crate::category::Endo;
    use crate::Rat;

    type V = FdVect<Rat>;

    fn m(rows: &[&[i64]]) -> Matrix<Rat> {
        Matrix::from_i64_rows(rows)
    }

    fn v(c: &[i64]) -> Vec<Rat> {
        c.iter().map(|&x| Rat::from_i64(x)).collect()
    }

    fn p(c: &[i64]) -> Poly<Rat> {
        Poly::from_i64(c)
    }

    /// `det(A − tI)` by cofactor expansion along the first row.
    fn det_by_minors(a: &[Vec<Poly<Rat>>]) -> Poly<Rat> {
        let n = a.len();
        if n == 0 {
            return Poly::one();
        }
        let mut total = Poly::zero();
        for j in 0..n {
            let minor: Vec<Vec<Poly<Rat>>> = a[1..]
                .iter()
                .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, x)| x.clone()).collect())
                .collect();
            let term = a[0][j].mul(&det_by_minors(&minor));
            total = if j % 2 == 0 { total.add(&term) } else { total.sub(&term) };
        }
        total
    }

    fn chi_by_minors(f: &Matrix<Rat>) -> Poly<Rat> {
        let n = f.rows();
        let rows: Vec<Vec<Poly<Rat>>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let c = Poly::constant(f[(i, j)].clone());
                        if i == j {
                            c.sub(&Poly::t())
                        } else {
                            c
                        }
                    })
                    .collect()
            })
            .collect();
        det_by_minors(&rows)
    }

    #[test]
    fn image_and_kernel_examples() {
        let j = m(&[&[0, 1], &[0, 0]]);
        assert_eq!(image_basis(&j), SubspaceBasis::span(2, &[v(&[1, 0])]));
        assert_eq!(kernel_basis(&j), SubspaceBasis::span(2, &[v(&[1, 0])]));
        assert_eq!(rank(&Matrix::<Rat>::identity(3)), 3);
        assert_eq!(kernel_basis(&Matrix::<Rat>::zeros(2, 2)).dim(), 2);
    }

    #[test]
    fn factorization_recomposes() {
        for f in [m(&[&[1, 2], &[2, 4], &[0, 0]]), m(&[&[0, 1], &[0, 0]]), Matrix::zeros(2, 3)] {
            let (cover, embed) = V::factorize(&f);
            assert_eq!(embed.mul(&cover).unwrap(), f);
            assert!(V::is_covering(&cover));
            assert!(V::is_embedding(&embed));
        }
    }

    #[test]
    fn nilpotent_chain_and_coalgebra() {
        let e = Endo::<V>::new(m(&[&[0, 1], &[0, 0]])).unwrap();
        let chain = image_chain(&e).unwrap();
        assert_eq!(chain.stabilization_index, 2);
        let dims: Vec<usize> = chain.stages.iter().map(|s| s.carrier).collect();
        assert_eq!(dims, vec![2, 1, 0]);
        assert_eq!(terminal_coalgebra(&e).unwrap().carrier, 0);
    }

    #[test]
    fn idempotent_projection_is_its_own_eventual_idempotent() {
        let f = m(&[&[1, 1], &[0, 0]]);
        let e = Endo::<V>::new(f.clone()).unwrap();
        let data = eventual_image_chain(&e).unwrap();
        assert_eq!(data.idempotent, f);
        assert_eq!(data.auto, m(&[&[1]]));
        assert_eq!(image_basis(&data.iota), SubspaceBasis::span(2, &[v(&[1, 0])]));
        let swap = Endo::<V>::new(m(&[&[0, 1], &[1, 0]])).unwrap();
        let power = eventual_image_idempotent_power(&swap).unwrap();
        assert_eq!(power.idempotent, Matrix::identity(2));
        assert_eq!(power.carrier, 2);
    }

    #[test]
    fn fitting_examples() {
        let fit = fitting(&m(&[&[1, 1], &[0, 0]])).unwrap();
        assert_eq!(fit.ei, SubspaceBasis::span(2, &[v(&[1, 0])]));
        assert_eq!(fit.ek, SubspaceBasis::span(2, &[v(&[-1, 1])]));
        assert_eq!(fitting(&m(&[&[2, 1], &[0, 3]])).unwrap().ek.dim(), 0);
        assert_eq!(fitting(&m(&[&[0, 1], &[0, 0]])).unwrap().ei.dim(), 0);
    }

    #[test]
    fn characteristic_polynomials_match_minor_expansion() {
        let cases = [
            m(&[&[0, 1], &[1, 0]]),
            m(&[&[1, 1], &[0, 0]]),
            m(&[&[2, -1, 3], &[0, 5, 7], &[1, 1, -4]]),
            m(&[&[1, 2, 0, 3], &[-1, 0, 4, 2], &[0, 3, 1, 1], &[5, -2, 0, 0]]),
        ];
        for f in &cases {
            assert_eq!(char_poly(f).unwrap(), chi_by_minors(f), "{f:?}");
        }
        assert_eq!(char_poly(&cases[0]).unwrap(), p(&[-1, 0, 1]));
        assert_eq!(char_poly(&cases[1]).unwrap(), p(&[0, -1, 1]));
    }

    #[test]
    fn cayley_hamilton_examples() {
        assert_eq!(inverse_cayley_hamilton(&Matrix::<Rat>::identity(3)).unwrap(), Matrix::identity(3));
        let swap = m(&[&[0, 1], &[1, 0]]);
        assert_eq!(cayley_hamilton_polynomial(&swap).unwrap(), p(&[0, 1]));
        assert_eq!(inverse_cayley_hamilton(&swap).unwrap(), swap);
        let two = m(&[&[2]]);
        assert_eq!(cayley_hamilton_polynomial(&two).unwrap(), Poly::constant(Rat::from_frac(1, 2)));
        assert!(inverse_cayley_hamilton(&m(&[&[1, 2], &[2, 4]])).is_err());
    }

    #[test]
    fn f_infinity_polynomial_examples() {
        let f = m(&[&[1, 1], &[0, 0]]);
        let out = f_infinity_poly(&f).unwrap();
        assert_eq!(out.r, p(&[0, 1]));
        assert_eq!(out.idempotent, f);
        assert!(out.in_power_span());

        let g = m(&[&[2, 1], &[1, 1]]);
        assert_eq!(f_infinity_poly(&g).unwrap().idempotent, Matrix::identity(2));
        assert!(char_poly(&g).unwrap().eval_matrix(&g).unwrap().is_zero());

        let nil = m(&[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]);
        let out = f_infinity_poly(&nil).unwrap();
        assert!(out.r.is_zero());
        assert!(out.idempotent.is_zero());
    }

    #[test]
    fn power_closure_matches_chain() {
        for f in [m(&[&[1, 1], &[0, 0]]), m(&[&[2, 0, 0], &[1, 0, 0], &[0, 1, 0]]), m(&[&[0, 0], &[0, 0]])] {
            let e = Endo::<V>::new(f.clone()).unwrap();
            let chain = eventual_image_chain(&e).unwrap();
            assert_eq!(V::power_closure_idempotent(&f).unwrap(), chain.idempotent);
            assert_eq!(f_infinity_poly(&f).unwrap().idempotent, chain.idempotent);
        }
    }

    #[test]
    fn linear_periodicity() {
        let f = m(&[&[1, 1], &[0, 0]]);
        assert!(linearly_periodic(&f, &v(&[1, 0])).unwrap());
        assert!(!linearly_periodic(&f, &v(&[0, 1])).unwrap());
        assert!(!linearly_periodic(&f, &v(&[-1, 1])).unwrap());
        assert!(linearly_periodic(&m(&[&[0, 1], &[1, 0]]), &v(&[3, 7])).unwrap());
    }

    #[test]
    fn williams_examples() {
        let f = m(&[&[1, 1], &[0, 0]]);
        let rel = williams_relation(&f, &m(&[&[1]])).unwrap().unwrap();
        assert_eq!(rel, WilliamsRelation { p: 1, sign: -1 });
        assert!(williams_check(&f, &f).is_pass());
        assert!(!williams_check(&Matrix::<Rat>::identity(2), &m(&[&[2]])).is_pass());
    }

    #[test]
    fn generalized_eigenspaces() {
        let f = m(&[&[1, 1], &[0, 0]]);
        assert_eq!(generalized_eigenspace(&f, &Rat::from_i64(1)).unwrap(), SubspaceBasis::span(2, &[v(&[1, 0])]));
        assert_eq!(generalized_eigenspace(&f, &Rat::from_i64(5)).unwrap().dim(), 0);
        let nil = m(&[&[0, 1], &[0, 0]]);
        assert_eq!(generalized_eigenspace(&nil, &Rat::from_i64(0)).unwrap().dim(), 2);
        assert_eq!(generalized_eigenspace(&f, &Rat::from_i64(0)).unwrap(), fitting(&f).unwrap().ek);
    }

    #[test]
    fn similarity_examples() {
        assert!(!similar(&m(&[&[0, 1], &[0, 0]]), &m(&[&[0, 0], &[0, 0]])).is_pass());
        let a = m(&[&[0, 1], &[1, 0]]);
        let b = m(&[&[1, 0], &[0, -1]]);
        assert!(similar(&a, &b).is_pass());
        let k = conjugator(&a, &b).unwrap().unwrap();
        assert_eq!(k.mul(&a).unwrap(), b.mul(&k).unwrap());
        assert!(similar(&a, &a).is_pass());
    }

    #[test]
    fn canonical_map_is_identity_not_f() {
        let f = m(&[&[2]]);
        let data = eventual_image_chain(&Endo::<V>::new(f.clone()).unwrap()).unwrap();
        assert_eq!(data.pi.mul(&data.iota).unwrap(), Matrix::identity(1));
        assert_ne!(data.pi.mul(&data.iota).unwrap(), f);
        assert_eq!(data.auto, f);
    }

    #[test]
    fn coalgebra_oracle_examples() {
        for f in [m(&[&[1, 1], &[0, 0]]), m(&[&[0, 1], &[0, 0]]), m(&[&[2, 1], &[0, 3]])] {
            let e = Endo::<V>::new(f.clone()).unwrap();
            let carrier = image_basis(&terminal_coalgebra(&e).unwrap().embedding);
            assert!(coalgebra_oracle(&f, &carrier).is_pass());
        }
        let f = m(&[&[1, 1], &[0, 0]]);
        assert!(!coalgebra_oracle(&f, &SubspaceBasis::zero(2)).is_pass());
    }
}
