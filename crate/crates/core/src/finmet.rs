//! Finite metric spaces with distance-decreasing maps.
//!
//! Embeddings are isometries and coverings are surjections. Every infimum
//! over an orbit is a minimum over finitely many exact values.

use std::collections::BTreeSet;
use std::fmt;
use std::marker::PhantomData;
use std::sync::Arc;

use crate::algorithms::eventual_image_chain;
use crate::category::{power, Concrete, Endo, FactorizationSystem};
use crate::error::{Error, Result};
use crate::finset::{self, FinFunction};
use crate::perm;
use crate::power::idempotent_power;
use crate::scalar::Scalar;
use crate::verdict::Verdict;

/// A finite metric space on the points `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Metric<T> {
    d: Vec<Vec<T>>,
}

/// First violated metric axiom, if any.
pub fn metric_violation<T: Scalar>(d: &[Vec<T>]) -> Option<String> {
    let n = d.len();
    if let Some(i) = d.iter().position(|row| row.len() != n) {
        return Some(format!("row {i} has {} entries, expected {n}", d[i].len()));
    }
    for i in 0..n {
        if !d[i][i].is_zero() {
            return Some(format!("d({i},{i}) = {} is not 0", d[i][i]));
        }
        for j in 0..n {
            if d[i][j] != d[j][i] {
                return Some(format!("d({i},{j}) = {} but d({j},{i}) = {}", d[i][j], d[j][i]));
            }
            if i != j && !d[i][j].is_positive() {
                return Some(format!("d({i},{j}) = {} is not positive", d[i][j]));
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if d[i][k] > d[i][j].clone() + d[j][k].clone() {
                    return Some(format!(
                        "triangle inequality fails: d({i},{k}) = {} > d({i},{j}) + d({j},{k}) = {} + {}",
                        d[i][k], d[i][j], d[j][k]
                    ));
                }
            }
        }
    }
    None
}

pub fn validate_metric<T: Scalar>(d: &[Vec<T>]) -> Verdict {
    match metric_violation(d) {
        None => Verdict::pass(format!("metric axioms hold on {} points", d.len())),
        Some(v) => Verdict::fail(v),
    }
}

impl<T: Scalar> Metric<T> {
    pub fn new(d: Vec<Vec<T>>) -> Result<Self> {
        match metric_violation(&d) {
            None => Ok(Self { d }),
            Some(v) => Err(Error::InvalidObject(v)),
        }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        Self::new(rows.iter().map(|r| r.iter().map(|&x| T::from_i64(x)).collect()).collect())
    }

    /// Every pair of distinct points at distance 1.
    pub fn discrete(n: usize) -> Self {
        let d = (0..n)
            .map(|i| (0..n).map(|j| if i == j { T::zero() } else { T::one() }).collect())
            .collect();
        Self { d }
    }

    pub fn len(&self) -> usize {
        self.d.len()
    }

    pub fn is_empty(&self) -> bool {
        self.d.is_empty()
    }

    pub fn d(&self, i: usize, j: usize) -> &T {
        &self.d[i][j]
    }

    pub fn rows(&self) -> &[Vec<T>] {
        &self.d
    }

    /// The subspace metric on `points`, in the given order.
    pub fn restrict(&self, points: &[usize]) -> Self {
        let d = points.iter().map(|&i| points.iter().map(|&j| self.d[i][j].clone()).collect()).collect();
        Self { d }
    }

    pub fn diameter(&self) -> T {
        self.d.iter().flatten().cloned().max().unwrap_or_else(T::zero)
    }
}

impl<T: Scalar> fmt::Debug for Metric<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Metric[")?;
        for (i, row) in self.d.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            write!(f, "[{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

/// A distance-decreasing map between finite metric spaces.
#[derive(Clone)]
pub struct ShortMap<T> {
    source: Arc<Metric<T>>,
    target: Arc<Metric<T>>,
    table: Vec<usize>,
}

impl<T: Scalar> ShortMap<T> {
    pub fn new(source: Arc<Metric<T>>, target: Arc<Metric<T>>, table: Vec<usize>) -> Result<Self> {
        if table.len() != source.len() {
            return Err(Error::InvalidMorphism(format!(
                "table has {} entries for a {}-point source",
                table.len(),
                source.len()
            )));
        }
        FinFunction::new(target.len(), table.clone())?;
        let map = Self { source, target, table };
        if let Some((x, y)) = map.first_stretch() {
            return Err(Error::InvalidMorphism(format!(
                "not short: d(f{x}, f{y}) = {} > d({x},{y}) = {}",
                map.target.d(map.table[x], map.table[y]),
                map.source.d(x, y)
            )));
        }
        Ok(map)
    }

    /// An endomorphism of `space`.
    pub fn endo(space: Arc<Metric<T>>, table: Vec<usize>) -> Result<Self> {
        Self::new(space.clone(), space, table)
    }

    pub fn identity(space: Arc<Metric<T>>) -> Self {
        let table = (0..space.len()).collect();
        Self { source: space.clone(), target: space, table }
    }

    pub fn source(&self) -> &Arc<Metric<T>> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Metric<T>> {
        &self.target
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    fn first_stretch(&self) -> Option<(usize, usize)> {
        let n = self.table.len();
        (0..n)
            .flat_map(|x| (x + 1..n).map(move |y| (x, y)))
            .find(|&(x, y)| self.target.d(self.table[x], self.table[y]) > self.source.d(x, y))
    }

    pub fn is_isometry(&self) -> bool {
        let n = self.table.len();
        (0..n).all(|x| (0..n).all(|y| self.target.d(self.table[x], self.table[y]) == self.source.d(x, y)))
    }

    pub fn is_surjective(&self) -> bool {
        self.table.iter().copied().collect::<BTreeSet<_>>().len() == self.target.len()
    }

    pub fn underlying(&self) -> FinFunction {
        FinFunction::new(self.target.len(), self.table.clone()).expect("table in range")
    }

    fn same_space(a: &Arc<Metric<T>>, b: &Arc<Metric<T>>) -> bool {
        Arc::ptr_eq(a, b) || a == b
    }
}

impl<T: Scalar> fmt::Debug for ShortMap<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ShortMap{:?}: {} → {} points", self.table, self.source.len(), self.target.len())
    }
}

fn require_endo<T: Scalar>(f: &ShortMap<T>) -> Result<()> {
    if ShortMap::same_space(&f.source, &f.target) {
        Ok(())
    } else {
        Err(Error::InvalidMorphism("expected an endomorphism".into()))
    }
}

/// The category of finite metric spaces and short maps.
#[derive(Debug, Clone, Copy, Default)]
pub struct FinMet<T>(PhantomData<T>);

impl<T: Scalar> FactorizationSystem for FinMet<T> {
    type Object = Arc<Metric<T>>;
    type Morphism = ShortMap<T>;
    const NAME: &'static str = "finmet";

    fn domain(f: &ShortMap<T>) -> Arc<Metric<T>> {
        f.source.clone()
    }

    fn codomain(f: &ShortMap<T>) -> Arc<Metric<T>> {
        f.target.clone()
    }

    fn size(x: &Arc<Metric<T>>) -> usize {
        x.len()
    }

    fn validate_object(x: &Arc<Metric<T>>) -> Result<()> {
        metric_violation(&x.d).map_or(Ok(()), |v| Err(Error::InvalidObject(v)))
    }

    fn validate(f: &ShortMap<T>) -> Result<()> {
        Self::validate_object(&f.source)?;
        Self::validate_object(&f.target)?;
        ShortMap::new(f.source.clone(), f.target.clone(), f.table.clone()).map(|_| ())
    }

    fn identity(x: &Arc<Metric<T>>) -> ShortMap<T> {
        ShortMap::identity(x.clone())
    }

    fn compose(g: &ShortMap<T>, f: &ShortMap<T>) -> Result<ShortMap<T>> {
        if !ShortMap::same_space(&f.target, &g.source) {
            return Err(Error::Composition("target of f is not the source of g".into()));
        }
        Ok(ShortMap {
            source: f.source.clone(),
            target: g.target.clone(),
            table: f.table.iter().map(|&x| g.table[x]).collect(),
        })
    }

    fn equal(a: &ShortMap<T>, b: &ShortMap<T>) -> bool {
        a.table == b.table && ShortMap::same_space(&a.source, &b.source) && ShortMap::same_space(&a.target, &b.target)
    }

    fn factorize(f: &ShortMap<T>) -> (ShortMap<T>, ShortMap<T>) {
        factorize_short(f)
    }

    fn is_embedding(f: &ShortMap<T>) -> bool {
        f.is_isometry()
    }

    fn is_covering(f: &ShortMap<T>) -> bool {
        f.is_surjective()
    }

    fn invert_iso(f: &ShortMap<T>) -> Result<ShortMap<T>> {
        if !f.is_surjective() || !f.is_isometry() {
            return Err(Error::NotInvertible(format!("{f:?} is not a surjective isometry")));
        }
        Ok(ShortMap { source: f.target.clone(), target: f.source.clone(), table: perm::inverse(&f.table) })
    }

    fn same_subobject(a: &ShortMap<T>, b: &ShortMap<T>) -> bool {
        ShortMap::same_space(&a.target, &b.target) && a.underlying().image() == b.underlying().image()
    }

    fn subobject_contained(a: &ShortMap<T>, b: &ShortMap<T>) -> bool {
        let outer: BTreeSet<usize> = b.table.iter().copied().collect();
        ShortMap::same_space(&a.target, &b.target) && a.table.iter().all(|y| outer.contains(y))
    }

    /// Same partition of the source and the same distances between classes.
    fn same_quotient(a: &ShortMap<T>, b: &ShortMap<T>) -> bool {
        let n = a.table.len();
        ShortMap::same_space(&a.source, &b.source)
            && finset::same_kernel(&a.table, &b.table)
            && (0..n).all(|x| {
                (0..n).all(|y| a.target.d(a.table[x], a.table[y]) == b.target.d(b.table[x], b.table[y]))
            })
    }

    fn conjugating_iso(a: &ShortMap<T>, b: &ShortMap<T>) -> Option<ShortMap<T>> {
        if Self::invert_iso(a).is_err() || Self::invert_iso(b).is_err() {
            return None;
        }
        let (da, db) = (a.source.clone(), b.source.clone());
        let compatible = |x: usize, y: usize, x2: usize, y2: usize| da.d(x, x2) == db.d(y, y2);
        perm::search_conjugator(&a.table, &b.table, &compatible)
            .map(|table| ShortMap { source: a.source.clone(), target: b.source.clone(), table })
    }

    fn enumerate_subobjects(x: &Arc<Metric<T>>, guard: u128) -> Option<Vec<ShortMap<T>>> {
        finset::subsets(x.len(), guard).map(|subs| {
            subs.into_iter()
                .map(|points| ShortMap {
                    source: Arc::new(x.restrict(&points)),
                    target: x.clone(),
                    table: points,
                })
                .collect()
        })
    }
}

impl<T: Scalar> Concrete for FinMet<T> {
    fn table(f: &ShortMap<T>) -> &[usize] {
        &f.table
    }
}

/// Corestriction onto the image with the subspace metric, then the
/// isometric inclusion.
pub fn factorize_short<T: Scalar>(f: &ShortMap<T>) -> (ShortMap<T>, ShortMap<T>) {
    let image = f.underlying().image();
    let carrier = Arc::new(f.target.restrict(&image));
    let mut position = vec![usize::MAX; f.target.len()];
    for (i, &y) in image.iter().enumerate() {
        position[y] = i;
    }
    let cover = ShortMap {
        source: f.source.clone(),
        target: carrier.clone(),
        table: f.table.iter().map(|&y| position[y]).collect(),
    };
    let embed = ShortMap { source: carrier, target: f.target.clone(), table: image };
    (cover, embed)
}

/// `X/∼` with `d([x],[x']) = min_n d(fⁿx, fⁿx')`.
#[derive(Clone)]
pub struct QuotientMetric<T> {
    pub metric: Metric<T>,
    /// Class index of each point; classes are ordered by least member.
    pub classes: Vec<usize>,
    /// Least member of each class.
    pub representatives: Vec<usize>,
}

/// The quotient metric. The orbit pair `(fⁿx, fⁿx')` repeats once `n`
/// passes the preperiod plus the period of the power sequence of `f`, so
/// the infimum is a minimum over that range.
pub fn quotient_metric<T: Scalar>(f: &ShortMap<T>) -> Result<QuotientMetric<T>> {
    require_endo(f)?;
    let n = f.table.len();
    let cycle = finset::unique_idempotent_in_powers(&f.underlying())?;
    let horizon = (cycle.preperiod + cycle.period) as usize;
    let orbits: Vec<Vec<usize>> = (0..n)
        .map(|x| std::iter::successors(Some(x), |&y| Some(f.table[y])).take(horizon + 1).collect())
        .collect();
    let inf = |x: usize, y: usize| -> T {
        (0..=horizon).map(|k| f.source.d(orbits[x][k], orbits[y][k]).clone()).min().unwrap_or_else(T::zero)
    };
    let mut classes = vec![usize::MAX; n];
    let mut representatives = Vec::new();
    for x in 0..n {
        if classes[x] != usize::MAX {
            continue;
        }
        let c = representatives.len();
        representatives.push(x);
        for y in x..n {
            if inf(x, y).is_zero() {
                classes[y] = c;
            }
        }
    }
    let d = representatives
        .iter()
        .map(|&x| representatives.iter().map(|&y| inf(x, y)).collect())
        .collect();
    let metric = Metric::new(d).map_err(|e| Error::ContractViolation(format!("quotient metric: {e}")))?;
    Ok(QuotientMetric { metric, classes, representatives })
}

/// Points in the closure of their own forward orbit: `min_{k ≥ 1} d(fᵏx, x) = 0`.
pub fn recurrent_points<T: Scalar>(f: &ShortMap<T>) -> Result<Vec<usize>> {
    require_endo(f)?;
    let n = f.table.len();
    Ok((0..n)
        .filter(|&x| {
            std::iter::successors(Some(f.table[x]), |&y| Some(f.table[y]))
                .take(n)
                .map(|y| f.source.d(x, y).clone())
                .min()
                .is_some_and(|d| d.is_zero())
        })
        .collect())
}

/// Largest space accepted by [`max_epsilon_separated`].
pub const SEPARATION_GUARD: usize = 12;

/// Size of a largest set of points pairwise at distance at least `ε`.
pub fn max_epsilon_separated<T: Scalar>(x: &Metric<T>, epsilon: &T) -> Result<usize> {
    if !epsilon.is_positive() {
        return Err(Error::InvalidObject(format!("ε = {epsilon} must be positive")));
    }
    let n = x.len();
    if n > SEPARATION_GUARD {
        return Err(Error::GuardExceeded { what: format!("ε-separation on {n} points"), limit: SEPARATION_GUARD as u128 });
    }
    fn grow<T: Scalar>(x: &Metric<T>, eps: &T, next: usize, chosen: &mut Vec<usize>, best: &mut usize) {
        *best = (*best).max(chosen.len());
        if chosen.len() + (x.len() - next) <= *best {
            return;
        }
        for p in next..x.len() {
            if chosen.iter().all(|&q| x.d(p, q) >= eps) {
                chosen.push(p);
                grow(x, eps, p + 1, chosen, best);
                chosen.pop();
            }
        }
    }
    let mut best = 0;
    grow(x, epsilon, 0, &mut Vec::new(), &mut best);
    Ok(best)
}

/// `d_∞(f, g) = max_x d(fx, gx)`.
pub fn sup_metric<T: Scalar>(f: &ShortMap<T>, g: &ShortMap<T>) -> Result<T> {
    if !ShortMap::same_space(&f.source, &g.source) || !ShortMap::same_space(&f.target, &g.target) {
        return Err(Error::Composition("d_∞ needs maps between the same spaces".into()));
    }
    Ok((0..f.table.len()).map(|x| f.target.d(f.table[x], g.table[x]).clone()).max().unwrap_or_else(T::zero))
}

/// The idempotent in `{f, f², …}`, which is closed in `d_∞` because the
/// sequence is eventually periodic. Checks that the result is short,
/// idempotent, equal to the eventual idempotent, and that the sequence
/// returns to `f^μ` at distance 0.
pub fn unique_idempotent_in_closure<T: Scalar>(f: &ShortMap<T>) -> Result<ShortMap<T>> {
    require_endo(f)?;
    let n = f.table.len();
    let cycle = idempotent_power::<FinMet<T>>(f, crate::power::factorial_cap(n))?;
    let e = cycle.idempotent;
    FinMet::<T>::validate(&e)?;
    if !FinMet::<T>::equal(&FinMet::<T>::compose(&e, &e)?, &e) {
        return Err(Error::ContractViolation("closure idempotent is not idempotent".into()));
    }
    let first = power::<FinMet<T>>(f, cycle.preperiod)?;
    let again = power::<FinMet<T>>(f, cycle.preperiod + cycle.period)?;
    if !sup_metric(&first, &again)?.is_zero() {
        return Err(Error::ContractViolation("power sequence does not return to f^μ".into()));
    }
    let chain = eventual_image_chain(&Endo::<FinMet<T>>::new(f.clone())?)?;
    if !FinMet::<T>::equal(&chain.idempotent, &e) {
        return Err(Error::ContractViolation(format!(
            "closure idempotent {e:?} differs from the eventual idempotent {:?}",
            chain.idempotent
        )));
    }
    Ok(e)
}

/// The canonical bijection from `⋂ im fⁿ` with the subspace metric to `X/∼`
/// with the quotient metric preserves distances.
pub fn quotient_subspace_isometry<T: Scalar>(f: &ShortMap<T>) -> Verdict {
    let run = || -> Result<Verdict> {
        let data = eventual_image_chain(&Endo::<FinMet<T>>::new(f.clone())?)?;
        let points = data.iota.table.clone();
        let sub = f.source.restrict(&points);
        let q = quotient_metric(f)?;
        let image: Vec<usize> = points.iter().map(|&x| q.classes[x]).collect();
        let hit: BTreeSet<usize> = image.iter().copied().collect();
        if hit.len() != points.len() || hit.len() != q.representatives.len() {
            return Ok(Verdict::fail(format!(
                "canonical map from {points:?} to {} classes is not bijective: {image:?}",
                q.representatives.len()
            )));
        }
        for i in 0..points.len() {
            for j in 0..points.len() {
                if sub.d(i, j) != q.metric.d(image[i], image[j]) {
                    return Ok(Verdict::fail(format!(
                        "d({}, {}) = {} in the subspace but {} in the quotient",
                        points[i],
                        points[j],
                        sub.d(i, j),
                        q.metric.d(image[i], image[j])
                    )));
                }
            }
        }
        Ok(Verdict::pass(format!("subspace {points:?} is isometric to the {}-class quotient", hit.len())))
    };
    run().unwrap_or_else(|e| Verdict::fail(e.to_string()))
}
