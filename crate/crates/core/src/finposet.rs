//! Finite posets with monotone maps.
//!
//! A map factors as a surjection onto its image, carrying the order induced
//! from the target, followed by the inclusion. Embeddings are therefore
//! order-embeddings (injective and order-reflecting) and coverings are
//! surjections, which keeps "embedding and covering" equivalent to "order
//! isomorphism".

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::algorithms::eventual_image_chain;
use crate::category::{power, Concrete, Endo, EventualImageData, FactorizationSystem};
use crate::error::{Error, Result};
use crate::finset::{self, FinFunction};
use crate::perm;

/// A partial order on `0..n`; `le[i][j]` means `i ≤ j`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poset {
    le: Vec<Vec<bool>>,
}

impl Poset {
    /// Validates reflexivity, antisymmetry and transitivity. Non-transitive
    /// input is an error, never silently closed.
    pub fn new(le: Vec<Vec<bool>>) -> Result<Self> {
        let n = le.len();
        if let Some(i) = le.iter().position(|row| row.len() != n) {
            return Err(Error::InvalidObject(format!("order row {i} has {} entries, expected {n}", le[i].len())));
        }
        for i in 0..n {
            if !le[i][i] {
                return Err(Error::InvalidObject(format!("not reflexive: {i} ≰ {i}")));
            }
            for j in 0..n {
                if i != j && le[i][j] && le[j][i] {
                    return Err(Error::InvalidObject(format!("not antisymmetric: {i} ≤ {j} ≤ {i}")));
                }
                for k in 0..n {
                    if le[i][j] && le[j][k] && !le[i][k] {
                        return Err(Error::InvalidObject(format!("not transitive: {i} ≤ {j} ≤ {k} but {i} ≰ {k}")));
                    }
                }
            }
        }
        Ok(Self { le })
    }

    /// The discrete order: `i ≤ j` only when `i = j`.
    pub fn antichain(n: usize) -> Self {
        Self { le: (0..n).map(|i| (0..n).map(|j| i == j).collect()).collect() }
    }

    /// `0 < 1 < ⋯ < n−1`.
    pub fn chain(n: usize) -> Self {
        Self { le: (0..n).map(|i| (0..n).map(|j| i <= j).collect()).collect() }
    }

    pub fn len(&self) -> usize {
        self.le.len()
    }

    pub fn is_empty(&self) -> bool {
        self.le.is_empty()
    }

    pub fn le(&self, i: usize, j: usize) -> bool {
        self.le[i][j]
    }

    pub fn relation(&self) -> &[Vec<bool>] {
        &self.le
    }

    /// The induced order on `points`, in the given order.
    pub fn restrict(&self, points: &[usize]) -> Self {
        Self { le: points.iter().map(|&i| points.iter().map(|&j| self.le[i][j]).collect()).collect() }
    }

    fn strict_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|&(i, j)| i != j && self.le[i][j]).collect()
    }
}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poset({} points, < {:?})", self.len(), self.strict_pairs())
    }
}

/// An order-preserving map.
#[derive(Clone)]
pub struct MonotoneMap {
    source: Arc<Poset>,
    target: Arc<Poset>,
    table: Vec<usize>,
}

impl MonotoneMap {
    pub fn new(source: Arc<Poset>, target: Arc<Poset>, table: Vec<usize>) -> Result<Self> {
        if table.len() != source.len() {
            return Err(Error::InvalidMorphism(format!(
                "table has {} entries for a {}-point source",
                table.len(),
                source.len()
            )));
        }
        FinFunction::new(target.len(), table.clone())?;
        let map = Self { source, target, table };
        if let Some((x, y)) = map.first_violation() {
            return Err(Error::InvalidMorphism(format!(
                "not monotone: {x} ≤ {y} but f{x} = {} ≰ f{y} = {}",
                map.table[x], map.table[y]
            )));
        }
        Ok(map)
    }

    pub fn endo(poset: Arc<Poset>, table: Vec<usize>) -> Result<Self> {
        Self::new(poset.clone(), poset, table)
    }

    pub fn identity(poset: Arc<Poset>) -> Self {
        Self { table: (0..poset.len()).collect(), source: poset.clone(), target: poset }
    }

    pub fn source(&self) -> &Arc<Poset> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Poset> {
        &self.target
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    fn first_violation(&self) -> Option<(usize, usize)> {
        self.source.strict_pairs().into_iter().find(|&(x, y)| !self.target.le(self.table[x], self.table[y]))
    }

    /// `x ≤ y ⟺ fx ≤ fy`; implies injectivity by antisymmetry.
    pub fn is_order_embedding(&self) -> bool {
        let n = self.table.len();
        (0..n).all(|x| (0..n).all(|y| self.source.le(x, y) == self.target.le(self.table[x], self.table[y])))
    }

    pub fn is_surjective(&self) -> bool {
        self.table.iter().copied().collect::<BTreeSet<_>>().len() == self.target.len()
    }

    pub fn underlying(&self) -> FinFunction {
        FinFunction::new(self.target.len(), self.table.clone()).expect("table in range")
    }

    fn same_poset(a: &Arc<Poset>, b: &Arc<Poset>) -> bool {
        Arc::ptr_eq(a, b) || a == b
    }
}

impl fmt::Debug for MonotoneMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Monotone{:?}: {} → {} points", self.table, self.source.len(), self.target.len())
    }
}

/// The category of finite posets.
#[derive(Debug, Clone, Copy, Default)]
pub struct FinPoset;

impl FactorizationSystem for FinPoset {
    type Object = Arc<Poset>;
    type Morphism = MonotoneMap;
    const NAME: &'static str = "finposet";

    fn domain(f: &MonotoneMap) -> Arc<Poset> {
        f.source.clone()
    }

    fn codomain(f: &MonotoneMap) -> Arc<Poset> {
        f.target.clone()
    }

    fn size(x: &Arc<Poset>) -> usize {
        x.len()
    }

    fn validate_object(x: &Arc<Poset>) -> Result<()> {
        Poset::new(x.le.clone()).map(|_| ())
    }

    fn validate(f: &MonotoneMap) -> Result<()> {
        Self::validate_object(&f.source)?;
        Self::validate_object(&f.target)?;
        MonotoneMap::new(f.source.clone(), f.target.clone(), f.table.clone()).map(|_| ())
    }

    fn identity(x: &Arc<Poset>) -> MonotoneMap {
        MonotoneMap::identity(x.clone())
    }

    fn compose(g: &MonotoneMap, f: &MonotoneMap) -> Result<MonotoneMap> {
        if !MonotoneMap::same_poset(&f.target, &g.source) {
            return Err(Error::Composition("target of f is not the source of g".into()));
        }
        Ok(MonotoneMap {
            source: f.source.clone(),
            target: g.target.clone(),
            table: f.table.iter().map(|&x| g.table[x]).collect(),
        })
    }

    fn equal(a: &MonotoneMap, b: &MonotoneMap) -> bool {
        a.table == b.table
            && MonotoneMap::same_poset(&a.source, &b.source)
            && MonotoneMap::same_poset(&a.target, &b.target)
    }

    fn factorize(f: &MonotoneMap) -> (MonotoneMap, MonotoneMap) {
        factorize_monotone(f)
    }

    fn is_embedding(f: &MonotoneMap) -> bool {
        f.is_order_embedding()
    }

    fn is_covering(f: &MonotoneMap) -> bool {
        f.is_surjective()
    }

    fn invert_iso(f: &MonotoneMap) -> Result<MonotoneMap> {
        if !f.is_surjective() || !f.is_order_embedding() {
            return Err(Error::NotInvertible(format!("{f:?} is not an order isomorphism")));
        }
        Ok(MonotoneMap { source: f.target.clone(), target: f.source.clone(), table: perm::inverse(&f.table) })
    }

    fn same_subobject(a: &MonotoneMap, b: &MonotoneMap) -> bool {
        MonotoneMap::same_poset(&a.target, &b.target) && a.underlying().image() == b.underlying().image()
    }

    fn subobject_contained(a: &MonotoneMap, b: &MonotoneMap) -> bool {
        let outer: BTreeSet<usize> = b.table.iter().copied().collect();
        MonotoneMap::same_poset(&a.target, &b.target) && a.table.iter().all(|y| outer.contains(y))
    }

    /// Same partition of the source and the same order between classes.
    fn same_quotient(a: &MonotoneMap, b: &MonotoneMap) -> bool {
        let n = a.table.len();
        MonotoneMap::same_poset(&a.source, &b.source)
            && finset::same_kernel(&a.table, &b.table)
            && (0..n).all(|x| (0..n).all(|y| a.target.le(a.table[x], a.table[y]) == b.target.le(b.table[x], b.table[y])))
    }

    fn conjugating_iso(a: &MonotoneMap, b: &MonotoneMap) -> Option<MonotoneMap> {
        if Self::invert_iso(a).is_err() || Self::invert_iso(b).is_err() {
            return None;
        }
        let (pa, pb) = (a.source.clone(), b.source.clone());
        let compatible = |x: usize, y: usize, x2: usize, y2: usize| pa.le(x, x2) == pb.le(y, y2);
        perm::search_conjugator(&a.table, &b.table, &compatible)
            .map(|table| MonotoneMap { source: a.source.clone(), target: b.source.clone(), table })
    }

    /// Every partial order on `0..n` for `n ≤ max_size`, labelled, so each
    /// isomorphism class appears with all of its labellings.
    fn enumerate_objects(max_size: usize) -> Option<Vec<Arc<Poset>>> {
        if max_size > ENUMERATION_GUARD {
            return None;
        }
        Some((0..=max_size).flat_map(all_posets).map(Arc::new).collect())
    }

    fn enumerate_morphisms(x: &Arc<Poset>, y: &Arc<Poset>) -> Option<Vec<MonotoneMap>> {
        Some(
            finset::all_tables(x.len(), y.len())
                .into_iter()
                .map(|table| MonotoneMap { source: x.clone(), target: y.clone(), table })
                .filter(|m| m.first_violation().is_none())
                .collect(),
        )
    }

    fn enumerate_subobjects(x: &Arc<Poset>, guard: u128) -> Option<Vec<MonotoneMap>> {
        finset::subsets(x.len(), guard).map(|subs| {
            subs.into_iter()
                .map(|points| MonotoneMap { source: Arc::new(x.restrict(&points)), target: x.clone(), table: points })
                .collect()
        })
    }
}

impl Concrete for FinPoset {
    fn table(f: &MonotoneMap) -> &[usize] {
        &f.table
    }
}

/// Largest poset size [`FinPoset::enumerate_objects`] will list.
pub const ENUMERATION_GUARD: usize = 4;

/// All partial orders on `0..n`, by filtering every choice of strict pairs.
pub fn all_posets(n: usize) -> Vec<Poset> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|(i, j)| i != j).collect();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << pairs.len()) {
        let mut le: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| i == j).collect()).collect();
        for (bit, &(i, j)) in pairs.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                le[i][j] = true;
            }
        }
        if let Ok(p) = Poset::new(le) {
            out.push(p);
        }
    }
    out
}

/// Surjection onto the image with the induced order, then the inclusion.
pub fn factorize_monotone(f: &MonotoneMap) -> (MonotoneMap, MonotoneMap) {
    let image = f.underlying().image();
    let carrier = Arc::new(f.target.restrict(&image));
    let mut position = vec![usize::MAX; f.target.len()];
    for (i, &y) in image.iter().enumerate() {
        position[y] = i;
    }
    let cover = MonotoneMap {
        source: f.source.clone(),
        target: carrier.clone(),
        table: f.table.iter().map(|&y| position[y]).collect(),
    };
    let embed = MonotoneMap { source: carrier, target: f.target.clone(), table: image };
    (cover, embed)
}

/// The eventual image of a monotone endomorphism, with the automorphism and
/// its inverse confirmed to be monotone and `f̄⁻¹ = f̄^{order − 1}`.
pub fn eventual_image_poset(f: &MonotoneMap) -> Result<EventualImageData<FinPoset>> {
    let e = Endo::<FinPoset>::new(f.clone())?;
    let data = eventual_image_chain(&e)?;
    FinPoset::validate(&data.auto)?;
    FinPoset::validate(&data.auto_inv)?;
    let order = perm::order(&data.auto.table);
    let via_powers = power::<FinPoset>(&data.auto, order - 1)?;
    if !FinPoset::equal(&via_powers, &data.auto_inv) {
        return Err(Error::ContractViolation(format!(
            "auto⁻¹ = {:?} but auto^{} = {via_powers:?}",
            data.auto_inv,
            order - 1
        )));
    }
    Ok(data)
}
