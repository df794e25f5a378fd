//! Brute-force oracles for the eventual image.
//!
//! None of these reuse the chain or power code paths to reach their
//! verdict; they enumerate subobjects, orbits or maps directly and then
//! compare against the algorithms.

use std::collections::BTreeSet;

use crate::algorithms::{eventual_image_chain, eventual_image_idempotent_power, terminal_coalgebra};
use crate::category::{Concrete, Endo, FactorizationSystem};
use crate::error::Result;
use crate::verdict::Verdict;

/// Confirms that [`terminal_coalgebra`] is the greatest post-fixpoint
/// `A ⊆ fA` among all enumerated subobjects of `X`.
pub fn subobject_oracle<C: FactorizationSystem>(e: &Endo<C>, guard: u128) -> Verdict {
    let Some(subs) = C::enumerate_subobjects(&e.object, guard) else {
        return Verdict::skipped(format!(
            "oracle skipped: subobject lattice of size-{} object exceeds guard {guard} or is not enumerable",
            e.size()
        ));
    };
    let run = || -> Result<Verdict> {
        let coalgebra = terminal_coalgebra(e)?;
        let (_, image) = C::factorize(&C::compose(&e.map, &coalgebra.embedding)?);
        if !C::same_subobject(&image, &coalgebra.embedding) {
            return Ok(Verdict::fail(format!(
                "coalgebra carrier is not a fixpoint: A = {:?}, fA = {image:?}",
                coalgebra.embedding
            )));
        }
        let mut post_fixpoints = 0usize;
        for sub in &subs {
            let (_, image) = C::factorize(&C::compose(&e.map, sub)?);
            if C::subobject_contained(sub, &image) {
                post_fixpoints += 1;
                if !C::subobject_contained(sub, &coalgebra.embedding) {
                    return Ok(Verdict::fail(format!(
                        "post-fixpoint {sub:?} is not below the coalgebra carrier {:?}",
                        coalgebra.embedding
                    )));
                }
            }
        }
        Ok(Verdict::pass(format!(
            "{} subobjects enumerated, {post_fixpoints} post-fixpoints, all below the carrier",
            subs.len()
        )))
    };
    run().unwrap_or_else(|err| Verdict::fail(err.to_string()))
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self { parent: (0..n).collect() }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut x = x;
        while self.parent[x] != root {
            let next = self.parent[x];
            self.parent[x] = root;
            x = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

fn iterate(table: &[usize], x: usize, times: usize) -> usize {
    (0..times).fold(x, |y, _| table[y])
}

/// Element-level limit and colimit of `⋯ → X → X → ⋯`.
///
/// The limit `L` is built from bi-infinite orbits, represented by windows
/// `(x_{-K}, …, x_K)` whose first point has a backward chain of every
/// length; the colimit `M` is the set of pairs `(level, x)` modulo eventual
/// agreement. The canonical map sends an orbit to `[(0, x₀)]` and must be a
/// bijection consistent with both algorithms.
pub fn limit_colimit_oracle<C: Concrete>(e: &Endo<C>) -> Verdict {
    let table = C::table(&e.map).to_vec();
    let n = table.len();
    let k = n.max(1);

    // Points with backward chains of length ≥ n, hence of every length.
    let mut reach = vec![true; n];
    for _ in 0..n {
        let mut next = vec![false; n];
        for x in (0..n).filter(|&x| reach[x]) {
            next[table[x]] = true;
        }
        reach = next;
    }

    let mut windows: Vec<Vec<usize>> = Vec::new();
    for start in (0..n).filter(|&x| reach[x]) {
        if !(0..n).any(|y| reach[y] && table[y] == start) {
            return Verdict::fail(format!("orbit window at {start} does not extend backwards"));
        }
        windows.push((0..=2 * k).map(|i| iterate(&table, start, i)).collect());
    }
    let centers: Vec<usize> = windows.iter().map(|w| w[k]).collect();
    let distinct_centers: BTreeSet<usize> = centers.iter().copied().collect();
    if distinct_centers.len() != windows.len() {
        return Verdict::fail("two distinct orbits share their 0-th term");
    }

    // Colimit: (level, x) ~ (level', y) iff they agree after enough steps.
    let levels = k + 1;
    let index = |level: usize, x: usize| level * n + x;
    let mut classes = UnionFind::new(levels * n);
    for a in 0..levels {
        for x in 0..n {
            for b in 0..levels {
                for y in 0..n {
                    if iterate(&table, x, 2 * k - a) == iterate(&table, y, 2 * k - b) {
                        classes.union(index(a, x), index(b, y));
                    }
                }
            }
        }
    }
    let all_classes: BTreeSet<usize> = (0..levels * n).map(|i| classes.find(i)).collect();
    let image: BTreeSet<usize> = centers.iter().map(|&c| classes.find(index(0, c))).collect();
    if image.len() != windows.len() {
        return Verdict::fail("canonical map L → M is not injective");
    }
    if image != all_classes {
        return Verdict::fail(format!(
            "canonical map L → M is not surjective: {} of {} classes hit",
            image.len(),
            all_classes.len()
        ));
    }

    let mut run = || -> Result<Verdict> {
        for (name, data) in [
            ("chain", eventual_image_chain(e)?),
            ("idempotent-power", eventual_image_idempotent_power(e)?),
        ] {
            let carrier: BTreeSet<usize> = C::table(&data.iota).iter().copied().collect();
            if carrier != distinct_centers {
                return Ok(Verdict::fail(format!(
                    "{name}: eventual image {carrier:?} differs from orbit centers {distinct_centers:?}"
                )));
            }
            let pi = C::table(&data.pi);
            for x in 0..n {
                for y in 0..n {
                    let same_class = classes.find(index(0, x)) == classes.find(index(0, y));
                    if same_class != (pi[x] == pi[y]) {
                        return Ok(Verdict::fail(format!(
                            "{name}: [(0,{x})] = [(0,{y})] is {same_class} but pi disagrees"
                        )));
                    }
                }
            }
        }
        Ok(Verdict::pass(format!(
            "|L| = |M| = {}; canonical map bijective and consistent with both algorithms",
            windows.len()
        )))
    };
    run().unwrap_or_else(|err| Verdict::fail(err.to_string()))
}

/// Exhaustive check that `iota` is terminal among equivariant maps from
/// automorphisms `(A, a)` with `|A| ≤ k`, and dually that `pi` is initial.
pub fn universal_property_oracle<C: FactorizationSystem>(e: &Endo<C>, k: usize) -> Verdict {
    if k == 0 {
        return Verdict::skipped("universal-property bound k = 0");
    }
    let Some(objects) = C::enumerate_objects(k) else {
        return Verdict::not_applicable(format!("{} objects are not enumerable", C::NAME));
    };
    let run = || -> Result<Verdict> {
        let data = eventual_image_chain(e)?;
        let x = &e.object;
        let enumerate = |s: &C::Object, t: &C::Object| C::enumerate_morphisms(s, t).unwrap_or_default();
        let mut checked = 0usize;
        for a_obj in &objects {
            let autos: Vec<C::Morphism> = enumerate(a_obj, a_obj)
                .into_iter()
                .filter(|m| C::invert_iso(m).is_ok())
                .collect();
            let into_e = enumerate(a_obj, &data.carrier);
            let out_of_e = enumerate(&data.carrier, a_obj);
            for a in &autos {
                for h in enumerate(a_obj, x) {
                    if !C::equal(&C::compose(&h, a)?, &C::compose(&e.map, &h)?) {
                        continue;
                    }
                    let mut count = 0;
                    for lift in &into_e {
                        if C::equal(&C::compose(&data.iota, lift)?, &h)
                            && C::equal(&C::compose(&data.auto, lift)?, &C::compose(lift, a)?)
                        {
                            count += 1;
                        }
                    }
                    if count != 1 {
                        return Ok(Verdict::fail(format!(
                            "equivariant map {h:?} from ({a_obj:?}, {a:?}) factors through iota {count} times"
                        )));
                    }
                    checked += 1;
                }
                for h in enumerate(x, a_obj) {
                    if !C::equal(&C::compose(&h, &e.map)?, &C::compose(a, &h)?) {
                        continue;
                    }
                    let mut count = 0;
                    for lift in &out_of_e {
                        if C::equal(&C::compose(lift, &data.pi)?, &h)
                            && C::equal(&C::compose(lift, &data.auto)?, &C::compose(a, lift)?)
                        {
                            count += 1;
                        }
                    }
                    if count != 1 {
                        return Ok(Verdict::fail(format!(
                            "equivariant map {h:?} to ({a_obj:?}, {a:?}) factors through pi {count} times"
                        )));
                    }
                    checked += 1;
                }
            }
        }
        Ok(Verdict::pass(format!(
            "{checked} equivariant maps with |A| ≤ {k} factor uniquely through iota or pi"
        )))
    };
    run().unwrap_or_else(|err| Verdict::fail(err.to_string()))
}
