//! Cross-category verifiers for the structural properties of eventual images.

use crate::algorithms::{eventual_image_chain, eventual_image_idempotent_power, induced_map};
use crate::category::{power, EventualImageData, Endo, FactorizationSystem};
use crate::error::{Error, Result};
use crate::verdict::Verdict;

/// Compares two morphisms and records the first mismatch by name.
struct EquationLog<C: FactorizationSystem> {
    failure: Option<String>,
    _marker: std::marker::PhantomData<C>,
}

impl<C: FactorizationSystem> EquationLog<C> {
    fn new() -> Self {
        Self { failure: None, _marker: std::marker::PhantomData }
    }

    fn eq(&mut self, name: &str, lhs: Result<C::Morphism>, rhs: Result<C::Morphism>) {
        if self.failure.is_some() {
            return;
        }
        match (lhs, rhs) {
            (Ok(l), Ok(r)) => {
                if !C::equal(&l, &r) {
                    self.failure = Some(format!("{name} violated: lhs = {l:?}, rhs = {r:?}"));
                }
            }
            (Err(e), _) | (_, Err(e)) => {
                self.failure = Some(format!("{name} could not be evaluated: {e}"));
            }
        }
    }

    fn holds(&mut self, name: &str, ok: bool, witness: impl FnOnce() -> String) {
        if self.failure.is_none() && !ok {
            self.failure = Some(format!("{name} violated: {}", witness()));
        }
    }

    fn verdict(self, pass: impl Into<String>) -> Verdict {
        match self.failure {
            None => Verdict::pass(pass),
            Some(f) => Verdict::fail(f),
        }
    }
}

/// Checks every defining identity of an eventual image bundle, including a
/// finite prefix `0 ≤ n ≤ 3·index` of the limit and colimit cone equations.
pub fn splitting_identities<C: FactorizationSystem>(
    e: &Endo<C>,
    data: &EventualImageData<C>,
) -> Verdict {
    let f = &e.map;
    let id_e = C::identity(&data.carrier);
    let mut log = EquationLog::<C>::new();
    log.holds("iota is an embedding", C::is_embedding(&data.iota), || format!("{:?}", data.iota));
    log.holds("pi is a covering", C::is_covering(&data.pi), || format!("{:?}", data.pi));
    log.eq("pi∘iota = 1", C::compose(&data.pi, &data.iota), Ok(id_e.clone()));
    log.eq("f^∞ = iota∘pi", Ok(data.idempotent.clone()), C::compose(&data.iota, &data.pi));
    log.eq(
        "f^∞∘f^∞ = f^∞",
        C::compose(&data.idempotent, &data.idempotent),
        Ok(data.idempotent.clone()),
    );
    log.eq("auto∘auto⁻¹ = 1", C::compose(&data.auto, &data.auto_inv), Ok(id_e.clone()));
    log.eq("auto⁻¹∘auto = 1", C::compose(&data.auto_inv, &data.auto), Ok(id_e));
    log.eq("iota∘auto = f∘iota", C::compose(&data.iota, &data.auto), C::compose(f, &data.iota));
    log.eq("auto∘pi = pi∘f", C::compose(&data.auto, &data.pi), C::compose(&data.pi, f));
    log.eq(
        "f∘f^∞ = f^∞∘f",
        C::compose(f, &data.idempotent),
        C::compose(&data.idempotent, f),
    );
    let bound = 3 * data.stabilization_index.max(1) as u64;
    for n in 0..=bound {
        let fn_ = power::<C>(f, n);
        let an = power::<C>(&data.auto, n);
        let (Ok(fn_), Ok(an)) = (fn_, an) else {
            log.holds("powers", false, || "could not form powers".into());
            break;
        };
        log.eq(
            &format!("iota∘auto^{n} = f^{n}∘iota"),
            C::compose(&data.iota, &an),
            C::compose(&fn_, &data.iota),
        );
        log.eq(
            &format!("auto^{n}∘pi = pi∘f^{n}"),
            C::compose(&an, &data.pi),
            C::compose(&data.pi, &fn_),
        );
    }
    log.verdict(format!(
        "splitting identities hold (carrier size {}, index {})",
        C::size(&data.carrier),
        data.stabilization_index
    ))
}

/// Compares the two bundles up to the canonical isomorphism
/// `pi₂ ∘ iota₁ : E₁ → E₂`.
pub fn bundles_agree<C: FactorizationSystem>(
    first: &EventualImageData<C>,
    second: &EventualImageData<C>,
) -> Verdict {
    let mut log = EquationLog::<C>::new();
    log.eq("idempotents agree", Ok(first.idempotent.clone()), Ok(second.idempotent.clone()));
    let phi = C::compose(&second.pi, &first.iota);
    match &phi {
        Ok(phi) => {
            let inverse = C::invert_iso(phi);
            log.holds("canonical map is invertible", inverse.is_ok(), || format!("{phi:?}"));
            log.eq("iota₂∘φ = iota₁", C::compose(&second.iota, phi), Ok(first.iota.clone()));
            log.eq(
                "φ∘auto₁ = auto₂∘φ",
                C::compose(phi, &first.auto),
                C::compose(&second.auto, phi),
            );
        }
        Err(e) => log.holds("canonical map", false, || e.to_string()),
    }
    log.holds(
        "stabilization indices agree",
        first.stabilization_index == second.stabilization_index,
        || format!("{} vs {}", first.stabilization_index, second.stabilization_index),
    );
    log.verdict("bundles agree up to canonical isomorphism")
}

/// Runs both generic algorithms and compares them.
pub fn algorithms_agree<C: FactorizationSystem>(e: &Endo<C>) -> Verdict {
    match (eventual_image_chain(e), eventual_image_idempotent_power(e)) {
        (Ok(a), Ok(b)) => bundles_agree(&a, &b),
        (Err(err), _) => Verdict::fail(format!("chain algorithm failed: {err}")),
        (_, Err(err)) => Verdict::fail(format!("idempotent-power algorithm failed: {err}")),
    }
}

/// `(fⁿ)^∞ = f^∞`, with `ei fⁿ ≅ ei f` under the canonical map.
pub fn check_timescale<C: FactorizationSystem>(e: &Endo<C>, n: u64) -> Verdict {
    if n == 0 {
        return Verdict::hypothesis_fails("timescale requires n ≥ 1");
    }
    let run = || -> Result<Verdict> {
        let base = eventual_image_chain(e)?;
        let scaled = eventual_image_chain(&e.pow(n)?)?;
        let mut log = EquationLog::<C>::new();
        log.eq(
            &format!("(f^{n})^∞ = f^∞"),
            Ok(scaled.idempotent.clone()),
            Ok(base.idempotent.clone()),
        );
        let phi = C::compose(&scaled.pi, &base.iota)?;
        log.holds("ei f^n ≅ ei f", C::invert_iso(&phi).is_ok(), || format!("{phi:?}"));
        Ok(log.verdict(format!("(f^{n})^∞ = f^∞")))
    };
    run().unwrap_or_else(|err| Verdict::fail(err.to_string()))
}

/// For commuting `f`, `g`: `(g∘f)^∞ = g^∞ ∘ f^∞`.
pub fn check_commuting_product<C: FactorizationSystem>(f: &Endo<C>, g: &Endo<C>) -> Verdict {
    let run = || -> Result<Verdict> {
        let fg = C::compose(&f.map, &g.map)?;
        let gf = C::compose(&g.map, &f.map)?;
        if !C::equal(&fg, &gf) {
            return Ok(Verdict::hypothesis_fails(format!(
                "f and g do not commute: f∘g = {fg:?}, g∘f = {gf:?}"
            )));
        }
        let product = Endo::<C>::new(gf)?;
        let lhs = eventual_image_chain(&product)?.idempotent;
        let rhs = C::compose(
            &eventual_image_chain(g)?.idempotent,
            &eventual_image_chain(f)?.idempotent,
        )?;
        let mut log = EquationLog::<C>::new();
        log.eq("(g∘f)^∞ = g^∞∘f^∞", Ok(lhs), Ok(rhs));
        Ok(log.verdict("(g∘f)^∞ = g^∞∘f^∞"))
    };
    run().unwrap_or_else(|err| Verdict::fail(err.to_string()))
}

/// For `u: X → Y`, `v: Y → X`: the eventual automorphisms of `vu` and `uv`
/// are isomorphic. Checked both through the canonical map induced by `u`
/// and through the instance's conjugacy decision.
pub fn check_vu_uv<C: FactorizationSystem>(u: &C::Morphism, v: &C::Morphism) -> Verdict {
    let run = || -> Result<Verdict> {
        let vu = Endo::<C>::new(C::compose(v, u)?)?;
        let uv = Endo::<C>::new(C::compose(u, v)?)?;
        let a = eventual_image_chain(&vu)?;
        let b = eventual_image_chain(&uv)?;
        let induced = induced_map(u, &vu, &uv, &a, &b)?;
        let mut log = EquationLog::<C>::new();
        log.holds("u_* is invertible", C::invert_iso(&induced).is_ok(), || format!("{induced:?}"));
        log.eq(
            "u_*∘auto(vu) = auto(uv)∘u_*",
            C::compose(&induced, &a.auto),
            C::compose(&b.auto, &induced),
        );
        let conj = C::conjugating_iso(&a.auto, &b.auto);
        log.holds("eventual automorphisms conjugate", conj.is_some(), || {
            format!("auto(vu) = {:?}, auto(uv) = {:?}", a.auto, b.auto)
        });
        Ok(log.verdict("(ei vu, auto) ≅ (ei uv, auto)"))
    };
    run().unwrap_or_else(|err| Verdict::fail(err.to_string()))
}

/// Checks `u f = g u`, `v g = f v`, `v u = fⁿ`, `u v = gⁿ`.
pub fn shift_equivalence_verify<C: FactorizationSystem>(
    f: &Endo<C>,
    g: &Endo<C>,
    u: &C::Morphism,
    v: &C::Morphism,
    n: u64,
) -> Verdict {
    let mut log = EquationLog::<C>::new();
    log.eq("u∘f = g∘u", C::compose(u, &f.map), C::compose(&g.map, u));
    log.eq("v∘g = f∘v", C::compose(v, &g.map), C::compose(&f.map, v));
    log.eq(&format!("v∘u = f^{n}"), C::compose(v, u), power::<C>(&f.map, n));
    log.eq(&format!("u∘v = g^{n}"), C::compose(u, v), power::<C>(&g.map, n));
    log.verdict(format!("shift equivalence with lag {n}"))
}

/// Intertwiners `u = iota_g k pi_f`, `v = iota_f k⁻¹ pi_g` with `v u = f^∞`
/// and `u v = g^∞`, when the eventual automorphisms are conjugate by `k`.
pub fn eventual_equivalence_witness<C: FactorizationSystem>(
    f: &Endo<C>,
    g: &Endo<C>,
) -> Result<Option<(C::Morphism, C::Morphism)>> {
    let a = eventual_image_chain(f)?;
    let b = eventual_image_chain(g)?;
    let Some(k) = C::conjugating_iso(&a.auto, &b.auto) else {
        return Ok(None);
    };
    let k_inv = C::invert_iso(&k)?;
    let u = C::compose(&b.iota, &C::compose(&k, &a.pi)?)?;
    let v = C::compose(&a.iota, &C::compose(&k_inv, &b.pi)?)?;
    if !C::equal(&C::compose(&v, &u)?, &a.idempotent)
        || !C::equal(&C::compose(&u, &v)?, &b.idempotent)
    {
        return Err(Error::ContractViolation("eventual equivalence witness fails".into()));
    }
    Ok(Some((u, v)))
}
