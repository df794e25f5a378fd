//! The three subcommands, generic over the category.

use evimg::algorithms::{eventual_image_chain, eventual_image_idempotent_power};
use evimg::checks::{
    algorithms_agree, check_commuting_product, check_timescale, check_vu_uv, eventual_equivalence_witness,
    shift_equivalence_verify, splitting_identities,
};
use evimg::oracles::universal_property_oracle;
use evimg::{Endo, EventualImageData, Verdict};
use rand::rngs::StdRng;
use rand::SeedableRng;
use serde_json::json;

use crate::document::{Diagnostic, InputDocument, Source};
use crate::instance::Instance;
use crate::report::{ImageReport, Report};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, clap::ValueEnum)]
pub enum Suite {
    Axioms,
    Timescale,
    Commuting,
    VuUv,
    Coalgebra,
    LimitColimit,
    Universal,
}

impl Suite {
    pub fn all() -> Vec<Suite> {
        vec![
            Suite::Axioms,
            Suite::Timescale,
            Suite::Commuting,
            Suite::VuUv,
            Suite::Coalgebra,
            Suite::LimitColimit,
            Suite::Universal,
        ]
    }
}

pub struct Options {
    pub seed: u64,
    pub oracle_guard: u128,
    pub suites: Vec<Suite>,
    pub k: usize,
    pub inject_wrong_idempotent: bool,
}

/// Random endomorphisms checked by the axioms suite besides the input.
const AXIOM_SAMPLES: usize = 20;

struct Loaded<C: Instance> {
    f: Endo<C>,
    g: Option<Endo<C>>,
    u: Option<C::Morphism>,
    v: Option<C::Morphism>,
}

fn load<C: Instance>(src: &Source, doc: &InputDocument) -> Result<Loaded<C>, Diagnostic> {
    let x = C::load_object(src, "object", &doc.object)?;
    let endo = |path: &str, object: &C::Object, m| {
        let map = C::load_map(src, path, m, object, object)?;
        Endo::<C>::new(map).map_err(|e| src.error(path, e.to_string()))
    };
    let f = endo("map", &x, &doc.map)?;
    let mut loaded = Loaded { f, g: None, u: None, v: None };
    let Some(second) = &doc.second else {
        if doc.u.is_some() || doc.v.is_some() {
            return Err(src.error(if doc.u.is_some() { "u" } else { "v" }, "u and v need a \"second\" endomorphism"));
        }
        return Ok(loaded);
    };
    let y = C::load_object(src, "second.object", &second.object)?;
    loaded.g = Some(endo("second.map", &y, &second.map)?);
    if let Some(u) = &doc.u {
        loaded.u = Some(C::load_map(src, "u", u, &x, &y)?);
    }
    if let Some(v) = &doc.v {
        loaded.v = Some(C::load_map(src, "v", v, &y, &x)?);
    }
    Ok(loaded)
}

fn image<C: Instance>(report: &mut Report, label: &'static str, e: &Endo<C>) -> Option<EventualImageData<C>> {
    match eventual_image_chain(e) {
        Ok(data) => {
            report.eventual_images.push(ImageReport::new(label, &data));
            Some(data)
        }
        Err(err) => {
            report.check(format!("eventual image of {label}"), Verdict::fail(err.to_string()));
            None
        }
    }
}

pub fn analyze<C: Instance>(src: &Source, doc: InputDocument) -> Result<Report, Diagnostic> {
    let loaded = load::<C>(src, &doc)?;
    let mut report = Report::new("analyze", doc);
    for (label, e) in std::iter::once(("f", &loaded.f)).chain(loaded.g.as_ref().map(|g| ("g", g))) {
        let Some(data) = image(&mut report, label, e) else { continue };
        report.check(format!("splitting identities for {label} (image chain)"), splitting_identities(e, &data));
        match eventual_image_idempotent_power(e) {
            Ok(other) => report.check(
                format!("splitting identities for {label} (idempotent power)"),
                splitting_identities(e, &other),
            ),
            Err(err) => report.check(format!("idempotent power for {label}"), Verdict::fail(err.to_string())),
        }
        report.check(format!("algorithms agree for {label}"), algorithms_agree(e));
        let mut checks = Vec::new();
        let mut extras = std::collections::BTreeMap::new();
        C::extras(e, &data, &mut extras, &mut checks);
        for (k, v) in extras {
            let key = if label == "f" { k } else { format!("{k} ({label})") };
            report.extras.insert(key, v);
        }
        for (name, v) in checks {
            report.check(format!("{name} for {label}"), v);
        }
    }
    Ok(report)
}

pub fn verify<C: Instance>(src: &Source, doc: InputDocument, opts: &Options) -> Result<Report, Diagnostic> {
    let loaded = load::<C>(src, &doc)?;
    let mut report = Report::new("verify", doc);
    let f = &loaded.f;
    let Some(data) = image(&mut report, "f", f) else { return Ok(report) };

    let mut bundle = data;
    if opts.inject_wrong_idempotent {
        match C::wrong_idempotent(f, &bundle.idempotent) {
            Some(wrong) => bundle.idempotent = wrong,
            None => report.check("inject wrong idempotent", Verdict::skipped("every endomorphism of a one-point object is the identity")),
        }
    }
    report.check("splitting identities", splitting_identities(f, &bundle));

    let mut suites = opts.suites.clone();
    suites.sort_unstable();
    suites.dedup();
    for suite in suites {
        match suite {
            Suite::Axioms => {
                report.check("algorithms agree", algorithms_agree(f));
                let mut rng = StdRng::seed_from_u64(opts.seed);
                let size = f.size().clamp(1, 6);
                let mut verdicts = Vec::new();
                for i in 0..AXIOM_SAMPLES {
                    let e = C::random(&mut rng, size);
                    let v = Verdict::all([
                        eventual_image_chain(&e)
                            .map(|d| splitting_identities(&e, &d))
                            .unwrap_or_else(|err| Verdict::fail(err.to_string())),
                        algorithms_agree(&e),
                    ]);
                    verdicts.push(if v.is_failure() { Verdict::fail(format!("sample {i} {:?}: {}", e.map, v.detail)) } else { v });
                }
                let v = Verdict::all(verdicts);
                let v = if v.is_pass() {
                    Verdict::pass(format!("{AXIOM_SAMPLES} random {} endomorphisms of size {size}", C::NAME))
                } else {
                    v
                };
                report.check(format!("axioms on random samples (seed {})", opts.seed), v);
            }
            Suite::Timescale => {
                for n in 2..=4 {
                    report.check(format!("timescale n = {n}"), check_timescale(f, n));
                }
            }
            Suite::Commuting => {
                for a in 2..=3 {
                    let fa = f.pow(a).expect("powers of a valid endomorphism");
                    report.check(format!("commuting product with f^{a}"), check_commuting_product(f, &fa));
                }
                if let Some(g) = loaded.g.as_ref().filter(|g| g.object == f.object) {
                    report.check("commuting product with g", check_commuting_product(f, g));
                }
            }
            Suite::VuUv => match (&loaded.u, &loaded.v) {
                (Some(u), Some(v)) => report.check("vu and uv (given u, v)", check_vu_uv::<C>(u, v)),
                _ => {
                    let f2 = f.pow(2).expect("powers of a valid endomorphism");
                    report.check("vu and uv (u = f, v = f²)", check_vu_uv::<C>(&f.map, &f2.map));
                }
            },
            Suite::Coalgebra => report.check("coalgebra oracle", C::coalgebra_oracle(f, opts.oracle_guard)),
            Suite::LimitColimit => report.check("limit-colimit oracle", C::limit_colimit_oracle(f)),
            Suite::Universal => {
                report.check(format!("universal-property oracle (k = {})", opts.k), universal_property_oracle(f, opts.k))
            }
        }
    }
    Ok(report)
}

pub fn compare<C: Instance>(src: &Source, doc: InputDocument) -> Result<Report, Diagnostic> {
    let loaded = load::<C>(src, &doc)?;
    let Some(g) = &loaded.g else {
        return Err(src.error("second", "compare needs a \"second\" endomorphism"));
    };
    let lag = doc.n;
    if (loaded.u.is_some() || loaded.v.is_some() || lag.is_some())
        && !(loaded.u.is_some() && loaded.v.is_some() && lag.is_some())
    {
        return Err(src.error("n", "a shift equivalence needs all of u, v and n"));
    }
    let mut report = Report::new("compare", doc);
    let f = &loaded.f;
    let (Some(df), Some(dg)) = (image(&mut report, "f", f), image(&mut report, "g", g)) else {
        return Ok(report);
    };
    if let (Some(u), Some(v), Some(n)) = (&loaded.u, &loaded.v, lag) {
        report.check(format!("shift equivalence (lag {n})"), shift_equivalence_verify(f, g, u, v, n));
    }
    let witness = match eventual_equivalence_witness(f, g) {
        Ok(Some((u, v))) => {
            report.extras.insert("witness".into(), json!({ "u": C::morphism_json(&u), "v": C::morphism_json(&v) }));
            Verdict::pass("u = ι_g k π_f and v = ι_f k⁻¹ π_g give vu = f^∞, uv = g^∞")
        }
        Ok(None) => Verdict::fail("no eventual-equivalence witness: the eventual automorphisms are not conjugate"),
        Err(err) => Verdict::fail(err.to_string()),
    };
    report.check("eventual equivalence", witness);
    for (name, v) in C::invariants(f, g, &df.auto, &dg.auto) {
        report.check(name, v);
    }
    Ok(report)
}
