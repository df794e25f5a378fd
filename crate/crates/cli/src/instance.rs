//! Per-category loading, rendering and extra analyses.

use std::collections::BTreeMap;
use std::sync::Arc;

use evimg::algorithms::terminal_coalgebra;
use evimg::fdvect::{self, FdVect};
use evimg::finmet::{self, FinMet, Metric, ShortMap};
use evimg::finposet::{self, FinPoset, MonotoneMap, Poset};
use evimg::finset::{self, FinFunction, FinSet};
use evimg::oracles::{limit_colimit_oracle, subobject_oracle};
use evimg::{gen, Endo, EventualImageData, FactorizationSystem, Matrix, Rat, SubspaceBasis, Verdict};
use rand::rngs::StdRng;
use serde_json::{json, Value};

use crate::document::{parse_rationals, Diagnostic, MapPayload, ObjectPayload, Source};

pub type Check = (String, Verdict);

pub trait Instance: FactorizationSystem {
    fn load_object(src: &Source, path: &str, p: &ObjectPayload) -> Result<Self::Object, Diagnostic>;

    fn load_map(
        src: &Source,
        path: &str,
        p: &MapPayload,
        from: &Self::Object,
        to: &Self::Object,
    ) -> Result<Self::Morphism, Diagnostic>;

    fn object_json(x: &Self::Object) -> Value;

    fn morphism_json(f: &Self::Morphism) -> Value;

    /// Instance-specific descriptions and checks for `analyze`.
    fn extras(e: &Endo<Self>, data: &EventualImageData<Self>, out: &mut BTreeMap<String, Value>, checks: &mut Vec<Check>);

    fn coalgebra_oracle(e: &Endo<Self>, guard: u128) -> Verdict {
        subobject_oracle(e, guard)
    }

    fn limit_colimit_oracle(_e: &Endo<Self>) -> Verdict {
        Verdict::not_applicable(format!("{} objects have no underlying point set to enumerate", Self::NAME))
    }

    /// A valid morphism `X → X` that differs from `idempotent`, if any.
    fn wrong_idempotent(e: &Endo<Self>, idempotent: &Self::Morphism) -> Option<Self::Morphism>;

    /// The category's conjugacy invariant for two endomorphisms and their
    /// eventual automorphisms.
    fn invariants(f: &Endo<Self>, g: &Endo<Self>, auto_f: &Self::Morphism, auto_g: &Self::Morphism) -> Vec<Check>;

    fn random(rng: &mut StdRng, size: usize) -> Endo<Self>;
}

fn shape_error(src: &Source, path: &str, category: &str, needs: &str) -> Diagnostic {
    src.error(path, format!("{category} objects are given by {needs}"))
}

fn require_size(src: &Source, path: &str, p: &ObjectPayload, category: &str, needs: &str) -> Result<usize, Diagnostic> {
    p.size.ok_or_else(|| shape_error(src, path, category, needs))
}

fn table<'a>(src: &Source, path: &str, p: &'a MapPayload, domain: usize, codomain: usize) -> Result<&'a [usize], Diagnostic> {
    if p.matrix.is_some() {
        return Err(src.error(format!("{path}.matrix"), "this category takes a table, not a matrix"));
    }
    let t = p.table.as_deref().ok_or_else(|| src.error(path, "missing \"table\""))?;
    if t.len() != domain {
        return Err(src.error(format!("{path}.table"), format!("table has {} entries for {domain} points", t.len())));
    }
    if let Some(i) = t.iter().position(|&y| y >= codomain) {
        return Err(src.error(
            format!("{path}.table[{i}]"),
            format!("entry {} at index {i} is out of range for a target of {codomain} points", t[i]),
        ));
    }
    Ok(t)
}

fn matrix_json(m: &Matrix<Rat>) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array((0..m.cols()).map(|j| Value::String(m[(i, j)].to_string())).collect()))
            .collect(),
    )
}

fn vectors_json(b: &SubspaceBasis<Rat>) -> Value {
    Value::Array(
        b.vectors()
            .iter()
            .map(|v| Value::Array(v.iter().map(|x| Value::String(x.to_string())).collect()))
            .collect(),
    )
}

fn metric_json(m: &Metric<Rat>) -> Value {
    let rows: Vec<Vec<String>> = m.rows().iter().map(|r| r.iter().map(ToString::to_string).collect()).collect();
    json!({ "size": m.len(), "distances": rows })
}

fn poset_json(p: &Poset) -> Value {
    json!({ "size": p.len(), "order": p.relation() })
}

fn agree<C: Instance>(name: &str, got: evimg::Result<C::Morphism>, expected: &C::Morphism) -> Check {
    let verdict = match got {
        Ok(m) if C::equal(&m, expected) => Verdict::pass(C::morphism_json(&m).to_string()),
        Ok(m) => Verdict::fail(format!("{m:?} differs from the eventual idempotent {expected:?}")),
        Err(e) => Verdict::fail(e.to_string()),
    };
    (name.to_owned(), verdict)
}

fn automorphisms_conjugate<C: FactorizationSystem>(a: &C::Morphism, b: &C::Morphism) -> Check {
    let verdict = match C::conjugating_iso(a, b) {
        Some(k) => Verdict::pass(format!("conjugator {k:?}")),
        None => Verdict::fail(format!("{a:?} and {b:?} are not conjugate")),
    };
    ("eventual automorphisms conjugate".into(), verdict)
}

/// A constant map, always valid for the concrete instances, that is not
/// the given idempotent.
fn constant_other(n: usize, idempotent: &[usize]) -> Option<Vec<usize>> {
    (0..n).map(|p| vec![p; n]).find(|t| t.as_slice() != idempotent)
}

impl Instance for FinSet {
    fn load_object(src: &Source, path: &str, p: &ObjectPayload) -> Result<usize, Diagnostic> {
        if p.dimension.is_some() || p.distances.is_some() || p.order.is_some() {
            return Err(shape_error(src, path, "finset", "\"size\" alone"));
        }
        require_size(src, path, p, "finset", "\"size\"")
    }

    fn load_map(src: &Source, path: &str, p: &MapPayload, from: &usize, to: &usize) -> Result<FinFunction, Diagnostic> {
        let t = table(src, path, p, *from, *to)?;
        FinFunction::new(*to, t.to_vec()).map_err(|e| src.error(path, e.to_string()))
    }

    fn object_json(x: &usize) -> Value {
        json!({ "size": x })
    }

    fn morphism_json(f: &FinFunction) -> Value {
        json!({ "table": f.table() })
    }

    fn extras(e: &Endo<Self>, data: &EventualImageData<Self>, out: &mut BTreeMap<String, Value>, checks: &mut Vec<Check>) {
        if let Ok(p) = finset::periodic_points(&e.map) {
            out.insert("periodic_points".into(), json!(p));
        }
        if let Ok(t) = finset::cycle_type(&data.auto) {
            out.insert("automorphism_cycle_type".into(), json!(t.0));
        }
        match finset::unique_idempotent_in_powers(&e.map) {
            Ok(c) => {
                out.insert(
                    "power_sequence".into(),
                    json!({ "preperiod": c.preperiod, "period": c.period, "idempotent_exponent": c.exponent }),
                );
                checks.push(agree::<FinSet>("unique idempotent power", Ok(c.idempotent), &data.idempotent));
            }
            Err(err) => checks.push(("unique idempotent power".into(), Verdict::fail(err.to_string()))),
        }
        if e.size() <= finset::FACTORIAL_POWER_GUARD {
            checks.push(agree::<FinSet>("f^(|X|!) = f^∞", finset::factorial_power(&e.map), &data.idempotent));
        } else {
            checks.push(("f^(|X|!) = f^∞".into(), Verdict::skipped(format!("|X| > {}", finset::FACTORIAL_POWER_GUARD))));
        }
    }

    fn limit_colimit_oracle(e: &Endo<Self>) -> Verdict {
        limit_colimit_oracle(e)
    }

    fn wrong_idempotent(e: &Endo<Self>, idempotent: &FinFunction) -> Option<FinFunction> {
        constant_other(e.size(), idempotent.table()).map(|t| FinFunction::endo(t).expect("constant map"))
    }

    fn invariants(_f: &Endo<Self>, _g: &Endo<Self>, a: &FinFunction, b: &FinFunction) -> Vec<Check> {
        let verdict = finset::conjugate(a, b).unwrap_or_else(|e| Verdict::fail(e.to_string()));
        vec![("eventual automorphisms conjugate (cycle type)".into(), verdict)]
    }

    fn random(rng: &mut StdRng, size: usize) -> Endo<Self> {
        Endo::new(gen::fin_endo(rng, size)).expect("generated endo")
    }
}

impl Instance for FdVect<Rat> {
    fn load_object(src: &Source, path: &str, p: &ObjectPayload) -> Result<usize, Diagnostic> {
        match (p.dimension, p.size, &p.distances, &p.order) {
            (Some(d), None, None, None) => Ok(d),
            _ => Err(shape_error(src, path, "fdvect", "\"dimension\" alone")),
        }
    }

    fn load_map(src: &Source, path: &str, p: &MapPayload, from: &usize, to: &usize) -> Result<Matrix<Rat>, Diagnostic> {
        if p.table.is_some() {
            return Err(src.error(format!("{path}.table"), "fdvect takes a matrix, not a table"));
        }
        let rows = p.matrix.as_ref().ok_or_else(|| src.error(path, "missing \"matrix\""))?;
        let mpath = format!("{path}.matrix");
        if rows.len() != *to {
            return Err(src.error(&mpath, format!("{} rows for a target of dimension {to}", rows.len())));
        }
        let rows = parse_rationals(src, &mpath, rows)?;
        Matrix::from_rows_with_cols(rows, *from).map_err(|e| src.error(&mpath, format!("{e} (source dimension {from})")))
    }

    fn object_json(x: &usize) -> Value {
        json!({ "dimension": x })
    }

    fn morphism_json(f: &Matrix<Rat>) -> Value {
        json!({ "matrix": matrix_json(f) })
    }

    fn extras(e: &Endo<Self>, data: &EventualImageData<Self>, out: &mut BTreeMap<String, Value>, checks: &mut Vec<Check>) {
        let f = &e.map;
        if let Ok(chi) = fdvect::char_poly(f) {
            out.insert("characteristic_polynomial".into(), json!(chi.to_string()));
        }
        if let Ok(factors) = fdvect::describe_invariant_factors(f) {
            out.insert("invariant_factors".into(), json!(factors));
        }
        match fdvect::fitting(f) {
            Ok(fit) => {
                out.insert(
                    "fitting".into(),
                    json!({
                        "eventual_image_basis": vectors_json(&fit.ei),
                        "eventual_kernel_basis": vectors_json(&fit.ek),
                        "automorphism": matrix_json(&fit.auto),
                        "nilpotent": matrix_json(&fit.nilpotent),
                    }),
                );
            }
            Err(err) => checks.push(("Fitting decomposition".into(), Verdict::fail(err.to_string()))),
        }
        match fdvect::f_infinity_poly(f) {
            Ok(p) => {
                out.insert(
                    "idempotent_polynomial".into(),
                    json!({ "r": p.r.to_string(), "exponent": p.exponent, "in_power_span": p.in_power_span() }),
                );
                checks.push(agree::<Self>("f^∞ = r(f)^dim", Ok(p.idempotent), &data.idempotent));
            }
            Err(err) => checks.push(("f^∞ = r(f)^dim".into(), Verdict::fail(err.to_string()))),
        }
        let inverse = fdvect::inverse_cayley_hamilton(&data.auto);
        checks.push(match inverse {
            Ok(m) if m == data.auto_inv => ("automorphism inverse as q(f̄)".into(), Verdict::pass(format!("{m:?}"))),
            Ok(m) => ("automorphism inverse as q(f̄)".into(), Verdict::fail(format!("q(f̄) = {m:?}, expected {:?}", data.auto_inv))),
            Err(err) => ("automorphism inverse as q(f̄)".into(), Verdict::fail(err.to_string())),
        });
    }

    fn coalgebra_oracle(e: &Endo<Self>, _guard: u128) -> Verdict {
        match terminal_coalgebra(e) {
            Ok(sub) => fdvect::coalgebra_oracle(&e.map, &SubspaceBasis::column_space(&sub.embedding)),
            Err(err) => Verdict::fail(err.to_string()),
        }
    }

    fn wrong_idempotent(e: &Endo<Self>, idempotent: &Matrix<Rat>) -> Option<Matrix<Rat>> {
        let n = e.size();
        (n > 0).then(|| {
            let mut m = idempotent.clone();
            m[(0, 0)] = m[(0, 0)].clone() + Rat::from_integer(1.into());
            m
        })
    }

    fn invariants(f: &Endo<Self>, g: &Endo<Self>, a: &Matrix<Rat>, b: &Matrix<Rat>) -> Vec<Check> {
        vec![
            ("Williams invariant".into(), fdvect::williams_check(&f.map, &g.map)),
            ("eventual automorphisms similar".into(), fdvect::similar(a, b)),
        ]
    }

    fn random(rng: &mut StdRng, size: usize) -> Endo<Self> {
        Endo::new(gen::matrix::<Rat, _>(rng, size.min(6))).expect("generated endo")
    }
}

impl Instance for FinMet<Rat> {
    fn load_object(src: &Source, path: &str, p: &ObjectPayload) -> Result<Arc<Metric<Rat>>, Diagnostic> {
        let needs = "\"size\" and \"distances\"";
        if p.dimension.is_some() || p.order.is_some() {
            return Err(shape_error(src, path, "finmet", needs));
        }
        let size = require_size(src, path, p, "finmet", needs)?;
        let rows = p.distances.as_ref().ok_or_else(|| shape_error(src, path, "finmet", needs))?;
        let dpath = format!("{path}.distances");
        if rows.len() != size || rows.iter().any(|r| r.len() != size) {
            return Err(src.error(&dpath, format!("distance matrix must be {size}×{size}")));
        }
        let d = parse_rationals(src, &dpath, rows)?;
        Metric::new(d).map(Arc::new).map_err(|e| src.error(&dpath, e.to_string()))
    }

    fn load_map(
        src: &Source,
        path: &str,
        p: &MapPayload,
        from: &Arc<Metric<Rat>>,
        to: &Arc<Metric<Rat>>,
    ) -> Result<ShortMap<Rat>, Diagnostic> {
        let t = table(src, path, p, from.len(), to.len())?;
        ShortMap::new(from.clone(), to.clone(), t.to_vec()).map_err(|e| src.error(format!("{path}.table"), e.to_string()))
    }

    fn object_json(x: &Arc<Metric<Rat>>) -> Value {
        metric_json(x)
    }

    fn morphism_json(f: &ShortMap<Rat>) -> Value {
        json!({ "table": f.table() })
    }

    fn extras(e: &Endo<Self>, data: &EventualImageData<Self>, out: &mut BTreeMap<String, Value>, checks: &mut Vec<Check>) {
        if let Ok(p) = finmet::recurrent_points(&e.map) {
            out.insert("recurrent_points".into(), json!(p));
        }
        match finmet::quotient_metric(&e.map) {
            Ok(q) => {
                let mut m = metric_json(&q.metric);
                m["classes"] = json!(q.classes);
                m["representatives"] = json!(q.representatives);
                out.insert("quotient_metric".into(), m);
            }
            Err(err) => checks.push(("quotient metric".into(), Verdict::fail(err.to_string()))),
        }
        checks.push(("subspace and quotient metrics agree".into(), finmet::quotient_subspace_isometry(&e.map)));
        checks.push(agree::<Self>(
            "idempotent in the closure of the powers",
            finmet::unique_idempotent_in_closure(&e.map),
            &data.idempotent,
        ));
    }

    fn limit_colimit_oracle(e: &Endo<Self>) -> Verdict {
        limit_colimit_oracle(e)
    }

    fn wrong_idempotent(e: &Endo<Self>, idempotent: &ShortMap<Rat>) -> Option<ShortMap<Rat>> {
        let t = constant_other(e.size(), idempotent.table())?;
        ShortMap::endo(e.object.clone(), t).ok()
    }

    fn invariants(_f: &Endo<Self>, _g: &Endo<Self>, a: &ShortMap<Rat>, b: &ShortMap<Rat>) -> Vec<Check> {
        vec![automorphisms_conjugate::<Self>(a, b)]
    }

    fn random(rng: &mut StdRng, size: usize) -> Endo<Self> {
        let t = gen::endo_table(rng, size);
        let space = Arc::new(gen::metric_for_table::<Rat, _>(rng, &t));
        Endo::new(ShortMap::endo(space, t).expect("short by construction")).expect("generated endo")
    }
}

impl Instance for FinPoset {
    fn load_object(src: &Source, path: &str, p: &ObjectPayload) -> Result<Arc<Poset>, Diagnostic> {
        let needs = "\"size\" and \"order\"";
        if p.dimension.is_some() || p.distances.is_some() {
            return Err(shape_error(src, path, "finposet", needs));
        }
        let size = require_size(src, path, p, "finposet", needs)?;
        let le = p.order.as_ref().ok_or_else(|| shape_error(src, path, "finposet", needs))?;
        let opath = format!("{path}.order");
        if le.len() != size || le.iter().any(|r| r.len() != size) {
            return Err(src.error(&opath, format!("order matrix must be {size}×{size}")));
        }
        Poset::new(le.clone()).map(Arc::new).map_err(|e| src.error(&opath, e.to_string()))
    }

    fn load_map(src: &Source, path: &str, p: &MapPayload, from: &Arc<Poset>, to: &Arc<Poset>) -> Result<MonotoneMap, Diagnostic> {
        let t = table(src, path, p, from.len(), to.len())?;
        MonotoneMap::new(from.clone(), to.clone(), t.to_vec()).map_err(|e| src.error(format!("{path}.table"), e.to_string()))
    }

    fn object_json(x: &Arc<Poset>) -> Value {
        poset_json(x)
    }

    fn morphism_json(f: &MonotoneMap) -> Value {
        json!({ "table": f.table() })
    }

    fn extras(e: &Endo<Self>, data: &EventualImageData<Self>, out: &mut BTreeMap<String, Value>, checks: &mut Vec<Check>) {
        if let Ok(p) = finset::periodic_points(&e.map.underlying()) {
            out.insert("periodic_points".into(), json!(p));
        }
        checks.push(agree::<Self>(
            "monotone automorphism with monotone inverse",
            finposet::eventual_image_poset(&e.map).map(|d| d.idempotent),
            &data.idempotent,
        ));
    }

    fn limit_colimit_oracle(e: &Endo<Self>) -> Verdict {
        limit_colimit_oracle(e)
    }

    fn wrong_idempotent(e: &Endo<Self>, idempotent: &MonotoneMap) -> Option<MonotoneMap> {
        let t = constant_other(e.size(), idempotent.table())?;
        MonotoneMap::endo(e.object.clone(), t).ok()
    }

    fn invariants(_f: &Endo<Self>, _g: &Endo<Self>, a: &MonotoneMap, b: &MonotoneMap) -> Vec<Check> {
        vec![automorphisms_conjugate::<Self>(a, b)]
    }

    fn random(rng: &mut StdRng, size: usize) -> Endo<Self> {
        let p = Arc::new(gen::poset(rng, size));
        Endo::new(gen::monotone_endo(rng, &p)).expect("generated endo")
    }
}
