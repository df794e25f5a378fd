//! Reports and their two renderings.

use std::collections::BTreeMap;
use std::fmt::Write;

use evimg::{EventualImageData, Outcome, Verdict};
use serde::Serialize;
use serde_json::Value;

use crate::document::InputDocument;
use crate::instance::Instance;

#[derive(Debug, Serialize)]
pub struct ImageReport {
    pub endomorphism: &'static str,
    pub carrier: Value,
    pub iota: Value,
    pub pi: Value,
    pub idempotent: Value,
    pub automorphism: Value,
    pub automorphism_inverse: Value,
    pub stabilization_index: usize,
}

impl ImageReport {
    pub fn new<C: Instance>(label: &'static str, data: &EventualImageData<C>) -> Self {
        Self {
            endomorphism: label,
            carrier: C::object_json(&data.carrier),
            iota: C::morphism_json(&data.iota),
            pi: C::morphism_json(&data.pi),
            idempotent: C::morphism_json(&data.idempotent),
            automorphism: C::morphism_json(&data.auto),
            automorphism_inverse: C::morphism_json(&data.auto_inv),
            stabilization_index: data.stabilization_index,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub outcome: &'static str,
    pub detail: String,
}

fn outcome_key(o: Outcome) -> &'static str {
    match o {
        Outcome::Pass => "pass",
        Outcome::Fail => "fail",
        Outcome::HypothesisFails => "hypothesis_fails",
        Outcome::Skipped => "skipped",
        Outcome::NotApplicable => "not_applicable",
    }
}

#[derive(Debug, Default, Serialize)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
    pub hypothesis_fails: usize,
    pub skipped: usize,
    pub not_applicable: usize,
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub command: &'static str,
    pub input: InputDocument,
    pub eventual_images: Vec<ImageReport>,
    pub extras: BTreeMap<String, Value>,
    pub checks: Vec<CheckReport>,
    pub summary: Summary,
    pub status: &'static str,
    /// Wall-clock time; only present with `--timing`, since it would break
    /// byte-identical reports.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u128>,
}

impl Report {
    pub fn new(command: &'static str, input: InputDocument) -> Self {
        Self {
            command,
            input,
            eventual_images: Vec::new(),
            extras: BTreeMap::new(),
            checks: Vec::new(),
            summary: Summary::default(),
            status: "pass",
            elapsed_ms: None,
        }
    }

    pub fn check(&mut self, name: impl Into<String>, v: Verdict) {
        let s = &mut self.summary;
        match v.outcome {
            Outcome::Pass => s.passed += 1,
            Outcome::Fail => {
                s.failed += 1;
                self.status = "fail";
            }
            Outcome::HypothesisFails => s.hypothesis_fails += 1,
            Outcome::Skipped => s.skipped += 1,
            Outcome::NotApplicable => s.not_applicable += 1,
        }
        self.checks.push(CheckReport { name: name.into(), outcome: outcome_key(v.outcome), detail: v.detail });
    }

    pub fn failed(&self) -> bool {
        self.summary.failed > 0
    }

    pub fn machine(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report is serializable");
        s.push('\n');
        s
    }

    pub fn pretty(&self) -> String {
        let mut out = String::new();
        let compact = |v: &Value| serde_json::to_string(v).expect("value is serializable");
        let _ = writeln!(out, "{} ({})", self.command, self.input.category.as_str());
        for image in &self.eventual_images {
            let _ = writeln!(out, "\neventual image of {}", image.endomorphism);
            for (name, value) in [
                ("carrier", &image.carrier),
                ("iota", &image.iota),
                ("pi", &image.pi),
                ("idempotent", &image.idempotent),
                ("automorphism", &image.automorphism),
                ("inverse", &image.automorphism_inverse),
            ] {
                let _ = writeln!(out, "  {name:<13}{}", compact(value));
            }
            let _ = writeln!(out, "  {:<13}{}", "stabilizes", image.stabilization_index);
        }
        if !self.extras.is_empty() {
            let _ = writeln!(out, "\ndetails");
            for (k, v) in &self.extras {
                let _ = writeln!(out, "  {k}: {}", compact(v));
            }
        }
        let _ = writeln!(out, "\nchecks");
        for c in &self.checks {
            let tag = match c.outcome {
                "pass" => "PASS",
                "fail" => "FAIL",
                "hypothesis_fails" => "HYPO",
                "skipped" => "SKIP",
                _ => "N/A ",
            };
            let _ = writeln!(out, "  {tag} {}: {}", c.name, c.detail);
        }
        let s = &self.summary;
        let _ = write!(
            out,
            "\n{}: {} passed, {} failed, {} hypothesis not met, {} skipped, {} not applicable",
            self.status, s.passed, s.failed, s.hypothesis_fails, s.skipped, s.not_applicable
        );
        if let Some(ms) = self.elapsed_ms {
            let _ = write!(out, " ({ms} ms)");
        }
        out.push('\n');
        out
    }
}
