use std::fmt;

/// Result class of a check.
///
/// `HypothesisFails` keeps vacuous passes apart from real ones: a property
/// whose premise does not hold on the given input says nothing either way.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Outcome {
    Pass,
    Fail,
    HypothesisFails,
    Skipped,
    NotApplicable,
}

impl Outcome {
    pub fn as_str(self) -> &'static str {
        match self {
            Outcome::Pass => "pass",
            Outcome::Fail => "fail",
            Outcome::HypothesisFails => "hypothesis fails",
            Outcome::Skipped => "skipped",
            Outcome::NotApplicable => "not applicable",
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Outcome of a check with a human-readable witness.
///
/// A failing verdict always names the violated equation and both sides of it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub outcome: Outcome,
    pub detail: String,
}

impl Verdict {
    pub fn pass(detail: impl Into<String>) -> Self {
        Self { outcome: Outcome::Pass, detail: detail.into() }
    }

    pub fn fail(detail: impl Into<String>) -> Self {
        Self { outcome: Outcome::Fail, detail: detail.into() }
    }

    pub fn hypothesis_fails(detail: impl Into<String>) -> Self {
        Self { outcome: Outcome::HypothesisFails, detail: detail.into() }
    }

    pub fn skipped(detail: impl Into<String>) -> Self {
        Self { outcome: Outcome::Skipped, detail: detail.into() }
    }

    pub fn not_applicable(detail: impl Into<String>) -> Self {
        Self { outcome: Outcome::NotApplicable, detail: detail.into() }
    }

    pub fn is_pass(&self) -> bool {
        self.outcome == Outcome::Pass
    }

    /// True only for a violated conclusion.
    pub fn is_failure(&self) -> bool {
        self.outcome == Outcome::Fail
    }

    /// Combines verdicts: the first failure wins, otherwise the first
    /// non-pass, otherwise a pass joining all details.
    pub fn all(verdicts: impl IntoIterator<Item = Verdict>) -> Verdict {
        let verdicts: Vec<Verdict> = verdicts.into_iter().collect();
        if let Some(v) = verdicts.iter().find(|v| v.is_failure()) {
            return v.clone();
        }
        if let Some(v) = verdicts.iter().find(|v| !v.is_pass()) {
            return v.clone();
        }
        let details: Vec<&str> = verdicts.iter().map(|v| v.detail.as_str()).collect();
        Verdict::pass(details.join("; "))
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.outcome, self.detail)
    }
}
