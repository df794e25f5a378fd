//! The JSON input document and its diagnostics.

use std::fmt;
use std::str::FromStr;

use evimg::Rat;
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Category {
    Finset,
    Fdvect,
    Finmet,
    Finposet,
}

impl Category {
    pub fn as_str(self) -> &'static str {
        match self {
            Category::Finset => "finset",
            Category::Fdvect => "fdvect",
            Category::Finmet => "finmet",
            Category::Finposet => "finposet",
        }
    }
}

/// A rational written as `"p/q"` or `"p"`; bare JSON integers are accepted
/// too. The original spelling is kept for the report's input echo.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatText(pub String);

impl RatText {
    pub fn parse(&self) -> Result<Rat, String> {
        let text = self.0.trim();
        if let Some((_, q)) = text.split_once('/') {
            if q.trim().trim_start_matches(['+', '-']).chars().all(|c| c == '0') {
                return Err(format!("\"{}\" has a zero denominator", self.0));
            }
        }
        Rat::from_str(text).map_err(|_| format!("\"{}\" is not a rational of the form p/q", self.0))
    }
}

impl Serialize for RatText {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for RatText {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct RatVisitor;

        impl Visitor<'_> for RatVisitor {
            type Value = RatText;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a rational string \"p/q\" or an integer")
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<RatText, E> {
                Ok(RatText(v.to_owned()))
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<RatText, E> {
                Ok(RatText(v.to_string()))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<RatText, E> {
                Ok(RatText(v.to_string()))
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> Result<RatText, E> {
                Err(E::custom(format!("floating-point number {v}; write rationals as \"p/q\" strings")))
            }
        }

        d.deserialize_any(RatVisitor)
    }
}

/// Object payload. Which fields are required depends on the category:
/// `size` for finset, `dimension` for fdvect, `size` and `distances` for
/// finmet, `size` and `order` for finposet.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObjectPayload {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub size: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dimension: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub distances: Option<Vec<Vec<RatText>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<Vec<Vec<bool>>>,
}

/// A morphism: a `table` of point images, or a row-major `matrix`.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapPayload {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<RatText>>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EndoPayload {
    pub object: ObjectPayload,
    pub map: MapPayload,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    pub category: Category,
    pub object: ObjectPayload,
    pub map: MapPayload,
    /// A second endomorphism `g`, for `compare` and binary suites.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub second: Option<EndoPayload>,
    /// `u: X → Y` from the first object to the second.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub u: Option<MapPayload>,
    /// `v: Y → X`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub v: Option<MapPayload>,
    /// Lag of the shift equivalence `vu = fⁿ`, `uv = gⁿ`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<u64>,
}

/// A parse or validation error pinned to a line of the input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub line: Option<usize>,
    pub column: Option<usize>,
    pub path: String,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.line, self.column) {
            (Some(l), Some(c)) => write!(f, "line {l}, column {c}")?,
            (Some(l), None) => write!(f, "line {l}")?,
            _ => f.write_str("input")?,
        }
        if !self.path.is_empty() {
            write!(f, " ({})", self.path)?;
        }
        write!(f, ": {}", self.message)
    }
}

/// The raw text of a document, kept to attach line numbers to errors found
/// after parsing.
pub struct Source {
    text: String,
}

impl Source {
    pub fn new(text: String) -> Self {
        Self { text }
    }

    pub fn parse(&self) -> Result<InputDocument, Diagnostic> {
        serde_json::from_str(&self.text).map_err(|e| Diagnostic {
            line: Some(e.line()),
            column: Some(e.column()),
            path: String::new(),
            message: e.to_string().split(" at line ").next().unwrap_or_default().to_owned(),
        })
    }

    /// Line of the innermost key of `path`, found by searching for each key
    /// in turn after the previous match. Index components are ignored.
    pub fn locate(&self, path: &str) -> Option<usize> {
        let mut offset = 0;
        let mut found = None;
        for key in path.split('.').map(|k| k.split('[').next().unwrap_or(k)).filter(|k| !k.is_empty()) {
            let needle = format!("\"{key}\"");
            let at = self.text[offset..].find(&needle)? + offset;
            found = Some(at);
            offset = at + needle.len();
        }
        found.map(|at| self.text[..at].matches('\n').count() + 1)
    }

    pub fn error(&self, path: impl Into<String>, message: impl Into<String>) -> Diagnostic {
        let path = path.into();
        Diagnostic { line: self.locate(&path), column: None, path, message: message.into() }
    }
}

pub fn parse_rationals(source: &Source, path: &str, rows: &[Vec<RatText>]) -> Result<Vec<Vec<Rat>>, Diagnostic> {
    rows.iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(|(j, x)| x.parse().map_err(|m| source.error(format!("{path}[{i}][{j}]"), m)))
                .collect()
        })
        .collect()
}
