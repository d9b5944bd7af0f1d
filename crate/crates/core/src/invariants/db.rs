use std::fmt;
use std::path::Path;

use num_bigint::BigInt;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use super::InvError;
use crate::elimination::Presentation;
use crate::poly::{BiLaurent, IntPoly1};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KnotRecord {
    pub name: String,
    /// Â-polynomial in normal form, without the factor `ℓ - 1`.
    pub ahat: BiLaurent,
    pub alexander: IntPoly1,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub presentation: Option<Presentation>,
    pub provenance: String,
}

impl KnotRecord {
    /// Record invariants: nonzero normal-form Â and `|Δ(1)| = 1`.
    pub fn validate(&self) -> Result<(), String> {
        if self.name.trim().is_empty() {
            return Err("empty name".into());
        }
        if self.ahat.is_zero() {
            return Err("ahat is zero".into());
        }
        if !self.ahat.is_normal() {
            return Err("ahat is not in normal form".into());
        }
        let at_one = self.alexander.eval(&BigInt::from(1));
        if at_one.abs() != BigInt::from(1) {
            return Err(format!("alexander polynomial evaluates to {at_one} at 1"));
        }
        Ok(())
    }
}

/// A rejected database entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecordIssue {
    pub index: usize,
    pub name: Option<String>,
    pub reason: String,
}

impl fmt::Display for RecordIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.name {
            Some(n) => write!(f, "record {} ({n}): {}", self.index, self.reason),
            None => write!(f, "record {}: {}", self.index, self.reason),
        }
    }
}

/// Parses a database; every invalid record is reported, not just the first.
/// Blank input is an empty database.
pub fn parse_db(src: &str) -> Result<Vec<KnotRecord>, InvError> {
    if src.trim().is_empty() {
        return Ok(Vec::new());
    }
    let raw: Vec<serde_json::Value> = serde_json::from_str(src).map_err(|e| InvError::Json(e.to_string()))?;
    let mut out = Vec::with_capacity(raw.len());
    let mut issues = Vec::new();
    for (index, v) in raw.into_iter().enumerate() {
        let name = v.get("name").and_then(|n| n.as_str()).map(str::to_string);
        match serde_json::from_value::<KnotRecord>(v) {
            Ok(rec) => match rec.validate() {
                Ok(()) => out.push(rec),
                Err(reason) => issues.push(RecordIssue { index, name, reason }),
            },
            Err(e) => issues.push(RecordIssue {
                index,
                name,
                reason: e.to_string(),
            }),
        }
    }
    if issues.is_empty() {
        Ok(out)
    } else {
        Err(InvError::InvalidRecords(issues))
    }
}

/// Canonical text form; `parse_db` followed by `render_db` reproduces a
/// canonical file byte for byte.
pub fn render_db(records: &[KnotRecord]) -> String {
    let mut s = serde_json::to_string_pretty(records).expect("records serialize");
    s.push('\n');
    s
}

pub fn load_db(path: impl AsRef<Path>) -> Result<Vec<KnotRecord>, InvError> {
    let path = path.as_ref();
    let src = std::fs::read_to_string(path).map_err(|e| InvError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_db(&src)
}

pub fn save_db(path: impl AsRef<Path>, records: &[KnotRecord]) -> Result<(), InvError> {
    let path = path.as_ref();
    std::fs::write(path, render_db(records)).map_err(|e| InvError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

pub const BUNDLED_DB: &str = include_str!("../../data/knots.json");

pub fn bundled_db() -> Vec<KnotRecord> {
    parse_db(BUNDLED_DB).expect("bundled database is valid")
}

pub fn find<'a>(records: &'a [KnotRecord], name: &str) -> Result<&'a KnotRecord, InvError> {
    records
        .iter()
        .find(|r| r.name == name)
        .ok_or_else(|| InvError::UnknownKnot(name.to_string()))
}
