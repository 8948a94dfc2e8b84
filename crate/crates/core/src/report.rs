//! Claim records and the JSON verification report.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ClaimValue {
    Integer(i64),
    Real(f64),
}

impl ClaimValue {
    pub fn as_f64(self) -> f64 {
        match self {
            ClaimValue::Integer(v) => v as f64,
            ClaimValue::Real(v) => v,
        }
    }
}

impl From<f64> for ClaimValue {
    fn from(v: f64) -> Self {
        ClaimValue::Real(v)
    }
}

impl From<u64> for ClaimValue {
    fn from(v: u64) -> Self {
        ClaimValue::Integer(v as i64)
    }
}

/// How a computed value is compared with the claimed one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    /// `|computed − claimed| <= tolerance`.
    Near,
    /// `computed <= claimed + tolerance`.
    AtMost,
    /// `computed >= claimed − tolerance`.
    AtLeast,
    /// Equal integers; off by one is boundary-sensitive.
    ExactInteger,
    /// Recorded for reference, never fails.
    Informational,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    BoundarySensitive,
    Informational,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClaimRecord {
    pub id: String,
    pub claimed_value: ClaimValue,
    /// `None` when the computation itself failed.
    pub computed_value: Option<ClaimValue>,
    pub tolerance: f64,
    pub check: Check,
    pub status: Status,
    pub citation: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

pub fn judge(check: Check, claimed: ClaimValue, computed: Option<ClaimValue>, tolerance: f64) -> Status {
    let Some(computed) = computed else {
        return match check {
            Check::Informational => Status::Informational,
            _ => Status::Fail,
        };
    };
    let (p, c) = (claimed.as_f64(), computed.as_f64());
    if c.is_nan() {
        return Status::Fail;
    }
    let ok = match check {
        Check::Near => (c - p).abs() <= tolerance,
        Check::AtMost => c <= p + tolerance,
        Check::AtLeast => c >= p - tolerance,
        Check::ExactInteger => {
            let d = (c - p).abs();
            if d == 0.0 {
                true
            } else if d == 1.0 {
                return Status::BoundarySensitive;
            } else {
                false
            }
        }
        Check::Informational => return Status::Informational,
    };
    if ok {
        Status::Pass
    } else {
        Status::Fail
    }
}

impl ClaimRecord {
    pub fn new(
        id: impl Into<String>,
        check: Check,
        claimed: impl Into<ClaimValue>,
        computed: Option<ClaimValue>,
        tolerance: f64,
        citation: impl Into<String>,
    ) -> Self {
        let claimed = claimed.into();
        ClaimRecord {
            id: id.into(),
            claimed_value: claimed,
            computed_value: computed,
            tolerance,
            check,
            status: judge(check, claimed, computed, tolerance),
            citation: citation.into(),
            note: None,
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    /// Re-judges the record with a different tolerance.
    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self.status = judge(self.check, self.claimed_value, self.computed_value, tolerance);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: u32,
    pub tool: String,
    pub version: String,
    pub claims: Vec<ClaimRecord>,
}

impl Report {
    pub fn new(claims: Vec<ClaimRecord>) -> Self {
        Report {
            schema: SCHEMA_VERSION,
            tool: "hbounds".to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            claims,
        }
    }

    pub fn passed(&self) -> bool {
        self.claims.iter().all(|c| c.status != Status::Fail)
    }

    pub fn get(&self, id: &str) -> Option<&ClaimRecord> {
        self.claims.iter().find(|c| c.id == id)
    }

    pub fn counts(&self) -> BTreeMap<&'static str, usize> {
        let mut m = BTreeMap::new();
        for c in &self.claims {
            let key = match c.status {
                Status::Pass => "pass",
                Status::Fail => "fail",
                Status::BoundarySensitive => "boundary-sensitive",
                Status::Informational => "informational",
            };
            *m.entry(key).or_insert(0) += 1;
        }
        m
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}
