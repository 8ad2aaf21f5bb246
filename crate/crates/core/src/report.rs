//! Shared check outcomes and the lemma-report CSV row.

use std::fmt;

use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "detail", rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    /// Outcome too close to call; flagged for review instead of failing.
    Warn(String),
    /// Hypotheses of the check did not hold.
    Skip(String),
}

impl CheckStatus {
    pub fn label(&self) -> &'static str {
        match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "fail",
            CheckStatus::Warn(_) => "warn",
            CheckStatus::Skip(_) => "skip",
        }
    }

    pub fn is_fail(&self) -> bool {
        matches!(self, CheckStatus::Fail)
    }

    pub fn is_skip(&self) -> bool {
        matches!(self, CheckStatus::Skip(_))
    }
}

impl fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CheckStatus::Warn(why) | CheckStatus::Skip(why) => write!(f, "{} ({why})", self.label()),
            _ => f.write_str(self.label()),
        }
    }
}

/// One row of a lemma sweep.
#[derive(Debug, Clone, Serialize)]
pub struct LemmaRow {
    pub graph6: String,
    pub m: usize,
    pub lemma: String,
    pub hypothesis: String,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub status: String,
}

impl LemmaRow {
    pub const HEADER: [&'static str; 8] = ["graph6", "m", "lemma", "hypothesis", "lhs", "rhs", "margin", "status"];

    pub fn record(&self) -> [String; 8] {
        [
            self.graph6.clone(),
            self.m.to_string(),
            self.lemma.clone(),
            self.hypothesis.clone(),
            format!("{:.12}", self.lhs),
            format!("{:.12}", self.rhs),
            format!("{:.12e}", self.margin),
            self.status.clone(),
        ]
    }
}
