//! Cross-checks between the census, the solved generating functions and the
//! printed closed forms, producing an errata report.
//!
//! Checks marked `internal` compare two of our own routes (solver, closed
//! form, census). Any failure there is an implementation fault. The other
//! checks classify a printed formula; a mismatch is a finding, not an error.

mod checks;
mod compare;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};

pub use checks::formula_ids;

/// Exact-comparison verdict for one formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Status {
    #[serde(rename = "MATCH")]
    Match,
    #[serde(rename = "MISMATCH")]
    Mismatch,
    #[serde(rename = "ASYMPTOTIC-ONLY")]
    AsymptoticOnly,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Match => "MATCH",
            Status::Mismatch => "MISMATCH",
            Status::AsymptoticOnly => "ASYMPTOTIC-ONLY",
        }
    }
}

/// First differing coefficient. `expected` is the reference route (census or
/// solver); `got` is the formula under test. Both are `p/q` strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Discrepancy {
    pub index: String,
    pub expected: String,
    pub got: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub formula_id: String,
    pub status: Status,
    pub first_discrepancy: Option<Discrepancy>,
    pub ranges_checked: String,
    pub internal: bool,
    pub diagnostics: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SuiteConfig {
    pub xcap: usize,
    pub ycap: usize,
    pub setpart_n_max: usize,
    pub vw_max: usize,
}

pub const MAX_CAP: usize = 24;
pub const MAX_SETPART: usize = 12;

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            xcap: 18,
            ycap: 18,
            setpart_n_max: 11,
            vw_max: 4,
        }
    }
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::ResourceBound(msg));
        if !(4..=MAX_CAP).contains(&self.xcap) || !(4..=MAX_CAP).contains(&self.ycap) {
            return bad(format!("caps must lie in 4..={MAX_CAP}, got ({}, {})", self.xcap, self.ycap));
        }
        if !(3..=MAX_SETPART).contains(&self.setpart_n_max) {
            return bad(format!("setpart_n_max must lie in 3..={MAX_SETPART}, got {}", self.setpart_n_max));
        }
        if self.vw_max == 0 || self.vw_max > self.xcap / 2 {
            return bad(format!("vw_max must lie in 1..={}, got {}", self.xcap / 2, self.vw_max));
        }
        Ok(())
    }
}

/// Thresholds for the asymptotic classification, reported in the header.
#[derive(Debug, Clone, Serialize)]
pub struct Policy {
    pub asymptotic_window: usize,
    pub asymptotic_tolerance: String,
    pub asymptotic_rule: String,
    pub exit_rule: String,
}

impl Default for Policy {
    fn default() -> Self {
        Policy {
            asymptotic_window: checks::ASYMPTOTIC_WINDOW,
            asymptotic_tolerance: "1/4".into(),
            asymptotic_rule: "exact comparison fails, and for every parameter pair the ratio exact/formula \
                              over n in [n_hi-5, n_hi] is monotone and within 1/4 of 1"
                .into(),
            exit_rule: "exit status 1 only when an internal check (census, solver, closed form) fails".into(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ReportHeader {
    pub engine: String,
    pub version: String,
    pub config: SuiteConfig,
    pub policy: Policy,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub header: ReportHeader,
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn get(&self, formula_id: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.formula_id == formula_id)
    }

    pub fn has_internal_failure(&self) -> bool {
        self.checks.iter().any(|c| c.internal && c.status != Status::Match)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }
}

/// Runs every check. Results come back in registry order whatever the
/// thread count.
pub fn run_suite(config: &SuiteConfig) -> Result<Report> {
    config.validate()?;
    let ctx = checks::Ctx::new(*config);
    let registry = checks::registry();
    let checks: Vec<CheckResult> = registry
        .par_iter()
        .map(|e| e.run(&ctx))
        .collect::<Result<_>>()?;
    debug_assert_eq!(checks.len(), registry.len());
    Ok(Report {
        header: ReportHeader {
            engine: "corners".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            config: *config,
            policy: Policy::default(),
        },
        checks,
    })
}
