//! Scored F/A/I/R reports over check results.

mod catalog;
mod config;
mod render;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

pub use catalog::{catalog_entry, check_catalog, render_catalog, CatalogEntry};
pub use config::{ConfigError, ToolConfig};
pub use render::{render_report, ReportFormat};

use crate::check::{CheckResult, Evidence, Severity, Status};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FairCategory {
    Findable,
    Accessible,
    Interoperable,
    Reusable,
}

impl FairCategory {
    pub const ALL: [FairCategory; 4] =
        [FairCategory::Findable, FairCategory::Accessible, FairCategory::Interoperable, FairCategory::Reusable];

    /// Built-in mapping by check id prefix. Total: unknown ids are Reusable.
    pub fn of_check(check_id: &str) -> FairCategory {
        let family = check_id.split('.').next().unwrap_or("");
        match family {
            "find" | "prefix" => FairCategory::Findable,
            "uri" | "neg" | "version" => FairCategory::Accessible,
            "interop" => FairCategory::Interoperable,
            _ => FairCategory::Reusable,
        }
    }
}

impl fmt::Display for FairCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FairCategory::Findable => "findable",
            FairCategory::Accessible => "accessible",
            FairCategory::Interoperable => "interoperable",
            FairCategory::Reusable => "reusable",
        })
    }
}

impl std::str::FromStr for FairCategory {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        FairCategory::ALL
            .into_iter()
            .find(|c| c.to_string().eq_ignore_ascii_case(s.trim()) || c.to_string()[..1].eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| format!("unknown category {s:?}"))
    }
}

/// Check id to category, with per-id overrides.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CategoryMap {
    pub overrides: BTreeMap<String, FairCategory>,
}

impl CategoryMap {
    pub fn category(&self, check_id: &str) -> FairCategory {
        self.overrides.get(check_id).copied().unwrap_or_else(|| FairCategory::of_check(check_id))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Weights {
    pub recommended: f64,
    pub optional: f64,
    pub informational: f64,
}

impl Default for Weights {
    fn default() -> Self {
        Weights { recommended: 1.0, optional: 0.5, informational: 0.0 }
    }
}

impl Weights {
    pub fn of(&self, severity: Severity) -> f64 {
        match severity {
            Severity::Recommended => self.recommended,
            Severity::Optional => self.optional,
            Severity::Informational => self.informational,
        }
    }
}

/// Weighted share of passing checks, in percent. Skipped and Info results
/// do not count; `None` when nothing is left to weigh.
pub fn score(results: impl IntoIterator<Item = (Severity, Status)>, weights: &Weights) -> Option<f64> {
    let (mut passed, mut total) = (0.0, 0.0);
    for (severity, status) in results {
        let w = weights.of(severity);
        match status {
            Status::Pass => {
                passed += w;
                total += w;
            }
            Status::Fail | Status::Warn => total += w,
            Status::Skipped | Status::Info => {}
        }
    }
    (total > 0.0).then(|| 100.0 * passed / total)
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Scores {
    pub findable: Option<f64>,
    pub accessible: Option<f64>,
    pub interoperable: Option<f64>,
    pub reusable: Option<f64>,
    pub overall: Option<f64>,
}

impl Scores {
    pub fn get(&self, category: FairCategory) -> Option<f64> {
        match category {
            FairCategory::Findable => self.findable,
            FairCategory::Accessible => self.accessible,
            FairCategory::Interoperable => self.interoperable,
            FairCategory::Reusable => self.reusable,
        }
    }

    fn set(&mut self, category: FairCategory, value: Option<f64>) {
        match category {
            FairCategory::Findable => self.findable = value,
            FairCategory::Accessible => self.accessible = value,
            FairCategory::Interoperable => self.interoperable = value,
            FairCategory::Reusable => self.reusable = value,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportCheck {
    pub id: String,
    pub category: FairCategory,
    pub severity: Severity,
    pub status: Status,
    pub evidence: Evidence,
    pub paper_ref: String,
}

impl ReportCheck {
    pub fn is_blocking(&self) -> bool {
        self.severity == Severity::Recommended && self.status == Status::Fail
    }
}

/// How the probes reached the Web.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Environment {
    pub network: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cassette: Option<String>,
    pub note: String,
}

impl Environment {
    pub fn online() -> Self {
        Environment { network: "online".into(), cassette: None, note: "live HTTP".into() }
    }

    pub fn offline() -> Self {
        Environment { network: "offline".into(), cassette: None, note: "network checks skipped".into() }
    }

    pub fn cassette(dir: impl Into<String>) -> Self {
        Environment {
            network: "offline".into(),
            cassette: Some(dir.into()),
            note: "HTTP exchanges replayed from cassette".into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub subject: String,
    pub tool_version: String,
    pub timestamp: String,
    pub scores: Scores,
    pub checks: Vec<ReportCheck>,
    pub environment: Environment,
}

impl Report {
    pub fn recommended_fails(&self) -> usize {
        self.checks.iter().filter(|c| c.is_blocking()).count()
    }

    pub fn exit_code(&self) -> i32 {
        exit_code(self.recommended_fails(), false)
    }

    pub fn check(&self, id: &str) -> Option<&ReportCheck> {
        self.checks.iter().find(|c| c.id == id)
    }

    /// Categories ordered by score, best first; unscored categories last.
    pub fn ranking(&self) -> Vec<FairCategory> {
        let mut cats = FairCategory::ALL.to_vec();
        cats.sort_by(|a, b| {
            let key = |c: &FairCategory| self.scores.get(*c).unwrap_or(-1.0);
            key(b).total_cmp(&key(a)).then(a.cmp(b))
        });
        cats
    }
}

/// 2 on runtime errors, 1 when a Recommended check failed, else 0.
pub fn exit_code(recommended_fails: usize, runtime_error: bool) -> i32 {
    if runtime_error {
        2
    } else if recommended_fails > 0 {
        1
    } else {
        0
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReportOptions {
    pub categories: CategoryMap,
    pub weights: Weights,
    /// Frozen timestamp; the current UTC time when absent.
    pub timestamp: Option<String>,
    pub environment: Environment,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions {
            categories: CategoryMap::default(),
            weights: Weights::default(),
            timestamp: None,
            environment: Environment::online(),
        }
    }
}

pub fn assemble_report(results: &[CheckResult], subject: &str) -> Report {
    assemble_report_with(results, subject, &ReportOptions::default())
}

/// Scores `results` per category and overall, ordered by (category, id).
pub fn assemble_report_with(results: &[CheckResult], subject: &str, options: &ReportOptions) -> Report {
    let mut checks: Vec<ReportCheck> = results
        .iter()
        .map(|r| ReportCheck {
            id: r.check_id.clone(),
            category: options.categories.category(&r.check_id),
            severity: r.severity,
            status: r.status,
            evidence: r.evidence.clone(),
            paper_ref: r.paper_ref.clone(),
        })
        .collect();
    checks.sort_by(|a, b| (a.category, &a.id).cmp(&(b.category, &b.id)));
    let mut scores = Scores::default();
    for category in FairCategory::ALL {
        let value =
            score(checks.iter().filter(|c| c.category == category).map(|c| (c.severity, c.status)), &options.weights);
        scores.set(category, value);
    }
    scores.overall = score(checks.iter().map(|c| (c.severity, c.status)), &options.weights);
    Report {
        subject: subject.to_string(),
        tool_version: TOOL_VERSION.to_string(),
        timestamp: options
            .timestamp
            .clone()
            .unwrap_or_else(|| chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true)),
        scores,
        checks,
        environment: options.environment.clone(),
    }
}

#[cfg(test)]
mod tests;
