//! Audit findings shared by every checking module.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Status {
    Pass,
    Fail,
    Warn,
    /// A precondition (offline mode, missing cassette entry) prevented evaluation.
    Skipped,
    Info,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Severity {
    Recommended,
    Optional,
    Informational,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Evidence {
    pub message: String,
    /// Offending or satisfying values.
    #[serde(default)]
    pub values: Vec<String>,
}

impl Evidence {
    pub fn new(message: impl Into<String>) -> Self {
        Evidence { message: message.into(), values: Vec::new() }
    }

    pub fn with_values<I, S>(mut self, values: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.values.extend(values.into_iter().map(Into::into));
        self
    }
}

/// One audit finding.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    #[serde(rename = "id")]
    pub check_id: String,
    pub status: Status,
    pub severity: Severity,
    pub evidence: Evidence,
    /// The guideline topic the check enforces.
    pub paper_ref: String,
}

impl CheckResult {
    pub fn new(
        check_id: impl Into<String>,
        status: Status,
        severity: Severity,
        evidence: Evidence,
        guideline: impl Into<String>,
    ) -> Self {
        CheckResult { check_id: check_id.into(), status, severity, evidence, paper_ref: guideline.into() }
    }

    /// The only combination that makes an audit fail.
    pub fn is_blocking(&self) -> bool {
        self.severity == Severity::Recommended && self.status == Status::Fail
    }
}

/// Guideline topics referenced from check results.
pub mod guideline {
    pub const ONTOLOGY_METADATA: &str = "ontology metadata";
    pub const TERM_METADATA: &str = "term metadata";
    pub const NAME_AND_PREFIX: &str = "URI design: name and prefix";
    pub const HASH_VS_SLASH: &str = "URI design: hash vs slash";
    pub const OPAQUE_URIS: &str = "URI design: opaque URIs";
    pub const VERSIONING: &str = "URI design: versioning";
    pub const PERMANENT_URIS: &str = "URI design: permanent URIs";
    pub const CONTENT_NEGOTIATION: &str = "publication: content negotiation";
    pub const PREFIX_REGISTRATION: &str = "findability: prefix registration";
    pub const ONTOLOGY_REGISTRY: &str = "findability: ontology registries";
    pub const IN_DOCUMENT_ANNOTATIONS: &str = "findability: in-document annotations";
    pub const SERIALIZATION: &str = "interoperability: standard serializations";
}
