use std::sync::OnceLock;

use regex::Regex;
use serde::{Deserialize, Serialize};

use super::versioning::version_in_namespace;
use crate::check::{guideline, CheckResult, Evidence, Severity, Status};
use crate::rdf::OntologyModel;
use crate::vocab;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Termination {
    Hash,
    Slash,
    Other,
}

impl Termination {
    pub fn of(iri: &str) -> Termination {
        match iri.chars().last() {
            Some('#') => Termination::Hash,
            Some('/') => Termination::Slash,
            _ => Termination::Other,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PermanentHost {
    None,
    W3id,
    Purl,
    OtherKnown,
}

impl PermanentHost {
    pub fn of_host(host: &str) -> PermanentHost {
        match host.to_ascii_lowercase().trim_start_matches("www.") {
            "w3id.org" => PermanentHost::W3id,
            "purl.org" | "purl.archive.org" | "purl.oclc.org" => PermanentHost::Purl,
            "purl.obolibrary.org" | "doi.org" | "n2t.net" | "identifiers.org" | "w3.org" => PermanentHost::OtherKnown,
            _ => PermanentHost::None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct UriProfile {
    pub termination: Termination,
    pub permanent_host: PermanentHost,
    pub version_in_namespace: bool,
    pub opaque_terms_fraction: f64,
    /// Declared terms whose local name looks like an opaque identifier.
    pub opaque_terms: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum UriError {
    #[error("invalid IRI {0:?}: {1}")]
    InvalidIri(String, String),
}

fn opaque_pattern() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| Regex::new(r"^[A-Z][A-Z0-9]*_[A-Z]*[0-9]+$").expect("static regex"))
}

/// `EXO_C0001` style identifiers.
pub fn is_opaque_local_name(name: &str) -> bool {
    opaque_pattern().is_match(name)
}

/// Terms the ontology itself defines, skipping re-declared standard terms.
pub(crate) fn own_terms(model: &OntologyModel) -> impl Iterator<Item = &crate::rdf::TermDecl> {
    model.declared_terms().iter().filter(|t| !vocab::KNOWN_PREFIXES.iter().any(|(_, ns)| t.iri.starts_with(ns)))
}

pub fn profile_uri(ontology_iri: &str, model: &OntologyModel) -> Result<UriProfile, UriError> {
    let parsed =
        url::Url::parse(ontology_iri).map_err(|e| UriError::InvalidIri(ontology_iri.to_string(), e.to_string()))?;
    let permanent_host = parsed.host_str().map_or(PermanentHost::None, PermanentHost::of_host);
    let mut total = 0usize;
    let mut opaque_terms = Vec::new();
    for term in own_terms(model) {
        total += 1;
        if is_opaque_local_name(vocab::local_name(&term.iri)) {
            opaque_terms.push(term.iri.clone());
        }
    }
    Ok(UriProfile {
        termination: Termination::of(ontology_iri),
        permanent_host,
        version_in_namespace: version_in_namespace(ontology_iri).is_some(),
        opaque_terms_fraction: if total == 0 { 0.0 } else { opaque_terms.len() as f64 / total as f64 },
        opaque_terms,
    })
}

pub fn check_uri_profile(profile: &UriProfile, ontology_iri: &str) -> Vec<CheckResult> {
    let termination = match profile.termination {
        Termination::Hash => "hash namespace: terms are fragments of one document",
        Termination::Slash => "slash namespace: each term can be served on its own",
        Termination::Other => "namespace ends in neither '#' nor '/'",
    };
    let hash_or_slash = CheckResult::new(
        "uri.hash-or-slash",
        Status::Info,
        Severity::Informational,
        Evidence::new(termination).with_values([ontology_iri]),
        guideline::HASH_VS_SLASH,
    );
    let permanent = match profile.permanent_host {
        PermanentHost::None => CheckResult::new(
            "uri.permanent",
            Status::Fail,
            Severity::Recommended,
            Evidence::new("ontology IRI is not served by a permanent URI service").with_values([ontology_iri]),
            guideline::PERMANENT_URIS,
        ),
        host => CheckResult::new(
            "uri.permanent",
            Status::Pass,
            Severity::Recommended,
            Evidence::new(format!("permanent URI service: {host:?}")).with_values([ontology_iri]),
            guideline::PERMANENT_URIS,
        ),
    };
    let opaque = CheckResult::new(
        "uri.opaque",
        Status::Info,
        Severity::Informational,
        Evidence::new(format!("{:.0}% of terms use opaque identifiers", profile.opaque_terms_fraction * 100.0))
            .with_values(profile.opaque_terms.iter().take(20).cloned()),
        guideline::OPAQUE_URIS,
    );
    vec![hash_or_slash, permanent, opaque]
}
