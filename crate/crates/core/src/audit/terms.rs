use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::uri::own_terms;
use crate::check::{guideline, CheckResult, Evidence, Severity, Status};
use crate::rdf::{OntologyModel, TermKind};
use crate::vocab::{dcterms, rdfs, sw, vaem, vann};

/// Term annotation properties, recommended ones first.
pub const TERM_PROPERTIES: [(&str, &str, Severity); 6] = [
    ("terms.label", rdfs::LABEL, Severity::Recommended),
    ("terms.definition", rdfs::COMMENT, Severity::Recommended),
    ("terms.example", vann::EXAMPLE, Severity::Optional),
    ("terms.status", sw::TERM_STATUS, Severity::Optional),
    ("terms.rationale", vaem::RATIONALE, Severity::Optional),
    ("terms.source", dcterms::SOURCE, Severity::Optional),
];

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct TermCoverage {
    pub kind_counts: BTreeMap<TermKind, usize>,
    pub total: usize,
    pub labeled: usize,
    pub defined: usize,
    pub labeled_fraction: f64,
    pub defined_fraction: f64,
    /// Per property, how many terms carry it.
    pub property_counts: BTreeMap<String, usize>,
    /// Per term, the Table-2 properties it lacks.
    pub missing: BTreeMap<String, Vec<String>>,
    /// Per term, the language tags used on its labels.
    pub label_languages: BTreeMap<String, Vec<String>>,
}

impl TermCoverage {
    pub fn fraction(&self, property: &str) -> f64 {
        if self.total == 0 {
            return 1.0;
        }
        *self.property_counts.get(property).unwrap_or(&0) as f64 / self.total as f64
    }

    /// Terms lacking `property`.
    pub fn lacking(&self, property: &str) -> Vec<&str> {
        self.missing
            .iter()
            .filter(|(_, props)| props.iter().any(|p| p == property))
            .map(|(iri, _)| iri.as_str())
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermThresholds {
    pub pass: f64,
    pub warn: f64,
}

impl Default for TermThresholds {
    fn default() -> Self {
        TermThresholds { pass: 1.0, warn: 0.8 }
    }
}

pub fn check_term_annotations(model: &OntologyModel) -> TermCoverage {
    let mut cov = TermCoverage::default();
    for (_, property, _) in TERM_PROPERTIES {
        cov.property_counts.insert(property.to_string(), 0);
    }
    for term in own_terms(model) {
        cov.total += 1;
        for kind in &term.kinds {
            *cov.kind_counts.entry(*kind).or_insert(0) += 1;
        }
        let mut lacking = Vec::new();
        for (_, property, _) in TERM_PROPERTIES {
            if term.values(property).is_empty() {
                lacking.push(property.to_string());
            } else {
                *cov.property_counts.entry(property.to_string()).or_insert(0) += 1;
            }
        }
        if !lacking.is_empty() {
            cov.missing.insert(term.iri.clone(), lacking);
        }
        let mut langs: Vec<String> =
            term.values(rdfs::LABEL).iter().filter_map(|v| v.language().map(str::to_string)).collect();
        langs.sort();
        langs.dedup();
        if !langs.is_empty() {
            cov.label_languages.insert(term.iri.clone(), langs);
        }
    }
    cov.labeled = cov.property_counts[rdfs::LABEL];
    cov.defined = cov.property_counts[rdfs::COMMENT];
    cov.labeled_fraction = cov.fraction(rdfs::LABEL);
    cov.defined_fraction = cov.fraction(rdfs::COMMENT);
    cov
}

/// Recommended properties are graded against `thresholds`; optional ones are
/// Pass when every term has them and Info otherwise.
pub fn term_checks(cov: &TermCoverage, thresholds: TermThresholds) -> Vec<CheckResult> {
    TERM_PROPERTIES
        .into_iter()
        .map(|(id, property, severity)| {
            let fraction = cov.fraction(property);
            let have = cov.property_counts.get(property).copied().unwrap_or(0);
            let status = match severity {
                Severity::Recommended if fraction >= thresholds.pass => Status::Pass,
                Severity::Recommended if fraction >= thresholds.warn => Status::Warn,
                Severity::Recommended => Status::Fail,
                _ if fraction >= 1.0 => Status::Pass,
                _ => Status::Info,
            };
            let mut evidence = Evidence::new(format!(
                "{have}/{} terms carry {} ({:.1}%)",
                cov.total,
                crate::vocab::compact(property),
                fraction * 100.0
            ))
            .with_values(cov.lacking(property).into_iter().take(25));
            if property == rdfs::LABEL {
                let multi: Vec<String> = cov
                    .label_languages
                    .iter()
                    .filter(|(_, l)| l.len() > 1)
                    .map(|(iri, l)| format!("{iri} [{}]", l.join(", ")))
                    .collect();
                if !multi.is_empty() {
                    evidence.message.push_str(&format!("; multilingual labels: {}", multi.join("; ")));
                }
            }
            CheckResult::new(id, status, severity, evidence, guideline::TERM_METADATA)
        })
        .collect()
}
