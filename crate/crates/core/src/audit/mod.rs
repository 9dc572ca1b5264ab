//! Static checks over a parsed ontology: metadata completeness, versioning,
//! URI design, term documentation and prefix choice.

pub mod metadata;
pub mod prefix;
pub mod semver;
pub mod terms;
pub mod uri;
pub mod versioning;

pub use metadata::{
    check_optional_metadata, check_property_spellings, check_recommended_metadata, extract_metadata,
    extract_metadata_with, AliasTable, MetadataField, MetadataValue, OntologyMetadata,
};
pub use prefix::check_prefix_sanity;
pub use semver::{parse_semver, MalformedVersion, SemVer};
pub use terms::{check_term_annotations, term_checks, TermCoverage, TermThresholds};
pub use uri::{check_uri_profile, profile_uri, PermanentHost, Termination, UriError, UriProfile};
pub use versioning::{check_versioning, namespace_root, version_in_namespace};

use crate::check::{guideline, CheckResult, Evidence, Severity, Status};
use crate::rdf::OntologyModel;

#[derive(Clone, Debug, Default)]
pub struct AuditOptions {
    pub aliases: AliasTable,
    pub thresholds: TermThresholds,
}

/// Every check that needs only the parsed model.
pub fn audit_model(model: &OntologyModel, options: &AuditOptions) -> Vec<CheckResult> {
    let meta = extract_metadata_with(model, &options.aliases);
    let mut out = check_recommended_metadata(&meta);
    out.extend(check_optional_metadata(&meta));
    out.extend(check_property_spellings(&meta));
    out.extend(check_versioning(&meta, model.ontology_iri()));
    let namespace = meta.first_text(MetadataField::NamespaceUri);
    match profile_uri(model.ontology_iri(), model) {
        Ok(mut profile) => {
            if let Some(ns) = &namespace {
                profile.termination = Termination::of(ns);
            }
            out.extend(check_uri_profile(&profile, namespace.as_deref().unwrap_or(model.ontology_iri())));
        }
        Err(e) => out.push(CheckResult::new(
            "uri.permanent",
            Status::Fail,
            Severity::Recommended,
            Evidence::new(e.to_string()),
            guideline::PERMANENT_URIS,
        )),
    }
    out.extend(term_checks(&check_term_annotations(model), options.thresholds));
    out.extend(check_prefix_sanity(&meta));
    out
}
