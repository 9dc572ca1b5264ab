use std::sync::OnceLock;

use regex::Regex;

use super::metadata::{MetadataField, OntologyMetadata};
use super::semver::parse_semver;
use crate::check::{guideline, CheckResult, Evidence, Severity, Status};

fn version_segment() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| Regex::new(r"^[vV]?[0-9]+(\.[0-9]+){1,2}$").expect("static regex"))
}

/// Strips trailing `#` and `/` characters.
pub fn namespace_root(iri: &str) -> &str {
    iri.trim_end_matches(['#', '/'])
}

/// The version-looking last path segment of `iri`, if any.
pub fn version_in_namespace(iri: &str) -> Option<&str> {
    let root = namespace_root(iri);
    let segment = &root[root.rfind('/').map_or(0, |i| i + 1)..];
    version_segment().is_match(segment).then_some(segment)
}

/// Whether `version_iri` ends in `info` at a segment boundary.
fn version_iri_matches(version_iri: &str, info: &str) -> bool {
    let root = namespace_root(version_iri);
    match root.strip_suffix(info) {
        Some(head) if !info.is_empty() => head.ends_with(['/', '#', 'v', 'V', '-', '_']) || head.is_empty(),
        _ => false,
    }
}

fn result(id: &str, status: Status, evidence: Evidence) -> CheckResult {
    CheckResult::new(id, status, Severity::Recommended, evidence, guideline::VERSIONING)
}

/// Version IRI presence, semantic version info, version-free namespace and
/// agreement between version IRI and version info.
pub fn check_versioning(meta: &OntologyMetadata, ontology_iri: &str) -> Vec<CheckResult> {
    let version_iris = meta.texts(MetadataField::VersionIri);
    let infos = meta.texts(MetadataField::VersionInfo);
    let mut out = Vec::with_capacity(4);

    let root = namespace_root(ontology_iri);
    let under_root =
        |iri: &&String| iri.strip_prefix(root).is_some_and(|rest| rest.len() > 1 && rest.starts_with(['/', '#']));
    out.push(if version_iris.is_empty() {
        result("version.version-iri", Status::Skipped, Evidence::new("no owl:versionIRI; reported by meta.version-iri"))
    } else if version_iris.iter().any(|v| under_root(&v)) {
        result(
            "version.version-iri",
            Status::Pass,
            Evidence::new("owl:versionIRI declared").with_values(version_iris.clone()),
        )
    } else if version_iris.iter().all(|v| namespace_root(v) == root) {
        result(
            "version.version-iri",
            Status::Fail,
            Evidence::new("owl:versionIRI repeats the ontology IRI").with_values(version_iris.clone()),
        )
    } else {
        result(
            "version.version-iri",
            Status::Warn,
            Evidence::new(format!("owl:versionIRI is not below {root}")).with_values(version_iris.clone()),
        )
    });

    out.push(if infos.is_empty() {
        result("version.semver", Status::Warn, Evidence::new("no owl:versionInfo to check"))
    } else {
        let bad: Vec<String> = infos.iter().filter(|v| parse_semver(v).is_err()).cloned().collect();
        if bad.is_empty() {
            result(
                "version.semver",
                Status::Pass,
                Evidence::new("owl:versionInfo follows X.Y.Z").with_values(infos.clone()),
            )
        } else if bad.len() < infos.len() {
            result(
                "version.semver",
                Status::Warn,
                Evidence::new("some owl:versionInfo values are not of the form X.Y.Z").with_values(bad),
            )
        } else {
            result(
                "version.semver",
                Status::Fail,
                Evidence::new("owl:versionInfo is not of the form X.Y.Z").with_values(bad),
            )
        }
    });

    out.push(match version_in_namespace(ontology_iri) {
        Some(segment) => result(
            "version.in-namespace",
            Status::Fail,
            Evidence::new(format!(
                "ontology IRI embeds version segment {segment:?}; every release would change the namespace"
            ))
            .with_values([ontology_iri]),
        ),
        None => result(
            "version.in-namespace",
            Status::Pass,
            Evidence::new("ontology IRI carries no version number").with_values([ontology_iri]),
        ),
    });

    out.push(if version_iris.is_empty() || infos.is_empty() {
        result(
            "version.consistency",
            Status::Info,
            Evidence::new("version IRI or version info missing; nothing to compare"),
        )
    } else if version_iris.iter().any(|iri| infos.iter().any(|info| version_iri_matches(iri, info))) {
        result(
            "version.consistency",
            Status::Pass,
            Evidence::new("version IRI ends with the version info").with_values(version_iris.clone()),
        )
    } else {
        result(
            "version.consistency",
            Status::Fail,
            Evidence::new(format!(
                "version IRI {} does not end with version info {}",
                version_iris.join(", "),
                infos.join(", ")
            )),
        )
    });
    out
}
