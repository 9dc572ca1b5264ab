use serde::Serialize;

use super::FairCategory;
use crate::audit::terms::TERM_PROPERTIES;
use crate::audit::MetadataField;
use crate::check::{guideline, Severity};
use crate::vocab;

/// One documented check. Ids containing `{version}` stand for one check
/// per version IRI.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CatalogEntry {
    pub id: String,
    pub description: String,
    pub severity: Severity,
    pub category: FairCategory,
    pub guideline: String,
}

impl CatalogEntry {
    pub fn matches(&self, check_id: &str) -> bool {
        match self.id.split_once("{version}") {
            None => self.id == check_id,
            Some((head, tail)) => {
                check_id.len() > head.len() + tail.len() && check_id.starts_with(head) && check_id.ends_with(tail)
            }
        }
    }
}

fn entry(id: &str, description: &str, severity: Severity, guideline: &str) -> CatalogEntry {
    CatalogEntry {
        id: id.to_string(),
        description: description.to_string(),
        severity,
        category: FairCategory::of_check(id),
        guideline: guideline.to_string(),
    }
}

/// Every check the toolkit can emit, sorted by id.
pub fn check_catalog() -> Vec<CatalogEntry> {
    use Severity::*;
    let mut out = Vec::new();
    for field in MetadataField::RECOMMENDED.into_iter().chain(MetadataField::OPTIONAL) {
        out.push(entry(
            field.check_id(),
            &format!("{} given on the ontology ({})", field.label(), vocab::compact(field.property())),
            field.severity(),
            guideline::ONTOLOGY_METADATA,
        ));
    }
    out.push(entry(
        "meta.publisher-spelling",
        "Publisher given with the standard dcterms:publisher",
        Optional,
        guideline::ONTOLOGY_METADATA,
    ));
    out.push(entry(
        "meta.backward-compatibility-spelling",
        "Backward compatibility given with the standard owl:backwardCompatibleWith",
        Optional,
        guideline::ONTOLOGY_METADATA,
    ));
    for (id, property, severity) in TERM_PROPERTIES {
        out.push(entry(
            id,
            &format!("Share of classes and properties annotated with {}", vocab::compact(property)),
            severity,
            guideline::TERM_METADATA,
        ));
    }
    let fixed = [
        (
            "version.version-iri",
            "owl:versionIRI, when given, names a version below the ontology IRI",
            Recommended,
            guideline::VERSIONING,
        ),
        ("version.semver", "owl:versionInfo follows X.Y.Z", Recommended, guideline::VERSIONING),
        ("version.in-namespace", "The namespace carries no version number", Recommended, guideline::VERSIONING),
        (
            "version.consistency",
            "owl:versionIRI and owl:versionInfo name the same version",
            Recommended,
            guideline::VERSIONING,
        ),
        ("uri.hash-or-slash", "Hash or slash termination of the namespace", Informational, guideline::HASH_VS_SLASH),
        (
            "uri.permanent",
            "The ontology IRI uses a permanent identifier service",
            Recommended,
            guideline::PERMANENT_URIS,
        ),
        ("uri.opaque", "Share of opaque local names", Informational, guideline::OPAQUE_URIS),
        (
            "prefix.sanity",
            "Preferred prefix is short, lower case and not a well-known prefix",
            Recommended,
            guideline::NAME_AND_PREFIX,
        ),
        (
            "prefix.collision-reminder",
            "Reminder to check the prefix against registries",
            Informational,
            guideline::NAME_AND_PREFIX,
        ),
        (
            "find.prefix-registry",
            "Preferred prefix registered in prefix.cc for this namespace",
            Optional,
            guideline::PREFIX_REGISTRATION,
        ),
        ("find.lov", "Ontology listed in Linked Open Vocabularies", Optional, guideline::ONTOLOGY_REGISTRY),
        (
            "find.jsonld-annotations",
            "HTML documentation embeds schema.org JSON-LD",
            Optional,
            guideline::IN_DOCUMENT_ANNOTATIONS,
        ),
        (
            "interop.standard-serialization",
            "The ontology document parses in a standard RDF syntax",
            Recommended,
            guideline::SERIALIZATION,
        ),
        ("interop.formats", "More than one RDF serialization is served", Optional, guideline::SERIALIZATION),
        (
            "neg.ontology.html",
            "Ontology IRI with Accept text/html: 303 to an HTML page",
            Recommended,
            guideline::CONTENT_NEGOTIATION,
        ),
        (
            "neg.ontology.turtle",
            "Ontology IRI with Accept text/turtle: 303 to Turtle",
            Recommended,
            guideline::CONTENT_NEGOTIATION,
        ),
        (
            "neg.ontology.rdfxml",
            "Ontology IRI with Accept application/rdf+xml: 303 to RDF/XML or 406",
            Recommended,
            guideline::CONTENT_NEGOTIATION,
        ),
        (
            "neg.ontology.none",
            "Ontology IRI without Accept: Turtle by default",
            Recommended,
            guideline::CONTENT_NEGOTIATION,
        ),
        (
            "neg.version.{version}.html",
            "Version IRI with Accept text/html: 303 to that version's HTML",
            Recommended,
            guideline::CONTENT_NEGOTIATION,
        ),
        (
            "neg.version.{version}.turtle",
            "Version IRI with Accept text/turtle: 303 to that version's Turtle",
            Recommended,
            guideline::CONTENT_NEGOTIATION,
        ),
    ];
    for (id, description, severity, guideline) in fixed {
        out.push(entry(id, description, severity, guideline));
    }
    out.sort_by(|a, b| a.id.cmp(&b.id));
    out
}

pub fn catalog_entry(check_id: &str) -> Option<CatalogEntry> {
    check_catalog().into_iter().find(|e| e.matches(check_id))
}

/// Tab-separated listing: id, category, severity, guideline, description.
pub fn render_catalog() -> String {
    let mut out = String::from("id\tcategory\tseverity\tguideline\tdescription\n");
    for e in check_catalog() {
        out.push_str(&format!("{}\t{}\t{}\t{}\t{}\n", e.id, e.category, e.severity, e.guideline, e.description));
    }
    out
}
