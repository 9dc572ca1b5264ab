use serde::Serialize;

use super::ScaffoldError;
use crate::audit::{MetadataField, OntologyMetadata};
use crate::rdf::Term;

#[derive(Serialize)]
struct Person {
    #[serde(rename = "@type")]
    kind: &'static str,
    #[serde(rename = "@id", skip_serializing_if = "Option::is_none")]
    id: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    name: Option<String>,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct WebPage {
    #[serde(rename = "@context")]
    context: &'static str,
    #[serde(rename = "@type")]
    kind: &'static str,
    url: String,
    name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    date_published: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    version: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    license: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    author: Vec<Person>,
}

/// English or untagged text first, then whatever comes first.
pub(crate) fn preferred_text(meta: &OntologyMetadata, field: MetadataField) -> Option<String> {
    let values = meta.get(field);
    values
        .iter()
        .find(|v| matches!(v.value.language(), Some(l) if l.eq_ignore_ascii_case("en") || l.to_ascii_lowercase().starts_with("en-")))
        .or_else(|| values.iter().find(|v| v.value.language().is_none()))
        .or_else(|| values.first())
        .map(|v| v.value.text())
}

/// A schema.org `WebPage` description of the ontology as pretty JSON.
/// Absent fields are left out. Safe to place inside a `<script>` element.
pub fn generate_jsonld_snippet(meta: &OntologyMetadata, ontology_iri: &str) -> Result<String, ScaffoldError> {
    let name = preferred_text(meta, MetadataField::Title)
        .filter(|t| !t.trim().is_empty())
        .ok_or(ScaffoldError::MissingTitle)?;
    let author = meta
        .get(MetadataField::Creator)
        .iter()
        .map(|v| match &v.value {
            Term::Iri { value } => Person { kind: "Person", id: Some(value.clone()), name: None },
            other => Person { kind: "Person", id: None, name: Some(other.text()) },
        })
        .collect();
    let page = WebPage {
        context: "http://schema.org",
        kind: "WebPage",
        url: ontology_iri.trim_end_matches('#').to_string(),
        name,
        date_published: meta.first_text(MetadataField::Issued).or_else(|| meta.first_text(MetadataField::Created)),
        version: meta.first_text(MetadataField::VersionInfo),
        license: meta.first_text(MetadataField::License),
        author,
    };
    let json = serde_json::to_string_pretty(&page).expect("plain structs serialize");
    Ok(json.replace("</", "<\\/"))
}

/// The snippet wrapped in its script element.
pub fn jsonld_script(snippet: &str) -> String {
    format!("<script type=\"application/ld+json\">\n{snippet}\n</script>")
}
