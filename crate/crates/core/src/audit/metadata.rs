use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::semver::parse_semver;
use crate::check::{guideline, CheckResult, Evidence, Severity, Status};
use crate::rdf::{OntologyModel, Term};
use crate::vocab::{self, bibo, dcterms, foaf, owl, rdf, rdfs, schema, sw, vann};

/// Ontology-level metadata fields: one per recommended/optional row plus
/// `owl:versionInfo`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MetadataField {
    License,
    Creator,
    Contributor,
    Created,
    PriorVersion,
    NamespaceUri,
    VersionIri,
    Prefix,
    Title,
    Description,
    Citation,
    Abstract,
    SeeAlso,
    Status,
    BackwardCompat,
    IncompatibleWith,
    Modified,
    Issued,
    Source,
    Publisher,
    Doi,
    Logo,
    Diagram,
    VersionInfo,
}

/// Which kind of RDF node a field is expected to hold.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExpectedNode {
    Iri,
    Literal,
    Either,
}

impl MetadataField {
    pub const RECOMMENDED: [MetadataField; 11] = [
        MetadataField::License,
        MetadataField::Creator,
        MetadataField::Contributor,
        MetadataField::Created,
        MetadataField::PriorVersion,
        MetadataField::NamespaceUri,
        MetadataField::VersionIri,
        MetadataField::Prefix,
        MetadataField::Title,
        MetadataField::Description,
        MetadataField::Citation,
    ];

    pub const OPTIONAL: [MetadataField; 12] = [
        MetadataField::Abstract,
        MetadataField::SeeAlso,
        MetadataField::Status,
        MetadataField::BackwardCompat,
        MetadataField::IncompatibleWith,
        MetadataField::Modified,
        MetadataField::Issued,
        MetadataField::Source,
        MetadataField::Publisher,
        MetadataField::Doi,
        MetadataField::Logo,
        MetadataField::Diagram,
    ];

    pub fn all() -> impl Iterator<Item = MetadataField> {
        Self::RECOMMENDED.into_iter().chain(Self::OPTIONAL).chain([MetadataField::VersionInfo])
    }

    /// The standard annotation property for the field.
    pub fn property(self) -> &'static str {
        use MetadataField::*;
        match self {
            License => dcterms::LICENSE,
            Creator => dcterms::CREATOR,
            Contributor => dcterms::CONTRIBUTOR,
            Created => dcterms::CREATED,
            PriorVersion => owl::PRIOR_VERSION,
            NamespaceUri => vann::PREFERRED_NAMESPACE_URI,
            VersionIri => owl::VERSION_IRI,
            Prefix => vann::PREFERRED_NAMESPACE_PREFIX,
            Title => dcterms::TITLE,
            Description => dcterms::DESCRIPTION,
            Citation => dcterms::BIBLIOGRAPHIC_CITATION,
            Abstract => dcterms::ABSTRACT,
            SeeAlso => rdfs::SEE_ALSO,
            Status => sw::STATUS,
            BackwardCompat => owl::BACKWARD_COMPATIBLE_WITH,
            IncompatibleWith => owl::INCOMPATIBLE_WITH,
            Modified => dcterms::MODIFIED,
            Issued => dcterms::ISSUED,
            Source => dcterms::SOURCE,
            Publisher => dcterms::PUBLISHER,
            Doi => bibo::DOI,
            Logo => foaf::LOGO,
            Diagram => foaf::DEPICTION,
            VersionInfo => owl::VERSION_INFO,
        }
    }

    pub fn severity(self) -> Severity {
        if Self::RECOMMENDED.contains(&self) {
            Severity::Recommended
        } else if Self::OPTIONAL.contains(&self) {
            Severity::Optional
        } else {
            Severity::Informational
        }
    }

    pub fn check_id(self) -> &'static str {
        use MetadataField::*;
        match self {
            License => "meta.license",
            Creator => "meta.creator",
            Contributor => "meta.contributor",
            Created => "meta.created",
            PriorVersion => "meta.prior-version",
            NamespaceUri => "meta.namespace-uri",
            VersionIri => "meta.version-iri",
            Prefix => "meta.prefix",
            Title => "meta.title",
            Description => "meta.description",
            Citation => "meta.citation",
            Abstract => "meta.abstract",
            SeeAlso => "meta.see-also",
            Status => "meta.status",
            BackwardCompat => "meta.backward-compatibility",
            IncompatibleWith => "meta.incompatible-with",
            Modified => "meta.modified",
            Issued => "meta.issued",
            Source => "meta.source",
            Publisher => "meta.publisher",
            Doi => "meta.doi",
            Logo => "meta.logo",
            Diagram => "meta.diagram",
            VersionInfo => "meta.version-info",
        }
    }

    pub fn label(self) -> &'static str {
        use MetadataField::*;
        match self {
            License => "License",
            Creator => "Creator",
            Contributor => "Contributor",
            Created => "Creation date",
            PriorVersion => "Previous version",
            NamespaceUri => "Namespace URI",
            VersionIri => "Version IRI",
            Prefix => "Prefix",
            Title => "Title",
            Description => "Description",
            Citation => "Citation",
            Abstract => "Abstract",
            SeeAlso => "See also",
            Status => "Status",
            BackwardCompat => "Backward compatibility",
            IncompatibleWith => "Incompatibility",
            Modified => "Modification date",
            Issued => "Issued date",
            Source => "Source",
            Publisher => "Publisher",
            Doi => "DOI",
            Logo => "Logo",
            Diagram => "Diagram",
            VersionInfo => "Version info",
        }
    }

    pub fn expected_node(self) -> ExpectedNode {
        use MetadataField::*;
        match self {
            PriorVersion | VersionIri | SeeAlso | BackwardCompat | IncompatibleWith | Logo | Diagram => {
                ExpectedNode::Iri
            }
            Prefix | Title | Description | Citation | Abstract | VersionInfo | Doi => ExpectedNode::Literal,
            _ => ExpectedNode::Either,
        }
    }

    pub fn from_check_id(id: &str) -> Option<MetadataField> {
        Self::all().find(|f| f.check_id() == id)
    }

    /// Parses a snake_case field name such as `backward_compat`.
    pub fn from_name(name: &str) -> Option<MetadataField> {
        Self::all().find(|f| serde_json::to_value(f).ok().and_then(|v| v.as_str().map(|s| s == name)).unwrap_or(false))
    }
}

/// Extra predicates accepted for a field besides its standard property.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AliasTable {
    aliases: BTreeMap<MetadataField, Vec<String>>,
}

impl Default for AliasTable {
    /// Ships the non-standard spellings found in guideline tables plus
    /// schema.org and Dublin Core elements equivalents.
    fn default() -> Self {
        use MetadataField::*;
        let mut table = AliasTable { aliases: BTreeMap::new() };
        table.add(Publisher, dcterms::PUBLISHED);
        table.add(BackwardCompat, owl::BACKWARD_COMPATIBILITY);
        let schema_pairs: [(MetadataField, &str); 13] = [
            (License, schema::LICENSE),
            (Creator, schema::CREATOR),
            (Creator, schema::AUTHOR),
            (Contributor, schema::CONTRIBUTOR),
            (Created, schema::DATE_CREATED),
            (Title, schema::NAME),
            (Description, schema::DESCRIPTION),
            (Citation, schema::CITATION),
            (Modified, schema::DATE_MODIFIED),
            (Issued, schema::DATE_PUBLISHED),
            (Publisher, schema::PUBLISHER),
            (Logo, schema::LOGO),
            (Abstract, schema::ABSTRACT),
        ];
        for (field, iri) in schema_pairs {
            table.add(field, iri);
            table.add(field, &iri.replacen("http://", "https://", 1));
        }
        for (field, local) in [
            (Title, "title"),
            (Description, "description"),
            (Creator, "creator"),
            (Contributor, "contributor"),
            (Publisher, "publisher"),
            (Source, "source"),
        ] {
            table.add(field, &format!("{}{local}", vocab::DC));
        }
        table
    }
}

impl AliasTable {
    pub fn empty() -> Self {
        AliasTable { aliases: BTreeMap::new() }
    }

    pub fn add(&mut self, field: MetadataField, predicate: &str) {
        let list = self.aliases.entry(field).or_default();
        if !list.iter().any(|p| p == predicate) && predicate != field.property() {
            list.push(predicate.to_string());
        }
    }

    pub fn aliases(&self, field: MetadataField) -> &[String] {
        self.aliases.get(&field).map(Vec::as_slice).unwrap_or(&[])
    }

    /// The standard property followed by every accepted alias.
    pub fn predicates(&self, field: MetadataField) -> impl Iterator<Item = &str> {
        std::iter::once(field.property()).chain(self.aliases(field).iter().map(String::as_str))
    }
}

/// One value of a metadata field and the triple predicate it came from.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MetadataValue {
    pub value: Term,
    pub predicate: String,
}

/// Metadata found on the ontology IRI, keyed by field.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OntologyMetadata {
    fields: BTreeMap<MetadataField, Vec<MetadataValue>>,
    /// Triples on the ontology IRI whose predicate maps to no field.
    pub unknown_annotations: usize,
}

impl OntologyMetadata {
    pub fn get(&self, field: MetadataField) -> &[MetadataValue] {
        self.fields.get(&field).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn is_populated(&self, field: MetadataField) -> bool {
        !self.get(field).is_empty()
    }

    /// Text of every value of `field`, in stored order.
    pub fn texts(&self, field: MetadataField) -> Vec<String> {
        self.get(field).iter().map(|v| v.value.text()).collect()
    }

    pub fn first_text(&self, field: MetadataField) -> Option<String> {
        self.get(field).first().map(|v| v.value.text())
    }

    pub fn insert(&mut self, field: MetadataField, value: Term, predicate: &str) {
        let list = self.fields.entry(field).or_default();
        let entry = MetadataValue { value, predicate: predicate.to_string() };
        if !list.contains(&entry) {
            list.push(entry);
        }
    }

    pub fn remove(&mut self, field: MetadataField) {
        self.fields.remove(&field);
    }

    pub fn populated_fields(&self) -> impl Iterator<Item = MetadataField> + '_ {
        self.fields.iter().filter(|(_, v)| !v.is_empty()).map(|(f, _)| *f)
    }
}

/// Maps every known annotation on the ontology IRI onto its field.
pub fn extract_metadata(model: &OntologyModel) -> OntologyMetadata {
    extract_metadata_with(model, &AliasTable::default())
}

pub fn extract_metadata_with(model: &OntologyModel, aliases: &AliasTable) -> OntologyMetadata {
    let mut meta = OntologyMetadata::default();
    let mut mapped: BTreeSet<&str> = BTreeSet::new();
    for field in MetadataField::all() {
        for predicate in aliases.predicates(field) {
            for value in model.annotations(model.ontology_iri(), predicate) {
                meta.insert(field, value.clone(), predicate);
            }
            mapped.insert(predicate);
        }
    }
    meta.unknown_annotations = model
        .triples_about(model.ontology_iri())
        .filter(|t| t.predicate != rdf::TYPE && t.predicate != owl::IMPORTS)
        .filter(|t| !mapped.contains(t.predicate.as_str()))
        .count();
    meta
}

fn node_kind_note(field: MetadataField, values: &[MetadataValue]) -> Option<String> {
    let expected = field.expected_node();
    let odd: Vec<String> = values
        .iter()
        .filter(|v| match expected {
            ExpectedNode::Iri => v.value.as_iri().is_none(),
            ExpectedNode::Literal => v.value.as_literal().is_none(),
            ExpectedNode::Either => v.value.is_blank(),
        })
        .map(|v| v.value.to_string())
        .collect();
    if odd.is_empty() {
        return None;
    }
    let wanted = match expected {
        ExpectedNode::Iri => "an IRI",
        ExpectedNode::Literal => "a literal",
        ExpectedNode::Either => "an IRI or literal",
    };
    Some(format!("; unexpected node kind (wanted {wanted}): {}", odd.join(", ")))
}

fn present_evidence(field: MetadataField, values: &[MetadataValue]) -> Evidence {
    let predicates: BTreeSet<String> = values.iter().map(|v| vocab::compact(&v.predicate)).collect();
    let mut message = format!("{} given via {}", field.label(), predicates.into_iter().collect::<Vec<_>>().join(", "));
    if let Some(note) = node_kind_note(field, values) {
        message.push_str(&note);
    }
    Evidence::new(message).with_values(values.iter().map(|v| v.value.text()))
}

/// Whether a missing previous version is expected: `Some(true)` for an
/// `x.0.0` release, `Some(false)` for any other parseable version, `None` when
/// no version can be read.
fn is_major_release(meta: &OntologyMetadata) -> Option<bool> {
    let versions: Vec<_> = meta.texts(MetadataField::VersionInfo).iter().filter_map(|t| parse_semver(t).ok()).collect();
    if versions.is_empty() {
        return None;
    }
    Some(versions.iter().any(|v| v.minor == 0 && v.patch == 0))
}

/// One result per recommended field: Pass when populated, Fail otherwise.
/// A missing previous version is only a warning for an `x.0.0` release or
/// when no version can be read.
pub fn check_recommended_metadata(meta: &OntologyMetadata) -> Vec<CheckResult> {
    MetadataField::RECOMMENDED
        .into_iter()
        .map(|field| {
            let values = meta.get(field);
            let (status, evidence) = if !values.is_empty() {
                (Status::Pass, present_evidence(field, values))
            } else if field == MetadataField::PriorVersion {
                match is_major_release(meta) {
                    Some(true) => (
                        Status::Warn,
                        Evidence::new("no owl:priorVersion; acceptable for a first major release")
                            .with_values(meta.texts(MetadataField::VersionInfo)),
                    ),
                    None => (
                        Status::Warn,
                        Evidence::new("no owl:priorVersion and no semantic version to tell whether one is expected"),
                    ),
                    Some(false) => (
                        Status::Fail,
                        Evidence::new("no owl:priorVersion although the version is not a first major release")
                            .with_values(meta.texts(MetadataField::VersionInfo)),
                    ),
                }
            } else {
                (
                    Status::Fail,
                    Evidence::new(format!("missing {} ({})", field.label(), vocab::compact(field.property()))),
                )
            };
            CheckResult::new(field.check_id(), status, Severity::Recommended, evidence, guideline::ONTOLOGY_METADATA)
        })
        .collect()
}

/// One result per optional field: Pass when populated, Info otherwise.
pub fn check_optional_metadata(meta: &OntologyMetadata) -> Vec<CheckResult> {
    MetadataField::OPTIONAL
        .into_iter()
        .map(|field| {
            let values = meta.get(field);
            let (status, evidence) = if values.is_empty() {
                (Status::Info, Evidence::new(format!("no {} ({})", field.label(), vocab::compact(field.property()))))
            } else {
                (Status::Pass, present_evidence(field, values))
            };
            CheckResult::new(field.check_id(), status, Severity::Optional, evidence, guideline::ONTOLOGY_METADATA)
        })
        .collect()
}

/// Warns when a field is only given through a non-standard spelling
/// (`dcterms:published`, `owl:backwardCompatibility`).
pub fn check_property_spellings(meta: &OntologyMetadata) -> Vec<CheckResult> {
    [
        (MetadataField::Publisher, dcterms::PUBLISHED, "meta.publisher-spelling"),
        (MetadataField::BackwardCompat, owl::BACKWARD_COMPATIBILITY, "meta.backward-compatibility-spelling"),
    ]
    .into_iter()
    .map(|(field, variant, id)| {
        let values = meta.get(field);
        let standard = field.property();
        let uses_standard = values.iter().any(|v| v.predicate == standard);
        let uses_variant = values.iter().any(|v| v.predicate == variant);
        let (status, evidence) = match (uses_standard, uses_variant) {
            (_, false) | (true, true) if !values.is_empty() => {
                (Status::Pass, Evidence::new(format!("{} given with a recognised property", field.label())))
            }
            (false, true) => (
                Status::Warn,
                Evidence::new(format!(
                    "{} only given via {}; the standard property is {}",
                    field.label(),
                    vocab::compact(variant),
                    vocab::compact(standard)
                ))
                .with_values([standard]),
            ),
            _ => (Status::Info, Evidence::new(format!("no {} given", field.label()))),
        };
        CheckResult::new(id, status, Severity::Optional, evidence, guideline::ONTOLOGY_METADATA)
    })
    .collect()
}
