use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::ops::Bound;

use serde::{Deserialize, Serialize};

use super::{RdfError, Term, Triple};
use crate::vocab::{self, owl, rdf, rdfs};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum TermKind {
    Class,
    ObjectProperty,
    DatatypeProperty,
    AnnotationProperty,
    NamedIndividual,
}

impl TermKind {
    fn from_type(type_iri: &str) -> Option<TermKind> {
        match type_iri {
            owl::CLASS | rdfs::CLASS => Some(TermKind::Class),
            owl::OBJECT_PROPERTY => Some(TermKind::ObjectProperty),
            owl::DATATYPE_PROPERTY => Some(TermKind::DatatypeProperty),
            owl::ANNOTATION_PROPERTY => Some(TermKind::AnnotationProperty),
            owl::NAMED_INDIVIDUAL => Some(TermKind::NamedIndividual),
            _ => None,
        }
    }
}

/// One value of an annotation, language tag (if any) included in the term.
pub type AnnotationValue = Term;

/// A named term declared in the ontology through `rdf:type`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermDecl {
    pub iri: String,
    /// Every kind asserted for the term, sorted.
    pub kinds: Vec<TermKind>,
    pub annotations: BTreeMap<String, Vec<AnnotationValue>>,
}

impl TermDecl {
    pub fn has_kind(&self, kind: TermKind) -> bool {
        self.kinds.contains(&kind)
    }

    pub fn values(&self, property: &str) -> &[AnnotationValue] {
        self.annotations.get(property).map(Vec::as_slice).unwrap_or(&[])
    }
}

/// A parsed ontology document. Immutable once built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OntologyModel {
    ontology_iri: String,
    triples: BTreeSet<Triple>,
    declared_terms: Vec<TermDecl>,
    imports: Vec<String>,
}

const ANNOTATION_NAMESPACES: &[&str] = &[
    vocab::DCTERMS,
    vocab::DC,
    vocab::VANN,
    vocab::SW,
    vocab::VAEM,
    vocab::SKOS,
    vocab::SCHEMA,
    vocab::SCHEMA_HTTPS,
    vocab::BIBO,
    vocab::FOAF,
];

const ANNOTATION_PREDICATES: &[&str] = &[
    rdfs::LABEL,
    rdfs::COMMENT,
    rdfs::SEE_ALSO,
    rdfs::IS_DEFINED_BY,
    owl::DEPRECATED,
    owl::VERSION_INFO,
    owl::VERSION_IRI,
    owl::PRIOR_VERSION,
    owl::BACKWARD_COMPATIBLE_WITH,
    owl::BACKWARD_COMPATIBILITY,
    owl::INCOMPATIBLE_WITH,
    owl::IMPORTS,
];

impl OntologyModel {
    /// Builds a model from a triple set, designating the single IRI subject
    /// typed `owl:Ontology` as the ontology IRI. Blank-node headers do not
    /// count.
    pub fn from_triples(triples: BTreeSet<Triple>) -> Result<Self, RdfError> {
        let ontology_type = Term::iri(owl::ONTOLOGY);
        let headers: Vec<String> = triples
            .iter()
            .filter(|t| t.predicate == rdf::TYPE && t.object == ontology_type)
            .filter_map(|t| t.subject.as_iri().map(str::to_string))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let ontology_iri = match headers.len() {
            0 => return Err(RdfError::NoOntologyDeclaration),
            1 => headers.into_iter().next().unwrap_or_default(),
            _ => return Err(RdfError::MultipleOntologyDeclarations(headers)),
        };

        let mut model = OntologyModel { ontology_iri, triples, declared_terms: Vec::new(), imports: Vec::new() };
        model.imports = model.annotations(&model.ontology_iri, owl::IMPORTS).into_iter().map(Term::text).collect();
        model.declared_terms = model.collect_terms();
        Ok(model)
    }

    fn collect_terms(&self) -> Vec<TermDecl> {
        let mut kinds: BTreeMap<&str, BTreeSet<TermKind>> = BTreeMap::new();
        for t in self.triples.iter().filter(|t| t.predicate == rdf::TYPE) {
            let (Some(subject), Some(ty)) = (t.subject.as_iri(), t.object.as_iri()) else {
                continue;
            };
            if let Some(kind) = TermKind::from_type(ty) {
                kinds.entry(subject).or_default().insert(kind);
            }
        }
        // Instances of a declared class are individuals even without owl:NamedIndividual.
        let classes: HashSet<&str> =
            kinds.iter().filter(|(_, k)| k.contains(&TermKind::Class)).map(|(iri, _)| *iri).collect();
        for t in self.triples.iter().filter(|t| t.predicate == rdf::TYPE) {
            let (Some(subject), Some(ty)) = (t.subject.as_iri(), t.object.as_iri()) else {
                continue;
            };
            if classes.contains(ty) && subject != self.ontology_iri {
                kinds.entry(subject).or_default().insert(TermKind::NamedIndividual);
            }
        }

        kinds
            .into_iter()
            .filter(|(iri, _)| *iri != self.ontology_iri)
            .map(|(iri, kinds)| {
                let mut annotations: BTreeMap<String, Vec<Term>> = BTreeMap::new();
                for t in self.triples_about(iri) {
                    if self.is_annotation_property(&t.predicate) {
                        annotations.entry(t.predicate.clone()).or_default().push(t.object.clone());
                    }
                }
                TermDecl { iri: iri.to_string(), kinds: kinds.into_iter().collect(), annotations }
            })
            .collect()
    }

    pub fn ontology_iri(&self) -> &str {
        &self.ontology_iri
    }

    pub fn triples(&self) -> &BTreeSet<Triple> {
        &self.triples
    }

    pub fn declared_terms(&self) -> &[TermDecl] {
        &self.declared_terms
    }

    pub fn term(&self, iri: &str) -> Option<&TermDecl> {
        self.declared_terms.binary_search_by(|t| t.iri.as_str().cmp(iri)).ok().map(|i| &self.declared_terms[i])
    }

    /// `owl:imports` targets of the ontology. They are never fetched here.
    pub fn imports(&self) -> &[String] {
        &self.imports
    }

    /// True for predicates that carry documentation rather than logic.
    pub fn is_annotation_property(&self, predicate: &str) -> bool {
        ANNOTATION_PREDICATES.contains(&predicate)
            || ANNOTATION_NAMESPACES.iter().any(|ns| predicate.starts_with(ns))
            || self.triples.contains(&Triple::new(Term::iri(predicate), rdf::TYPE, Term::iri(owl::ANNOTATION_PROPERTY)))
    }

    /// All triples whose subject is `subject`, in sorted order.
    pub fn triples_of<'a>(&'a self, subject: &'a Term) -> impl Iterator<Item = &'a Triple> + 'a {
        let start = Triple::new(subject.clone(), String::new(), Term::iri(""));
        self.triples.range((Bound::Included(start), Bound::Unbounded)).take_while(move |t| &t.subject == subject)
    }

    pub fn triples_about<'a>(&'a self, iri: &str) -> impl Iterator<Item = &'a Triple> + 'a {
        let subject = Term::iri(iri);
        let start = Triple::new(subject.clone(), String::new(), Term::iri(""));
        self.triples.range((Bound::Included(start), Bound::Unbounded)).take_while(move |t| t.subject == subject)
    }

    /// Objects of `(subject, predicate, ?)`, sorted.
    pub fn objects<'a>(&'a self, subject: &Term, predicate: &str) -> Vec<&'a Term> {
        let start = Triple::new(subject.clone(), predicate, Term::iri(""));
        self.triples
            .range((Bound::Included(start), Bound::Unbounded))
            .take_while(|t| &t.subject == subject && t.predicate == predicate)
            .map(|t| &t.object)
            .collect()
    }

    /// Values of `predicate` on the IRI `subject`, sorted. Empty when absent.
    pub fn annotations<'a>(&'a self, subject: &str, predicate: &str) -> Vec<&'a Term> {
        self.objects(&Term::iri(subject), predicate)
    }

    pub fn types_of<'a>(&'a self, subject: &Term) -> Vec<&'a str> {
        self.objects(subject, rdf::TYPE).into_iter().filter_map(Term::as_iri).collect()
    }

    pub fn has_type(&self, subject: &Term, ty: &str) -> bool {
        self.triples.contains(&Triple::new(subject.clone(), rdf::TYPE, Term::iri(ty)))
    }

    /// Subjects of `(?, predicate, object)`.
    pub fn subjects<'a>(&'a self, predicate: &'a str, object: &'a Term) -> impl Iterator<Item = &'a Term> + 'a {
        self.triples.iter().filter(move |t| t.predicate == predicate && &t.object == object).map(|t| &t.subject)
    }

    /// Items of the RDF collection starting at `head`, or `None` when the
    /// structure is not a well-formed list.
    pub fn list_items(&self, head: &Term) -> Option<Vec<Term>> {
        let nil = Term::iri(rdf::NIL);
        let mut items = Vec::new();
        let mut node = head.clone();
        let mut seen = HashSet::new();
        while node != nil {
            if !seen.insert(node.clone()) {
                return None;
            }
            let first = self.objects(&node, rdf::FIRST);
            let rest = self.objects(&node, rdf::REST);
            if first.len() != 1 || rest.len() != 1 {
                return None;
            }
            items.push(first[0].clone());
            node = rest[0].clone();
        }
        Some(items)
    }

    /// A new model with `remove` dropped and `add` inserted, re-deriving the
    /// term list.
    pub fn with_changes(
        &self,
        remove: impl IntoIterator<Item = Triple>,
        add: impl IntoIterator<Item = Triple>,
    ) -> Result<OntologyModel, RdfError> {
        let mut triples = self.triples.clone();
        for t in remove {
            triples.remove(&t);
        }
        triples.extend(add);
        OntologyModel::from_triples(triples)
    }

    pub fn to_ntriples(&self) -> String {
        super::to_ntriples(&self.triples)
    }
}
