//! RDF ingestion and the queryable ontology model every other module reads.
//!
//! Documents are parsed with the `ox*` family of parsers and converted into a
//! small owned triple representation. Blank-node labels are renumbered in
//! document order (`b0`, `b1`, ...) so that the same input always produces the
//! same model; N-Triples input keeps its labels verbatim so that the canonical
//! N-Triples form round-trips exactly.

mod format;
mod model;
mod parse;
mod serialize;

pub use format::{detect_format, RdfFormat};
pub use model::{AnnotationValue, OntologyModel, TermDecl, TermKind};
pub use parse::{parse_graph, parse_ontology, parse_ontology_with_base, MAX_INPUT_BYTES};
pub use serialize::{serialize_graph, to_ntriples};

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// An RDF term. Subjects are restricted to `Iri` and `Blank` by construction.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Term {
    Iri { value: String },
    Blank { id: String },
    Literal(Literal),
}

/// A literal value. Language tags are stored lowercase.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Literal {
    pub lexical: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub language: Option<String>,
    pub datatype: String,
}

impl Term {
    pub fn iri(value: impl Into<String>) -> Self {
        Term::Iri { value: value.into() }
    }

    pub fn blank(id: impl Into<String>) -> Self {
        Term::Blank { id: id.into() }
    }

    pub fn plain(lexical: impl Into<String>) -> Self {
        Term::Literal(Literal {
            lexical: lexical.into(),
            language: None,
            datatype: crate::vocab::xsd::STRING.to_string(),
        })
    }

    pub fn lang(lexical: impl Into<String>, language: &str) -> Self {
        Term::Literal(Literal {
            lexical: lexical.into(),
            language: Some(language.to_ascii_lowercase()),
            datatype: crate::vocab::rdf::LANG_STRING.to_string(),
        })
    }

    pub fn typed(lexical: impl Into<String>, datatype: impl Into<String>) -> Self {
        Term::Literal(Literal { lexical: lexical.into(), language: None, datatype: datatype.into() })
    }

    pub fn as_iri(&self) -> Option<&str> {
        match self {
            Term::Iri { value } => Some(value),
            _ => None,
        }
    }

    pub fn as_literal(&self) -> Option<&Literal> {
        match self {
            Term::Literal(lit) => Some(lit),
            _ => None,
        }
    }

    pub fn is_blank(&self) -> bool {
        matches!(self, Term::Blank { .. })
    }

    /// IRI string or literal lexical form; blank nodes render as `_:id`.
    pub fn text(&self) -> String {
        match self {
            Term::Iri { value } => value.clone(),
            Term::Blank { id } => format!("_:{id}"),
            Term::Literal(lit) => lit.lexical.clone(),
        }
    }

    pub fn language(&self) -> Option<&str> {
        self.as_literal().and_then(|l| l.language.as_deref())
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Iri { value } => write!(f, "<{value}>"),
            Term::Blank { id } => write!(f, "_:{id}"),
            Term::Literal(lit) => {
                write!(f, "{:?}", lit.lexical)?;
                match &lit.language {
                    Some(lang) => write!(f, "@{lang}"),
                    None if lit.datatype == crate::vocab::xsd::STRING => Ok(()),
                    None => write!(f, "^^<{}>", lit.datatype),
                }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Triple {
    pub subject: Term,
    pub predicate: String,
    pub object: Term,
}

impl Triple {
    pub fn new(subject: Term, predicate: impl Into<String>, object: Term) -> Self {
        Triple { subject, predicate: predicate.into(), object }
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} <{}> {} .", self.subject, self.predicate, self.object)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RdfError {
    #[error("input is empty")]
    EmptyInput,
    #[error("input is {size} bytes, larger than the {limit} byte limit")]
    InputTooLarge { size: usize, limit: usize },
    #[error("could not determine the RDF serialization of the input")]
    UndetectableFormat,
    #[error("{format} syntax error{}: {message}", position(*.line, *.column))]
    Syntax { format: RdfFormat, message: String, line: Option<u64>, column: Option<u64> },
    #[error("no IRI subject is typed owl:Ontology")]
    NoOntologyDeclaration,
    #[error("multiple subjects are typed owl:Ontology: {}", .0.join(", "))]
    MultipleOntologyDeclarations(Vec<String>),
    #[error("unsupported media type or format name `{0}`")]
    UnknownFormat(String),
}

fn position(line: Option<u64>, column: Option<u64>) -> String {
    match (line, column) {
        (Some(l), Some(c)) => format!(" at line {}, column {}", l + 1, c + 1),
        (Some(l), None) => format!(" at line {}", l + 1),
        _ => String::new(),
    }
}
