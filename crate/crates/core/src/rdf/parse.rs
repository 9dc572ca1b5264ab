use std::collections::{BTreeSet, HashMap};

use oxjsonld::JsonLdParser;
use oxrdfxml::RdfXmlParser;
use oxttl::{NTriplesParser, TurtleParser};

use super::{Literal, OntologyModel, RdfError, RdfFormat, Term, Triple};

/// Inputs larger than this are rejected before parsing.
pub const MAX_INPUT_BYTES: usize = 64 * 1024 * 1024;

/// Renumbers parser-assigned blank node ids in order of first appearance.
#[derive(Default)]
struct BlankRenamer {
    keep_labels: bool,
    seen: HashMap<String, String>,
}

impl BlankRenamer {
    fn rename(&mut self, id: &str) -> String {
        if self.keep_labels {
            return id.to_string();
        }
        let next = self.seen.len();
        self.seen.entry(id.to_string()).or_insert_with(|| format!("b{next}")).clone()
    }

    fn subject(&mut self, s: oxrdf::NamedOrBlankNode) -> Term {
        match s {
            oxrdf::NamedOrBlankNode::NamedNode(n) => Term::iri(n.into_string()),
            oxrdf::NamedOrBlankNode::BlankNode(b) => Term::blank(self.rename(b.as_str())),
        }
    }

    fn object(&mut self, o: oxrdf::Term) -> Term {
        match o {
            oxrdf::Term::NamedNode(n) => Term::iri(n.into_string()),
            oxrdf::Term::BlankNode(b) => Term::blank(self.rename(b.as_str())),
            oxrdf::Term::Literal(l) => {
                let datatype = l.datatype().as_str().to_string();
                let (lexical, _, language) = l.destruct();
                Term::Literal(Literal { lexical, language: language.map(|t| t.to_ascii_lowercase()), datatype })
            }
            #[allow(unreachable_patterns)]
            _ => Term::plain(""),
        }
    }

    fn triple(&mut self, t: oxrdf::Triple) -> Triple {
        let subject = self.subject(t.subject);
        let predicate = t.predicate.into_string();
        let object = self.object(t.object);
        Triple { subject, predicate, object }
    }
}

fn syntax(format: RdfFormat, message: String, line: Option<u64>, column: Option<u64>) -> RdfError {
    RdfError::Syntax { format, message, line, column }
}

/// Parses `bytes` into a deduplicated triple set. Quads outside the default
/// graph (JSON-LD named graphs) are ignored.
pub fn parse_graph(bytes: &[u8], format: RdfFormat, base: Option<&str>) -> Result<BTreeSet<Triple>, RdfError> {
    if bytes.len() > MAX_INPUT_BYTES {
        return Err(RdfError::InputTooLarge { size: bytes.len(), limit: MAX_INPUT_BYTES });
    }
    let bad_base = |e: &dyn std::fmt::Display| syntax(format, format!("invalid base IRI: {e}"), None, None);
    let mut renamer = BlankRenamer { keep_labels: format == RdfFormat::NTriples, ..Default::default() };
    let mut triples = BTreeSet::new();
    match format {
        RdfFormat::Turtle => {
            let mut parser = TurtleParser::new();
            if let Some(base) = base {
                parser = parser.with_base_iri(base).map_err(|e| bad_base(&e))?;
            }
            for t in parser.for_slice(bytes) {
                let t = t.map_err(|e| {
                    let loc = e.location();
                    syntax(format, e.message().to_string(), Some(loc.start.line), Some(loc.start.column))
                })?;
                triples.insert(renamer.triple(t));
            }
        }
        RdfFormat::NTriples => {
            for t in NTriplesParser::new().for_slice(bytes) {
                let t = t.map_err(|e| {
                    let loc = e.location();
                    syntax(format, e.message().to_string(), Some(loc.start.line), Some(loc.start.column))
                })?;
                triples.insert(renamer.triple(t));
            }
        }
        RdfFormat::RdfXml => {
            let mut parser = RdfXmlParser::new();
            if let Some(base) = base {
                parser = parser.with_base_iri(base).map_err(|e| bad_base(&e))?;
            }
            for t in parser.for_slice(bytes) {
                let t = t.map_err(|e| syntax(format, e.to_string(), None, None))?;
                triples.insert(renamer.triple(t));
            }
        }
        RdfFormat::JsonLd => {
            let mut parser = JsonLdParser::new();
            if let Some(base) = base {
                parser = parser.with_base_iri(base).map_err(|e| bad_base(&e))?;
            }
            for q in parser.for_slice(bytes) {
                let q = q.map_err(|e| {
                    let (line, column) =
                        e.location().map(|l| (Some(l.start.line), Some(l.start.column))).unwrap_or((None, None));
                    syntax(format, e.to_string(), line, column)
                })?;
                if q.graph_name.is_default_graph() {
                    triples.insert(renamer.triple(q.into()));
                }
            }
        }
    }
    Ok(triples)
}

/// Parses an ontology document. Exactly one IRI subject must be typed
/// `owl:Ontology`.
pub fn parse_ontology(bytes: &[u8], format: RdfFormat) -> Result<OntologyModel, RdfError> {
    parse_ontology_with_base(bytes, format, None)
}

pub fn parse_ontology_with_base(
    bytes: &[u8],
    format: RdfFormat,
    base: Option<&str>,
) -> Result<OntologyModel, RdfError> {
    let triples = parse_graph(bytes, format, base)?;
    OntologyModel::from_triples(triples)
}
