use std::collections::BTreeSet;

use oxjsonld::JsonLdSerializer;
use oxrdfxml::RdfXmlSerializer;
use oxttl::{NTriplesSerializer, TurtleSerializer};

use super::{RdfFormat, Term, Triple};

fn to_ox_subject(term: &Term) -> oxrdf::NamedOrBlankNode {
    match term {
        Term::Iri { value } => oxrdf::NamedNode::new_unchecked(value.clone()).into(),
        Term::Blank { id } => oxrdf::BlankNode::new_unchecked(id.clone()).into(),
        Term::Literal(_) => unreachable!("literal in subject position"),
    }
}

fn to_ox_term(term: &Term) -> oxrdf::Term {
    match term {
        Term::Iri { value } => oxrdf::NamedNode::new_unchecked(value.clone()).into(),
        Term::Blank { id } => oxrdf::BlankNode::new_unchecked(id.clone()).into(),
        Term::Literal(lit) => match &lit.language {
            Some(lang) => {
                oxrdf::Literal::new_language_tagged_literal_unchecked(lit.lexical.clone(), lang.clone()).into()
            }
            None => oxrdf::Literal::new_typed_literal(
                lit.lexical.clone(),
                oxrdf::NamedNode::new_unchecked(lit.datatype.clone()),
            )
            .into(),
        },
    }
}

fn to_ox(t: &Triple) -> oxrdf::Triple {
    oxrdf::Triple::new(
        to_ox_subject(&t.subject),
        oxrdf::NamedNode::new_unchecked(t.predicate.clone()),
        to_ox_term(&t.object),
    )
}

/// Canonical N-Triples text: one line per triple in sorted order.
pub fn to_ntriples(triples: &BTreeSet<Triple>) -> String {
    let mut out = NTriplesSerializer::new().for_writer(Vec::new());
    for t in triples {
        out.serialize_triple(&to_ox(t)).expect("writing to a Vec cannot fail");
    }
    String::from_utf8(out.finish()).expect("serializer emits UTF-8")
}

/// Serializes a triple set, declaring `prefixes` where the format supports it.
pub fn serialize_graph(triples: &BTreeSet<Triple>, format: RdfFormat, prefixes: &[(&str, &str)]) -> String {
    let bytes = match format {
        RdfFormat::NTriples => return to_ntriples(triples),
        RdfFormat::Turtle => {
            let mut ser = TurtleSerializer::new();
            for (p, ns) in prefixes {
                ser = ser.with_prefix(*p, *ns).expect("prefix namespaces are valid IRIs");
            }
            let mut w = ser.for_writer(Vec::new());
            for t in triples {
                w.serialize_triple(&to_ox(t)).expect("writing to a Vec cannot fail");
            }
            w.finish().expect("writing to a Vec cannot fail")
        }
        RdfFormat::RdfXml => {
            let mut ser = RdfXmlSerializer::new();
            for (p, ns) in prefixes {
                ser = ser.with_prefix(*p, *ns).expect("prefix namespaces are valid IRIs");
            }
            let mut w = ser.for_writer(Vec::new());
            for t in triples {
                w.serialize_triple(&to_ox(t)).expect("writing to a Vec cannot fail");
            }
            w.finish().expect("writing to a Vec cannot fail")
        }
        RdfFormat::JsonLd => {
            let mut ser = JsonLdSerializer::new();
            for (p, ns) in prefixes {
                ser = ser.with_prefix(*p, *ns).expect("prefix namespaces are valid IRIs");
            }
            let mut w = ser.for_writer(Vec::new());
            for t in triples {
                let quad = to_ox(t).in_graph(oxrdf::GraphName::DefaultGraph);
                w.serialize_quad(&quad).expect("writing to a Vec cannot fail");
            }
            w.finish().expect("writing to a Vec cannot fail")
        }
    };
    String::from_utf8(bytes).expect("serializers emit UTF-8")
}
