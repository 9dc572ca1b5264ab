//! Namespace and term IRIs used throughout the crate.

pub const RDF: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
pub const RDFS: &str = "http://www.w3.org/2000/01/rdf-schema#";
pub const OWL: &str = "http://www.w3.org/2002/07/owl#";
pub const XSD: &str = "http://www.w3.org/2001/XMLSchema#";
pub const DCTERMS: &str = "http://purl.org/dc/terms/";
pub const DC: &str = "http://purl.org/dc/elements/1.1/";
pub const VANN: &str = "http://purl.org/vocab/vann/";
pub const BIBO: &str = "http://purl.org/ontology/bibo/";
pub const FOAF: &str = "http://xmlns.com/foaf/0.1/";
pub const SW: &str = "http://www.w3.org/2003/06/sw-vocab-status/ns#";
pub const VAEM: &str = "http://www.linkedmodel.org/schema/vaem#";
pub const SKOS: &str = "http://www.w3.org/2004/02/skos/core#";
pub const SCHEMA: &str = "http://schema.org/";
pub const SCHEMA_HTTPS: &str = "https://schema.org/";

pub mod rdf {
    pub const TYPE: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
    pub const FIRST: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#first";
    pub const REST: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#rest";
    pub const NIL: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#nil";
    pub const LANG_STRING: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#langString";
}

pub mod rdfs {
    pub const CLASS: &str = "http://www.w3.org/2000/01/rdf-schema#Class";
    pub const LABEL: &str = "http://www.w3.org/2000/01/rdf-schema#label";
    pub const COMMENT: &str = "http://www.w3.org/2000/01/rdf-schema#comment";
    pub const SEE_ALSO: &str = "http://www.w3.org/2000/01/rdf-schema#seeAlso";
    pub const IS_DEFINED_BY: &str = "http://www.w3.org/2000/01/rdf-schema#isDefinedBy";
    pub const SUB_CLASS_OF: &str = "http://www.w3.org/2000/01/rdf-schema#subClassOf";
    pub const SUB_PROPERTY_OF: &str = "http://www.w3.org/2000/01/rdf-schema#subPropertyOf";
    pub const DOMAIN: &str = "http://www.w3.org/2000/01/rdf-schema#domain";
    pub const RANGE: &str = "http://www.w3.org/2000/01/rdf-schema#range";
    pub const DATATYPE: &str = "http://www.w3.org/2000/01/rdf-schema#Datatype";
}

pub mod owl {
    pub const ONTOLOGY: &str = "http://www.w3.org/2002/07/owl#Ontology";
    pub const CLASS: &str = "http://www.w3.org/2002/07/owl#Class";
    pub const THING: &str = "http://www.w3.org/2002/07/owl#Thing";
    pub const RESTRICTION: &str = "http://www.w3.org/2002/07/owl#Restriction";
    pub const OBJECT_PROPERTY: &str = "http://www.w3.org/2002/07/owl#ObjectProperty";
    pub const DATATYPE_PROPERTY: &str = "http://www.w3.org/2002/07/owl#DatatypeProperty";
    pub const ANNOTATION_PROPERTY: &str = "http://www.w3.org/2002/07/owl#AnnotationProperty";
    pub const NAMED_INDIVIDUAL: &str = "http://www.w3.org/2002/07/owl#NamedIndividual";
    pub const FUNCTIONAL_PROPERTY: &str = "http://www.w3.org/2002/07/owl#FunctionalProperty";
    pub const TRANSITIVE_PROPERTY: &str = "http://www.w3.org/2002/07/owl#TransitiveProperty";
    pub const SYMMETRIC_PROPERTY: &str = "http://www.w3.org/2002/07/owl#SymmetricProperty";
    pub const VERSION_IRI: &str = "http://www.w3.org/2002/07/owl#versionIRI";
    pub const VERSION_INFO: &str = "http://www.w3.org/2002/07/owl#versionInfo";
    pub const PRIOR_VERSION: &str = "http://www.w3.org/2002/07/owl#priorVersion";
    pub const IMPORTS: &str = "http://www.w3.org/2002/07/owl#imports";
    pub const BACKWARD_COMPATIBLE_WITH: &str = "http://www.w3.org/2002/07/owl#backwardCompatibleWith";
    /// Non-standard spelling found in some guideline tables; accepted as an alias.
    pub const BACKWARD_COMPATIBILITY: &str = "http://www.w3.org/2002/07/owl#backwardCompatibility";
    pub const INCOMPATIBLE_WITH: &str = "http://www.w3.org/2002/07/owl#incompatibleWith";
    pub const DEPRECATED: &str = "http://www.w3.org/2002/07/owl#deprecated";
    pub const EQUIVALENT_CLASS: &str = "http://www.w3.org/2002/07/owl#equivalentClass";
    pub const DISJOINT_WITH: &str = "http://www.w3.org/2002/07/owl#disjointWith";
    pub const INTERSECTION_OF: &str = "http://www.w3.org/2002/07/owl#intersectionOf";
    pub const UNION_OF: &str = "http://www.w3.org/2002/07/owl#unionOf";
    pub const COMPLEMENT_OF: &str = "http://www.w3.org/2002/07/owl#complementOf";
    pub const ONE_OF: &str = "http://www.w3.org/2002/07/owl#oneOf";
    pub const EQUIVALENT_PROPERTY: &str = "http://www.w3.org/2002/07/owl#equivalentProperty";
    pub const INVERSE_OF: &str = "http://www.w3.org/2002/07/owl#inverseOf";
    pub const ON_PROPERTY: &str = "http://www.w3.org/2002/07/owl#onProperty";
    pub const SOME_VALUES_FROM: &str = "http://www.w3.org/2002/07/owl#someValuesFrom";
    pub const ALL_VALUES_FROM: &str = "http://www.w3.org/2002/07/owl#allValuesFrom";
    pub const HAS_VALUE: &str = "http://www.w3.org/2002/07/owl#hasValue";
    pub const MIN_CARDINALITY: &str = "http://www.w3.org/2002/07/owl#minCardinality";
    pub const MAX_CARDINALITY: &str = "http://www.w3.org/2002/07/owl#maxCardinality";
    pub const CARDINALITY: &str = "http://www.w3.org/2002/07/owl#cardinality";
    pub const MIN_QUALIFIED_CARDINALITY: &str = "http://www.w3.org/2002/07/owl#minQualifiedCardinality";
    pub const MAX_QUALIFIED_CARDINALITY: &str = "http://www.w3.org/2002/07/owl#maxQualifiedCardinality";
    pub const QUALIFIED_CARDINALITY: &str = "http://www.w3.org/2002/07/owl#qualifiedCardinality";
    pub const ON_CLASS: &str = "http://www.w3.org/2002/07/owl#onClass";
}

pub mod xsd {
    pub const STRING: &str = "http://www.w3.org/2001/XMLSchema#string";
    pub const ANY_URI: &str = "http://www.w3.org/2001/XMLSchema#anyURI";
}

pub mod dcterms {
    pub const LICENSE: &str = "http://purl.org/dc/terms/license";
    pub const CREATOR: &str = "http://purl.org/dc/terms/creator";
    pub const CONTRIBUTOR: &str = "http://purl.org/dc/terms/contributor";
    pub const CREATED: &str = "http://purl.org/dc/terms/created";
    pub const TITLE: &str = "http://purl.org/dc/terms/title";
    pub const DESCRIPTION: &str = "http://purl.org/dc/terms/description";
    pub const BIBLIOGRAPHIC_CITATION: &str = "http://purl.org/dc/terms/bibliographicCitation";
    pub const ABSTRACT: &str = "http://purl.org/dc/terms/abstract";
    pub const MODIFIED: &str = "http://purl.org/dc/terms/modified";
    pub const ISSUED: &str = "http://purl.org/dc/terms/issued";
    pub const SOURCE: &str = "http://purl.org/dc/terms/source";
    pub const PUBLISHER: &str = "http://purl.org/dc/terms/publisher";
    /// Non-standard spelling found in some guideline tables; accepted as an alias.
    pub const PUBLISHED: &str = "http://purl.org/dc/terms/published";
}

pub mod vann {
    pub const PREFERRED_NAMESPACE_URI: &str = "http://purl.org/vocab/vann/preferredNamespaceUri";
    pub const PREFERRED_NAMESPACE_PREFIX: &str = "http://purl.org/vocab/vann/preferredNamespacePrefix";
    pub const EXAMPLE: &str = "http://purl.org/vocab/vann/example";
}

pub mod sw {
    pub const STATUS: &str = "http://www.w3.org/2003/06/sw-vocab-status/ns#status";
    pub const TERM_STATUS: &str = "http://www.w3.org/2003/06/sw-vocab-status/ns#term_status";
}

pub mod vaem {
    pub const RATIONALE: &str = "http://www.linkedmodel.org/schema/vaem#rationale";
}

pub mod bibo {
    pub const DOI: &str = "http://purl.org/ontology/bibo/doi";
}

pub mod foaf {
    pub const LOGO: &str = "http://xmlns.com/foaf/0.1/logo";
    pub const DEPICTION: &str = "http://xmlns.com/foaf/0.1/depiction";
    pub const PERSON: &str = "http://xmlns.com/foaf/0.1/Person";
    pub const NAME: &str = "http://xmlns.com/foaf/0.1/name";
}

pub mod schema {
    pub const NAME: &str = "http://schema.org/name";
    pub const DESCRIPTION: &str = "http://schema.org/description";
    pub const LICENSE: &str = "http://schema.org/license";
    pub const CREATOR: &str = "http://schema.org/creator";
    pub const AUTHOR: &str = "http://schema.org/author";
    pub const CONTRIBUTOR: &str = "http://schema.org/contributor";
    pub const DATE_CREATED: &str = "http://schema.org/dateCreated";
    pub const DATE_MODIFIED: &str = "http://schema.org/dateModified";
    pub const DATE_PUBLISHED: &str = "http://schema.org/datePublished";
    pub const CITATION: &str = "http://schema.org/citation";
    pub const PUBLISHER: &str = "http://schema.org/publisher";
    pub const VERSION: &str = "http://schema.org/version";
    pub const LOGO: &str = "http://schema.org/logo";
    pub const IMAGE: &str = "http://schema.org/image";
    pub const ABSTRACT: &str = "http://schema.org/abstract";
}

/// Well-known prefixes used when rendering compact names.
pub const KNOWN_PREFIXES: &[(&str, &str)] = &[
    ("rdf", RDF),
    ("rdfs", RDFS),
    ("owl", OWL),
    ("xsd", XSD),
    ("dcterms", DCTERMS),
    ("dc", DC),
    ("vann", VANN),
    ("bibo", BIBO),
    ("foaf", FOAF),
    ("sw", SW),
    ("vaem", VAEM),
    ("skos", SKOS),
    ("schema", SCHEMA),
];

/// Renders `iri` as `prefix:local` when it falls in a well-known namespace.
pub fn compact(iri: &str) -> String {
    for (prefix, ns) in KNOWN_PREFIXES {
        if let Some(local) = iri.strip_prefix(ns) {
            if !local.is_empty() && !local.contains(['/', '#']) {
                return format!("{prefix}:{local}");
            }
        }
    }
    iri.to_string()
}

/// The part of an IRI after its last `#` or `/`; the whole IRI when that is empty.
pub fn local_name(iri: &str) -> &str {
    let trimmed = iri.trim_end_matches(['#', '/']);
    match trimmed.rfind(['#', '/']) {
        Some(idx) if idx + 1 < trimmed.len() => &trimmed[idx + 1..],
        _ => trimmed,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compact_known_namespace() {
        assert_eq!(compact(owl::VERSION_IRI), "owl:versionIRI");
        assert_eq!(compact("https://w3id.org/example#A"), "https://w3id.org/example#A");
    }

    #[test]
    fn local_names() {
        assert_eq!(local_name("https://w3id.org/example#ExampleClassA"), "ExampleClassA");
        assert_eq!(local_name("http://purl.org/dc/terms/title"), "title");
        assert_eq!(local_name("https://w3id.org/example/"), "example");
    }
}
