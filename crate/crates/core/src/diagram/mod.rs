//! UML-style notation for OWL ontologies: an abstract diagram graph and a
//! Graphviz DOT emitter.

mod build;
mod emit;

use serde::{Deserialize, Serialize};

pub use build::build_diagram;
pub use emit::{emit_diagram, DiagramError};

use crate::rdf::Triple;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum NotationStyle {
    /// Arrows and labels on associations, generalization arrows, `(F)` suffixes.
    #[default]
    ArrowStyle,
    /// Property diamonds, operator circles and stereotyped dependencies.
    DiamondStyle,
}

impl std::str::FromStr for NotationStyle {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "arrows" | "arrow" => Ok(NotationStyle::ArrowStyle),
            "diamonds" | "diamond" => Ok(NotationStyle::DiamondStyle),
            other => Err(format!("unknown notation style {other:?} (expected arrows or diamonds)")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum SetOperator {
    Intersection,
    Union,
    Equivalent,
    Disjoint,
}

impl SetOperator {
    pub fn symbol(self) -> &'static str {
        match self {
            SetOperator::Intersection => "\u{2293}",
            SetOperator::Union => "\u{2294}",
            SetOperator::Equivalent => "\u{2261}",
            SetOperator::Disjoint => "\u{22a5}",
        }
    }

    pub fn stereotype(self) -> &'static str {
        match self {
            SetOperator::Intersection => stereotype::INTERSECTION_OF,
            SetOperator::Union => stereotype::UNION_OF,
            SetOperator::Equivalent => stereotype::EQUIVALENT_CLASS,
            SetOperator::Disjoint => stereotype::DISJOINT_WITH,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum NodeKind {
    ClassBox,
    AnonymousClassBox,
    SetOperatorCircle(SetOperator),
    PropertyDiamond,
    IndividualBox,
    /// A datatype property drawn as a box attached to its domain class.
    AttributeBox,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct DiagramNode {
    pub id: String,
    pub kind: NodeKind,
    pub label: Option<String>,
    pub underlined: bool,
    /// Dashed outline, used for attributes whose domain is unknown.
    pub dashed: bool,
    pub stereotypes: Vec<String>,
    /// Restriction text of anonymous classes.
    pub tooltip: Option<String>,
}

impl DiagramNode {
    pub fn new(id: impl Into<String>, kind: NodeKind, label: Option<String>) -> Self {
        DiagramNode {
            id: id.into(),
            kind,
            underlined: kind == NodeKind::IndividualBox,
            label,
            dashed: false,
            stereotypes: Vec::new(),
            tooltip: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum EdgeKind {
    Generalization,
    Dependency,
    SolidAssociation,
    DottedAssociation,
}

/// An edge between nodes. An endpoint may also name another edge, which
/// links the two property arrows themselves.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct DiagramEdge {
    pub id: String,
    pub from: String,
    pub to: String,
    pub kind: EdgeKind,
    pub stereotype: Option<String>,
    pub label: Option<String>,
    pub bidirectional: bool,
}

/// Result of mapping a model onto the notation.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Diagram {
    pub style: NotationStyle,
    pub nodes: Vec<DiagramNode>,
    pub edges: Vec<DiagramEdge>,
    /// Logical triples the notation has no production for.
    pub skipped: Vec<Triple>,
    /// Logical triples considered (annotations and the header excluded).
    pub axioms: usize,
    pub mapped: usize,
}

impl Diagram {
    pub fn node(&self, id: &str) -> Option<&DiagramNode> {
        self.nodes.iter().find(|n| n.id == id)
    }

    pub fn emit(&self) -> Result<String, DiagramError> {
        emit_diagram(&self.nodes, &self.edges)
    }
}

/// The closed set of stereotype labels.
pub mod stereotype {
    pub const SUB_CLASS_OF: &str = "<<rdfs:subClassOf>>";
    pub const EQUIVALENT_CLASS: &str = "<<owl:equivalentClass>>";
    pub const DISJOINT_WITH: &str = "<<owl:disjointWith>>";
    pub const INTERSECTION_OF: &str = "<<owl:intersectionOf>>";
    pub const UNION_OF: &str = "<<owl:unionOf>>";
    pub const TYPE: &str = "<<rdf:type>>";
    pub const DOMAIN: &str = "<<rdfs:domain>>";
    pub const RANGE: &str = "<<rdfs:range>>";
    pub const SUB_PROPERTY_OF: &str = "<<owl:subPropertyOf>>";
    pub const INVERSE_OF: &str = "<<owl:inverseOf>>";
    pub const EQUIVALENT_PROPERTY: &str = "<<owl:equivalentProperty>>";
    pub const OBJECT_PROPERTY: &str = "<<owl:ObjectProperty>>";
    pub const DATATYPE_PROPERTY: &str = "<<owl:DatatypeProperty>>";
    pub const FUNCTIONAL: &str = "<<owl:FunctionalProperty>>";
    pub const TRANSITIVE: &str = "<<owl:TransitiveProperty>>";
    pub const SYMMETRIC: &str = "<<owl:SymmetricProperty>>";

    pub const ALL: [&str; 16] = [
        SUB_CLASS_OF,
        EQUIVALENT_CLASS,
        DISJOINT_WITH,
        INTERSECTION_OF,
        UNION_OF,
        TYPE,
        DOMAIN,
        RANGE,
        SUB_PROPERTY_OF,
        INVERSE_OF,
        EQUIVALENT_PROPERTY,
        OBJECT_PROPERTY,
        DATATYPE_PROPERTY,
        FUNCTIONAL,
        TRANSITIVE,
        SYMMETRIC,
    ];
}
