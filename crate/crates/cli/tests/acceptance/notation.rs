//! Expected drawing of `fixtures/notation.ttl`, one block per notation case.

use fairvoc_core::diagram::{Diagram, EdgeKind, NodeKind, NotationStyle, SetOperator};

use EdgeKind::{Dependency as Dep, DottedAssociation as Dotted, Generalization as Gen, SolidAssociation as Solid};

const NS: &str = "https://w3id.org/notation#";

fn expand(id: &str) -> String {
    id.replace('~', NS)
        .replace("owl:Thing", "http://www.w3.org/2002/07/owl#Thing")
        .replace("xsd:", "http://www.w3.org/2001/XMLSchema#")
}

pub type NodeRow = (String, NodeKind);
pub type EdgeRow = (String, String, EdgeKind, Option<String>, bool);

struct Table {
    nodes: Vec<NodeRow>,
    edges: Vec<EdgeRow>,
}

impl Table {
    fn new() -> Self {
        Table { nodes: Vec::new(), edges: Vec::new() }
    }

    fn node(&mut self, id: &str, kind: NodeKind) -> &mut Self {
        self.nodes.push((expand(id), kind));
        self
    }

    fn edge(&mut self, from: &str, to: &str, kind: EdgeKind, text: Option<&str>, both: bool) -> &mut Self {
        self.edges.push((expand(from), expand(to), kind, text.map(str::to_string), both));
        self
    }

    fn classes(&mut self, names: &[&str]) -> &mut Self {
        for n in names {
            self.node(&format!("class:~{n}"), NodeKind::ClassBox);
        }
        self
    }
}

fn arrows() -> Table {
    let mut t = Table::new();
    // named classes
    t.classes(&["Person", "Learner", "Student", "Pet", "Cat", "Dog", "Animal", "Human"]);
    // restriction as anonymous class
    t.node("anon:_:b0", NodeKind::AnonymousClassBox).edge("class:~Person", "anon:_:b0", Gen, None, false);
    // intersection and union
    t.node("op:_:b1", NodeKind::SetOperatorCircle(SetOperator::Intersection))
        .edge("class:~Student", "op:_:b1", Gen, None, false)
        .edge("op:_:b1", "class:~Person", Solid, None, false)
        .edge("op:_:b1", "class:~Learner", Solid, None, false);
    t.node("op:_:b4", NodeKind::SetOperatorCircle(SetOperator::Union))
        .edge("class:~Pet", "op:_:b4", Gen, None, false)
        .edge("op:_:b4", "class:~Cat", Solid, None, false)
        .edge("op:_:b4", "class:~Dog", Solid, None, false);
    // subclass, disjoint and equivalent classes
    t.edge("class:~Cat", "class:~Animal", Gen, None, false)
        .edge("class:~Cat", "class:~Dog", Dep, Some("<<owl:disjointWith>>"), true)
        .edge("class:~Human", "class:~Person", Dep, Some("<<owl:equivalentClass>>"), true);
    // object property without domain or range
    t.node("class:owl:Thing", NodeKind::ClassBox).edge(
        "class:owl:Thing",
        "class:owl:Thing",
        Dotted,
        Some("relatedTo"),
        false,
    );
    // object properties with domain and range, characteristics
    t.edge("class:~Person", "class:~Pet", Solid, Some("owns"), false)
        .edge("class:~Person", "class:~Cat", Solid, Some("ownsCat"), false)
        .edge("class:~Person", "class:~Pet", Solid, Some("possesses"), false)
        .edge("class:~Pet", "class:~Person", Solid, Some("ownedBy"), false)
        .edge("class:~Person", "class:~Person", Solid, Some("hasMother (F)"), false)
        .edge("class:~Person", "class:~Person", Solid, Some("ancestorOf (T)"), false)
        .edge("class:~Person", "class:~Person", Solid, Some("siblingOf (S)"), false)
        .edge("class:~Person", "class:~Person", Solid, Some("knows"), false);
    // relations between object properties
    t.edge("assoc:~ownsCat", "assoc:~owns", Dep, Some("<<owl:subPropertyOf>>"), false)
        .edge("assoc:~possesses", "assoc:~owns", Dep, Some("<<owl:equivalentProperty>>"), true)
        .edge("assoc:~ownedBy", "assoc:~owns", Dep, Some("<<owl:inverseOf>>"), true);
    // datatype property without domain
    t.node("attr:~note", NodeKind::AttributeBox).edge("class:owl:Thing", "attr:~note", Dotted, None, false);
    // datatype properties with domain and range, functional
    for p in ["name", "nickname", "fullName", "birthDate"] {
        t.node(&format!("attr:~{p}"), NodeKind::AttributeBox).edge(
            "class:~Person",
            &format!("attr:~{p}"),
            Solid,
            None,
            false,
        );
    }
    // relations between datatype properties
    t.edge("attr:~nickname", "attr:~name", Dep, Some("<<owl:subPropertyOf>>"), false).edge(
        "attr:~fullName",
        "attr:~name",
        Dep,
        Some("<<owl:equivalentProperty>>"),
        true,
    );
    // individuals
    t.node("ind:~rex", NodeKind::IndividualBox).node("ind:~tom", NodeKind::IndividualBox);
    t
}

fn diamonds() -> Table {
    let mut t = Table::new();
    let sub = Some("<<rdfs:subClassOf>>");
    let domain = Some("<<rdfs:domain>>");
    let range = Some("<<rdfs:range>>");
    // named classes
    t.classes(&["Person", "Learner", "Student", "Pet", "Cat", "Dog", "Animal", "Human"]);
    // restriction as anonymous class
    t.node("anon:_:b0", NodeKind::AnonymousClassBox).edge("class:~Person", "anon:_:b0", Dep, sub, false);
    // intersection and union
    t.node("op:_:b1", NodeKind::SetOperatorCircle(SetOperator::Intersection))
        .edge("class:~Student", "op:_:b1", Dep, sub, false)
        .edge("op:_:b1", "class:~Person", Solid, None, false)
        .edge("op:_:b1", "class:~Learner", Solid, None, false);
    t.node("op:_:b4", NodeKind::SetOperatorCircle(SetOperator::Union))
        .edge("class:~Pet", "op:_:b4", Dep, sub, false)
        .edge("op:_:b4", "class:~Cat", Solid, None, false)
        .edge("op:_:b4", "class:~Dog", Solid, None, false);
    // subclass, disjoint and equivalent classes
    t.edge("class:~Cat", "class:~Animal", Dep, sub, false);
    let disjoint = "disjoint:class:~Cat|class:~Dog";
    t.node(disjoint, NodeKind::SetOperatorCircle(SetOperator::Disjoint))
        .edge(disjoint, "class:~Cat", Solid, None, false)
        .edge(disjoint, "class:~Dog", Solid, None, false);
    let equiv = "equiv:class:~Human|class:~Person";
    t.node(equiv, NodeKind::SetOperatorCircle(SetOperator::Equivalent))
        .edge(equiv, "class:~Human", Solid, None, false)
        .edge(equiv, "class:~Person", Solid, None, false);
    // properties without domain or range
    for p in ["relatedTo", "note"] {
        t.node(&format!("prop:~{p}"), NodeKind::PropertyDiamond);
    }
    // properties with domain and range
    let typed = [
        ("owns", "Person", "class:~Pet"),
        ("ownsCat", "Person", "class:~Cat"),
        ("possesses", "Person", "class:~Pet"),
        ("ownedBy", "Pet", "class:~Person"),
        ("hasMother", "Person", "class:~Person"),
        ("ancestorOf", "Person", "class:~Person"),
        ("siblingOf", "Person", "class:~Person"),
        ("knows", "Person", "class:~Person"),
        ("name", "Person", "class:xsd:string"),
        ("nickname", "Person", "class:xsd:string"),
        ("fullName", "Person", "class:xsd:string"),
        ("birthDate", "Person", "class:xsd:date"),
    ];
    for (p, d, r) in typed {
        let id = format!("prop:~{p}");
        t.node(&id, NodeKind::PropertyDiamond)
            .edge(&id, &format!("class:~{d}"), Dotted, domain, false)
            .edge(&id, r, Dotted, range, false);
    }
    t.node("class:xsd:string", NodeKind::ClassBox).node("class:xsd:date", NodeKind::ClassBox);
    // relations between properties
    t.edge("prop:~ownsCat", "prop:~owns", Dep, Some("<<owl:subPropertyOf>>"), false)
        .edge("prop:~possesses", "prop:~owns", Dep, Some("<<owl:equivalentProperty>>"), true)
        .edge("prop:~ownedBy", "prop:~owns", Dep, Some("<<owl:inverseOf>>"), true)
        .edge("prop:~nickname", "prop:~name", Dep, Some("<<owl:subPropertyOf>>"), false)
        .edge("prop:~fullName", "prop:~name", Dep, Some("<<owl:equivalentProperty>>"), true);
    // individuals
    t.node("ind:~rex", NodeKind::IndividualBox).node("ind:~tom", NodeKind::IndividualBox).edge(
        "ind:~tom",
        "class:~Cat",
        Dep,
        Some("<<rdf:type>>"),
        false,
    );
    t
}

pub fn expected(style: NotationStyle) -> (Vec<NodeRow>, Vec<EdgeRow>) {
    let t = match style {
        NotationStyle::ArrowStyle => arrows(),
        NotationStyle::DiamondStyle => diamonds(),
    };
    let (mut nodes, mut edges) = (t.nodes, t.edges);
    nodes.sort();
    edges.sort();
    (nodes, edges)
}

pub fn actual(d: &Diagram) -> (Vec<NodeRow>, Vec<EdgeRow>) {
    let mut nodes: Vec<NodeRow> = d.nodes.iter().map(|n| (n.id.clone(), n.kind)).collect();
    let mut edges: Vec<EdgeRow> = d
        .edges
        .iter()
        .map(|e| {
            let text = e.stereotype.clone().or_else(|| e.label.clone());
            (e.from.clone(), e.to.clone(), e.kind, text, e.bidirectional)
        })
        .collect();
    nodes.sort();
    edges.sort();
    (nodes, edges)
}
