use std::collections::{BTreeMap, BTreeSet};

use super::{stereotype, Diagram, DiagramEdge, DiagramNode, EdgeKind, NodeKind, NotationStyle, SetOperator};
use crate::rdf::{OntologyModel, Term, TermKind, Triple};
use crate::vocab::{self, owl, rdf, rdfs};

/// `xsd:string` for well-known vocabularies, the local name otherwise.
fn compact(iri: &str) -> String {
    let short = vocab::compact(iri);
    if short != iri {
        short
    } else {
        vocab::local_name(iri).to_string()
    }
}

fn characteristics(model: &OntologyModel, property: &Term) -> Vec<(&'static str, &'static str, &'static str)> {
    [
        (owl::FUNCTIONAL_PROPERTY, "F", stereotype::FUNCTIONAL),
        (owl::TRANSITIVE_PROPERTY, "T", stereotype::TRANSITIVE),
        (owl::SYMMETRIC_PROPERTY, "S", stereotype::SYMMETRIC),
    ]
    .into_iter()
    .filter(|(ty, _, _)| model.has_type(property, ty))
    .collect()
}

struct Builder<'a> {
    model: &'a OntologyModel,
    style: NotationStyle,
    nodes: BTreeMap<String, DiagramNode>,
    edges: Vec<DiagramEdge>,
    consumed: BTreeSet<Triple>,
    /// First association edge drawn for each object property.
    associations: BTreeMap<String, String>,
}

impl<'a> Builder<'a> {
    fn consume(&mut self, subject: &Term, predicate: &str, object: &Term) {
        self.consumed.insert(Triple::new(subject.clone(), predicate, object.clone()));
    }

    fn consume_all(&mut self, subject: &Term, predicate: &str) -> Vec<Term> {
        let objects: Vec<Term> = self.model.objects(subject, predicate).into_iter().cloned().collect();
        for o in &objects {
            self.consume(subject, predicate, o);
        }
        objects
    }

    fn edge(&mut self, from: String, to: String, kind: EdgeKind, stereotype: Option<&str>, bidirectional: bool) {
        self.edges.push(DiagramEdge {
            id: String::new(),
            from,
            to,
            kind,
            stereotype: stereotype.map(str::to_string),
            label: None,
            bidirectional,
        });
    }

    fn add_node(&mut self, node: DiagramNode) -> String {
        let id = node.id.clone();
        self.nodes.entry(id.clone()).or_insert(node);
        id
    }

    /// Consumes every triple reachable from a blank node through blank objects.
    fn consume_tree(&mut self, node: &Term) {
        let mut stack = vec![node.clone()];
        let mut seen = BTreeSet::new();
        while let Some(n) = stack.pop() {
            if !seen.insert(n.clone()) {
                continue;
            }
            let triples: Vec<Triple> = self.model.triples_of(&n).cloned().collect();
            for t in triples {
                if t.object.is_blank() {
                    stack.push(t.object.clone());
                }
                self.consumed.insert(t);
            }
        }
    }

    fn list_cells(&mut self, head: &Term) -> Option<Vec<Term>> {
        let items = self.model.list_items(head)?;
        let mut cell = head.clone();
        while cell != Term::iri(rdf::NIL) {
            self.consume_all(&cell, rdf::FIRST);
            cell = self.consume_all(&cell, rdf::REST).into_iter().next()?;
        }
        Some(items)
    }

    fn describe(&self, term: &Term, depth: usize) -> String {
        let Term::Blank { .. } = term else {
            return match term.as_iri() {
                Some(iri) => compact(iri),
                None => term.text(),
            };
        };
        if depth > 8 {
            return "...".into();
        }
        let one = |p: &str| self.model.objects(term, p).first().map(|o| self.describe(o, depth + 1));
        let property = one(owl::ON_PROPERTY).unwrap_or_default();
        let class = one(owl::ON_CLASS).map(|c| format!(" {c}")).unwrap_or_default();
        let list = |p: &str, sep: &str| {
            let head = self.model.objects(term, p).first().cloned()?;
            let items = self.model.list_items(head)?;
            Some(items.iter().map(|i| self.describe(i, depth + 1)).collect::<Vec<_>>().join(sep))
        };
        if let Some(x) = one(owl::SOME_VALUES_FROM) {
            format!("{property} some {x}")
        } else if let Some(x) = one(owl::ALL_VALUES_FROM) {
            format!("{property} only {x}")
        } else if let Some(x) = one(owl::HAS_VALUE) {
            format!("{property} value {x}")
        } else if let Some(n) = one(owl::MIN_CARDINALITY).or_else(|| one(owl::MIN_QUALIFIED_CARDINALITY)) {
            format!("{property} min {n}{class}")
        } else if let Some(n) = one(owl::MAX_CARDINALITY).or_else(|| one(owl::MAX_QUALIFIED_CARDINALITY)) {
            format!("{property} max {n}{class}")
        } else if let Some(n) = one(owl::CARDINALITY).or_else(|| one(owl::QUALIFIED_CARDINALITY)) {
            format!("{property} exactly {n}{class}")
        } else if let Some(x) = one(owl::COMPLEMENT_OF) {
            format!("not {x}")
        } else if let Some(items) = list(owl::ONE_OF, ", ") {
            format!("{{{items}}}")
        } else if let Some(items) = list(owl::INTERSECTION_OF, " and ") {
            format!("({items})")
        } else if let Some(items) = list(owl::UNION_OF, " or ") {
            format!("({items})")
        } else {
            String::new()
        }
    }

    fn operator(&self, subject: &Term) -> Option<(SetOperator, &'static str, Term)> {
        for (op, p) in [(SetOperator::Intersection, owl::INTERSECTION_OF), (SetOperator::Union, owl::UNION_OF)] {
            if let Some(head) = self.model.objects(subject, p).first() {
                if self.model.list_items(head).is_some() {
                    return Some((op, p, (*head).clone()));
                }
            }
        }
        None
    }

    /// An operator circle for the intersection or union on `subject`.
    fn operator_node(&mut self, id: String, subject: &Term, op: SetOperator, predicate: &str, head: &Term) -> String {
        if self.nodes.contains_key(&id) {
            return id;
        }
        let mut node = DiagramNode::new(id.clone(), NodeKind::SetOperatorCircle(op), None);
        match self.style {
            NotationStyle::ArrowStyle => node.stereotypes.push(op.stereotype().to_string()),
            NotationStyle::DiamondStyle => node.label = Some(op.symbol().to_string()),
        }
        self.add_node(node);
        self.consume(subject, predicate, head);
        if subject.is_blank() {
            self.consume(subject, rdf::TYPE, &Term::iri(owl::CLASS));
        }
        for item in self.list_cells(head).unwrap_or_default() {
            if let Some(to) = self.class_node(&item) {
                self.edge(id.clone(), to, EdgeKind::SolidAssociation, None, false);
            }
        }
        id
    }

    /// Node standing for a class expression.
    fn class_node(&mut self, term: &Term) -> Option<String> {
        match term {
            Term::Iri { value } => {
                let id = format!("class:{value}");
                if !self.nodes.contains_key(&id) {
                    self.add_node(DiagramNode::new(id.clone(), NodeKind::ClassBox, Some(compact(value))));
                }
                Some(id)
            }
            Term::Blank { id: blank } => {
                for prefix in ["op:_:", "anon:_:"] {
                    let id = format!("{prefix}{blank}");
                    if self.nodes.contains_key(&id) {
                        return Some(id);
                    }
                }
                if let Some((op, predicate, head)) = self.operator(term) {
                    return Some(self.operator_node(format!("op:_:{blank}"), term, op, predicate, &head));
                }
                let id = format!("anon:_:{blank}");
                let mut node = DiagramNode::new(id.clone(), NodeKind::AnonymousClassBox, None);
                node.tooltip = Some(self.describe(term, 0)).filter(|t| !t.is_empty());
                self.add_node(node);
                self.consume_tree(term);
                Some(id)
            }
            Term::Literal(_) => None,
        }
    }

    fn relate_classes(&mut self, subject: &Term, object: &Term, op: SetOperator, predicate: &str) {
        let (Some(from), Some(to)) = (self.class_node(subject), self.class_node(object)) else {
            return;
        };
        self.consume(subject, predicate, object);
        match self.style {
            NotationStyle::ArrowStyle => self.edge(from, to, EdgeKind::Dependency, Some(op.stereotype()), true),
            NotationStyle::DiamondStyle => {
                let tag = if op == SetOperator::Equivalent { "equiv" } else { "disjoint" };
                let id = format!("{tag}:{from}|{to}");
                self.add_node(DiagramNode::new(
                    id.clone(),
                    NodeKind::SetOperatorCircle(op),
                    Some(op.symbol().to_string()),
                ));
                self.edge(id.clone(), from, EdgeKind::SolidAssociation, None, false);
                self.edge(id, to, EdgeKind::SolidAssociation, None, false);
            }
        }
    }

    fn classes(&mut self) {
        let model = self.model;
        for term in model.declared_terms().iter().filter(|t| t.has_kind(TermKind::Class)) {
            let subject = Term::iri(&term.iri);
            for ty in [owl::CLASS, rdfs::CLASS] {
                if model.has_type(&subject, ty) {
                    self.consume(&subject, rdf::TYPE, &Term::iri(ty));
                }
            }
            self.class_node(&subject);
        }
        for t in model.triples() {
            let is_class = |x: &Term| !x.as_literal().is_some();
            match t.predicate.as_str() {
                rdfs::SUB_CLASS_OF if is_class(&t.subject) && is_class(&t.object) => {
                    let (Some(from), Some(to)) = (self.class_node(&t.subject), self.class_node(&t.object)) else {
                        continue;
                    };
                    self.consumed.insert(t.clone());
                    match self.style {
                        NotationStyle::ArrowStyle => self.edge(from, to, EdgeKind::Generalization, None, false),
                        NotationStyle::DiamondStyle => {
                            self.edge(from, to, EdgeKind::Dependency, Some(stereotype::SUB_CLASS_OF), false)
                        }
                    }
                }
                owl::EQUIVALENT_CLASS => {
                    self.relate_classes(&t.subject, &t.object, SetOperator::Equivalent, owl::EQUIVALENT_CLASS)
                }
                owl::DISJOINT_WITH => {
                    self.relate_classes(&t.subject, &t.object, SetOperator::Disjoint, owl::DISJOINT_WITH)
                }
                owl::INTERSECTION_OF | owl::UNION_OF if t.subject.as_iri().is_some() => {
                    // A named class defined directly by a set operation.
                    let Some((op, predicate, head)) = self.operator(&t.subject) else {
                        continue;
                    };
                    let iri = t.subject.as_iri().unwrap_or_default().to_string();
                    let circle = self.operator_node(format!("op:{iri}"), &t.subject, op, predicate, &head);
                    if let Some(class) = self.class_node(&t.subject) {
                        self.equivalence_to(class, circle);
                    }
                }
                _ => {}
            }
        }
    }

    fn equivalence_to(&mut self, class: String, circle: String) {
        match self.style {
            NotationStyle::ArrowStyle => {
                self.edge(class, circle, EdgeKind::Dependency, Some(stereotype::EQUIVALENT_CLASS), true)
            }
            NotationStyle::DiamondStyle => {
                let id = format!("equiv:{class}|{circle}");
                self.add_node(DiagramNode::new(
                    id.clone(),
                    NodeKind::SetOperatorCircle(SetOperator::Equivalent),
                    Some(SetOperator::Equivalent.symbol().to_string()),
                ));
                self.edge(id.clone(), class, EdgeKind::SolidAssociation, None, false);
                self.edge(id, circle, EdgeKind::SolidAssociation, None, false);
            }
        }
    }

    fn properties(&mut self) {
        let model = self.model;
        let thing = Term::iri(owl::THING);
        for term in model.declared_terms() {
            let object = term.has_kind(TermKind::ObjectProperty);
            let datatype = term.has_kind(TermKind::DatatypeProperty);
            if object == datatype {
                continue;
            }
            let p = Term::iri(&term.iri);
            let declared = if object { owl::OBJECT_PROPERTY } else { owl::DATATYPE_PROPERTY };
            self.consume(&p, rdf::TYPE, &Term::iri(declared));
            let domains = self.consume_all(&p, rdfs::DOMAIN);
            let ranges = self.consume_all(&p, rdfs::RANGE);
            let traits = characteristics(model, &p);
            for (ty, _, _) in &traits {
                self.consume(&p, rdf::TYPE, &Term::iri(*ty));
            }
            let name = compact(&term.iri);
            let suffix = if traits.is_empty() {
                String::new()
            } else {
                format!(" ({})", traits.iter().map(|t| t.1).collect::<Vec<_>>().join(", "))
            };
            let known = !domains.is_empty() && !ranges.is_empty();
            match self.style {
                NotationStyle::DiamondStyle => {
                    let id = format!("prop:{}", term.iri);
                    let mut node = DiagramNode::new(id.clone(), NodeKind::PropertyDiamond, Some(name));
                    if !known {
                        node.stereotypes.push(
                            if object { stereotype::OBJECT_PROPERTY } else { stereotype::DATATYPE_PROPERTY }
                                .to_string(),
                        );
                    }
                    node.stereotypes.extend(traits.iter().map(|t| t.2.to_string()));
                    self.add_node(node);
                    for (targets, tag) in [(&domains, stereotype::DOMAIN), (&ranges, stereotype::RANGE)] {
                        for target in targets {
                            if let Some(to) = self.class_node(target) {
                                self.edge(id.clone(), to, EdgeKind::DottedAssociation, Some(tag), false);
                            }
                        }
                    }
                }
                NotationStyle::ArrowStyle if object => {
                    let froms = if domains.is_empty() { vec![thing.clone()] } else { domains.clone() };
                    let tos = if ranges.is_empty() { vec![thing.clone()] } else { ranges.clone() };
                    let kind = if known { EdgeKind::SolidAssociation } else { EdgeKind::DottedAssociation };
                    let mut n = 0;
                    for d in &froms {
                        for r in &tos {
                            let (Some(from), Some(to)) = (self.class_node(d), self.class_node(r)) else {
                                continue;
                            };
                            let id = match n {
                                0 => format!("assoc:{}", term.iri),
                                _ => format!("assoc:{}:{n}", term.iri),
                            };
                            n += 1;
                            self.associations.entry(term.iri.clone()).or_insert_with(|| id.clone());
                            self.edges.push(DiagramEdge {
                                id,
                                from,
                                to,
                                kind,
                                stereotype: None,
                                label: Some(format!("{name}{suffix}")),
                                bidirectional: false,
                            });
                        }
                    }
                }
                NotationStyle::ArrowStyle => {
                    let id = format!("attr:{}", term.iri);
                    let range = ranges.iter().map(|r| self.describe(r, 0)).collect::<Vec<_>>().join(", ");
                    let label =
                        if range.is_empty() { format!("{name}{suffix}") } else { format!("{name} :: {range}{suffix}") };
                    for r in ranges.iter().filter(|r| r.is_blank()) {
                        self.consume_tree(r);
                    }
                    let mut node = DiagramNode::new(id.clone(), NodeKind::AttributeBox, Some(label));
                    node.dashed = domains.is_empty();
                    self.add_node(node);
                    let owners = if domains.is_empty() { vec![thing.clone()] } else { domains.clone() };
                    let kind =
                        if domains.is_empty() { EdgeKind::DottedAssociation } else { EdgeKind::SolidAssociation };
                    for owner in &owners {
                        if let Some(from) = self.class_node(owner) {
                            self.edge(from, id.clone(), kind, None, false);
                        }
                    }
                }
            }
        }
    }

    fn property_endpoint(&self, iri: &str) -> Option<String> {
        let term = self.model.term(iri)?;
        let object = term.has_kind(TermKind::ObjectProperty);
        let datatype = term.has_kind(TermKind::DatatypeProperty);
        if object == datatype {
            return None;
        }
        match self.style {
            NotationStyle::DiamondStyle => Some(format!("prop:{iri}")),
            NotationStyle::ArrowStyle if object => self.associations.get(iri).cloned(),
            NotationStyle::ArrowStyle => Some(format!("attr:{iri}")),
        }
    }

    fn property_relations(&mut self) {
        let model = self.model;
        for t in model.triples() {
            let (tag, bidirectional) = match t.predicate.as_str() {
                rdfs::SUB_PROPERTY_OF => (stereotype::SUB_PROPERTY_OF, false),
                owl::EQUIVALENT_PROPERTY => (stereotype::EQUIVALENT_PROPERTY, true),
                owl::INVERSE_OF => (stereotype::INVERSE_OF, true),
                _ => continue,
            };
            let (Some(s), Some(o)) = (t.subject.as_iri(), t.object.as_iri()) else {
                continue;
            };
            if let (Some(from), Some(to)) = (self.property_endpoint(s), self.property_endpoint(o)) {
                self.consumed.insert(t.clone());
                self.edge(from, to, EdgeKind::Dependency, Some(tag), bidirectional);
            }
        }
    }

    fn individuals(&mut self) {
        let model = self.model;
        for term in model.declared_terms() {
            if !term.has_kind(TermKind::NamedIndividual) || term.kinds.len() > 1 {
                continue;
            }
            let subject = Term::iri(&term.iri);
            if model.has_type(&subject, owl::NAMED_INDIVIDUAL) {
                self.consume(&subject, rdf::TYPE, &Term::iri(owl::NAMED_INDIVIDUAL));
            }
            let classes: Vec<Term> = model
                .objects(&subject, rdf::TYPE)
                .into_iter()
                .filter(|c| match c.as_iri() {
                    Some(iri) => {
                        iri == owl::THING
                            || !(iri.starts_with(vocab::OWL)
                                || iri.starts_with(vocab::RDFS)
                                || iri.starts_with(vocab::RDF))
                    }
                    None => c.is_blank(),
                })
                .cloned()
                .collect();
            let id = format!("ind:{}", term.iri);
            let name = compact(&term.iri);
            match self.style {
                NotationStyle::ArrowStyle => {
                    let label = if classes.is_empty() {
                        name
                    } else {
                        let names: Vec<String> = classes.iter().map(|c| self.describe(c, 0)).collect();
                        format!("{name} : {}", names.join(", "))
                    };
                    for c in &classes {
                        self.consume(&subject, rdf::TYPE, c);
                        if c.is_blank() {
                            self.consume_tree(c);
                        }
                    }
                    self.add_node(DiagramNode::new(id, NodeKind::IndividualBox, Some(label)));
                }
                NotationStyle::DiamondStyle => {
                    self.add_node(DiagramNode::new(id.clone(), NodeKind::IndividualBox, Some(name)));
                    for c in &classes {
                        if let Some(to) = self.class_node(c) {
                            self.consume(&subject, rdf::TYPE, c);
                            self.edge(id.clone(), to, EdgeKind::Dependency, Some(stereotype::TYPE), false);
                        }
                    }
                }
            }
        }
    }

    fn is_axiom(&self, t: &Triple) -> bool {
        t.subject.as_iri() != Some(self.model.ontology_iri())
            && !self.model.is_annotation_property(&t.predicate)
            && !(t.predicate == rdf::TYPE && t.object.as_iri() == Some(owl::ANNOTATION_PROPERTY))
    }
}

/// Maps the model's classes, properties and individuals onto the notation.
/// Logical triples without a production are listed in `skipped`.
pub fn build_diagram(model: &OntologyModel, style: NotationStyle) -> Diagram {
    let mut b = Builder {
        model,
        style,
        nodes: BTreeMap::new(),
        edges: Vec::new(),
        consumed: BTreeSet::new(),
        associations: BTreeMap::new(),
    };
    b.classes();
    b.properties();
    b.property_relations();
    b.individuals();

    let axioms: Vec<&Triple> = model.triples().iter().filter(|t| b.is_axiom(t)).collect();
    let skipped: Vec<Triple> = axioms.iter().filter(|t| !b.consumed.contains(**t)).map(|t| (*t).clone()).collect();
    let mut edges = b.edges;
    edges.sort_by(|x, y| {
        (&x.from, &x.to, x.kind, &x.stereotype, &x.label, &x.id).cmp(&(
            &y.from,
            &y.to,
            y.kind,
            &y.stereotype,
            &y.label,
            &y.id,
        ))
    });
    edges.dedup_by(|a, b| a.id.is_empty() && b.id.is_empty() && a == b);
    for (i, e) in edges.iter_mut().enumerate() {
        if e.id.is_empty() {
            e.id = format!("e{i}");
        }
    }
    Diagram {
        style,
        nodes: b.nodes.into_values().collect(),
        edges,
        axioms: axioms.len(),
        mapped: axioms.len() - skipped.len(),
        skipped,
    }
}
