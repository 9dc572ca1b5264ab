use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write;

use super::{DiagramEdge, DiagramNode, EdgeKind, NodeKind};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DiagramError {
    #[error("edge {edge} points at unknown endpoint {endpoint}")]
    DanglingEdge { edge: String, endpoint: String },
    #[error("duplicate id {0}")]
    DuplicateId(String),
}

fn quote(text: &str) -> String {
    let mut out = String::with_capacity(text.len() + 2);
    out.push('"');
    for c in text.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

fn html(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

fn node_text(node: &DiagramNode) -> String {
    let mut lines: Vec<&str> = node.stereotypes.iter().map(String::as_str).collect();
    if let Some(label) = &node.label {
        lines.push(label);
    }
    lines.join("\n")
}

fn node_line(node: &DiagramNode) -> String {
    let mut attrs: Vec<String> = Vec::new();
    let shape = match node.kind {
        NodeKind::ClassBox | NodeKind::AnonymousClassBox | NodeKind::IndividualBox | NodeKind::AttributeBox => "box",
        NodeKind::SetOperatorCircle(_) => "circle",
        NodeKind::PropertyDiamond => "diamond",
    };
    attrs.push(format!("shape={shape}"));
    let mut styles = Vec::new();
    if node.kind == NodeKind::ClassBox || node.kind == NodeKind::AttributeBox {
        styles.push("filled");
        attrs.push("fillcolor=\"#fff7d6\"".into());
    }
    if node.dashed {
        styles.push("dashed");
    }
    if node.kind == NodeKind::IndividualBox {
        styles.push("rounded");
    }
    if !styles.is_empty() {
        attrs.push(format!("style={}", quote(&styles.join(","))));
    }
    if node.underlined {
        let text = node_text(node).lines().map(|l| format!("<U>{}</U>", html(l))).collect::<Vec<_>>().join("<BR/>");
        attrs.push(format!("label=<{text}>"));
    } else {
        attrs.push(format!("label={}", quote(&node_text(node))));
    }
    if let Some(tip) = &node.tooltip {
        attrs.push(format!("tooltip={}", quote(tip)));
    }
    format!("  {} [{}];", quote(&node.id), attrs.join(", "))
}

fn edge_attrs(edge: &DiagramEdge) -> Vec<String> {
    let mut attrs = Vec::new();
    match edge.kind {
        EdgeKind::Generalization => attrs.push("arrowhead=empty".to_string()),
        EdgeKind::Dependency => {
            attrs.push("style=dashed".into());
            attrs.push("arrowhead=vee".into());
        }
        EdgeKind::SolidAssociation => {
            attrs.push(format!("arrowhead={}", if edge.label.is_some() { "vee" } else { "none" }));
        }
        EdgeKind::DottedAssociation => {
            attrs.push("style=dotted".into());
            attrs.push("arrowhead=vee".into());
        }
    }
    if edge.bidirectional {
        attrs.push("dir=both".into());
        attrs.push("arrowtail=vee".into());
    }
    let text: Vec<&str> = edge.stereotype.iter().chain(edge.label.iter()).map(String::as_str).collect();
    if !text.is_empty() {
        attrs.push(format!("label={}", quote(&text.join("\n"))));
    }
    attrs
}

/// Renders nodes and edges as a Graphviz digraph. Output depends only on
/// the input sets, not their order.
pub fn emit_diagram(nodes: &[DiagramNode], edges: &[DiagramEdge]) -> Result<String, DiagramError> {
    let mut by_id: BTreeMap<&str, &DiagramNode> = BTreeMap::new();
    for n in nodes {
        if by_id.insert(&n.id, n).is_some() {
            return Err(DiagramError::DuplicateId(n.id.clone()));
        }
    }
    let mut edge_ids: BTreeMap<&str, &DiagramEdge> = BTreeMap::new();
    for e in edges {
        if by_id.contains_key(e.id.as_str()) || edge_ids.insert(&e.id, e).is_some() {
            return Err(DiagramError::DuplicateId(e.id.clone()));
        }
    }
    // Edges may end on edges only when those end on nodes.
    let anchored = |id: &str| {
        by_id.contains_key(id)
            || edge_ids
                .get(id)
                .is_some_and(|e| by_id.contains_key(e.from.as_str()) && by_id.contains_key(e.to.as_str()))
    };
    let mut referenced = BTreeSet::new();
    for e in edges {
        for end in [&e.from, &e.to] {
            if !anchored(end) {
                return Err(DiagramError::DanglingEdge { edge: e.id.clone(), endpoint: end.clone() });
            }
            if edge_ids.contains_key(end.as_str()) {
                referenced.insert(end.as_str());
            }
        }
    }
    let point = |id: &str| {
        if edge_ids.contains_key(id) {
            format!("{id}:mid")
        } else {
            id.to_string()
        }
    };

    let mut out = String::from("digraph ontology {\n  rankdir=BT;\n  node [fontname=\"Helvetica\", fontsize=10];\n  edge [fontname=\"Helvetica\", fontsize=9];\n");
    for node in by_id.values() {
        out.push_str(&node_line(node));
        out.push('\n');
    }
    for id in &referenced {
        let _ = writeln!(out, "  {} [shape=point, width=0.05, label=\"\"];", quote(&format!("{id}:mid")));
    }
    for (id, e) in &edge_ids {
        let attrs = edge_attrs(e);
        if referenced.contains(id) {
            let mid = quote(&format!("{id}:mid"));
            let mut head = attrs.clone();
            head.retain(|a| {
                !a.starts_with("arrowhead")
                    && !a.starts_with("label")
                    && !a.starts_with("dir")
                    && !a.starts_with("arrowtail")
            });
            head.push("arrowhead=none".into());
            if let Some(label) = attrs.iter().find(|a| a.starts_with("label")) {
                head.push(label.clone());
            }
            let mut tail = attrs.clone();
            tail.retain(|a| !a.starts_with("label"));
            let _ = writeln!(out, "  {} -> {mid} [{}];", quote(&e.from), head.join(", "));
            let _ = writeln!(out, "  {mid} -> {} [{}];", quote(&e.to), tail.join(", "));
        } else {
            let _ = writeln!(out, "  {} -> {} [{}];", quote(&point(&e.from)), quote(&point(&e.to)), attrs.join(", "));
        }
    }
    out.push_str("}\n");
    Ok(out)
}
