use std::collections::BTreeSet;
use std::sync::OnceLock;

use regex::Regex;
use serde_json::Value;

use crate::check::{guideline, CheckResult, Evidence, Severity, Status};

fn script_re() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| Regex::new(r"(?is)<script\b([^>]*)>(.*?)</script\s*>").expect("static regex"))
}

fn jsonld_type_re() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| Regex::new(r#"(?i)\btype\s*=\s*["']?\s*application/ld\+json"#).expect("static regex"))
}

/// Removes commas directly before a closing bracket, outside strings.
fn strip_trailing_commas(text: &str) -> String {
    let chars: Vec<char> = text.chars().collect();
    let mut out = String::with_capacity(text.len());
    let mut in_string = false;
    let mut escaped = false;
    for (i, &c) in chars.iter().enumerate() {
        if in_string {
            out.push(c);
            match (escaped, c) {
                (true, _) => escaped = false,
                (false, '\\') => escaped = true,
                (false, '"') => in_string = false,
                _ => {}
            }
            continue;
        }
        if c == '"' {
            in_string = true;
        } else if c == ',' {
            let next = chars[i + 1..].iter().find(|n| !n.is_whitespace());
            if matches!(next, Some('}') | Some(']')) {
                continue;
            }
        }
        out.push(c);
    }
    out
}

fn mentions_schema_org(context: &Value) -> bool {
    match context {
        Value::String(s) => s.contains("schema.org"),
        Value::Array(items) => items.iter().any(mentions_schema_org),
        Value::Object(map) => map.values().any(mentions_schema_org),
        _ => false,
    }
}

fn candidate_objects(doc: &Value) -> Vec<&serde_json::Map<String, Value>> {
    match doc {
        Value::Object(map) => {
            let mut out = vec![map];
            if let Some(Value::Array(graph)) = map.get("@graph") {
                out.extend(graph.iter().filter_map(Value::as_object));
            }
            out
        }
        Value::Array(items) => items.iter().filter_map(Value::as_object).collect(),
        _ => Vec::new(),
    }
}

/// Pass iff some `application/ld+json` script parses (a trailing comma is
/// tolerated and reported) and has a schema.org `@context` plus a `url` or
/// `name` member.
pub fn detect_jsonld_annotations(html: &str) -> CheckResult {
    let make = |status: Status, evidence: Evidence| {
        CheckResult::new(
            "find.jsonld-annotations",
            status,
            Severity::Optional,
            evidence,
            guideline::IN_DOCUMENT_ANNOTATIONS,
        )
    };
    let mut problems = Vec::new();
    let mut scripts = 0;
    for caps in script_re().captures_iter(html) {
        if !jsonld_type_re().is_match(&caps[1]) {
            continue;
        }
        scripts += 1;
        let body = caps[2].trim();
        let (doc, lenient) = match serde_json::from_str::<Value>(body) {
            Ok(doc) => (doc, false),
            Err(strict) => match serde_json::from_str::<Value>(&strip_trailing_commas(body)) {
                Ok(doc) => (doc, true),
                Err(_) => {
                    problems.push(format!("script {scripts}: invalid JSON ({strict})"));
                    continue;
                }
            },
        };
        let context_ok = |obj: &serde_json::Map<String, Value>| obj.get("@context").is_some_and(mentions_schema_org);
        let hit = candidate_objects(&doc).into_iter().find(|obj| {
            (context_ok(obj) || context_ok_root(&doc)) && (obj.contains_key("url") || obj.contains_key("name"))
        });
        match hit {
            Some(obj) => {
                let members: BTreeSet<String> = obj.keys().filter(|k| !k.starts_with('@')).cloned().collect();
                let mut message = "schema.org JSON-LD annotations found".to_string();
                if lenient {
                    message.push_str(" (trailing comma tolerated)");
                }
                return make(Status::Pass, Evidence::new(message).with_values(members));
            }
            None => problems.push(format!("script {scripts}: no schema.org @context with a url or name member")),
        }
    }
    let message = if scripts == 0 { "no application/ld+json script element".to_string() } else { problems.join("; ") };
    make(Status::Fail, Evidence::new(message))
}

fn context_ok_root(doc: &Value) -> bool {
    doc.as_object().and_then(|m| m.get("@context")).is_some_and(mentions_schema_org)
}
