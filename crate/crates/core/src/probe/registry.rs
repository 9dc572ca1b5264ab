use serde::{Deserialize, Serialize};

use super::transport::{HttpRequest, TransportError};
use super::Prober;
use crate::check::{guideline, CheckResult, Evidence, Severity, Status};

pub const DEFAULT_PREFIXCC_ENDPOINT: &str = "http://prefix.cc/{prefix}.file.txt";
pub const DEFAULT_LOV_ENDPOINT: &str = "https://lov.linkeddata.es/dataset/lov/api/v2/vocabulary/search?q={namespace}";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Registry {
    PrefixCC,
    Lov,
    Custom(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RegistryOutcome {
    Found(String),
    NotFound,
    /// Carries the transport evidence.
    Unreachable(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegistryFinding {
    pub registry: Registry,
    pub queried: String,
    pub outcome: RegistryOutcome,
    pub fetched_at: String,
}

fn encode(component: &str) -> String {
    url::form_urlencoded::byte_serialize(component.as_bytes()).collect()
}

pub fn prefix_lookup_url(template: &str, prefix: &str) -> String {
    template.replace("{prefix}", &encode(prefix))
}

pub fn lov_lookup_url(template: &str, namespace: &str) -> String {
    template.replace("{namespace}", &encode(namespace))
}

/// Scheme- and terminator-insensitive namespace comparison.
pub fn same_namespace(a: &str, b: &str) -> bool {
    let norm = |s: &str| {
        let s = s.trim();
        let s = s.strip_prefix("https://").or_else(|| s.strip_prefix("http://")).unwrap_or(s);
        s.trim_end_matches(['#', '/']).to_ascii_lowercase()
    };
    norm(a) == norm(b)
}

fn finding(prober: &Prober, registry: Registry, queried: &str, outcome: RegistryOutcome) -> RegistryFinding {
    RegistryFinding { registry, queried: queried.to_string(), outcome, fetched_at: prober.now() }
}

fn unreachable(e: TransportError) -> RegistryOutcome {
    RegistryOutcome::Unreachable(e.to_string())
}

/// Looks `prefix` up in the prefix.cc plain-text endpoint.
pub fn lookup_prefix(prober: &Prober, prefix: &str) -> RegistryFinding {
    let url = prefix_lookup_url(&prober.config.prefix_endpoint, prefix);
    let outcome = match prober.fetch(&HttpRequest::get(&url).with_accept(Some("text/plain"))) {
        Err(e) => unreachable(e),
        Ok(r) if r.status == 404 => RegistryOutcome::NotFound,
        Ok(r) if r.status == 200 => {
            let text = String::from_utf8_lossy(&r.body);
            text.lines()
                .filter_map(|line| {
                    let mut parts = line.split_whitespace();
                    let p = parts.next()?;
                    let ns = parts.next()?;
                    p.eq_ignore_ascii_case(prefix).then(|| ns.to_string())
                })
                .next()
                .map_or(RegistryOutcome::NotFound, RegistryOutcome::Found)
        }
        Ok(r) => RegistryOutcome::Unreachable(format!("HTTP {} from {url}", r.status)),
    };
    finding(prober, Registry::PrefixCC, prefix, outcome)
}

fn collect_namespaces(value: &serde_json::Value, out: &mut Vec<String>) {
    match value {
        serde_json::Value::Object(map) => {
            for (k, v) in map {
                if matches!(k.as_str(), "uri" | "nsp" | "namespace") {
                    match v {
                        serde_json::Value::String(s) => out.push(s.clone()),
                        serde_json::Value::Array(items) => {
                            out.extend(items.iter().filter_map(|i| i.as_str().map(str::to_string)))
                        }
                        _ => {}
                    }
                }
                collect_namespaces(v, out);
            }
        }
        serde_json::Value::Array(items) => items.iter().for_each(|i| collect_namespaces(i, out)),
        _ => {}
    }
}

/// Searches the LOV vocabulary API for `namespace`.
pub fn lookup_lov(prober: &Prober, namespace: &str) -> RegistryFinding {
    let url = lov_lookup_url(&prober.config.lov_endpoint, namespace);
    let outcome = match prober.fetch(&HttpRequest::get(&url).with_accept(Some("application/json"))) {
        Err(e) => unreachable(e),
        Ok(r) if r.status == 404 => RegistryOutcome::NotFound,
        Ok(r) if r.status == 200 => match serde_json::from_slice::<serde_json::Value>(&r.body) {
            Ok(json) => {
                let mut found = Vec::new();
                collect_namespaces(&json, &mut found);
                found
                    .into_iter()
                    .find(|ns| same_namespace(ns, namespace))
                    .map_or(RegistryOutcome::NotFound, RegistryOutcome::Found)
            }
            Err(e) => RegistryOutcome::Unreachable(format!("unreadable registry answer: {e}")),
        },
        Ok(r) => RegistryOutcome::Unreachable(format!("HTTP {} from {url}", r.status)),
    };
    finding(prober, Registry::Lov, namespace, outcome)
}

/// Grades a prefix.cc finding against the audited namespace.
pub fn prefix_registry_check(finding: &RegistryFinding, namespace: &str) -> CheckResult {
    let (status, message) = match &finding.outcome {
        RegistryOutcome::Found(ns) if same_namespace(ns, namespace) => {
            (Status::Pass, format!("prefix {:?} registered for this namespace", finding.queried))
        }
        RegistryOutcome::Found(ns) => {
            (Status::Warn, format!("prefix {:?} collides: registered for {ns}", finding.queried))
        }
        RegistryOutcome::NotFound => {
            (Status::Info, format!("prefix {:?} not registered in prefix.cc", finding.queried))
        }
        RegistryOutcome::Unreachable(e) => (Status::Skipped, format!("prefix.cc not reachable: {e}")),
    };
    let mut evidence = Evidence::new(message).with_values([finding.queried.clone()]);
    if let RegistryOutcome::Found(ns) = &finding.outcome {
        evidence.values.push(ns.clone());
    }
    CheckResult::new("find.prefix-registry", status, Severity::Optional, evidence, guideline::PREFIX_REGISTRATION)
}

pub fn lov_check(finding: &RegistryFinding) -> CheckResult {
    let (status, message) = match &finding.outcome {
        RegistryOutcome::Found(ns) => (Status::Pass, format!("listed in LOV as {ns}")),
        RegistryOutcome::NotFound => (Status::Info, "not listed in LOV".to_string()),
        RegistryOutcome::Unreachable(e) => (Status::Skipped, format!("LOV not reachable: {e}")),
    };
    CheckResult::new(
        "find.lov",
        status,
        Severity::Optional,
        Evidence::new(message).with_values([finding.queried.clone()]),
        guideline::ONTOLOGY_REGISTRY,
    )
}
