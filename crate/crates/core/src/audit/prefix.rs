use super::metadata::{MetadataField, OntologyMetadata};
use crate::check::{guideline, CheckResult, Evidence, Severity, Status};
use crate::vocab;

pub const MAX_PREFIX_LEN: usize = 10;

/// Prefixes with a well-established registered namespace.
pub const REGISTERED_PREFIXES: &[(&str, &str)] = &[
    ("example", "http://example.org/"),
    ("ex", "http://example.org/"),
    ("dcat", "http://www.w3.org/ns/dcat#"),
    ("prov", "http://www.w3.org/ns/prov#"),
    ("sosa", "http://www.w3.org/ns/sosa/"),
    ("ssn", "http://www.w3.org/ns/ssn/"),
    ("time", "http://www.w3.org/2006/time#"),
    ("org", "http://www.w3.org/ns/org#"),
    ("void", "http://rdfs.org/ns/void#"),
    ("geo", "http://www.w3.org/2003/01/geo/wgs84_pos#"),
];

/// The namespace a prefix is commonly registered to, if known offline.
pub fn known_registration(prefix: &str) -> Option<&'static str> {
    REGISTERED_PREFIXES
        .iter()
        .chain(vocab::KNOWN_PREFIXES)
        .find(|(p, _)| p.eq_ignore_ascii_case(prefix))
        .map(|(_, ns)| *ns)
}

fn same_namespace(a: &str, b: &str) -> bool {
    let norm = |s: &str| {
        s.trim_end_matches(['#', '/']).trim_start_matches("https://").trim_start_matches("http://").to_string()
    };
    norm(a) == norm(b)
}

/// Length/charset sanity of the preferred prefix, an offline collision check
/// against well-known registrations and a reminder to query the registry.
pub fn check_prefix_sanity(meta: &OntologyMetadata) -> Vec<CheckResult> {
    let reminder = CheckResult::new(
        "prefix.collision-reminder",
        Status::Info,
        Severity::Informational,
        Evidence::new("check the prefix against prefix.cc before publishing"),
        guideline::NAME_AND_PREFIX,
    );
    let Some(prefix) = meta.first_text(MetadataField::Prefix) else {
        return vec![
            CheckResult::new(
                "prefix.sanity",
                Status::Info,
                Severity::Recommended,
                Evidence::new("no vann:preferredNamespacePrefix declared"),
                guideline::NAME_AND_PREFIX,
            ),
            reminder,
        ];
    };
    let namespace = meta.first_text(MetadataField::NamespaceUri);
    let mut problems = Vec::new();
    if prefix.chars().count() > MAX_PREFIX_LEN {
        problems.push(format!("longer than {MAX_PREFIX_LEN} characters"));
    }
    if prefix.is_empty() || !prefix.chars().all(|c| c.is_ascii_alphanumeric()) {
        problems.push("contains non-alphanumeric characters".to_string());
    }
    let mut values = vec![prefix.clone()];
    if let Some(registered) = known_registration(&prefix) {
        if namespace.as_deref().map_or(true, |ns| !same_namespace(ns, registered)) {
            problems.push(format!("already registered for {registered}"));
            values.push(registered.to_string());
        }
    }
    let status = if problems.is_empty() { Status::Pass } else { Status::Warn };
    let message = if problems.is_empty() {
        format!("prefix {prefix:?} is short and simple")
    } else {
        format!("prefix {prefix:?}: {}", problems.join("; "))
    };
    vec![
        CheckResult::new(
            "prefix.sanity",
            status,
            Severity::Recommended,
            Evidence::new(message).with_values(values),
            guideline::NAME_AND_PREFIX,
        ),
        reminder,
    ]
}
