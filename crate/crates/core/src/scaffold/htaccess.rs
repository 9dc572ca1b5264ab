use std::fmt::Write as _;

use serde::Serialize;

use super::{ScaffoldConfig, ScaffoldError};
use crate::rdf::RdfFormat;

/// What a rule serves.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Representation {
    Html,
    Rdf(RdfFormat),
    /// The 406 page for anything else that was asked for explicitly.
    NotAcceptable,
    /// Turtle for requests without a usable preference.
    Default,
}

/// Which request paths below the mount point a rule covers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PathScope {
    Latest,
    /// Any listed version, captured as `$1`.
    Versions,
    LatestOrVersions,
}

/// One server-independent redirect rule.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RedirectRule {
    pub serves: Representation,
    pub scope: PathScope,
    pub status: u16,
    /// Target URL; `$1` stands for the captured version.
    pub target: String,
}

/// Rules in evaluation order: latest-version representations, per-version
/// representations, the 406 fallback, then the Turtle defaults.
pub fn redirect_table(config: &ScaffoldConfig) -> Vec<RedirectRule> {
    let mut kinds = vec![Representation::Html, Representation::Rdf(RdfFormat::Turtle)];
    kinds.extend(config.supported_formats.iter().filter(|f| **f != RdfFormat::Turtle).map(|f| Representation::Rdf(*f)));
    let file_of = |r: Representation| match r {
        Representation::Rdf(f) => config.file_for(f),
        _ => config.html_doc_filename.clone(),
    };
    let latest = config.latest_version.to_string();
    let target = |version: &str, file: String| format!("{}/release/{version}/{file}", config.doc_base_url);

    let mut rules = Vec::new();
    for scope in [PathScope::Latest, PathScope::Versions] {
        for kind in &kinds {
            let version = if scope == PathScope::Latest { latest.as_str() } else { "$1" };
            rules.push(RedirectRule { serves: *kind, scope, status: 303, target: target(version, file_of(*kind)) });
        }
    }
    rules.push(RedirectRule {
        serves: Representation::NotAcceptable,
        scope: PathScope::LatestOrVersions,
        status: 406,
        target: format!("{}/406.html", config.doc_base_url),
    });
    rules.push(RedirectRule {
        serves: Representation::Default,
        scope: PathScope::Versions,
        status: 303,
        target: target("$1", config.serialization_filename.clone()),
    });
    rules.push(RedirectRule {
        serves: Representation::Default,
        scope: PathScope::Latest,
        status: 303,
        target: target(&latest, config.serialization_filename.clone()),
    });
    rules
}

fn accept_conditions(format: RdfFormat) -> &'static [&'static str] {
    match format {
        RdfFormat::Turtle => &["text/turtle [OR]", r"text/\* [OR]", r"\*/turtle"],
        RdfFormat::RdfXml => &[r"application/rdf\+xml"],
        RdfFormat::NTriples => &["application/n-triples"],
        RdfFormat::JsonLd => &[r"application/ld\+json"],
    }
}

fn apache_conditions(serves: Representation) -> Vec<String> {
    let accept = |pattern: &str| format!("RewriteCond %{{HTTP_ACCEPT}} {pattern}");
    match serves {
        Representation::Html => vec![
            accept(r"!application/rdf\+xml.*(text/html|application/xhtml\+xml)"),
            accept("text/html [OR]"),
            accept(r"application/xhtml\+xml [OR]"),
            "RewriteCond %{HTTP_USER_AGENT} ^Mozilla/.*".to_string(),
        ],
        Representation::Rdf(f) => accept_conditions(f).iter().map(|p| accept(p)).collect(),
        Representation::NotAcceptable => vec![accept(".+"), accept(r"!\*/\*")],
        Representation::Default => Vec::new(),
    }
}

fn apache_pattern(scope: PathScope, versions: &str) -> String {
    match scope {
        PathScope::Latest => "^$".to_string(),
        PathScope::Versions => format!("^({versions})/?$"),
        PathScope::LatestOrVersions => format!("^(({versions})/?)?$"),
    }
}

fn heading(rule: &RedirectRule) -> String {
    let what = match rule.serves {
        Representation::Html => "HTML documentation".to_string(),
        Representation::Rdf(f) => format!("{} serialization", f.name()),
        Representation::NotAcceptable => return "Explicitly requested formats that are not served".to_string(),
        Representation::Default => "Turtle when no known format was requested".to_string(),
    };
    match rule.scope {
        PathScope::Latest => format!("{what}, latest version"),
        _ => format!("{what}, specific version"),
    }
}

/// Renders the table as Apache mod_rewrite directives.
pub fn render_apache(config: &ScaffoldConfig, rules: &[RedirectRule]) -> String {
    let versions = config.all_versions.iter().map(|v| regex::escape(&v.to_string())).collect::<Vec<_>>().join("|");
    let mut out = String::new();
    out.push_str("# Generated content negotiation rules for ");
    out.push_str(&config.ontology_iri);
    out.push_str("\n\n# Let the rewrite rules below pick the representation.\nOptions -MultiViews\n\n");
    let extra: Vec<RdfFormat> = config.supported_formats.iter().copied().filter(|f| *f != RdfFormat::RdfXml).collect();
    if !extra.is_empty() {
        out.push_str("# Media types Apache does not map by default.\n");
        for f in extra {
            let _ = writeln!(out, "AddType {} .{}", f.media_type(), f.extension());
        }
    }
    out.push_str("RewriteEngine on\n");
    for rule in rules {
        let _ = writeln!(out, "\n# {}", heading(rule));
        for cond in apache_conditions(rule.serves) {
            out.push_str(&cond);
            out.push('\n');
        }
        let _ = writeln!(
            out,
            "RewriteRule {} {} [R={},L]",
            apache_pattern(rule.scope, &versions),
            rule.target,
            rule.status
        );
    }
    out
}

/// The `.htaccess` file for the ontology's redirect folder.
pub fn generate_htaccess(config: &ScaffoldConfig) -> Result<String, ScaffoldError> {
    config.validate()?;
    Ok(render_apache(config, &redirect_table(config)))
}
