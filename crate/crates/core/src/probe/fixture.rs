//! An in-process web of virtual hosts for deterministic probing: static files
//! plus a small interpreter for the mod_rewrite subset used in `.htaccess`
//! files produced by the scaffolder.

use std::collections::BTreeMap;
use std::fs;
use std::io;
use std::path::Path;

use regex::{Regex, RegexBuilder};

use super::transport::{HttpRequest, HttpResponse, Transport, TransportError};
use crate::rdf::RdfFormat;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum HtaccessError {
    #[error("line {line}: unsupported directive {text:?}")]
    Unsupported { line: usize, text: String },
    #[error("line {line}: {message}")]
    Invalid { line: usize, message: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Variable {
    Accept,
    UserAgent,
}

#[derive(Clone, Debug)]
struct Condition {
    variable: Variable,
    pattern: Regex,
    negate: bool,
    or_next: bool,
}

#[derive(Clone, Debug)]
struct Rule {
    conditions: Vec<Condition>,
    pattern: Regex,
    substitution: Option<String>,
    status: Option<u16>,
    last: bool,
}

/// Result of running the rewrite rules on one request.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RewriteOutcome {
    Redirect {
        status: u16,
        location: String,
    },
    Status(u16),
    /// Internal rewrite to another path relative to the mount.
    Rewritten(String),
}

/// A parsed `.htaccess` file.
#[derive(Clone, Debug, Default)]
pub struct Htaccess {
    rules: Vec<Rule>,
    /// `AddType` mappings: extension (without dot) to media type.
    pub add_types: Vec<(String, String)>,
    pub multiviews_off: bool,
    pub engine_on: bool,
}

fn split_flags(args: &[&str]) -> (Vec<String>, Vec<String>) {
    let mut plain = Vec::new();
    let mut flags = Vec::new();
    for a in args {
        if a.starts_with('[') && a.ends_with(']') {
            flags.extend(a[1..a.len() - 1].split(',').map(|f| f.trim().to_ascii_uppercase()));
        } else {
            plain.push(a.to_string());
        }
    }
    (plain, flags)
}

fn compile(pattern: &str, nocase: bool, line: usize) -> Result<Regex, HtaccessError> {
    RegexBuilder::new(pattern)
        .case_insensitive(nocase)
        .build()
        .map_err(|e| HtaccessError::Invalid { line, message: format!("bad pattern {pattern:?}: {e}") })
}

impl Htaccess {
    pub fn parse(text: &str) -> Result<Htaccess, HtaccessError> {
        let mut out = Htaccess::default();
        let mut pending: Vec<Condition> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let tokens: Vec<&str> = trimmed.split_whitespace().collect();
            let invalid = |message: &str| HtaccessError::Invalid { line, message: message.to_string() };
            match tokens[0].to_ascii_lowercase().as_str() {
                "options" => {
                    out.multiviews_off |= tokens[1..].iter().any(|t| t.eq_ignore_ascii_case("-MultiViews"));
                }
                "addtype" => {
                    let (media, exts) = tokens[1..].split_first().ok_or_else(|| invalid("AddType needs a type"))?;
                    for ext in exts {
                        out.add_types.push((ext.trim_start_matches('.').to_ascii_lowercase(), media.to_string()));
                    }
                }
                "rewriteengine" => {
                    out.engine_on = tokens.get(1).is_some_and(|v| v.eq_ignore_ascii_case("on"));
                }
                "rewritecond" => {
                    let (plain, flags) = split_flags(&tokens[1..]);
                    let [test, pattern] = plain.as_slice() else {
                        return Err(invalid("RewriteCond needs a test string and a pattern"));
                    };
                    let variable = match test.as_str() {
                        "%{HTTP_ACCEPT}" | "%{HTTP:Accept}" => Variable::Accept,
                        "%{HTTP_USER_AGENT}" | "%{HTTP:User-Agent}" => Variable::UserAgent,
                        other => return Err(HtaccessError::Unsupported { line, text: other.to_string() }),
                    };
                    let (negate, pattern) = match pattern.strip_prefix('!') {
                        Some(rest) => (true, rest),
                        None => (false, pattern.as_str()),
                    };
                    pending.push(Condition {
                        variable,
                        pattern: compile(pattern, flags.iter().any(|f| f == "NC"), line)?,
                        negate,
                        or_next: flags.iter().any(|f| f == "OR"),
                    });
                }
                "rewriterule" => {
                    let (plain, flags) = split_flags(&tokens[1..]);
                    let [pattern, substitution] = plain.as_slice() else {
                        return Err(invalid("RewriteRule needs a pattern and a substitution"));
                    };
                    let mut status = None;
                    for f in &flags {
                        if f == "R" {
                            status = Some(302);
                        } else if let Some(code) = f.strip_prefix("R=") {
                            status = Some(code.parse().map_err(|_| invalid("bad redirect status"))?);
                        }
                    }
                    out.rules.push(Rule {
                        conditions: std::mem::take(&mut pending),
                        pattern: compile(pattern, flags.iter().any(|f| f == "NC"), line)?,
                        substitution: (substitution != "-").then(|| substitution.clone()),
                        status,
                        last: flags.iter().any(|f| f == "L" || f == "END"),
                    });
                }
                _ => return Err(HtaccessError::Unsupported { line, text: trimmed.to_string() }),
            }
        }
        if !pending.is_empty() {
            return Err(HtaccessError::Invalid {
                line: text.lines().count(),
                message: "RewriteCond without a following RewriteRule".into(),
            });
        }
        Ok(out)
    }

    pub fn rule_count(&self) -> usize {
        self.rules.len()
    }

    fn conditions_hold(conds: &[Condition], accept: &str, agent: &str) -> bool {
        let mut all = true;
        let mut group: Option<bool> = None;
        for c in conds {
            let value = match c.variable {
                Variable::Accept => accept,
                Variable::UserAgent => agent,
            };
            let hit = c.pattern.is_match(value) != c.negate;
            let acc = group.unwrap_or(false) || hit;
            if c.or_next {
                group = Some(acc);
            } else {
                all &= acc;
                group = None;
            }
        }
        if let Some(acc) = group {
            all &= acc;
        }
        all
    }

    /// Runs the rules against `rel_path` (the request path below the mount,
    /// without a leading slash).
    pub fn evaluate(&self, rel_path: &str, accept: Option<&str>, agent: Option<&str>) -> Option<RewriteOutcome> {
        if !self.engine_on {
            return None;
        }
        let accept = accept.unwrap_or("");
        let agent = agent.unwrap_or("");
        let mut path = rel_path.to_string();
        let mut rewritten = false;
        for rule in &self.rules {
            let Some(caps) = rule.pattern.captures(&path) else {
                continue;
            };
            if !Self::conditions_hold(&rule.conditions, accept, agent) {
                continue;
            }
            let target = rule.substitution.as_ref().map(|s| {
                let mut t = s.clone();
                for i in (0..caps.len()).rev() {
                    t = t.replace(&format!("${i}"), caps.get(i).map_or("", |m| m.as_str()));
                }
                t
            });
            match (rule.status, target) {
                (Some(code), _) if !(300..400).contains(&code) => {
                    return Some(RewriteOutcome::Status(code));
                }
                (Some(code), Some(location)) => {
                    return Some(RewriteOutcome::Redirect { status: code, location });
                }
                (_, Some(t)) => {
                    path = t;
                    rewritten = true;
                }
                (_, None) => {}
            }
            if rule.last {
                break;
            }
        }
        rewritten.then_some(RewriteOutcome::Rewritten(path))
    }
}

/// Media type served for a file extension.
pub fn media_type_for(path: &str) -> &'static str {
    let ext = path.rsplit('.').next().unwrap_or("").to_ascii_lowercase();
    match ext.as_str() {
        "html" | "htm" => "text/html; charset=utf-8",
        "json" => "application/json",
        "txt" => "text/plain; charset=utf-8",
        "svg" => "image/svg+xml",
        "png" => "image/png",
        "css" => "text/css",
        other => RdfFormat::from_extension(other).map(RdfFormat::media_type).unwrap_or("application/octet-stream"),
    }
}

#[derive(Clone, Debug)]
struct StaticFile {
    body: Vec<u8>,
    content_type: Option<String>,
}

#[derive(Clone, Debug, Default)]
struct Site {
    /// (mount path without trailing slash, rules)
    mounts: Vec<(String, Htaccess)>,
    files: BTreeMap<String, StaticFile>,
}

/// Deterministic virtual web. Unknown hosts behave like unreachable ones.
#[derive(Clone, Debug, Default)]
pub struct FixtureWeb {
    sites: BTreeMap<String, Site>,
}

fn split_url(url: &str) -> Result<(String, String, Option<String>), TransportError> {
    let parsed = url::Url::parse(url).map_err(|e| TransportError::Connection(format!("bad URL {url}: {e}")))?;
    let host = match (parsed.host_str(), parsed.port()) {
        (Some(h), Some(p)) => format!("{h}:{p}"),
        (Some(h), None) => h.to_string(),
        _ => return Err(TransportError::Connection(format!("no host in {url}"))),
    };
    Ok((host.to_ascii_lowercase(), parsed.path().to_string(), parsed.query().map(str::to_string)))
}

fn html_page(title: &str) -> Vec<u8> {
    format!("<!DOCTYPE html>\n<html><head><title>{title}</title></head><body><h1>{title}</h1></body></html>\n")
        .into_bytes()
}

impl FixtureWeb {
    pub fn new() -> Self {
        Self::default()
    }

    fn site(&mut self, host: &str) -> &mut Site {
        self.sites.entry(host.to_ascii_lowercase()).or_default()
    }

    /// Installs `.htaccess` rules for the directory at `base_url`.
    pub fn mount_htaccess(&mut self, base_url: &str, text: &str) -> Result<(), HtaccessError> {
        let rules = Htaccess::parse(text)?;
        let (host, path, _) =
            split_url(base_url).map_err(|e| HtaccessError::Invalid { line: 0, message: e.to_string() })?;
        let site = self.site(&host);
        site.mounts.push((path.trim_end_matches('/').to_string(), rules));
        site.mounts.sort_by_key(|m| std::cmp::Reverse(m.0.len()));
        Ok(())
    }

    pub fn add_file(&mut self, url: &str, body: impl Into<Vec<u8>>) {
        self.insert_file(url, body.into(), None);
    }

    pub fn add_file_with_type(&mut self, url: &str, body: impl Into<Vec<u8>>, content_type: &str) {
        self.insert_file(url, body.into(), Some(content_type.to_string()));
    }

    fn insert_file(&mut self, url: &str, body: Vec<u8>, content_type: Option<String>) {
        let Ok((host, path, query)) = split_url(url) else {
            return;
        };
        let key = match query {
            Some(q) => format!("{path}?{q}"),
            None => path,
        };
        self.site(&host).files.insert(key, StaticFile { body, content_type });
    }

    /// Serves every file below `dir` under `base_url`. A top-level
    /// `.htaccess` is installed as rewrite rules for `htaccess_url` when
    /// given, otherwise for `base_url`.
    pub fn add_tree(&mut self, base_url: &str, dir: &Path, htaccess_url: Option<&str>) -> io::Result<()> {
        let base = base_url.trim_end_matches('/');
        let mut stack = vec![dir.to_path_buf()];
        while let Some(current) = stack.pop() {
            for entry in fs::read_dir(&current)? {
                let path = entry?.path();
                if path.is_dir() {
                    stack.push(path);
                    continue;
                }
                let rel = path.strip_prefix(dir).map_err(io::Error::other)?.to_string_lossy().replace('\\', "/");
                let body = fs::read(&path)?;
                if rel == ".htaccess" {
                    let text = String::from_utf8_lossy(&body);
                    self.mount_htaccess(htaccess_url.unwrap_or(base_url), &text).map_err(io::Error::other)?;
                } else {
                    self.add_file(&format!("{base}/{rel}"), body);
                }
            }
        }
        Ok(())
    }

    fn serve_static(&self, site: &Site, path: &str, query: Option<&str>) -> HttpResponse {
        let with_query = query.map(|q| format!("{path}?{q}"));
        let file = with_query.as_deref().and_then(|k| site.files.get(k)).or_else(|| site.files.get(path));
        match file {
            Some(f) => {
                let added = site.mounts.iter().find_map(|(base, rules)| {
                    if !path.starts_with(base.as_str()) {
                        return None;
                    }
                    let ext = path.rsplit('.').next()?.to_ascii_lowercase();
                    rules.add_types.iter().find(|(e, _)| *e == ext).map(|(_, m)| m.clone())
                });
                let ct = f.content_type.clone().or(added).unwrap_or_else(|| media_type_for(path).to_string());
                HttpResponse::new(200).with_header("Content-Type", &ct).with_body(f.body.clone())
            }
            None => HttpResponse::new(404)
                .with_header("Content-Type", "text/html; charset=utf-8")
                .with_body(html_page("Not Found")),
        }
    }
}

impl Transport for FixtureWeb {
    fn execute(&self, request: &HttpRequest) -> Result<HttpResponse, TransportError> {
        let (host, path, query) = split_url(&request.url)?;
        let site = self
            .sites
            .get(&host)
            .ok_or_else(|| TransportError::Connection(format!("could not resolve host {host}")))?;
        for (base, rules) in &site.mounts {
            let rel = if path == *base {
                ""
            } else if let Some(rest) = path.strip_prefix(&format!("{base}/")) {
                rest
            } else {
                continue;
            };
            match rules.evaluate(rel, request.accept(), request.header("user-agent")) {
                Some(RewriteOutcome::Redirect { status, location }) => {
                    return Ok(HttpResponse::new(status)
                        .with_header("Location", &location)
                        .with_header("Content-Type", "text/html; charset=utf-8")
                        .with_body(html_page("See Other")));
                }
                Some(RewriteOutcome::Status(code)) => {
                    let title = if code == 406 { "Not Acceptable" } else { "Error" };
                    return Ok(HttpResponse::new(code)
                        .with_header("Content-Type", "text/html; charset=utf-8")
                        .with_body(html_page(title)));
                }
                Some(RewriteOutcome::Rewritten(target)) => {
                    let target_path = if target.starts_with('/') { target } else { format!("{base}/{target}") };
                    return Ok(self.serve_static(site, &target_path, None));
                }
                None => break,
            }
        }
        Ok(self.serve_static(site, &path, query.as_deref()))
    }
}
