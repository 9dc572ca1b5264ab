use std::path::Path;
use std::time::Duration;

use super::{CategoryMap, FairCategory, Weights};
use crate::audit::{AliasTable, AuditOptions, MetadataField, TermThresholds};
use crate::check::Status;
use crate::probe::ProbeConfig;

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("cannot read config {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

/// Settings read from a `key = value` file. `#` starts a comment line.
///
/// Keys: `weight.recommended|optional|informational`,
/// `threshold.term_pass|term_warn`, `registry.prefixcc|lov` (URL templates
/// with `{prefix}` / `{namespace}`), `timeout` (seconds), `max_redirects`,
/// `concurrency`, `category.<check id>`, `severity.no_303` (status for content
/// served without a 303) and `alias.<field>` (comma separated predicate IRIs).
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ToolConfig {
    pub weights: Weights,
    pub thresholds: TermThresholds,
    pub prefix_endpoint: Option<String>,
    pub lov_endpoint: Option<String>,
    pub timeout: Option<Duration>,
    pub max_redirects: Option<usize>,
    pub concurrency: Option<usize>,
    pub categories: CategoryMap,
    pub no_303_status: Option<Status>,
    pub aliases: Vec<(MetadataField, String)>,
}

fn number<T: std::str::FromStr>(value: &str, line: usize) -> Result<T, ConfigError> {
    value.parse().map_err(|_| ConfigError::Syntax { line, message: format!("expected a number, got {value:?}") })
}

fn fraction(value: &str, line: usize) -> Result<f64, ConfigError> {
    let v: f64 = number(value, line)?;
    let v = if v > 1.0 { v / 100.0 } else { v };
    if !(0.0..=1.0).contains(&v) {
        return Err(ConfigError::Syntax { line, message: format!("threshold {value} outside 0..=1 (or 0..=100%)") });
    }
    Ok(v)
}

impl ToolConfig {
    pub fn parse(text: &str) -> Result<ToolConfig, ConfigError> {
        let mut config = ToolConfig::default();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') || trimmed.starts_with(';') {
                continue;
            }
            let err = |message: String| ConfigError::Syntax { line, message };
            let (key, value) =
                trimmed.split_once('=').ok_or_else(|| err(format!("expected key = value, got {trimmed:?}")))?;
            let (key, value) = (key.trim(), value.trim().trim_matches('"'));
            match key {
                "weight.recommended" => config.weights.recommended = number(value, line)?,
                "weight.optional" => config.weights.optional = number(value, line)?,
                "weight.informational" => config.weights.informational = number(value, line)?,
                "threshold.term_pass" => config.thresholds.pass = fraction(value, line)?,
                "threshold.term_warn" => config.thresholds.warn = fraction(value, line)?,
                "registry.prefixcc" => config.prefix_endpoint = Some(value.to_string()),
                "registry.lov" => config.lov_endpoint = Some(value.to_string()),
                "timeout" => config.timeout = Some(Duration::from_secs_f64(number(value, line)?)),
                "max_redirects" => config.max_redirects = Some(number(value, line)?),
                "concurrency" => config.concurrency = Some(number(value, line)?),
                "severity.no_303" => {
                    config.no_303_status = Some(match value.to_ascii_lowercase().as_str() {
                        "pass" => Status::Pass,
                        "warn" => Status::Warn,
                        "fail" => Status::Fail,
                        "info" => Status::Info,
                        other => return Err(err(format!("unknown status {other:?}"))),
                    })
                }
                _ => {
                    if let Some(id) = key.strip_prefix("category.") {
                        let category: FairCategory = value.parse().map_err(err)?;
                        config.categories.overrides.insert(id.to_string(), category);
                    } else if let Some(name) = key.strip_prefix("alias.") {
                        let field = MetadataField::from_name(name)
                            .ok_or_else(|| err(format!("unknown metadata field {name:?}")))?;
                        for p in value.split(',').map(str::trim).filter(|p| !p.is_empty()) {
                            config.aliases.push((field, p.trim_matches(['<', '>']).to_string()));
                        }
                    } else {
                        return Err(err(format!("unknown key {key:?}")));
                    }
                }
            }
        }
        if config.thresholds.warn > config.thresholds.pass {
            return Err(ConfigError::Syntax {
                line: 0,
                message: "threshold.term_warn exceeds threshold.term_pass".into(),
            });
        }
        for w in [config.weights.recommended, config.weights.optional, config.weights.informational] {
            if !(w.is_finite() && w >= 0.0) {
                return Err(ConfigError::Syntax {
                    line: 0,
                    message: format!("weight {w} must be a non-negative number"),
                });
            }
        }
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<ToolConfig, ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|source| ConfigError::Io { path: path.display().to_string(), source })?;
        Self::parse(&text)
    }

    pub fn audit_options(&self) -> AuditOptions {
        let mut aliases = AliasTable::default();
        for (field, predicate) in &self.aliases {
            aliases.add(*field, predicate);
        }
        AuditOptions { aliases, thresholds: self.thresholds }
    }

    pub fn apply(&self, probe: &mut ProbeConfig) {
        if let Some(t) = self.timeout {
            probe.timeout = t;
        }
        if let Some(n) = self.max_redirects {
            probe.max_redirects = n;
        }
        if let Some(n) = self.concurrency {
            probe.concurrency = n.max(1);
        }
        if let Some(e) = &self.prefix_endpoint {
            probe.prefix_endpoint = e.clone();
        }
        if let Some(e) = &self.lov_endpoint {
            probe.lov_endpoint = e.clone();
        }
        if let Some(s) = self.no_303_status {
            probe.no_303_status = s;
        }
    }
}
