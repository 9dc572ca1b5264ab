use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::ScaffoldError;
use crate::audit::{parse_semver, version_in_namespace, SemVer, Termination};
use crate::rdf::RdfFormat;

pub const DEFAULT_HTML_DOC: &str = "index-en.html";
pub const DEFAULT_SERIALIZATION: &str = "ontology.ttl";

/// Everything needed to lay out and serve the releases of one ontology.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScaffoldConfig {
    pub ontology_iri: String,
    pub termination: Termination,
    pub latest_version: SemVer,
    /// Sorted ascending, without duplicates.
    pub all_versions: Vec<SemVer>,
    /// Where the `release/` tree is hosted, without a trailing slash.
    pub doc_base_url: String,
    pub supported_formats: Vec<RdfFormat>,
    pub html_doc_filename: String,
    pub serialization_filename: String,
    /// Source document, resolved against the config file's directory.
    pub ontology: Option<PathBuf>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    ontology_iri: String,
    termination: Option<String>,
    latest_version: String,
    all_versions: Vec<String>,
    doc_base_url: String,
    #[serde(default)]
    supported_formats: Vec<String>,
    html_doc_filename: Option<String>,
    serialization_filename: Option<String>,
    ontology: Option<PathBuf>,
}

fn invalid(message: impl Into<String>) -> ScaffoldError {
    ScaffoldError::InvalidConfig(message.into())
}

fn parse_format(name: &str) -> Result<RdfFormat, ScaffoldError> {
    let key = name.trim().to_ascii_lowercase().replace(['-', '_', '/'], "");
    RdfFormat::ALL
        .into_iter()
        .find(|f| {
            f.name().replace('-', "") == key || f.extension() == key || f.media_type().replace(['-', '/'], "") == key
        })
        .ok_or_else(|| invalid(format!("unknown serialization format {name:?}")))
}

fn version(text: &str) -> Result<SemVer, ScaffoldError> {
    parse_semver(text).map_err(|e| invalid(e.to_string()))
}

impl ScaffoldConfig {
    /// A config with default file names and Turtle as the only format.
    pub fn new(ontology_iri: &str, doc_base_url: &str, versions: &[SemVer]) -> Result<Self, ScaffoldError> {
        let mut all_versions = versions.to_vec();
        all_versions.sort();
        all_versions.dedup();
        let latest_version = *all_versions.last().ok_or_else(|| invalid("no versions"))?;
        let config = ScaffoldConfig {
            ontology_iri: ontology_iri.to_string(),
            termination: match Termination::of(ontology_iri) {
                Termination::Slash => Termination::Slash,
                _ => Termination::Hash,
            },
            latest_version,
            all_versions,
            doc_base_url: doc_base_url.trim_end_matches('/').to_string(),
            supported_formats: vec![RdfFormat::Turtle],
            html_doc_filename: DEFAULT_HTML_DOC.to_string(),
            serialization_filename: DEFAULT_SERIALIZATION.to_string(),
            ontology: None,
        };
        config.validate()?;
        Ok(config)
    }

    /// Parses the TOML form. Relative `ontology` paths resolve against `base_dir`.
    pub fn from_toml(text: &str, base_dir: Option<&Path>) -> Result<Self, ScaffoldError> {
        let raw: RawConfig = toml::from_str(text).map_err(|e| invalid(e.message().to_string()))?;
        let termination = match raw.termination.as_deref().map(str::to_ascii_lowercase).as_deref() {
            None => match Termination::of(&raw.ontology_iri) {
                Termination::Slash => Termination::Slash,
                _ => Termination::Hash,
            },
            Some("hash") | Some("#") => Termination::Hash,
            Some("slash") | Some("/") => Termination::Slash,
            Some(other) => return Err(invalid(format!("termination must be hash or slash, not {other:?}"))),
        };
        let mut all_versions = raw.all_versions.iter().map(|v| version(v)).collect::<Result<Vec<_>, _>>()?;
        all_versions.sort();
        all_versions.dedup();
        let mut supported_formats =
            raw.supported_formats.iter().map(|f| parse_format(f)).collect::<Result<Vec<_>, _>>()?;
        if supported_formats.is_empty() {
            supported_formats.push(RdfFormat::Turtle);
        }
        supported_formats.sort();
        supported_formats.dedup();
        let config = ScaffoldConfig {
            ontology_iri: raw.ontology_iri,
            termination,
            latest_version: version(&raw.latest_version)?,
            all_versions,
            doc_base_url: raw.doc_base_url.trim_end_matches('/').to_string(),
            supported_formats,
            html_doc_filename: raw.html_doc_filename.unwrap_or_else(|| DEFAULT_HTML_DOC.into()),
            serialization_filename: raw.serialization_filename.unwrap_or_else(|| DEFAULT_SERIALIZATION.into()),
            ontology: raw.ontology.map(|p| match base_dir {
                Some(dir) if p.is_relative() => dir.join(p),
                _ => p,
            }),
        };
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<(), ScaffoldError> {
        for (name, value) in [("ontology_iri", &self.ontology_iri), ("doc_base_url", &self.doc_base_url)] {
            let url = url::Url::parse(value).map_err(|e| invalid(format!("{name}: {e}")))?;
            if !matches!(url.scheme(), "http" | "https") || url.host_str().is_none() {
                return Err(invalid(format!("{name} must be an http(s) URL")));
            }
            if url.query().is_some() {
                return Err(invalid(format!("{name} must not carry a query")));
            }
        }
        let root = url::Url::parse(self.namespace_root()).map_err(|e| invalid(format!("ontology_iri: {e}")))?;
        if root.path().trim_matches('/').is_empty() || root.fragment().is_some() {
            return Err(invalid("ontology_iri needs a path below the host"));
        }
        if let Some(segment) = version_in_namespace(&self.ontology_iri) {
            return Err(invalid(format!("ontology_iri embeds version segment {segment:?}")));
        }
        match (Termination::of(&self.ontology_iri), self.termination) {
            (Termination::Hash, Termination::Slash) | (Termination::Slash, Termination::Hash) => {
                return Err(invalid("termination disagrees with ontology_iri"))
            }
            (_, Termination::Other) => return Err(invalid("termination must be hash or slash")),
            _ => {}
        }
        if self.all_versions.is_empty() {
            return Err(invalid("all_versions is empty"));
        }
        if self.all_versions.windows(2).any(|w| w[0] >= w[1]) {
            return Err(invalid("all_versions must be sorted and unique"));
        }
        if !self.all_versions.contains(&self.latest_version) {
            return Err(invalid(format!("latest_version {} is not listed in all_versions", self.latest_version)));
        }
        if !self.supported_formats.contains(&RdfFormat::Turtle) {
            return Err(invalid("Turtle must be a supported format"));
        }
        if self.supported_formats.iter().collect::<BTreeSet<_>>().len() != self.supported_formats.len() {
            return Err(invalid("supported_formats has duplicates"));
        }
        for (name, file) in
            [("html_doc_filename", &self.html_doc_filename), ("serialization_filename", &self.serialization_filename)]
        {
            let ok = !file.is_empty()
                && !file.starts_with('.')
                && file.chars().all(|c| c.is_ascii_alphanumeric() || matches!(c, '-' | '_' | '.'));
            if !ok {
                return Err(invalid(format!("{name} {file:?} is not a plain file name")));
            }
        }
        let stems: BTreeSet<String> = self.supported_formats.iter().map(|f| self.file_for(*f)).collect();
        if stems.contains(&self.html_doc_filename) {
            return Err(invalid("html_doc_filename clashes with a serialization file"));
        }
        if self.html_doc_filename == "406.html" {
            return Err(invalid("html_doc_filename clashes with the 406 page"));
        }
        Ok(())
    }

    /// Ontology IRI without its trailing `#` or `/`.
    pub fn namespace_root(&self) -> &str {
        self.ontology_iri.trim_end_matches(['#', '/'])
    }

    /// Term namespace implied by the termination.
    pub fn namespace(&self) -> String {
        match self.termination {
            Termination::Slash => format!("{}/", self.namespace_root()),
            _ => format!("{}#", self.namespace_root()),
        }
    }

    pub fn version_iri(&self, version: &SemVer) -> String {
        format!("{}/{version}", self.namespace_root())
    }

    /// File name of a serialization: the Turtle name as given, others share its stem.
    pub fn file_for(&self, format: RdfFormat) -> String {
        if format == RdfFormat::Turtle {
            return self.serialization_filename.clone();
        }
        let stem = match self.serialization_filename.rsplit_once('.') {
            Some((stem, _)) if !stem.is_empty() => stem,
            _ => &self.serialization_filename,
        };
        format!("{stem}.{}", format.extension())
    }

    pub fn release_dir(&self, version: &SemVer) -> String {
        format!("release/{version}")
    }

    pub fn release_url(&self, version: &SemVer, file: &str) -> String {
        format!("{}/{}/{file}", self.doc_base_url, self.release_dir(version))
    }

    /// The version released before `version`, if listed.
    pub fn prior_of(&self, version: &SemVer) -> Option<SemVer> {
        self.all_versions.iter().rev().find(|v| *v < version).copied()
    }
}
