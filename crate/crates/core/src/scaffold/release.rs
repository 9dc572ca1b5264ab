use std::collections::BTreeSet;
use std::fmt;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use serde::Serialize;

use super::htaccess::generate_htaccess;
use super::snippet::{generate_jsonld_snippet, jsonld_script, preferred_text};
use super::{ScaffoldConfig, ScaffoldError};
use crate::audit::{extract_metadata, namespace_root, version_in_namespace, MetadataField, SemVer};
use crate::rdf::{serialize_graph, OntologyModel, RdfFormat, Term, Triple};
use crate::vocab::{self, dcterms, owl, rdfs, vann};

/// Identifies a generated file.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(tag = "artifact", rename_all = "kebab-case")]
pub enum ArtifactId {
    Htaccess,
    NotAcceptablePage,
    Serialization { version: SemVer, format: RdfFormat },
    DocPage { version: SemVer },
}

impl fmt::Display for ArtifactId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ArtifactId::Htaccess => f.write_str("htaccess"),
            ArtifactId::NotAcceptablePage => f.write_str("406-page"),
            ArtifactId::Serialization { version, format } => write!(f, "serialization {version} {}", format.name()),
            ArtifactId::DocPage { version } => write!(f, "doc-page {version}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ContentSource {
    /// The input document, copied unchanged.
    Copy(PathBuf),
    Generated(ArtifactId),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LayoutEntry {
    /// Relative to the release root, `/`-separated.
    pub path: String,
    pub source: ContentSource,
    /// Rendered bytes of generated entries; empty for copies.
    #[serde(skip)]
    pub content: Vec<u8>,
}

/// The files of a release tree, in write order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ReleaseLayout {
    pub entries: Vec<LayoutEntry>,
}

impl ReleaseLayout {
    pub fn paths(&self) -> Vec<&str> {
        self.entries.iter().map(|e| e.path.as_str()).collect()
    }

    pub fn get(&self, path: &str) -> Option<&LayoutEntry> {
        self.entries.iter().find(|e| e.path == path)
    }

    /// Bytes of every entry, reading copied inputs from disk.
    pub fn contents(&self) -> io::Result<Vec<(String, Vec<u8>)>> {
        self.entries
            .iter()
            .map(|e| {
                let bytes = match &e.source {
                    ContentSource::Copy(from) => fs::read(from)?,
                    ContentSource::Generated(_) => e.content.clone(),
                };
                Ok((e.path.clone(), bytes))
            })
            .collect()
    }

    /// Writes the tree below `dir` and returns the written files.
    pub fn write_to(&self, dir: &Path) -> io::Result<Vec<PathBuf>> {
        let mut written = Vec::new();
        for (path, bytes) in self.contents()? {
            let target = dir.join(&path);
            if let Some(parent) = target.parent() {
                fs::create_dir_all(parent)?;
            }
            fs::write(&target, bytes)?;
            written.push(target);
        }
        Ok(written)
    }

    /// One line per entry, for dry runs.
    pub fn describe(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            let source = match &e.source {
                ContentSource::Copy(from) => format!("copy of {}", from.display()),
                ContentSource::Generated(id) => format!("generated {id} ({} bytes)", e.content.len()),
            };
            out.push_str(&format!("{}\t{source}\n", e.path));
        }
        out
    }
}

/// Sets `owl:versionIRI`, `owl:versionInfo` and, when given, `owl:priorVersion`
/// on the ontology header. Existing values of those properties are replaced.
pub fn stamp_version(
    model: &OntologyModel,
    version: SemVer,
    prior: Option<SemVer>,
) -> Result<OntologyModel, ScaffoldError> {
    let iri = model.ontology_iri();
    if version_in_namespace(iri).is_some() {
        return Err(ScaffoldError::VersionInNamespace(iri.to_string()));
    }
    let root = namespace_root(iri);
    let header = Term::iri(iri);
    let mut replaced = vec![owl::VERSION_IRI, owl::VERSION_INFO];
    if prior.is_some() {
        replaced.push(owl::PRIOR_VERSION);
    }
    let remove: Vec<Triple> =
        model.triples_of(&header).filter(|t| replaced.contains(&t.predicate.as_str())).cloned().collect();
    let mut add = vec![
        Triple::new(header.clone(), owl::VERSION_IRI, Term::iri(format!("{root}/{version}"))),
        Triple::new(header.clone(), owl::VERSION_INFO, Term::lang(version.to_string(), "en")),
    ];
    if let Some(p) = prior {
        add.push(Triple::new(header, owl::PRIOR_VERSION, Term::iri(format!("{root}/{p}"))));
    }
    Ok(model.with_changes(remove, add)?)
}

fn prefixes(model: &OntologyModel, config: &ScaffoldConfig) -> Vec<(String, String)> {
    let mut out: Vec<(String, String)> = [
        ("owl", vocab::OWL),
        ("rdf", vocab::RDF),
        ("rdfs", vocab::RDFS),
        ("xsd", vocab::XSD),
        ("dcterms", vocab::DCTERMS),
        ("vann", vocab::VANN),
    ]
    .iter()
    .map(|(p, ns)| (p.to_string(), ns.to_string()))
    .collect();
    let declared =
        model.annotations(model.ontology_iri(), vann::PREFERRED_NAMESPACE_PREFIX).first().map(|t| t.text()).filter(
            |p| !p.is_empty() && p.chars().all(|c| c.is_ascii_alphanumeric()) && !out.iter().any(|(q, _)| q == p),
        );
    if let Some(p) = declared {
        out.push((p, config.namespace()));
    }
    out
}

fn escape_html(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&#39;"),
            c => out.push(c),
        }
    }
    out
}

fn fallback_title(model: &OntologyModel, config: &ScaffoldConfig) -> String {
    model.annotations(model.ontology_iri(), rdfs::LABEL).first().map(|t| t.text()).unwrap_or_else(|| {
        let root = config.namespace_root();
        root[root.rfind('/').map_or(0, |i| i + 1)..].to_string()
    })
}

fn doc_page(config: &ScaffoldConfig, stamped: &OntologyModel, version: SemVer) -> Result<String, ScaffoldError> {
    let mut meta = extract_metadata(stamped);
    if preferred_text(&meta, MetadataField::Title).map_or(true, |t| t.trim().is_empty()) {
        meta.remove(MetadataField::Title);
        meta.insert(MetadataField::Title, Term::plain(fallback_title(stamped, config)), dcterms::TITLE);
    }
    let title = preferred_text(&meta, MetadataField::Title).unwrap_or_default();
    let snippet = generate_jsonld_snippet(&meta, &config.ontology_iri)?;
    let mut rows = vec![
        ("Ontology IRI", config.ontology_iri.clone()),
        ("This version", config.version_iri(&version)),
        ("Namespace", config.namespace()),
    ];
    if let Some(prior) = config.prior_of(&version) {
        rows.push(("Previous version", config.version_iri(&prior)));
    }
    let mut html = String::new();
    html.push_str("<!DOCTYPE html>\n<html lang=\"en\">\n<head>\n<meta charset=\"utf-8\">\n");
    html.push_str(&format!("<title>{} {version}</title>\n", escape_html(&title)));
    html.push_str(&jsonld_script(&snippet));
    html.push_str("\n</head>\n<body>\n");
    html.push_str(&format!("<h1>{}</h1>\n", escape_html(&title)));
    if let Some(description) = preferred_text(&meta, MetadataField::Description) {
        html.push_str(&format!("<p>{}</p>\n", escape_html(&description)));
    }
    html.push_str("<dl>\n");
    for (label, iri) in rows {
        let iri = escape_html(&iri);
        html.push_str(&format!("<dt>{label}</dt><dd><a href=\"{iri}\">{iri}</a></dd>\n"));
    }
    html.push_str("</dl>\n<h2>Serializations</h2>\n<ul>\n");
    for f in &config.supported_formats {
        let file = escape_html(&config.file_for(*f));
        html.push_str(&format!("<li><a href=\"{file}\">{}</a> ({})</li>\n", f.name(), f.media_type()));
    }
    html.push_str("</ul>\n</body>\n</html>\n");
    Ok(html)
}

fn not_acceptable_page(config: &ScaffoldConfig) -> String {
    let mut html = String::from(
        "<!DOCTYPE html>\n<html lang=\"en\">\n<head>\n<meta charset=\"utf-8\">\n<title>406 Not Acceptable</title>\n</head>\n<body>\n<h1>Not Acceptable</h1>\n",
    );
    html.push_str(&format!(
        "<p>{} is available as HTML and in these formats:</p>\n<ul>\n",
        escape_html(&config.ontology_iri)
    ));
    for f in &config.supported_formats {
        html.push_str(&format!("<li>{}</li>\n", f.media_type()));
    }
    html.push_str("</ul>\n</body>\n</html>\n");
    html
}

/// The release tree: `.htaccess`, `406.html` and one `release/X.Y.Z/`
/// directory per version holding every supported serialization and an
/// HTML page.
pub fn plan_release(config: &ScaffoldConfig, model: &OntologyModel) -> Result<ReleaseLayout, ScaffoldError> {
    config.validate()?;
    if namespace_root(model.ontology_iri()) != config.namespace_root() {
        return Err(ScaffoldError::InvalidConfig(format!(
            "document declares {} but the config names {}",
            model.ontology_iri(),
            config.ontology_iri
        )));
    }
    let mut layout = ReleaseLayout::default();
    let mut push = |path: String, source: ContentSource, content: Vec<u8>| {
        layout.entries.push(LayoutEntry { path, source, content });
    };
    let generated = |id: ArtifactId| ContentSource::Generated(id);
    push(".htaccess".into(), generated(ArtifactId::Htaccess), generate_htaccess(config)?.into_bytes());
    push("406.html".into(), generated(ArtifactId::NotAcceptablePage), not_acceptable_page(config).into_bytes());
    let prefixes = prefixes(model, config);
    let prefix_refs: Vec<(&str, &str)> = prefixes.iter().map(|(p, n)| (p.as_str(), n.as_str())).collect();
    let source_format = config
        .ontology
        .as_ref()
        .and_then(|p| p.extension())
        .and_then(|e| RdfFormat::from_extension(&e.to_string_lossy()));
    for version in &config.all_versions {
        let stamped = stamp_version(model, *version, config.prior_of(version))?;
        let dir = config.release_dir(version);
        push(
            format!("{dir}/{}", config.html_doc_filename),
            generated(ArtifactId::DocPage { version: *version }),
            doc_page(config, &stamped, *version)?.into_bytes(),
        );
        for format in &config.supported_formats {
            let path = format!("{dir}/{}", config.file_for(*format));
            let unchanged = stamped == *model && source_format == Some(*format);
            match (&config.ontology, unchanged) {
                (Some(input), true) => push(path, ContentSource::Copy(input.clone()), Vec::new()),
                _ => push(
                    path,
                    generated(ArtifactId::Serialization { version: *version, format: *format }),
                    serialize_graph(stamped.triples(), *format, &prefix_refs).into_bytes(),
                ),
            }
        }
    }
    let unique: BTreeSet<&str> = layout.paths().into_iter().collect();
    debug_assert_eq!(unique.len(), layout.entries.len());
    Ok(layout)
}
