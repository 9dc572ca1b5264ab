//! Publication artifacts: redirect rules, JSON-LD annotations and the
//! versioned release tree.

mod config;
mod htaccess;
mod release;
mod snippet;

pub use config::{ScaffoldConfig, DEFAULT_HTML_DOC, DEFAULT_SERIALIZATION};
pub use htaccess::{generate_htaccess, redirect_table, render_apache, PathScope, RedirectRule, Representation};
pub use release::{plan_release, stamp_version, ArtifactId, ContentSource, LayoutEntry, ReleaseLayout};
pub use snippet::{generate_jsonld_snippet, jsonld_script};

use crate::probe::FixtureWeb;
use crate::rdf::RdfError;

#[derive(Debug, thiserror::Error)]
pub enum ScaffoldError {
    #[error("invalid scaffold configuration: {0}")]
    InvalidConfig(String),
    #[error("metadata has no title")]
    MissingTitle,
    #[error("ontology IRI {0} already contains a version number")]
    VersionInNamespace(String),
    #[error(transparent)]
    Rdf(#[from] RdfError),
}

/// Serves a planned release on `web`: the rules at the ontology's
/// namespace root and the files below the documentation base.
pub fn serve_release(web: &mut FixtureWeb, config: &ScaffoldConfig, layout: &ReleaseLayout) -> std::io::Result<()> {
    for (path, bytes) in layout.contents()? {
        if path == ".htaccess" {
            web.mount_htaccess(config.namespace_root(), &String::from_utf8_lossy(&bytes))
                .map_err(std::io::Error::other)?;
        } else {
            web.add_file(&format!("{}/{path}", config.doc_base_url), bytes);
        }
    }
    Ok(())
}
