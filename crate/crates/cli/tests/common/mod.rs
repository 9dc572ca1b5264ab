#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::sync::Arc;

use fairvoc_core::audit::AuditOptions;
use fairvoc_core::pipeline::{run_checks, CheckRun, Source};
use fairvoc_core::probe::registry::{
    lov_lookup_url, prefix_lookup_url, DEFAULT_LOV_ENDPOINT, DEFAULT_PREFIXCC_ENDPOINT,
};
use fairvoc_core::probe::{CassetteTransport, FixtureWeb, ProbeConfig, Prober};

pub const EXAMPLE_IRI: &str = "https://w3id.org/example";
pub const EXAMPLE_NAMESPACE: &str = "https://w3id.org/example#";
pub const DOC_BASE: &str = "https://vocab.github.io/example";

pub fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

pub fn fixture(rel: &str) -> PathBuf {
    fixtures().join(rel)
}

pub fn example_ontology() -> PathBuf {
    fixture("example/site/release/1.0.1/ontology.ttl")
}

pub fn example_cassette() -> PathBuf {
    fixture("example/cassette")
}

/// The example site: rules at the w3id IRI, release files on the doc host,
/// and registry answers for the `exo` prefix.
pub fn example_web() -> FixtureWeb {
    let mut web = FixtureWeb::new();
    web.add_tree(DOC_BASE, &fixture("example/site"), Some(EXAMPLE_IRI)).expect("example site");
    let registry = fixture("example/registry");
    web.add_file_with_type(
        &prefix_lookup_url(DEFAULT_PREFIXCC_ENDPOINT, "exo"),
        std::fs::read(registry.join("prefixcc-exo.txt")).unwrap(),
        "text/plain; charset=utf-8",
    );
    web.add_file_with_type(
        &lov_lookup_url(DEFAULT_LOV_ENDPOINT, EXAMPLE_NAMESPACE),
        std::fs::read(registry.join("lov-search.json")).unwrap(),
        "application/json",
    );
    web
}

/// Runs a full check of the example IRI against the fixture web, recording
/// every exchange into `dir`.
pub fn record_example(dir: &Path) -> CheckRun {
    let cassette = CassetteTransport::recording(dir, Arc::new(example_web())).unwrap();
    let prober = Prober::new(Arc::new(cassette), ProbeConfig::default());
    run_checks(&Source::Iri(EXAMPLE_IRI.into()), &prober, &AuditOptions::default()).unwrap()
}

pub fn cli(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("fairvoc").chain(args.iter().copied());
    let code = fairvoc_cli::run_with(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}
