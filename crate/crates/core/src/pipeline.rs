//! The full `check` run: load an ontology, audit it, probe its IRIs.

use std::path::PathBuf;

use crate::audit::{audit_model, AuditOptions, MetadataField};
use crate::check::{guideline, CheckResult, Evidence, Severity, Status};
use crate::probe::registry::{lov_check, prefix_registry_check};
use crate::probe::{
    detect_jsonld_annotations, lookup_lov, lookup_prefix, matrix_cells, run_matrix, CellTarget, ProbeFailure, Prober,
};
use crate::rdf::{detect_format, parse_ontology_with_base, OntologyModel, RdfError, RdfFormat};

/// Where the ontology comes from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Source {
    Path(PathBuf),
    Iri(String),
}

impl Source {
    /// `http(s)://` arguments are IRIs, everything else a file path.
    pub fn from_arg(arg: &str) -> Source {
        let lower = arg.to_ascii_lowercase();
        if lower.starts_with("http://") || lower.starts_with("https://") {
            Source::Iri(arg.to_string())
        } else {
            Source::Path(PathBuf::from(arg))
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum PipelineError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("cannot retrieve {iri}: {message}")]
    Fetch { iri: String, message: String },
    #[error("{location}: {source}")]
    Rdf {
        location: String,
        #[source]
        source: RdfError,
    },
}

#[derive(Clone, Debug)]
pub struct LoadedOntology {
    pub model: OntologyModel,
    pub format: RdfFormat,
    /// File path or final URL.
    pub location: String,
}

fn parse(
    bytes: &[u8],
    hint: Option<&str>,
    base: Option<&str>,
    location: &str,
) -> Result<LoadedOntology, PipelineError> {
    let rdf = |source| PipelineError::Rdf { location: location.to_string(), source };
    let format = detect_format(bytes, hint).map_err(rdf)?;
    let model = parse_ontology_with_base(bytes, format, base).map_err(rdf)?;
    Ok(LoadedOntology { model, format, location: location.to_string() })
}

/// Reads a file, or dereferences an IRI asking for RDF.
pub fn load_ontology(source: &Source, prober: &Prober) -> Result<LoadedOntology, PipelineError> {
    match source {
        Source::Path(path) => {
            let location = path.display().to_string();
            let bytes = std::fs::read(path).map_err(|source| PipelineError::Io { path: location.clone(), source })?;
            parse(&bytes, Some(&location), None, &location)
        }
        Source::Iri(iri) => {
            let trace = prober.fetch_document(iri);
            let fail = |message: String| PipelineError::Fetch { iri: iri.clone(), message };
            if let Some(failure) = &trace.failure {
                return Err(fail(failure.to_string()));
            }
            if !(200..300).contains(&trace.final_status) {
                return Err(fail(format!("HTTP {} ({})", trace.final_status, trace.describe())));
            }
            let url = trace.final_url().unwrap_or(iri).to_string();
            let hint = trace
                .final_media_type
                .clone()
                .filter(|m| RdfFormat::from_media_type(m).is_some())
                .unwrap_or_else(|| url.clone());
            parse(&trace.body, Some(&hint), Some(&url), &url)
        }
    }
}

/// Findings of one run, unscored.
#[derive(Clone, Debug)]
pub struct CheckRun {
    pub subject: String,
    pub results: Vec<CheckResult>,
    pub loaded: LoadedOntology,
}

fn serialization_check(loaded: &LoadedOntology) -> CheckResult {
    CheckResult::new(
        "interop.standard-serialization",
        Status::Pass,
        Severity::Recommended,
        Evidence::new(format!("parsed as {}", loaded.format.name())).with_values([loaded.format.media_type()]),
        guideline::SERIALIZATION,
    )
}

fn formats_check(served: &[&str], probed: usize) -> CheckResult {
    let status = if probed == 0 {
        Status::Skipped
    } else if served.len() >= 2 {
        Status::Pass
    } else {
        Status::Info
    };
    let message = match status {
        Status::Skipped => "offline: served formats not probed".to_string(),
        _ => format!("{} RDF serialization(s) served through content negotiation", served.len()),
    };
    CheckResult::new(
        "interop.formats",
        status,
        Severity::Optional,
        Evidence::new(message).with_values(served.iter().copied()),
        guideline::SERIALIZATION,
    )
}

fn jsonld_skipped(message: &str) -> CheckResult {
    CheckResult::new(
        "find.jsonld-annotations",
        Status::Skipped,
        Severity::Optional,
        Evidence::new(message),
        guideline::IN_DOCUMENT_ANNOTATIONS,
    )
}

/// Static audit plus content negotiation, registry and annotation probes.
pub fn run_checks(source: &Source, prober: &Prober, options: &AuditOptions) -> Result<CheckRun, PipelineError> {
    let loaded = load_ontology(source, prober)?;
    let model = &loaded.model;
    let subject = model.ontology_iri().to_string();
    let mut results = audit_model(model, options);
    results.push(serialization_check(&loaded));

    let meta = crate::audit::extract_metadata_with(model, &options.aliases);
    let mut versions: Vec<String> = [MetadataField::VersionIri, MetadataField::PriorVersion]
        .into_iter()
        .flat_map(|f| meta.get(f).iter().filter_map(|v| v.value.as_iri().map(str::to_string)))
        .collect();
    versions.sort();
    versions.dedup();
    let matrix = run_matrix(prober, &matrix_cells(&subject, &versions));

    let mut served = Vec::new();
    let mut probed = 0;
    let mut jsonld = None;
    for (cell, trace, result) in &matrix {
        if cell.iri != subject {
            continue;
        }
        match cell.target {
            CellTarget::Format(f) => {
                if result.status != Status::Skipped {
                    probed += 1;
                }
                if matches!(result.status, Status::Pass | Status::Warn) {
                    served.push(f.name());
                }
            }
            CellTarget::Html => {
                jsonld = Some(match &trace.failure {
                    Some(ProbeFailure::Unavailable(m)) => {
                        jsonld_skipped(&format!("HTML documentation not retrieved: {m}"))
                    }
                    _ => detect_jsonld_annotations(&trace.body_text()),
                });
            }
            CellTarget::NoHeader => {}
        }
    }
    results.extend(matrix.into_iter().map(|(_, _, r)| r));
    results.push(formats_check(&served, probed));
    results.push(jsonld.unwrap_or_else(|| jsonld_skipped("no HTML probe")));

    let namespace = meta.first_text(MetadataField::NamespaceUri).unwrap_or_else(|| subject.clone());
    results.push(match meta.first_text(MetadataField::Prefix) {
        Some(prefix) => prefix_registry_check(&lookup_prefix(prober, &prefix), &namespace),
        None => CheckResult::new(
            "find.prefix-registry",
            Status::Info,
            Severity::Optional,
            Evidence::new("no preferred prefix declared"),
            guideline::PREFIX_REGISTRATION,
        ),
    });
    results.push(lov_check(&lookup_lov(prober, &namespace)));
    Ok(CheckRun { subject, results, loaded })
}
