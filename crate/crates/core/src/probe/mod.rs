//! Web checks: content negotiation, registry lookups and in-page
//! annotations, over a pluggable transport.

pub mod cassette;
pub mod fixture;
pub mod jsonld;
pub mod negotiation;
pub mod registry;
pub mod transport;

use std::sync::Arc;
use std::time::Duration;

pub use cassette::{CassetteEntry, CassetteError, CassetteTransport};
pub use fixture::{FixtureWeb, Htaccess, HtaccessError};
pub use jsonld::detect_jsonld_annotations;
pub use negotiation::{
    check_negotiation_matrix, grade_cell, matrix_cells, probe, run_matrix, BodyParse, Cell, CellTarget, Hop,
    NegotiationTrace, ProbeFailure, ProbeRequest,
};
pub use registry::{lookup_lov, lookup_prefix, Registry, RegistryFinding, RegistryOutcome};
pub use transport::{HttpRequest, HttpResponse, HttpTransport, Transport, TransportError};

use crate::check::Status;

pub const DEFAULT_USER_AGENT: &str = concat!("fairvoc/", env!("CARGO_PKG_VERSION"));

#[derive(Clone, Debug, PartialEq)]
pub struct ProbeConfig {
    pub max_redirects: usize,
    pub timeout: Duration,
    pub retries: u32,
    /// First retry delay; doubled on each further attempt.
    pub backoff: Duration,
    pub concurrency: usize,
    pub prefix_endpoint: String,
    pub lov_endpoint: String,
    /// Status for content reached without a 303 redirect.
    pub no_303_status: Status,
    /// Frozen timestamp for registry findings.
    pub fixed_clock: Option<String>,
}

impl Default for ProbeConfig {
    fn default() -> Self {
        ProbeConfig {
            max_redirects: 10,
            timeout: Duration::from_secs(30),
            retries: 2,
            backoff: Duration::from_millis(250),
            concurrency: 4,
            prefix_endpoint: registry::DEFAULT_PREFIXCC_ENDPOINT.to_string(),
            lov_endpoint: registry::DEFAULT_LOV_ENDPOINT.to_string(),
            no_303_status: Status::Warn,
            fixed_clock: None,
        }
    }
}

/// Issues requests through a transport, or nothing at all when offline.
pub struct Prober {
    transport: Option<Arc<dyn Transport>>,
    online: bool,
    pub config: ProbeConfig,
}

impl Prober {
    pub fn new(transport: Arc<dyn Transport>, config: ProbeConfig) -> Self {
        Prober { transport: Some(transport), online: true, config }
    }

    /// A prober that never touches the network.
    pub fn offline(config: ProbeConfig) -> Self {
        Prober { transport: None, online: false, config }
    }

    /// Keeps the transport but refuses to use it.
    pub fn into_offline(mut self) -> Self {
        self.online = false;
        self
    }

    pub fn is_offline(&self) -> bool {
        !self.online || self.transport.is_none()
    }

    pub fn request(&self, iri: &str, accept: Option<&str>) -> ProbeRequest {
        ProbeRequest {
            target_iri: iri.to_string(),
            accept: accept.map(str::to_string),
            max_redirects: self.config.max_redirects.max(1),
            timeout: self.config.timeout,
        }
    }

    pub fn now(&self) -> String {
        self.config
            .fixed_clock
            .clone()
            .unwrap_or_else(|| chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true))
    }

    /// One exchange, retried with exponential backoff on transient errors.
    pub fn fetch(&self, request: &HttpRequest) -> Result<HttpResponse, TransportError> {
        let transport = match &self.transport {
            Some(t) if self.online => t,
            _ => return Err(TransportError::Offline),
        };
        let mut request = request.clone();
        if !request.headers.iter().any(|(k, _)| k.eq_ignore_ascii_case("user-agent")) {
            request.headers.push(("User-Agent".into(), DEFAULT_USER_AGENT.into()));
        }
        let mut delay = self.config.backoff;
        let mut attempt = 0;
        loop {
            match transport.execute(&request) {
                Err(e) if e.is_transient() && attempt < self.config.retries => {
                    attempt += 1;
                    if !delay.is_zero() {
                        std::thread::sleep(delay);
                    }
                    delay *= 2;
                }
                other => return other,
            }
        }
    }

    /// Dereferences `iri` asking for any RDF serialization, following
    /// redirects. Returns the trace of the exchange.
    pub fn fetch_document(&self, iri: &str) -> NegotiationTrace {
        probe(self, &self.request(iri, Some(DOCUMENT_ACCEPT)))
    }
}

/// Accept header used to download an ontology.
pub const DOCUMENT_ACCEPT: &str =
    "text/turtle, application/rdf+xml;q=0.9, application/n-triples;q=0.8, application/ld+json;q=0.7";

#[cfg(test)]
mod tests;
