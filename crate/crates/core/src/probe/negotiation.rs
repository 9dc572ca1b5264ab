use std::collections::HashSet;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use super::transport::{HttpRequest, HttpResponse, TransportError};
use super::Prober;
use crate::check::{guideline, CheckResult, Evidence, Severity, Status};
use crate::rdf::{parse_graph, RdfFormat};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbeRequest {
    pub target_iri: String,
    /// `None` sends no Accept header at all.
    pub accept: Option<String>,
    pub max_redirects: usize,
    #[serde(with = "duration_secs")]
    pub timeout: Duration,
}

mod duration_secs {
    use std::time::Duration;

    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_f64(d.as_secs_f64())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Duration, D::Error> {
        Ok(Duration::from_secs_f64(f64::deserialize(d)?))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "format")]
pub enum BodyParse {
    NotAttempted,
    ParsedAs(RdfFormat),
    ParseFailed,
    HtmlDetected,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hop {
    pub url: String,
    /// 0 when no response was received.
    pub status: u16,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ProbeFailure {
    Timeout(String),
    TooManyRedirects(usize),
    RedirectLoop(String),
    Transport(String),
    MissingLocation,
    /// No network and no recorded exchange.
    Unavailable(String),
}

impl std::fmt::Display for ProbeFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ProbeFailure::Timeout(m) => write!(f, "timeout: {m}"),
            ProbeFailure::TooManyRedirects(n) => write!(f, "more than {n} redirects"),
            ProbeFailure::RedirectLoop(u) => write!(f, "redirect loop at {u}"),
            ProbeFailure::Transport(m) => write!(f, "transport error: {m}"),
            ProbeFailure::MissingLocation => write!(f, "redirect without Location header"),
            ProbeFailure::Unavailable(m) => write!(f, "not available offline: {m}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NegotiationTrace {
    pub request: ProbeRequest,
    pub hops: Vec<Hop>,
    pub final_status: u16,
    pub final_media_type: Option<String>,
    pub body_parse: BodyParse,
    pub failure: Option<ProbeFailure>,
    #[serde(skip)]
    pub body: Vec<u8>,
}

impl NegotiationTrace {
    pub fn final_url(&self) -> Option<&str> {
        self.hops.last().map(|h| h.url.as_str())
    }

    pub fn saw_status(&self, status: u16) -> bool {
        self.hops.iter().any(|h| h.status == status)
    }

    /// Redirect statuses other than 303 seen on the way.
    pub fn other_redirects(&self) -> Vec<u16> {
        self.hops.iter().map(|h| h.status).filter(|s| matches!(s, 301 | 302 | 307 | 308)).collect()
    }

    pub fn body_text(&self) -> String {
        String::from_utf8_lossy(&self.body).into_owned()
    }

    pub fn describe(&self) -> String {
        let chain: Vec<String> = self.hops.iter().map(|h| format!("{} {}", h.status, h.url)).collect();
        chain.join(" -> ")
    }
}

fn looks_like_html(body: &[u8]) -> bool {
    let head = &body[..body.len().min(2048)];
    let text = String::from_utf8_lossy(head).to_ascii_lowercase();
    text.contains("<html") || text.contains("<!doctype html")
}

fn is_html_media_type(mt: &str) -> bool {
    mt == "text/html" || mt == "application/xhtml+xml"
}

/// Classifies a final 2xx body: HTML by media type or sniffing, otherwise an
/// RDF parse attempt in the served format, then the requested one.
pub fn classify_body(response: &HttpResponse, accept: Option<&str>, base: &str) -> BodyParse {
    let media = response.media_type();
    if media.as_deref().is_some_and(is_html_media_type) || looks_like_html(&response.body) {
        return BodyParse::HtmlDetected;
    }
    let mut candidates: Vec<RdfFormat> = Vec::new();
    if let Some(f) = media.as_deref().and_then(RdfFormat::from_media_type) {
        candidates.push(f);
    }
    if let Some(f) = accept.and_then(RdfFormat::from_media_type) {
        candidates.push(f);
    }
    if let Ok(f) = crate::rdf::detect_format(&response.body, None) {
        candidates.push(f);
    }
    if candidates.is_empty() {
        return if response.body.is_empty() { BodyParse::NotAttempted } else { BodyParse::ParseFailed };
    }
    candidates
        .into_iter()
        .find(|f| parse_graph(&response.body, *f, Some(base)).is_ok_and(|g| !g.is_empty()))
        .map_or(BodyParse::ParseFailed, BodyParse::ParsedAs)
}

fn strip_fragment(iri: &str) -> &str {
    iri.split('#').next().unwrap_or(iri)
}

/// Follows redirects by hand, recording every hop.
pub fn probe(prober: &Prober, request: &ProbeRequest) -> NegotiationTrace {
    let mut trace = NegotiationTrace {
        request: request.clone(),
        hops: Vec::new(),
        final_status: 0,
        final_media_type: None,
        body_parse: BodyParse::NotAttempted,
        failure: None,
        body: Vec::new(),
    };
    let mut url = strip_fragment(&request.target_iri).to_string();
    let mut seen: HashSet<(String, Option<String>)> = HashSet::new();
    loop {
        if !seen.insert((url.clone(), request.accept.clone())) {
            trace.failure = Some(ProbeFailure::RedirectLoop(url));
            return trace;
        }
        let mut http = HttpRequest::get(&url).with_accept(request.accept.as_deref());
        http.timeout = Some(request.timeout);
        let response = match prober.fetch(&http) {
            Ok(r) => r,
            Err(e) => {
                trace.hops.push(Hop { url, status: 0 });
                trace.failure = Some(match e {
                    TransportError::Timeout(m) => ProbeFailure::Timeout(m),
                    TransportError::NotRecorded(m) => ProbeFailure::Unavailable(m),
                    TransportError::Offline => ProbeFailure::Unavailable("offline".into()),
                    TransportError::Connection(m) => ProbeFailure::Transport(m),
                });
                return trace;
            }
        };
        trace.hops.push(Hop { url: url.clone(), status: response.status });
        trace.final_status = response.status;
        trace.final_media_type = response.media_type();
        if response.is_redirect() {
            let Some(location) = response.header("location") else {
                trace.failure = Some(ProbeFailure::MissingLocation);
                return trace;
            };
            if trace.hops.len() > request.max_redirects {
                trace.failure = Some(ProbeFailure::TooManyRedirects(request.max_redirects));
                return trace;
            }
            url = match url::Url::parse(&url).and_then(|base| base.join(location)) {
                Ok(next) => strip_fragment(next.as_str()).to_string(),
                Err(e) => {
                    trace.failure = Some(ProbeFailure::Transport(format!("bad Location {location:?}: {e}")));
                    return trace;
                }
            };
            continue;
        }
        if (200..300).contains(&response.status) {
            trace.body_parse = classify_body(&response, request.accept.as_deref(), &url);
            trace.body = response.body;
        }
        return trace;
    }
}

/// What a negotiation cell asks for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum CellTarget {
    Html,
    Format(RdfFormat),
    NoHeader,
}

impl CellTarget {
    pub fn accept(self) -> Option<&'static str> {
        match self {
            CellTarget::Html => Some("text/html"),
            CellTarget::Format(f) => Some(f.media_type()),
            CellTarget::NoHeader => None,
        }
    }

    pub fn slug(self) -> &'static str {
        match self {
            CellTarget::Html => "html",
            CellTarget::Format(RdfFormat::Turtle) => "turtle",
            CellTarget::Format(RdfFormat::RdfXml) => "rdfxml",
            CellTarget::Format(RdfFormat::NTriples) => "ntriples",
            CellTarget::Format(RdfFormat::JsonLd) => "jsonld",
            CellTarget::NoHeader => "none",
        }
    }

    fn expected_parse(self) -> BodyParse {
        match self {
            CellTarget::Html => BodyParse::HtmlDetected,
            CellTarget::Format(f) => BodyParse::ParsedAs(f),
            CellTarget::NoHeader => BodyParse::ParsedAs(RdfFormat::Turtle),
        }
    }

    fn media_matches(self, media: Option<&str>) -> bool {
        match (self, media) {
            (CellTarget::Html, Some(m)) => is_html_media_type(m),
            (CellTarget::Format(f), Some(m)) => RdfFormat::from_media_type(m) == Some(f),
            (CellTarget::NoHeader, Some(m)) => RdfFormat::from_media_type(m) == Some(RdfFormat::Turtle),
            (_, None) => false,
        }
    }
}

/// One probe in the matrix, keyed for deterministic ordering.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Cell {
    pub check_id: String,
    pub iri: String,
    pub target: CellTarget,
}

fn version_label(iri: &str) -> String {
    let root = iri.trim_end_matches(['#', '/']);
    root.rsplit('/').next().filter(|s| !s.is_empty()).unwrap_or(root).to_string()
}

/// The cells probed for an ontology and its version IRIs.
pub fn matrix_cells(ontology_iri: &str, version_iris: &[String]) -> Vec<Cell> {
    let mut cells: Vec<Cell> = [
        CellTarget::Html,
        CellTarget::Format(RdfFormat::Turtle),
        CellTarget::Format(RdfFormat::RdfXml),
        CellTarget::NoHeader,
    ]
    .into_iter()
    .map(|target| Cell { check_id: format!("neg.ontology.{}", target.slug()), iri: ontology_iri.to_string(), target })
    .collect();
    let mut seen = HashSet::new();
    for v in version_iris {
        if !seen.insert(v.as_str()) || strip_fragment(v) == strip_fragment(ontology_iri) {
            continue;
        }
        for target in [CellTarget::Html, CellTarget::Format(RdfFormat::Turtle)] {
            cells.push(Cell {
                check_id: format!("neg.version.{}.{}", version_label(v), target.slug()),
                iri: v.clone(),
                target,
            });
        }
    }
    cells.sort();
    cells.dedup_by(|a, b| a.check_id == b.check_id);
    cells
}

/// Grades one probed cell.
pub fn grade_cell(cell: &Cell, trace: &NegotiationTrace, no_303_status: Status) -> CheckResult {
    let accept = cell.target.accept().unwrap_or("(none)");
    let chain = trace.describe();
    let make = |status: Status, message: String| {
        CheckResult::new(
            cell.check_id.clone(),
            status,
            Severity::Recommended,
            Evidence::new(message).with_values(trace.hops.iter().map(|h| format!("{} {}", h.status, h.url))),
            guideline::CONTENT_NEGOTIATION,
        )
    };
    if let Some(failure) = &trace.failure {
        let status = match failure {
            ProbeFailure::Unavailable(_) => Status::Skipped,
            _ => Status::Fail,
        };
        return make(status, format!("Accept {accept}: {failure}"));
    }
    let code = trace.final_status;
    if code == 406 {
        let unadvertised = matches!(cell.target, CellTarget::Format(f) if f != RdfFormat::Turtle);
        return if unadvertised {
            make(Status::Info, format!("Accept {accept}: 406 Not Acceptable; format not offered"))
        } else {
            make(Status::Fail, format!("Accept {accept}: 406 for a format that must be served ({chain})"))
        };
    }
    if !(200..300).contains(&code) {
        return make(Status::Fail, format!("Accept {accept}: final status {code} ({chain})"));
    }
    let expected = cell.target.expected_parse();
    if trace.body_parse != expected {
        return make(
            Status::Fail,
            format!(
                "Accept {accept}: expected {expected:?}, got {:?} as {} ({chain})",
                trace.body_parse,
                trace.final_media_type.as_deref().unwrap_or("no media type")
            ),
        );
    }
    let has_303 = trace.saw_status(303);
    let media_ok = cell.target.media_matches(trace.final_media_type.as_deref());
    let others = trace.other_redirects();
    if !has_303 {
        let how = if others.is_empty() {
            "answered directly without a 303 redirect".to_string()
        } else {
            format!("redirected with {others:?} instead of 303")
        };
        return make(no_303_status, format!("Accept {accept}: {how} ({chain})"));
    }
    if !media_ok {
        return make(
            Status::Warn,
            format!(
                "Accept {accept}: content parses but is served as {}",
                trace.final_media_type.as_deref().unwrap_or("no media type")
            ),
        );
    }
    make(Status::Pass, format!("Accept {accept}: 303 then {code} ({chain})"))
}

/// Probes every cell, at most `prober.config.concurrency` in flight, and
/// returns graded results together with the traces, both ordered by cell.
pub fn run_matrix(prober: &Prober, cells: &[Cell]) -> Vec<(Cell, NegotiationTrace, CheckResult)> {
    if prober.is_offline() {
        return cells
            .iter()
            .map(|cell| {
                let trace = offline_trace(prober, cell);
                let result = CheckResult::new(
                    cell.check_id.clone(),
                    Status::Skipped,
                    Severity::Recommended,
                    Evidence::new("offline: content negotiation not probed"),
                    guideline::CONTENT_NEGOTIATION,
                );
                (cell.clone(), trace, result)
            })
            .collect();
    }
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<NegotiationTrace>>> = Mutex::new(vec![None; cells.len()]);
    let workers = prober.config.concurrency.clamp(1, cells.len().max(1));
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::SeqCst);
                let Some(cell) = cells.get(i) else { break };
                let trace = probe(prober, &prober.request(&cell.iri, cell.target.accept()));
                if let Ok(mut slots) = slots.lock() {
                    slots[i] = Some(trace);
                }
            });
        }
    });
    let traces = slots.into_inner().unwrap_or_default();
    let mut out: Vec<(Cell, NegotiationTrace, CheckResult)> = cells
        .iter()
        .zip(traces)
        .map(|(cell, trace)| {
            let trace = trace.unwrap_or_else(|| offline_trace(prober, cell));
            let result = grade_cell(cell, &trace, prober.config.no_303_status);
            (cell.clone(), trace, result)
        })
        .collect();
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

fn offline_trace(prober: &Prober, cell: &Cell) -> NegotiationTrace {
    NegotiationTrace {
        request: prober.request(&cell.iri, cell.target.accept()),
        hops: vec![Hop { url: strip_fragment(&cell.iri).to_string(), status: 0 }],
        final_status: 0,
        final_media_type: None,
        body_parse: BodyParse::NotAttempted,
        failure: Some(ProbeFailure::Unavailable("offline".into())),
        body: Vec::new(),
    }
}

/// Content-negotiation checks for the ontology IRI and each version IRI.
pub fn check_negotiation_matrix(prober: &Prober, ontology_iri: &str, version_iris: &[String]) -> Vec<CheckResult> {
    run_matrix(prober, &matrix_cells(ontology_iri, version_iris)).into_iter().map(|(_, _, r)| r).collect()
}
