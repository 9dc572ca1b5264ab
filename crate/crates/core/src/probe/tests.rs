use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use super::*;
use crate::check::Status;
use crate::rdf::RdfFormat;

const TTL: &str = "@prefix owl: <http://www.w3.org/2002/07/owl#> .\n<https://w3id.org/example> a owl:Ontology .\n";
const HTML: &str = "<!DOCTYPE html><html><head><title>Example</title></head><body></body></html>";

/// Rules mirroring the published example: HTML and Turtle only.
const RULES: &str = r"Options -MultiViews
AddType text/turtle .ttl
RewriteEngine on
RewriteCond %{HTTP_ACCEPT} !application/rdf\+xml.*(text/html|application/xhtml\+xml)
RewriteCond %{HTTP_ACCEPT} text/html [OR]
RewriteCond %{HTTP_ACCEPT} application/xhtml\+xml [OR]
RewriteCond %{HTTP_USER_AGENT} ^Mozilla/.*
RewriteRule ^$ https://docs.test/example/release/1.0.1/index-en.html [R=303,L]
RewriteCond %{HTTP_ACCEPT} text/turtle [OR]
RewriteCond %{HTTP_ACCEPT} text/\* [OR]
RewriteCond %{HTTP_ACCEPT} \*/turtle
RewriteRule ^$ https://docs.test/example/release/1.0.1/ontology.ttl [R=303,L]
RewriteCond %{HTTP_ACCEPT} !application/rdf\+xml.*(text/html|application/xhtml\+xml)
RewriteCond %{HTTP_ACCEPT} text/html [OR]
RewriteCond %{HTTP_ACCEPT} application/xhtml\+xml [OR]
RewriteCond %{HTTP_USER_AGENT} ^Mozilla/.*
RewriteRule ^(1\.0\.0|1\.0\.1)/?$ https://docs.test/example/release/$1/index-en.html [R=303,L]
RewriteCond %{HTTP_ACCEPT} text/turtle [OR]
RewriteCond %{HTTP_ACCEPT} text/\* [OR]
RewriteCond %{HTTP_ACCEPT} \*/turtle
RewriteRule ^(1\.0\.0|1\.0\.1)/?$ https://docs.test/example/release/$1/ontology.ttl [R=303,L]
RewriteCond %{HTTP_ACCEPT} .+
RewriteCond %{HTTP_ACCEPT} !\*/\*
RewriteRule ^((1\.0\.0|1\.0\.1)/?)?$ https://docs.test/example/406.html [R=406,L]
RewriteRule ^(1\.0\.0|1\.0\.1)/?$ https://docs.test/example/release/$1/ontology.ttl [R=303,L]
RewriteRule ^$ https://docs.test/example/release/1.0.1/ontology.ttl [R=303,L]
";

fn web() -> FixtureWeb {
    let mut web = FixtureWeb::new();
    web.mount_htaccess("https://w3id.org/example", RULES).unwrap();
    for v in ["1.0.0", "1.0.1"] {
        web.add_file(&format!("https://docs.test/example/release/{v}/ontology.ttl"), TTL);
        web.add_file(&format!("https://docs.test/example/release/{v}/index-en.html"), HTML);
    }
    web
}

fn quick() -> ProbeConfig {
    ProbeConfig { backoff: std::time::Duration::ZERO, ..ProbeConfig::default() }
}

fn prober(t: impl Transport + 'static) -> Prober {
    Prober::new(Arc::new(t), quick())
}

fn versions() -> Vec<String> {
    vec!["https://w3id.org/example/1.0.1".to_string(), "https://w3id.org/example/1.0.0".to_string()]
}

#[test]
fn turtle_is_reached_through_303() {
    let p = prober(web());
    let t = probe(&p, &p.request("https://w3id.org/example#", Some("text/turtle")));
    assert_eq!(
        t.hops,
        vec![
            Hop { url: "https://w3id.org/example".into(), status: 303 },
            Hop { url: "https://docs.test/example/release/1.0.1/ontology.ttl".into(), status: 200 },
        ]
    );
    assert_eq!(t.body_parse, BodyParse::ParsedAs(RdfFormat::Turtle));
    assert_eq!(t.final_media_type.as_deref(), Some("text/turtle"));
}

#[test]
fn jsonld_is_not_acceptable_and_default_is_turtle() {
    let p = prober(web());
    let t = probe(&p, &p.request("https://w3id.org/example", Some("application/ld+json")));
    assert_eq!(t.final_status, 406);
    let t = probe(&p, &p.request("https://w3id.org/example", None));
    assert_eq!(t.body_parse, BodyParse::ParsedAs(RdfFormat::Turtle));
    assert!(t.saw_status(303));
}

#[test]
fn version_html_redirect() {
    let p = prober(web());
    let t = probe(&p, &p.request("https://w3id.org/example/1.0.0", Some("text/html")));
    assert_eq!(t.hops[0].status, 303);
    assert_eq!(t.hops[1].url, "https://docs.test/example/release/1.0.0/index-en.html");
    assert_eq!(t.body_parse, BodyParse::HtmlDetected);
}

#[test]
fn matrix_on_conformant_server() {
    let results = check_negotiation_matrix(&prober(web()), "https://w3id.org/example", &versions());
    let ids: Vec<&str> = results.iter().map(|r| r.check_id.as_str()).collect();
    assert_eq!(
        ids,
        vec![
            "neg.ontology.html",
            "neg.ontology.none",
            "neg.ontology.rdfxml",
            "neg.ontology.turtle",
            "neg.version.1.0.0.html",
            "neg.version.1.0.0.turtle",
            "neg.version.1.0.1.html",
            "neg.version.1.0.1.turtle",
        ]
    );
    for r in &results {
        let expected = if r.check_id == "neg.ontology.rdfxml" { Status::Info } else { Status::Pass };
        assert_eq!(r.status, expected, "{}: {}", r.check_id, r.evidence.message);
    }
}

#[test]
fn cells_are_ordered_and_deduplicated() {
    let cells = matrix_cells(
        "https://w3id.org/example",
        &["https://w3id.org/example/1.0.0".into(), "https://w3id.org/example/1.0.0".into()],
    );
    assert_eq!(cells.len(), 6);
    assert!(cells.windows(2).all(|w| w[0] < w[1]));
}

/// Answers every request from a closure.
struct Scripted<F>(F);

impl<F: Fn(&HttpRequest) -> Result<HttpResponse, TransportError> + Send + Sync> Transport for Scripted<F> {
    fn execute(&self, request: &HttpRequest) -> Result<HttpResponse, TransportError> {
        (self.0)(request)
    }
}

fn ttl_response() -> HttpResponse {
    HttpResponse::new(200).with_header("Content-Type", "text/turtle").with_body(TTL)
}

fn grade(t: impl Transport + 'static, target: CellTarget) -> crate::check::CheckResult {
    let p = prober(t);
    let cell = Cell { check_id: "neg.ontology.x".into(), iri: "https://host.test/onto".into(), target };
    let trace = probe(&p, &p.request(&cell.iri, target.accept()));
    grade_cell(&cell, &trace, Status::Warn)
}

#[test]
fn direct_200_is_a_warning() {
    let r = grade(Scripted(|_: &HttpRequest| Ok(ttl_response())), CellTarget::Format(RdfFormat::Turtle));
    assert_eq!(r.status, Status::Warn);
    assert!(r.evidence.message.contains("without a 303"));
}

#[test]
fn other_redirect_codes_are_warnings() {
    let t = Scripted(|r: &HttpRequest| {
        Ok(if r.url.ends_with("/onto") {
            HttpResponse::new(301).with_header("Location", "/onto.ttl")
        } else {
            ttl_response()
        })
    });
    let r = grade(t, CellTarget::Format(RdfFormat::Turtle));
    assert_eq!(r.status, Status::Warn);
    assert!(r.evidence.message.contains("[301]"));
}

#[test]
fn pass_needs_both_303_and_matching_content() {
    let redirecting_to = |body: &'static str, ct: &'static str| {
        Scripted(move |r: &HttpRequest| {
            Ok(if r.url.ends_with("/onto") {
                HttpResponse::new(303).with_header("Location", "https://host.test/doc")
            } else {
                HttpResponse::new(200).with_header("Content-Type", ct).with_body(body)
            })
        })
    };
    assert_eq!(grade(redirecting_to(TTL, "text/turtle"), CellTarget::Format(RdfFormat::Turtle)).status, Status::Pass);
    assert_eq!(grade(redirecting_to(HTML, "text/html"), CellTarget::Format(RdfFormat::Turtle)).status, Status::Fail);
    assert_eq!(
        grade(redirecting_to("@prefix broken", "text/turtle"), CellTarget::Format(RdfFormat::Turtle)).status,
        Status::Fail
    );
    assert_eq!(grade(redirecting_to(TTL, "text/plain"), CellTarget::Format(RdfFormat::Turtle)).status, Status::Warn);
    assert_eq!(grade(redirecting_to(HTML, "text/plain"), CellTarget::Html).status, Status::Warn);
}

#[test]
fn server_errors_fail() {
    let r = grade(Scripted(|_: &HttpRequest| Ok(HttpResponse::new(500))), CellTarget::Html);
    assert_eq!(r.status, Status::Fail);
    let r = grade(Scripted(|_: &HttpRequest| Ok(HttpResponse::new(406))), CellTarget::Format(RdfFormat::Turtle));
    assert_eq!(r.status, Status::Fail);
    let r = grade(Scripted(|_: &HttpRequest| Ok(HttpResponse::new(406))), CellTarget::Format(RdfFormat::RdfXml));
    assert_eq!(r.status, Status::Info);
}

#[test]
fn redirect_loops_terminate() {
    let p = prober(Scripted(|r: &HttpRequest| {
        let to = if r.url.ends_with("/a") { "/b" } else { "/a" };
        Ok(HttpResponse::new(303).with_header("Location", to))
    }));
    let t = probe(&p, &p.request("https://host.test/a", Some("text/turtle")));
    assert!(matches!(t.failure, Some(ProbeFailure::RedirectLoop(_))));
    assert_eq!(t.hops.len(), 2);
}

#[test]
fn redirect_chains_are_bounded() {
    let p = prober(Scripted(|r: &HttpRequest| {
        let n: usize = r.url.rsplit('/').next().unwrap().parse().unwrap();
        Ok(HttpResponse::new(302).with_header("Location", &format!("/{}", n + 1)))
    }));
    let t = probe(&p, &p.request("https://host.test/0", None));
    assert_eq!(t.failure, Some(ProbeFailure::TooManyRedirects(10)));
    assert!(t.hops.len() <= 11);
}

#[test]
fn transient_errors_are_retried() {
    let calls = Arc::new(AtomicUsize::new(0));
    let c = calls.clone();
    let p = prober(Scripted(move |_: &HttpRequest| {
        if c.fetch_add(1, Ordering::SeqCst) < 2 {
            Err(TransportError::Connection("reset".into()))
        } else {
            Ok(ttl_response())
        }
    }));
    let t = probe(&p, &p.request("https://host.test/onto", Some("text/turtle")));
    assert_eq!(t.final_status, 200);
    assert_eq!(calls.load(Ordering::SeqCst), 3);

    let calls = Arc::new(AtomicUsize::new(0));
    let c = calls.clone();
    let p = prober(Scripted(move |_: &HttpRequest| {
        c.fetch_add(1, Ordering::SeqCst);
        Err(TransportError::Timeout("slow".into()))
    }));
    let t = probe(&p, &p.request("https://host.test/onto", Some("text/turtle")));
    assert!(matches!(t.failure, Some(ProbeFailure::Timeout(_))));
    assert_eq!(calls.load(Ordering::SeqCst), 3);
}

struct Forbidden;

impl Transport for Forbidden {
    fn execute(&self, request: &HttpRequest) -> Result<HttpResponse, TransportError> {
        panic!("network used while offline: {}", request.url)
    }
}

#[test]
fn offline_mode_opens_no_connection() {
    let p = Prober::new(Arc::new(Forbidden), quick()).into_offline();
    let results = check_negotiation_matrix(&p, "https://w3id.org/example", &versions());
    assert!(results.iter().all(|r| r.status == Status::Skipped));
    assert_eq!(lookup_prefix(&p, "exo").outcome, RegistryOutcome::Unreachable("network access disabled".into()));
    assert!(matches!(lookup_lov(&p, "https://w3id.org/example#").outcome, RegistryOutcome::Unreachable(_)));
    assert!(p.fetch_document("https://w3id.org/example").failure.is_some());
    assert!(Prober::offline(quick()).is_offline());
}

#[test]
fn replay_only_cassette_skips_unrecorded_cells() {
    let dir = tempfile::tempdir().unwrap();
    let p = Prober::new(Arc::new(CassetteTransport::replay(dir.path()).unwrap()), quick());
    let results = check_negotiation_matrix(&p, "https://w3id.org/example", &[]);
    assert!(results.iter().all(|r| r.status == Status::Skipped), "{results:?}");
}

#[test]
fn concurrency_is_bounded() {
    let in_flight = Arc::new(AtomicUsize::new(0));
    let peak = Arc::new(Mutex::new(0usize));
    let (f, pk) = (in_flight.clone(), peak.clone());
    let p = prober(Scripted(move |_: &HttpRequest| {
        let now = f.fetch_add(1, Ordering::SeqCst) + 1;
        {
            let mut m = pk.lock().unwrap();
            *m = (*m).max(now);
        }
        std::thread::sleep(std::time::Duration::from_millis(20));
        f.fetch_sub(1, Ordering::SeqCst);
        Ok(ttl_response())
    }));
    let many: Vec<String> = (0..6).map(|i| format!("https://w3id.org/example/{i}.0.0")).collect();
    let results = check_negotiation_matrix(&p, "https://w3id.org/example", &many);
    assert_eq!(results.len(), 16);
    let peak = *peak.lock().unwrap();
    assert!((2..=4).contains(&peak), "peak {peak}");
}

#[test]
fn recorded_traces_replay_identically() {
    let dir = tempfile::tempdir().unwrap();
    let live = Prober::new(Arc::new(CassetteTransport::recording(dir.path(), Arc::new(web())).unwrap()), quick());
    let recorded = run_matrix(&live, &matrix_cells("https://w3id.org/example", &versions()));
    let replay = Prober::new(Arc::new(CassetteTransport::replay(dir.path()).unwrap()), quick());
    let replayed = run_matrix(&replay, &matrix_cells("https://w3id.org/example", &versions()));
    for ((_, a, ra), (_, b, rb)) in recorded.iter().zip(&replayed) {
        assert_eq!(a.hops, b.hops);
        assert_eq!(ra, rb);
    }
    // Re-running the hops against the fixture gives the same statuses.
    let fixture = web();
    for (_, trace, _) in &recorded {
        for hop in &trace.hops {
            let req = HttpRequest::get(&hop.url).with_accept(trace.request.accept.as_deref());
            assert_eq!(fixture.execute(&req).unwrap().status, hop.status);
        }
    }
}

#[test]
fn registry_lookups() {
    let mut w = web();
    let cfg = quick();
    w.add_file_with_type(
        &registry::prefix_lookup_url(&cfg.prefix_endpoint, "example"),
        "example\thttp://example.org/\n",
        "text/plain",
    );
    w.add_file_with_type(
        &registry::prefix_lookup_url(&cfg.prefix_endpoint, "exo"),
        "exo\thttps://w3id.org/example#\n",
        "text/plain",
    );
    w.add_file_with_type(
        &registry::lov_lookup_url(&cfg.lov_endpoint, "http://www.w3.org/ns/dcat#"),
        r#"{"total_results":1,"results":[{"prefix":["dcat"],"uri":["http://www.w3.org/ns/dcat"]}]}"#,
        "application/json",
    );
    w.add_file_with_type(
        &registry::lov_lookup_url(&cfg.lov_endpoint, "https://w3id.org/fresh-3f9a#"),
        r#"{"total_results":0,"results":[]}"#,
        "application/json",
    );
    let p = prober(w);

    let f = lookup_prefix(&p, "example");
    assert_eq!(f.outcome, RegistryOutcome::Found("http://example.org/".into()));
    assert_eq!(registry::prefix_registry_check(&f, "https://w3id.org/example#").status, Status::Warn);
    let f = lookup_prefix(&p, "exo");
    assert_eq!(registry::prefix_registry_check(&f, "https://w3id.org/example#").status, Status::Pass);
    assert_eq!(lookup_prefix(&p, "zzq").outcome, RegistryOutcome::NotFound);

    let f = lookup_lov(&p, "http://www.w3.org/ns/dcat#");
    assert!(matches!(f.outcome, RegistryOutcome::Found(_)));
    assert_eq!(registry::lov_check(&f).status, Status::Pass);
    let f = lookup_lov(&p, "https://w3id.org/fresh-3f9a#");
    assert_eq!(f.outcome, RegistryOutcome::NotFound);
    assert_eq!(registry::lov_check(&f).status, Status::Info);

    let down = prober(FixtureWeb::new());
    let f = lookup_lov(&down, "http://www.w3.org/ns/dcat#");
    assert!(matches!(f.outcome, RegistryOutcome::Unreachable(_)));
    assert_eq!(registry::lov_check(&f).status, Status::Skipped);
}
