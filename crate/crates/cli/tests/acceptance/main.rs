//! Acceptance suite: one PASS/FAIL line per criterion.

#[path = "../common/mod.rs"]
mod common;
mod notation;

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::{Duration, Instant};

use common::*;
use fairvoc_core::audit::{audit_model, extract_metadata, parse_semver, AuditOptions, MetadataField, SemVer};
use fairvoc_core::diagram::{build_diagram, emit_diagram, NotationStyle};
use fairvoc_core::pipeline::{run_checks, Source};
use fairvoc_core::probe::{
    check_negotiation_matrix, detect_jsonld_annotations, CassetteTransport, FixtureWeb, HttpRequest, ProbeConfig,
    Prober, Transport,
};
use fairvoc_core::rdf::{parse_ontology, OntologyModel, RdfFormat, Term};
use fairvoc_core::report::{assemble_report, exit_code, FairCategory};
use fairvoc_core::scaffold::{generate_jsonld_snippet, jsonld_script, plan_release, serve_release, ScaffoldConfig};
use fairvoc_core::{Severity, Status};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, message: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(message())
    }
}

fn model_of(ttl: &str) -> OntologyModel {
    parse_ontology(ttl.as_bytes(), RdfFormat::Turtle).expect("valid Turtle")
}

fn status_map(model: &OntologyModel) -> BTreeMap<String, Status> {
    audit_model(model, &AuditOptions::default()).into_iter().map(|r| (r.check_id, r.status)).collect()
}

fn redirect(web: &FixtureWeb, url: &str, accept: Option<&str>) -> (u16, String) {
    let response = web.execute(&HttpRequest::get(url).with_accept(accept)).expect("fixture answers");
    let location = response.header("location").unwrap_or_default().to_string();
    (response.status, location)
}

fn example_server_behaviour() -> Result<(), String> {
    let web = example_web();
    let release = |v: &str, f: &str| format!("{DOC_BASE}/release/{v}/{f}");
    let cases = [
        (EXAMPLE_IRI.to_string(), Some("text/html"), 303, release("1.0.1", "index-en.html")),
        (EXAMPLE_IRI.to_string(), Some("text/turtle"), 303, release("1.0.1", "ontology.ttl")),
        (EXAMPLE_IRI.to_string(), None, 303, release("1.0.1", "ontology.ttl")),
        (EXAMPLE_IRI.to_string(), Some("application/ld+json"), 406, release("1.0.1", "406.html")),
        (format!("{EXAMPLE_IRI}/1.0.0"), Some("text/html"), 303, release("1.0.0", "index-en.html")),
        (format!("{EXAMPLE_IRI}/1.0.0"), Some("text/turtle"), 303, release("1.0.0", "ontology.ttl")),
        (format!("{EXAMPLE_IRI}/1.0.1"), Some("text/html"), 303, release("1.0.1", "index-en.html")),
        (format!("{EXAMPLE_IRI}/1.0.1"), Some("text/turtle"), 303, release("1.0.1", "ontology.ttl")),
    ];
    for (url, accept, status, location) in cases {
        let got = redirect(&web, &url, accept);
        ensure(got.0 == status && (status == 406 || got.1 == location), || {
            format!("{url} Accept {accept:?}: got {got:?}, want {status} {location}")
        })?;
    }
    Ok(())
}

fn example_site() -> Outcome {
    example_server_behaviour()?;
    let started = Instant::now();
    let cassette = CassetteTransport::replay(example_cassette()).map_err(|e| e.to_string())?;
    let prober = Prober::new(Arc::new(cassette), ProbeConfig::default());
    let run =
        run_checks(&Source::Iri(EXAMPLE_IRI.into()), &prober, &AuditOptions::default()).map_err(|e| e.to_string())?;
    let cassette_arg = example_cassette().display().to_string();
    let (code, _, err) = cli(&["check", EXAMPLE_IRI, "--offline", "--cassette", &cassette_arg, "--fixed-clock"]);
    let elapsed = started.elapsed();

    let neg: Vec<_> = run.results.iter().filter(|r| r.check_id.starts_with("neg.")).collect();
    ensure(neg.len() == 8, || format!("expected 8 negotiation cells, got {}", neg.len()))?;
    for r in &neg {
        ensure(matches!(r.status, Status::Pass | Status::Info), || {
            format!("{} is {:?}: {}", r.check_id, r.status, r.evidence.message)
        })?;
    }
    let report = assemble_report(&run.results, &run.subject);
    let blocking: Vec<_> = report
        .checks
        .iter()
        .filter(|c| c.category == FairCategory::Accessible && c.is_blocking())
        .map(|c| c.id.clone())
        .collect();
    ensure(blocking.is_empty(), || format!("Recommended Fails in Accessible: {blocking:?}"))?;
    ensure(code == 0, || format!("CLI exit {code}: {err}"))?;
    ensure(elapsed < Duration::from_secs(5), || format!("took {elapsed:?}"))?;
    let info = neg.iter().filter(|r| r.status == Status::Info).count();
    Ok(format!("8 cells ({} Pass, {info} Info), 0 Accessible Recommended Fails, {elapsed:.2?}", 8 - info))
}

fn metadata_completeness() -> Outcome {
    let model = model_of(&std::fs::read_to_string(example_ontology()).unwrap());
    let base = status_map(&model);
    let passes =
        |fields: &[MetadataField]| fields.iter().filter(|f| base.get(f.check_id()) == Some(&Status::Pass)).count();
    let (rec, opt) = (passes(&MetadataField::RECOMMENDED), passes(&MetadataField::OPTIONAL));
    ensure(rec == 11 && opt == 12, || format!("{rec} Recommended + {opt} Optional Pass"))?;
    let iri = Term::iri(model.ontology_iri());
    for field in MetadataField::RECOMMENDED {
        let kept: BTreeSet<_> = model
            .triples()
            .iter()
            .filter(|t| !(t.subject == iri && t.predicate == field.property()))
            .cloned()
            .collect();
        let reduced = OntologyModel::from_triples(kept).map_err(|e| e.to_string())?;
        let after = status_map(&reduced);
        let flipped: Vec<&String> = after
            .iter()
            .filter(|(id, s)| **s == Status::Fail && base.get(*id) != Some(&Status::Fail))
            .map(|(id, _)| id)
            .collect();
        ensure(flipped == [field.check_id()], || format!("removing {} flipped {flipped:?}", field.property()))?;
    }
    Ok("11 Recommended + 12 Optional Pass; each of 11 removals flips exactly its own check".into())
}

fn versioning_status(ttl: &str, id: &str) -> Status {
    status_map(&model_of(ttl))[id]
}

fn semver_oracle(s: &str) -> bool {
    let re = regex::Regex::new(r"^[0-9]+\.[0-9]+\.[0-9]+$").unwrap();
    re.is_match(s) && s.split('.').all(|p| p.parse::<u64>().is_ok())
}

fn random_version_string(rng: &mut StdRng) -> String {
    const ALPHABET: &[char] = &['0', '1', '2', '9', '.', '.', 'v', '-', '+', 'a', ' ', '٣'];
    if rng.gen_bool(0.5) {
        let len = rng.gen_range(0..12);
        (0..len).map(|_| *ALPHABET.choose(rng).unwrap()).collect()
    } else {
        let part = |rng: &mut StdRng| -> String {
            match rng.gen_range(0..10) {
                0 => String::new(),
                1 => "x".into(),
                2 => "99999999999999999999".into(),
                _ => rng.gen_range(0..1000u32).to_string(),
            }
        };
        let parts: Vec<String> = (0..rng.gen_range(2..5)).map(|_| part(rng)).collect();
        let tail = ["", "", "", "-rc1", "+b", ".0", "\n"].choose(rng).unwrap();
        format!("{}{tail}", parts.join("."))
    }
}

fn versioning() -> Outcome {
    let head = "@prefix owl: <http://www.w3.org/2002/07/owl#> .\n";
    let consistent = format!(
        "{head}<https://w3id.org/vv> a owl:Ontology ; owl:versionIRI <https://w3id.org/vv/1.2.0> ; owl:versionInfo \"1.2.0\" ."
    );
    let in_namespace = format!(
        "{head}<https://w3id.org/vv/1.2.0> a owl:Ontology ; owl:versionIRI <https://w3id.org/vv/1.2.0> ; owl:versionInfo \"1.2.0\" ."
    );
    let mismatch = format!(
        "{head}<https://w3id.org/vv> a owl:Ontology ; owl:versionIRI <https://w3id.org/vv/1.2.0> ; owl:versionInfo \"1.3.0\" ."
    );
    for id in ["version.version-iri", "version.semver", "version.in-namespace", "version.consistency"] {
        let s = versioning_status(&consistent, id);
        ensure(s == Status::Pass, || format!("consistent case: {id} is {s:?}"))?;
    }
    let s = versioning_status(&in_namespace, "version.in-namespace");
    ensure(s == Status::Fail, || format!("semver in namespace: {s:?}"))?;
    let s = versioning_status(&mismatch, "version.consistency");
    ensure(s == Status::Fail, || format!("mismatch: {s:?}"))?;

    let mut rng = StdRng::seed_from_u64(0x5e_5e);
    let n = 20_000;
    let mut valid = 0;
    for _ in 0..n {
        let s = random_version_string(&mut rng);
        let parsed = parse_semver(&s);
        ensure(parsed.is_ok() == semver_oracle(&s), || format!("parser and regex disagree on {s:?}"))?;
        if let Ok(v) = parsed {
            valid += 1;
            ensure(parse_semver(&v.to_string()) == Ok(v), || format!("{v} does not round-trip"))?;
        }
    }
    Ok(format!("3-case matrix as specified; parser agrees with regex on {n} strings ({valid} valid)"))
}

fn random_scaffold(rng: &mut StdRng) -> (ScaffoldConfig, OntologyModel) {
    let host = *["https://w3id.org", "https://purl.org", "http://example.org"].choose(rng).unwrap();
    let name: String = (0..rng.gen_range(2..9)).map(|_| rng.gen_range(b'a'..=b'z') as char).collect();
    let path = if rng.gen_bool(0.3) { format!("{name}/core") } else { name };
    let root = format!("{host}/{path}");
    let iri = format!("{root}{}", if rng.gen_bool(0.5) { "/" } else { "#" });
    let versions: Vec<SemVer> = (0..rng.gen_range(1..6))
        .map(|_| SemVer::new(rng.gen_range(0..4), rng.gen_range(0..12), rng.gen_range(0..30)))
        .collect();
    let docs = *["https://docs.test/site", "https://pages.test", "http://host.test/a/b"].choose(rng).unwrap();
    let mut config = ScaffoldConfig::new(&iri, docs, &versions).expect("valid config");
    for f in [RdfFormat::RdfXml, RdfFormat::NTriples, RdfFormat::JsonLd] {
        if rng.gen_bool(0.4) {
            config.supported_formats.push(f);
        }
    }
    config.supported_formats.sort();
    config.html_doc_filename = ["index-en.html", "index.html", "doc.html"].choose(rng).unwrap().to_string();
    config.serialization_filename = ["ontology.ttl", "vocab.ttl", "release-file.ttl"].choose(rng).unwrap().to_string();
    let ttl = format!(
        "<{root}> a <http://www.w3.org/2002/07/owl#Ontology> ; <http://purl.org/dc/terms/title> \"T\" .\n\
         <{iri}C> a <http://www.w3.org/2002/07/owl#Class> ."
    );
    (config, model_of(&ttl))
}

fn scaffold_self_conformance() -> Outcome {
    let mut rng = StdRng::seed_from_u64(20);
    let n = 24;
    let mut cells = 0;
    for i in 0..n {
        let (config, model) = random_scaffold(&mut rng);
        let layout = plan_release(&config, &model).map_err(|e| format!("config {i}: {e}"))?;
        let mut web = FixtureWeb::new();
        serve_release(&mut web, &config, &layout).map_err(|e| e.to_string())?;
        let versions: Vec<String> = config.all_versions.iter().map(|v| config.version_iri(v)).collect();
        let results = check_negotiation_matrix(
            &Prober::new(Arc::new(web), ProbeConfig::default()),
            &config.ontology_iri,
            &versions,
        );
        cells += results.len();
        if let Some(r) = results.iter().find(|r| r.severity == Severity::Recommended && r.status == Status::Fail) {
            return Err(format!("config {i} ({}): {} {}", config.ontology_iri, r.check_id, r.evidence.message));
        }
    }
    Ok(format!("{n} random configs, {cells} cells, 0 Recommended Fails"))
}

fn random_metadata_ttl(rng: &mut StdRng, i: usize) -> String {
    let mut ttl = String::from(
        "@prefix owl: <http://www.w3.org/2002/07/owl#> .\n@prefix dcterms: <http://purl.org/dc/terms/> .\n",
    );
    let titles = ["Plain", "Quotes \\\"inside\\\"", "Ünïcödé title", "</script> breaker", "Tab\\tand newline\\n"];
    ttl.push_str(&format!(
        "<https://w3id.org/r{i}> a owl:Ontology ; dcterms:title \"{}\"@en",
        titles.choose(rng).unwrap()
    ));
    for name in ["Alice Example", "Bob Example", "Carol Example"] {
        if rng.gen_bool(0.4) {
            ttl.push_str(&format!(" ; dcterms:creator \"{name}\""));
        }
    }
    if rng.gen_bool(0.5) {
        ttl.push_str(" ; dcterms:license <http://creativecommons.org/licenses/by/4.0/>");
    }
    if rng.gen_bool(0.5) {
        ttl.push_str(" ; dcterms:issued \"2021-03-04\"");
    }
    if rng.gen_bool(0.5) {
        ttl.push_str(&format!(" ; owl:versionInfo \"1.{i}.0\""));
    }
    ttl.push_str(" .\n");
    ttl
}

fn jsonld_round_trip() -> Outcome {
    let mut rng = StdRng::seed_from_u64(5);
    let n = 64;
    for i in 0..n {
        let ttl = random_metadata_ttl(&mut rng, i);
        let model = model_of(&ttl);
        let snippet =
            generate_jsonld_snippet(&extract_metadata(&model), model.ontology_iri()).map_err(|e| e.to_string())?;
        let html = format!("<!DOCTYPE html><html><head>{}</head><body></body></html>", jsonld_script(&snippet));
        let r = detect_jsonld_annotations(&html);
        ensure(r.status == Status::Pass, || format!("case {i} {:?}: {}\n{ttl}", r.status, r.evidence.message))?;
    }
    let model = model_of(&std::fs::read_to_string(example_ontology()).unwrap());
    let snippet =
        generate_jsonld_snippet(&extract_metadata(&model), model.ontology_iri()).map_err(|e| e.to_string())?;
    let json: serde_json::Value = serde_json::from_str(&snippet).map_err(|e| e.to_string())?;
    let keys: BTreeSet<&str> = json.as_object().ok_or("snippet is not an object")?.keys().map(String::as_str).collect();
    let want: BTreeSet<&str> =
        ["@context", "@type", "url", "name", "datePublished", "version", "license", "author"].into();
    ensure(keys == want, || format!("example fields {keys:?}"))?;
    Ok(format!("{n} random snippets detected; example carries the 8 listed fields"))
}

fn diagram_notation() -> Outcome {
    let model = model_of(&std::fs::read_to_string(fixture("notation.ttl")).unwrap());
    let mut rows = 0;
    for style in [NotationStyle::ArrowStyle, NotationStyle::DiamondStyle] {
        let d = build_diagram(&model, style);
        ensure(d.skipped.is_empty(), || format!("{style:?} skipped {:?}", d.skipped))?;
        ensure(d.mapped == d.axioms, || format!("{style:?}: {} of {} axioms", d.mapped, d.axioms))?;
        let (want_nodes, want_edges) = notation::expected(style);
        let (got_nodes, got_edges) = notation::actual(&d);
        ensure(got_nodes == want_nodes, || format!("{style:?} nodes\n got {got_nodes:#?}\nwant {want_nodes:#?}"))?;
        ensure(got_edges == want_edges, || format!("{style:?} edges\n got {got_edges:#?}\nwant {want_edges:#?}"))?;
        rows += want_nodes.len() + want_edges.len();
    }
    Ok(format!("both styles match the {rows}-row table; no skipped axioms"))
}

fn determinism() -> Outcome {
    let cassette = example_cassette().display().to_string();
    let args = ["check", EXAMPLE_IRI, "--offline", "--cassette", &cassette, "--fixed-clock", "--format", "json"];
    let (c1, first, _) = cli(&args);
    let (c2, second, _) = cli(&args);
    ensure(c1 == c2 && !first.is_empty() && first == second, || "JSON reports differ".into())?;
    let path = example_ontology().display().to_string();
    let local = ["check", &path, "--offline", "--cassette", &cassette, "--fixed-clock"];
    ensure(cli(&local).1 == cli(&local).1, || "reports for the local file differ".into())?;

    let model = model_of(&std::fs::read_to_string(fixture("notation.ttl")).unwrap());
    for style in [NotationStyle::ArrowStyle, NotationStyle::DiamondStyle] {
        let d = build_diagram(&model, style);
        let a = emit_diagram(&d.nodes, &d.edges).map_err(|e| e.to_string())?;
        let (mut nodes, mut edges) = (d.nodes.clone(), d.edges.clone());
        nodes.reverse();
        edges.reverse();
        let b = emit_diagram(&nodes, &edges).map_err(|e| e.to_string())?;
        ensure(a == b && a == build_diagram(&model, style).emit().unwrap(), || format!("{style:?} output varies"))?;
    }
    Ok(format!("two runs byte-identical ({} bytes); diagram output stable in both styles", first.len()))
}

fn exit_codes() -> Outcome {
    let cassette = example_cassette().display().to_string();
    let broken = fixture("broken.ttl").display().to_string();
    let malformed = fixture("malformed.ttl").display().to_string();
    let two = fixture("two-ontologies.ttl").display().to_string();
    let cases: [(&str, Vec<&str>, i32); 5] = [
        ("conformant", vec!["check", EXAMPLE_IRI, "--cassette", &cassette, "--format", "json"], 0),
        ("metadata-deficient", vec!["check", &broken, "--offline"], 1),
        ("malformed", vec!["check", &malformed, "--offline"], 2),
        ("two ontologies", vec!["check", &two, "--offline"], 2),
        ("bad flag", vec!["check", "--format", "yaml", "x"], 2),
    ];
    let mut seen = Vec::new();
    for (name, args, want) in cases {
        let (code, out, err) = cli(&args);
        ensure(code == want, || format!("{name}: exit {code}, want {want}; {err}"))?;
        if code != 2 {
            let report: serde_json::Value = serde_json::from_str(&out).map_err(|e| e.to_string())?;
            let fails = report["checks"]
                .as_array()
                .unwrap()
                .iter()
                .filter(|c| c["severity"] == "Recommended" && c["status"] == "Fail")
                .count();
            ensure(code == exit_code(fails, false), || format!("{name}: exit {code} with {fails} fails"))?;
        } else {
            ensure(!err.is_empty(), || format!("{name}: no message on stderr"))?;
        }
        seen.push(format!("{name}={code}"));
    }
    Ok(seen.join(", "))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("example site conformance", example_site),
        ("metadata table completeness", metadata_completeness),
        ("versioning rules", versioning),
        ("scaffold self-conformance", scaffold_self_conformance),
        ("JSON-LD round-trip", jsonld_round_trip),
        ("diagram notation coverage", diagram_notation),
        ("determinism", determinism),
        ("exit-code law", exit_codes),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        match outcome {
            Ok(detail) => println!("criterion {} {name}: PASS ({detail})", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} {name}: FAIL ({detail})", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
