use proptest::prelude::*;

use super::*;
use crate::check::guideline;

fn result(id: &str, severity: Severity, status: Status) -> CheckResult {
    CheckResult::new(id, status, severity, Evidence::new(format!("{id} is {status}")), guideline::ONTOLOGY_METADATA)
}

fn fixed() -> ReportOptions {
    ReportOptions { timestamp: Some("2020-01-01T00:00:00Z".into()), ..ReportOptions::default() }
}

#[test]
fn everything_passing_scores_100() {
    let results = vec![
        result("find.lov", Severity::Optional, Status::Pass),
        result("uri.permanent", Severity::Recommended, Status::Pass),
        result("interop.standard-serialization", Severity::Recommended, Status::Pass),
        result("meta.title", Severity::Recommended, Status::Pass),
        result("meta.doi", Severity::Optional, Status::Pass),
    ];
    let r = assemble_report_with(&results, "https://w3id.org/x", &fixed());
    for c in FairCategory::ALL {
        assert_eq!(r.scores.get(c), Some(100.0), "{c}");
    }
    assert_eq!(r.scores.overall, Some(100.0));
    assert_eq!(r.exit_code(), 0);
}

#[test]
fn skipped_category_is_null() {
    let results = vec![
        result("neg.ontology.html", Severity::Recommended, Status::Skipped),
        result("neg.ontology.turtle", Severity::Recommended, Status::Skipped),
        result("meta.title", Severity::Recommended, Status::Fail),
    ];
    let r = assemble_report_with(&results, "s", &fixed());
    assert_eq!(r.scores.accessible, None);
    assert_eq!(r.scores.findable, None);
    assert_eq!(r.scores.reusable, Some(0.0));
    let json = render_report(&r, ReportFormat::Json);
    assert!(json.contains("\"accessible\": null"));
    assert_eq!(r.exit_code(), 1);
}

#[test]
fn reusable_with_absent_optional_metadata() {
    let mut results: Vec<CheckResult> =
        (0..11).map(|i| result(&format!("meta.r{i:02}"), Severity::Recommended, Status::Pass)).collect();
    results.extend((0..12).map(|i| result(&format!("meta.o{i:02}"), Severity::Optional, Status::Info)));
    let r = assemble_report_with(&results, "s", &fixed());
    // Info results carry no weight: 11 x 1.0 passed out of 11 x 1.0 weighed.
    let (passed, weighed) = (11.0 * 1.0, 11.0 * 1.0 + 12.0 * 0.0);
    assert_eq!(r.scores.reusable, Some(100.0 * passed / weighed));
}

#[test]
fn weighted_arithmetic() {
    let results = vec![
        result("find.lov", Severity::Optional, Status::Pass),
        result("find.prefix-registry", Severity::Optional, Status::Fail),
        result("prefix.sanity", Severity::Recommended, Status::Pass),
        result("prefix.collision-reminder", Severity::Informational, Status::Fail),
        result("uri.permanent", Severity::Recommended, Status::Warn),
        result("uri.opaque", Severity::Informational, Status::Info),
    ];
    let r = assemble_report_with(&results, "s", &fixed());
    assert_eq!(r.scores.findable, Some(100.0 * 1.5 / 2.0));
    assert_eq!(r.scores.accessible, Some(0.0));
    assert_eq!(r.scores.interoperable, None);
    assert_eq!(r.scores.overall, Some(100.0 * 1.5 / 3.0));
    // Warn and Informational Fail never block.
    assert_eq!(r.exit_code(), 0);
}

#[test]
fn ordered_by_category_then_id() {
    let results = vec![
        result("meta.title", Severity::Recommended, Status::Pass),
        result("uri.permanent", Severity::Recommended, Status::Pass),
        result("find.lov", Severity::Optional, Status::Pass),
        result("interop.formats", Severity::Optional, Status::Pass),
        result("find.jsonld-annotations", Severity::Optional, Status::Pass),
        result("meta.license", Severity::Recommended, Status::Pass),
    ];
    let r = assemble_report(&results, "s");
    let ids: Vec<&str> = r.checks.iter().map(|c| c.id.as_str()).collect();
    assert_eq!(
        ids,
        ["find.jsonld-annotations", "find.lov", "uri.permanent", "interop.formats", "meta.license", "meta.title"]
    );
}

#[test]
fn empty_report() {
    let r = assemble_report_with(&[], "https://w3id.org/x", &fixed());
    assert!(r.checks.is_empty());
    assert_eq!(r.scores, Scores::default());
    let back: Report = serde_json::from_str(&render_report(&r, ReportFormat::Json)).unwrap();
    assert_eq!(back, r);
    assert!(render_report(&r, ReportFormat::Markdown).contains("None."));
}

#[test]
fn json_keys_are_stable() {
    let r = assemble_report_with(&[result("meta.title", Severity::Recommended, Status::Pass)], "s", &fixed());
    let json = render_report(&r, ReportFormat::Json);
    let in_order = |keys: &[&str]| {
        let pos: Vec<usize> = keys.iter().map(|k| json.find(&format!("\"{k}\":")).unwrap()).collect();
        pos.windows(2).all(|w| w[0] < w[1])
    };
    assert!(in_order(&["subject", "tool_version", "timestamp", "scores", "checks", "environment"]));
    assert!(in_order(&["findable", "accessible", "interoperable", "reusable", "overall"]));
    assert!(in_order(&["id", "category", "severity", "status", "evidence", "paper_ref"]));
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v.as_object().unwrap().len(), 6);
    assert_eq!(v["scores"].as_object().unwrap().len(), 5);
    assert_eq!(v["checks"][0].as_object().unwrap().len(), 6);
    assert_eq!(v["checks"][0]["category"], "reusable");
}

#[test]
fn markdown_lists_failures_first() {
    let results = vec![
        result("meta.title", Severity::Recommended, Status::Pass),
        result("meta.doi", Severity::Optional, Status::Warn),
        result("uri.permanent", Severity::Recommended, Status::Fail),
    ];
    let md = render_report(&assemble_report_with(&results, "s", &fixed()), ReportFormat::Markdown);
    let pos = |s: &str| md.find(s).unwrap();
    assert!(pos("| overall |") < pos("## Failing checks (2)"));
    assert!(pos("## Failing checks") < pos("| uri.permanent"));
    assert!(pos("| uri.permanent") < pos("| meta.doi"));
    assert!(pos("| meta.doi") < pos("## Other checks (1)"));
    assert!(pos("## Other checks") < pos("| meta.title"));
}

#[test]
fn exit_code_law() {
    assert_eq!(exit_code(0, false), 0);
    assert_eq!(exit_code(3, false), 1);
    assert_eq!(exit_code(0, true), 2);
    assert_eq!(exit_code(5, true), 2);
}

#[test]
fn category_mapping() {
    assert_eq!(FairCategory::of_check("find.lov"), FairCategory::Findable);
    assert_eq!(FairCategory::of_check("prefix.sanity"), FairCategory::Findable);
    assert_eq!(FairCategory::of_check("neg.version.1.0.0.html"), FairCategory::Accessible);
    assert_eq!(FairCategory::of_check("version.semver"), FairCategory::Accessible);
    assert_eq!(FairCategory::of_check("interop.formats"), FairCategory::Interoperable);
    assert_eq!(FairCategory::of_check("meta.diagram"), FairCategory::Reusable);
    assert_eq!(FairCategory::of_check("terms.label"), FairCategory::Reusable);
    let mut map = CategoryMap::default();
    map.overrides.insert("neg.ontology.html".into(), FairCategory::Reusable);
    assert_eq!(map.category("neg.ontology.html"), FairCategory::Reusable);
    assert_eq!(map.category("neg.ontology.turtle"), FairCategory::Accessible);
}

#[test]
fn catalog_is_unique_and_matches_patterns() {
    let catalog = check_catalog();
    let mut ids: Vec<&str> = catalog.iter().map(|e| e.id.as_str()).collect();
    ids.dedup();
    assert_eq!(ids.len(), catalog.len());
    assert!(catalog.iter().all(|e| e.category == FairCategory::of_check(&e.id)));
    assert_eq!(catalog_entry("neg.version.1.0.1.turtle").unwrap().id, "neg.version.{version}.turtle");
    assert!(catalog_entry("neg.version..turtle").is_none());
    assert!(catalog_entry("no.such.check").is_none());
    let listing = render_catalog();
    assert_eq!(listing.lines().count(), catalog.len() + 1);
}

#[test]
fn config_file() {
    let text = "# scoring\n\
        weight.optional = 0.25\n\
        threshold.term_pass = 90\n\
        threshold.term_warn = 0.5\n\
        registry.prefixcc = http://prefix.test/{prefix}.file.txt\n\
        timeout = 2.5\n\
        max_redirects = 4\n\
        category.neg.ontology.html = reusable\n\
        severity.no_303 = fail\n\
        alias.title = http://example.org/heading, <http://example.org/name>\n";
    let c = ToolConfig::parse(text).unwrap();
    assert_eq!(c.weights.optional, 0.25);
    assert_eq!(c.thresholds.pass, 0.9);
    assert_eq!(c.thresholds.warn, 0.5);
    assert_eq!(c.categories.category("neg.ontology.html"), FairCategory::Reusable);
    assert_eq!(c.aliases.len(), 2);
    assert_eq!(c.aliases[1].1, "http://example.org/name");
    let mut probe = crate::probe::ProbeConfig::default();
    c.apply(&mut probe);
    assert_eq!(probe.max_redirects, 4);
    assert_eq!(probe.timeout, std::time::Duration::from_millis(2500));
    assert_eq!(probe.no_303_status, Status::Fail);
    assert_eq!(probe.prefix_endpoint, "http://prefix.test/{prefix}.file.txt");
    assert!(c.audit_options().aliases.aliases(crate::audit::MetadataField::Title).len() > 2);
}

#[test]
fn config_errors_name_the_line() {
    for (text, line) in [
        ("weight.optional = lots", 1),
        ("\nnonsense", 2),
        ("\n\nunknown.key = 1", 3),
        ("category.meta.title = elsewhere", 1),
        ("alias.nofield = http://x", 1),
    ] {
        match ToolConfig::parse(text) {
            Err(ConfigError::Syntax { line: l, .. }) => assert_eq!(l, line, "{text}"),
            other => panic!("{text}: {other:?}"),
        }
    }
    assert!(ToolConfig::parse("threshold.term_warn = 1\nthreshold.term_pass = 0.5").is_err());
}

fn arb_results() -> impl Strategy<Value = Vec<CheckResult>> {
    let ids = prop::sample::select(vec![
        "find.lov",
        "find.prefix-registry",
        "prefix.sanity",
        "uri.permanent",
        "neg.ontology.html",
        "version.semver",
        "interop.formats",
        "interop.standard-serialization",
        "meta.title",
        "meta.doi",
        "terms.label",
    ]);
    let severity = prop::sample::select(vec![Severity::Recommended, Severity::Optional, Severity::Informational]);
    let status = prop::sample::select(vec![Status::Pass, Status::Fail, Status::Warn, Status::Skipped, Status::Info]);
    prop::collection::vec((ids, severity, status, 0u8..100), 0..30).prop_map(|v| {
        v.into_iter()
            .map(|(id, sev, st, n)| {
                let mut r = result(id, sev, st);
                r.evidence.values.push(format!("v{n}"));
                r
            })
            .collect()
    })
}

proptest! {
    #[test]
    fn json_round_trips(results in arb_results()) {
        let r = assemble_report_with(&results, "https://w3id.org/p", &fixed());
        let back: Report = serde_json::from_str(&render_report(&r, ReportFormat::Json)).unwrap();
        prop_assert_eq!(back, r);
    }

    #[test]
    fn scores_are_percentages(results in arb_results()) {
        let r = assemble_report_with(&results, "s", &fixed());
        for c in FairCategory::ALL {
            if let Some(s) = r.scores.get(c) {
                prop_assert!((0.0..=100.0).contains(&s));
            }
        }
    }

    #[test]
    fn fixing_a_failure_never_lowers_a_score(results in arb_results(), pick in any::<prop::sample::Index>()) {
        let fails: Vec<usize> = results.iter().enumerate().filter(|(_, r)| r.status == Status::Fail).map(|(i, _)| i).collect();
        prop_assume!(!fails.is_empty());
        let mut fixed_results = results.clone();
        fixed_results[fails[pick.index(fails.len())]].status = Status::Pass;
        let before = assemble_report_with(&results, "s", &fixed());
        let after = assemble_report_with(&fixed_results, "s", &fixed());
        for c in FairCategory::ALL {
            prop_assert!(after.scores.get(c).unwrap_or(0.0) >= before.scores.get(c).unwrap_or(0.0));
        }
        prop_assert!(after.scores.overall.unwrap_or(0.0) >= before.scores.overall.unwrap_or(0.0));
        prop_assert!(after.exit_code() <= before.exit_code());
    }

    #[test]
    fn ranking_ignores_input_order(results in arb_results(), seed in any::<u64>()) {
        use rand::{seq::SliceRandom, SeedableRng};
        let mut shuffled = results.clone();
        shuffled.shuffle(&mut rand::rngs::StdRng::seed_from_u64(seed));
        let a = assemble_report_with(&results, "s", &fixed());
        let b = assemble_report_with(&shuffled, "s", &fixed());
        prop_assert_eq!(a.ranking(), b.ranking());
        prop_assert_eq!(&a.scores, &b.scores);
        prop_assert_eq!(a.exit_code(), b.exit_code());
    }

    #[test]
    fn exit_code_depends_on_recommended_fails_only(results in arb_results()) {
        let r = assemble_report(&results, "s");
        let blocking = results.iter().filter(|r| r.is_blocking()).count();
        prop_assert_eq!(r.exit_code(), exit_code(blocking, false));
    }
}
