use super::{FairCategory, Report, ReportCheck};
use crate::check::Status;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Markdown,
}

impl std::str::FromStr for ReportFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(ReportFormat::Json),
            "md" | "markdown" => Ok(ReportFormat::Markdown),
            other => Err(format!("unsupported report format {other:?} (expected json or md)")),
        }
    }
}

fn cell(text: &str) -> String {
    text.replace('|', "\\|").replace('\n', " ")
}

fn percent(score: Option<f64>) -> String {
    score.map_or_else(|| "n/a".to_string(), |s| format!("{s:.1}"))
}

fn rows(out: &mut String, checks: &[&ReportCheck]) {
    out.push_str("| Check | Category | Severity | Status | Evidence |\n|---|---|---|---|---|\n");
    for c in checks {
        let mut evidence = cell(&c.evidence.message);
        if !c.evidence.values.is_empty() {
            let shown: Vec<String> = c.evidence.values.iter().take(5).map(|v| format!("`{}`", cell(v))).collect();
            evidence.push_str(&format!(" ({})", shown.join(", ")));
        }
        out.push_str(&format!("| {} | {} | {} | {} | {evidence} |\n", c.id, c.category, c.severity, c.status));
    }
}

fn markdown(report: &Report) -> String {
    let mut out = format!("# FAIR report for {}\n\n", report.subject);
    out.push_str(&format!(
        "- tool version: {}\n- generated: {}\n- network: {} ({})\n",
        report.tool_version, report.timestamp, report.environment.network, report.environment.note
    ));
    if let Some(c) = &report.environment.cassette {
        out.push_str(&format!("- cassette: {c}\n"));
    }
    out.push_str("\n| Category | Score |\n|---|---|\n");
    for c in FairCategory::ALL {
        out.push_str(&format!("| {c} | {} |\n", percent(report.scores.get(c))));
    }
    out.push_str(&format!("| overall | {} |\n\n", percent(report.scores.overall)));

    let failing = |c: &&ReportCheck| matches!(c.status, Status::Fail | Status::Warn);
    let mut problems: Vec<&ReportCheck> = report.checks.iter().filter(failing).collect();
    problems.sort_by_key(|c| (c.status != Status::Fail, c.severity, c.category, c.id.clone()));
    let others: Vec<&ReportCheck> = report.checks.iter().filter(|c| !failing(c)).collect();
    out.push_str(&format!("## Failing checks ({})\n\n", problems.len()));
    if problems.is_empty() {
        out.push_str("None.\n\n");
    } else {
        rows(&mut out, &problems);
        out.push('\n');
    }
    out.push_str(&format!("## Other checks ({})\n\n", others.len()));
    if !others.is_empty() {
        rows(&mut out, &others);
    }
    out
}

/// JSON (stable keys, pretty printed) or Markdown.
pub fn render_report(report: &Report, format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => serde_json::to_string_pretty(report).expect("report serializes") + "\n",
        ReportFormat::Markdown => markdown(report),
    }
}
