//! The `fairvoc` command line.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Duration;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use fairvoc_core::diagram::{build_diagram, NotationStyle};
use fairvoc_core::pipeline::{load_ontology, run_checks, Source};
use fairvoc_core::probe::{CassetteTransport, HttpTransport, ProbeConfig, Prober, DEFAULT_USER_AGENT};
use fairvoc_core::report::{
    assemble_report_with, render_catalog, render_report, Environment, ReportFormat, ReportOptions, ToolConfig,
};
use fairvoc_core::scaffold::{plan_release, ScaffoldConfig};

/// Timestamp written by `--fixed-clock`.
pub const FIXED_CLOCK: &str = "2000-01-01T00:00:00Z";

#[derive(Debug, Parser)]
#[command(name = "fairvoc", version, about = "Audit and publish Web ontologies")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Audit an ontology file or IRI and print a scored report.
    Check(CheckArgs),
    /// Lay out a versioned release with redirect rules and documentation.
    Scaffold(ScaffoldArgs),
    /// Draw the ontology as a Graphviz digraph.
    Diagram(DiagramArgs),
    /// List every check with its category and severity.
    Catalog,
}

#[derive(Debug, Args)]
struct NetArgs {
    /// Replay HTTP exchanges recorded in this directory.
    #[arg(long, env = "FAIRVOC_CASSETTE_DIR")]
    cassette: Option<PathBuf>,
    /// Per-request timeout in seconds.
    #[arg(long, env = "FAIRVOC_TIMEOUT")]
    timeout: Option<f64>,
}

#[derive(Debug, Args)]
struct CheckArgs {
    /// Ontology IRI (http/https) or local file.
    target: String,
    /// Do not touch the network; Web checks are skipped unless a cassette is given.
    #[arg(long)]
    offline: bool,
    #[arg(long, default_value = "json", value_parser = parse_format)]
    format: ReportFormat,
    #[command(flatten)]
    net: NetArgs,
    /// Key-value settings file (weights, thresholds, registry endpoints).
    #[arg(long)]
    config: Option<PathBuf>,
    /// Freeze every timestamp for reproducible output.
    #[arg(long)]
    fixed_clock: bool,
}

#[derive(Debug, Args)]
struct ScaffoldArgs {
    /// TOML release description.
    config: PathBuf,
    /// Directory to write the release tree into.
    #[arg(long, default_value = ".")]
    out: PathBuf,
    /// Print the planned files without writing them.
    #[arg(long)]
    dry_run: bool,
}

#[derive(Debug, Args)]
struct DiagramArgs {
    /// Ontology IRI (http/https) or local file.
    target: String,
    #[arg(long, default_value = "arrows", value_parser = parse_style)]
    style: NotationStyle,
    /// Output file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    net: NetArgs,
}

fn parse_format(s: &str) -> Result<ReportFormat, String> {
    s.parse()
}

fn parse_style(s: &str) -> Result<NotationStyle, String> {
    s.parse()
}

/// Runs the command line with the process's standard streams.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

/// Runs the command line writing to `out` and `err`; returns the exit code.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                2
            } else {
                let _ = write!(out, "{}", e.render());
                0
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Check(a) => check(a, out),
        Command::Scaffold(a) => scaffold(a, out),
        Command::Diagram(a) => diagram(a, out, err),
        Command::Catalog => out.write_all(render_catalog().as_bytes()).map(|_| 0).map_err(Into::into),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {}", describe(&e));
            2
        }
    }
}

/// The error chain joined by `: `, without causes already spelled out.
fn describe(e: &anyhow::Error) -> String {
    let mut text = String::new();
    for cause in e.chain() {
        let part = cause.to_string();
        if !text.contains(&part) {
            if !text.is_empty() {
                text.push_str(": ");
            }
            text.push_str(&part);
        }
    }
    text
}

fn timeout(secs: f64) -> anyhow::Result<Duration> {
    Duration::try_from_secs_f64(secs).map_err(|_| anyhow::anyhow!("invalid timeout {secs}"))
}

fn prober(net: &NetArgs, offline: bool, config: ProbeConfig) -> anyhow::Result<(Prober, Environment)> {
    if let Some(dir) = &net.cassette {
        let cassette =
            CassetteTransport::replay(dir).with_context(|| format!("cannot open cassette {}", dir.display()))?;
        return Ok((Prober::new(Arc::new(cassette), config), Environment::cassette(dir.display().to_string())));
    }
    if offline {
        return Ok((Prober::offline(config), Environment::offline()));
    }
    let transport = HttpTransport::new(config.timeout, DEFAULT_USER_AGENT);
    Ok((Prober::new(Arc::new(transport), config), Environment::online()))
}

fn check(args: CheckArgs, out: &mut dyn Write) -> anyhow::Result<i32> {
    let tool = match &args.config {
        Some(path) => ToolConfig::load(path)?,
        None => ToolConfig::default(),
    };
    let mut probe_config = ProbeConfig::default();
    tool.apply(&mut probe_config);
    if let Some(secs) = args.net.timeout {
        probe_config.timeout = timeout(secs)?;
    }
    let clock = args.fixed_clock.then(|| FIXED_CLOCK.to_string());
    probe_config.fixed_clock = clock.clone();
    let (prober, environment) = prober(&args.net, args.offline, probe_config)?;
    let run = run_checks(&Source::from_arg(&args.target), &prober, &tool.audit_options())?;
    let options =
        ReportOptions { categories: tool.categories.clone(), weights: tool.weights, timestamp: clock, environment };
    let report = assemble_report_with(&run.results, &run.subject, &options);
    out.write_all(render_report(&report, args.format).as_bytes())?;
    Ok(report.exit_code())
}

fn scaffold(args: ScaffoldArgs, out: &mut dyn Write) -> anyhow::Result<i32> {
    let text =
        std::fs::read_to_string(&args.config).with_context(|| format!("cannot read {}", args.config.display()))?;
    let config = ScaffoldConfig::from_toml(&text, args.config.parent())?;
    let Some(source) = &config.ontology else {
        bail!("{} names no `ontology` file to release", args.config.display());
    };
    let loaded = load_ontology(&Source::Path(source.clone()), &Prober::offline(ProbeConfig::default()))?;
    let layout = plan_release(&config, &loaded.model)?;
    if args.dry_run {
        out.write_all(layout.describe().as_bytes())?;
        return Ok(0);
    }
    let written = layout.write_to(&args.out).with_context(|| format!("cannot write into {}", args.out.display()))?;
    for path in written {
        writeln!(out, "{}", path.display())?;
    }
    Ok(0)
}

fn diagram(args: DiagramArgs, out: &mut dyn Write, err: &mut dyn Write) -> anyhow::Result<i32> {
    let mut probe_config = ProbeConfig::default();
    if let Some(secs) = args.net.timeout {
        probe_config.timeout = timeout(secs)?;
    }
    let (prober, _) = prober(&args.net, false, probe_config)?;
    let loaded = load_ontology(&Source::from_arg(&args.target), &prober)?;
    let diagram = build_diagram(&loaded.model, args.style);
    let dot = diagram.emit()?;
    for triple in &diagram.skipped {
        writeln!(err, "warning: not drawn: {triple}")?;
    }
    match &args.out {
        Some(path) => write_file(path, &dot)?,
        None => out.write_all(dot.as_bytes())?,
    }
    Ok(0)
}

fn write_file(path: &Path, text: &str) -> anyhow::Result<()> {
    std::fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}
