//! Command-line front end: constructions to certificate files, certificate
//! verification, bound tables, exact search and graph exports.
//!
//! Exit codes: 0 pass, 1 verification failure, 2 usage or parse error.

pub mod certificate;
pub mod export;

use std::collections::BTreeMap;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};
use pachrom_core::bounds::bound_report;
use pachrom_core::construct::representation_for;
use pachrom_core::search::{verify_table_prefix, Status};
use pachrom_core::{
    build_plane, complete_coloring, connected_coloring, connected_coloring_best, exact_index, validate_axioms, verify,
    BoundReport64, Construction, FieldContext, Mode, SearchConfig, VerifyReport,
};
use serde::Serialize;

use crate::certificate::Certificate;

/// Environment variable capping the worker pool.
pub const THREADS_ENV: &str = "PACHROM_THREADS";

/// An error caused by the caller (bad flags, unreadable input); exit 2.
#[derive(Debug)]
pub struct UsageError(pub anyhow::Error);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:#}", self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage<E: Into<anyhow::Error>>(e: E) -> anyhow::Error {
    anyhow::Error::new(UsageError(e.into()))
}

#[derive(Debug, Parser)]
#[command(name = "pachrom", version, about = "Complete edge-colorings of complete graphs from projective planes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Kind {
    /// ceil(q/2)(q^2+q+1) colors, every class connected
    Theorem3,
    /// q^3+2q-3 colors, q a power of 2
    Theorem5,
    /// connected coloring of the largest plane fitting in K_n
    BestConnected,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum SearchMode {
    Pseudoachromatic,
    Connected,
}

impl From<SearchMode> for Mode {
    fn from(m: SearchMode) -> Self {
        match m {
            SearchMode::Pseudoachromatic => Mode::Pseudoachromatic,
            SearchMode::Connected => Mode::Connected,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ExportFormat {
    Dot,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a coloring and write its certificate
    Construct {
        kind: Kind,
        #[arg(long)]
        q: Option<u32>,
        /// Order of the complete graph (best-connected only)
        #[arg(long)]
        n: Option<usize>,
        /// Certificate path; stdout when omitted
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a certificate for completeness (and connectedness)
    Verify {
        path: PathBuf,
        /// Also require every color class to be connected
        #[arg(long)]
        connected: bool,
        /// Machine-readable report
        #[arg(long)]
        json: bool,
    },
    /// Upper bounds and best known lower bound on the connected index
    Bounds {
        #[arg(long, conflicts_with = "range", required_unless_present = "range")]
        n: Option<u64>,
        /// Inclusive range `a..b`
        #[arg(long)]
        range: Option<String>,
        #[arg(long)]
        csv: bool,
    },
    /// Exact index of K_n by branch and bound
    Search {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "pseudoachromatic")]
        mode: SearchMode,
        /// Time budget in seconds
        #[arg(long, default_value_t = 60.0)]
        budget: f64,
        /// Disable symmetry breaking
        #[arg(long)]
        no_symmetry: bool,
        /// Write the best witness as a certificate
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Exact values for n = 2..=max-n next to the published tables
    Table {
        #[arg(long)]
        max_n: usize,
        /// Budget per search in seconds
        #[arg(long, default_value_t = 60.0)]
        budget: f64,
    },
    /// Dump a certificate as a colorized DOT graph or CSV edge list
    Export {
        path: PathBuf,
        #[arg(long, value_enum)]
        format: ExportFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Convert a CSV edge list back into a certificate
    Import {
        path: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the point sets of the lines of PG(2, q)
    Plane {
        #[arg(long)]
        q: u32,
        /// Print the axiom check instead of the incidence lists
        #[arg(long)]
        validate: bool,
    },
}

/// Applies the worker cap from [`THREADS_ENV`], if set.
pub fn init_threads() -> anyhow::Result<()> {
    if let Ok(v) = std::env::var(THREADS_ENV) {
        let n: usize = v.trim().parse().map_err(|_| usage(anyhow!("{THREADS_ENV} must be a positive integer, got {v:?}")))?;
        if n == 0 {
            return Err(usage(anyhow!("{THREADS_ENV} must be positive")));
        }
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().ok();
    }
    Ok(())
}

pub fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Construct { kind, q, n, out } => cmd_construct(kind, q, n, out.as_deref()),
        Command::Verify { path, connected, json } => cmd_verify(&path, connected, json),
        Command::Bounds { n, range, csv } => cmd_bounds(n, range.as_deref(), csv),
        Command::Search { n, mode, budget, no_symmetry, witness } => {
            cmd_search(n, mode.into(), budget, !no_symmetry, witness.as_deref())
        }
        Command::Table { max_n, budget } => cmd_table(max_n, budget),
        Command::Export { path, format, out } => cmd_export(&path, format, out.as_deref()),
        Command::Import { path, out } => cmd_import(&path, out.as_deref()),
        Command::Plane { q, validate } => cmd_plane(q, validate),
    }
}

fn emit(text: &str, out: Option<&Path>) -> anyhow::Result<()> {
    match out {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn histogram_text(h: &BTreeMap<usize, usize>) -> String {
    h.iter().map(|(size, count)| format!("{count}x{size}")).collect::<Vec<_>>().join(" ")
}

fn budget(secs: f64) -> anyhow::Result<Duration> {
    Duration::try_from_secs_f64(secs).map_err(|e| usage(anyhow!("invalid budget {secs}: {e}")))
}

fn build(kind: Kind, q: Option<u32>, n: Option<usize>) -> anyhow::Result<Construction> {
    let need_q = || q.ok_or_else(|| usage(anyhow!("--q is required for this construction")));
    let built = match kind {
        Kind::Theorem3 => connected_coloring(need_q()?),
        Kind::Theorem5 => complete_coloring(need_q()?),
        Kind::BestConnected => {
            let n = match (n, q) {
                (Some(n), _) => n,
                (None, Some(q)) => (q * q + q + 1) as usize,
                (None, None) => return Err(usage(anyhow!("--n or --q is required"))),
            };
            connected_coloring_best(n)
        }
    };
    built.map_err(usage)
}

fn cmd_construct(kind: Kind, q: Option<u32>, n: Option<usize>, out: Option<&Path>) -> anyhow::Result<ExitCode> {
    let c = build(kind, q, n)?;
    let cert = Certificate::from_construction(&c);
    emit(&cert.render(), out)?;
    let summary = format!(
        "n={} k={} classes: {}",
        cert.n,
        cert.k,
        histogram_text(&c.coloring.class_size_histogram())
    );
    // keep stdout a clean certificate when it carries one
    if out.is_some() {
        println!("{summary}");
    } else {
        eprintln!("{summary}");
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Debug, Serialize)]
struct VerifyOutput<'a> {
    pass: bool,
    require_connected: bool,
    construction: &'a str,
    q: Option<u32>,
    report: &'a VerifyReport,
}

/// Verifies a certificate; the line-palette check runs when the certificate
/// carries palettes and a plane order that matches its vertex count.
pub fn verify_certificate(cert: &Certificate) -> anyhow::Result<VerifyReport> {
    let coloring = cert.to_coloring().map_err(usage)?;
    let lines = match (cert.q, cert.partition()) {
        (Some(q), Some(p)) => {
            let rep = representation_for(q).map_err(usage)?;
            (rep.n == cert.n && rep.line_count() == p.classes.len()).then_some((rep, p))
        }
        _ => None,
    };
    Ok(verify(&coloring, lines.as_ref().map(|(r, p)| (r, p)))?)
}

fn cmd_verify(path: &Path, require_connected: bool, json: bool) -> anyhow::Result<ExitCode> {
    let cert = Certificate::load(path).map_err(usage)?;
    let report = verify_certificate(&cert)?;
    let palettes_ok = report.line_ownership.as_ref().map_or(true, |l| !l.inconsistent);
    let pass = report.complete.complete && (!require_connected || report.connected.connected) && palettes_ok;
    if json {
        let out = VerifyOutput { pass, require_connected, construction: &cert.construction, q: cert.q, report: &report };
        println!("{}", serde_json::to_string_pretty(&out)?);
    } else {
        let q = cert.q.map_or_else(|| "-".into(), |q| q.to_string());
        println!("n={} k={} construction={} q={}", report.n, report.k, cert.construction, q);
        match report.complete.witness {
            None => println!("complete: yes"),
            Some((a, b)) => println!("complete: no (colors {a} and {b} never meet)"),
        }
        match report.connected.witness {
            None => println!("connected: yes"),
            Some(c) => println!("connected: no (color {c} is not connected)"),
        }
        println!("class sizes: {}", histogram_text(&report.class_sizes));
        if !report.unused_colors.is_empty() {
            println!("unused colors: {:?}", report.unused_colors);
        }
        if let Some(l) = &report.line_ownership {
            match l.witness {
                None => println!("line palettes owned: yes"),
                Some((line, c)) => println!("line palettes owned: no (line {line} does not own color {c})"),
            }
        }
        println!("verdict: {}", if pass { "PASS" } else { "FAIL" });
    }
    Ok(if pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

/// Parses `a..b` or `a..=b`, both inclusive.
pub fn parse_range(s: &str) -> anyhow::Result<(u64, u64)> {
    let (a, b) = s.split_once("..").ok_or_else(|| anyhow!("expected a..b, got {s:?}"))?;
    let b = b.strip_prefix('=').unwrap_or(b);
    let a: u64 = a.trim().parse().with_context(|| format!("range start {a:?}"))?;
    let b: u64 = b.trim().parse().with_context(|| format!("range end {b:?}"))?;
    if a > b {
        return Err(anyhow!("empty range {s:?}"));
    }
    Ok((a, b))
}

#[derive(Debug, Serialize)]
struct BoundRow {
    n: u64,
    theorem1_bound: u64,
    x_star: u64,
    x0: f64,
    theorem2_value: f64,
    best_lower_q: Option<u32>,
    best_lower_value: Option<u64>,
}

impl From<BoundReport64> for BoundRow {
    fn from(r: BoundReport64) -> Self {
        BoundRow {
            n: r.n,
            theorem1_bound: r.theorem1_bound,
            x_star: r.x_star,
            x0: r.x0,
            theorem2_value: r.theorem2_value,
            best_lower_q: r.best_lower.map(|b| b.0),
            best_lower_value: r.best_lower.map(|b| b.1),
        }
    }
}

fn cmd_bounds(n: Option<u64>, range: Option<&str>, csv: bool) -> anyhow::Result<ExitCode> {
    let (a, b) = match (n, range) {
        (Some(n), _) => (n, n),
        (None, Some(r)) => parse_range(r).map_err(usage)?,
        (None, None) => return Err(usage(anyhow!("--n or --range is required"))),
    };
    if a < 2 {
        return Err(usage(anyhow!("n must be at least 2")));
    }
    let rows: Vec<BoundRow> = (a..=b).map(|n| bound_report::<f64>(n).into()).collect();
    if csv {
        let mut w = csv::Writer::from_writer(std::io::stdout());
        for r in &rows {
            w.serialize(r)?;
        }
        w.flush()?;
    } else {
        println!("{:>6} {:>14} {:>6} {:>12} {:>16} {:>12}", "n", "theorem1_bound", "x_star", "x0", "theorem2_value", "best_lower");
        for r in &rows {
            let best = match (r.best_lower_q, r.best_lower_value) {
                (Some(q), Some(v)) => format!("({q}, {v})"),
                _ => "-".into(),
            };
            println!(
                "{:>6} {:>14} {:>6} {:>12.6} {:>16.6} {:>12}",
                r.n, r.theorem1_bound, r.x_star, r.x0, r.theorem2_value, best
            );
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn mode_name(mode: Mode) -> &'static str {
    match mode {
        Mode::Pseudoachromatic => "pseudoachromatic",
        Mode::Connected => "connected",
    }
}

fn cmd_search(n: usize, mode: Mode, secs: f64, symmetry: bool, witness: Option<&Path>) -> anyhow::Result<ExitCode> {
    let mut config = SearchConfig::new(n, mode).with_budget(budget(secs)?);
    config.symmetry_breaking = symmetry;
    let r = exact_index(&config).map_err(usage)?;
    let known = pachrom_core::search::known_value(n, mode).map_or_else(|| "-".into(), |v| v.to_string());
    match r.status {
        Status::Exact => println!(
            "n={n} mode={} value={} status=exact elapsed={:.3}s known={known}",
            mode_name(mode),
            r.lower,
            r.elapsed.as_secs_f64()
        ),
        Status::Timeout => println!(
            "n={n} mode={} bracket=[{}, {}] status=timeout elapsed={:.3}s known={known}",
            mode_name(mode),
            r.lower,
            r.upper,
            r.elapsed.as_secs_f64()
        ),
    }
    if let Some(p) = witness {
        Certificate::from_coloring(&r.witness, None).save(p).with_context(|| format!("writing {}", p.display()))?;
    }
    Ok(ExitCode::SUCCESS)
}

fn bracket(lo: u32, hi: u32) -> String {
    if lo == hi {
        lo.to_string()
    } else {
        format!("[{lo}, {hi}]")
    }
}

fn cmd_table(max_n: usize, secs: f64) -> anyhow::Result<ExitCode> {
    let rows = verify_table_prefix(max_n, budget(secs)?).map_err(usage)?;
    println!("{:>3} {:>12} {:>8} {:>16} {:>8}  status", "n", "connected", "known", "pseudoachromatic", "known");
    let opt = |v: Option<u32>| v.map_or_else(|| "-".into(), |v| v.to_string());
    for r in &rows {
        let status = if r.matches() {
            "match"
        } else if r.consistent() {
            "bracket"
        } else {
            "MISMATCH"
        };
        println!(
            "{:>3} {:>12} {:>8} {:>16} {:>8}  {status}",
            r.n,
            bracket(r.connected_lower, r.connected_upper),
            opt(r.connected_known),
            bracket(r.pseudo_lower, r.pseudo_upper),
            opt(r.pseudo_known)
        );
    }
    if rows.iter().all(|r| r.matches()) {
        println!("all match");
    }
    Ok(if rows.iter().all(|r| r.consistent()) { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn cmd_export(path: &Path, format: ExportFormat, out: Option<&Path>) -> anyhow::Result<ExitCode> {
    let cert = Certificate::load(path).map_err(usage)?;
    let text = match format {
        ExportFormat::Dot => export::to_dot(&cert),
        ExportFormat::Csv => export::to_csv(&cert)?,
    };
    emit(&text, out)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_import(path: &Path, out: Option<&Path>) -> anyhow::Result<ExitCode> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display())).map_err(usage)?;
    let cert = export::from_csv(&text).map_err(usage)?;
    emit(&cert.render(), out)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_plane(q: u32, validate: bool) -> anyhow::Result<ExitCode> {
    let field = FieldContext::new(q).map_err(usage)?;
    let plane = build_plane(&field);
    if !validate {
        print!("{}", plane.dump_text());
        return Ok(ExitCode::SUCCESS);
    }
    let report = validate_axioms(&plane);
    println!("{}", serde_json::to_string_pretty(&report)?);
    Ok(if report.all_pass() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

