use std::collections::BTreeSet;
use std::fs::File;
use std::io::{self, BufRead, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use fishgraph::canon::canonical_form;
use fishgraph::families::{book_graph, FamilyKind, FamilySpec};
use fishgraph::forbidden::contains_h_l3;
use fishgraph::io::{from_graph6, to_graph6};
use fishgraph::partitions::{identity_checks, neighborhood_decomposition, star_neighborhood_check, PartitionError};
use fishgraph::poly::largest_real_root;
use fishgraph::report::CheckStatus;
use fishgraph::search::{
    default_mode, extremal_scan_rows, verify_theorem_at, EnumConfig, ScanPredicate, ScanRow, SearchConfig,
    SearchError, TheoremReport, VerifyMode,
};
use fishgraph::spectral::{spectral_radius, SpectralConfig, DEFAULT_MAX_ITERATIONS, DEFAULT_TOLERANCE};
use fishgraph::Graph;

/// Largest enumeration budget accepted without --force.
const BUDGET_CAP: usize = 12;

const AFTER_HELP: &str = "\
Exit codes: 0 pass, 1 check failed, 2 usage or input error, 3 hypothesis not met.

CSV schemas:
  scan   --out: m,graph6,lambda,is_h43_free,is_connected
  verify --out: m,mode,observational,lambda_tilde,book_lambda,maximizer_graph6,maximizer_lambda,maximizer_is_extremal,checked,status";

/// Spectral checks for H(4,3)-free graphs with a given number of edges.
#[derive(Parser, Debug)]
#[command(name = "fishgraph", version, after_help = AFTER_HELP)]
struct Cli {
    #[command(flatten)]
    run: RunConfig,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct RunConfig {
    /// Eigen-equation residual at which power iteration stops.
    #[arg(long, global = true, default_value_t = DEFAULT_TOLERANCE)]
    tol: f64,
    /// Power-iteration cap.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_ITERATIONS)]
    max_iterations: usize,
    /// Largest edge count enumerated exhaustively.
    #[arg(long, global = true, default_value_t = BUDGET_CAP)]
    budget: usize,
    /// Allow budgets above 12.
    #[arg(long, global = true)]
    force: bool,
    /// Worker threads for scans (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    workers: usize,
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

impl RunConfig {
    fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0) {
            bail!("--tol must be positive, got {}", self.tol);
        }
        if self.budget > BUDGET_CAP && !self.force {
            bail!("--budget {} exceeds {BUDGET_CAP}; pass --force to allow it", self.budget);
        }
        Ok(())
    }

    fn spectral(&self) -> SpectralConfig {
        SpectralConfig { tol: self.tol, max_iterations: self.max_iterations }
    }

    fn search(&self) -> SearchConfig {
        SearchConfig {
            enumeration: EnumConfig::with_budget(self.budget),
            spectral: self.spectral(),
            seed: self.seed,
        }
    }

    fn gate(&self, m: usize) -> Result<()> {
        if m > self.budget && !self.force {
            bail!("m = {m} exceeds the enumeration budget {}; pass --force (and --budget) to enumerate it", self.budget);
        }
        Ok(())
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print a family member as graph6, its spectral radius, or its polynomial.
    Family(FamilyCmd),
    /// Run one checker on a graph6 string ("-" or omitted reads stdin).
    Check(CheckCmd),
    /// Check the spectral bound for odd m, exhaustively or against the rival battery.
    Verify(VerifyCmd),
    /// Scan every graph with m edges and report the spectral maximizer.
    Scan(ScanCmd),
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum Kind {
    Book,
    TheoremExtremal,
    SMinus,
}

impl From<Kind> for FamilyKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Book => FamilyKind::Book,
            Kind::TheoremExtremal => FamilyKind::TheoremExtremal,
            Kind::SMinus => FamilyKind::SMinus,
        }
    }
}

#[derive(Args, Debug)]
struct FamilyCmd {
    kind: Kind,
    m: usize,
    #[arg(long, group = "what")]
    graph6: bool,
    #[arg(long, group = "what")]
    lambda: bool,
    #[arg(long, group = "what")]
    poly: bool,
}

#[derive(Args, Debug)]
#[command(group = clap::ArgGroup::new("checker").required(true))]
struct CheckCmd {
    graph6: Option<String>,
    /// Search for H(4,3) and print a witness.
    #[arg(long, group = "checker")]
    h43: bool,
    /// Spectral radius with residual and iteration count.
    #[arg(long, group = "checker")]
    spectral: bool,
    /// Counting identity and eigen-equation expansions around u*.
    #[arg(long, group = "checker")]
    identities: bool,
    /// Star structure of neighborhoods spanning at least 7 edges.
    #[arg(long, group = "checker")]
    lemma23: bool,
}

#[derive(Args, Debug)]
struct VerifyCmd {
    /// A single odd m, or an inclusive range "a..b" (odd values are used).
    m: String,
    /// Exclude the book graph from the rivals (always on; the bound is for non-book graphs).
    #[arg(long)]
    exclude_book: bool,
    /// Compare against the rival battery instead of enumerating.
    #[arg(long)]
    battery: bool,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write the full reports as JSON.
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum Predicate {
    Any,
    H43Free,
    ConnectedH43Free,
}

#[derive(Args, Debug)]
struct ScanCmd {
    m: usize,
    #[arg(long, value_enum, default_value_t = Predicate::H43Free)]
    predicate: Predicate,
    /// Exclude a graph (graph6, any labeling); repeatable.
    #[arg(long)]
    exclude: Vec<String>,
    #[arg(long)]
    exclude_book: bool,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Outcome {
    Pass,
    Fail,
    Skipped,
}

impl Outcome {
    fn code(self) -> u8 {
        match self {
            Outcome::Pass => 0,
            Outcome::Fail => 1,
            Outcome::Skipped => 3,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(outcome) => ExitCode::from(outcome.code()),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<Outcome> {
    cli.run.validate()?;
    if cli.run.workers > 0 {
        rayon::ThreadPoolBuilder::new().num_threads(cli.run.workers).build_global()?;
    }
    let mut out = io::stdout().lock();
    match cli.command {
        Command::Family(c) => family(&c, &mut out),
        Command::Check(c) => check(&c, &cli.run, &mut out),
        Command::Verify(c) => verify(&c, &cli.run, &mut out),
        Command::Scan(c) => scan(&c, &cli.run, &mut out),
    }
}

fn family(c: &FamilyCmd, out: &mut impl Write) -> Result<Outcome> {
    let spec = FamilySpec::new(c.kind.into(), c.m)?;
    if c.poly {
        writeln!(out, "{}", spec.lambda_poly())?;
    } else if c.lambda {
        let lambda = largest_real_root(&spec.lambda_poly(), None)?;
        writeln!(out, "{lambda:.12}")?;
    } else {
        writeln!(out, "{}", to_graph6(&spec.graph()?))?;
    }
    Ok(Outcome::Pass)
}

fn read_graph(arg: Option<&str>) -> Result<Graph> {
    let text = match arg {
        Some(s) if s != "-" => s.to_string(),
        _ => io::stdin()
            .lock()
            .lines()
            .map_while(|l| l.ok())
            .find(|l| !l.trim().is_empty())
            .ok_or_else(|| anyhow!("no graph6 input on stdin"))?,
    };
    from_graph6(text.trim()).with_context(|| format!("invalid graph6 {:?}", text.trim()))
}

fn check(c: &CheckCmd, run: &RunConfig, out: &mut impl Write) -> Result<Outcome> {
    let g = read_graph(c.graph6.as_deref())?;
    if c.h43 {
        return Ok(match contains_h_l3(&g, 4)? {
            Some(w) => {
                writeln!(out, "CONTAINS H(4,3): witness apex {} triangle {:?} cycle {:?}", w.apex, w.triangle, w.cycle)?;
                Outcome::Fail
            }
            None => {
                writeln!(out, "H(4,3)-free")?;
                Outcome::Pass
            }
        });
    }
    if c.spectral {
        let r = spectral_radius(&g, &run.spectral())?;
        writeln!(out, "lambda {:.12}", r.lambda)?;
        writeln!(out, "residual {:e}", r.residual)?;
        writeln!(out, "iterations {}", r.iterations)?;
        writeln!(out, "connected {}", r.connected)?;
        return Ok(Outcome::Pass);
    }
    if c.identities {
        let d = match neighborhood_decomposition(&g, &run.spectral()) {
            Ok(d) => d,
            Err(PartitionError::Disconnected) => {
                writeln!(out, "SKIP: identities need a connected graph")?;
                return Ok(Outcome::Skipped);
            }
            Err(e) => return Err(e.into()),
        };
        let tol = 10.0 * run.tol;
        let r = identity_checks(&g, &d, tol);
        let mark = |ok: bool| if ok { "pass" } else { "FAIL" };
        writeln!(out, "u* {} lambda {:.12}", d.u_star, d.lambda)?;
        writeln!(out, "|U| {} |U0| {} |U+| {} |W| {}", d.u.len(), d.u0.len(), d.u_plus.len(), d.w.len())?;
        writeln!(
            out,
            "edge count m = |U| + e(U+) + e(U,W) + e(W): {} = {} {}",
            r.m,
            r.counted_edges,
            mark(r.edge_count_exact && r.e_u_matches)
        )?;
        writeln!(out, "lambda x_u*: deviation {:e} {}", r.first_order, mark(r.first_order <= tol))?;
        writeln!(out, "lambda^2 x_u*: deviation {:e} {}", r.second_order, mark(r.second_order <= tol))?;
        writeln!(out, "(lambda^2 - lambda) x_u*: deviation {:e} {}", r.shifted, mark(r.shifted <= tol))?;
        return Ok(if r.pass { Outcome::Pass } else { Outcome::Fail });
    }
    match star_neighborhood_check(&g) {
        Err(PartitionError::NotH43Free(w)) => {
            writeln!(out, "SKIP: graph contains H(4,3) at apex {}", w.apex)?;
            Ok(Outcome::Skipped)
        }
        Err(e) => Err(e.into()),
        Ok(v) if v.is_empty() => {
            writeln!(out, "PASS: every neighborhood with at least 7 edges is a union of stars and isolated vertices")?;
            Ok(Outcome::Pass)
        }
        Ok(v) => {
            for s in &v {
                writeln!(out, "FAIL: N({}) spans {} edges; component {:?} is not a star", s.vertex, s.neighborhood_edges, s.component)?;
            }
            Ok(Outcome::Fail)
        }
    }
}

fn parse_range(s: &str) -> Result<Vec<usize>> {
    if let Some((a, b)) = s.split_once("..") {
        let a: usize = a.trim().parse().with_context(|| format!("bad range start in {s:?}"))?;
        let b: usize = b.trim().trim_start_matches('=').parse().with_context(|| format!("bad range end in {s:?}"))?;
        if a > b {
            bail!("empty range {s:?}");
        }
        let odd: Vec<usize> = (a..=b).filter(|m| m % 2 == 1).collect();
        if odd.is_empty() {
            bail!("range {s:?} has no odd m");
        }
        Ok(odd)
    } else {
        let m: usize = s.trim().parse().with_context(|| format!("bad m {s:?}"))?;
        if m.is_multiple_of(2) {
            bail!("m must be odd, got {m}; the even-m family is available as `family s-minus`");
        }
        Ok(vec![m])
    }
}

fn verify(c: &VerifyCmd, run: &RunConfig, out: &mut impl Write) -> Result<Outcome> {
    let ms = parse_range(&c.m)?;
    let cfg = run.search();
    let mut plan = Vec::new();
    for &m in &ms {
        let mode = if c.battery { VerifyMode::Battery } else { default_mode(m, &cfg) };
        if mode == VerifyMode::Battery && !c.battery {
            bail!("m = {m} exceeds the enumeration budget {}; rerun with --battery", run.budget);
        }
        plan.push((m, mode));
    }
    let mut reports: Vec<TheoremReport> = Vec::new();
    for (m, mode) in plan {
        let r = verify_theorem_at(m, mode, &cfg)?;
        writeln!(out, "m={m} {}", r.summary)?;
        reports.push(r);
    }
    if let Some(path) = &c.out {
        let mut w = csv::Writer::from_path(path).with_context(|| format!("cannot write {}", path.display()))?;
        w.write_record([
            "m",
            "mode",
            "observational",
            "lambda_tilde",
            "book_lambda",
            "maximizer_graph6",
            "maximizer_lambda",
            "maximizer_is_extremal",
            "checked",
            "status",
        ])?;
        for r in &reports {
            w.write_record([
                r.m.to_string(),
                format!("{:?}", r.mode).to_lowercase(),
                r.observational.to_string(),
                format!("{:.12}", r.lambda_tilde),
                format!("{:.12}", r.book_lambda),
                r.maximizer_graph6.clone(),
                format!("{:.12}", r.maximizer_lambda),
                r.maximizer_is_extremal.to_string(),
                r.checked.to_string(),
                r.status.label().to_string(),
            ])?;
        }
        w.flush()?;
    }
    if let Some(path) = &c.json {
        write_json(path, &reports)?;
    }
    let failed = reports.iter().any(|r| matches!(r.status, CheckStatus::Fail));
    Ok(if failed { Outcome::Fail } else { Outcome::Pass })
}

fn write_json<T: serde::Serialize>(path: &PathBuf, value: &T) -> Result<()> {
    let f = File::create(path).with_context(|| format!("cannot write {}", path.display()))?;
    serde_json::to_writer_pretty(f, value)?;
    Ok(())
}

fn scan(c: &ScanCmd, run: &RunConfig, out: &mut impl Write) -> Result<Outcome> {
    run.gate(c.m)?;
    let mut exclusions = BTreeSet::new();
    for s in &c.exclude {
        let g = from_graph6(s.trim()).with_context(|| format!("invalid graph6 {s:?} in --exclude"))?;
        exclusions.insert(canonical_form(&g));
    }
    if c.exclude_book {
        exclusions.insert(canonical_form(&book_graph(c.m)?));
    }
    let predicate = match c.predicate {
        Predicate::Any => ScanPredicate::Any,
        Predicate::H43Free => ScanPredicate::H43Free,
        Predicate::ConnectedH43Free => ScanPredicate::ConnectedH43Free,
    };
    let mut cfg = run.search();
    cfg.enumeration.budget = cfg.enumeration.budget.max(c.m);
    let (record, rows) = match extremal_scan_rows(c.m, &exclusions, predicate, &cfg) {
        Err(SearchError::NoCandidates { m }) => bail!("no candidates with {m} edges"),
        other => other?,
    };
    writeln!(
        out,
        "m={} scanned={} h43_free={} candidates={} maximizer={} lambda={:.12} runtime={:.3}s",
        record.m,
        record.scanned,
        record.h43_free_count,
        record.candidates,
        to_graph6(&record.best),
        record.lambda,
        record.runtime.as_secs_f64()
    )?;
    if let Some(path) = &c.out {
        let mut w = csv::Writer::from_path(path).with_context(|| format!("cannot write {}", path.display()))?;
        w.write_record(ScanRow::HEADER)?;
        for r in &rows {
            w.write_record(r.record())?;
        }
        w.flush()?;
    }
    if let Some(path) = &c.json {
        write_json(path, &record)?;
    }
    Ok(Outcome::Pass)
}
