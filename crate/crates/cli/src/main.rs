use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use cubicdom::graph::{girth, graph6_decode};
use cubicdom::solver::{mdom_exact, SolverError, DEFAULT_BUDGET};
use cubicdom::Rational12;
use cubicdom_cli::analyze::{run_analyze, AnalyzeOptions};
use cubicdom_cli::campaign::{run_campaign, CampaignOptions, Filters};
use cubicdom_cli::input::{generate, parse_lengths, read_graph6_file, GenSpec};
use cubicdom_cli::reduce::{parse_order, run_reduce};
use cubicdom_cli::SCHEMA_VERSION;
use serde::Serialize;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "cubicdom", version, about = "Domination in subcubic graphs")]
struct Cli {
    /// Worker threads for per-graph parallelism (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check gamma <= bound * n over a graph6 file or seeded random cubic graphs.
    Verify(VerifyArgs),
    /// Run the reduction rules to a fixpoint and certify emptied graphs.
    Reduce(ReduceArgs),
    /// Dump the colored multigraph, path scores and cycle discharge.
    Analyze(AnalyzeArgs),
    /// Exact marked domination number of one graph6 string.
    Solve(SolveArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// graph6 file, one graph per line.
    #[arg(long, conflicts_with = "gen", required_unless_present = "gen")]
    input: Option<PathBuf>,
    /// Generator spec `n=N,count=C,seed=S[,attempts=A]`.
    #[arg(long)]
    gen: Option<GenSpec>,
    #[arg(long, default_value_t = 0)]
    min_girth: usize,
    /// Comma-separated cycle lengths to exclude, e.g. `7,8`.
    #[arg(long, default_value = "")]
    forbid: String,
    #[arg(long)]
    bipartite: bool,
    /// Skip graphs that are not 3-regular.
    #[arg(long)]
    cubic_only: bool,
    #[arg(long, default_value = "1/3")]
    bound: Rational12,
    /// Branch-node budget of the exact solver per graph.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// JSON report path; a CSV summary is written next to it.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Leave `runtime_ms` empty so reports are byte-stable.
    #[arg(long)]
    no_timing: bool,
}

#[derive(Args)]
struct ReduceArgs {
    #[arg(long)]
    input: PathBuf,
    /// `default` or comma-separated rule ids.
    #[arg(long, default_value = "default")]
    order: String,
    /// Directory receiving one trace JSON per graph.
    #[arg(long)]
    trace_dir: Option<PathBuf>,
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Args)]
struct AnalyzeArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    dump_multigraph: bool,
    #[arg(long)]
    score_paths: bool,
    #[arg(long)]
    discharge: bool,
    /// Analyze the residual of the default reduction.
    #[arg(long)]
    reduce_first: bool,
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long)]
    graph6: String,
    /// Comma-separated marked vertices.
    #[arg(long, default_value = "")]
    marked: String,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
}

fn emit<T: Serialize>(value: &T, path: Option<&Path>) -> Result<()> {
    let text = serde_json::to_string_pretty(value)? + "\n";
    match path {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn verify(a: VerifyArgs) -> Result<i32> {
    let forbidden = parse_lengths(&a.forbid)?;
    let (source, items) = match (&a.input, &a.gen) {
        (Some(path), _) => (path.display().to_string(), read_graph6_file(path)?),
        (None, Some(spec)) => (format!("gen:{spec}"), generate(spec, a.min_girth, &forbidden)),
        (None, None) => bail!("verify needs --input or --gen"),
    };
    let opts = CampaignOptions {
        filters: Filters {
            min_girth: a.min_girth,
            forbidden,
            bipartite: a.bipartite,
            cubic_only: a.cubic_only,
        },
        bound: a.bound,
        budget: a.budget,
        timing: !a.no_timing,
    };
    let report = run_campaign(&source, &items, &opts);
    emit(&report, a.report.as_deref())?;
    if let Some(path) = &a.report {
        report.write_csv(&path.with_extension("csv"))?;
    }
    let s = &report.summary;
    eprintln!(
        "{} evaluated, {} violations, {} budget-flagged, {} filtered, {} generation failures",
        s.count,
        s.violations.len(),
        s.budget_flagged.len(),
        s.filtered,
        s.generation_failures
    );
    Ok(report.exit_code())
}

fn reduce(a: ReduceArgs) -> Result<i32> {
    let order = parse_order(&a.order)?;
    let items = read_graph6_file(&a.input)?;
    let report = run_reduce(&items, &order, a.trace_dir.as_deref())?;
    emit(&report, a.report.as_deref())?;
    eprintln!("{} graphs, {} emptied", report.summary.count, report.summary.emptied);
    Ok(report.exit_code())
}

fn analyze(a: AnalyzeArgs) -> Result<i32> {
    let items = read_graph6_file(&a.input)?;
    let opts = AnalyzeOptions {
        dump_multigraph: a.dump_multigraph,
        score_paths: a.score_paths,
        discharge: a.discharge,
        reduce_first: a.reduce_first,
    };
    emit(&run_analyze(&items, &opts), a.report.as_deref())?;
    Ok(0)
}

#[derive(Serialize)]
struct SolveOutput {
    schema_version: u32,
    n: usize,
    girth: Option<usize>,
    gamma: usize,
    witness: Vec<usize>,
    optimal: bool,
    third_bound_holds: bool,
}

fn solve(a: SolveArgs) -> Result<i32> {
    let mut g = graph6_decode(a.graph6.trim())?;
    for v in parse_lengths(&a.marked)? {
        if v >= g.n() {
            bail!("marked vertex {v} out of range");
        }
        g.set_marked(v, true);
    }
    let (w, code) = match mdom_exact(&g, a.budget) {
        Ok(w) => (w, 0),
        Err(SolverError::BudgetExceeded { incumbent }) => (incumbent, 2),
        Err(e) => return Err(e.into()),
    };
    let out = SolveOutput {
        schema_version: SCHEMA_VERSION,
        n: g.n(),
        girth: girth(&g).finite(),
        third_bound_holds: 3 * w.size <= g.n(),
        gamma: w.size,
        witness: w.set,
        optimal: w.optimal,
    };
    emit(&out, None)?;
    Ok(code)
}

fn run(cli: Cli) -> Result<i32> {
    if let Some(jobs) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .context("configuring the thread pool")?;
    }
    match cli.command {
        Command::Verify(a) => verify(a),
        Command::Reduce(a) => reduce(a),
        Command::Analyze(a) => analyze(a),
        Command::Solve(a) => solve(a),
    }
}

/// Usage and runtime errors exit with 3, keeping 1 and 2 for findings.
const ERROR_EXIT: u8 = 3;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(ERROR_EXIT)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(ERROR_EXIT)
        }
    }
}
