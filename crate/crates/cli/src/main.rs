//! `spanner`: generate point sets, build and check spanners, run sweeps.

mod bench;
mod files;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use spanner_core::verify::{audit_one_edge_per_pair, audit_wspd_parts, COVERAGE_AUDIT_CAP};
use spanner_core::wspd::separation_for_stretch;
use spanner_core::{
    baseline, build_split_tree, compute_wspd, generate, greedy_spanner_build, max_dilation_exact, max_dilation_sampled,
    GeneratorSpec, GreedyConfig, PointKind, PruneRule, SpannerError, SpannerGraph, ThetaConfig,
};

use crate::files::{read_edges, read_points, write_atomic};

/// Relative slack allowed on dilation checks for rounding in path sums.
const DILATION_SLACK: f64 = 1e-9;

#[derive(Parser)]
#[command(name = "spanner", version, about = "Geometric t-spanners: greedy over a WSPD, baselines, verification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a seeded random point set.
    Generate(GenerateArgs),
    /// Build a spanner and write its edge file.
    Build(BuildArgs),
    /// Check the dilation of an edge file.
    Verify(VerifyArgs),
    /// Print edge count, maximum degree and total weight.
    Stats(StatsArgs),
    /// Run an n- or t-sweep and write one CSV row per run.
    Bench(bench::BenchArgs),
    /// Audit the WSPD of a point set and the one-edge-per-pair property.
    Audit(AuditArgs),
    #[command(hide = true)]
    BenchOne(bench::BenchOneArgs),
}

#[derive(Clone, Copy, ValueEnum)]
pub enum KindArg {
    Uniform,
    Clustered,
    Gamma,
}

impl From<KindArg> for PointKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Uniform => PointKind::Uniform,
            KindArg::Clustered => PointKind::Clustered,
            KindArg::Gamma => PointKind::Gamma,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Algo {
    Greedy,
    GreedyNaive,
    Theta,
    Wspd,
}

impl Algo {
    pub fn name(self) -> &'static str {
        match self {
            Algo::Greedy => "greedy",
            Algo::GreedyNaive => "greedy-naive",
            Algo::Theta => "theta",
            Algo::Wspd => "wspd",
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum PruneArg {
    Basic,
    Sharpened,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long, value_enum)]
    kind: KindArg,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 0.75)]
    gamma_shape: f64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct BuildArgs {
    #[arg(long, value_enum)]
    algo: Algo,
    /// Stretch factor (greedy, greedy-naive, wspd).
    #[arg(long)]
    t: Option<f64>,
    /// Cone count (theta).
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    points: PathBuf,
    #[arg(long)]
    out_edges: PathBuf,
    /// Use plain Dijkstra instead of A*.
    #[arg(long)]
    no_astar: bool,
    /// Disable the saved-path source skip.
    #[arg(long)]
    no_path_skip: bool,
    /// Disable settling targets from nearby settled targets.
    #[arg(long)]
    no_target_cover: bool,
    /// Go straight to the exact search for every source.
    #[arg(long)]
    no_quick_search: bool,
    /// Always recompute affected pairs in full.
    #[arg(long)]
    no_recheck: bool,
    #[arg(long, value_enum, default_value = "sharpened")]
    prune: PruneArg,
    /// Write build statistics as `name value` lines.
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    points: PathBuf,
    #[arg(long)]
    edges: PathBuf,
    #[arg(long)]
    t: f64,
    /// Check all pairs (default).
    #[arg(long, conflicts_with = "sample")]
    exact: bool,
    /// Check this many random pairs instead.
    #[arg(long)]
    sample: Option<usize>,
    #[arg(long, default_value_t = 0, requires = "sample")]
    seed: u64,
}

#[derive(Args)]
struct StatsArgs {
    #[arg(long)]
    points: PathBuf,
    #[arg(long)]
    edges: PathBuf,
}

#[derive(Args)]
struct AuditArgs {
    #[arg(long)]
    points: PathBuf,
    #[arg(long)]
    t: f64,
    /// Audit this edge file instead of a fresh greedy build.
    #[arg(long)]
    edges: Option<PathBuf>,
}

/// A failure with its exit code.
pub struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }

    fn check(message: impl Into<String>) -> Self {
        Failure { code: 1, message: message.into() }
    }
}

impl From<SpannerError> for Failure {
    fn from(e: SpannerError) -> Self {
        Failure::usage(e.to_string())
    }
}

type CliResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Generate(a) => run_generate(a),
        Command::Build(a) => run_build(a),
        Command::Verify(a) => run_verify(a),
        Command::Stats(a) => run_stats(a),
        Command::Bench(a) => bench::run_bench(a),
        Command::Audit(a) => run_audit(a),
        Command::BenchOne(a) => bench::run_bench_one(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run_generate(a: GenerateArgs) -> CliResult {
    let spec = GeneratorSpec { gamma_shape: a.gamma_shape, ..GeneratorSpec::new(a.kind.into(), a.n, a.seed) };
    let ps = generate(&spec)?;
    write_atomic(&a.out, &spanner_core::io::format_points(&ps))
}

pub fn require_t(t: Option<f64>, algo: Algo) -> Result<f64, Failure> {
    t.ok_or_else(|| Failure::usage(format!("--t is required for --algo {}", algo.name())))
}

fn run_build(a: BuildArgs) -> CliResult {
    let ps = read_points(&a.points)?;
    let start = Instant::now();
    let mut report_lines = vec![format!("algo {}", a.algo.name()), format!("n {}", ps.len())];
    let graph: SpannerGraph = match a.algo {
        Algo::Greedy => {
            let t = require_t(a.t, a.algo)?;
            let cfg = GreedyConfig {
                use_astar: !a.no_astar,
                use_saved_path_skip: !a.no_path_skip,
                use_target_cover: !a.no_target_cover,
                use_quick_search: !a.no_quick_search,
                recheck_candidate: !a.no_recheck,
                prune_rule: match a.prune {
                    PruneArg::Basic => PruneRule::Basic,
                    PruneArg::Sharpened => PruneRule::Sharpened,
                },
                ..GreedyConfig::new(t)
            };
            let (g, report) = greedy_spanner_build(&ps, cfg)?;
            let c = report.counters;
            report_lines.push(format!("t {t}"));
            report_lines.push(format!("pair_count {}", report.pair_count));
            for (name, value) in [
                ("closest_pair_calls", c.closest_pair_calls),
                ("recomputations", c.recomputations),
                ("candidate_rechecks", c.candidate_rechecks),
                ("sssp_runs", c.sssp_runs),
                ("skipped_by_coverage", c.skipped_by_coverage),
                ("pairs_pruned_by_distance", c.pairs_pruned_by_distance),
                ("peak_queue_size", c.peak_queue_size),
                ("peak_live_state", c.peak_live_state),
                ("heap_pops", c.heap_pops),
            ] {
                report_lines.push(format!("{name} {value}"));
            }
            g
        }
        Algo::GreedyNaive => {
            let t = require_t(a.t, a.algo)?;
            report_lines.push(format!("t {t}"));
            baseline::greedy_naive(&ps, t)?
        }
        Algo::Theta => {
            let k = a.k.ok_or_else(|| Failure::usage("--k is required for --algo theta"))?;
            report_lines.push(format!("k {k}"));
            baseline::theta_graph(&ps, ThetaConfig { k })?
        }
        Algo::Wspd => {
            let t = require_t(a.t, a.algo)?;
            report_lines.push(format!("t {t}"));
            baseline::wspd_spanner(&ps, t)?
        }
    };
    let elapsed = start.elapsed();
    write_atomic(&a.out_edges, &spanner_core::io::format_edges(ps.len(), &graph.sorted_edges()))?;
    if let Some(path) = a.report {
        let s = graph.stats();
        report_lines.push(format!("edge_count {}", s.edge_count));
        report_lines.push(format!("max_degree {}", s.max_degree));
        report_lines.push(format!("total_weight {}", s.total_weight));
        report_lines.push(format!("wall_time_ms {:.3}", elapsed.as_secs_f64() * 1e3));
        let mut text = report_lines.join("\n");
        text.push('\n');
        write_atomic(&path, &text)?;
    }
    Ok(())
}

fn load_graph(points: &PathBuf, edges: &PathBuf) -> Result<(spanner_core::PointSet, SpannerGraph), Failure> {
    let ps = read_points(points)?;
    let (n, list) = read_edges(edges)?;
    if n != ps.len() {
        return Err(Failure::usage(format!("edge file is for {n} points but the point file has {}", ps.len())));
    }
    let g = SpannerGraph::from_edges(&ps, &list)?;
    Ok((ps, g))
}

fn run_verify(a: VerifyArgs) -> CliResult {
    if !(a.t >= 1.0) || !a.t.is_finite() {
        return Err(Failure::usage(format!("--t must be a finite number >= 1, got {}", a.t)));
    }
    let (ps, g) = load_graph(&a.points, &a.edges)?;
    let report = match a.sample {
        Some(count) => max_dilation_sampled(&g, &ps, count, a.seed)?,
        None => max_dilation_exact(&g, &ps)?,
    };
    let mode = match a.sample {
        Some(count) => format!("sampled {count} seed {}", a.seed),
        None => "exact".to_string(),
    };
    println!("mode {mode}");
    println!("checked_pairs {}", report.checked_pairs);
    println!("max_dilation {}", report.max_dilation);
    if let Some((u, v)) = report.witness {
        println!("witness {u} {v}");
    }
    if report.within(a.t, DILATION_SLACK) {
        println!("result pass");
        Ok(())
    } else {
        println!("result fail");
        Err(Failure::check(format!("dilation {} exceeds t = {}", report.max_dilation, a.t)))
    }
}

fn run_stats(a: StatsArgs) -> CliResult {
    let (_, g) = load_graph(&a.points, &a.edges)?;
    let s = g.stats();
    println!("edge_count {}", s.edge_count);
    println!("max_degree {}", s.max_degree);
    println!("total_weight {}", s.total_weight);
    Ok(())
}

fn run_audit(a: AuditArgs) -> CliResult {
    let ps = read_points(&a.points)?;
    let cfg = GreedyConfig::new(a.t);
    cfg.validate()?;
    let tree = build_split_tree(&ps)?;
    let wspd = compute_wspd(&tree, separation_for_stretch(a.t))?;
    let audit = audit_wspd_parts(&tree, &wspd, COVERAGE_AUDIT_CAP);
    let n = ps.len() as u64;
    println!("pair_count {}", audit.pair_count);
    println!(
        "coverage {} ({} point pairs of {})",
        if audit.exhaustive_coverage { "exhaustive" } else { "count only" },
        audit.covered_pair_total,
        n * (n - 1) / 2
    );
    println!("coverage_violations {}", audit.coverage_violations.len());
    println!("separation_violations {}", audit.separation_violations.len());
    println!("sandwich_violations {}", audit.sandwich_violations.len());
    let edges = match &a.edges {
        Some(path) => {
            let (m, list) = read_edges(path)?;
            if m != ps.len() {
                return Err(Failure::usage(format!("edge file is for {m} points but the point file has {}", ps.len())));
            }
            list
        }
        None => greedy_spanner_build(&ps, cfg)?.0.sorted_edges(),
    };
    let one = audit_one_edge_per_pair(&edges, &tree, &wspd);
    println!("edges_checked {}", one.edges_checked);
    println!("edge_coverage_errors {}", one.coverage_errors.len());
    println!("shared_pairs {}", one.shared.len());
    for &(u, v, count) in one.coverage_errors.iter().take(5) {
        println!("  edge {u} {v} lies in {count} pairs");
    }
    for &(pair, (a1, b1), (a2, b2)) in one.shared.iter().take(5) {
        println!("  pair {pair} holds edges {a1} {b1} and {a2} {b2}");
    }
    if audit.passed(ps.len()) && one.passed() {
        println!("result pass");
        Ok(())
    } else {
        println!("result fail");
        Err(Failure::check("audit failed"))
    }
}
