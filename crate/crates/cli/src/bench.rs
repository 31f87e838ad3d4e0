//! Sweeps. Each instance runs in its own child process (the hidden
//! `bench-one` subcommand), so peak memory is per instance and a crash
//! in one run cannot corrupt another.

use std::path::PathBuf;
use std::process::Command;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use clap::{Args, ValueEnum};
use spanner_core::{baseline, generate, greedy_spanner_build, GeneratorSpec, GreedyConfig, SpannerGraph, ThetaConfig};

use crate::files::write_atomic;
use crate::{require_t, Algo, Failure, KindArg};

pub const CSV_HEADER: [&str; 16] = [
    "algo",
    "kind",
    "n",
    "t",
    "k",
    "seed",
    "edge_count",
    "max_degree",
    "total_weight",
    "wall_time_ms",
    "pair_count",
    "peak_queue",
    "peak_live_state",
    "sssp_runs",
    "peak_memory_bytes",
    "cluster_extent",
];

#[derive(Clone, Copy, ValueEnum)]
pub enum Sweep {
    N,
    T,
}

#[derive(Args)]
pub struct BenchArgs {
    #[arg(long, value_enum)]
    sweep: Sweep,
    #[arg(long, value_enum)]
    kind: KindArg,
    /// Comma-separated values of the swept parameter.
    #[arg(long, value_delimiter = ',', required = true)]
    values: Vec<f64>,
    /// Stretch factor for an n-sweep.
    #[arg(long)]
    t: Option<f64>,
    /// Point count for a t-sweep.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, value_delimiter = ',', default_value = "0")]
    seeds: Vec<u64>,
    #[arg(long, value_enum, value_delimiter = ',', default_value = "greedy")]
    algos: Vec<Algo>,
    /// Cone count for theta runs.
    #[arg(long, default_value_t = 6)]
    k: usize,
    #[arg(long, default_value_t = 0.75)]
    gamma_shape: f64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args, Clone)]
pub struct BenchOneArgs {
    #[arg(long, value_enum)]
    algo: Algo,
    #[arg(long, value_enum)]
    kind: KindArg,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    t: Option<f64>,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    seed: u64,
    #[arg(long)]
    gamma_shape: f64,
}

impl BenchOneArgs {
    fn to_args(&self) -> Vec<String> {
        let mut v = vec![
            "bench-one".to_string(),
            format!("--algo={}", self.algo.name()),
            format!("--kind={}", kind_name(self.kind)),
            format!("--n={}", self.n),
            format!("--k={}", self.k),
            format!("--seed={}", self.seed),
            format!("--gamma-shape={}", self.gamma_shape),
        ];
        if let Some(t) = self.t {
            v.push(format!("--t={t}"));
        }
        v
    }
}

fn kind_name(k: KindArg) -> &'static str {
    match k {
        KindArg::Uniform => "uniform",
        KindArg::Clustered => "clustered",
        KindArg::Gamma => "gamma",
    }
}

fn thread_count() -> usize {
    let available = std::thread::available_parallelism().map_or(1, |n| n.get());
    let cap = std::env::var("SPANNER_THREADS").ok().and_then(|s| s.parse::<usize>().ok()).filter(|&c| c > 0);
    cap.map_or(available, |c| c.min(available)).max(1)
}

pub fn run_bench(a: BenchArgs) -> Result<(), Failure> {
    let mut jobs = Vec::new();
    for &value in &a.values {
        let (n, t) = match a.sweep {
            Sweep::N => {
                if value < 1.0 || value.fract() != 0.0 {
                    return Err(Failure::usage(format!("n-sweep values must be positive integers, got {value}")));
                }
                (value as usize, a.t)
            }
            Sweep::T => {
                let n = a.n.ok_or_else(|| Failure::usage("--n is required for --sweep t"))?;
                (n, Some(value))
            }
        };
        for &seed in &a.seeds {
            for &algo in &a.algos {
                let t = match algo {
                    Algo::Theta => None,
                    _ => Some(require_t(t, algo)?),
                };
                jobs.push(BenchOneArgs { algo, kind: a.kind, n, t, k: a.k, seed, gamma_shape: a.gamma_shape });
            }
        }
    }

    let exe = std::env::current_exe().map_err(|e| Failure::usage(format!("cannot locate own executable: {e}")))?;
    let rows: Mutex<Vec<Option<Result<String, String>>>> = Mutex::new(vec![None; jobs.len()]);
    let next = AtomicUsize::new(0);
    std::thread::scope(|scope| {
        for _ in 0..thread_count().min(jobs.len()) {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(job) = jobs.get(i) else { break };
                let result = match Command::new(&exe).args(job.to_args()).output() {
                    Ok(out) if out.status.success() => Ok(String::from_utf8_lossy(&out.stdout).trim().to_string()),
                    Ok(out) => Err(String::from_utf8_lossy(&out.stderr).trim().to_string()),
                    Err(e) => Err(e.to_string()),
                };
                rows.lock().unwrap()[i] = Some(result);
            });
        }
    });

    let mut csv = csv::Writer::from_writer(Vec::new());
    csv.write_record(CSV_HEADER).map_err(csv_failure)?;
    for (job, row) in jobs.iter().zip(rows.into_inner().unwrap()) {
        match row.expect("every job runs") {
            Ok(line) => {
                let mut reader = csv::ReaderBuilder::new().has_headers(false).from_reader(line.as_bytes());
                let record = reader
                    .records()
                    .next()
                    .and_then(|r| r.ok())
                    .filter(|r| r.len() == CSV_HEADER.len())
                    .ok_or_else(|| Failure::usage(format!("malformed bench row: {line}")))?;
                csv.write_record(&record).map_err(csv_failure)?;
            }
            Err(msg) => {
                let what = format!("{} n={} seed={}", job.algo.name(), job.n, job.seed);
                return Err(Failure::usage(format!("bench run {what} failed: {msg}")));
            }
        }
    }
    let bytes = csv.into_inner().map_err(|e| Failure::usage(e.to_string()))?;
    write_atomic(&a.out, &String::from_utf8(bytes).expect("rows are UTF-8"))
}

fn csv_failure(e: csv::Error) -> Failure {
    Failure::usage(format!("csv: {e}"))
}

/// Peak resident set size of this process, where the OS reports it.
fn peak_memory_bytes() -> Option<u64> {
    let status = std::fs::read_to_string("/proc/self/status").ok()?;
    let line = status.lines().find(|l| l.starts_with("VmHWM:"))?;
    let kb: u64 = line.split_whitespace().nth(1)?.parse().ok()?;
    Some(kb * 1024)
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map_or(String::new(), |x| x.to_string())
}

pub fn run_bench_one(a: BenchOneArgs) -> Result<(), Failure> {
    let spec = GeneratorSpec { gamma_shape: a.gamma_shape, ..GeneratorSpec::new(a.kind.into(), a.n, a.seed) };
    let ps = generate(&spec)?;
    let start = Instant::now();
    let mut pair_count = None;
    let mut peak_queue = None;
    let mut peak_live = None;
    let mut sssp_runs = None;
    let graph: SpannerGraph = match a.algo {
        Algo::Greedy => {
            let (g, report) = greedy_spanner_build(&ps, GreedyConfig::new(require_t(a.t, a.algo)?))?;
            pair_count = Some(report.pair_count as u64);
            peak_queue = Some(report.counters.peak_queue_size);
            peak_live = Some(report.counters.peak_live_state);
            sssp_runs = Some(report.counters.sssp_runs);
            g
        }
        Algo::GreedyNaive => baseline::greedy_naive(&ps, require_t(a.t, a.algo)?)?,
        Algo::Theta => baseline::theta_graph(&ps, ThetaConfig { k: a.k })?,
        Algo::Wspd => {
            let t = require_t(a.t, a.algo)?;
            let g = baseline::wspd_spanner(&ps, t)?;
            pair_count = Some(g.edge_count() as u64);
            g
        }
    };
    let wall_ms = start.elapsed().as_secs_f64() * 1e3;
    let s = graph.stats();
    let (t, k) = match a.algo {
        Algo::Theta => (None, Some(a.k)),
        _ => (a.t, None),
    };
    let extent = match a.kind {
        KindArg::Clustered => "1",
        _ => "",
    };
    let row = [
        a.algo.name().to_string(),
        kind_name(a.kind).to_string(),
        a.n.to_string(),
        opt(t),
        opt(k),
        a.seed.to_string(),
        s.edge_count.to_string(),
        s.max_degree.to_string(),
        s.total_weight.to_string(),
        format!("{wall_ms:.3}"),
        opt(pair_count),
        opt(peak_queue),
        opt(peak_live),
        opt(sssp_runs),
        opt(peak_memory_bytes()),
        extent.to_string(),
    ];
    let mut out = csv::Writer::from_writer(std::io::stdout());
    out.write_record(&row).and_then(|()| out.flush().map_err(csv::Error::from)).map_err(csv_failure)?;
    Ok(())
}
