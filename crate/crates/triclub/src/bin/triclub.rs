//! Benchmark CLI: solve triangle-constrained diameter-2 instances over a
//! corpus of edge-list files and emit per-cell metrics records.

use clap::Parser;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;
use triclub::bench::{default_ell_sweep, quality_buckets, run_benchmark, RunConfig};
use triclub::io::{read_graph_file, write_label_mapping, LoadedGraph, OutputFormat, RecordWriter};
use triclub::solver::{Algorithm, SolverConfig};
use triclub::Variant;

/// Exact maximum triangle-constrained 2-club solver.
///
/// The environment variable TRICLUB_SEED seeds auxiliary randomized
/// tooling (such as the corpus generator); the solver itself is
/// deterministic.
#[derive(Parser, Debug)]
#[command(name = "triclub", version, about)]
struct Cli {
    /// Input graph files: whitespace-separated edge lists; lines starting
    /// with '#' or '%' and 'p ...' headers are skipped.
    #[arg(long, required = true, num_args = 1..)]
    input: Vec<PathBuf>,

    /// Comma-separated triangle thresholds. Defaults to the standard
    /// 27-value sweep from 1 to 100.
    #[arg(long, value_delimiter = ',')]
    ell: Vec<u32>,

    /// Problem variant: vertex, edge, or both.
    #[arg(long, default_value = "both")]
    variant: String,

    /// Solver: basic, basic-ub, nlb, multi-lb, or all.
    #[arg(long, default_value = "multi-lb")]
    algorithm: String,

    /// Per-solve time limit in seconds; 0 disables the limit.
    #[arg(long, default_value_t = 3600.0)]
    time_limit: f64,

    /// Local instances denser than this use the conflict-degree rule at
    /// branch nodes instead of the two-neighborhood rule.
    #[arg(long, default_value_t = 0.05)]
    density_threshold: f64,

    /// Use maximum matching instead of greedy matching in the pruning
    /// bound.
    #[arg(long)]
    exact_matching: bool,

    /// Benchmark cells processed in parallel.
    #[arg(long, default_value_t = 1)]
    workers: usize,

    /// Results file; stdout when omitted. Label mappings for relabeled
    /// inputs are written next to it.
    #[arg(long)]
    output: Option<PathBuf>,

    /// Output format: csv or json.
    #[arg(long, default_value = "csv")]
    format: String,

    /// Cross-check every solve against exhaustive enumeration (only for
    /// instances with at most 16 vertices).
    #[arg(long)]
    oracle_check: bool,

    /// Emit one structural metrics row per input and skip solving.
    #[arg(long)]
    metrics_only: bool,
}

fn parse_variants(s: &str) -> Result<Vec<Variant>, String> {
    match s {
        "vertex" => Ok(vec![Variant::Vertex]),
        "edge" => Ok(vec![Variant::Edge]),
        "both" => Ok(vec![Variant::Vertex, Variant::Edge]),
        other => Err(format!("unknown variant {other:?} (expected vertex|edge|both)")),
    }
}

fn parse_algorithms(s: &str) -> Result<Vec<Algorithm>, String> {
    if s == "all" {
        return Ok(Algorithm::all().to_vec());
    }
    Algorithm::from_name(s)
        .map(|a| vec![a])
        .ok_or_else(|| format!("unknown algorithm {s:?} (expected basic|basic-ub|nlb|multi-lb|all)"))
}

fn run(cli: Cli) -> Result<(), String> {
    let variants = parse_variants(&cli.variant)?;
    let algorithms = parse_algorithms(&cli.algorithm)?;
    let format = OutputFormat::from_name(&cli.format)
        .ok_or_else(|| format!("unknown format {:?} (expected csv|json)", cli.format))?;

    let mut instances: Vec<LoadedGraph> = Vec::new();
    for path in &cli.input {
        let loaded = read_graph_file(path).map_err(|e| format!("{}: {e}", path.display()))?;
        eprintln!(
            "loaded {} (n={}, m={})",
            loaded.name,
            loaded.graph.vertex_count(),
            loaded.graph.edge_count()
        );
        instances.push(loaded);
    }

    if let Some(out) = &cli.output {
        for inst in &instances {
            let mapping = out.with_file_name(format!("{}.labels.tsv", inst.name));
            write_label_mapping(&mapping, &inst.labels)
                .map_err(|e| format!("writing {}: {e}", mapping.display()))?;
        }
    }

    let config = RunConfig {
        ells: if cli.ell.is_empty() { default_ell_sweep() } else { cli.ell.clone() },
        variants,
        algorithms,
        solver: SolverConfig {
            algorithm: Algorithm::MultiLb, // overridden per cell
            density_threshold: cli.density_threshold,
            time_limit: (cli.time_limit > 0.0)
                .then(|| Duration::from_secs_f64(cli.time_limit)),
            exact_matching: cli.exact_matching,
            workers: 1,
        },
        cell_workers: cli.workers,
        oracle_check: cli.oracle_check,
        metrics_only: cli.metrics_only,
    };

    if cli.workers > 1 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cli.workers)
            .build_global()
            .map_err(|e| format!("thread pool: {e}"))?;
    }

    let mut writer = match &cli.output {
        Some(path) => RecordWriter::to_path(path, format)
            .map_err(|e| format!("{}: {e}", path.display()))?,
        None => RecordWriter::to_stdout(format),
    };
    let rows = run_benchmark(&instances, &config, &mut writer).map_err(|e| e.to_string())?;
    writer.finish().map_err(|e| e.to_string())?;

    if !cli.metrics_only {
        eprintln!("{} rows written", rows.len());
        for bucket in quality_buckets(&rows) {
            let fmt_q = |q: Option<f64>| q.map_or("-".to_string(), |v| format!("{v:.3}"));
            eprintln!(
                "{:<12} cells={:<4} nlb_quality={} multi_lb_quality={}",
                bucket.label,
                bucket.cells,
                fmt_q(bucket.nlb_quality),
                fmt_q(bucket.multi_lb_quality)
            );
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::FAILURE
        }
    }
}
