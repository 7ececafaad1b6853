//! Benchmark harness: runs solver/bound combinations over a corpus and
//! emits one metrics record per (instance, threshold, variant, algorithm)
//! cell.

use crate::bounds::{multi_lower_bound_until, neighborhood_lower_bound_until};
use crate::io::{IoError, LoadedGraph, RecordWriter};
use crate::metrics::{density, global_clustering, min_local_clustering};
use crate::oracle::{brute_force, MAX_ORACLE_VERTICES};
use crate::solver::{solve, Algorithm, SolverConfig};
use crate::Variant;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum BenchError {
    #[error(transparent)]
    Io(#[from] IoError),
    #[error("solver/oracle mismatch on {instance} ell={ell} {variant} {algorithm}: solver found {got}, oracle says {want}")]
    OracleMismatch {
        instance: String,
        ell: u32,
        variant: Variant,
        algorithm: Algorithm,
        got: usize,
        want: usize,
    },
    #[error("invalid witness on {instance} ell={ell} {variant} {algorithm}")]
    InvalidWitness {
        instance: String,
        ell: u32,
        variant: Variant,
        algorithm: Algorithm,
    },
}

/// One output row. Field order is the on-disk column order. In solver rows
/// the three clustering/density columns describe the solution subgraph; in
/// metrics-only rows (blank `ell`/`variant`/`algorithm`) they describe the
/// input graph. Bound qualities are only reported against a proven optimum.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MetricsRecord {
    pub instance: String,
    pub n: usize,
    pub m: usize,
    pub density: f64,
    pub ell: Option<u32>,
    pub variant: Option<String>,
    pub algorithm: Option<String>,
    pub size: Option<usize>,
    pub solve_time: Option<f64>,
    pub preprocessing_fraction: Option<f64>,
    pub nlb: Option<usize>,
    pub multi_lb: Option<usize>,
    pub nlb_quality: Option<f64>,
    pub multi_lb_quality: Option<f64>,
    pub solution_density: Option<f64>,
    pub global_cc: Option<f64>,
    pub min_local_cc: Option<f64>,
    pub proven_optimal: Option<bool>,
}

/// What to run: the cross product of thresholds, variants and algorithms
/// over every instance.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub ells: Vec<u32>,
    pub variants: Vec<Variant>,
    pub algorithms: Vec<Algorithm>,
    pub solver: SolverConfig,
    /// Cells processed concurrently. Above 1, rows are still written in
    /// deterministic cell order, but only after all cells finish — the
    /// sequential default streams rows as they complete instead.
    pub cell_workers: usize,
    /// Cross-check every solve against exhaustive enumeration (instances
    /// up to 16 vertices only; larger ones are skipped).
    pub oracle_check: bool,
    /// Emit one structural row per instance and skip solving entirely.
    pub metrics_only: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            ells: default_ell_sweep(),
            variants: vec![Variant::Vertex, Variant::Edge],
            algorithms: vec![Algorithm::MultiLb],
            solver: SolverConfig::default(),
            cell_workers: 1,
            oracle_check: false,
            metrics_only: false,
        }
    }
}

/// The default threshold sweep: every small value, then odd steps, then
/// strides of five up to 90, then 100.
pub fn default_ell_sweep() -> Vec<u32> {
    let mut ells: Vec<u32> = (1..=7).collect();
    ells.extend([9, 11, 13, 15]);
    ells.extend((20..=90).step_by(5));
    ells.push(100);
    ells
}

fn metrics_only_record(inst: &LoadedGraph) -> MetricsRecord {
    MetricsRecord {
        instance: inst.name.clone(),
        n: inst.graph.vertex_count(),
        m: inst.graph.edge_count(),
        density: density(&inst.graph),
        ell: None,
        variant: None,
        algorithm: None,
        size: None,
        solve_time: None,
        preprocessing_fraction: None,
        nlb: None,
        multi_lb: None,
        nlb_quality: None,
        multi_lb_quality: None,
        solution_density: None,
        global_cc: Some(global_clustering(&inst.graph)),
        min_local_cc: Some(min_local_clustering(&inst.graph)),
        proven_optimal: None,
    }
}

/// Runs one (instance, threshold, variant) cell: bounds once, then one
/// solve per algorithm.
fn run_cell(
    inst: &LoadedGraph,
    ell: u32,
    variant: Variant,
    config: &RunConfig,
) -> Result<Vec<MetricsRecord>, BenchError> {
    let g = &inst.graph;
    // Each standalone bound gets the same wall-clock budget as a solve, so
    // one hard cell cannot stall the whole run.
    let budget = || config.solver.time_limit.map(|d| std::time::Instant::now() + d);
    let nlb = neighborhood_lower_bound_until(g, ell, variant, budget());
    let multi =
        multi_lower_bound_until(g, ell, variant, config.solver.exact_matching, budget());
    let mut rows = Vec::with_capacity(config.algorithms.len());
    for &algorithm in &config.algorithms {
        let solver_config = SolverConfig { algorithm, ..config.solver.clone() };
        let solution = solve(g, ell, variant, &solver_config);
        let witness_ok =
            crate::solver::verify_solution(g, &solution.vertices, ell, variant)
                .map(|w| w.is_some())
                .unwrap_or(false);
        if !witness_ok {
            return Err(BenchError::InvalidWitness {
                instance: inst.name.clone(),
                ell,
                variant,
                algorithm,
            });
        }
        if config.oracle_check && g.vertex_count() <= MAX_ORACLE_VERTICES {
            let want = brute_force(g, ell, variant).expect("size gated above").size;
            if solution.size != want {
                return Err(BenchError::OracleMismatch {
                    instance: inst.name.clone(),
                    ell,
                    variant,
                    algorithm,
                    got: solution.size,
                    want,
                });
            }
        }
        let quality = |bound: usize| -> Option<f64> {
            (solution.proven_optimal && solution.size > 0)
                .then(|| bound as f64 / solution.size as f64)
        };
        let sub = (solution.size > 0).then(|| g.induced_subgraph(&solution.vertices));
        rows.push(MetricsRecord {
            instance: inst.name.clone(),
            n: g.vertex_count(),
            m: g.edge_count(),
            density: density(g),
            ell: Some(ell),
            variant: Some(variant.as_str().to_string()),
            algorithm: Some(algorithm.as_str().to_string()),
            size: Some(solution.size),
            solve_time: Some(solution.stats.solve_time.as_secs_f64()),
            preprocessing_fraction: Some(solution.stats.preprocessing_fraction()),
            nlb: Some(nlb.value),
            multi_lb: Some(multi.value),
            nlb_quality: quality(nlb.value),
            multi_lb_quality: quality(multi.value),
            solution_density: sub.as_ref().map(density),
            global_cc: sub.as_ref().map(global_clustering),
            min_local_cc: sub.as_ref().map(min_local_clustering),
            proven_optimal: Some(solution.proven_optimal),
        });
    }
    Ok(rows)
}

/// Runs the full benchmark, writing rows through `writer` and returning
/// them for further summarizing.
pub fn run_benchmark(
    instances: &[LoadedGraph],
    config: &RunConfig,
    writer: &mut RecordWriter,
) -> Result<Vec<MetricsRecord>, BenchError> {
    if config.metrics_only {
        let mut rows = Vec::new();
        for inst in instances {
            let row = metrics_only_record(inst);
            writer.write(&row).map_err(BenchError::Io)?;
            rows.push(row);
        }
        return Ok(rows);
    }
    let cells: Vec<(usize, u32, Variant)> = instances
        .iter()
        .enumerate()
        .flat_map(|(i, _)| {
            config.ells.iter().flat_map(move |&ell| {
                config.variants.iter().map(move |&variant| (i, ell, variant))
            })
        })
        .collect();

    let mut all_rows = Vec::new();
    if config.cell_workers > 1 {
        use rayon::prelude::*;
        let results: Vec<Result<Vec<MetricsRecord>, BenchError>> = cells
            .par_iter()
            .map(|&(i, ell, variant)| run_cell(&instances[i], ell, variant, config))
            .collect();
        for result in results {
            for row in result? {
                writer.write(&row).map_err(BenchError::Io)?;
                all_rows.push(row);
            }
        }
    } else {
        for &(i, ell, variant) in &cells {
            for row in run_cell(&instances[i], ell, variant, config)? {
                writer.write(&row).map_err(BenchError::Io)?;
                all_rows.push(row);
            }
        }
    }
    Ok(all_rows)
}

/// Average bound quality per threshold bucket, for comparing how the two
/// bounds track the optimum as the threshold grows.
#[derive(Debug, Clone, PartialEq)]
pub struct BucketSummary {
    pub label: &'static str,
    pub cells: usize,
    pub nlb_quality: Option<f64>,
    pub multi_lb_quality: Option<f64>,
}

pub fn quality_buckets(rows: &[MetricsRecord]) -> Vec<BucketSummary> {
    let buckets: [(&'static str, fn(u32) -> bool); 3] = [
        ("ell<=5", |e| e <= 5),
        ("6<=ell<=15", |e| (6..=15).contains(&e)),
        ("ell>=16", |e| e >= 16),
    ];
    buckets
        .iter()
        .map(|&(label, contains)| {
            let in_bucket: Vec<&MetricsRecord> = rows
                .iter()
                .filter(|r| r.ell.is_some_and(contains))
                .collect();
            let avg = |f: fn(&MetricsRecord) -> Option<f64>| -> Option<f64> {
                let vals: Vec<f64> = in_bucket.iter().filter_map(|r| f(r)).collect();
                (!vals.is_empty()).then(|| vals.iter().sum::<f64>() / vals.len() as f64)
            };
            BucketSummary {
                label,
                cells: in_bucket.len(),
                nlb_quality: avg(|r| r.nlb_quality),
                multi_lb_quality: avg(|r| r.multi_lb_quality),
            }
        })
        .collect()
}
