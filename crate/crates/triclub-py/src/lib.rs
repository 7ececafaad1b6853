//! Python bindings for the triangle-constrained 2-club solver.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use std::time::Duration;
use triclub::bounds::{multi_lower_bound, neighborhood_lower_bound};
use triclub::io::parse_graph;
use triclub::metrics::{density, global_clustering, min_local_clustering};
use triclub::oracle::brute_force;
use triclub::solver::{solve as solve_rs, verify_solution, Algorithm, SolverConfig};
use triclub::Variant;

fn parse_variant(name: &str) -> PyResult<Variant> {
    match name {
        "vertex" => Ok(Variant::Vertex),
        "edge" => Ok(Variant::Edge),
        other => Err(PyValueError::new_err(format!(
            "unknown variant {other:?} (expected 'vertex' or 'edge')"
        ))),
    }
}

fn parse_algorithm(name: &str) -> PyResult<Algorithm> {
    Algorithm::from_name(name).ok_or_else(|| {
        PyValueError::new_err(format!(
            "unknown algorithm {name:?} (expected basic|basic-ub|nlb|multi-lb)"
        ))
    })
}

/// An undirected simple graph with integer vertex ids.
#[pyclass(name = "Graph")]
#[derive(Clone)]
struct PyGraph {
    inner: triclub::graph::Graph,
}

#[pymethods]
impl PyGraph {
    #[new]
    fn new() -> Self {
        PyGraph { inner: triclub::graph::Graph::new() }
    }

    /// Builds a graph from an iterable of (u, v) pairs. Self-loops are
    /// dropped, duplicates merged.
    #[staticmethod]
    fn from_edges(edges: Vec<(u32, u32)>) -> Self {
        PyGraph { inner: triclub::graph::Graph::from_edges(edges) }
    }

    fn add_vertex(&mut self, v: u32) {
        self.inner.add_vertex(v);
    }

    fn add_edge(&mut self, u: u32, v: u32) {
        self.inner.add_edge(u, v);
    }

    fn vertex_count(&self) -> usize {
        self.inner.vertex_count()
    }

    fn edge_count(&self) -> usize {
        self.inner.edge_count()
    }

    fn vertices(&self) -> Vec<u32> {
        self.inner.sorted_vertices()
    }

    fn edges(&self) -> Vec<(u32, u32)> {
        self.inner.sorted_edges()
    }

    fn density(&self) -> f64 {
        density(&self.inner)
    }

    fn __repr__(&self) -> String {
        format!("Graph(n={}, m={})", self.inner.vertex_count(), self.inner.edge_count())
    }
}

/// Result of a solve.
#[pyclass(name = "Solution")]
struct PySolution {
    #[pyo3(get)]
    vertices: Vec<u32>,
    #[pyo3(get)]
    size: usize,
    /// Witness edge set for the edge variant, `None` for the vertex one.
    #[pyo3(get)]
    witness_edges: Option<Vec<(u32, u32)>>,
    #[pyo3(get)]
    proven_optimal: bool,
    #[pyo3(get)]
    nodes: u64,
    #[pyo3(get)]
    solve_time: f64,
    #[pyo3(get)]
    preprocessing_fraction: f64,
    #[pyo3(get)]
    nlb: Option<usize>,
    #[pyo3(get)]
    multi_lb: Option<usize>,
}

#[pymethods]
impl PySolution {
    fn __repr__(&self) -> String {
        format!(
            "Solution(size={}, proven_optimal={}, nodes={})",
            self.size, self.proven_optimal, self.nodes
        )
    }
}

/// Solves the instance exactly: the maximum vertex set of diameter at most
/// two where every vertex (variant 'vertex') or every witness edge
/// (variant 'edge') lies in at least `ell` triangles.
#[pyfunction]
#[pyo3(signature = (
    graph, ell, variant, algorithm = "multi-lb", time_limit = None,
    density_threshold = 0.05, exact_matching = false, workers = 1
))]
#[allow(clippy::too_many_arguments)]
fn solve(
    graph: &PyGraph,
    ell: u32,
    variant: &str,
    algorithm: &str,
    time_limit: Option<f64>,
    density_threshold: f64,
    exact_matching: bool,
    workers: usize,
) -> PyResult<PySolution> {
    let config = SolverConfig {
        algorithm: parse_algorithm(algorithm)?,
        density_threshold,
        time_limit: time_limit.map(Duration::from_secs_f64),
        exact_matching,
        workers,
    };
    let s = solve_rs(&graph.inner, ell, parse_variant(variant)?, &config);
    Ok(PySolution {
        vertices: s.vertices,
        size: s.size,
        witness_edges: s.witness_edges,
        proven_optimal: s.proven_optimal,
        nodes: s.stats.nodes,
        solve_time: s.stats.solve_time.as_secs_f64(),
        preprocessing_fraction: s.stats.preprocessing_fraction(),
        nlb: s.stats.nlb,
        multi_lb: s.stats.multi_lb,
    })
}

/// Checks a vertex set and returns its witness edges when valid (all
/// induced edges for the vertex variant, the maximal peeled edge set for
/// the edge variant), or `None` when the set is not a valid solution.
#[pyfunction]
fn verify(
    graph: &PyGraph,
    vertices: Vec<u32>,
    ell: u32,
    variant: &str,
) -> PyResult<Option<Vec<(u32, u32)>>> {
    verify_solution(&graph.inner, &vertices, ell, parse_variant(variant)?)
        .map_err(|e| PyValueError::new_err(e.to_string()))
}

/// Neighborhood lower bound: (value, witness vertices).
#[pyfunction]
fn neighborhood_bound(graph: &PyGraph, ell: u32, variant: &str) -> PyResult<(usize, Vec<u32>)> {
    let b = neighborhood_lower_bound(&graph.inner, ell, parse_variant(variant)?);
    Ok((b.value, b.witness))
}

/// Multi-stage lower bound: (value, witness vertices).
#[pyfunction]
#[pyo3(signature = (graph, ell, variant, exact_matching = false))]
fn multi_bound(
    graph: &PyGraph,
    ell: u32,
    variant: &str,
    exact_matching: bool,
) -> PyResult<(usize, Vec<u32>)> {
    let b = multi_lower_bound(&graph.inner, ell, parse_variant(variant)?, exact_matching);
    Ok((b.value, b.witness))
}

/// Exhaustive reference optimum for graphs of at most 16 vertices:
/// (size, vertices).
#[pyfunction]
fn oracle_optimum(graph: &PyGraph, ell: u32, variant: &str) -> PyResult<(usize, Vec<u32>)> {
    let opt = brute_force(&graph.inner, ell, parse_variant(variant)?)
        .map_err(|e| PyValueError::new_err(e.to_string()))?;
    Ok((opt.size, opt.vertices))
}

/// Structural metrics of the graph: a dict with density, global
/// clustering, and minimum local clustering.
#[pyfunction]
fn graph_metrics<'py>(
    py: Python<'py>,
    graph: &PyGraph,
) -> PyResult<Bound<'py, pyo3::types::PyDict>> {
    let d = pyo3::types::PyDict::new_bound(py);
    d.set_item("density", density(&graph.inner))?;
    d.set_item("global_clustering", global_clustering(&graph.inner))?;
    d.set_item("min_local_clustering", min_local_clustering(&graph.inner))?;
    Ok(d)
}

/// Parses an edge-list text (same format as the CLI accepts) into a graph
/// plus the label for each dense vertex id.
#[pyfunction]
fn parse_edge_list(text: &str) -> PyResult<(PyGraph, Vec<String>)> {
    let (graph, labels) = parse_graph(std::io::Cursor::new(text))
        .map_err(|e| PyValueError::new_err(e.to_string()))?;
    Ok((PyGraph { inner: graph }, labels))
}

#[pymodule]
fn triclub_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_class::<PySolution>()?;
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(neighborhood_bound, m)?)?;
    m.add_function(wrap_pyfunction!(multi_bound, m)?)?;
    m.add_function(wrap_pyfunction!(oracle_optimum, m)?)?;
    m.add_function(wrap_pyfunction!(graph_metrics, m)?)?;
    m.add_function(wrap_pyfunction!(parse_edge_list, m)?)?;
    Ok(())
}
