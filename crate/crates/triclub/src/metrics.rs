//! Structural graph metrics reported by the benchmark harness.

use crate::graph::{enumerate_triangles, Graph};

/// Edge density `2m / (n(n-1))`. Conventions: an empty graph has density 0,
/// a single vertex density 1 (it is trivially as dense as it can be).
pub fn density(g: &Graph) -> f64 {
    let n = g.vertex_count();
    match n {
        0 => 0.0,
        1 => 1.0,
        _ => 2.0 * g.edge_count() as f64 / (n as f64 * (n - 1) as f64),
    }
}

/// Global clustering coefficient (transitivity): three times the triangle
/// count over the number of wedges. A graph without wedges scores 0.
pub fn global_clustering(g: &Graph) -> f64 {
    let tri = enumerate_triangles(g);
    let triangles: u64 = g
        .sorted_vertices()
        .iter()
        .map(|&v| tri.vertex_triangles(v) as u64)
        .sum::<u64>()
        / 3;
    let wedges: u64 = g
        .sorted_vertices()
        .iter()
        .map(|&v| {
            let d = g.degree(v) as u64;
            d * d.saturating_sub(1) / 2
        })
        .sum();
    if wedges == 0 {
        0.0
    } else {
        3.0 * triangles as f64 / wedges as f64
    }
}

/// Minimum local clustering coefficient over all vertices. A vertex of
/// degree below two has coefficient 1 by convention (no pair of neighbors
/// to miss an edge); an empty graph scores 1 as well.
pub fn min_local_clustering(g: &Graph) -> f64 {
    let tri = enumerate_triangles(g);
    g.sorted_vertices()
        .iter()
        .map(|&v| {
            let d = g.degree(v) as u64;
            if d < 2 {
                1.0
            } else {
                let pairs = (d * (d - 1) / 2) as f64;
                tri.vertex_triangles(v) as f64 / pairs
            }
        })
        .fold(1.0_f64, f64::min)
}
