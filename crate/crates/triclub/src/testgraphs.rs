//! Small named graphs used throughout the test-suite and documentation
//! examples. Kept in the library proper so integration tests and doc tests
//! can share one definition of each fixture.

use crate::graph::{Graph, VertexId};

/// Complete graph on `n` vertices `0..n`.
pub fn complete(n: VertexId) -> Graph {
    let mut g = Graph::new();
    for v in 0..n {
        g.add_vertex(v);
        for u in 0..v {
            g.add_edge(u, v);
        }
    }
    g
}

pub fn k4() -> Graph {
    complete(4)
}

/// Cycle on `n` vertices `0..n`.
pub fn cycle(n: VertexId) -> Graph {
    let mut g = Graph::new();
    for v in 0..n {
        g.add_edge(v, (v + 1) % n);
    }
    g
}

/// Two triangles `{0,1,2}` and `{3,4,5}` joined by the bridge edge `2-3`.
/// The smallest graph where distance-two reachability and triangle support
/// pull in different directions; most conflict-graph examples use it.
pub fn bridge6() -> Graph {
    Graph::from_edges([(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5), (2, 3)])
}

/// Two triangles sharing the center vertex 0: `{0,1,2}` and `{0,3,4}`.
pub fn bowtie() -> Graph {
    Graph::from_edges([(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4)])
}

/// Book graph: `pages` triangles all sharing the spine edge `0-1`; page
/// vertices are `2..2+pages`.
pub fn book(pages: VertexId) -> Graph {
    let mut g = Graph::from_edges([(0, 1)]);
    for p in 0..pages {
        g.add_edge(0, 2 + p);
        g.add_edge(1, 2 + p);
    }
    g
}
