//! Exact solving of triangle-constrained 2-club problems.
//!
//! A *2-club* is a vertex set whose induced subgraph has diameter at most
//! two. This crate finds maximum 2-clubs that additionally satisfy a
//! triangle constraint with threshold `ell`, in one of two flavors:
//!
//! * **vertex variant** — every member vertex lies in at least `ell`
//!   triangles of the induced subgraph;
//! * **edge variant** — the solution admits a spanning subgraph of diameter
//!   at most two in which every edge lies in at least `ell` triangles of
//!   that subgraph.
//!
//! The solver combines data reduction rules, lower-bound heuristics, and a
//! branch-and-bound search over marked vertices; see [`solver::solve`].
//! [`oracle`] holds an independent brute-force reference implementation used
//! to validate everything else, and [`bench`] drives the benchmark CLI.

pub mod bench;
pub mod bounds;
pub mod conflict;
pub mod graph;
pub mod io;
pub mod metrics;
pub mod oracle;
pub mod reductions;
pub mod solver;
pub mod synthetic;
pub mod testgraphs;

/// Which triangle constraint a problem instance imposes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    /// Every vertex of the solution lies in at least `ell` triangles of the
    /// induced subgraph.
    Vertex,
    /// Some spanning subgraph of the solution has diameter at most two and
    /// every one of its edges in at least `ell` of its triangles.
    Edge,
}

impl Variant {
    pub fn as_str(self) -> &'static str {
        match self {
            Variant::Vertex => "vertex",
            Variant::Edge => "edge",
        }
    }
}

impl std::fmt::Display for Variant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}
