//! Graph substrate for the solvers: an undirected graph over stable integer
//! ids with hash-set adjacency, triangle bookkeeping that stays consistent
//! under deletions, and an undo trail so branching search can backtrack in
//! time proportional to the work being reverted.
//!
//! Vertex and edge deletions are the only destructive operations; both are
//! recorded in an [`UndoLog`] together with every triangle-counter decrement
//! they caused, so [`undo`] restores graph and counters exactly.

use rustc_hash::{FxHashMap, FxHashSet};
use std::sync::atomic::{AtomicU64, Ordering};
use thiserror::Error;

pub type VertexId = u32;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {0} is not in the graph")]
    MissingVertex(VertexId),
    #[error("edge {0}-{1} is not in the graph")]
    MissingEdge(VertexId, VertexId),
    #[error("checkpoint was taken on a different undo log")]
    ForeignCheckpoint,
    #[error("checkpoint lies ahead of the current log state")]
    StaleCheckpoint,
}

/// Canonical key for an undirected edge: endpoints in ascending order.
#[inline]
pub fn edge_key(u: VertexId, w: VertexId) -> (VertexId, VertexId) {
    if u <= w {
        (u, w)
    } else {
        (w, u)
    }
}

/// Undirected simple graph. Ids are arbitrary u32 values that stay stable
/// across deletions; neighbor sets give expected-constant membership tests.
#[derive(Debug, Clone, Default)]
pub struct Graph {
    adj: FxHashMap<VertexId, FxHashSet<VertexId>>,
    m: usize,
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a graph from an edge list; endpoints are inserted implicitly,
    /// self-loops are dropped and duplicate edges are merged.
    pub fn from_edges<I: IntoIterator<Item = (VertexId, VertexId)>>(edges: I) -> Self {
        let mut g = Self::new();
        for (u, w) in edges {
            g.add_edge(u, w);
        }
        g
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.m
    }

    /// Edge density `m / C(n,2)`; 0.0 for graphs with fewer than two vertices.
    pub fn density(&self) -> f64 {
        let n = self.adj.len();
        if n < 2 {
            return 0.0;
        }
        self.m as f64 / (n as f64 * (n as f64 - 1.0) / 2.0)
    }

    pub fn add_vertex(&mut self, v: VertexId) {
        self.adj.entry(v).or_default();
    }

    /// Inserts an undirected edge, creating missing endpoints. Self-loops and
    /// already-present edges are ignored.
    pub fn add_edge(&mut self, u: VertexId, w: VertexId) {
        if u == w {
            return;
        }
        self.add_vertex(u);
        self.add_vertex(w);
        if self.adj.get_mut(&u).unwrap().insert(w) {
            self.adj.get_mut(&w).unwrap().insert(u);
            self.m += 1;
        }
    }

    pub fn has_vertex(&self, v: VertexId) -> bool {
        self.adj.contains_key(&v)
    }

    pub fn has_edge(&self, u: VertexId, w: VertexId) -> bool {
        self.adj.get(&u).is_some_and(|n| n.contains(&w))
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj.get(&v).map_or(0, |n| n.len())
    }

    /// Iterates over live vertices in unspecified order.
    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.adj.keys().copied()
    }

    pub fn sorted_vertices(&self) -> Vec<VertexId> {
        let mut vs: Vec<_> = self.adj.keys().copied().collect();
        vs.sort_unstable();
        vs
    }

    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.adj.get(&v).into_iter().flat_map(|n| n.iter().copied())
    }

    pub fn neighbor_set(&self, v: VertexId) -> Option<&FxHashSet<VertexId>> {
        self.adj.get(&v)
    }

    pub fn sorted_neighbors(&self, v: VertexId) -> Vec<VertexId> {
        let mut ns: Vec<_> = self.neighbors(v).collect();
        ns.sort_unstable();
        ns
    }

    /// All edges as canonical `(min, max)` pairs in ascending order.
    pub fn sorted_edges(&self) -> Vec<(VertexId, VertexId)> {
        let mut es: Vec<_> = self
            .adj
            .iter()
            .flat_map(|(&u, ns)| ns.iter().filter(move |&&w| u < w).map(move |&w| (u, w)))
            .collect();
        es.sort_unstable();
        es
    }

    /// Closed two-neighborhood `N2[v]`: every vertex within distance two of
    /// `v`, including `v` itself. Depth-2 truncated breadth-first traversal.
    pub fn two_neighborhood(&self, v: VertexId) -> FxHashSet<VertexId> {
        let mut seen = FxHashSet::default();
        if !self.has_vertex(v) {
            return seen;
        }
        seen.insert(v);
        for u in self.neighbors(v) {
            seen.insert(u);
        }
        let frontier: Vec<_> = self.neighbors(v).collect();
        for u in frontier {
            for w in self.neighbors(u) {
                seen.insert(w);
            }
        }
        seen
    }

    /// Whether `|N2[v]| > limit`, stopping the traversal as soon as the
    /// answer is known. Lets bulk pruning skip the full neighborhood scan
    /// for well-connected vertices.
    pub fn two_neighborhood_exceeds(&self, v: VertexId, limit: usize) -> bool {
        if !self.has_vertex(v) {
            return false;
        }
        let mut seen = FxHashSet::default();
        seen.insert(v);
        if seen.len() > limit {
            return true;
        }
        for u in self.neighbors(v) {
            seen.insert(u);
            if seen.len() > limit {
                return true;
            }
        }
        let frontier: Vec<_> = self.neighbors(v).collect();
        for u in frontier {
            for w in self.neighbors(u) {
                seen.insert(w);
                if seen.len() > limit {
                    return true;
                }
            }
        }
        false
    }

    /// Whether `u` and `w` are at distance at most two: equal, adjacent, or
    /// sharing a common neighbor. Expected time proportional to the smaller
    /// of the two degrees.
    pub fn compatible(&self, u: VertexId, w: VertexId) -> bool {
        if u == w {
            return self.has_vertex(u);
        }
        let (Some(nu), Some(nw)) = (self.adj.get(&u), self.adj.get(&w)) else {
            return false;
        };
        if nu.contains(&w) {
            return true;
        }
        let (small, big) = if nu.len() <= nw.len() { (nu, nw) } else { (nw, nu) };
        small.iter().any(|x| big.contains(x))
    }

    /// Independent copy of the subgraph induced by `s`; ids are preserved.
    /// Members of `s` absent from the graph are ignored.
    pub fn induced_subgraph<'a, I: IntoIterator<Item = &'a VertexId>>(&self, s: I) -> Graph {
        let keep: FxHashSet<VertexId> =
            s.into_iter().copied().filter(|&v| self.has_vertex(v)).collect();
        let mut sub = Graph::new();
        let mut members: Vec<_> = keep.iter().copied().collect();
        members.sort_unstable();
        for &v in &members {
            sub.add_vertex(v);
            for w in self.neighbors(v) {
                if v < w && keep.contains(&w) {
                    sub.add_edge(v, w);
                }
            }
        }
        sub
    }

    fn remove_vertex_raw(&mut self, v: VertexId) -> Vec<VertexId> {
        let nbrs = self.sorted_neighbors(v);
        for &w in &nbrs {
            self.adj.get_mut(&w).unwrap().remove(&v);
        }
        self.m -= nbrs.len();
        self.adj.remove(&v);
        nbrs
    }

    fn remove_edge_raw(&mut self, u: VertexId, w: VertexId) {
        self.adj.get_mut(&u).unwrap().remove(&w);
        self.adj.get_mut(&w).unwrap().remove(&u);
        self.m -= 1;
    }

    fn restore_vertex_raw(&mut self, v: VertexId, nbrs: &[VertexId]) {
        self.adj.entry(v).or_default();
        for &w in nbrs {
            self.adj.get_mut(&v).unwrap().insert(w);
            self.adj.get_mut(&w).unwrap().insert(v);
        }
        self.m += nbrs.len();
    }

    fn restore_edge_raw(&mut self, u: VertexId, w: VertexId) {
        self.adj.get_mut(&u).unwrap().insert(w);
        self.adj.get_mut(&w).unwrap().insert(u);
        self.m += 1;
    }
}

/// Vertices in min-degree peel order plus the resulting degeneracy. The
/// ordering has every vertex followed by at most `degeneracy` of its
/// neighbors, which caps the forward-pair work of triangle enumeration.
#[derive(Debug, Clone)]
pub struct DegeneracyOrdering {
    pub order: Vec<VertexId>,
    pub position: FxHashMap<VertexId, usize>,
    pub degeneracy: usize,
}

/// Computes a degeneracy ordering by repeatedly peeling a vertex of minimum
/// remaining degree (ties broken by smallest id).
pub fn degeneracy_ordering(g: &Graph) -> DegeneracyOrdering {
    use std::cmp::Reverse;
    use std::collections::BinaryHeap;

    let mut degree: FxHashMap<VertexId, usize> =
        g.vertices().map(|v| (v, g.degree(v))).collect();
    let mut heap: BinaryHeap<Reverse<(usize, VertexId)>> =
        degree.iter().map(|(&v, &d)| Reverse((d, v))).collect();
    let mut order = Vec::with_capacity(degree.len());
    let mut position = FxHashMap::default();
    let mut removed = FxHashSet::default();
    let mut degeneracy = 0;

    while let Some(Reverse((d, v))) = heap.pop() {
        if removed.contains(&v) || degree[&v] != d {
            continue; // stale heap entry
        }
        degeneracy = degeneracy.max(d);
        position.insert(v, order.len());
        order.push(v);
        removed.insert(v);
        for w in g.neighbors(v) {
            if !removed.contains(&w) {
                let dw = degree.get_mut(&w).unwrap();
                *dw -= 1;
                heap.push(Reverse((*dw, w)));
            }
        }
    }

    DegeneracyOrdering { order, position, degeneracy }
}

/// Triangle bookkeeping for one graph: per-vertex and per-edge counts of
/// triangles they currently lie in, plus static per-vertex triangle lists
/// from the last enumeration.
///
/// Counts are kept current by [`delete_vertex`] and [`delete_edge`]; the
/// static lists are not rewritten on deletion, so consumers must re-check a
/// listed triangle against the live graph (the deletion routines do).
/// Entries of deleted vertices/edges are left in place and become meaningful
/// again when the deletion is undone.
#[derive(Debug, Clone, Default)]
pub struct TriangleIndex {
    vertex_count: FxHashMap<VertexId, u32>,
    edge_count: FxHashMap<(VertexId, VertexId), u32>,
    lists: FxHashMap<VertexId, Vec<(VertexId, VertexId)>>,
}

impl TriangleIndex {
    /// Number of triangles the live vertex `v` currently lies in.
    pub fn vertex_triangles(&self, v: VertexId) -> u32 {
        self.vertex_count.get(&v).copied().unwrap_or(0)
    }

    /// Number of triangles the live edge `{u, w}` currently lies in.
    pub fn edge_triangles(&self, u: VertexId, w: VertexId) -> u32 {
        self.edge_count.get(&edge_key(u, w)).copied().unwrap_or(0)
    }

    /// Static list of triangles through `v` at enumeration time, as the two
    /// companion corners. May include triangles destroyed since.
    pub fn triangles_at(&self, v: VertexId) -> &[(VertexId, VertexId)] {
        self.lists.get(&v).map_or(&[], |l| l.as_slice())
    }

    fn bump_vertex(&mut self, v: VertexId, by: i64) {
        let c = self.vertex_count.entry(v).or_insert(0);
        *c = (*c as i64 + by) as u32;
    }

    fn bump_edge(&mut self, key: (VertexId, VertexId), by: i64) {
        let c = self.edge_count.entry(key).or_insert(0);
        *c = (*c as i64 + by) as u32;
    }
}

/// Enumerates every triangle once via forward neighbors in a degeneracy
/// ordering, within `O(m * d)` pair checks for degeneracy `d`. Returns the
/// populated index.
pub fn enumerate_triangles(g: &Graph) -> TriangleIndex {
    let ordering = degeneracy_ordering(g);
    let mut idx = TriangleIndex::default();
    for &v in &ordering.order {
        let pv = ordering.position[&v];
        let mut fwd: Vec<VertexId> = g
            .neighbors(v)
            .filter(|w| ordering.position[w] > pv)
            .collect();
        fwd.sort_unstable();
        for (i, &a) in fwd.iter().enumerate() {
            for &b in &fwd[i + 1..] {
                if g.has_edge(a, b) {
                    record_triangle(&mut idx, v, a, b);
                }
            }
        }
    }
    idx
}

fn record_triangle(idx: &mut TriangleIndex, v: VertexId, a: VertexId, b: VertexId) {
    idx.bump_vertex(v, 1);
    idx.bump_vertex(a, 1);
    idx.bump_vertex(b, 1);
    idx.bump_edge(edge_key(v, a), 1);
    idx.bump_edge(edge_key(v, b), 1);
    idx.bump_edge(edge_key(a, b), 1);
    idx.lists.entry(v).or_default().push(edge_key(a, b));
    idx.lists.entry(a).or_default().push(edge_key(v, b));
    idx.lists.entry(b).or_default().push(edge_key(v, a));
}

/// One counter decrement to replay in reverse on undo.
#[derive(Debug, Clone, Copy)]
enum Delta {
    Vertex(VertexId),
    Edge(VertexId, VertexId),
}

#[derive(Debug, Clone)]
enum LogEntry {
    VertexDeleted {
        v: VertexId,
        neighbors: Vec<VertexId>,
        deltas: Vec<Delta>,
    },
    EdgeDeleted {
        u: VertexId,
        w: VertexId,
        deltas: Vec<Delta>,
    },
}

static NEXT_LOG_ID: AtomicU64 = AtomicU64::new(0);

/// Trail of graph mutations. Deletions push entries; [`undo`] pops back to a
/// [`Checkpoint`] in LIFO order. Checkpoints are tied to the log they were
/// taken on and are rejected elsewhere.
#[derive(Debug)]
pub struct UndoLog {
    id: u64,
    entries: Vec<LogEntry>,
}

impl Default for UndoLog {
    fn default() -> Self {
        Self::new()
    }
}

impl UndoLog {
    pub fn new() -> Self {
        Self {
            id: NEXT_LOG_ID.fetch_add(1, Ordering::Relaxed),
            entries: Vec::new(),
        }
    }

    /// Number of not-yet-undone mutations.
    pub fn depth(&self) -> usize {
        self.entries.len()
    }

    pub fn checkpoint(&self) -> Checkpoint {
        Checkpoint {
            log_id: self.id,
            depth: self.entries.len(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Checkpoint {
    log_id: u64,
    depth: usize,
}

/// Removes `v` and its incident edges, decrementing the triangle counts of
/// every surviving vertex and edge per destroyed triangle. The mutation is
/// recorded in `log`.
pub fn delete_vertex(
    g: &mut Graph,
    idx: &mut TriangleIndex,
    log: &mut UndoLog,
    v: VertexId,
) -> Result<(), GraphError> {
    if !g.has_vertex(v) {
        return Err(GraphError::MissingVertex(v));
    }
    let mut deltas = Vec::new();
    for &(a, b) in idx.triangles_at(v) {
        // The static list may mention triangles already destroyed; a listed
        // triangle is intact iff its two other corners and all three edges
        // are still present.
        if g.has_edge(a, b) && g.has_edge(v, a) && g.has_edge(v, b) {
            deltas.push(Delta::Vertex(a));
            deltas.push(Delta::Vertex(b));
            deltas.push(Delta::Edge(a, b));
        }
    }
    // Counters of v itself and of its incident edges are left untouched:
    // they refer to nothing while v is gone and are exact again on undo.
    for &d in &deltas {
        match d {
            Delta::Vertex(x) => idx.bump_vertex(x, -1),
            Delta::Edge(a, b) => idx.bump_edge(edge_key(a, b), -1),
        }
    }
    let neighbors = g.remove_vertex_raw(v);
    log.entries.push(LogEntry::VertexDeleted { v, neighbors, deltas });
    Ok(())
}

/// Removes the edge `{u, w}`, decrementing the triangle counts of every
/// surviving vertex and edge per destroyed triangle. The mutation is
/// recorded in `log`.
pub fn delete_edge(
    g: &mut Graph,
    idx: &mut TriangleIndex,
    log: &mut UndoLog,
    u: VertexId,
    w: VertexId,
) -> Result<(), GraphError> {
    if !g.has_edge(u, w) {
        return Err(GraphError::MissingEdge(u, w));
    }
    // Triangles through the edge are exactly its common live neighbors.
    let (nu, nw) = (g.neighbor_set(u).unwrap(), g.neighbor_set(w).unwrap());
    let (small, big) = if nu.len() <= nw.len() { (nu, nw) } else { (nw, nu) };
    let mut common: Vec<VertexId> = small.iter().copied().filter(|x| big.contains(x)).collect();
    common.sort_unstable();
    let mut deltas = Vec::new();
    for x in common {
        deltas.push(Delta::Vertex(u));
        deltas.push(Delta::Vertex(w));
        deltas.push(Delta::Vertex(x));
        deltas.push(Delta::Edge(u, x));
        deltas.push(Delta::Edge(w, x));
        // The count of {u, w} itself goes stale with the edge.
    }
    for &d in &deltas {
        match d {
            Delta::Vertex(x) => idx.bump_vertex(x, -1),
            Delta::Edge(a, b) => idx.bump_edge(edge_key(a, b), -1),
        }
    }
    g.remove_edge_raw(u, w);
    log.entries.push(LogEntry::EdgeDeleted { u, w, deltas });
    Ok(())
}

/// Rewinds `g` and `idx` to the state they had when `cp` was taken. Entries
/// are reverted in LIFO order; graph, counters and log depth come back
/// exactly.
pub fn undo(
    g: &mut Graph,
    idx: &mut TriangleIndex,
    log: &mut UndoLog,
    cp: Checkpoint,
) -> Result<(), GraphError> {
    if cp.log_id != log.id {
        return Err(GraphError::ForeignCheckpoint);
    }
    if cp.depth > log.entries.len() {
        return Err(GraphError::StaleCheckpoint);
    }
    while log.entries.len() > cp.depth {
        match log.entries.pop().unwrap() {
            LogEntry::VertexDeleted { v, neighbors, deltas } => {
                g.restore_vertex_raw(v, &neighbors);
                for d in deltas.into_iter().rev() {
                    match d {
                        Delta::Vertex(x) => idx.bump_vertex(x, 1),
                        Delta::Edge(a, b) => idx.bump_edge(edge_key(a, b), 1),
                    }
                }
            }
            LogEntry::EdgeDeleted { u, w, deltas } => {
                g.restore_edge_raw(u, w);
                for d in deltas.into_iter().rev() {
                    match d {
                        Delta::Vertex(x) => idx.bump_vertex(x, 1),
                        Delta::Edge(a, b) => idx.bump_edge(edge_key(a, b), 1),
                    }
                }
            }
        }
    }
    Ok(())
}

/// Canonical view of live graph state and counters, for exactness tests and
/// debugging. Two states that compare equal here are interchangeable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphSnapshot {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<(VertexId, VertexId)>,
    pub vertex_triangles: Vec<(VertexId, u32)>,
    pub edge_triangles: Vec<((VertexId, VertexId), u32)>,
}

pub fn snapshot(g: &Graph, idx: &TriangleIndex) -> GraphSnapshot {
    let vertices = g.sorted_vertices();
    let edges = g.sorted_edges();
    let vertex_triangles = vertices
        .iter()
        .map(|&v| (v, idx.vertex_triangles(v)))
        .collect();
    let edge_triangles = edges
        .iter()
        .map(|&(u, w)| ((u, w), idx.edge_triangles(u, w)))
        .collect();
    GraphSnapshot { vertices, edges, vertex_triangles, edge_triangles }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testgraphs;

    #[test]
    fn add_and_remove_bookkeeping() {
        let mut g = Graph::new();
        g.add_edge(0, 1);
        g.add_edge(1, 2);
        g.add_edge(0, 1); // duplicate
        g.add_edge(3, 3); // self-loop
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_count(), 2);
        assert!(g.has_edge(1, 0));
        assert!(!g.has_vertex(3));
        assert_eq!(g.degree(1), 2);
    }

    #[test]
    fn triangle_enumeration_counts() {
        let g = testgraphs::k4();
        let idx = enumerate_triangles(&g);
        for v in 0..4 {
            assert_eq!(idx.vertex_triangles(v), 3);
        }
        for (u, w) in g.sorted_edges() {
            assert_eq!(idx.edge_triangles(u, w), 2);
        }

        let g = testgraphs::bowtie();
        let idx = enumerate_triangles(&g);
        assert_eq!(idx.vertex_triangles(0), 2);
        for v in 1..5 {
            assert_eq!(idx.vertex_triangles(v), 1);
        }
        assert_eq!(idx.edge_triangles(1, 2), 1);

        let c5 = testgraphs::cycle(5);
        let idx = enumerate_triangles(&c5);
        for v in 0..5 {
            assert_eq!(idx.vertex_triangles(v), 0);
        }
    }

    #[test]
    fn degeneracy_values() {
        assert_eq!(degeneracy_ordering(&testgraphs::k4()).degeneracy, 3);
        assert_eq!(degeneracy_ordering(&testgraphs::bowtie()).degeneracy, 2);
        assert_eq!(degeneracy_ordering(&testgraphs::cycle(5)).degeneracy, 2);
        // A path is 1-degenerate.
        let path = Graph::from_edges([(0, 1), (1, 2), (2, 3)]);
        assert_eq!(degeneracy_ordering(&path).degeneracy, 1);
        let empty = Graph::new();
        assert_eq!(degeneracy_ordering(&empty).degeneracy, 0);
    }

    #[test]
    fn two_neighborhood_bridge_graph() {
        let g = testgraphs::bridge6();
        let mut n2: Vec<_> = g.two_neighborhood(0).into_iter().collect();
        n2.sort_unstable();
        assert_eq!(n2, vec![0, 1, 2, 3]);
        assert_eq!(g.two_neighborhood(2).len(), 6);
    }

    #[test]
    fn compatibility_bridge_graph() {
        let g = testgraphs::bridge6();
        assert!(g.compatible(0, 0));
        assert!(g.compatible(0, 3)); // via 2
        assert!(g.compatible(2, 5)); // via 3
        assert!(!g.compatible(0, 4));
        assert!(!g.compatible(1, 5));
    }

    #[test]
    fn induced_subgraph_preserves_ids() {
        let g = testgraphs::bridge6();
        let sub = g.induced_subgraph(&g.two_neighborhood(0));
        assert_eq!(sub.sorted_vertices(), vec![0, 1, 2, 3]);
        assert_eq!(sub.sorted_edges(), vec![(0, 1), (0, 2), (1, 2), (2, 3)]);
        // Independent copy: mutating the subgraph leaves the original alone.
        let mut sub = sub;
        sub.add_edge(0, 3);
        assert!(!g.has_edge(0, 3));
    }

    #[test]
    fn delete_vertex_updates_counts() {
        let mut g = testgraphs::bridge6();
        let mut idx = enumerate_triangles(&g);
        let mut log = UndoLog::new();
        delete_vertex(&mut g, &mut idx, &mut log, 2).unwrap();
        assert!(!g.has_vertex(2));
        assert_eq!(g.edge_count(), 4);
        assert_eq!(idx.vertex_triangles(0), 0);
        assert_eq!(idx.vertex_triangles(1), 0);
        assert_eq!(idx.edge_triangles(0, 1), 0);
        // The far triangle is untouched.
        assert_eq!(idx.vertex_triangles(4), 1);
        assert_eq!(idx.edge_triangles(4, 5), 1);
    }

    #[test]
    fn delete_edge_updates_counts() {
        let mut g = testgraphs::k4();
        let mut idx = enumerate_triangles(&g);
        let mut log = UndoLog::new();
        delete_edge(&mut g, &mut idx, &mut log, 0, 1).unwrap();
        assert_eq!(g.edge_count(), 5);
        assert_eq!(idx.vertex_triangles(0), 1);
        assert_eq!(idx.vertex_triangles(1), 1);
        assert_eq!(idx.vertex_triangles(2), 2);
        assert_eq!(idx.vertex_triangles(3), 2);
        assert_eq!(idx.edge_triangles(2, 3), 2);
        assert_eq!(idx.edge_triangles(0, 2), 1);
    }

    #[test]
    fn delete_missing_is_signalled() {
        let mut g = testgraphs::k4();
        let mut idx = enumerate_triangles(&g);
        let mut log = UndoLog::new();
        assert_eq!(
            delete_vertex(&mut g, &mut idx, &mut log, 9),
            Err(GraphError::MissingVertex(9))
        );
        assert_eq!(
            delete_edge(&mut g, &mut idx, &mut log, 0, 9),
            Err(GraphError::MissingEdge(0, 9))
        );
        assert_eq!(log.depth(), 0);
    }

    #[test]
    fn undo_restores_exactly() {
        let mut g = testgraphs::bridge6();
        let mut idx = enumerate_triangles(&g);
        let mut log = UndoLog::new();
        let before = snapshot(&g, &idx);

        let cp = log.checkpoint();
        delete_vertex(&mut g, &mut idx, &mut log, 2).unwrap();
        delete_edge(&mut g, &mut idx, &mut log, 4, 5).unwrap();
        delete_vertex(&mut g, &mut idx, &mut log, 4).unwrap();
        assert_ne!(snapshot(&g, &idx), before);

        undo(&mut g, &mut idx, &mut log, cp).unwrap();
        assert_eq!(snapshot(&g, &idx), before);
        assert_eq!(log.depth(), 0);
    }

    #[test]
    fn undo_rejects_bad_checkpoints() {
        let mut g = testgraphs::k4();
        let mut idx = enumerate_triangles(&g);
        let mut log = UndoLog::new();
        let other = UndoLog::new();
        assert_eq!(
            undo(&mut g, &mut idx, &mut log, other.checkpoint()),
            Err(GraphError::ForeignCheckpoint)
        );
        delete_vertex(&mut g, &mut idx, &mut log, 0).unwrap();
        let deep = log.checkpoint();
        undo(&mut g, &mut idx, &mut log, Checkpoint { log_id: deep.log_id, depth: 0 }).unwrap();
        assert_eq!(
            undo(&mut g, &mut idx, &mut log, deep),
            Err(GraphError::StaleCheckpoint)
        );
    }

    #[test]
    fn nested_checkpoints_unwind_in_order() {
        let mut g = testgraphs::k4();
        let mut idx = enumerate_triangles(&g);
        let mut log = UndoLog::new();
        let s0 = snapshot(&g, &idx);
        let cp0 = log.checkpoint();
        delete_edge(&mut g, &mut idx, &mut log, 0, 1).unwrap();
        let s1 = snapshot(&g, &idx);
        let cp1 = log.checkpoint();
        delete_vertex(&mut g, &mut idx, &mut log, 2).unwrap();
        undo(&mut g, &mut idx, &mut log, cp1).unwrap();
        assert_eq!(snapshot(&g, &idx), s1);
        undo(&mut g, &mut idx, &mut log, cp0).unwrap();
        assert_eq!(snapshot(&g, &idx), s0);
    }
}
