//! Conflict graph: one vertex per live vertex of a base graph, one edge per
//! pair at distance greater than two. A vertex set is a 2-club of the base
//! graph exactly when it spans no conflict edge.
//!
//! Conflicts only ever appear under deletions, never disappear, so the
//! incremental updates below only add edges (plus removing the deleted
//! vertex). Both kinds of update are recorded in an internal trail so
//! branching search can roll the conflict graph back alongside the base
//! graph.

use crate::graph::{edge_key, Graph, GraphError, VertexId};
use rustc_hash::{FxHashMap, FxHashSet};
use std::collections::VecDeque;
use std::sync::atomic::{AtomicU64, Ordering};

static NEXT_GC_LOG_ID: AtomicU64 = AtomicU64::new(0);

#[derive(Debug, Clone)]
enum GcEntry {
    EdgeAdded(VertexId, VertexId),
    VertexRemoved { v: VertexId, conflicts: Vec<VertexId> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GcCheckpoint {
    log_id: u64,
    depth: usize,
}

#[derive(Debug)]
pub struct ConflictGraph {
    adj: FxHashMap<VertexId, FxHashSet<VertexId>>,
    edges: usize,
    log: Vec<GcEntry>,
    log_id: u64,
}

impl ConflictGraph {
    /// Builds the conflict graph of `g` from scratch: a depth-2 truncated
    /// BFS per vertex, with every vertex outside the reached set recorded as
    /// a conflict partner.
    pub fn build(g: &Graph) -> Self {
        let mut adj: FxHashMap<VertexId, FxHashSet<VertexId>> =
            g.vertices().map(|v| (v, FxHashSet::default())).collect();
        let mut edges = 0;
        for v in g.vertices() {
            let n2 = g.two_neighborhood(v);
            for u in g.vertices() {
                if !n2.contains(&u) && adj.get_mut(&v).unwrap().insert(u) {
                    adj.get_mut(&u).unwrap().insert(v);
                    edges += 1;
                }
            }
        }
        ConflictGraph {
            adj,
            edges,
            log: Vec::new(),
            log_id: NEXT_GC_LOG_ID.fetch_add(1, Ordering::Relaxed),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn conflict_count(&self) -> usize {
        self.edges
    }

    pub fn is_conflict_free(&self) -> bool {
        self.edges == 0
    }

    pub fn conflict_degree(&self, v: VertexId) -> usize {
        self.adj.get(&v).map_or(0, |c| c.len())
    }

    pub fn conflicts(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.adj.get(&v).into_iter().flat_map(|c| c.iter().copied())
    }

    pub fn has_conflict(&self, u: VertexId, w: VertexId) -> bool {
        self.adj.get(&u).is_some_and(|c| c.contains(&w))
    }

    pub fn sorted_vertices(&self) -> Vec<VertexId> {
        let mut vs: Vec<_> = self.adj.keys().copied().collect();
        vs.sort_unstable();
        vs
    }

    /// All conflict edges as canonical `(min, max)` pairs in ascending
    /// order.
    pub fn sorted_conflict_edges(&self) -> Vec<(VertexId, VertexId)> {
        let mut es: Vec<_> = self
            .adj
            .iter()
            .flat_map(|(&u, cs)| cs.iter().filter(move |&&w| u < w).map(move |&w| (u, w)))
            .collect();
        es.sort_unstable();
        es
    }

    /// Lexicographically first conflict edge in canonical form, if any.
    pub fn first_conflict_edge(&self) -> Option<(VertexId, VertexId)> {
        for a in self.sorted_vertices() {
            let mut partners: Vec<_> = self.conflicts(a).filter(|&w| w > a).collect();
            if !partners.is_empty() {
                partners.sort_unstable();
                return Some((a, partners[0]));
            }
        }
        None
    }

    fn add_conflict(&mut self, u: VertexId, w: VertexId) {
        if u == w {
            return;
        }
        if self.adj.get_mut(&u).unwrap().insert(w) {
            self.adj.get_mut(&w).unwrap().insert(u);
            self.edges += 1;
            let (a, b) = edge_key(u, w);
            self.log.push(GcEntry::EdgeAdded(a, b));
        }
    }

    /// Brings the conflict graph up to date after `w` was deleted from the
    /// base graph. `former_neighbors` must be the neighbors `w` had at
    /// deletion time; new conflicts can only involve them, so one depth-2
    /// BFS per former neighbor suffices. Afterwards this equals
    /// `ConflictGraph::build(g)`.
    pub fn update_after_vertex_deletion(
        &mut self,
        g: &Graph,
        w: VertexId,
        former_neighbors: &[VertexId],
    ) {
        debug_assert!(!g.has_vertex(w));
        if let Some(cs) = self.adj.remove(&w) {
            let mut conflicts: Vec<_> = cs.into_iter().collect();
            conflicts.sort_unstable();
            for &c in &conflicts {
                self.adj.get_mut(&c).unwrap().remove(&w);
            }
            self.edges -= conflicts.len();
            self.log.push(GcEntry::VertexRemoved { v: w, conflicts });
        }
        let live: Vec<VertexId> = g.sorted_vertices();
        for &x in former_neighbors {
            if !g.has_vertex(x) {
                continue;
            }
            let n2 = g.two_neighborhood(x);
            for &y in &live {
                if !n2.contains(&y) {
                    self.add_conflict(x, y);
                }
            }
        }
    }

    /// Brings the conflict graph up to date after the edge `{x, y}` was
    /// deleted from the base graph: every new conflict involves `x` or `y`,
    /// so two depth-2 BFS runs suffice. Afterwards this equals
    /// `ConflictGraph::build(g)`.
    pub fn update_after_edge_deletion(&mut self, g: &Graph, x: VertexId, y: VertexId) {
        debug_assert!(!g.has_edge(x, y));
        let live: Vec<VertexId> = g.sorted_vertices();
        for v in [x, y] {
            if !g.has_vertex(v) {
                continue;
            }
            let n2 = g.two_neighborhood(v);
            for &u in &live {
                if !n2.contains(&u) {
                    self.add_conflict(v, u);
                }
            }
        }
    }

    pub fn checkpoint(&self) -> GcCheckpoint {
        GcCheckpoint { log_id: self.log_id, depth: self.log.len() }
    }

    /// Rewinds to the state at `cp`: added conflict edges are removed and
    /// removed vertices restored with their former conflict sets.
    pub fn rollback(&mut self, cp: GcCheckpoint) -> Result<(), GraphError> {
        if cp.log_id != self.log_id {
            return Err(GraphError::ForeignCheckpoint);
        }
        if cp.depth > self.log.len() {
            return Err(GraphError::StaleCheckpoint);
        }
        while self.log.len() > cp.depth {
            match self.log.pop().unwrap() {
                GcEntry::EdgeAdded(u, w) => {
                    self.adj.get_mut(&u).unwrap().remove(&w);
                    self.adj.get_mut(&w).unwrap().remove(&u);
                    self.edges -= 1;
                }
                GcEntry::VertexRemoved { v, conflicts } => {
                    for &c in &conflicts {
                        self.adj.get_mut(&c).unwrap().insert(v);
                    }
                    self.edges += conflicts.len();
                    self.adj.insert(v, conflicts.into_iter().collect());
                }
            }
        }
        Ok(())
    }

    /// Greedy maximal matching: scan vertices in ascending id order and pair
    /// each unmatched vertex with its smallest unmatched conflict partner.
    pub fn greedy_maximal_matching(&self) -> Vec<(VertexId, VertexId)> {
        let mut matched = FxHashSet::default();
        let mut matching = Vec::new();
        for v in self.sorted_vertices() {
            if matched.contains(&v) {
                continue;
            }
            let partner = self
                .conflicts(v)
                .filter(|w| !matched.contains(w))
                .min();
            if let Some(w) = partner {
                matched.insert(v);
                matched.insert(w);
                matching.push((v.min(w), v.max(w)));
            }
        }
        matching
    }

    /// Maximum matching via augmenting paths with blossom contraction.
    /// Costs O(V^3); only worth it when the caller asked for exact matching
    /// bounds.
    pub fn maximum_matching(&self) -> Vec<(VertexId, VertexId)> {
        let ids = self.sorted_vertices();
        let index: FxHashMap<VertexId, usize> =
            ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let n = ids.len();
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (i, &v) in ids.iter().enumerate() {
            adj[i] = self.conflicts(v).map(|w| index[&w]).collect();
            adj[i].sort_unstable();
        }
        let mate = blossom_matching(n, &adj);
        let mut out = Vec::new();
        for (i, &m) in mate.iter().enumerate() {
            if m != usize::MAX && i < m {
                out.push((ids[i], ids[m]));
            }
        }
        out
    }
}

const UNMATCHED: usize = usize::MAX;

/// Classic blossom-contraction matching on a dense-index adjacency list;
/// returns the mate table with `usize::MAX` for unmatched vertices.
fn blossom_matching(n: usize, adj: &[Vec<usize>]) -> Vec<usize> {
    let mut mate = vec![UNMATCHED; n];
    for root in 0..n {
        if mate[root] != UNMATCHED {
            continue;
        }
        if let Some((end, parent)) = find_augmenting_path(n, adj, &mate, root) {
            // Flip matched/unmatched along the found path back to the root.
            let mut u = end;
            loop {
                let pv = parent[u];
                let ppv = mate[pv];
                mate[u] = pv;
                mate[pv] = u;
                if ppv == UNMATCHED {
                    break;
                }
                u = ppv;
            }
        }
    }
    mate
}

/// BFS phase of the blossom algorithm from `root`; returns the free vertex
/// ending an augmenting path together with the parent table to trace it.
#[allow(clippy::type_complexity)]
fn find_augmenting_path(
    n: usize,
    adj: &[Vec<usize>],
    mate: &[usize],
    root: usize,
) -> Option<(usize, Vec<usize>)> {
    let mut parent = vec![UNMATCHED; n];
    let mut base: Vec<usize> = (0..n).collect();
    let mut used = vec![false; n];
    used[root] = true;
    let mut queue = VecDeque::from([root]);

    let lca = |base: &[usize], parent: &[usize], mut a: usize, mut b: usize| -> usize {
        let mut on_path = vec![false; n];
        loop {
            a = base[a];
            on_path[a] = true;
            if mate[a] == UNMATCHED {
                break;
            }
            a = parent[mate[a]];
        }
        loop {
            b = base[b];
            if on_path[b] {
                return b;
            }
            b = parent[mate[b]];
        }
    };

    while let Some(v) = queue.pop_front() {
        for &to in &adj[v] {
            if base[v] == base[to] || mate[v] == to {
                continue;
            }
            if to == root || (mate[to] != UNMATCHED && parent[mate[to]] != UNMATCHED) {
                // Odd cycle: contract the blossom around the common base.
                let cur_base = lca(&base, &parent, v, to);
                let mut in_blossom = vec![false; n];
                mark_path(mate, &mut parent, &base, &mut in_blossom, v, cur_base, to);
                mark_path(mate, &mut parent, &base, &mut in_blossom, to, cur_base, v);
                for i in 0..n {
                    if in_blossom[base[i]] {
                        base[i] = cur_base;
                        if !used[i] {
                            used[i] = true;
                            queue.push_back(i);
                        }
                    }
                }
            } else if parent[to] == UNMATCHED {
                parent[to] = v;
                if mate[to] == UNMATCHED {
                    return Some((to, parent));
                }
                used[mate[to]] = true;
                queue.push_back(mate[to]);
            }
        }
    }
    None
}

fn mark_path(
    mate: &[usize],
    parent: &mut [usize],
    base: &[usize],
    in_blossom: &mut [bool],
    mut v: usize,
    cur_base: usize,
    mut child: usize,
) {
    while base[v] != cur_base {
        in_blossom[base[v]] = true;
        in_blossom[base[mate[v]]] = true;
        parent[v] = child;
        child = mate[v];
        v = parent[mate[v]];
    }
}
