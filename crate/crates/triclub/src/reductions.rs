//! Data reduction rules for the branching search.
//!
//! All rules operate on a [`State`] — a graph bundled with its triangle
//! index, undo trail and (optionally) its conflict graph — and report what
//! they changed in a [`RuleOutcome`]. Deletion rules never remove a marked
//! vertex; when one would qualify they flag the branch infeasible instead.
//! Marking rules only ever grow the marked set of the [`BranchContext`].
//!
//! Safety contract, checked against the brute-force oracle in the tests:
//! no rule changes the maximum size of a solution that exceeds `best_size`
//! and contains every marked vertex.

use crate::conflict::{ConflictGraph, GcCheckpoint};
use crate::graph::{
    self, enumerate_triangles, Checkpoint, Graph, GraphError, TriangleIndex, UndoLog, VertexId,
};
use crate::Variant;
use rustc_hash::FxHashSet;

/// Shared search context: the problem parameters plus everything branching
/// has committed to so far.
#[derive(Debug, Clone)]
pub struct BranchContext {
    pub ell: u32,
    pub variant: Variant,
    /// Size of the largest solution found so far; rules may discard
    /// anything that cannot beat it.
    pub best_size: usize,
    /// Vertices that every solution in this branch must contain.
    pub marked: FxHashSet<VertexId>,
    /// Root of the local instance, if any. Always marked in rooted search.
    pub root: Option<VertexId>,
}

impl BranchContext {
    pub fn new(ell: u32, variant: Variant) -> Self {
        BranchContext {
            ell,
            variant,
            best_size: 0,
            marked: FxHashSet::default(),
            root: None,
        }
    }

    pub fn rooted(ell: u32, variant: Variant, best_size: usize, root: VertexId) -> Self {
        let mut marked = FxHashSet::default();
        marked.insert(root);
        BranchContext { ell, variant, best_size, marked, root: Some(root) }
    }

    pub fn sorted_marked(&self) -> Vec<VertexId> {
        let mut m: Vec<_> = self.marked.iter().copied().collect();
        m.sort_unstable();
        m
    }
}

/// What a rule application changed.
#[derive(Debug, Clone, Default)]
pub struct RuleOutcome {
    pub deleted_vertices: Vec<VertexId>,
    pub deleted_edges: Vec<(VertexId, VertexId)>,
    pub newly_marked: Vec<VertexId>,
    /// The branch admits no solution extending the marked set beyond
    /// `best_size`; the caller should undo and backtrack.
    pub infeasible: bool,
}

impl RuleOutcome {
    pub fn changed(&self) -> bool {
        self.infeasible
            || !self.deleted_vertices.is_empty()
            || !self.deleted_edges.is_empty()
            || !self.newly_marked.is_empty()
    }

    pub fn absorb(&mut self, other: RuleOutcome) {
        self.deleted_vertices.extend(other.deleted_vertices);
        self.deleted_edges.extend(other.deleted_edges);
        self.newly_marked.extend(other.newly_marked);
        self.infeasible |= other.infeasible;
    }
}

/// A graph under reduction: adjacency, triangle counters, undo trail, and
/// optionally the conflict graph, all kept consistent through the deletion
/// methods below.
#[derive(Debug)]
pub struct State {
    pub graph: Graph,
    pub tri: TriangleIndex,
    pub log: UndoLog,
    pub conflicts: Option<ConflictGraph>,
}

/// Joint checkpoint over a [`State`]'s undo trail and conflict trail.
#[derive(Debug, Clone, Copy)]
pub struct StateCheckpoint {
    graph: Checkpoint,
    conflicts: Option<GcCheckpoint>,
}

impl State {
    pub fn new(graph: Graph) -> Self {
        let tri = enumerate_triangles(&graph);
        State { graph, tri, log: UndoLog::new(), conflicts: None }
    }

    pub fn with_conflicts(graph: Graph) -> Self {
        let mut st = State::new(graph);
        st.build_conflicts();
        st
    }

    pub fn build_conflicts(&mut self) {
        self.conflicts = Some(ConflictGraph::build(&self.graph));
    }

    /// Deletes `v` everywhere: graph, triangle counters, conflict graph.
    pub fn delete_vertex(&mut self, v: VertexId) -> Result<(), GraphError> {
        let nbrs = if self.conflicts.is_some() {
            self.graph.sorted_neighbors(v)
        } else {
            Vec::new()
        };
        graph::delete_vertex(&mut self.graph, &mut self.tri, &mut self.log, v)?;
        if let Some(gc) = &mut self.conflicts {
            gc.update_after_vertex_deletion(&self.graph, v, &nbrs);
        }
        Ok(())
    }

    /// Deletes the edge `{u, w}` everywhere.
    pub fn delete_edge(&mut self, u: VertexId, w: VertexId) -> Result<(), GraphError> {
        graph::delete_edge(&mut self.graph, &mut self.tri, &mut self.log, u, w)?;
        if let Some(gc) = &mut self.conflicts {
            gc.update_after_edge_deletion(&self.graph, u, w);
        }
        Ok(())
    }

    pub fn checkpoint(&self) -> StateCheckpoint {
        StateCheckpoint {
            graph: self.log.checkpoint(),
            conflicts: self.conflicts.as_ref().map(|gc| gc.checkpoint()),
        }
    }

    /// Rewinds graph, counters and conflict graph to `cp`. The checkpoint
    /// must come from this state with the same conflict-graph shape.
    pub fn rollback(&mut self, cp: StateCheckpoint) -> Result<(), GraphError> {
        graph::undo(&mut self.graph, &mut self.tri, &mut self.log, cp.graph)?;
        match (&mut self.conflicts, cp.conflicts) {
            (Some(gc), Some(gcp)) => gc.rollback(gcp),
            (None, None) => Ok(()),
            _ => Err(GraphError::ForeignCheckpoint),
        }
    }

    fn sorted_live(&self) -> Vec<VertexId> {
        self.graph.sorted_vertices()
    }
}

/// Low-degree rule, applied exhaustively. A vertex of degree `d` lies in at
/// most `C(d, 2)` triangles, and an edge incident to it in at most `d - 1`,
/// so vertices below the variant's degree demand can never satisfy the
/// triangle constraint. The comparison is exact integer arithmetic; for the
/// vertex variant a vertex survives iff `C(deg, 2) >= ell`.
pub fn ldr(st: &mut State, ctx: &BranchContext) -> RuleOutcome {
    let mut out = RuleOutcome::default();
    if ctx.ell == 0 {
        // Threshold zero drops the triangle constraint entirely; no degree
        // bound applies (an isolated vertex is still a valid singleton).
        return out;
    }
    loop {
        let victims: Vec<VertexId> = st
            .sorted_live()
            .into_iter()
            .filter(|&v| {
                let d = st.graph.degree(v) as u64;
                match ctx.variant {
                    Variant::Vertex => d * (d.saturating_sub(1)) / 2 < ctx.ell as u64,
                    Variant::Edge => d <= ctx.ell as u64,
                }
            })
            .collect();
        if victims.is_empty() {
            return out;
        }
        if victims.iter().any(|v| ctx.marked.contains(v)) {
            out.infeasible = true;
            return out;
        }
        for v in victims {
            st.delete_vertex(v).unwrap();
            out.deleted_vertices.push(v);
        }
    }
}

/// One batch of the low-triangle rule. Vertex variant: delete every vertex
/// in fewer than `ell` triangles. Edge variant: delete every edge in fewer
/// than `ell` triangles, then every vertex left without an edge. Returns
/// whether anything was deleted.
fn ltr_pass(st: &mut State, ctx: &BranchContext, out: &mut RuleOutcome) -> bool {
    match ctx.variant {
        Variant::Vertex => {
            let victims: Vec<VertexId> = st
                .sorted_live()
                .into_iter()
                .filter(|&v| st.tri.vertex_triangles(v) < ctx.ell)
                .collect();
            if victims.is_empty() {
                return false;
            }
            if victims.iter().any(|v| ctx.marked.contains(v)) {
                out.infeasible = true;
                return true;
            }
            for v in victims {
                st.delete_vertex(v).unwrap();
                out.deleted_vertices.push(v);
            }
            true
        }
        Variant::Edge => {
            let doomed: Vec<(VertexId, VertexId)> = st
                .graph
                .sorted_edges()
                .into_iter()
                .filter(|&(u, w)| st.tri.edge_triangles(u, w) < ctx.ell)
                .collect();
            for &(u, w) in &doomed {
                st.delete_edge(u, w).unwrap();
                out.deleted_edges.push((u, w));
            }
            let isolated: Vec<VertexId> = st
                .sorted_live()
                .into_iter()
                .filter(|&v| st.graph.degree(v) == 0)
                .collect();
            if isolated.iter().any(|v| ctx.marked.contains(v)) {
                out.infeasible = true;
                return true;
            }
            let deleted_any = !doomed.is_empty() || !isolated.is_empty();
            for v in isolated {
                st.delete_vertex(v).unwrap();
                out.deleted_vertices.push(v);
            }
            deleted_any
        }
    }
}

/// Low-triangle rule, applied exhaustively (the fixpoint of [`ltr_pass`]).
pub fn ltr(st: &mut State, ctx: &BranchContext) -> RuleOutcome {
    let mut out = RuleOutcome::default();
    if ctx.ell == 0 {
        return out;
    }
    while ltr_pass(st, ctx, &mut out) {
        if out.infeasible {
            return out;
        }
    }
    out
}

/// Vertices that some marked vertex cannot reach within two steps. Uses the
/// conflict graph when present, direct compatibility tests otherwise.
fn conflicting_with_marked(st: &State, ctx: &BranchContext) -> Vec<VertexId> {
    let marked = ctx.sorted_marked();
    let mut hit: Vec<VertexId> = match &st.conflicts {
        Some(gc) => marked
            .iter()
            .flat_map(|&m| gc.conflicts(m))
            .filter(|u| !ctx.marked.contains(u))
            .collect(),
        None => st
            .sorted_live()
            .into_iter()
            .filter(|&u| !ctx.marked.contains(&u))
            .filter(|&u| marked.iter().any(|&m| !st.graph.compatible(m, u)))
            .collect(),
    };
    hit.sort_unstable();
    hit.dedup();
    hit
}

/// Incompatibility rule: delete every unmarked vertex in conflict with a
/// marked one — it can never join a solution that must contain its marked
/// antagonist. Applied to a fixpoint, since deletions create new conflicts.
pub fn irr(st: &mut State, ctx: &BranchContext) -> RuleOutcome {
    let mut out = RuleOutcome::default();
    loop {
        let victims = conflicting_with_marked(st, ctx);
        if victims.is_empty() {
            return out;
        }
        for v in victims {
            st.delete_vertex(v).unwrap();
            out.deleted_vertices.push(v);
        }
    }
}

/// Marked-incompatibility rule: two marked vertices in conflict can never
/// appear together, so the branch is infeasible.
pub fn mir(st: &mut State, ctx: &BranchContext) -> RuleOutcome {
    let mut out = RuleOutcome::default();
    let marked = ctx.sorted_marked();
    match &st.conflicts {
        Some(gc) => {
            out.infeasible = marked
                .iter()
                .any(|&m| gc.conflicts(m).any(|u| ctx.marked.contains(&u)));
        }
        None => {
            out.infeasible = marked.iter().enumerate().any(|(i, &m)| {
                marked[i + 1..]
                    .iter()
                    .any(|&u| !st.graph.compatible(m, u))
            });
        }
    }
    out
}

/// Cascading rule: for a marked vertex `v` and an unmarked `u`, if removing
/// `u` would drop `v` below `ell` triangles, every solution containing `v`
/// needs `u`, so `u` gets marked. Triangles through both endpoints exist
/// only across an edge, where the edge counter has them. Runs to a fixpoint
/// since fresh marks enable further cascades.
pub fn cascading_rule(st: &mut State, ctx: &mut BranchContext) -> RuleOutcome {
    let mut out = RuleOutcome::default();
    loop {
        let mut marked_any = false;
        for v in ctx.sorted_marked() {
            if !st.graph.has_vertex(v) {
                continue;
            }
            let xv = st.tri.vertex_triangles(v);
            for u in st.sorted_live() {
                if ctx.marked.contains(&u) {
                    continue;
                }
                let xuv = if st.graph.has_edge(u, v) {
                    st.tri.edge_triangles(u, v)
                } else {
                    0
                };
                if xv - xuv < ctx.ell {
                    ctx.marked.insert(u);
                    out.newly_marked.push(u);
                    marked_any = true;
                }
            }
        }
        if !marked_any {
            return out;
        }
    }
}

/// No-choice rule: two non-adjacent marked vertices with exactly one common
/// neighbor must route through it, so that neighbor gets marked. Runs to a
/// fixpoint.
pub fn no_choice_rule(st: &mut State, ctx: &mut BranchContext) -> RuleOutcome {
    let mut out = RuleOutcome::default();
    loop {
        let marked = ctx.sorted_marked();
        let mut marked_any = false;
        for (i, &u) in marked.iter().enumerate() {
            if !st.graph.has_vertex(u) {
                continue;
            }
            for &w in &marked[i + 1..] {
                if !st.graph.has_vertex(w) || st.graph.has_edge(u, w) {
                    continue;
                }
                let nu = st.graph.neighbor_set(u).unwrap();
                let nw = st.graph.neighbor_set(w).unwrap();
                let (small, big) = if nu.len() <= nw.len() { (nu, nw) } else { (nw, nu) };
                let mut common = small.iter().filter(|x| big.contains(x));
                if let (Some(&x), None) = (common.next(), common.next()) {
                    if !ctx.marked.contains(&x) {
                        ctx.marked.insert(x);
                        out.newly_marked.push(x);
                        marked_any = true;
                    }
                }
            }
        }
        if !marked_any {
            return out;
        }
    }
}

/// Two-neighborhood rule: a vertex whose closed two-neighborhood has at
/// most `best_size` members cannot anchor anything larger; delete it.
/// Fixpoint iteration, since deletions shrink other neighborhoods.
pub fn two_nr(st: &mut State, ctx: &BranchContext) -> RuleOutcome {
    let mut out = RuleOutcome::default();
    loop {
        let victims: Vec<VertexId> = st
            .sorted_live()
            .into_iter()
            .filter(|&v| !st.graph.two_neighborhood_exceeds(v, ctx.best_size))
            .collect();
        if victims.is_empty() {
            return out;
        }
        if victims.iter().any(|v| ctx.marked.contains(v)) {
            out.infeasible = true;
            return out;
        }
        for v in victims {
            st.delete_vertex(v).unwrap();
            out.deleted_vertices.push(v);
        }
    }
}

/// Low-compatibility rule: with `n` live vertices, a vertex with conflict
/// degree at least `n - best_size + 1` is compatible with too few vertices
/// to appear in anything larger than `best_size`; delete it. Vertices
/// without conflicts are never touched — instances too small to beat the
/// bound die at the node level instead. Requires the conflict graph.
pub fn lcr(st: &mut State, ctx: &BranchContext) -> RuleOutcome {
    let mut out = RuleOutcome::default();
    loop {
        let n = st.graph.vertex_count();
        let threshold = n.saturating_sub(ctx.best_size).saturating_add(1).max(1);
        let gc = st.conflicts.as_ref().expect("lcr needs the conflict graph");
        let victims: Vec<VertexId> = st
            .sorted_live()
            .into_iter()
            .filter(|&v| gc.conflict_degree(v) >= threshold)
            .collect();
        if victims.is_empty() {
            return out;
        }
        if victims.iter().any(|v| ctx.marked.contains(v)) {
            out.infeasible = true;
            return out;
        }
        for v in victims {
            st.delete_vertex(v).unwrap();
            out.deleted_vertices.push(v);
        }
    }
}

/// Matching-based upper bound on any solution inside the current instance:
/// each matched conflict pair forfeits at least one vertex, so at most
/// `|V| - b` vertices survive for a matching of size `b`. Greedy maximal
/// matching by default; `exact` switches to maximum matching.
pub fn matching_bound(gc: &ConflictGraph, exact: bool) -> usize {
    let b = if exact {
        gc.maximum_matching().len()
    } else {
        gc.greedy_maximal_matching().len()
    };
    gc.vertex_count() - b
}

/// Degree-and-triangle closure: low-degree rule exhaustively, then single
/// low-triangle batches with the degree rule re-run after each batch that
/// deleted something. Equivalent to the joint fixpoint of both rules.
pub fn basic_rules(st: &mut State, ctx: &BranchContext) -> RuleOutcome {
    let mut out = RuleOutcome::default();
    loop {
        out.absorb(ldr(st, ctx));
        if out.infeasible {
            return out;
        }
        if ctx.ell == 0 {
            return out;
        }
        let mut pass = RuleOutcome::default();
        let changed = ltr_pass(st, ctx, &mut pass);
        out.absorb(pass);
        if out.infeasible || !changed {
            return out;
        }
    }
}

/// Staged closure used during lower-bound preprocessing: low-compatibility
/// rule first, then one low-triangle batch, with the degree rule re-run
/// after every stage that deleted something. Exits once a full cycle
/// deletes nothing; the surviving graph then satisfies the triangle
/// property. Requires the conflict graph.
pub fn establish_triangle_property(st: &mut State, ctx: &BranchContext) -> RuleOutcome {
    let mut out = RuleOutcome::default();
    loop {
        let step1 = lcr(st, ctx);
        let step1_changed = step1.changed();
        out.absorb(step1);
        if out.infeasible {
            return out;
        }
        if step1_changed {
            out.absorb(ldr(st, ctx));
            if out.infeasible {
                return out;
            }
            continue;
        }
        if ctx.ell > 0 {
            let mut pass = RuleOutcome::default();
            let changed = ltr_pass(st, ctx, &mut pass);
            out.absorb(pass);
            if out.infeasible {
                return out;
            }
            if changed {
                out.absorb(ldr(st, ctx));
                if out.infeasible {
                    return out;
                }
                continue;
            }
        }
        return out;
    }
}
