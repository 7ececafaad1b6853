//! Lower-bound heuristics. Each returns the size of a solution it actually
//! found, together with the witness vertex set, so callers can seed the
//! search with a feasible incumbent rather than a bare number.

use crate::graph::{Graph, VertexId};
use crate::reductions::{
    basic_rules, establish_triangle_property, ldr, ltr, two_nr, BranchContext, RuleOutcome, State,
};
use crate::Variant;
use rustc_hash::FxHashMap;
use std::cmp::Reverse;
use std::time::Instant;

/// Result of a lower-bound computation.
#[derive(Debug, Clone, Default)]
pub struct BoundResult {
    /// Size of the best solution found (0 when none).
    pub value: usize,
    /// A solution of exactly `value` vertices, sorted ascending.
    pub witness: Vec<VertexId>,
    /// For the neighborhood bound: per root `v`, the size of the solution
    /// found inside `N[v]`, or 0 when the root died during peeling. Empty
    /// for the other bounds.
    pub per_root: Vec<(VertexId, usize)>,
}

/// Neighborhood lower bound. For each vertex `v` in ascending order, peel
/// the closed neighborhood `G[N[v]]` with the low-triangle rule. Batch
/// peeling guarantees that when `v` survives, every survivor keeps its edge
/// to `v`, so the fixpoint is a valid solution — and by the usual core
/// argument it is a *maximum* solution within `G[N[v]]`. The overall value
/// is therefore exact whenever some optimal solution lies inside the closed
/// neighborhood of one of its members.
pub fn neighborhood_lower_bound(g: &Graph, ell: u32, variant: Variant) -> BoundResult {
    neighborhood_lower_bound_until(g, ell, variant, None)
}

/// Deadline-aware form of [`neighborhood_lower_bound`]: roots not reached
/// before the deadline are skipped, which only weakens the bound. With a
/// deadline the per-root report may be truncated.
pub fn neighborhood_lower_bound_until(
    g: &Graph,
    ell: u32,
    variant: Variant,
    deadline: Option<Instant>,
) -> BoundResult {
    let mut best = BoundResult::default();
    for v in g.sorted_vertices() {
        if past(deadline) {
            break;
        }
        let mut nv = g.sorted_neighbors(v);
        nv.push(v);
        let mut st = State::new(g.induced_subgraph(&nv));
        let ctx = BranchContext::rooted(ell, variant, 0, v);
        let out = ltr(&mut st, &ctx);
        if out.infeasible {
            best.per_root.push((v, 0));
            continue;
        }
        let size = st.graph.vertex_count();
        best.per_root.push((v, size));
        if size > best.value {
            best.value = size;
            best.witness = st.graph.sorted_vertices();
        }
    }
    best
}

fn past(deadline: Option<Instant>) -> bool {
    deadline.is_some_and(|d| Instant::now() >= d)
}

/// Deletion order of a conflicting pair: the root always wins; otherwise
/// the endpoint with less triangle support loses (fewer triangles for the
/// vertex variant, smaller degree for the edge variant), larger id on ties.
fn conflict_loser(
    st: &State,
    variant: Variant,
    root: VertexId,
    a: VertexId,
    b: VertexId,
) -> VertexId {
    if a == root {
        return b;
    }
    if b == root {
        return a;
    }
    let (ka, kb) = match variant {
        Variant::Vertex => (
            st.tri.vertex_triangles(a) as usize,
            st.tri.vertex_triangles(b) as usize,
        ),
        Variant::Edge => (st.graph.degree(a), st.graph.degree(b)),
    };
    if ka < kb {
        a
    } else if kb < ka {
        b
    } else {
        a.max(b)
    }
}

/// Roots ordered by decreasing two-neighborhood size, ties by ascending id.
fn roots_by_reach(g: &Graph) -> (Vec<VertexId>, FxHashMap<VertexId, usize>) {
    let mut reach = FxHashMap::default();
    let mut roots = g.sorted_vertices();
    for &v in &roots {
        reach.insert(v, g.two_neighborhood(v).len());
    }
    roots.sort_by_key(|&v| (Reverse(reach[&v]), v));
    (roots, reach)
}

/// Greedy global lower bound. Processes roots by decreasing reach; for each
/// root, peels its two-neighborhood and then resolves conflicts one pair at
/// a time — deleting the weaker endpoint and re-peeling — until the local
/// graph is conflict-free, at which point the survivors form a solution.
pub fn greedy_lower_bound(g: &Graph, ell: u32, variant: Variant) -> BoundResult {
    let mut best = BoundResult::default();
    let (roots, reach) = roots_by_reach(g);
    for v in roots {
        if reach[&v] <= best.value {
            continue;
        }
        let local = g.induced_subgraph(&g.two_neighborhood(v));
        let mut st = State::with_conflicts(local);
        let ctx = BranchContext::rooted(ell, variant, 0, v);
        if ldr(&mut st, &ctx).infeasible || ltr(&mut st, &ctx).infeasible {
            continue;
        }
        loop {
            let Some((a, b)) = st.conflicts.as_ref().unwrap().first_conflict_edge() else {
                let size = st.graph.vertex_count();
                if size > best.value {
                    best.value = size;
                    best.witness = st.graph.sorted_vertices();
                }
                break;
            };
            let loser = conflict_loser(&st, variant, v, a, b);
            st.delete_vertex(loser).unwrap();
            if ltr(&mut st, &ctx).infeasible {
                break;
            }
        }
    }
    best
}

/// Alternates the two-neighborhood rule with the degree/triangle closure
/// until neither deletes anything. Used on the global graph once a bound is
/// known.
pub(crate) fn two_nr_basic_interleave(st: &mut State, ctx: &BranchContext) -> RuleOutcome {
    let mut out = RuleOutcome::default();
    loop {
        let mut round = RuleOutcome::default();
        round.absorb(two_nr(st, ctx));
        round.absorb(basic_rules(st, ctx));
        let done = !round.changed();
        out.absorb(round);
        debug_assert!(!out.infeasible, "global reduction has no marked vertices");
        if done {
            return out;
        }
    }
}

/// The root sweep of the multi-stage bound. Mutates the global state: roots
/// whose local instance provably cannot beat the incumbent are deleted for
/// good, shrinking the graph for later roots (and for branching, when the
/// solver runs this as preprocessing). `best`/`witness` carry the incumbent
/// in and out.
pub(crate) fn multi_root_phase(
    st: &mut State,
    ell: u32,
    variant: Variant,
    exact_matching: bool,
    deadline: Option<Instant>,
    best: &mut usize,
    witness: &mut Vec<VertexId>,
) {
    debug_assert!(st.conflicts.is_none(), "conflict graphs are per-instance");
    let (roots, _) = roots_by_reach(&st.graph);
    for v in roots {
        if past(deadline) {
            return;
        }
        if !st.graph.has_vertex(v) {
            continue;
        }
        if !st.graph.two_neighborhood_exceeds(v, *best) {
            st.delete_vertex(v).unwrap();
            continue;
        }
        let local = st.graph.induced_subgraph(&st.graph.two_neighborhood(v));
        let mut ls = State::new(local);
        let ctx = BranchContext::rooted(ell, variant, *best, v);
        if ldr(&mut ls, &ctx).infeasible {
            continue;
        }
        ls.build_conflicts();
        // While only reduction rules have touched the local instance it
        // still contains every solution through v above the incumbent, so
        // conclusions about v hold globally. The first matching round
        // deletes heuristically chosen conflict losers; from then on the
        // loop may only improve the incumbent, never discard v.
        let mut exact = true;
        loop {
            if past(deadline) {
                return;
            }
            if establish_triangle_property(&mut ls, &ctx).infeasible {
                break;
            }
            let live = ls.graph.vertex_count();
            if live <= *best {
                if exact {
                    // No solution through v beats the incumbent: the local
                    // reductions preserve anything larger, and nothing
                    // larger is left. Discard v globally.
                    st.delete_vertex(v).unwrap();
                }
                break;
            }
            let gc = ls.conflicts.as_ref().unwrap();
            if gc.is_conflict_free() {
                // The live set is one valid solution, beating the
                // incumbent. Only when nothing was cut heuristically is it
                // also an upper bound for v, allowing the global discard.
                *best = live;
                *witness = ls.graph.sorted_vertices();
                if exact {
                    st.delete_vertex(v).unwrap();
                }
                break;
            }
            let matching = if exact_matching {
                gc.maximum_matching()
            } else {
                gc.greedy_maximal_matching()
            };
            for (a, b) in matching {
                let loser = conflict_loser(&ls, variant, v, a, b);
                ls.delete_vertex(loser).unwrap();
            }
            exact = false;
        }
    }
}

/// Multi-stage lower bound: neighborhood bound first, then global shrinking
/// with the bound in hand, then the root sweep. Never worse than the
/// neighborhood bound alone.
pub fn multi_lower_bound(
    g: &Graph,
    ell: u32,
    variant: Variant,
    exact_matching: bool,
) -> BoundResult {
    multi_lower_bound_until(g, ell, variant, exact_matching, None)
}

/// Deadline-aware form of [`multi_lower_bound`]; stopping early only makes
/// the bound weaker, never wrong.
pub fn multi_lower_bound_until(
    g: &Graph,
    ell: u32,
    variant: Variant,
    exact_matching: bool,
    deadline: Option<Instant>,
) -> BoundResult {
    let nlb = neighborhood_lower_bound_until(g, ell, variant, deadline);
    let mut best = nlb.value;
    let mut witness = nlb.witness;
    let mut st = State::new(g.clone());
    let mut ctx = BranchContext::new(ell, variant);
    ctx.best_size = best;
    two_nr_basic_interleave(&mut st, &ctx);
    multi_root_phase(&mut st, ell, variant, exact_matching, deadline, &mut best, &mut witness);
    BoundResult { value: best, witness, per_root: Vec::new() }
}
