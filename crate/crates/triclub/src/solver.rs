//! Exact solver: decomposition into rooted local instances plus a
//! branch-and-bound over marked vertices.
//!
//! Every solution of diameter at most two containing a vertex `v` lies
//! inside `N2[v]`, so the solver processes one rooted local instance per
//! vertex (largest reach first), discards the root from the global graph
//! once its instance is exhausted, and carries the incumbent size across
//! roots. Within an instance, branching picks an unmarked vertex in many
//! conflicts and tries deleting it versus marking it, with the reduction
//! rules run at every node.

use crate::bounds::{
    multi_root_phase, neighborhood_lower_bound_until, two_nr_basic_interleave,
};
use crate::graph::{enumerate_triangles, Graph, GraphError, VertexId};
use crate::reductions::{
    basic_rules, cascading_rule, irr, lcr, ltr, matching_bound, mir, no_choice_rule, two_nr,
    BranchContext, State,
};
use crate::Variant;
use std::cmp::Reverse;
use std::fmt;
use std::time::{Duration, Instant};

/// Which machinery the solver brings to bear.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    /// Branching with the degree/triangle/two-neighborhood rules only; no
    /// conflict graph, no bounds. The reference implementation.
    Basic,
    /// Adds the per-instance conflict graph: the low-compatibility rule on
    /// dense instances and the matching-based pruning bound.
    BasicUb,
    /// Additionally seeds the search with the neighborhood lower bound and
    /// shrinks the global graph against it.
    NeighborhoodLb,
    /// Additionally runs the multi-stage lower bound's root sweep before
    /// branching.
    MultiLb,
}

impl Algorithm {
    pub fn all() -> [Algorithm; 4] {
        [
            Algorithm::Basic,
            Algorithm::BasicUb,
            Algorithm::NeighborhoodLb,
            Algorithm::MultiLb,
        ]
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Algorithm::Basic => "basic",
            Algorithm::BasicUb => "basic-ub",
            Algorithm::NeighborhoodLb => "nlb",
            Algorithm::MultiLb => "multi-lb",
        }
    }

    pub fn from_name(name: &str) -> Option<Algorithm> {
        match name {
            "basic" => Some(Algorithm::Basic),
            "basic-ub" => Some(Algorithm::BasicUb),
            "nlb" => Some(Algorithm::NeighborhoodLb),
            "multi-lb" => Some(Algorithm::MultiLb),
            _ => None,
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Solver knobs. The defaults match the benchmark setup.
#[derive(Debug, Clone)]
pub struct SolverConfig {
    pub algorithm: Algorithm,
    /// Local instances denser than this use the low-compatibility rule at
    /// branch nodes; sparser ones use the two-neighborhood rule.
    pub density_threshold: f64,
    /// Wall-clock budget for the branching phase; `None` means unlimited.
    pub time_limit: Option<Duration>,
    /// Use maximum matching instead of greedy maximal matching in the
    /// pruning bound.
    pub exact_matching: bool,
    /// Roots searched concurrently per wave. With more than one worker the
    /// incumbent is frozen per wave, so results stay deterministic.
    pub workers: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            algorithm: Algorithm::MultiLb,
            density_threshold: 0.05,
            time_limit: None,
            exact_matching: false,
            workers: 1,
        }
    }
}

/// A problem instance: graph plus the triangle threshold and variant.
#[derive(Debug, Clone)]
pub struct Instance {
    pub graph: Graph,
    pub ell: u32,
    pub variant: Variant,
}

/// Counters and timings from one solve.
#[derive(Debug, Clone, Default)]
pub struct SolveStats {
    /// Branch-and-bound nodes expanded across all roots.
    pub nodes: u64,
    /// Time spent before the first branching node (rules and bounds).
    pub preprocessing_time: Duration,
    /// Total wall-clock time of the solve.
    pub solve_time: Duration,
    /// Value of the neighborhood lower bound, when the algorithm ran it.
    pub nlb: Option<usize>,
    /// Value of the multi-stage lower bound, when the algorithm ran it.
    pub multi_lb: Option<usize>,
}

impl SolveStats {
    /// Share of the solve spent before branching, in `[0, 1]`.
    pub fn preprocessing_fraction(&self) -> f64 {
        let total = self.solve_time.as_secs_f64();
        if total <= 0.0 {
            return 0.0;
        }
        (self.preprocessing_time.as_secs_f64() / total).min(1.0)
    }
}

/// The result of a solve: a certified solution (possibly empty) and
/// whether the search ran to completion.
#[derive(Debug, Clone)]
pub struct Solution {
    /// Solution vertices, ascending. Empty when no nonempty solution was
    /// found — the empty set is always feasible.
    pub vertices: Vec<VertexId>,
    pub size: usize,
    /// For the edge variant: the maximal witness edge set of the solution.
    pub witness_edges: Option<Vec<(VertexId, VertexId)>>,
    /// False when the time limit cut the search short; the solution is
    /// still feasible, just not necessarily maximum.
    pub proven_optimal: bool,
    pub stats: SolveStats,
}

/// Checks a vertex set against the instance definition and returns the
/// witness edge set when valid: all induced edges for the vertex variant,
/// the maximal peeled edge set for the edge variant. `Ok(None)` means the
/// set is not a valid solution; unknown vertices are an error.
pub fn verify_solution(
    g: &Graph,
    s: &[VertexId],
    ell: u32,
    variant: Variant,
) -> Result<Option<Vec<(VertexId, VertexId)>>, GraphError> {
    let mut members = s.to_vec();
    members.sort_unstable();
    members.dedup();
    for &v in &members {
        if !g.has_vertex(v) {
            return Err(GraphError::MissingVertex(v));
        }
    }
    if members.is_empty() {
        return Ok(Some(Vec::new()));
    }
    if members.len() == 1 {
        return Ok(if ell == 0 { Some(Vec::new()) } else { None });
    }
    let induced = g.induced_subgraph(&members);
    match variant {
        Variant::Vertex => {
            let tri = enumerate_triangles(&induced);
            for &v in &members {
                if tri.vertex_triangles(v) < ell {
                    return Ok(None);
                }
            }
            if !pairwise_compatible(&induced, &members) {
                return Ok(None);
            }
            Ok(Some(induced.sorted_edges()))
        }
        Variant::Edge => {
            // The peeled fixpoint is the unique maximal witness candidate;
            // removing edges only stretches distances, so if it fails the
            // diameter test no smaller witness can pass.
            let mut st = State::new(induced);
            let ctx = BranchContext::new(ell, variant);
            ltr(&mut st, &ctx);
            if st.graph.vertex_count() != members.len() {
                return Ok(None); // some vertex lost all witness edges
            }
            if !pairwise_compatible(&st.graph, &members) {
                return Ok(None);
            }
            Ok(Some(st.graph.sorted_edges()))
        }
    }
}

fn pairwise_compatible(g: &Graph, members: &[VertexId]) -> bool {
    for (i, &u) in members.iter().enumerate() {
        for &w in &members[i + 1..] {
            if !g.compatible(u, w) {
                return false;
            }
        }
    }
    true
}

/// Per-root search bookkeeping shared down the recursion.
struct Search {
    best_witness: Option<Vec<VertexId>>,
    nodes: u64,
    deadline: Option<Instant>,
    timed_out: bool,
    use_lcr: bool,
    use_matching: bool,
    exact_matching: bool,
}

impl Search {
    fn out_of_time(&mut self) -> bool {
        if self.timed_out {
            return true;
        }
        if let Some(d) = self.deadline {
            if Instant::now() >= d {
                self.timed_out = true;
                return true;
            }
        }
        false
    }
}

/// Runs the node rule cycle to a fixpoint. Returns false when the branch
/// is infeasible. Marks added here are appended to `my_marks` so the node
/// can retract them on exit.
fn node_rules(
    st: &mut State,
    ctx: &mut BranchContext,
    search: &Search,
    my_marks: &mut Vec<VertexId>,
) -> bool {
    loop {
        let mut changed = false;
        let out = basic_rules(st, ctx);
        if out.infeasible {
            return false;
        }
        changed |= out.changed();

        let out = if search.use_lcr { lcr(st, ctx) } else { two_nr(st, ctx) };
        if out.infeasible {
            return false;
        }
        changed |= out.changed();

        let out = irr(st, ctx);
        changed |= out.changed();

        if mir(st, ctx).infeasible {
            return false;
        }

        let out = cascading_rule(st, ctx);
        changed |= out.changed();
        my_marks.extend(out.newly_marked);

        let out = no_choice_rule(st, ctx);
        changed |= out.changed();
        my_marks.extend(out.newly_marked);

        if !changed {
            return true;
        }
    }
}

fn instance_conflict_free(st: &State) -> bool {
    match &st.conflicts {
        Some(gc) => gc.is_conflict_free(),
        None => pairwise_compatible(&st.graph, &st.graph.sorted_vertices()),
    }
}

/// The unmarked vertex in the most conflicts, smallest id on ties. `None`
/// only when no live unmarked vertex has a conflict.
fn select_branching_vertex(st: &State, ctx: &BranchContext) -> Option<VertexId> {
    let live = st.graph.sorted_vertices();
    let mut best: Option<(usize, VertexId)> = None;
    for &v in &live {
        if ctx.marked.contains(&v) {
            continue;
        }
        let degree = match &st.conflicts {
            Some(gc) => gc.conflict_degree(v),
            None => live
                .iter()
                .filter(|&&u| u != v && !st.graph.compatible(u, v))
                .count(),
        };
        if degree > 0 && best.map_or(true, |(d, _)| degree > d) {
            best = Some((degree, v));
        }
    }
    best.map(|(_, v)| v)
}

/// One branch-and-bound node: rules to fixpoint, pruning, then branching
/// on delete-versus-mark for the chosen vertex. Deletions are undone via
/// checkpoints, marks via the per-node trail.
fn marked_branching(st: &mut State, ctx: &mut BranchContext, search: &mut Search) {
    if search.out_of_time() {
        return;
    }
    search.nodes += 1;
    let mut my_marks = Vec::new();
    let feasible = node_rules(st, ctx, search, &mut my_marks);
    if feasible {
        expand_node(st, ctx, search);
    }
    for m in my_marks {
        ctx.marked.remove(&m);
    }
}

fn expand_node(st: &mut State, ctx: &mut BranchContext, search: &mut Search) {
    if search.use_matching {
        let gc = st.conflicts.as_ref().expect("matching bound needs conflict graph");
        if matching_bound(gc, search.exact_matching) <= ctx.best_size {
            return;
        }
    }
    let live = st.graph.vertex_count();
    if live <= ctx.best_size {
        return;
    }
    if instance_conflict_free(st) {
        // The whole live set is mutually within distance two and satisfies
        // the triangle property, and it beats the incumbent.
        ctx.best_size = live;
        search.best_witness = Some(st.graph.sorted_vertices());
        return;
    }
    let u = select_branching_vertex(st, ctx)
        .expect("conflicts remain, so an unmarked endpoint exists");

    let cp = st.checkpoint();
    st.delete_vertex(u).unwrap();
    marked_branching(st, ctx, search);
    st.rollback(cp).unwrap();

    if search.out_of_time() {
        return;
    }

    let cp = st.checkpoint();
    ctx.marked.insert(u);
    marked_branching(st, ctx, search);
    st.rollback(cp).unwrap();
    ctx.marked.remove(&u);
}

struct RootResult {
    witness: Option<Vec<VertexId>>,
    nodes: u64,
    timed_out: bool,
}

/// Exhausts the local instance rooted at `v`: the best solution through
/// `v` larger than `floor`, or `None`.
fn solve_root(
    g: &Graph,
    root: VertexId,
    ell: u32,
    variant: Variant,
    floor: usize,
    config: &SolverConfig,
    deadline: Option<Instant>,
) -> RootResult {
    let local = g.induced_subgraph(&g.two_neighborhood(root));
    let density = local.density();
    let use_gc = config.algorithm != Algorithm::Basic;
    let mut st = State::new(local);
    let mut ctx = BranchContext::rooted(ell, variant, floor, root);
    let mut search = Search {
        best_witness: None,
        nodes: 0,
        deadline,
        timed_out: false,
        use_lcr: use_gc && density > config.density_threshold,
        use_matching: use_gc,
        exact_matching: config.exact_matching,
    };
    // Cheap degree filter before paying for the conflict graph.
    if basic_rules(&mut st, &ctx).infeasible {
        return RootResult { witness: None, nodes: 0, timed_out: false };
    }
    if use_gc {
        st.build_conflicts();
    }
    marked_branching(&mut st, &mut ctx, &mut search);
    RootResult {
        witness: search.best_witness,
        nodes: search.nodes,
        timed_out: search.timed_out,
    }
}

/// Solves the instance exactly (up to the time limit): a maximum vertex
/// set whose induced/spanning subgraph has diameter at most two and meets
/// the per-vertex or per-edge triangle threshold.
pub fn solve(g: &Graph, ell: u32, variant: Variant, config: &SolverConfig) -> Solution {
    let start = Instant::now();
    let deadline = config.time_limit.map(|d| start + d);
    let mut stats = SolveStats::default();

    let mut working = State::new(g.clone());
    let mut ctx = BranchContext::new(ell, variant);
    basic_rules(&mut working, &ctx);

    let mut best_size = 0usize;
    let mut incumbent: Vec<VertexId> = Vec::new();

    match config.algorithm {
        Algorithm::Basic | Algorithm::BasicUb => {}
        Algorithm::NeighborhoodLb | Algorithm::MultiLb => {
            let nlb = neighborhood_lower_bound_until(&working.graph, ell, variant, deadline);
            stats.nlb = Some(nlb.value);
            best_size = nlb.value;
            incumbent = nlb.witness;
            ctx.best_size = best_size;
            two_nr_basic_interleave(&mut working, &ctx);
            if config.algorithm == Algorithm::MultiLb {
                multi_root_phase(
                    &mut working,
                    ell,
                    variant,
                    config.exact_matching,
                    deadline,
                    &mut best_size,
                    &mut incumbent,
                );
                stats.multi_lb = Some(best_size);
            }
        }
    }

    stats.preprocessing_time = start.elapsed();

    // Branching phase: rooted instances by decreasing reach, each root
    // removed once its instance is exhausted. Waves of `workers` roots run
    // against a frozen incumbent so concurrent runs remain deterministic.
    let mut roots: Vec<VertexId> = working.graph.sorted_vertices();
    roots.sort_by_key(|&v| (Reverse(working.graph.two_neighborhood(v).len()), v));
    let workers = config.workers.max(1);
    let mut timed_out = false;
    let mut queue = roots.into_iter().peekable();

    while queue.peek().is_some() && !timed_out {
        if let Some(d) = deadline {
            if Instant::now() >= d {
                timed_out = true;
                break;
            }
        }
        let mut wave = Vec::new();
        while wave.len() < workers {
            let Some(v) = queue.next() else { break };
            if !working.graph.has_vertex(v) {
                continue;
            }
            if !working.graph.two_neighborhood_exceeds(v, best_size) {
                working.delete_vertex(v).unwrap();
                continue;
            }
            wave.push(v);
        }
        if wave.is_empty() {
            continue;
        }
        let floor = best_size;
        let results: Vec<RootResult> = if wave.len() == 1 {
            vec![solve_root(&working.graph, wave[0], ell, variant, floor, config, deadline)]
        } else {
            use rayon::prelude::*;
            let graph = &working.graph;
            wave.par_iter()
                .map(|&v| solve_root(graph, v, ell, variant, floor, config, deadline))
                .collect()
        };
        for r in &results {
            stats.nodes += r.nodes;
            if r.timed_out {
                timed_out = true;
            }
            if let Some(w) = &r.witness {
                if w.len() > best_size {
                    best_size = w.len();
                    incumbent = w.clone();
                }
            }
        }
        if !timed_out {
            for &v in &wave {
                working.delete_vertex(v).unwrap();
            }
        }
    }

    stats.solve_time = start.elapsed();
    let witness_edges = match variant {
        Variant::Vertex => None,
        Variant::Edge => Some(
            verify_solution(g, &incumbent, ell, variant)
                .expect("incumbent vertices come from the graph")
                .expect("incumbent must verify"),
        ),
    };
    Solution {
        size: incumbent.len(),
        vertices: incumbent,
        witness_edges,
        proven_optimal: !timed_out,
        stats,
    }
}

/// Convenience wrapper over [`solve`].
pub fn solve_instance(inst: &Instance, config: &SolverConfig) -> Solution {
    solve(&inst.graph, inst.ell, inst.variant, config)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{brute_force, is_valid_club};
    use crate::testgraphs;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn cfg(algorithm: Algorithm) -> SolverConfig {
        SolverConfig { algorithm, ..SolverConfig::default() }
    }

    fn random_graph(rng: &mut StdRng, n: u32, p: f64) -> Graph {
        let mut g = Graph::new();
        for v in 0..n {
            g.add_vertex(v);
        }
        for u in 0..n {
            for w in (u + 1)..n {
                if rng.gen_bool(p) {
                    g.add_edge(u, w);
                }
            }
        }
        g
    }

    #[test]
    fn fixtures_solve_to_known_optima() {
        for algorithm in Algorithm::all() {
            let config = cfg(algorithm);
            for variant in [Variant::Vertex, Variant::Edge] {
                let s = solve(&testgraphs::bridge6(), 1, variant, &config);
                assert_eq!((s.size, s.proven_optimal), (3, true), "{algorithm} {variant}");
                assert!(is_valid_club(&testgraphs::bridge6(), &s.vertices, 1, variant));

                let s = solve(&testgraphs::bowtie(), 1, variant, &config);
                assert_eq!(s.size, 5, "{algorithm} {variant}");
                let s = solve(&testgraphs::bowtie(), 2, variant, &config);
                assert_eq!(s.size, 0, "{algorithm} {variant}");
            }
            assert_eq!(solve(&testgraphs::k4(), 3, Variant::Vertex, &config).size, 4);
            assert_eq!(solve(&testgraphs::k4(), 4, Variant::Vertex, &config).size, 0);
            assert_eq!(solve(&testgraphs::k4(), 2, Variant::Edge, &config).size, 4);
            assert_eq!(solve(&testgraphs::k4(), 3, Variant::Edge, &config).size, 0);
            // Threshold zero: plain diameter-two clubs. The pentagon has
            // diameter two, so it is its own maximum; the heptagon is not.
            assert_eq!(solve(&testgraphs::cycle(5), 0, Variant::Vertex, &config).size, 5);
            assert_eq!(solve(&testgraphs::cycle(7), 0, Variant::Vertex, &config).size, 3);
            assert_eq!(solve(&testgraphs::cycle(5), 1, Variant::Edge, &config).size, 0);
        }
    }

    #[test]
    fn all_algorithms_match_the_oracle() {
        let mut rng = StdRng::seed_from_u64(808);
        for _ in 0..120 {
            let n = rng.gen_range(4..=12);
            let p = [0.25, 0.45, 0.65, 0.8][rng.gen_range(0..4)];
            let g = random_graph(&mut rng, n, p);
            let ell = rng.gen_range(0..3);
            for variant in [Variant::Vertex, Variant::Edge] {
                let opt = brute_force(&g, ell, variant).unwrap();
                for algorithm in Algorithm::all() {
                    let s = solve(&g, ell, variant, &cfg(algorithm));
                    assert_eq!(s.size, opt.size, "{algorithm} {variant} ell={ell}");
                    assert!(s.proven_optimal);
                    assert_eq!(s.vertices.len(), s.size);
                    assert!(is_valid_club(&g, &s.vertices, ell, variant));
                    let witness = verify_solution(&g, &s.vertices, ell, variant).unwrap();
                    assert!(witness.is_some());
                    if variant == Variant::Edge {
                        assert_eq!(s.witness_edges, witness);
                    }
                }
            }
        }
    }

    #[test]
    fn repeated_solves_are_identical() {
        let mut rng = StdRng::seed_from_u64(909);
        for workers in [1, 3] {
            for _ in 0..10 {
                let g = random_graph(&mut rng, 12, 0.4);
                let config = SolverConfig { workers, ..cfg(Algorithm::MultiLb) };
                let a = solve(&g, 1, Variant::Vertex, &config);
                let b = solve(&g, 1, Variant::Vertex, &config);
                assert_eq!(a.vertices, b.vertices);
                assert_eq!(a.size, b.size);
            }
        }
    }

    #[test]
    fn worker_count_does_not_change_the_size() {
        let mut rng = StdRng::seed_from_u64(111);
        for _ in 0..8 {
            let g = random_graph(&mut rng, 14, 0.35);
            for variant in [Variant::Vertex, Variant::Edge] {
                let solo = solve(&g, 1, variant, &cfg(Algorithm::MultiLb));
                let config = SolverConfig { workers: 4, ..cfg(Algorithm::MultiLb) };
                let multi = solve(&g, 1, variant, &config);
                assert_eq!(solo.size, multi.size);
                assert!(is_valid_club(&g, &multi.vertices, 1, variant));
            }
        }
    }

    #[test]
    fn solutions_shrink_as_the_threshold_grows() {
        let mut rng = StdRng::seed_from_u64(222);
        for _ in 0..10 {
            let g = random_graph(&mut rng, 12, 0.5);
            for variant in [Variant::Vertex, Variant::Edge] {
                let mut last = usize::MAX;
                for ell in 0..4 {
                    let s = solve(&g, ell, variant, &cfg(Algorithm::MultiLb));
                    assert!(s.size <= last, "size must be non-increasing in the threshold");
                    last = s.size;
                }
            }
            for ell in 0..3 {
                let vertex = solve(&g, ell, Variant::Vertex, &cfg(Algorithm::MultiLb));
                let edge = solve(&g, ell, Variant::Edge, &cfg(Algorithm::MultiLb));
                assert!(edge.size <= vertex.size, "edge variant is the stricter one");
            }
        }
    }

    #[test]
    fn verification_agrees_with_the_oracle() {
        let mut rng = StdRng::seed_from_u64(333);
        for _ in 0..400 {
            let n = rng.gen_range(3..10);
            let p = [0.3, 0.6][rng.gen_range(0..2)];
            let g = random_graph(&mut rng, n, p);
            let ell = rng.gen_range(0..3);
            let mut subset: Vec<VertexId> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
            subset.sort_unstable();
            for variant in [Variant::Vertex, Variant::Edge] {
                let verified = verify_solution(&g, &subset, ell, variant).unwrap();
                assert_eq!(
                    verified.is_some(),
                    is_valid_club(&g, &subset, ell, variant),
                    "n={n} ell={ell} {variant} subset={subset:?}"
                );
            }
        }
    }

    #[test]
    fn unknown_vertices_are_rejected() {
        let g = testgraphs::k4();
        assert!(verify_solution(&g, &[0, 9], 1, Variant::Vertex).is_err());
    }

    #[test]
    fn exhausted_time_limit_yields_a_feasible_unproven_result() {
        // A deadline in the past cuts the bound phase and the branching
        // alike: the result degrades to the always-feasible empty set and
        // the proof flag drops.
        let g = testgraphs::cycle(7);
        let config = SolverConfig {
            time_limit: Some(Duration::ZERO),
            ..cfg(Algorithm::NeighborhoodLb)
        };
        let s = solve(&g, 0, Variant::Vertex, &config);
        assert!(!s.proven_optimal);
        assert_eq!(s.size, 0);
        assert!(is_valid_club(&g, &s.vertices, 0, Variant::Vertex));

        // With no limit the same instance is solved outright.
        let s = solve(&g, 0, Variant::Vertex, &cfg(Algorithm::NeighborhoodLb));
        assert!(s.proven_optimal);
        assert_eq!(s.size, 3);
    }
}
