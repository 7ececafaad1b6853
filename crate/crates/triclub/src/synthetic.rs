//! Seeded synthetic graph generators for the benchmark corpus: small-world
//! rings, preferential attachment with triad formation, and planted
//! community structure. All are deterministic in the seed.

use crate::graph::{Graph, VertexId};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Watts–Strogatz small world: a ring lattice where each vertex reaches
/// `k / 2` neighbors on each side, with every rightward edge rewired to a
/// uniform random target with probability `beta`. Edge count stays `n*k/2`
/// except when a rewire collides with an existing edge and is kept in
/// place.
pub fn watts_strogatz(n: u32, k: u32, beta: f64, seed: u64) -> Graph {
    assert!(k % 2 == 0 && k < n, "degree must be even and below n");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::new();
    for v in 0..n {
        g.add_vertex(v);
    }
    for j in 1..=(k / 2) {
        for i in 0..n {
            let mut target = (i + j) % n;
            if beta > 0.0 && rng.gen_bool(beta) {
                for _ in 0..8 {
                    let candidate = rng.gen_range(0..n);
                    if candidate != i && !g.has_edge(i, candidate) {
                        target = candidate;
                        break;
                    }
                }
            }
            g.add_edge(i, target);
        }
    }
    g
}

/// Preferential attachment with triad formation. Each new vertex attaches
/// `m` edges: targets are degree-proportional, but after the first edge
/// each further one closes a triangle with probability `p` by picking a
/// neighbor of the previous target. High `p` gives the clustered,
/// heavy-tailed graphs typical of social networks.
pub fn triad_attachment(n: u32, m: u32, p: f64, seed: u64) -> Graph {
    assert!(m >= 1 && n > m, "need at least m+1 vertices");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::new();
    // One slot per edge endpoint: sampling uniformly from this list is
    // degree-proportional sampling.
    let mut slots: Vec<VertexId> = Vec::new();
    for v in 0..m {
        g.add_vertex(v);
    }
    for v in m..n {
        g.add_vertex(v);
        let mut last_target: Option<VertexId> = None;
        let mut attached = 0;
        let mut guard = 0;
        while attached < m && guard < 200 {
            guard += 1;
            let target = if let Some(prev) = last_target.filter(|_| rng.gen_bool(p)) {
                // Triad step: a random neighbor of the previous target.
                let nbrs = g.sorted_neighbors(prev);
                if nbrs.is_empty() {
                    continue;
                }
                nbrs[rng.gen_range(0..nbrs.len())]
            } else if slots.is_empty() {
                rng.gen_range(0..v)
            } else {
                slots[rng.gen_range(0..slots.len())]
            };
            if target == v || g.has_edge(v, target) {
                continue;
            }
            g.add_edge(v, target);
            slots.push(v);
            slots.push(target);
            last_target = Some(target);
            attached += 1;
        }
    }
    g
}

/// Planted partition: `communities` equal-size blocks, edge probability
/// `p_in` inside a block and `p_out` across blocks.
pub fn planted_partition(n: u32, communities: u32, p_in: f64, p_out: f64, seed: u64) -> Graph {
    assert!(communities >= 1 && communities <= n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let block = |v: u32| (v as u64 * communities as u64 / n as u64) as u32;
    let mut g = Graph::new();
    for v in 0..n {
        g.add_vertex(v);
    }
    for u in 0..n {
        for w in (u + 1)..n {
            let p = if block(u) == block(w) { p_in } else { p_out };
            if p > 0.0 && rng.gen_bool(p) {
                g.add_edge(u, w);
            }
        }
    }
    g
}
