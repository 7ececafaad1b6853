//! Independent reference implementation for small instances.
//!
//! Everything here is deliberately written from the problem definitions
//! alone — bitmask subsets, textbook distance checks, naive triangle
//! counting — and shares no machinery with the solver, so the two sides can
//! check each other. The subset enumeration caps out at
//! [`MAX_ORACLE_VERTICES`] vertices.

use crate::graph::{Graph, VertexId};
use crate::Variant;
use rustc_hash::FxHashMap;
use thiserror::Error;

/// Largest vertex count the brute-force enumeration accepts.
pub const MAX_ORACLE_VERTICES: usize = 16;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("graph has {0} vertices; the oracle enumerates at most {MAX_ORACLE_VERTICES}")]
    TooLarge(usize),
    #[error("required vertex {0} is not in the graph")]
    MissingVertex(VertexId),
}

/// A maximum solution found by enumeration: its size and sorted vertex ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleSolution {
    pub size: usize,
    pub vertices: Vec<VertexId>,
}

struct MaskView {
    ids: Vec<VertexId>,
    adj: Vec<u32>,
}

fn mask_view(g: &Graph) -> Result<MaskView, OracleError> {
    let ids = g.sorted_vertices();
    if ids.len() > MAX_ORACLE_VERTICES {
        return Err(OracleError::TooLarge(ids.len()));
    }
    let index: FxHashMap<VertexId, usize> =
        ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut adj = vec![0u32; ids.len()];
    for (i, &v) in ids.iter().enumerate() {
        for w in g.neighbors(v) {
            adj[i] |= 1 << index[&w];
        }
    }
    Ok(MaskView { ids, adj })
}

fn bits(mut m: u32) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(i)
        }
    })
}

/// Distance-at-most-two check for every pair inside `members`, using the
/// adjacency in `adj` restricted to `members`.
fn diameter_at_most_two(adj: &[u32], members: u32) -> bool {
    for i in bits(members) {
        let direct = adj[i] & members;
        let mut reach = direct | (1 << i);
        for j in bits(direct) {
            reach |= adj[j] & members;
        }
        if reach & members != members {
            return false;
        }
    }
    true
}

fn vertex_variant_ok(adj: &[u32], members: u32, ell: u32) -> bool {
    match members.count_ones() {
        0 => return true,
        1 => return ell == 0,
        _ => {}
    }
    if !diameter_at_most_two(adj, members) {
        return false;
    }
    if ell == 0 {
        return true;
    }
    for i in bits(members) {
        let direct = adj[i] & members;
        // Triangles through i are adjacent pairs among its neighbors; the
        // sum below counts each such pair twice.
        let mut twice = 0;
        for j in bits(direct) {
            twice += (adj[j] & direct).count_ones();
        }
        if twice / 2 < ell {
            return false;
        }
    }
    true
}

fn edge_variant_ok(adj: &[u32], members: u32, ell: u32) -> bool {
    match members.count_ones() {
        0 => return true,
        1 => return ell == 0,
        _ => {}
    }
    // Peel edges lying in fewer than `ell` triangles of the remaining
    // subgraph until none are left; the fixpoint is the unique maximal
    // witness candidate.
    let mut cur: Vec<u32> = adj
        .iter()
        .enumerate()
        .map(|(i, &a)| if members & (1 << i) != 0 { a & members } else { 0 })
        .collect();
    if ell > 0 {
        loop {
            let mut doomed = Vec::new();
            for i in bits(members) {
                for j in bits(cur[i]) {
                    if j > i && (cur[i] & cur[j]).count_ones() < ell {
                        doomed.push((i, j));
                    }
                }
            }
            if doomed.is_empty() {
                break;
            }
            for (i, j) in doomed {
                cur[i] &= !(1 << j);
                cur[j] &= !(1 << i);
            }
        }
    }
    diameter_at_most_two(&cur, members)
}

fn mask_ok(adj: &[u32], members: u32, ell: u32, variant: Variant) -> bool {
    match variant {
        Variant::Vertex => vertex_variant_ok(adj, members, ell),
        Variant::Edge => edge_variant_ok(adj, members, ell),
    }
}

/// Whether `s` is a valid solution of the given variant, judged from the
/// problem definition alone. Vertices outside the graph make `s` invalid.
/// The empty set is always valid; a singleton only for `ell == 0`.
pub fn is_valid_club(g: &Graph, s: &[VertexId], ell: u32, variant: Variant) -> bool {
    let Ok(view) = mask_view(&g.induced_subgraph(s)) else {
        return false;
    };
    if s.iter().any(|v| !g.has_vertex(*v)) {
        return false;
    }
    let members = (1u32 << view.ids.len()) - 1;
    mask_ok(&view.adj, members, ell, variant)
}

/// Maximum-size valid solution that contains every vertex of `must_contain`
/// and exceeds size `k`, or `None`. Subsets are enumerated in decreasing
/// size with an early exit on the first hit.
pub fn brute_force_constrained(
    g: &Graph,
    ell: u32,
    variant: Variant,
    must_contain: &[VertexId],
    k: usize,
) -> Result<Option<OracleSolution>, OracleError> {
    let view = mask_view(g)?;
    let n = view.ids.len();
    let index: FxHashMap<VertexId, usize> =
        view.ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut must = 0u32;
    for &v in must_contain {
        let Some(&i) = index.get(&v) else {
            return Err(OracleError::MissingVertex(v));
        };
        must |= 1 << i;
    }

    let mut by_size: Vec<Vec<u32>> = vec![Vec::new(); n + 1];
    for m in 0..(1u32 << n) {
        if m & must == must {
            by_size[m.count_ones() as usize].push(m);
        }
    }
    for size in (0..=n).rev() {
        if size <= k {
            break;
        }
        for &m in &by_size[size] {
            if mask_ok(&view.adj, m, ell, variant) {
                let vertices: Vec<VertexId> = bits(m).map(|i| view.ids[i]).collect();
                return Ok(Some(OracleSolution { size, vertices }));
            }
        }
    }
    Ok(None)
}

/// Maximum-size valid solution of the whole instance. Falls back to the
/// empty solution (size 0, always valid) when nothing larger exists.
pub fn brute_force(g: &Graph, ell: u32, variant: Variant) -> Result<OracleSolution, OracleError> {
    Ok(brute_force_constrained(g, ell, variant, &[], 0)?
        .unwrap_or(OracleSolution { size: 0, vertices: Vec::new() }))
}

/// Every valid solution (including the empty one), as sorted id vectors.
/// Intended for exhaustive safety checks on tiny graphs.
pub fn all_valid_clubs(
    g: &Graph,
    ell: u32,
    variant: Variant,
) -> Result<Vec<Vec<VertexId>>, OracleError> {
    let view = mask_view(g)?;
    let n = view.ids.len();
    let mut out = Vec::new();
    for m in 0..(1u32 << n) {
        if mask_ok(&view.adj, m, ell, variant) {
            out.push(bits(m).map(|i| view.ids[i]).collect());
        }
    }
    Ok(out)
}
