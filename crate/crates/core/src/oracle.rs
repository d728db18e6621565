//! Exhaustive reference for `kappa(S)` on very small graphs.
//!
//! Lists every subtree containing `S` whose leaves all lie in `S`, by taking
//! each vertex set `U ⊇ S` and every spanning tree of `G[U]`, then finds the
//! largest pairwise compatible collection by trying all combinations. Shares
//! nothing with the search in [`crate::packing`].

use crate::graph::{bit, bits, Graph, VertexSet};
use crate::packing::SolverError;

/// Largest order accepted by [`brute_force_kappa_of_set`].
pub const ORACLE_LIMIT: usize = 8;

#[derive(Clone, Copy)]
struct Candidate {
    inner: u64,
    edges: u64,
}

pub fn brute_force_kappa_of_set(g: &Graph, s: &VertexSet) -> Result<usize, SolverError> {
    if g.order() > ORACLE_LIMIT {
        return Err(SolverError::LimitExceeded {
            order: g.order(),
            limit: ORACLE_LIMIT,
        });
    }
    let terminals = s.to_mask(g)?;
    if s.len() < 2 {
        return Err(SolverError::TooFewTerminals(s.len()));
    }
    let all_edges = g.edges();
    let others: Vec<usize> = bits(g.vertex_mask() & !terminals).collect();
    let mut trees = Vec::new();
    for pick in 0u64..(1 << others.len()) {
        let inner = bits(pick).fold(0u64, |m, i| m | bit(others[i]));
        let within = inner | terminals;
        let local: Vec<usize> = (0..all_edges.len())
            .filter(|&e| {
                let (u, v) = all_edges[e];
                within & bit(u) != 0 && within & bit(v) != 0
            })
            .collect();
        let need = within.count_ones() as usize - 1;
        let mut label: Vec<usize> = (0..g.order()).collect();
        spanning_trees(
            &all_edges,
            &local,
            0,
            need,
            0,
            &mut label,
            &mut |edge_mask| {
                let mut deg = vec![0u32; g.order()];
                for e in bits(edge_mask) {
                    let (u, v) = all_edges[e];
                    deg[u] += 1;
                    deg[v] += 1;
                }
                if bits(inner).all(|v| deg[v] >= 2) {
                    trees.push(Candidate {
                        inner,
                        edges: edge_mask,
                    });
                }
            },
        );
    }
    let mut best = 0;
    largest_family(&trees, 0, 0, 0, 0, &mut best);
    Ok(best)
}

/// Enumerates edge subsets of `local[from..]` that complete a spanning tree,
/// tracking components with a relabelling array.
fn spanning_trees(
    edges: &[(usize, usize)],
    local: &[usize],
    from: usize,
    need: usize,
    chosen: u64,
    label: &mut Vec<usize>,
    emit: &mut dyn FnMut(u64),
) {
    if need == 0 {
        emit(chosen);
        return;
    }
    if local.len() - from < need {
        return;
    }
    let e = local[from];
    let (u, v) = edges[e];
    let (lu, lv) = (label[u], label[v]);
    if lu != lv {
        let saved = label.clone();
        for l in label.iter_mut() {
            if *l == lv {
                *l = lu;
            }
        }
        spanning_trees(
            edges,
            local,
            from + 1,
            need - 1,
            chosen | bit(e),
            label,
            emit,
        );
        *label = saved;
    }
    spanning_trees(edges, local, from + 1, need, chosen, label, emit);
}

fn largest_family(
    trees: &[Candidate],
    from: usize,
    used_inner: u64,
    used_edges: u64,
    size: usize,
    best: &mut usize,
) {
    *best = (*best).max(size);
    for i in from..trees.len() {
        if size + (trees.len() - i) <= *best {
            return;
        }
        let c = trees[i];
        if c.inner & used_inner == 0 && c.edges & used_edges == 0 {
            largest_family(
                trees,
                i + 1,
                used_inner | c.inner,
                used_edges | c.edges,
                size + 1,
                best,
            );
        }
    }
}
