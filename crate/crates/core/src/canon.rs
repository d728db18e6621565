//! Canonical labelling by colour refinement plus individualisation.
//!
//! The search tree individualises one vertex of the first non-singleton cell
//! at a time and keeps the lexicographically least adjacency code over all
//! discrete leaves. Vertices of a cell that are twins of an already tried
//! vertex are skipped: swapping twins is an automorphism fixing the current
//! partition, so their subtrees yield the same codes.

use thiserror::Error;

use crate::graph::{bit, bits, Graph};

/// Largest order accepted by [`Graph::canonical_form`].
pub const CANON_LIMIT: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("canonical labelling is limited to {limit} vertices, got {order}")]
pub struct CanonError {
    pub order: usize,
    pub limit: usize,
}

/// Isomorphism-invariant key: the adjacency rows of the canonically relabelled graph.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm {
    rows: Vec<u64>,
}

impl CanonicalForm {
    pub fn order(&self) -> usize {
        self.rows.len()
    }

    /// The canonical representative itself.
    pub fn to_graph(&self) -> Graph {
        Graph::from_rows(self.rows.clone())
    }
}

type Cells = Vec<Vec<usize>>;

fn refine(g: &Graph, cells: &mut Cells) {
    loop {
        let masks: Vec<u64> = cells
            .iter()
            .map(|c| c.iter().fold(0, |m, &v| m | bit(v)))
            .collect();
        let mut next: Cells = Vec::with_capacity(cells.len());
        for cell in cells.iter() {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<u32>, usize)> = cell
                .iter()
                .map(|&v| {
                    let row = g.neighbor_mask(v);
                    (masks.iter().map(|m| (row & m).count_ones()).collect(), v)
                })
                .collect();
            keyed.sort();
            let mut start = 0;
            for i in 1..=keyed.len() {
                if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                    next.push(keyed[start..i].iter().map(|(_, v)| *v).collect());
                    start = i;
                }
            }
        }
        let stable = next.len() == cells.len();
        *cells = next;
        if stable {
            return;
        }
    }
}

fn code_for(g: &Graph, cells: &Cells) -> (Vec<u64>, Vec<usize>) {
    let mut perm = vec![0; g.order()];
    for (label, cell) in cells.iter().enumerate() {
        perm[cell[0]] = label;
    }
    let h = g.relabel(&perm);
    ((0..h.order()).map(|v| h.neighbor_mask(v)).collect(), perm)
}

fn are_twins(g: &Graph, u: usize, w: usize) -> bool {
    g.neighbor_mask(u) & !bit(w) == g.neighbor_mask(w) & !bit(u)
}

fn search(g: &Graph, mut cells: Cells, best: &mut Option<(Vec<u64>, Vec<usize>)>) {
    refine(g, &mut cells);
    let Some(target) = cells.iter().position(|c| c.len() > 1) else {
        let (code, perm) = code_for(g, &cells);
        if best.as_ref().is_none_or(|(b, _)| code < *b) {
            *best = Some((code, perm));
        }
        return;
    };
    let cell = cells[target].clone();
    let mut tried: Vec<usize> = Vec::new();
    for &v in &cell {
        if tried.iter().any(|&u| are_twins(g, u, v)) {
            continue;
        }
        tried.push(v);
        let mut child = Vec::with_capacity(cells.len() + 1);
        child.extend_from_slice(&cells[..target]);
        child.push(vec![v]);
        child.push(cell.iter().copied().filter(|&w| w != v).collect());
        child.extend_from_slice(&cells[target + 1..]);
        search(g, child, best);
    }
}

impl Graph {
    /// Canonical labelling: vertex `v` receives label `result[v]`.
    pub fn canonical_labeling(&self) -> Result<Vec<usize>, CanonError> {
        let n = self.order();
        if n > CANON_LIMIT {
            return Err(CanonError {
                order: n,
                limit: CANON_LIMIT,
            });
        }
        if n == 0 {
            return Ok(Vec::new());
        }
        let degrees = self.degrees();
        let mut by_degree: Vec<usize> = (0..n).collect();
        by_degree.sort_by_key(|&v| (degrees[v], v));
        let mut cells: Cells = Vec::new();
        for v in by_degree {
            match cells.last_mut() {
                Some(c) if degrees[c[0]] == degrees[v] => c.push(v),
                _ => cells.push(vec![v]),
            }
        }
        let mut best = None;
        search(self, cells, &mut best);
        Ok(best.map(|(_, perm)| perm).unwrap_or_default())
    }

    pub fn canonical_form(&self) -> Result<CanonicalForm, CanonError> {
        let perm = self.canonical_labeling()?;
        let h = self.relabel(&perm);
        Ok(CanonicalForm {
            rows: (0..h.order()).map(|v| h.neighbor_mask(v)).collect(),
        })
    }

    pub fn is_isomorphic(&self, other: &Graph) -> Result<bool, CanonError> {
        if self.order() != other.order() || self.size() != other.size() {
            return Ok(false);
        }
        Ok(self.canonical_form()? == other.canonical_form()?)
    }
}

/// Tests whether `perm` maps `g` onto itself.
pub fn is_automorphism(g: &Graph, perm: &[usize]) -> bool {
    (0..g.order()).all(|u| {
        bits(g.neighbor_mask(u)).fold(0u64, |m, v| m | bit(perm[v])) == g.neighbor_mask(perm[u])
    })
}
