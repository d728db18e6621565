//! Named graphs: the `H(k)` family, smoothing, the six figure graphs and the
//! extremal dispatcher.

use thiserror::Error;

use crate::graph::{Graph, GraphError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("H(k) needs k >= 1")]
    ZeroK,
    #[error("vertex {vertex} has degree {degree}, only degree-2 vertices can be smoothed")]
    NotDegreeTwo { vertex: usize, degree: usize },
    #[error("smoothing vertex {vertex} would join already adjacent neighbours {a} and {b}")]
    NeighborsAdjacent { vertex: usize, a: usize, b: usize },
    #[error("smoothing count must be at least 1")]
    ZeroSmoothCount,
    #[error("no smoothable degree-2 vertex left at step {step}")]
    NothingToSmooth { step: usize },
    #[error("figure id must be in 1..=6, got {0}")]
    UnknownFigure(u8),
    #[error("extremal graphs are defined for n >= 4, got {0}")]
    OrderTooSmall(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// `H(k)`: the cycle `x1 y1 x2 y2 ... x2k y2k` on labels `0..4k` (x_i is
/// `2(i-1)`, y_i is `2i-1`) plus apex `z_i = 4k-1+i` joined to `x_i` and
/// `x_{i+k}`. Order `5k`, size `6k`.
pub fn build_h(k: usize) -> Result<Graph, ConstructionError> {
    if k == 0 {
        return Err(ConstructionError::ZeroK);
    }
    let c = 4 * k;
    let cycle = (0..c).map(|j| (j, (j + 1) % c));
    let apexes = (1..=k).flat_map(|i| {
        let z = c - 1 + i;
        [(z, 2 * (i - 1)), (z, 2 * (i + k - 1))]
    });
    Ok(Graph::new(5 * k, cycle.chain(apexes))?)
}

/// Deletes the degree-2 vertex `u` and joins its two neighbours. Labels above
/// `u` shift down by one.
pub fn smooth(g: &Graph, u: usize) -> Result<Graph, ConstructionError> {
    let degree = g.degree(u)?;
    if degree != 2 {
        return Err(ConstructionError::NotDegreeTwo { vertex: u, degree });
    }
    let mut nb = g.neighbors(u);
    let (a, b) = (nb.next().unwrap(), nb.next().unwrap());
    if g.has_edge(a, b) {
        return Err(ConstructionError::NeighborsAdjacent { vertex: u, a, b });
    }
    let shift = |v: usize| if v > u { v - 1 } else { v };
    Ok(g.without_vertex(u)?.with_edge(shift(a), shift(b))?)
}

/// Least-labelled degree-2 vertex whose neighbours are not adjacent.
pub fn smoothable_vertex(g: &Graph) -> Option<usize> {
    (0..g.order()).find(|&v| {
        let nb = g.neighbor_mask(v);
        if nb.count_ones() != 2 {
            return false;
        }
        let a = nb.trailing_zeros() as usize;
        nb & g.neighbor_mask(a) == 0
    })
}

/// Smooths `t >= 1` times, each time at [`smoothable_vertex`].
pub fn smooth_many(g: &Graph, t: usize) -> Result<Graph, ConstructionError> {
    if t == 0 {
        return Err(ConstructionError::ZeroSmoothCount);
    }
    let mut cur = g.clone();
    for step in 1..=t {
        let u = smoothable_vertex(&cur).ok_or(ConstructionError::NothingToSmooth { step })?;
        cur = smooth(&cur, u)?;
    }
    Ok(cur)
}

fn octagon_plus(extra: &[(usize, usize)], n: usize) -> Graph {
    let cycle = (0..8).map(|j| (j, (j + 1) % 8));
    Graph::new(n, cycle.chain(extra.iter().copied())).expect("fixture edge list is simple")
}

/// Lemma-case graphs: x-vertices `0..5`, y-vertices `5..9`, the single
/// y-edge `{5, 6}`, and the listed x-neighbourhoods of `y1..y4`.
fn case_graph(y_nbrs: [&[usize]; 4]) -> Graph {
    let mut edges = vec![(5, 6)];
    for (i, xs) in y_nbrs.iter().enumerate() {
        edges.extend(xs.iter().map(|&x| (x, 5 + i)));
    }
    Graph::new(9, edges).expect("fixture edge list is simple")
}

/// The graphs drawn in figures 1 to 6.
///
/// 1. order 10, size 13, `kappa_3 = 2`
/// 2. lemma case 1 (order 9, size 11)
/// 3. lemma subcase 2.1
/// 4. lemma subcase 2.2
/// 5. order 9, size 12, `kappa_3 = 2`
/// 6. order 8, size 10, attains the bound
pub fn figure_fixture(id: u8) -> Result<Graph, ConstructionError> {
    Ok(match id {
        1 => octagon_plus(&[(3, 7), (8, 0), (8, 4), (9, 2), (9, 6)], 10),
        2 => case_graph([&[0, 1], &[0, 2], &[1, 3, 4], &[2, 3, 4]]),
        3 => case_graph([&[0, 1], &[2, 3], &[0, 2, 4], &[1, 3, 4]]),
        4 => case_graph([&[0, 1], &[2, 3], &[0, 1, 4], &[2, 3, 4]]),
        5 => octagon_plus(&[(2, 6), (3, 7), (8, 0), (8, 4)], 9),
        6 => octagon_plus(&[(0, 4), (2, 6)], 8),
        _ => return Err(ConstructionError::UnknownFigure(id)),
    })
}

/// A graph of order `n` with `kappa_3 = 2` and the fewest possible edges.
pub fn build_extremal(n: usize) -> Result<Graph, ConstructionError> {
    match n {
        0..=3 => Err(ConstructionError::OrderTooSmall(n)),
        4 => Ok(Graph::new(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)])?),
        5 => build_h(1),
        6 | 7 => smooth_many(&figure_fixture(6)?, 8 - n),
        8 => figure_fixture(6),
        9 => figure_fixture(5),
        10 => figure_fixture(1),
        _ => {
            let k = n.div_ceil(5);
            let t = 5 * k - n;
            let h = build_h(k)?;
            if t == 0 {
                Ok(h)
            } else {
                smooth_many(&h, t)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn h_sizes() {
        for k in 1..=5 {
            let h = build_h(k).unwrap();
            assert_eq!((h.order(), h.size()), (5 * k, 6 * k));
            assert!(h.is_connected());
            assert_eq!(h.min_degree(), 2);
            assert!(h.is_stable_set(&h.degree_two_set()).unwrap());
        }
        assert_eq!(build_h(0), Err(ConstructionError::ZeroK));
    }

    #[test]
    fn h1_is_k23() {
        let h = build_h(1).unwrap();
        assert_eq!(
            h.edges(),
            vec![(0, 1), (0, 3), (0, 4), (1, 2), (2, 3), (2, 4)]
        );
        assert!(h
            .is_isomorphic(&Graph::complete_bipartite(2, 3).unwrap())
            .unwrap());
    }

    #[test]
    fn smoothing_path_and_triangle() {
        let p = Graph::path(3).unwrap();
        assert_eq!(smooth(&p, 1).unwrap(), Graph::path(2).unwrap());
        let tri = Graph::complete(3).unwrap();
        assert!(matches!(
            smooth(&tri, 0),
            Err(ConstructionError::NeighborsAdjacent { vertex: 0, .. })
        ));
        assert!(matches!(
            smooth(&Graph::complete(4).unwrap(), 0),
            Err(ConstructionError::NotDegreeTwo {
                vertex: 0,
                degree: 3
            })
        ));
        assert!(matches!(smooth(&p, 3), Err(ConstructionError::Graph(_))));
    }

    #[test]
    fn smoothing_keeps_surviving_degrees() {
        let g = figure_fixture(1).unwrap();
        let s = smooth(&g, 9).unwrap();
        assert_eq!((s.order(), s.size()), (9, 12));
        assert_eq!(&g.degrees()[..9], &s.degrees()[..]);
    }

    #[test]
    fn smooth_many_counts() {
        let h = smooth_many(&build_h(3).unwrap(), 4).unwrap();
        assert_eq!((h.order(), h.size()), (11, 14));
        let f = smooth_many(&figure_fixture(6).unwrap(), 1).unwrap();
        assert_eq!((f.order(), f.size()), (7, 9));
        assert_eq!(smooth_many(&f, 0), Err(ConstructionError::ZeroSmoothCount));
        assert_eq!(
            smooth_many(&Graph::complete(3).unwrap(), 1),
            Err(ConstructionError::NothingToSmooth { step: 1 })
        );
    }

    #[test]
    fn fixture_sizes() {
        let expect = [(10, 13), (9, 11), (9, 11), (9, 11), (9, 12), (8, 10)];
        for (id, want) in (1..=6).zip(expect) {
            let g = figure_fixture(id).unwrap();
            assert_eq!((g.order(), g.size()), want, "figure {id}");
            assert!(g.is_connected());
        }
        assert_eq!(figure_fixture(7), Err(ConstructionError::UnknownFigure(7)));
        assert_eq!(figure_fixture(6).unwrap().degree(0).unwrap(), 3);
        assert_eq!(figure_fixture(1).unwrap().min_degree(), 2);
    }

    #[test]
    fn case_premises() {
        let f2 = figure_fixture(2).unwrap();
        assert!(f2.has_edge(0, 5) && f2.has_edge(0, 6));
        let f4 = figure_fixture(4).unwrap();
        for x in [0, 1] {
            assert!(f4.has_edge(x, 5) && f4.has_edge(x, 7));
        }
    }

    #[test]
    fn extremal_dispatch() {
        assert_eq!(build_extremal(3), Err(ConstructionError::OrderTooSmall(3)));
        assert_eq!(build_extremal(8).unwrap(), figure_fixture(6).unwrap());
        assert_eq!(build_extremal(9).unwrap(), figure_fixture(5).unwrap());
        let g = build_extremal(13).unwrap();
        assert_eq!((g.order(), g.size()), (13, 16));
        assert_eq!(build_extremal(4).unwrap().size(), 5);
    }
}
