//! Simple undirected graphs on at most 64 vertices.
//!
//! Vertices are the dense labels `0..n`. Adjacency is kept as one neighbour
//! bitmask per vertex, so neighbourhood intersections are a single `&`.

use std::fmt;

use thiserror::Error;

/// Largest order a [`Graph`] can have (one `u64` adjacency row per vertex).
pub const MAX_VERTICES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} is out of range for a graph of order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),
    #[error("order {0} exceeds the supported maximum of {MAX_VERTICES} vertices")]
    TooLarge(usize),
    #[error("vertex {0} listed more than once")]
    RepeatedVertex(usize),
}

/// Immutable simple graph. Every "mutation" returns a new value.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

#[inline]
pub(crate) fn bit(v: usize) -> u64 {
    1u64 << v
}

#[inline]
pub(crate) fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Iterate the set bits of a mask in increasing order.
pub(crate) fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(v)
        }
    })
}

impl Graph {
    /// Builds a graph, rejecting loops, repeated edges and labels `>= n`.
    pub fn new<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Self::empty(n)?;
        for (u, v) in edges {
            g.check_vertex(u)?;
            g.check_vertex(v)?;
            if u == v {
                return Err(GraphError::Loop(u));
            }
            if g.has_edge(u, v) {
                return Err(GraphError::DuplicateEdge(u.min(v), u.max(v)));
            }
            g.adj[u] |= bit(v);
            g.adj[v] |= bit(u);
        }
        Ok(g)
    }

    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooLarge(n));
        }
        Ok(Self { n, adj: vec![0; n] })
    }

    /// Builds directly from adjacency rows. Rows must be symmetric and loop free.
    pub(crate) fn from_rows(adj: Vec<u64>) -> Self {
        debug_assert!(adj.len() <= MAX_VERTICES);
        debug_assert!(adj.iter().enumerate().all(|(v, &r)| r & bit(v) == 0));
        Self { n: adj.len(), adj }
    }

    pub fn complete(n: usize) -> Result<Self, GraphError> {
        let mut g = Self::empty(n)?;
        let all = full_mask(n);
        for v in 0..n {
            g.adj[v] = all & !bit(v);
        }
        Ok(g)
    }

    /// Cycle `0-1-...-(n-1)-0`; needs `n >= 3`.
    pub fn cycle(n: usize) -> Result<Self, GraphError> {
        if n < 3 {
            return Err(GraphError::Loop(0));
        }
        Self::new(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    /// Path `0-1-...-(n-1)`.
    pub fn path(n: usize) -> Result<Self, GraphError> {
        Self::new(n, (1..n).map(|i| (i - 1, i)))
    }

    /// Complete bipartite graph with parts `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Result<Self, GraphError> {
        Self::new(a + b, (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))))
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.adj
            .iter()
            .map(|r| r.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    pub fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v < self.n {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange {
                vertex: v,
                order: self.n,
            })
        }
    }

    /// Bitmask of all vertices.
    pub fn vertex_mask(&self) -> u64 {
        full_mask(self.n)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u] & bit(v) != 0
    }

    /// Neighbour bitmask of `v`. Panics when `v` is out of range.
    pub fn neighbor_mask(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        bits(self.adj[v])
    }

    /// All edges as `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|u| bits(self.adj[u] & !full_mask(u + 1)).map(move |v| (u, v)))
            .collect()
    }

    pub fn degree(&self, v: usize) -> Result<usize, GraphError> {
        self.check_vertex(v)?;
        Ok(self.adj[v].count_ones() as usize)
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(|r| r.count_ones() as usize).collect()
    }

    /// Minimum degree; `0` for the order-zero graph.
    pub fn min_degree(&self) -> usize {
        self.adj
            .iter()
            .map(|r| r.count_ones() as usize)
            .min()
            .unwrap_or(0)
    }

    /// Vertices reachable from `start` using only vertices inside `allowed`.
    pub(crate) fn reach_within(&self, start: u64, allowed: u64) -> u64 {
        let mut seen = start & allowed;
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0;
            for v in bits(frontier) {
                next |= self.adj[v];
            }
            frontier = next & allowed & !seen;
            seen |= frontier;
        }
        seen
    }

    pub fn is_connected(&self) -> bool {
        self.n >= 1 && self.reach_within(1, self.vertex_mask()) == self.vertex_mask()
    }

    /// Connected components as bitmasks, ordered by least member.
    pub fn components(&self) -> Vec<u64> {
        let mut left = self.vertex_mask();
        let mut out = Vec::new();
        while left != 0 {
            let comp = self.reach_within(left & left.wrapping_neg(), left);
            out.push(comp);
            left &= !comp;
        }
        out
    }

    pub fn is_stable_set(&self, s: &VertexSet) -> Result<bool, GraphError> {
        let mask = s.to_mask(self)?;
        Ok(bits(mask).all(|v| self.adj[v] & mask == 0))
    }

    /// The vertices of degree exactly two.
    pub fn degree_two_set(&self) -> VertexSet {
        VertexSet::from_mask(
            (0..self.n)
                .filter(|&v| self.adj[v].count_ones() == 2)
                .fold(0, |m, v| m | bit(v)),
        )
    }

    /// A copy with the edge `{u, v}` added.
    pub fn with_edge(&self, u: usize, v: usize) -> Result<Self, GraphError> {
        let mut edges = self.edges();
        edges.push((u, v));
        Self::new(self.n, edges)
    }

    /// A copy with vertex `u` deleted; higher labels shift down by one.
    pub fn without_vertex(&self, u: usize) -> Result<Self, GraphError> {
        self.check_vertex(u)?;
        let low = full_mask(u);
        let rows = (0..self.n)
            .filter(|&v| v != u)
            .map(|v| {
                let r = self.adj[v] & !bit(u);
                (r & low) | ((r >> 1) & !low)
            })
            .collect();
        Ok(Self::from_rows(rows))
    }

    /// Relabels vertex `v` as `perm[v]`. `perm` must be a permutation of `0..n`.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        assert_eq!(
            perm.len(),
            self.n,
            "permutation length must equal the order"
        );
        let mut rows = vec![0u64; self.n];
        for u in 0..self.n {
            for v in bits(self.adj[u]) {
                rows[perm[u]] |= bit(perm[v]);
            }
        }
        Self::from_rows(rows)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

/// Sorted, duplicate-free set of vertex labels.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    /// Sorts the members; a repeated member is an error.
    pub fn new<I: IntoIterator<Item = usize>>(members: I) -> Result<Self, GraphError> {
        let mut v: Vec<usize> = members.into_iter().collect();
        v.sort_unstable();
        if let Some(w) = v.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::RepeatedVertex(w[0]));
        }
        Ok(Self(v))
    }

    pub fn from_mask(mask: u64) -> Self {
        Self(bits(mask).collect())
    }

    pub fn members(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    /// Bitmask of the members, checked against the order of `g`.
    pub fn to_mask(&self, g: &Graph) -> Result<u64, GraphError> {
        self.0.iter().try_fold(0u64, |m, &v| {
            g.check_vertex(v)?;
            Ok(m | bit(v))
        })
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

impl<const N: usize> From<[usize; N]> for VertexSet {
    /// Panics on repeated members; intended for literals.
    fn from(a: [usize; N]) -> Self {
        Self::new(a).expect("vertex set literal has a repeated member")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_queries() {
        let c5 = Graph::cycle(5).unwrap();
        assert_eq!(c5.degree(0).unwrap(), 2);
        assert!(c5.degree(5).is_err());
        assert_eq!(Graph::empty(1).unwrap().degree(0).unwrap(), 0);
        assert_eq!(Graph::complete(4).unwrap().min_degree(), 3);
        assert_eq!(Graph::path(3).unwrap().min_degree(), 1);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(Graph::new(3, [(0, 0)]), Err(GraphError::Loop(0)));
        assert_eq!(
            Graph::new(3, [(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge(0, 1))
        );
        assert!(matches!(
            Graph::new(3, [(0, 3)]),
            Err(GraphError::VertexOutOfRange {
                vertex: 3,
                order: 3
            })
        ));
        assert_eq!(Graph::empty(65), Err(GraphError::TooLarge(65)));
    }

    #[test]
    fn connectivity() {
        assert!(Graph::cycle(5).unwrap().is_connected());
        let two_edges = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        assert!(!two_edges.is_connected());
        assert_eq!(two_edges.components(), vec![0b0011, 0b1100]);
        assert!(Graph::empty(1).unwrap().is_connected());
    }

    #[test]
    fn stable_sets() {
        let c5 = Graph::cycle(5).unwrap();
        assert!(c5.is_stable_set(&VertexSet::default()).unwrap());
        assert!(c5.is_stable_set(&[3].into()).unwrap());
        assert!(!c5.is_stable_set(&[0, 1].into()).unwrap());
        assert!(c5.is_stable_set(&[0, 2].into()).unwrap());
        assert!(c5.is_stable_set(&[0, 7].into()).is_err());
    }

    #[test]
    fn degree_two_vertices() {
        assert_eq!(
            Graph::cycle(5).unwrap().degree_two_set(),
            VertexSet::from([0, 1, 2, 3, 4])
        );
        assert!(Graph::complete(4).unwrap().degree_two_set().is_empty());
    }

    #[test]
    fn vertex_deletion_shifts_labels() {
        let p = Graph::path(4).unwrap();
        let q = p.without_vertex(1).unwrap();
        assert_eq!(q.order(), 3);
        assert_eq!(q.edges(), vec![(1, 2)]);
        let c = Graph::cycle(5).unwrap().without_vertex(4).unwrap();
        assert_eq!(c.edges(), vec![(0, 1), (1, 2), (2, 3)]);
    }

    #[test]
    fn repeated_members_rejected() {
        assert_eq!(
            VertexSet::new([1, 2, 1]),
            Err(GraphError::RepeatedVertex(1))
        );
        assert_eq!(VertexSet::from([3, 1, 2]).to_string(), "{1,2,3}");
    }
}
