//! Exact packing of internally disjoint trees connecting a terminal set.
//!
//! For a terminal set `S`, `kappa(S)` is the largest number of edge-disjoint
//! trees, each containing `S`, whose pairwise vertex intersection is exactly
//! `S`. The generalized connectivity `kappa_k(G)` is the minimum of
//! `kappa(S)` over all `k`-subsets.
//!
//! The decision procedure assigns every non-terminal vertex and every edge
//! with both ends in `S` to one of `t` tree slots. A slot is complete once its
//! own vertices connect `S`; a spanning tree of that component, with
//! non-terminal leaves pruned, is the certificate. Leaving a vertex or an
//! `S`-edge unassigned never helps (extra material in a slot is ignored by the
//! extraction), so only slot choices are branched on. A partial assignment is
//! cut when some open slot can no longer connect `S` through its own and
//! undecided vertices, or when a terminal has fewer undecided incident edges
//! than open slots still missing an edge at it.

use std::sync::Arc;

use thiserror::Error;

use crate::graph::{bit, bits, Graph, GraphError, VertexSet};

/// Default cap on the order of graphs handed to the solver.
pub const DEFAULT_SOLVER_LIMIT: usize = 20;

/// Environment variable overriding [`DEFAULT_SOLVER_LIMIT`].
pub const SOLVER_LIMIT_ENV: &str = "TREECONN_SOLVER_LIMIT";

/// Triples evaluated per round in [`Solver::kappa_k`]. Fixed so that results
/// do not depend on the number of worker threads.
const ROUND: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("graph of order {order} exceeds the solver limit of {limit} (set {SOLVER_LIMIT_ENV} to raise it)")]
    LimitExceeded { order: usize, limit: usize },
    #[error("terminal set needs at least 2 vertices, got {0}")]
    TooFewTerminals(usize),
    #[error("need at least {needed} vertices, graph has {order}")]
    TooFewVertices { needed: usize, order: usize },
    #[error("graph is disconnected")]
    Disconnected,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// One tree of a packing, normalised so that every leaf is a terminal.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TreeCertificate {
    pub vertices: VertexSet,
    /// Edges as `(u, v)` with `u < v`, sorted.
    pub edges: Vec<(usize, usize)>,
    pub terminals: VertexSet,
}

/// Trees that pairwise share exactly the terminals and no edge.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DisjointTreeFamily {
    pub terminals: VertexSet,
    pub trees: Vec<TreeCertificate>,
}

impl DisjointTreeFamily {
    pub fn len(&self) -> usize {
        self.trees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.trees.is_empty()
    }

    /// Sorts trees by their edge sequences.
    pub fn normalize(&mut self) {
        self.trees.sort_by(|a, b| a.edges.cmp(&b.edges));
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KappaResult {
    pub kappa: usize,
    /// The terminal set; for whole-graph results the minimising subset.
    pub witness_set: VertexSet,
    pub family: DisjointTreeFamily,
}

/// A reason a tree family fails validation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Diagnostic {
    #[error("tree {tree}: vertex {vertex} is out of range")]
    VertexOutOfRange { tree: usize, vertex: usize },
    #[error("tree {tree}: edge {{{u}, {v}}} is not an edge of the graph")]
    NotInGraph { tree: usize, u: usize, v: usize },
    #[error("tree {tree}: edge {{{u}, {v}}} has an endpoint outside the tree's vertex set")]
    StrayEdge { tree: usize, u: usize, v: usize },
    #[error("tree {tree}: edge {{{u}, {v}}} listed twice")]
    RepeatedEdge { tree: usize, u: usize, v: usize },
    #[error("tree {tree}: {vertices} vertices and {edges} edges do not form a tree")]
    NotATree {
        tree: usize,
        vertices: usize,
        edges: usize,
    },
    #[error("tree {tree}: terminal {vertex} is missing")]
    MissingTerminal { tree: usize, vertex: usize },
    #[error("tree {tree}: leaf {vertex} is not a terminal")]
    NonTerminalLeaf { tree: usize, vertex: usize },
    #[error("tree {tree}: terminal set {found} differs from the family's {expected}")]
    TerminalMismatch {
        tree: usize,
        found: VertexSet,
        expected: VertexSet,
    },
    #[error("trees {a} and {b} share non-terminal vertex {vertex}")]
    SharedVertex { a: usize, b: usize, vertex: usize },
    #[error("trees {a} and {b} share edge {{{u}, {v}}}")]
    SharedEdge {
        a: usize,
        b: usize,
        u: usize,
        v: usize,
    },
}

/// Checks every structural requirement of a disjoint tree family against `g`.
/// Returns the list of problems found; empty means valid.
pub fn validate_certificate(g: &Graph, fam: &DisjointTreeFamily) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    let n = g.order();
    let term_mask = fam
        .terminals
        .iter()
        .filter(|&v| v < n)
        .fold(0u64, |m, v| m | bit(v));
    for v in fam.terminals.iter().filter(|&v| v >= n) {
        out.push(Diagnostic::VertexOutOfRange { tree: 0, vertex: v });
    }
    let mut inner_masks = Vec::with_capacity(fam.trees.len());
    let mut edge_lists = Vec::with_capacity(fam.trees.len());
    for (i, tree) in fam.trees.iter().enumerate() {
        let before = out.len();
        if tree.terminals != fam.terminals {
            out.push(Diagnostic::TerminalMismatch {
                tree: i,
                found: tree.terminals.clone(),
                expected: fam.terminals.clone(),
            });
        }
        let mut vmask = 0u64;
        for v in tree.vertices.iter() {
            if v >= n {
                out.push(Diagnostic::VertexOutOfRange { tree: i, vertex: v });
            } else {
                vmask |= bit(v);
            }
        }
        let mut rows = vec![0u64; n];
        let mut edges = Vec::with_capacity(tree.edges.len());
        for &(a, b) in &tree.edges {
            let (u, v) = (a.min(b), a.max(b));
            if v >= n || !g.has_edge(u, v) {
                out.push(Diagnostic::NotInGraph { tree: i, u, v });
                continue;
            }
            if vmask & bit(u) == 0 || vmask & bit(v) == 0 {
                out.push(Diagnostic::StrayEdge { tree: i, u, v });
                continue;
            }
            if rows[u] & bit(v) != 0 {
                out.push(Diagnostic::RepeatedEdge { tree: i, u, v });
                continue;
            }
            rows[u] |= bit(v);
            rows[v] |= bit(u);
            edges.push((u, v));
        }
        for v in fam.terminals.iter().filter(|&v| v < n) {
            if vmask & bit(v) == 0 {
                out.push(Diagnostic::MissingTerminal { tree: i, vertex: v });
            }
        }
        if out.len() == before {
            let nv = tree.vertices.len();
            let connected = if vmask == 0 {
                false
            } else {
                Graph::from_rows(rows.clone()).reach_within(vmask & vmask.wrapping_neg(), vmask)
                    == vmask
            };
            if edges.len() + 1 != nv || !connected {
                out.push(Diagnostic::NotATree {
                    tree: i,
                    vertices: nv,
                    edges: edges.len(),
                });
            } else if nv > 1 {
                for v in bits(vmask & !term_mask) {
                    if rows[v].count_ones() == 1 {
                        out.push(Diagnostic::NonTerminalLeaf { tree: i, vertex: v });
                    }
                }
            }
        }
        inner_masks.push(vmask & !term_mask);
        edge_lists.push(edges);
    }
    for a in 0..fam.trees.len() {
        for b in a + 1..fam.trees.len() {
            for v in bits(inner_masks[a] & inner_masks[b]) {
                out.push(Diagnostic::SharedVertex { a, b, vertex: v });
            }
            for &(u, v) in &edge_lists[a] {
                if edge_lists[b].contains(&(u, v)) {
                    out.push(Diagnostic::SharedEdge { a, b, u, v });
                }
            }
        }
    }
    out
}

/// Lemma-style cutoff for `kappa_3`: the minimum degree, lowered by one when
/// two minimum-degree vertices are adjacent.
pub fn kappa_upper_bounds(g: &Graph) -> Result<usize, SolverError> {
    if g.order() < 3 {
        return Err(SolverError::TooFewVertices {
            needed: 3,
            order: g.order(),
        });
    }
    if !g.is_connected() {
        return Err(SolverError::Disconnected);
    }
    let delta = g.min_degree();
    let minimal = (0..g.order())
        .filter(|&v| g.neighbor_mask(v).count_ones() as usize == delta)
        .fold(0u64, |m, v| m | bit(v));
    let adjacent = bits(minimal).any(|v| g.neighbor_mask(v) & minimal != 0);
    Ok(if adjacent { delta - 1 } else { delta })
}

/// Configured solver: order limit and optional worker pool.
#[derive(Clone)]
pub struct Solver {
    limit: usize,
    pool: Option<Arc<rayon::ThreadPool>>,
}

impl Default for Solver {
    fn default() -> Self {
        Self {
            limit: DEFAULT_SOLVER_LIMIT,
            pool: None,
        }
    }
}

impl std::fmt::Debug for Solver {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Solver")
            .field("limit", &self.limit)
            .field("threads", &self.threads())
            .finish()
    }
}

impl Solver {
    pub fn new() -> Self {
        Self::default()
    }

    /// Default solver with the limit taken from `TREECONN_SOLVER_LIMIT` when set.
    pub fn from_env() -> Self {
        let limit = std::env::var(SOLVER_LIMIT_ENV)
            .ok()
            .and_then(|s| s.trim().parse().ok())
            .unwrap_or(DEFAULT_SOLVER_LIMIT);
        Self::default().with_limit(limit)
    }

    pub fn with_limit(mut self, limit: usize) -> Self {
        self.limit = limit.min(crate::graph::MAX_VERTICES);
        self
    }

    /// Uses a dedicated pool of `threads` workers; `1` means sequential.
    pub fn with_threads(mut self, threads: usize) -> Result<Self, rayon::ThreadPoolBuildError> {
        self.pool = if threads <= 1 {
            None
        } else {
            Some(Arc::new(
                rayon::ThreadPoolBuilder::new()
                    .num_threads(threads)
                    .build()?,
            ))
        };
        Ok(self)
    }

    pub fn limit(&self) -> usize {
        self.limit
    }

    pub fn threads(&self) -> usize {
        self.pool.as_ref().map_or(1, |p| p.current_num_threads())
    }

    /// Applies `f` to every item, in parallel when a pool is configured.
    /// Output order always matches input order.
    pub fn map_ordered<T, R, F>(&self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        match &self.pool {
            None => items.iter().map(f).collect(),
            Some(pool) => {
                use rayon::prelude::*;
                pool.install(|| items.par_iter().map(f).collect())
            }
        }
    }

    fn check_order(&self, g: &Graph) -> Result<(), SolverError> {
        if g.order() > self.limit {
            Err(SolverError::LimitExceeded {
                order: g.order(),
                limit: self.limit,
            })
        } else {
            Ok(())
        }
    }

    fn terminal_mask(&self, g: &Graph, s: &VertexSet) -> Result<u64, SolverError> {
        self.check_order(g)?;
        let mask = s.to_mask(g)?;
        if s.len() < 2 {
            return Err(SolverError::TooFewTerminals(s.len()));
        }
        Ok(mask)
    }

    /// Decides `kappa(S) >= t`, returning a witnessing family when it holds.
    /// `None` means no such family exists in `g`.
    pub fn find_disjoint_trees(
        &self,
        g: &Graph,
        s: &VertexSet,
        t: usize,
    ) -> Result<Option<DisjointTreeFamily>, SolverError> {
        let terminals = self.terminal_mask(g, s)?;
        Ok(pack(g, terminals, t))
    }

    /// Exact `kappa(S)` with a certificate family of that size.
    pub fn kappa_of_set(&self, g: &Graph, s: &VertexSet) -> Result<KappaResult, SolverError> {
        let terminals = self.terminal_mask(g, s)?;
        let (kappa, family) = kappa_capped(g, terminals, usize::MAX);
        Ok(KappaResult {
            kappa,
            witness_set: s.clone(),
            family,
        })
    }

    /// `kappa_3(G)`. Disconnected graphs get `0`.
    pub fn kappa3(&self, g: &Graph) -> Result<KappaResult, SolverError> {
        self.kappa_k(g, 3)
    }

    /// `kappa_k(G)`: minimum of `kappa(S)` over all `k`-subsets, reported with
    /// the lexicographically least minimising subset.
    pub fn kappa_k(&self, g: &Graph, k: usize) -> Result<KappaResult, SolverError> {
        self.check_order(g)?;
        let n = g.order();
        if k < 2 {
            return Err(SolverError::TooFewTerminals(k));
        }
        if n < k {
            return Err(SolverError::TooFewVertices {
                needed: k,
                order: n,
            });
        }
        let subsets = Subsets::new(n, k);
        if !g.is_connected() {
            let comps = g.components();
            let split = subsets
                .into_iter()
                .find(|&m| !comps.iter().any(|&c| m & !c == 0))
                .expect("a disconnected graph has a subset spanning two components");
            return Ok(KappaResult {
                kappa: 0,
                witness_set: VertexSet::from_mask(split),
                family: DisjointTreeFamily {
                    terminals: VertexSet::from_mask(split),
                    trees: Vec::new(),
                },
            });
        }
        let cutoff = if k == 3 {
            kappa_upper_bounds(g)?
        } else {
            g.min_degree()
        };
        let all: Vec<u64> = subsets.collect();
        let mut best: Option<(usize, u64, DisjointTreeFamily)> = None;
        let mut cap = cutoff;
        for round in all.chunks(ROUND) {
            let results = self.map_ordered(round, |&m| {
                let r = match pack(g, m, cap) {
                    Some(fam) => (cap, fam),
                    None => kappa_capped(g, m, cap - 1),
                };
                (r.0, m, r.1)
            });
            for (value, m, fam) in results {
                if best.as_ref().is_none_or(|(b, _, _)| value < *b) {
                    best = Some((value, m, fam));
                }
            }
            cap = best.as_ref().map_or(cap, |b| b.0);
            // connected, so every subset has kappa >= 1
            if cap <= 1 {
                break;
            }
        }
        let (kappa, m, family) = best.expect("at least one subset");
        Ok(KappaResult {
            kappa,
            witness_set: VertexSet::from_mask(m),
            family,
        })
    }
}

/// Decides `kappa(S) >= t` with the default solver.
pub fn find_disjoint_trees(
    g: &Graph,
    s: &VertexSet,
    t: usize,
) -> Result<Option<DisjointTreeFamily>, SolverError> {
    Solver::default().find_disjoint_trees(g, s, t)
}

/// Exact `kappa(S)` with the default solver.
pub fn kappa_of_set(g: &Graph, s: &VertexSet) -> Result<KappaResult, SolverError> {
    Solver::default().kappa_of_set(g, s)
}

/// Exact `kappa_3(G)` with the default solver.
pub fn kappa3(g: &Graph) -> Result<KappaResult, SolverError> {
    Solver::default().kappa3(g)
}

/// `k`-subsets of `0..n` as bitmasks in lexicographic order.
pub(crate) struct Subsets {
    idx: Vec<usize>,
    n: usize,
    done: bool,
}

impl Subsets {
    pub(crate) fn new(n: usize, k: usize) -> Self {
        Self {
            idx: (0..k).collect(),
            n,
            done: k > n,
        }
    }
}

impl Iterator for Subsets {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        if self.done {
            return None;
        }
        let out = self.idx.iter().fold(0u64, |m, &v| m | bit(v));
        let k = self.idx.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] < self.n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

/// Exact `min(kappa(S), cap)` plus a family of that size.
fn kappa_capped(g: &Graph, terminals: u64, cap: usize) -> (usize, DisjointTreeFamily) {
    let comp = g.reach_within(terminals & terminals.wrapping_neg(), g.vertex_mask());
    if terminals & !comp != 0 || cap == 0 {
        return (
            0,
            DisjointTreeFamily {
                terminals: VertexSet::from_mask(terminals),
                trees: Vec::new(),
            },
        );
    }
    let upper = static_upper_bound(g, terminals).min(cap);
    let mut best = pack(g, terminals, 1).expect("terminals share a component");
    for t in 2..=upper {
        match pack(g, terminals, t) {
            Some(fam) => best = fam,
            None => break,
        }
    }
    (best.len(), best)
}

/// `min(min degree over S, |V - S| + floor(e(S) / (|S| - 1)))`: a tree either
/// owns a non-terminal or is a spanning tree of `S` made of `S`-edges.
fn static_upper_bound(g: &Graph, terminals: u64) -> usize {
    let k = terminals.count_ones() as usize;
    let min_deg = bits(terminals)
        .map(|v| g.neighbor_mask(v).count_ones() as usize)
        .min()
        .unwrap_or(0);
    let inner = (g.vertex_mask() & !terminals).count_ones() as usize;
    let ss = bits(terminals)
        .map(|v| (g.neighbor_mask(v) & terminals).count_ones() as usize)
        .sum::<usize>()
        / 2;
    min_deg.min(inner + ss / (k - 1))
}

/// Core decision procedure on bitmasks.
fn pack(g: &Graph, terminals: u64, t: usize) -> Option<DisjointTreeFamily> {
    let terminal_set = VertexSet::from_mask(terminals);
    if t == 0 {
        return Some(DisjointTreeFamily {
            terminals: terminal_set,
            trees: Vec::new(),
        });
    }
    if t > static_upper_bound(g, terminals) {
        return None;
    }
    let mut packer = Packer::new(g, terminals, t);
    if !packer.feasible() || !packer.dfs(0) {
        return None;
    }
    let mut fam = DisjointTreeFamily {
        terminals: terminal_set,
        trees: (0..t).map(|i| packer.extract(i)).collect(),
    };
    fam.normalize();
    Some(fam)
}

#[derive(Clone, Copy)]
enum Item {
    TerminalEdge(usize),
    Vertex(usize),
}

struct Packer<'a> {
    g: &'a Graph,
    terminals: u64,
    t: usize,
    items: Vec<Item>,
    ss: Vec<(usize, usize)>,
    own: Vec<u64>,
    own_ss: Vec<u64>,
    complete: Vec<bool>,
    undecided: u64,
    ss_undecided: u64,
}

impl<'a> Packer<'a> {
    fn new(g: &'a Graph, terminals: u64, t: usize) -> Self {
        let ss: Vec<(usize, usize)> = bits(terminals)
            .flat_map(|u| {
                bits(g.neighbor_mask(u) & terminals & !((bit(u) << 1) - 1)).map(move |v| (u, v))
            })
            .collect();
        let inner = g.vertex_mask() & !terminals;
        let items = (0..ss.len())
            .map(Item::TerminalEdge)
            .chain(bits(inner).map(Item::Vertex))
            .collect();
        Self {
            g,
            terminals,
            t,
            items,
            own: vec![0; t],
            own_ss: vec![0; t],
            complete: vec![false; t],
            undecided: inner,
            ss_undecided: if ss.is_empty() {
                0
            } else {
                (1u64 << ss.len()) - 1
            },
            ss,
        }
    }

    /// Does `S` lie in one component of the slot's graph? With `potential`,
    /// undecided vertices and `S`-edges count as available.
    fn connects(&self, slot: usize, potential: bool) -> bool {
        let (inner, ss_ok) = if potential {
            (
                self.own[slot] | self.undecided,
                self.own_ss[slot] | self.ss_undecided,
            )
        } else {
            (self.own[slot], self.own_ss[slot])
        };
        let start = self.terminals & self.terminals.wrapping_neg();
        let mut seen = start;
        let mut frontier = start;
        while frontier != 0 {
            let mut next = 0u64;
            for v in bits(frontier) {
                if self.terminals & bit(v) != 0 {
                    next |= self.g.neighbor_mask(v) & inner;
                    for e in bits(ss_ok) {
                        let (a, b) = self.ss[e];
                        if a == v {
                            next |= bit(b);
                        } else if b == v {
                            next |= bit(a);
                        }
                    }
                } else {
                    next |= self.g.neighbor_mask(v) & (inner | self.terminals);
                }
            }
            frontier = next & !seen;
            seen |= frontier;
        }
        seen & self.terminals == self.terminals
    }

    fn feasible(&self) -> bool {
        for slot in 0..self.t {
            if !self.complete[slot] && !self.connects(slot, true) {
                return false;
            }
        }
        // every open slot still needs its own edge at each terminal
        for v in bits(self.terminals) {
            let row = self.g.neighbor_mask(v);
            let ss_at_v = self.ss_at(v);
            let spare =
                (row & self.undecided).count_ones() + (ss_at_v & self.ss_undecided).count_ones();
            let missing = (0..self.t)
                .filter(|&i| {
                    !self.complete[i] && row & self.own[i] == 0 && ss_at_v & self.own_ss[i] == 0
                })
                .count() as u32;
            if spare < missing {
                return false;
            }
        }
        true
    }

    fn ss_at(&self, v: usize) -> u64 {
        self.ss
            .iter()
            .enumerate()
            .filter(|(_, &(a, b))| a == v || b == v)
            .fold(0, |m, (e, _)| m | bit(e))
    }

    fn assign(&mut self, item: Item, slot: usize) {
        match item {
            Item::TerminalEdge(e) => {
                self.ss_undecided &= !bit(e);
                self.own_ss[slot] |= bit(e);
            }
            Item::Vertex(v) => {
                self.undecided &= !bit(v);
                self.own[slot] |= bit(v);
            }
        }
    }

    fn unassign(&mut self, item: Item, slot: usize) {
        match item {
            Item::TerminalEdge(e) => {
                self.ss_undecided |= bit(e);
                self.own_ss[slot] &= !bit(e);
            }
            Item::Vertex(v) => {
                self.undecided |= bit(v);
                self.own[slot] &= !bit(v);
            }
        }
    }

    fn dfs(&mut self, depth: usize) -> bool {
        if self.complete.iter().all(|&c| c) {
            return true;
        }
        let Some(&item) = self.items.get(depth) else {
            return false;
        };
        let first_empty = (0..self.t).find(|&i| self.own[i] == 0 && self.own_ss[i] == 0);
        for slot in 0..self.t {
            if self.complete[slot] {
                continue;
            }
            let empty = self.own[slot] == 0 && self.own_ss[slot] == 0;
            if empty && Some(slot) != first_empty {
                continue;
            }
            self.assign(item, slot);
            let was_complete = self.complete[slot];
            self.complete[slot] = self.connects(slot, false);
            if self.feasible() && self.dfs(depth + 1) {
                return true;
            }
            self.complete[slot] = was_complete;
            self.unassign(item, slot);
        }
        false
    }

    /// Spanning tree of the slot's component containing `S`, with
    /// non-terminal leaves pruned.
    fn extract(&self, slot: usize) -> TreeCertificate {
        let n = self.g.order();
        let inner = self.own[slot];
        let mut rows = vec![0u64; n];
        for v in bits(inner) {
            let r = self.g.neighbor_mask(v) & (inner | self.terminals);
            rows[v] |= r;
            for w in bits(r) {
                rows[w] |= bit(v);
            }
        }
        for e in bits(self.own_ss[slot]) {
            let (a, b) = self.ss[e];
            rows[a] |= bit(b);
            rows[b] |= bit(a);
        }
        // BFS tree
        let root = self.terminals.trailing_zeros() as usize;
        let mut tree = vec![0u64; n];
        let mut seen = bit(root);
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for w in bits(rows[v] & !seen) {
                seen |= bit(w);
                tree[v] |= bit(w);
                tree[w] |= bit(v);
                queue.push_back(w);
            }
        }
        // prune non-terminal leaves until none remain
        loop {
            let leaves: u64 = bits(seen & !self.terminals)
                .filter(|&v| tree[v].count_ones() <= 1)
                .fold(0, |m, v| m | bit(v));
            if leaves == 0 {
                break;
            }
            for v in bits(leaves) {
                for w in bits(tree[v]) {
                    tree[w] &= !bit(v);
                }
                tree[v] = 0;
            }
            seen &= !leaves;
        }
        let edges = bits(seen)
            .flat_map(|u| bits(tree[u] & !((bit(u) << 1) - 1)).map(move |v| (u, v)))
            .collect();
        TreeCertificate {
            vertices: VertexSet::from_mask(seen),
            edges,
            terminals: VertexSet::from_mask(self.terminals),
        }
    }
}
