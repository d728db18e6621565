//! Text formats: edge lists, graph6, Graphviz DOT and JSON certificates.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, GraphError, VertexSet, MAX_VERTICES};
use crate::packing::{
    validate_certificate, Diagnostic, DisjointTreeFamily, KappaResult, TreeCertificate,
};

// ---------------------------------------------------------------- edge lists

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EdgeListError {
    #[error("line {line}: expected two vertex labels, found {text:?}")]
    Syntax { line: usize, text: String },
    #[error("line {line}: loop at vertex {vertex}")]
    Loop { line: usize, vertex: usize },
    #[error("line {line}: duplicate edge {{{u}, {v}}}")]
    DuplicateEdge { line: usize, u: usize, v: usize },
    #[error("line {line}: label {label} overflows the {MAX_VERTICES}-vertex limit")]
    LabelOverflow { line: usize, label: usize },
    #[error("line {line}: header declares {declared} edges but {found} edge lines follow")]
    HeaderMismatch {
        line: usize,
        declared: usize,
        found: usize,
    },
    #[error("document contains no header and no edges")]
    Empty,
}

fn content_lines(text: &str) -> Vec<(usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
        .collect()
}

fn pair(line: usize, text: &str) -> Result<(usize, usize), EdgeListError> {
    let syntax = || EdgeListError::Syntax {
        line,
        text: text.to_string(),
    };
    let mut it = text.split_whitespace();
    let a = it
        .next()
        .ok_or_else(syntax)?
        .parse()
        .map_err(|_| syntax())?;
    let b = it
        .next()
        .ok_or_else(syntax)?
        .parse()
        .map_err(|_| syntax())?;
    if it.next().is_some() {
        return Err(syntax());
    }
    Ok((a, b))
}

/// Parses the edge-list format: one `u v` pair per line, `#` comments, and an
/// optional leading `n m` header.
///
/// The first line is read as a header when its first number exceeds every
/// label in the remaining lines (or, in a one-line document, when it
/// declares zero edges). Without a header the order is the largest label
/// plus one.
pub fn parse_edge_list(text: &str) -> Result<Graph, EdgeListError> {
    let lines = content_lines(text);
    let parsed = lines
        .iter()
        .map(|&(no, l)| pair(no, l).map(|p| (no, p)))
        .collect::<Result<Vec<_>, _>>()?;
    let Some(&(first_line, (a, b))) = parsed.first() else {
        return Err(EdgeListError::Empty);
    };
    let body_max = parsed[1..].iter().map(|(_, (u, v))| (*u).max(*v)).max();
    let has_header = match body_max {
        Some(max) => a > max,
        None => b == 0,
    };
    let (order, body) = if has_header {
        if b != parsed.len() - 1 {
            return Err(EdgeListError::HeaderMismatch {
                line: first_line,
                declared: b,
                found: parsed.len() - 1,
            });
        }
        (a, &parsed[1..])
    } else {
        let max = parsed.iter().map(|(_, (u, v))| (*u).max(*v)).max().unwrap();
        (max + 1, &parsed[..])
    };
    if order > MAX_VERTICES {
        let line = if has_header {
            first_line
        } else {
            body.iter()
                .find(|(_, (u, v))| (*u).max(*v) >= MAX_VERTICES)
                .map_or(first_line, |(l, _)| *l)
        };
        return Err(EdgeListError::LabelOverflow {
            line,
            label: order - 1,
        });
    }
    let mut g = Graph::empty(order).expect("order checked");
    for &(line, (u, v)) in body {
        g = match g.with_edge(u, v) {
            Ok(g) => g,
            Err(GraphError::Loop(vertex)) => return Err(EdgeListError::Loop { line, vertex }),
            Err(GraphError::DuplicateEdge(u, v)) => {
                return Err(EdgeListError::DuplicateEdge { line, u, v })
            }
            Err(_) => {
                return Err(EdgeListError::LabelOverflow {
                    line,
                    label: u.max(v),
                })
            }
        };
    }
    Ok(g)
}

/// Writes `n m` followed by the sorted edges.
pub fn emit_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.order(), g.size());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

// -------------------------------------------------------------------- graph6

/// Largest order expressible in the short graph6 size prefix.
pub const GRAPH6_MAX_ORDER: usize = 62;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6Error {
    #[error("empty graph6 line")]
    Empty,
    #[error("byte {byte:#04x} at position {position} is outside the graph6 range 63..=126")]
    BadCharacter { position: usize, byte: u8 },
    #[error("orders above {GRAPH6_MAX_ORDER} (long form) are not supported")]
    UnsupportedOrder,
    #[error("adjacency vector truncated: expected {expected} bytes, found {found}")]
    Truncated { expected: usize, found: usize },
    #[error("{0} unexpected bytes after the adjacency vector")]
    TrailingData(usize),
    #[error("non-zero padding bits in the last byte")]
    NonZeroPadding,
}

pub fn parse_graph6(line: &str) -> Result<Graph, Graph6Error> {
    let line = line.trim_end_matches(['\n', '\r']);
    let line = line.strip_prefix(">>graph6<<").unwrap_or(line);
    let bytes = line.as_bytes();
    if let Some((position, &byte)) = bytes
        .iter()
        .enumerate()
        .find(|(_, &b)| !(63..=126).contains(&b))
    {
        return Err(Graph6Error::BadCharacter { position, byte });
    }
    let (&head, body) = bytes.split_first().ok_or(Graph6Error::Empty)?;
    if head == 126 {
        return Err(Graph6Error::UnsupportedOrder);
    }
    let n = (head - 63) as usize;
    let nbits = n * n.saturating_sub(1) / 2;
    let expected = nbits.div_ceil(6);
    if body.len() < expected {
        return Err(Graph6Error::Truncated {
            expected,
            found: body.len(),
        });
    }
    if body.len() > expected {
        return Err(Graph6Error::TrailingData(body.len() - expected));
    }
    let bit_at = |k: usize| (body[k / 6] - 63) >> (5 - k % 6) & 1 == 1;
    if (nbits..expected * 6).any(bit_at) {
        return Err(Graph6Error::NonZeroPadding);
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit_at(k) {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Ok(Graph::new(n, edges).expect("graph6 bits describe a simple graph"))
}

/// Short-form graph6 encoding (no header, no newline).
pub fn emit_graph6(g: &Graph) -> Result<String, Graph6Error> {
    let n = g.order();
    if n > GRAPH6_MAX_ORDER {
        return Err(Graph6Error::UnsupportedOrder);
    }
    let mut out = String::with_capacity(1 + (n * n).div_ceil(12));
    out.push((n as u8 + 63) as char);
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push((acc + 63) as char);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(((acc << (6 - filled)) + 63) as char);
    }
    Ok(out)
}

// ----------------------------------------------------------------------- DOT

const PALETTE: [&str; 8] = [
    "red", "blue", "green4", "orange", "purple", "cyan4", "magenta", "brown",
];

fn tree_color(i: usize, count: usize) -> String {
    if count <= PALETTE.len() {
        PALETTE[i].to_string()
    } else {
        format!("\"{:.3} 0.850 0.850\"", i as f64 / count as f64)
    }
}

/// Graphviz `graph` text. Edges of each highlighted tree get their own color;
/// terminals are filled.
pub fn emit_dot(g: &Graph, trees: Option<&DisjointTreeFamily>) -> String {
    let mut owner = std::collections::HashMap::new();
    if let Some(fam) = trees {
        for (i, t) in fam.trees.iter().enumerate() {
            for &e in &t.edges {
                owner.insert(e, i);
            }
        }
    }
    let count = trees.map_or(0, |f| f.trees.len());
    let mut out = String::from("graph G {\n  node [shape=circle];\n");
    for v in 0..g.order() {
        let terminal = trees.is_some_and(|f| f.terminals.contains(v));
        if terminal {
            let _ = writeln!(out, "  {v} [style=filled, fillcolor=lightgray];");
        } else {
            let _ = writeln!(out, "  {v};");
        }
    }
    for (u, v) in g.edges() {
        match owner.get(&(u, v)) {
            Some(&i) => {
                let _ = writeln!(
                    out,
                    "  {u} -- {v} [color={}, penwidth=2.5];",
                    tree_color(i, count)
                );
            }
            None => {
                let _ = writeln!(out, "  {u} -- {v};");
            }
        }
    }
    out.push_str("}\n");
    out
}

// -------------------------------------------------------------- certificates

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDoc {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

/// JSON form of a `kappa(S)` claim with its tree family.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateDocument {
    pub graph: GraphDoc,
    pub set: Vec<usize>,
    pub kappa: usize,
    pub trees: Vec<Vec<[usize; 2]>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertificateError {
    #[error("malformed certificate document: {0}")]
    Json(String),
    #[error("certificate graph: {0}")]
    Graph(#[from] GraphError),
    #[error("kappa {kappa} does not match the {trees} trees listed")]
    CountMismatch { kappa: usize, trees: usize },
    #[error("certificate fails validation: {}", .0.iter().map(|d| d.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Diagnostic>),
}

impl GraphDoc {
    pub fn from_graph(g: &Graph) -> Self {
        Self {
            n: g.order(),
            edges: g.edges().into_iter().map(|(u, v)| [u, v]).collect(),
        }
    }

    pub fn to_graph(&self) -> Result<Graph, GraphError> {
        Graph::new(self.n, self.edges.iter().map(|e| (e[0], e[1])))
    }
}

impl CertificateDocument {
    pub fn new(g: &Graph, result: &KappaResult) -> Self {
        let mut trees: Vec<Vec<[usize; 2]>> = result
            .family
            .trees
            .iter()
            .map(|t| {
                let mut es: Vec<[usize; 2]> =
                    t.edges.iter().map(|&(u, v)| [u.min(v), u.max(v)]).collect();
                es.sort();
                es
            })
            .collect();
        trees.sort();
        Self {
            graph: GraphDoc::from_graph(g),
            set: result.witness_set.members().to_vec(),
            kappa: result.kappa,
            trees,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }
}

/// Serializes `result` for graph `g`, trees sorted by edge sequence.
pub fn emit_certificate(g: &Graph, result: &KappaResult) -> String {
    CertificateDocument::new(g, result).to_json()
}

/// Parses and re-validates a certificate document.
pub fn parse_certificate(text: &str) -> Result<(Graph, KappaResult), CertificateError> {
    let doc: CertificateDocument =
        serde_json::from_str(text).map_err(|e| CertificateError::Json(e.to_string()))?;
    let g = doc.graph.to_graph()?;
    let terminals = VertexSet::new(doc.set.iter().copied())?;
    if doc.kappa != doc.trees.len() {
        return Err(CertificateError::CountMismatch {
            kappa: doc.kappa,
            trees: doc.trees.len(),
        });
    }
    let trees = doc
        .trees
        .iter()
        .map(|es| {
            let mut vs: Vec<usize> = es.iter().flatten().copied().collect();
            vs.sort_unstable();
            vs.dedup();
            TreeCertificate {
                vertices: VertexSet::new(vs).expect("deduplicated"),
                edges: es
                    .iter()
                    .map(|e| (e[0].min(e[1]), e[0].max(e[1])))
                    .collect(),
                terminals: terminals.clone(),
            }
        })
        .collect();
    let family = DisjointTreeFamily {
        terminals: terminals.clone(),
        trees,
    };
    let diags = validate_certificate(&g, &family);
    if !diags.is_empty() {
        return Err(CertificateError::Invalid(diags));
    }
    Ok((
        g,
        KappaResult {
            kappa: doc.kappa,
            witness_set: terminals,
            family,
        },
    ))
}
