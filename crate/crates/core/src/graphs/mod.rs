//! Weighted undirected graphs, class generators and validators, and the
//! sequential oracles every distributed result is checked against.

mod classify;
mod generate;
mod oracle;

pub use classify::{classify, degeneracy_orientation_bound, sparse_edge_bound, ClassEvidence, GraphClass};
pub use generate::{generate, GenParams};
pub use oracle::{
    oracle_apsp, oracle_blocks, oracle_diameter, oracle_eccentricities, oracle_sssp, BlockLabel,
    OracleTables,
};

use std::fmt;
use std::io::{BufRead, Write};

#[derive(Debug, Clone, thiserror::Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop at node {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {{{0}, {1}}}")]
    Duplicate(usize, usize),
    #[error("node id {0} out of range for n = {1}")]
    OutOfRange(usize, usize),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid generator parameters: {0}")]
    Params(String),
    #[error("expected a {expected} graph, got {got}")]
    WrongClass { expected: String, got: String },
}

#[derive(Clone, PartialEq, Eq)]
pub struct WeightedGraph {
    n: usize,
    adj: Vec<Vec<(usize, u64)>>,
    edges: Vec<(usize, usize, u64)>,
}

impl fmt::Debug for WeightedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WeightedGraph(n={}, edges={:?})", self.n, self.edges)
    }
}

impl WeightedGraph {
    /// Builds a graph from an edge list. Connectivity is not checked here.
    pub fn new(n: usize, edges: &[(usize, usize, u64)]) -> Result<Self, GraphError> {
        let mut adj = vec![Vec::new(); n];
        let mut list = Vec::with_capacity(edges.len());
        for &(u, v, w) in edges {
            if u >= n {
                return Err(GraphError::OutOfRange(u, n));
            }
            if v >= n {
                return Err(GraphError::OutOfRange(v, n));
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            let (a, b) = if u < v { (u, v) } else { (v, u) };
            adj[a].push((b, w));
            adj[b].push((a, w));
            list.push((a, b, w));
        }
        for (v, nb) in adj.iter_mut().enumerate() {
            nb.sort_unstable();
            for pair in nb.windows(2) {
                if pair[0].0 == pair[1].0 {
                    let (a, b) = (v.min(pair[0].0), v.max(pair[0].0));
                    return Err(GraphError::Duplicate(a, b));
                }
            }
        }
        list.sort_unstable();
        Ok(WeightedGraph { n, adj, edges: list })
    }

    pub fn connected(n: usize, edges: &[(usize, usize, u64)]) -> Result<Self, GraphError> {
        let g = Self::new(n, edges)?;
        if !g.is_connected() {
            return Err(GraphError::Disconnected);
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Neighbors sorted by id, with edge weights.
    pub fn neighbors(&self, v: usize) -> &[(usize, u64)] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(|a| a.len()).max().unwrap_or(0)
    }

    /// Edges as (u, v, w) with u < v, sorted.
    pub fn edges(&self) -> &[(usize, usize, u64)] {
        &self.edges
    }

    pub fn weight(&self, u: usize, v: usize) -> Option<u64> {
        self.adj[u]
            .binary_search_by_key(&v, |&(x, _)| x)
            .ok()
            .map(|i| self.adj[u][i].1)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.weight(u, v).is_some()
    }

    pub fn max_weight(&self) -> u64 {
        self.edges.iter().map(|e| e.2).max().unwrap_or(0)
    }

    pub fn total_weight(&self) -> u64 {
        self.edges.iter().map(|e| e.2).sum()
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &(u, _) in &self.adj[v] {
                if !seen[u] {
                    seen[u] = true;
                    count += 1;
                    stack.push(u);
                }
            }
        }
        count == self.n
    }

    /// Subgraph on the same node set keeping only the listed edges.
    pub fn with_edges(&self, keep: impl Fn(usize, usize, u64) -> bool) -> WeightedGraph {
        let edges: Vec<_> = self
            .edges
            .iter()
            .copied()
            .filter(|&(u, v, w)| keep(u, v, w))
            .collect();
        WeightedGraph::new(self.n, &edges).expect("subgraph of a valid graph")
    }

    /// Reads the text format: a header line "n m" followed by m lines "u v w".
    pub fn read_text(reader: impl BufRead) -> Result<Self, GraphError> {
        let mut lines = reader
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.unwrap_or_default()))
            .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'));
        let (hl, header) = lines.next().ok_or(GraphError::Parse {
            line: 1,
            msg: "missing header".into(),
        })?;
        let nums = parse_fields(&header, hl, 2)?;
        let (n, m) = (nums[0] as usize, nums[1] as usize);
        let mut edges = Vec::with_capacity(m);
        for (ln, line) in lines {
            let f = parse_fields(&line, ln, 3)?;
            edges.push((f[0] as usize, f[1] as usize, f[2]));
        }
        if edges.len() != m {
            return Err(GraphError::Parse {
                line: 1,
                msg: format!("header says {m} edges, found {}", edges.len()),
            });
        }
        Self::connected(n, &edges)
    }

    pub fn write_text(&self, mut w: impl Write) -> std::io::Result<()> {
        writeln!(w, "{} {}", self.n, self.m())?;
        for &(u, v, wt) in &self.edges {
            writeln!(w, "{u} {v} {wt}")?;
        }
        Ok(())
    }
}

fn parse_fields(line: &str, ln: usize, k: usize) -> Result<Vec<u64>, GraphError> {
    let f: Result<Vec<u64>, _> = line.split_whitespace().map(str::parse).collect();
    match f {
        Ok(v) if v.len() == k => Ok(v),
        _ => Err(GraphError::Parse {
            line: ln,
            msg: format!("expected {k} unsigned integers"),
        }),
    }
}

/// ⌈log₂ x⌉ with the convention that it is at least 1.
pub fn clog2(x: usize) -> usize {
    if x <= 2 {
        1
    } else {
        (usize::BITS - (x - 1).leading_zeros()) as usize
    }
}

/// ⌊log₂ x⌋ for x ≥ 1, 0 for x = 0.
pub fn flog2(x: usize) -> usize {
    if x <= 1 {
        0
    } else {
        (usize::BITS - 1 - x.leading_zeros()) as usize
    }
}
