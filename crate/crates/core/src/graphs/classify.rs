use super::{clog2, oracle_blocks, BlockLabel, GraphError, WeightedGraph};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GraphClass {
    Path,
    Cycle,
    Tree,
    Pseudotree,
    Cactus,
    Sparse,
    Other,
}

impl GraphClass {
    pub const ALL: [GraphClass; 7] = [
        GraphClass::Path,
        GraphClass::Cycle,
        GraphClass::Tree,
        GraphClass::Pseudotree,
        GraphClass::Cactus,
        GraphClass::Sparse,
        GraphClass::Other,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GraphClass::Path => "path",
            GraphClass::Cycle => "cycle",
            GraphClass::Tree => "tree",
            GraphClass::Pseudotree => "pseudotree",
            GraphClass::Cactus => "cactus",
            GraphClass::Sparse => "sparse",
            GraphClass::Other => "other",
        }
    }

    /// Whether every graph of class `self` also belongs to class `wider`.
    pub fn within(self, wider: GraphClass) -> bool {
        use GraphClass::*;
        let chain = |c: GraphClass| -> &'static [GraphClass] {
            match c {
                Path => &[Path, Tree, Pseudotree, Cactus],
                Cycle => &[Cycle, Pseudotree, Cactus],
                Tree => &[Tree, Pseudotree, Cactus],
                Pseudotree => &[Pseudotree, Cactus],
                Cactus => &[Cactus],
                Sparse => &[Sparse],
                Other => &[Other],
            }
        };
        chain(self).contains(&wider)
    }
}

impl fmt::Display for GraphClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GraphClass {
    type Err = GraphError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        GraphClass::ALL
            .iter()
            .copied()
            .find(|c| c.name() == s)
            .ok_or_else(|| GraphError::Params(format!("unknown graph class '{s}'")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum ClassEvidence {
    None,
    /// An edge lying on two distinct simple cycles.
    EdgeOnTwoCycles(usize, usize),
    TooManyEdges { m: usize, bound: usize },
    Degeneracy { k: usize, bound: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub class: GraphClass,
    pub evidence: ClassEvidence,
    /// Why a non-cactus graph failed the sparse bounds.
    pub not_sparse: Option<ClassEvidence>,
}

/// Edge bound n + ⌈c·n^{1/3}⌉ for the sparse class.
pub fn sparse_edge_bound(n: usize, c: f64) -> usize {
    n + (c * (n as f64).cbrt()).ceil() as usize
}

/// Most specific class: path, cycle, tree, pseudotree, cactus, sparse, other.
pub fn classify(g: &WeightedGraph) -> Result<Classification, GraphError> {
    if !g.is_connected() {
        return Err(GraphError::Disconnected);
    }
    let (n, m) = (g.n(), g.m());
    let done = |class| {
        Ok(Classification {
            class,
            evidence: ClassEvidence::None,
            not_sparse: None,
        })
    };
    if m + 1 == n || n == 1 {
        return done(if g.max_degree() <= 2 {
            GraphClass::Path
        } else {
            GraphClass::Tree
        });
    }
    if m == n {
        return done(if g.max_degree() == 2 {
            GraphClass::Cycle
        } else {
            GraphClass::Pseudotree
        });
    }
    let Some((u, v)) = non_cactus_edge(g) else {
        return done(GraphClass::Cactus);
    };
    let evidence = ClassEvidence::EdgeOnTwoCycles(u, v);
    let bound = sparse_edge_bound(n, 1.0);
    let k = degeneracy_orientation_bound(g);
    let kb = clog2(n);
    let not_sparse = if m > bound {
        Some(ClassEvidence::TooManyEdges { m, bound })
    } else if k > kb {
        Some(ClassEvidence::Degeneracy { k, bound: kb })
    } else {
        None
    };
    let class = if not_sparse.is_none() {
        GraphClass::Sparse
    } else {
        GraphClass::Other
    };
    Ok(Classification {
        class,
        evidence,
        not_sparse,
    })
}

/// An edge on two cycles, if any: an edge of a block that is not a simple cycle.
fn non_cactus_edge(g: &WeightedGraph) -> Option<(usize, usize)> {
    let labels = oracle_blocks(g);
    let mut edges_of: HashMap<usize, Vec<usize>> = HashMap::new();
    for (i, l) in labels.iter().enumerate() {
        if let BlockLabel::Block(b) = l {
            edges_of.entry(*b).or_default().push(i);
        }
    }
    let mut blocks: Vec<_> = edges_of.into_iter().collect();
    blocks.sort();
    for (_, es) in blocks {
        let mut nodes: Vec<usize> = es
            .iter()
            .flat_map(|&e| [g.edges()[e].0, g.edges()[e].1])
            .collect();
        nodes.sort_unstable();
        nodes.dedup();
        if nodes.len() != es.len() {
            let e = g.edges()[es[0]];
            return Some((e.0, e.1));
        }
    }
    None
}

/// Degeneracy by repeatedly peeling a minimum-degree node; arboricity ≤ result.
pub fn degeneracy_orientation_bound(g: &WeightedGraph) -> usize {
    let n = g.n();
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let maxd = deg.iter().copied().max().unwrap_or(0);
    let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); maxd + 1];
    for v in 0..n {
        buckets[deg[v]].push(v);
    }
    let mut removed = vec![false; n];
    let mut k = 0;
    let mut cur: usize = 0;
    for _ in 0..n {
        cur = cur.saturating_sub(1);
        let v = loop {
            while buckets[cur].is_empty() {
                cur += 1;
            }
            let v = buckets[cur].pop().unwrap();
            if !removed[v] && deg[v] == cur {
                break v;
            }
        };
        removed[v] = true;
        k = k.max(cur);
        for &(u, _) in g.neighbors(v) {
            if !removed[u] {
                deg[u] -= 1;
                buckets[deg[u]].push(u);
            }
        }
    }
    k
}
