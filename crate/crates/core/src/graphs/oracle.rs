use super::WeightedGraph;
use std::cmp::Reverse;
use std::collections::BinaryHeap;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleTables {
    pub source: usize,
    pub dist: Vec<u64>,
    pub ecc: Vec<u64>,
    pub diameter: u64,
}

impl OracleTables {
    pub fn build(g: &WeightedGraph, s: usize) -> Self {
        let ecc = oracle_eccentricities(g);
        OracleTables {
            source: s,
            dist: oracle_sssp(g, s),
            diameter: ecc.iter().copied().max().unwrap_or(0),
            ecc,
        }
    }
}

/// Textbook Dijkstra. Unreachable nodes get `u64::MAX`.
pub fn oracle_sssp(g: &WeightedGraph, s: usize) -> Vec<u64> {
    let mut dist = vec![u64::MAX; g.n()];
    let mut heap = BinaryHeap::new();
    dist[s] = 0;
    heap.push(Reverse((0u64, s)));
    while let Some(Reverse((d, v))) = heap.pop() {
        if d > dist[v] {
            continue;
        }
        for &(u, w) in g.neighbors(v) {
            let nd = d + w;
            if nd < dist[u] {
                dist[u] = nd;
                heap.push(Reverse((nd, u)));
            }
        }
    }
    dist
}

pub fn oracle_eccentricities(g: &WeightedGraph) -> Vec<u64> {
    (0..g.n())
        .map(|v| oracle_sssp(g, v).into_iter().max().unwrap_or(0))
        .collect()
}

pub fn oracle_diameter(g: &WeightedGraph) -> u64 {
    oracle_eccentricities(g).into_iter().max().unwrap_or(0)
}

/// Distances between all pairs of `subset`, row/column order as given.
pub fn oracle_apsp(g: &WeightedGraph, subset: &[usize]) -> Vec<Vec<u64>> {
    subset
        .iter()
        .map(|&s| {
            let d = oracle_sssp(g, s);
            subset.iter().map(|&t| d[t]).collect()
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BlockLabel {
    Bridge,
    Block(usize),
}

/// Biconnected components by the iterative Hopcroft-Tarjan edge-stack method.
/// Returns one label per edge of `g.edges()`; single-edge blocks are bridges.
pub fn oracle_blocks(g: &WeightedGraph) -> Vec<BlockLabel> {
    let n = g.n();
    let edge_index = |u: usize, v: usize| -> usize {
        let (a, b) = (u.min(v), u.max(v));
        g.edges()
            .binary_search_by(|e| (e.0, e.1).cmp(&(a, b)))
            .expect("edge exists")
    };
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut comps: Vec<Vec<usize>> = Vec::new();
    let mut estack: Vec<usize> = Vec::new();
    let mut timer = 0;
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        // (node, parent, next neighbor position)
        let mut stack = vec![(root, usize::MAX, 0usize)];
        while let Some(&mut (v, parent, ref mut pos)) = stack.last_mut() {
            if *pos < g.degree(v) {
                let (u, _) = g.neighbors(v)[*pos];
                *pos += 1;
                if u == parent {
                    continue;
                }
                if disc[u] == usize::MAX {
                    estack.push(edge_index(v, u));
                    disc[u] = timer;
                    low[u] = timer;
                    timer += 1;
                    stack.push((u, v, 0));
                } else if disc[u] < disc[v] {
                    estack.push(edge_index(v, u));
                    low[v] = low[v].min(disc[u]);
                }
            } else {
                stack.pop();
                if parent != usize::MAX {
                    low[parent] = low[parent].min(low[v]);
                    if low[v] >= disc[parent] {
                        let stop = edge_index(parent, v);
                        let mut comp = Vec::new();
                        while let Some(e) = estack.pop() {
                            comp.push(e);
                            if e == stop {
                                break;
                            }
                        }
                        comps.push(comp);
                    }
                }
            }
        }
    }
    let mut labels = vec![BlockLabel::Bridge; g.m()];
    for (ci, comp) in comps.iter().enumerate() {
        for &e in comp {
            if comp.len() > 1 {
                labels[e] = BlockLabel::Block(ci);
            }
        }
    }
    labels
}
