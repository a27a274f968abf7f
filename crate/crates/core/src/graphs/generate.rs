use super::{
    classify::{classify, degeneracy_orientation_bound, sparse_edge_bound},
    clog2, GraphClass, GraphError, WeightedGraph,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::HashSet;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenParams {
    pub weight_lo: u64,
    pub weight_hi: u64,
    /// Non-tree edges for the sparse class; defaults to ⌈c·n^{1/3}⌉.
    pub extra_edges: Option<usize>,
    /// Constant in the sparse edge bound n + ⌈c·n^{1/3}⌉.
    pub c: f64,
}

impl Default for GenParams {
    fn default() -> Self {
        GenParams {
            weight_lo: 1,
            weight_hi: 100,
            extra_edges: None,
            c: 1.0,
        }
    }
}

impl GenParams {
    pub fn weights(lo: u64, hi: u64) -> Self {
        GenParams {
            weight_lo: lo,
            weight_hi: hi,
            ..Default::default()
        }
    }
}

struct Builder {
    rng: ChaCha8Rng,
    lo: u64,
    hi: u64,
    edges: Vec<(usize, usize, u64)>,
    set: HashSet<(usize, usize)>,
}

impl Builder {
    fn add(&mut self, u: usize, v: usize) -> bool {
        let key = (u.min(v), u.max(v));
        if u == v || !self.set.insert(key) {
            return false;
        }
        let w = self.rng.gen_range(self.lo..=self.hi);
        self.edges.push((key.0, key.1, w));
        true
    }

    /// Random tree on 0..n given as parent pointers; mixes shallow and deep shapes.
    fn tree_parents(&mut self, n: usize) -> Vec<usize> {
        let mut parent = vec![usize::MAX; n];
        let deep = self.rng.gen_bool(0.5);
        for i in 1..n {
            parent[i] = if deep {
                let back = self.rng.gen_range(1..=i.min(3));
                i - back
            } else {
                self.rng.gen_range(0..i)
            };
        }
        parent
    }

    /// Relabels the finished graph by a random permutation.
    fn finish(mut self, n: usize) -> WeightedGraph {
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut self.rng);
        let edges: Vec<_> = self
            .edges
            .iter()
            .map(|&(u, v, w)| (perm[u], perm[v], w))
            .collect();
        WeightedGraph::new(n, &edges).expect("generator emits a simple graph")
    }
}

/// Seeded generator for each graph class. The result always classifies as
/// requested (sparse graphs are re-sampled until they are not cacti).
pub fn generate(
    class: GraphClass,
    n: usize,
    params: &GenParams,
    seed: u64,
) -> Result<WeightedGraph, GraphError> {
    if n < 2 {
        return Err(GraphError::Params("n must be at least 2".into()));
    }
    if params.weight_lo == 0 || params.weight_lo > params.weight_hi {
        return Err(GraphError::Params("weights must satisfy 1 ≤ lo ≤ hi".into()));
    }
    let mut b = Builder {
        rng: ChaCha8Rng::seed_from_u64(seed),
        lo: params.weight_lo,
        hi: params.weight_hi,
        edges: Vec::new(),
        set: HashSet::new(),
    };
    match class {
        GraphClass::Path => {
            for i in 1..n {
                b.add(i - 1, i);
            }
            Ok(b.finish(n))
        }
        GraphClass::Cycle => {
            if n < 3 {
                return Err(GraphError::Params("a cycle needs n ≥ 3".into()));
            }
            for i in 0..n {
                b.add(i, (i + 1) % n);
            }
            Ok(b.finish(n))
        }
        GraphClass::Tree => {
            if n < 4 {
                return Err(GraphError::Params("a non-path tree needs n ≥ 4".into()));
            }
            loop {
                let parent = b.tree_parents(n);
                let mut deg = vec![0; n];
                for i in 1..n {
                    deg[i] += 1;
                    deg[parent[i]] += 1;
                }
                if deg.iter().any(|&d| d >= 3) {
                    for i in 1..n {
                        b.add(parent[i], i);
                    }
                    return Ok(b.finish(n));
                }
            }
        }
        GraphClass::Pseudotree => {
            if n < 4 {
                return Err(GraphError::Params("a non-cycle pseudotree needs n ≥ 4".into()));
            }
            let len = b.rng.gen_range(3..n);
            for i in 0..len {
                b.add(i, (i + 1) % len);
            }
            for i in len..n {
                let p = b.rng.gen_range(0..i);
                b.add(p, i);
            }
            Ok(b.finish(n))
        }
        GraphClass::Cactus => gen_cactus(b, n),
        GraphClass::Sparse => gen_sparse(b, n, params),
        GraphClass::Other => Err(GraphError::Params("no generator for class 'other'".into())),
    }
}

fn gen_cactus(mut b: Builder, n: usize) -> Result<WeightedGraph, GraphError> {
    if n < 5 {
        return Err(GraphError::Params("a cactus with two cycles needs n ≥ 5".into()));
    }
    loop {
        b.edges.clear();
        b.set.clear();
        let parent = b.tree_parents(n);
        let mut children = vec![Vec::new(); n];
        for i in 1..n {
            b.add(parent[i], i);
            children[parent[i]].push(i);
        }
        // used[v]: tree edge (v, parent[v]) already lies on a cycle
        let mut used = vec![false; n];
        let mut cycles = 0;
        for _ in 0..n {
            let u = b.rng.gen_range(0..n);
            let mut path = Vec::new();
            let mut a = u;
            let up = b.rng.gen_range(0..=4);
            while path.len() < up && a != 0 && !used[a] {
                path.push(a);
                a = parent[a];
            }
            let mut v = a;
            let down = b.rng.gen_range(0..=4);
            let mut came_from = path.last().copied();
            for _ in 0..down {
                let opts: Vec<usize> = children[v]
                    .iter()
                    .copied()
                    .filter(|&c| !used[c] && Some(c) != came_from && !path.contains(&c))
                    .collect();
                let Some(&c) = opts.choose(&mut b.rng) else {
                    break;
                };
                path.push(c);
                v = c;
                came_from = None;
            }
            if path.len() < 2 || u == v || b.set.contains(&(u.min(v), u.max(v))) {
                continue;
            }
            for &x in &path {
                used[x] = true;
            }
            b.add(u, v);
            cycles += 1;
        }
        if cycles >= 2 {
            return Ok(b.finish(n));
        }
    }
}

fn gen_sparse(mut b: Builder, n: usize, params: &GenParams) -> Result<WeightedGraph, GraphError> {
    let cap = sparse_edge_bound(n, params.c) - n;
    let extra = params
        .extra_edges
        .unwrap_or_else(|| (params.c * (n as f64).cbrt()).ceil() as usize);
    if extra < 2 || extra > cap {
        return Err(GraphError::Params(format!(
            "sparse graphs need 2 ≤ extra_edges ≤ {cap}, got {extra}"
        )));
    }
    if n < 4 {
        return Err(GraphError::Params("a sparse non-cactus graph needs n ≥ 4".into()));
    }
    for _ in 0..1000 {
        b.edges.clear();
        b.set.clear();
        let parent = b.tree_parents(n);
        for i in 1..n {
            b.add(parent[i], i);
        }
        let mut added = 0;
        let mut tries = 0;
        while added < extra && tries < 100 * extra {
            tries += 1;
            let u = b.rng.gen_range(0..n);
            let v = b.rng.gen_range(0..n);
            if b.add(u, v) {
                added += 1;
            }
        }
        if added < extra {
            continue;
        }
        let g = WeightedGraph::new(n, &b.edges).expect("simple");
        if degeneracy_orientation_bound(&g) > clog2(n) {
            continue;
        }
        if classify(&g).map(|c| c.class) == Ok(GraphClass::Sparse) {
            return Ok(b.finish(n));
        }
    }
    Err(GraphError::Params(format!(
        "could not sample a non-cactus sparse graph with n = {n}, extra = {extra}"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::oracle_blocks;

    #[test]
    fn each_class_round_trips() {
        let p = GenParams::default();
        for class in [
            GraphClass::Path,
            GraphClass::Cycle,
            GraphClass::Tree,
            GraphClass::Pseudotree,
            GraphClass::Cactus,
            GraphClass::Sparse,
        ] {
            for seed in 0..1000 {
                let n = 5 + (seed as usize * 7) % 60;
                let g = generate(class, n, &p, seed).unwrap();
                assert_eq!(classify(&g).unwrap().class, class, "{class} seed {seed}");
                assert!(g.edges().iter().all(|e| (1..=100).contains(&e.2)));
            }
        }
    }

    #[test]
    fn path_of_four() {
        let g = generate(GraphClass::Path, 4, &GenParams::weights(1, 10), 3).unwrap();
        assert_eq!(classify(&g).unwrap().class, GraphClass::Path);
        assert!(g.edges().iter().all(|e| (1..=10).contains(&e.2)));
    }

    #[test]
    fn cactus_edges_on_at_most_one_cycle() {
        // fundamental-cycle counting over a BFS spanning tree
        let g = generate(GraphClass::Cactus, 50, &GenParams::default(), 11).unwrap();
        let n = g.n();
        let mut parent = vec![usize::MAX; n];
        let mut depth = vec![0usize; n];
        let mut order = vec![0usize];
        parent[0] = 0;
        let mut i = 0;
        while i < order.len() {
            let v = order[i];
            i += 1;
            for &(u, _) in g.neighbors(v) {
                if parent[u] == usize::MAX {
                    parent[u] = v;
                    depth[u] = depth[v] + 1;
                    order.push(u);
                }
            }
        }
        let mut count = vec![0usize; n];
        let mut nontree = 0;
        for &(u, v, _) in g.edges() {
            if parent[u] == v || parent[v] == u {
                continue;
            }
            nontree += 1;
            let (mut a, mut b) = (u, v);
            while a != b {
                if depth[a] < depth[b] {
                    std::mem::swap(&mut a, &mut b);
                }
                count[a] += 1;
                a = parent[a];
            }
        }
        assert!(nontree >= 2);
        assert!(count.iter().all(|&c| c <= 1));
        assert!(oracle_blocks(&g).len() == g.m());
    }

    #[test]
    fn sparse_edge_count() {
        let p = GenParams {
            extra_edges: Some(10),
            ..Default::default()
        };
        let g = generate(GraphClass::Sparse, 1000, &p, 5).unwrap();
        assert_eq!(g.m(), 999 + 10);
        assert!(g.is_connected());
    }

    #[test]
    fn bad_params() {
        assert!(generate(GraphClass::Cycle, 2, &GenParams::default(), 0).is_err());
        let p = GenParams {
            extra_edges: Some(50),
            ..Default::default()
        };
        assert!(generate(GraphClass::Sparse, 100, &p, 0).is_err());
    }

    #[test]
    fn deterministic() {
        let p = GenParams::default();
        assert_eq!(
            generate(GraphClass::Cactus, 300, &p, 9).unwrap(),
            generate(GraphClass::Cactus, 300, &p, 9).unwrap()
        );
    }
}
