use crate::graphs::WeightedGraph;

/// A graph whose vertices are hosted by real nodes. Real graphs map every
/// vertex to itself; derived structures add virtual vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Overlay {
    pub host: Vec<usize>,
    /// Unique identifier used for ordering and tie-breaking.
    pub key: Vec<u64>,
    /// Neighbors with edge weights, sorted by neighbor key.
    pub adj: Vec<Vec<(usize, u64)>>,
}

impl Overlay {
    pub fn of_graph(g: &WeightedGraph) -> Self {
        Overlay::subgraph(g, |_, _| true)
    }

    /// Same vertex set, only the edges accepted by `keep`.
    pub fn subgraph(g: &WeightedGraph, keep: impl Fn(usize, usize) -> bool) -> Self {
        let edges: Vec<_> = g.edges().iter().copied().filter(|&(u, v, _)| keep(u, v)).collect();
        Overlay::from_edges((0..g.n()).collect(), (0..g.n() as u64).collect(), &edges)
    }

    pub fn from_edges(host: Vec<usize>, key: Vec<u64>, edges: &[(usize, usize, u64)]) -> Self {
        let mut adj = vec![Vec::new(); host.len()];
        for &(u, v, w) in edges {
            adj[u].push((v, w));
            adj[v].push((u, w));
        }
        for a in adj.iter_mut() {
            a.sort_by_key(|e| key[e.0]);
        }
        Overlay { host, key, adj }
    }

    pub fn len(&self) -> usize {
        self.host.len()
    }

    pub fn is_empty(&self) -> bool {
        self.host.is_empty()
    }

    pub fn degree(&self, x: usize) -> usize {
        self.adj[x].len()
    }

    /// Position of `y` in the neighbor list of `x`.
    pub fn index_of(&self, x: usize, y: usize) -> Option<usize> {
        self.adj[x].binary_search_by_key(&self.key[y], |e| self.key[e.0]).ok()
    }

    pub fn edges(&self) -> Vec<(usize, usize, u64)> {
        let mut out = Vec::new();
        for x in 0..self.len() {
            for &(y, w) in &self.adj[x] {
                if x < y {
                    out.push((x, y, w));
                }
            }
        }
        out
    }

    /// The overlay as a plain weighted graph over its vertex indices.
    pub fn to_graph(&self) -> WeightedGraph {
        WeightedGraph::new(self.len(), &self.edges()).expect("overlay edges are simple")
    }
}
