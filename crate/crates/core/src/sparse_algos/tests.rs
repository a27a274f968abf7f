use super::*;
use crate::graphs::{clog2, generate, oracle_apsp, oracle_diameter, oracle_sssp, GenParams};
use crate::netsim::SimConfig;

fn net(g: &WeightedGraph) -> Net {
    Net::new(g, &SimConfig::default()).unwrap()
}

fn unit_c6() -> WeightedGraph {
    let e: Vec<_> = (0..6).map(|i| (i, (i + 1) % 6, 1)).collect();
    WeightedGraph::new(6, &e).unwrap()
}

fn sparse(n: usize, seed: u64) -> WeightedGraph {
    generate(GraphClass::Sparse, n, &GenParams::default(), seed).unwrap()
}

fn tree_of(n: usize, edges: &[(usize, usize, u64)]) -> WeightedGraph {
    WeightedGraph::new(n, edges).unwrap()
}

/// Dijkstra on (distance, hops): the fewest hops among shortest paths.
fn min_hop_distances(g: &WeightedGraph, s: usize) -> Vec<(u64, usize)> {
    let mut best = vec![(u64::MAX, usize::MAX); g.n()];
    let mut heap = std::collections::BinaryHeap::new();
    best[s] = (0, 0);
    heap.push(std::cmp::Reverse((0u64, 0usize, s)));
    while let Some(std::cmp::Reverse((d, h, v))) = heap.pop() {
        if (d, h) > best[v] {
            continue;
        }
        for &(u, w) in g.neighbors(v) {
            let c = (d + w, h + 1);
            if c < best[u] {
                best[u] = c;
                heap.push(std::cmp::Reverse((c.0, c.1, u)));
            }
        }
    }
    best
}

#[test]
fn binarize_shapes() {
    // star centered at the highest id with four children
    let star = [(4, 0, 1), (4, 1, 2), (4, 2, 3), (4, 3, 4)];
    let b = binarize(&mut net(&tree_of(5, &star)), 5, &star).unwrap();
    assert_eq!(b.ov.len(), 8);
    assert!((0..b.ov.len()).all(|x| b.ov.degree(x) <= 3));
    assert!(b.ov.edges().iter().filter(|e| e.2 == 0).count() == 3);
    assert!((5..8).all(|x| b.ov.host[x] < 4));
    let path: Vec<_> = (1..6).map(|i| (i - 1, i, i as u64)).collect();
    let b = binarize(&mut net(&tree_of(6, &path)), 6, &path).unwrap();
    assert_eq!(b.ov.edges(), path);
}

#[test]
fn binarize_preserves_distances() {
    for seed in 0..6u64 {
        let g = generate(GraphClass::Tree, 60 + 40 * seed as usize, &GenParams::default(), seed).unwrap();
        let b = binarize(&mut net(&g), g.n(), g.edges()).unwrap();
        assert!((0..b.ov.len()).all(|x| b.ov.degree(x) <= 3));
        let hosted: Vec<usize> = (g.n()..b.ov.len()).map(|x| b.ov.host[x]).collect();
        let mut dedup = hosted.clone();
        dedup.sort_unstable();
        dedup.dedup();
        assert_eq!(dedup.len(), hosted.len(), "at most one virtual vertex per host");
        let m3 = b.ov.to_graph();
        let sample: Vec<usize> = (0..10).map(|i| (i * 37 + seed as usize) % g.n()).collect();
        for &s in &sample {
            let a = oracle_sssp(&g, s);
            let c = oracle_sssp(&m3, s);
            assert_eq!(a[..], c[..g.n()]);
        }
    }
}

#[test]
fn decomposition_of_unit_path() {
    let path: Vec<_> = (1..7).map(|i| (i - 1, i, 1)).collect();
    let g = tree_of(7, &path);
    let mut nt = net(&g);
    let b = binarize(&mut nt, 7, &path).unwrap();
    let t = build_decomposition_tree(&mut nt, &b).unwrap();
    assert_eq!(t.root, 3);
    assert_eq!(t.label[3], Label::default());
    assert_eq!(t.parent[1], Some(3));
    assert_eq!(t.parent[5], Some(3));
    assert_eq!(t.weight[1], 2);
    assert_eq!(t.max_depth(), 2);

    let one = WeightedGraph::new(1, &[]).unwrap();
    let mut nt = net(&one);
    let b = binarize(&mut nt, 1, &[]).unwrap();
    let t = build_decomposition_tree(&mut nt, &b).unwrap();
    assert_eq!((t.root, t.label[0].len), (0, 0));
}

fn pipeline(g: &WeightedGraph) -> (Net, SparseState) {
    let mut nt = net(g);
    let st = prepare(&mut nt, g).unwrap();
    (nt, st)
}

#[test]
fn decomposition_invariants() {
    for seed in 0..8u64 {
        let g = sparse(30 + 70 * seed as usize, seed);
        let (nt, st) = pipeline(&g);
        assert!(nt.metrics().overflow_events.is_empty());
        let t = &st.tm;
        let m3 = st.m3.ov.to_graph();
        assert!(t.max_depth() <= clog2(g.n()) + 1, "depth {} n {}", t.max_depth(), g.n());
        for x in 0..m3.n() {
            let Some(p) = t.parent[x] else { continue };
            assert!(t.label[p].is_prefix_of(&t.label[x]));
            assert_eq!(t.label[x].len, t.label[p].len + 1);
            assert!(2 * t.size[x] <= t.size[p] + 1, "halving at {x}");
            assert_eq!(t.weight[x] as u64, oracle_sssp(&m3, p)[x]);
        }
        // ancestor distances
        for x in (0..m3.n()).step_by(7) {
            let mut a = Some(x);
            while let Some(y) = a {
                assert_eq!(t.anc[x][t.depth(y)] as u64, oracle_sssp(&m3, y)[x]);
                a = t.parent[y];
            }
        }
    }
}

#[test]
fn distance_graph_edges_are_tree_distances() {
    let path: Vec<_> = (1..3).map(|i| (i - 1, i, 4)).collect();
    let g = tree_of(3, &path);
    let (_, st) = pipeline(&g);
    assert!(st.dg.added.is_empty());
    assert_eq!(st.dg.ov.edges().len(), 2);

    for seed in 0..8u64 {
        let g = sparse(40 + 60 * seed as usize, 100 + seed);
        let (_, st) = pipeline(&g);
        let m3 = st.m3.ov.to_graph();
        let dgraph = st.dg.ov.to_graph();
        for &(u, v, w) in dgraph.edges() {
            assert_eq!(w, oracle_sssp(&m3, u)[v]);
        }
        let hop_bound = 2 * (clog2(g.n()) + 1);
        let deg = (0..dgraph.n()).map(|x| dgraph.degree(x)).max().unwrap();
        assert!(deg <= 4 + 4 * (clog2(g.n()) + 1), "degree {deg}");
        for i in 0..10 {
            let s = (i * 53 + seed as usize) % m3.n();
            let exact = oracle_sssp(&m3, s);
            let hops = min_hop_distances(&dgraph, s);
            for t in (0..m3.n()).step_by(11) {
                assert_eq!(hops[t].0, exact[t]);
                assert!(hops[t].1 <= hop_bound, "{} hops", hops[t].1);
            }
        }
    }
}

#[test]
fn nearest_shortcuts_match_oracle() {
    for seed in 0..10u64 {
        let g = sparse(20 + 50 * seed as usize, 200 + seed);
        let (_, st) = pipeline(&g);
        let near = st.nearest.as_ref().unwrap();
        let from: Vec<Vec<u64>> = st.shortcuts.iter().map(|&x| oracle_sssp(&g, x)).collect();
        for v in 0..g.n() {
            let expect = st
                .shortcuts
                .iter()
                .enumerate()
                .map(|(i, &x)| (from[i][v], std::cmp::Reverse(x)))
                .min()
                .unwrap();
            assert_eq!((near[v].1 as u64, near[v].0), (expect.0, expect.1 .0), "seed {seed} v {v}");
            assert_eq!(st.number[near[v].0], Some(near[v].2));
        }
    }
}

#[test]
fn unit_cycle_examples() {
    let g = unit_c6();
    let (mut nt, st) = pipeline(&g);
    assert_eq!(st.non_tree, vec![(4, 5, 1)]);
    assert_eq!(st.shortcuts.len(), 2);
    let near = st.nearest.as_ref().unwrap();
    assert_eq!((near[4].0, near[4].1), (4, 0));
    // node 1 is two hops from 5 and three from 4
    assert_eq!((near[1].0, near[1].1), (5, 2));
    assert_eq!(st.apsp.history[0][0][1], 1);
    assert_eq!(st.apsp.get(0, 1), 1);
    let d = approx_sssp_on(&mut nt, &st, 0).unwrap();
    assert_eq!(d[4], 2);
    assert_eq!(approx_diameter_on(&mut nt, &st).unwrap(), 5);
}

#[test]
fn nearest_tie_goes_to_higher_id() {
    // path 0-1-2-3-4 plus the edge 0-4 heavy: shortcut vertices 0 and 4,
    // node 2 is two away from both
    let g = WeightedGraph::new(5, &[(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 4, 1), (0, 4, 9)]).unwrap();
    let (_, st) = pipeline(&g);
    assert_eq!(st.non_tree, vec![(0, 4, 9)]);
    let near = st.nearest.as_ref().unwrap();
    assert_eq!((near[2].0, near[2].1), (4, 2));
}

#[test]
fn numbering_follows_the_tour() {
    let path: Vec<_> = (1..10).map(|i| (i - 1, i, 1)).collect();
    let g = tree_of(10, &path);
    let mut nt = net(&g);
    let b = binarize(&mut nt, 10, &path).unwrap();
    let mut sigma = vec![false; 10];
    for v in [2, 5, 9] {
        sigma[v] = true;
    }
    let (number, nc) = number_shortcuts(&mut nt, &b, &sigma).unwrap();
    assert_eq!(nc, 3);
    // the tour starts at the root 9 and runs down the path
    assert_eq!((number[9], number[5], number[2]), (Some(0), Some(1), Some(2)));
    let one: Vec<bool> = (0..10).map(|v| v == 4).collect();
    assert_eq!(number_shortcuts(&mut nt, &b, &one).unwrap(), ((0..10).map(|v| (v == 4).then_some(0)).collect(), 1));
}

#[test]
fn shortcut_distances_match_oracle() {
    // two disjoint non-tree edges: four shortcut vertices
    let g = WeightedGraph::new(4, &[(0, 1, 1), (0, 2, 1), (2, 3, 1), (1, 2, 5), (0, 3, 5)]).unwrap();
    let (mut nt, st) = pipeline(&g);
    assert_eq!(st.shortcuts.len(), 4);
    let want = oracle_apsp(&g, &st.shortcuts);
    for i in 0..4 {
        for j in 0..4 {
            assert_eq!(st.apsp.get(i, j) as u64, want[i][j]);
        }
    }
    // every vertex is a shortcut vertex: the estimate is exact
    assert_eq!(approx_diameter_on(&mut nt, &st).unwrap(), oracle_diameter(&g));

    for seed in 0..10u64 {
        let g = sparse(30 + 80 * seed as usize, 300 + seed);
        let (nt, st) = pipeline(&g);
        assert!(nt.metrics().overflow_events.is_empty());
        let want = oracle_apsp(&g, &st.shortcuts);
        let k = st.shortcuts.len();
        for (t, a) in st.apsp.history.iter().enumerate() {
            for i in 0..k {
                for j in 0..k {
                    assert!(a[i][j] as u64 >= want[i][j]);
                    if t > 0 {
                        assert!(a[i][j] <= st.apsp.history[t - 1][i][j]);
                    }
                }
            }
        }
        for i in 0..k {
            for j in 0..k {
                assert_eq!(st.apsp.get(i, j) as u64, want[i][j], "seed {seed}");
            }
        }
    }
}

#[test]
fn singleton_shortcut_set_costs_nothing() {
    let g = unit_c6();
    let (mut nt, st) = pipeline(&g);
    let before = nt.round();
    let one = shortcut_apsp(&mut nt, &g, &st.tm, &[3], &[], 0).unwrap();
    assert_eq!(nt.round(), before);
    assert_eq!(one.dist, vec![vec![0]]);
}

#[test]
fn approximations_within_three() {
    for seed in 0..24u64 {
        let n = 16 + (seed as usize * 61) % 400;
        let g = sparse(n, 400 + seed);
        let (mut nt, st) = pipeline(&g);
        let s = (seed as usize * 17) % n;
        let d = approx_sssp_on(&mut nt, &st, s).unwrap();
        let exact = oracle_sssp(&g, s);
        for t in 0..n {
            assert!(exact[t] <= d[t] && d[t] <= 3 * exact[t], "seed {seed} t {t}: {} vs {}", d[t], exact[t]);
        }
        let dd = approx_diameter_on(&mut nt, &st).unwrap();
        let exact = oracle_diameter(&g);
        assert!(exact <= dd && dd <= 3 * exact, "seed {seed}: {dd} vs {exact}");
        assert!(nt.metrics().overflow_events.is_empty());
    }
}

#[test]
fn trees_are_exact_and_others_rejected() {
    let g = generate(GraphClass::Tree, 50, &GenParams::default(), 9).unwrap();
    assert_eq!(approx_sssp(&mut net(&g), &g, 3).unwrap(), oracle_sssp(&g, 3));
    assert_eq!(approx_diameter(&mut net(&g), &g).unwrap(), oracle_diameter(&g));
    let mut e = Vec::new();
    for u in 0..6 {
        for v in u + 1..6 {
            e.push((u, v, 1));
        }
    }
    let k6 = WeightedGraph::new(6, &e).unwrap();
    assert!(matches!(approx_sssp(&mut net(&k6), &k6, 0), Err(AlgoError::WrongClass { .. })));
}

#[test]
fn mst_matches_tree_edges() {
    let g = sparse(120, 7);
    let mut nt = net(&g);
    let t = mst(&mut nt, &g).unwrap();
    assert_eq!(t.len(), g.n() - 1);
}
