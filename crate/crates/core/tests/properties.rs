use hybridnet::graphs::{generate, oracle_apsp, oracle_diameter, oracle_sssp, GenParams, GraphClass};
use hybridnet::netsim::{enforce_capacities, Envelope, OverflowPolicy};
use hybridnet::primitives::boruvka::minimum_spanning_tree;
use hybridnet::primitives::overlay::Overlay;
use hybridnet::primitives::sort::distributed_sort;
use hybridnet::sparse_algos::{approx_diameter_on, approx_sssp_on, prepare};
use hybridnet::tree_algos::ForestTour;
use hybridnet::{run_algo, Algo, Net, Output, SimConfig, WeightedGraph};
use proptest::prelude::*;

fn net(g: &WeightedGraph) -> Net {
    Net::new(g, &SimConfig::default()).unwrap()
}

fn kruskal_weight(g: &WeightedGraph) -> u64 {
    let mut e = g.edges().to_vec();
    e.sort_by_key(|&(u, v, w)| (w, u, v));
    let mut dsu: Vec<usize> = (0..g.n()).collect();
    fn find(d: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while d[r] != r {
            r = d[r];
        }
        let mut y = x;
        while d[y] != r {
            (d[y], y) = (r, d[y]);
        }
        r
    }
    let mut total = 0;
    for (u, v, w) in e {
        let (a, b) = (find(&mut dsu, u), find(&mut dsu, v));
        if a != b {
            dsu[a] = b;
            total += w;
        }
    }
    total
}

fn exact_class() -> impl Strategy<Value = GraphClass> {
    prop::sample::select(vec![GraphClass::Path, GraphClass::Cycle, GraphClass::Tree, GraphClass::Pseudotree, GraphClass::Cactus])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn exact_algorithms_match_oracle(class in exact_class(), n in 5usize..160, seed in 0u64..10_000, hi in 1u64..200) {
        let g = generate(class, n, &GenParams::weights(1, hi), seed).unwrap();
        let s = seed as usize % n;
        let mut nt = net(&g);
        prop_assert_eq!(run_algo(&mut nt, &g, Algo::Sssp, s).unwrap(), Output::Distances(oracle_sssp(&g, s)));
        prop_assert_eq!(run_algo(&mut nt, &g, Algo::Diameter, s).unwrap(), Output::Diameter(oracle_diameter(&g)));
        prop_assert!(nt.metrics().overflow_events.is_empty());
    }

    #[test]
    fn sort_ranks_are_a_sorted_permutation(keys in prop::collection::vec(0u64..100, 2..70)) {
        let n = keys.len();
        let path: Vec<_> = (1..n).map(|i| (i - 1, i, 1)).collect();
        let g = WeightedGraph::new(n, &path).unwrap();
        let mut nt = net(&g);
        let host: Vec<usize> = (0..n).collect();
        let (sorted, _) = distributed_sort(&mut nt, &host, keys.clone()).unwrap();
        let mut order = vec![usize::MAX; n];
        for (q, &r) in sorted.rank.iter().enumerate() {
            prop_assert_eq!(order[r], usize::MAX);
            order[r] = q;
        }
        let mut expect: Vec<usize> = (0..n).collect();
        expect.sort_by_key(|&q| (keys[q], q));
        prop_assert_eq!(&order, &expect);
        for r in 0..n {
            prop_assert_eq!(sorted.pred[order[r]], r.checked_sub(1).map(|p| order[p]));
            prop_assert_eq!(sorted.succ[order[r]], order.get(r + 1).copied());
        }
    }

    #[test]
    fn subtree_sums_add_up(n in 4usize..150, seed in 0u64..10_000) {
        let g = generate(GraphClass::Tree, n, &GenParams::default(), seed).unwrap();
        let mut nt = net(&g);
        let ft = ForestTour::build(&mut nt, Overlay::of_graph(&g)).unwrap();
        let root = seed as usize % n;
        let roots: Vec<bool> = (0..n).map(|v| v == root).collect();
        let rf = ft.root(&mut nt, &roots).unwrap();
        let vals: Vec<i64> = (0..n).map(|v| (v as i64 * 7919 + seed as i64) % 101 - 50).collect();
        let (sub, total) = rf.subtree_sums(&mut nt, &ft.ov, &vals).unwrap();
        prop_assert_eq!(sub[root], vals.iter().sum::<i64>());
        for v in 0..n {
            let kids: i64 = rf.children(&ft.ov, v).iter().map(|&c| sub[c]).sum();
            prop_assert_eq!(sub[v], vals[v] + kids);
            prop_assert_eq!(total[v], sub[root]);
            prop_assert_eq!(rf.parent[v].is_none(), v == root);
        }
    }

    #[test]
    fn spanning_tree_is_minimum(class in prop::sample::select(vec![GraphClass::Cactus, GraphClass::Sparse, GraphClass::Pseudotree]), n in 8usize..200, seed in 0u64..10_000) {
        let g = generate(class, n, &GenParams::default(), seed).unwrap();
        let t = minimum_spanning_tree(&mut net(&g), &g).unwrap();
        prop_assert_eq!(t.len(), n - 1);
        prop_assert!(WeightedGraph::new(n, &t).unwrap().is_connected());
        prop_assert_eq!(t.iter().map(|e| e.2).sum::<u64>(), kruskal_weight(&g));
    }

    #[test]
    fn sparse_pipeline_invariants(n in 16usize..240, seed in 0u64..10_000) {
        let g = generate(GraphClass::Sparse, n, &GenParams::default(), seed).unwrap();
        let mut nt = net(&g);
        let st = prepare(&mut nt, &g).unwrap();
        let t = &st.tm;
        for x in 0..t.parent.len() {
            if let Some(p) = t.parent[x] {
                prop_assert!(t.label[p].is_prefix_of(&t.label[x]));
                prop_assert_eq!(t.label[x].len, t.label[p].len + 1);
                prop_assert_eq!(t.depth(x), t.depth(p) + 1);
            }
        }
        let want = oracle_apsp(&g, &st.shortcuts);
        let k = st.shortcuts.len();
        for (i, a) in st.apsp.history.iter().enumerate() {
            for u in 0..k {
                for v in 0..k {
                    prop_assert!(a[u][v] as u64 >= want[u][v]);
                    prop_assert_eq!(a[u][v], a[v][u]);
                    if i > 0 {
                        prop_assert!(a[u][v] <= st.apsp.history[i - 1][u][v]);
                    }
                }
            }
        }
        let s = seed as usize % n;
        let d = approx_sssp_on(&mut nt, &st, s).unwrap();
        let exact = oracle_sssp(&g, s);
        for v in 0..n {
            prop_assert!(exact[v] <= d[v] && d[v] <= 3 * exact[v]);
        }
        let dd = approx_diameter_on(&mut nt, &st).unwrap();
        let e = oracle_diameter(&g);
        prop_assert!(e <= dd && dd <= 3 * e);
    }

    #[test]
    fn runs_are_deterministic(class in exact_class(), n in 5usize..100, seed in 0u64..1000) {
        let g = generate(class, n, &GenParams::default(), seed).unwrap();
        let cfg = SimConfig::with_seed(seed);
        let once = || {
            let mut nt = Net::new(&g, &cfg).unwrap();
            let o = run_algo(&mut nt, &g, Algo::Diameter, 0).unwrap();
            (o, nt.into_metrics())
        };
        prop_assert_eq!(once(), once());
    }

    #[test]
    fn dropping_respects_caps(msgs in prop::collection::vec((0usize..6, 0usize..6, any::<bool>()), 0..80), gamma in 1usize..5, lambda in 1usize..3) {
        let out: Vec<Envelope<()>> = msgs
            .iter()
            .map(|&(s, d, local)| if local { Envelope::local(s, d, ()) } else { Envelope::global(s, d, ()) })
            .collect();
        let (keep, violations) = enforce_capacities(&out, lambda, gamma, OverflowPolicy::DropBySenderId);
        let (all, _) = enforce_capacities(&out, lambda, gamma, OverflowPolicy::FailFast);
        prop_assert!(all.iter().all(|&k| k));
        let mut sent = [0usize; 6];
        let mut recv = [0usize; 6];
        let mut edge = std::collections::HashMap::new();
        for (i, &(s, d, local)) in msgs.iter().enumerate() {
            if !keep[i] {
                continue;
            }
            if local {
                *edge.entry((s, d)).or_insert(0) += 1;
            } else {
                sent[s] += 1;
                recv[d] += 1;
            }
        }
        prop_assert!(sent.iter().chain(&recv).all(|&c| c <= gamma));
        prop_assert!(edge.values().all(|&c| c <= lambda));
        prop_assert_eq!(violations.is_empty(), keep.iter().all(|&k| k));
    }

    #[test]
    fn text_format_round_trips(class in exact_class(), n in 5usize..60, seed in 0u64..1000) {
        let g = generate(class, n, &GenParams::default(), seed).unwrap();
        let mut buf = Vec::new();
        g.write_text(&mut buf).unwrap();
        prop_assert_eq!(WeightedGraph::read_text(&buf[..]).unwrap(), g);
    }
}

#[test]
fn ring_scan_fits_message_bound_with_heavy_weights() {
    let g = generate(GraphClass::Pseudotree, 25, &GenParams::weights(1, 22), 330).unwrap();
    let mut nt = net(&g);
    assert_eq!(run_algo(&mut nt, &g, Algo::Diameter, 0).unwrap(), Output::Diameter(oracle_diameter(&g)));
}
