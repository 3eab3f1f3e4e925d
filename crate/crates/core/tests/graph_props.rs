mod common;

use proptest::prelude::*;
use spexlab::graph::{canonical_form, graph6};
use spexlab::{Construction, Graph};

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut g = Graph::new(n);
            let mut i = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[i] {
                        g.add_edge(u, v);
                    }
                    i += 1;
                }
            }
            g
        })
    })
}

proptest! {
    #[test]
    fn graph6_round_trip(g in arb_graph(70)) {
        let text = graph6::encode(&g).unwrap();
        let back = graph6::decode(&text).unwrap();
        prop_assert_eq!(back, g);
    }

    #[test]
    fn adjacency_is_symmetric_and_counted(g in arb_graph(20)) {
        let mut twice = 0;
        for u in 0..g.n() {
            prop_assert!(!g.has_edge(u, u));
            for v in 0..g.n() {
                prop_assert_eq!(g.has_edge(u, v), g.has_edge(v, u));
                twice += g.has_edge(u, v) as usize;
            }
        }
        prop_assert_eq!(g.edge_count() * 2, twice);
        prop_assert_eq!(g.recount_edges(), g.edge_count());
    }

    #[test]
    fn canonical_form_ignores_labels(g in arb_graph(12), seed in any::<u64>()) {
        let perm = common::random_permutation(&mut common::rng(seed), g.n());
        let h = g.relabel(&perm);
        let (cg, ch) = (canonical_form(&g), canonical_form(&h));
        prop_assert_eq!(&cg.bytes, &ch.bytes);
        prop_assert_eq!(g.relabel(&cg.relabeling), cg.graph());
    }

    #[test]
    fn shells_partition_reachable_vertices(g in arb_graph(16), src in 0usize..16) {
        let u = src % g.n();
        let sh = g.shells(u);
        let mut dist = vec![usize::MAX; g.n()];
        for (i, shell) in sh.shells.iter().enumerate() {
            for &v in shell {
                prop_assert_eq!(dist[v], usize::MAX);
                dist[v] = i;
            }
        }
        for &v in &sh.unreachable {
            prop_assert_eq!(dist[v], usize::MAX);
        }
        for (v, &d) in dist.iter().enumerate() {
            if d == usize::MAX || d == 0 {
                continue;
            }
            prop_assert!(g.neighbors(v).any(|w| dist[w] == d - 1));
            prop_assert!(g.neighbors(v).all(|w| dist[w] + 1 >= d));
        }
    }
}

#[test]
fn construction_edge_counts() {
    for n in 3..30 {
        for k in 1..n {
            let s = Construction::S { n, k }.build().unwrap();
            assert_eq!(s.edge_count(), k * (k - 1) / 2 + k * (n - k));
        }
    }
    let m = Construction::KMatching { a: 2, b: 6 }.build().unwrap();
    assert_eq!(m.edge_count(), 14);
}
