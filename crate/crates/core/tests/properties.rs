mod common;

use berge_core::bits::{to_vec, Bits};
use berge_core::format::{
    parse_barrier, parse_bipartite, parse_certificate, parse_hypergraph, write_barrier,
    write_bipartite, write_certificate, write_hypergraph,
};
use berge_core::harness::{
    gen_random_hypergraph, tightness_search, EdgeSizeLaw, GenParams, TightnessConfig,
};
use berge_core::parity::{criterion_scan, delta};
use berge_core::{
    find_2k_factor, lift_to_berge, max_matching, verify_2k_factor, BipartiteGraph, Budget,
    ComponentClass, DegreeSpec, GeneralGraph, Hypergraph,
};
use proptest::prelude::*;

fn hypergraph(max_n: usize, max_m: usize) -> impl Strategy<Value = Hypergraph> {
    (1..=max_n).prop_flat_map(move |n| {
        proptest::collection::vec(1u64..1 << n, 0..=max_m).prop_map(move |masks| {
            Hypergraph::new(n, masks.into_iter().map(to_vec).collect()).unwrap()
        })
    })
}

fn graph(max_n: usize) -> impl Strategy<Value = (usize, Vec<(usize, usize)>)> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        proptest::sample::subsequence(pairs.clone(), 0..=pairs.len()).prop_map(move |e| (n, e))
    })
}

/// Bipartite graph without isolated X-vertices and `|X| + |Y| ≤ max_v`.
fn bipartite(max_v: usize) -> impl Strategy<Value = BipartiteGraph> {
    (1..max_v).prop_flat_map(move |y| {
        proptest::collection::vec(1u64..1 << y, 0..=max_v - y).prop_map(move |rows| {
            BipartiteGraph::new(y, rows.into_iter().map(to_vec).collect()).unwrap()
        })
    })
}

fn subset(n: usize) -> impl Strategy<Value = Vec<usize>> {
    (0u64..1 << n).prop_map(to_vec)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn strong_deletion_matches_incidence(
        (h, s) in hypergraph(7, 8).prop_flat_map(|h| { let n = h.vertex_count(); (Just(h), subset(n)) })
    ) {
        let direct = h.strong_delete(&s).unwrap().hypergraph.component_count();
        let g = BipartiteGraph::incidence(&h);
        let del = g.strong_delete_y(&s).unwrap();
        prop_assert!(del.graph.isolated_x().is_none());
        let comps = del.graph.components();
        for c in &comps {
            prop_assert!(c.iter().any(|&v| !del.graph.is_x(v)));
        }
        prop_assert_eq!(comps.len(), direct);
    }

    #[test]
    fn toughness_monotone_under_edge_addition(
        (h, extra) in hypergraph(7, 6).prop_flat_map(|h| { let n = h.vertex_count(); (Just(h), 1u64..1 << n) })
    ) {
        let before = h.toughness().unwrap();
        let mut edges = h.edges().to_vec();
        edges.push(to_vec(extra));
        let after = Hypergraph::new(h.vertex_count(), edges).unwrap().toughness().unwrap();
        prop_assert!(after >= before, "{} then {}", before, after);
    }

    #[test]
    fn graph_toughness_matches_oracle((n, edges) in graph(8)) {
        let t = Hypergraph::from_graph(n, &edges).unwrap().toughness().unwrap();
        let oracle = common::graph_toughness(n, &edges);
        prop_assert_eq!(t.value().map(|r| (*r.numer(), *r.denom())), oracle);
    }

    #[test]
    fn hypergraph_toughness_matches_oracle(h in hypergraph(7, 7)) {
        let t = h.toughness().unwrap();
        let oracle = common::hypergraph_toughness(h.vertex_count(), h.edges());
        prop_assert_eq!(t.value().map(|r| (*r.numer(), *r.denom())), oracle);
        if let Some(w) = t.witness() {
            let c = h.strong_delete(w).unwrap().hypergraph.component_count();
            prop_assert!(c >= 2);
        }
    }

    #[test]
    fn y_toughness_equals_toughness(h in hypergraph(7, 8)) {
        prop_assert_eq!(BipartiteGraph::incidence(&h).y_toughness().unwrap(), h.toughness().unwrap());
    }

    #[test]
    fn certificates_recount(h in hypergraph(7, 8), k in 1usize..=3) {
        let spec = DegreeSpec::new(k).unwrap();
        let g = BipartiteGraph::incidence(&h);
        if let Some(f) = find_2k_factor(&g, &spec).unwrap() {
            prop_assert!(verify_2k_factor(&g, &spec, &f).is_ok());
            let cert = lift_to_berge(&h, &f).unwrap();
            prop_assert!(h.verify_berge_factor(&cert).is_ok());
            let mut tally = vec![0; h.vertex_count()];
            let mut used = vec![false; h.edge_count()];
            for p in &cert.pairs {
                prop_assert!(!used[p.edge]);
                used[p.edge] = true;
                prop_assert!(h.edge(p.edge).contains(&p.u) && h.edge(p.edge).contains(&p.v) && p.u != p.v);
                tally[p.u] += 1;
                tally[p.v] += 1;
            }
            prop_assert!(tally.iter().all(|&d| d == k));
        }
    }

    #[test]
    fn criterion_agrees_with_solver_and_brute_force(g in bipartite(11), k in 1usize..=3) {
        let spec = DegreeSpec::new(k).unwrap();
        let scan = criterion_scan(&g, &spec, &Budget::default()).unwrap();
        let solver = find_2k_factor(&g, &spec).unwrap().is_some();
        prop_assert_eq!(scan.first_barrier.is_none(), solver);
        if g.edge_count() <= 20 {
            prop_assert_eq!(common::has_2k_factor(g.y_count(), g.x_adjacency(), k), solver);
        }
        if spec.parity_holds(&g) {
            prop_assert_eq!(scan.odd_deltas, 0);
        }
        for bar in scan.first_barrier.iter().chain(&scan.biased_barrier) {
            let fresh = delta(&g, &bar.a, &bar.b, &spec).unwrap();
            prop_assert_eq!(&fresh, bar);
            prop_assert!(bar.delta < 0);
            prop_assert_eq!(bar.hw, bar.components.iter().filter(|c| c.class == ComponentClass::Odd).count());
        }
    }

    #[test]
    fn random_pairs_have_even_delta(
        (g, labels) in bipartite(30).prop_flat_map(|g| {
            let n = g.vertex_count();
            (Just(g), proptest::collection::vec(0u8..3, n))
        }),
        k in 1usize..=4,
    ) {
        let spec = DegreeSpec::new(k).unwrap();
        prop_assume!(spec.parity_holds(&g));
        let a: Vec<usize> = (0..labels.len()).filter(|&v| labels[v] == 1).collect();
        let b: Vec<usize> = (0..labels.len()).filter(|&v| labels[v] == 2).collect();
        prop_assert_eq!(delta(&g, &a, &b, &spec).unwrap().delta % 2, 0);
    }

    #[test]
    fn matching_matches_brute_force((n, edges) in graph(10)) {
        let g = GeneralGraph::new(n, edges.iter().copied()).unwrap();
        let m = max_matching(&g);
        prop_assert!(m.validate(&g).is_ok());
        prop_assert_eq!(m.len(), common::matching_number(n, &edges));
    }

    #[test]
    fn matching_size_invariant_under_relabelling(
        ((n, edges), perm) in graph(14).prop_flat_map(|(n, e)| {
            (Just((n, e)), Just((0..n).collect::<Vec<usize>>()).prop_shuffle())
        })
    ) {
        let g = GeneralGraph::new(n, edges.iter().copied()).unwrap();
        let relabelled = GeneralGraph::new(n, edges.iter().map(|&(u, v)| (perm[u], perm[v]))).unwrap();
        prop_assert_eq!(max_matching(&g).len(), max_matching(&relabelled).len());
    }

    #[test]
    fn formats_round_trip(h in hypergraph(7, 8), k in 1usize..=2) {
        prop_assert_eq!(parse_hypergraph(&write_hypergraph(&h)).unwrap(), h.clone());
        let g = BipartiteGraph::incidence(&h);
        prop_assert_eq!(parse_bipartite(&write_bipartite(&g)).unwrap(), g.clone());
        let spec = DegreeSpec::new(k).unwrap();
        if let Some(f) = find_2k_factor(&g, &spec).unwrap() {
            let cert = lift_to_berge(&h, &f).unwrap();
            prop_assert_eq!(parse_certificate(&write_certificate(&cert)).unwrap(), cert);
        }
        let n = g.vertex_count();
        let a: Vec<usize> = Bits(0x5555_5555 & ((1u64 << n) - 1)).collect();
        let b: Vec<usize> = Bits(0x2222_2222 & ((1u64 << n) - 1) & !0x5555_5555).collect();
        let bar = delta(&g, &a, &b, &spec).unwrap();
        prop_assert_eq!(parse_barrier(&write_barrier(&bar)).unwrap(), bar);
    }

    #[test]
    fn generator_is_pure(n in 2usize..=8, m in 0usize..=10, seed: u64, hi in 2usize..=8) {
        let p = GenParams { n, m, sizes: EdgeSizeLaw::Range { lo: 2, hi: hi.min(n) }, seed, connected: false };
        let h = gen_random_hypergraph(&p).unwrap();
        prop_assert_eq!(&h, &gen_random_hypergraph(&p).unwrap());
        prop_assert_eq!(h.edge_count(), m);
        prop_assert!(h.edges().iter().all(|e| e.len() >= 2 && e.len() <= hi.min(n)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn tightness_monotone_in_budget(seed: u64, b1 in 0usize..400, extra in 0usize..400, k in 1usize..=2) {
        let run = |budget| {
            let cfg = TightnessConfig { seed, n_max: 4, ..TightnessConfig::new(k, budget) };
            tightness_search(&cfg).unwrap().best.map(|b| b.toughness)
        };
        let (small, large) = (run(b1), run(b1 + extra));
        if let Some(s) = small {
            let l = large.expect("a larger budget sees every earlier candidate");
            prop_assert!(l >= s);
        }
    }
}
