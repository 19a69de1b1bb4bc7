mod common;

use proptest::prelude::*;
use rewire_core::{
    average_local_clustering, average_path_length, cache_apply_move, count_triangles, count_wedges,
    global_clustering, local_clustering, ring_lattice, Graph, Move, TriangleWedgeCache,
};

proptest! {
    #[test]
    fn toggles_keep_adjacency_consistent(
        n in 3usize..25,
        ops in prop::collection::vec((0usize..25, 0usize..25), 0..120),
    ) {
        let mut g = Graph::new(n);
        let mut edges = std::collections::BTreeSet::new();
        for (u, v) in ops {
            let (u, v) = (u % n, v % n);
            if u == v {
                prop_assert!(g.add_edge(u, v).is_err());
                continue;
            }
            let key = (u.min(v), u.max(v));
            if edges.remove(&key) {
                g.remove_edge(u, v).unwrap();
            } else {
                edges.insert(key);
                g.add_edge(u, v).unwrap();
            }
            prop_assert!(g.check_invariants().is_ok());
        }
        prop_assert_eq!(g.edge_count(), edges.len());
        prop_assert_eq!(g.edges().collect::<std::collections::BTreeSet<_>>(), edges);
    }

    #[test]
    fn common_neighbors_match_brute_force(g in common::arb_graph(20)) {
        let n = g.vertex_count();
        for x in 0..n {
            for y in 0..n {
                if x == y {
                    continue;
                }
                let got = g.common_neighbors(x, y).unwrap();
                prop_assert_eq!(&got, &common::common(&g, x, y));
                prop_assert_eq!(g.common_neighbor_count(x, y), got.len());
                prop_assert!(got.len() <= g.degree(x).min(g.degree(y)));
            }
        }
    }

    #[test]
    fn counts_match_oracles(g in common::arb_graph(22)) {
        let t = common::triangles(&g);
        prop_assert_eq!(count_triangles(&g), t);
        prop_assert_eq!(count_wedges(&g), common::wedges(&g));
        let over_edges: u64 = g.edges().map(|(x, y)| g.common_neighbor_count(x, y) as u64).sum();
        prop_assert_eq!(3 * t, over_edges);
        let cache = TriangleWedgeCache::build(&g);
        prop_assert_eq!(cache.total_triangles(), t);
        prop_assert_eq!(cache.total_wedges(), common::wedges(&g));
    }

    #[test]
    fn clustering_stays_in_unit_interval(g in common::arb_graph(22)) {
        if let Ok(c) = global_clustering(&g) {
            prop_assert!((0.0..=1.0).contains(&c));
            let w = common::wedges(&g);
            prop_assert!((c - 3.0 * common::triangles(&g) as f64 / w as f64).abs() < 1e-12);
        } else {
            prop_assert_eq!(common::wedges(&g), 0);
        }
        let avg = average_local_clustering(&g).unwrap();
        prop_assert!((0.0..=1.0).contains(&avg));
        for v in 0..g.vertex_count() {
            let c = local_clustering(&g, v).unwrap();
            prop_assert!((0.0..=1.0).contains(&c.value));
            prop_assert_eq!(c.degenerate, g.degree(v) < 2);
        }
    }

    #[test]
    fn path_length_matches_floyd_warshall(g in common::arb_graph(18)) {
        match (average_path_length(&g), common::path_length(&g)) {
            (Ok(p), Some((mean, pairs))) => {
                prop_assert_eq!(p.reachable_pairs, pairs);
                prop_assert!((p.mean - mean).abs() < 1e-12);
            }
            (Err(_), None) => {}
            (got, want) => prop_assert!(false, "{got:?} vs {want:?}"),
        }
        prop_assert_eq!(g.component_count(), common::components(&g));
    }

    #[test]
    fn single_swing_deltas_and_cache(
        g in common::arb_graph(20),
        picks in prop::collection::vec((0usize..20, 0usize..20, 0usize..20), 1..30),
    ) {
        let mut g = g;
        let n = g.vertex_count();
        let mut cache = TriangleWedgeCache::build(&g);
        for (x, v, y) in picks {
            let (x, v, y) = (x % n, v % n, y % n);
            if x == v || x == y || v == y || !g.has_edge(x, v) || g.has_edge(x, y) {
                prop_assert!(Move::single_swing(&g, x, v, y).is_err());
                continue;
            }
            let mv = Move::single_swing(&g, x, v, y).unwrap();
            // pre-move quantities; v leaves N(x) so it cannot count toward {x, y}
            let closes = common::common(&g, x, y).len() as i64 - i64::from(g.has_edge(v, y));
            let opens = common::common(&g, x, v).len() as i64;
            prop_assert_eq!(mv.delta_triangles, closes - opens);
            prop_assert_eq!(mv.delta_wedges, g.degree(y) as i64 - g.degree(v) as i64 + 1);
            let (t0, w0) = (common::triangles(&g) as i64, common::wedges(&g) as i64);
            cache_apply_move(&mut cache, &mut g, &mv).unwrap();
            prop_assert_eq!(common::triangles(&g) as i64 - t0, mv.delta_triangles);
            prop_assert_eq!(common::wedges(&g) as i64 - w0, mv.delta_wedges);
            prop_assert_eq!(&cache, &TriangleWedgeCache::build(&g));
        }
    }

    #[test]
    fn double_swap_deltas_and_cache(g in common::arb_graph(16), seed in 0u64..1000) {
        let mut g = g;
        let edges: Vec<_> = g.edges().collect();
        let mut cache = TriangleWedgeCache::build(&g);
        let mut tried = 0;
        for (i, &(x, u)) in edges.iter().enumerate() {
            let (y, v) = edges[(i + 1 + seed as usize) % edges.len()];
            let four = [x, u, y, v];
            let distinct = (0..4).all(|a| (a + 1..4).all(|b| four[a] != four[b]));
            if !distinct || g.has_edge(x, y) || g.has_edge(u, v) || !g.has_edge(y, v) || !g.has_edge(x, u) {
                continue;
            }
            let mv = Move::double_swap(&g, [(x, u), (y, v)], [(x, y), (u, v)]).unwrap();
            let degrees = g.degree_sequence();
            let (t0, w0) = (common::triangles(&g) as i64, common::wedges(&g) as i64);
            cache_apply_move(&mut cache, &mut g, &mv).unwrap();
            prop_assert_eq!(g.degree_sequence(), degrees);
            prop_assert_eq!(mv.delta_wedges, 0);
            prop_assert_eq!(common::wedges(&g) as i64, w0);
            prop_assert_eq!(common::triangles(&g) as i64 - t0, mv.delta_triangles);
            prop_assert_eq!(&cache, &TriangleWedgeCache::build(&g));
            tried += 1;
            if tried == 5 {
                break;
            }
        }
    }
}

#[test]
fn lattice_metrics_match_closed_forms() {
    // L(n, k): C = 3(k - 1) / (2(2k - 1))
    for (n, k) in [(20, 2), (30, 3), (100, 6)] {
        let g = ring_lattice(n, k).unwrap();
        let want = 3.0 * (k as f64 - 1.0) / (2.0 * (2.0 * k as f64 - 1.0));
        assert!((global_clustering(&g).unwrap() - want).abs() < 1e-12);
        assert!((average_local_clustering(&g).unwrap() - want).abs() < 1e-12);
        let (mean, pairs) = common::path_length(&g).unwrap();
        let p = average_path_length(&g).unwrap();
        assert_eq!(p.reachable_pairs, pairs);
        assert!((p.mean - mean).abs() < 1e-12);
    }
}

#[test]
fn stale_cache_is_refused() {
    let mut g = ring_lattice(12, 2).unwrap();
    let mut cache = TriangleWedgeCache::build(&g);
    let mv = Move::single_swing(&g, 0, 2, 6).unwrap();
    g.remove_edge(0, 1).unwrap();
    let before = g.clone();
    assert!(cache_apply_move(&mut cache, &mut g, &mv).is_err());
    assert_eq!(g, before);
}
