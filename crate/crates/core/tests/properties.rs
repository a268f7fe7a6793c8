mod common;

use ncstar::classify::classify;
use ncstar::graph::{
    build_graph, components_at_point, is_isomorphic, point_distance, smooth, subdivide, GraphPoint, Rational,
    TopoGraph,
};
use ncstar::hyperspace::enumerate_connected;
use ncstar::region::{hausdorff_distance, is_noncut, region_from_subgraph};
use num_traits::Signed;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

/// Connected multigraphs on at most five vertices: a random spanning tree
/// plus a few extra edges, loops allowed.
fn graph() -> impl Strategy<Value = TopoGraph> {
    (1usize..=5)
        .prop_flat_map(|n| {
            let tree = (1..n).map(|i| 0..i).collect::<Vec<_>>();
            let extra = prop::collection::vec((0..n, 0..n), 0..=3);
            (tree, extra)
        })
        .prop_map(|(tree, extra)| {
            let mut edges: Vec<(usize, usize)> = tree.into_iter().enumerate().map(|(i, p)| (p, i + 1)).collect();
            edges.extend(extra);
            if edges.is_empty() {
                edges.push((0, 0));
            }
            build_graph(&edges).unwrap()
        })
}

fn point(g: &TopoGraph, pick: usize, num: i64) -> GraphPoint {
    let v = g.vertex_count();
    if pick.is_multiple_of(2) {
        GraphPoint::AtVertex(pick / 2 % v)
    } else {
        GraphPoint::on_edge(pick / 2 % g.edge_count(), 1 + num % 5, 6)
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn point_distance_is_a_metric(g in graph(), picks in any::<[usize; 3]>(), nums in any::<[u8; 3]>()) {
        let [x, y, z] = [0, 1, 2].map(|i| point(&g, picks[i], nums[i] as i64));
        let d = |a: &GraphPoint, b: &GraphPoint| point_distance(&g, a, b).unwrap();
        prop_assert_eq!(d(&x, &x), Rational::from_integer(0));
        prop_assert_eq!(d(&x, &y), d(&y, &x));
        prop_assert!(d(&x, &z) <= d(&x, &y) + d(&y, &z));
    }

    #[test]
    fn hausdorff_is_a_metric(g in graph(), seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let [a, b, c] = [0; 3].map(|_| common::random_region(&g, &mut rng));
        let h = |x, y| hausdorff_distance(&g, x, y).unwrap();
        let zero = Rational::from_integer(0);
        prop_assert_eq!(h(&a, &a), zero);
        prop_assert_eq!(h(&a, &b), h(&b, &a));
        prop_assert_eq!(h(&a, &b) == zero, a == b);
        prop_assert!(h(&a, &c) <= h(&a, &b) + h(&b, &c));
    }

    #[test]
    fn hausdorff_matches_dense_sampling(g in graph(), seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let a = common::random_region(&g, &mut rng);
        let b = common::random_region(&g, &mut rng);
        let exact = hausdorff_distance(&g, &a, &b).unwrap();
        let sampled = common::sampled_hausdorff(&g, &a, &b, 48);
        prop_assert!((exact - sampled).abs() <= Rational::new(1, 48), "exact {} sampled {}", exact, sampled);
    }

    #[test]
    fn smoothing_is_idempotent(g in graph()) {
        let s = smooth(&g);
        prop_assert!(is_isomorphic(&smooth(&s), &s));
    }

    #[test]
    fn subdividing_then_smoothing_recovers_the_smoothing(g in graph(), k in 2usize..=4) {
        let (fine, _) = subdivide(&g, k).unwrap();
        prop_assert!(is_isomorphic(&smooth(&fine), &smooth(&g)));
        prop_assert_eq!(classify(&fine).verdict, classify(&g).verdict);
    }

    #[test]
    fn component_counts_survive_transport(g in graph(), k in 2usize..=3) {
        let (fine, map) = subdivide(&g, k).unwrap();
        for v in 0..fine.vertex_count() {
            let here = components_at_point(&fine, &GraphPoint::AtVertex(v)).unwrap();
            let there = components_at_point(&g, &map.transport(&GraphPoint::AtVertex(v))).unwrap();
            prop_assert_eq!(here, there, "fine vertex {}", v);
        }
        for e in 0..fine.edge_count() {
            let x = GraphPoint::on_edge(e, 1, 2);
            let here = components_at_point(&fine, &x).unwrap();
            let there = components_at_point(&g, &map.transport(&x)).unwrap();
            prop_assert_eq!(here, there, "fine edge {}", e);
        }
    }

    #[test]
    fn noncut_survives_transport(g in graph(), pick in any::<prop::sample::Index>()) {
        prop_assume!(g.edge_count() <= 4);
        let (fine, map) = subdivide(&g, 2).unwrap();
        let all = enumerate_connected(&fine).unwrap();
        let s = all[pick.index(all.len())];
        let r = region_from_subgraph(&g, &map, &s).unwrap();
        prop_assert_eq!(s.is_noncut(&fine), is_noncut(&g, &r).unwrap(), "{}", s);
    }
}
