mod common;

use ncstar::graph::{discretize, Rational};
use ncstar::hyperspace::{discrete_hyperspace, enumerate_connected, star_move_adjacent};
use ncstar::region::{hausdorff_distance, is_noncut, region_connected, region_from_subgraph};

#[test]
fn discrete_and_region_models_agree() {
    for g in common::atlas(3) {
        let d = discretize(&g, 2).unwrap();
        for s in enumerate_connected(&d.fine).unwrap() {
            let r = region_from_subgraph(&d.coarse, &d.map, &s).unwrap();
            assert!(region_connected(&d.coarse, &r).unwrap());
            assert_eq!(s.is_noncut(&d.fine), is_noncut(&d.coarse, &r).unwrap(), "{:?} {s}", g.edges());
        }
    }
}

#[test]
fn star_moves_are_short() {
    for g in common::atlas(3) {
        for k in [2, 3] {
            let (d, h) = discrete_hyperspace(&g, k).unwrap();
            let bound = Rational::new(1, k as i64);
            for &(i, j) in &h.adjacency {
                let (a, b) = (h.nodes[i], h.nodes[j]);
                assert!(star_move_adjacent(&d.fine, &a, &b).unwrap());
                let ra = region_from_subgraph(&d.coarse, &d.map, &a).unwrap();
                let rb = region_from_subgraph(&d.coarse, &d.map, &b).unwrap();
                assert!(hausdorff_distance(&d.coarse, &ra, &rb).unwrap() <= bound, "{:?} {a} {b}", g.edges());
            }
        }
    }
}
