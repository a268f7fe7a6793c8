#![allow(dead_code)]

use ncstar::graph::{build_graph, point_distance, GraphPoint, Rational, TopoGraph};
use ncstar::region::Region;
use ncstar::report::atlas_graphs;
use rand::rngs::StdRng;
use rand::Rng;

pub fn atlas(max_edges: usize) -> Vec<TopoGraph> {
    atlas_graphs(max_edges)
        .iter()
        .map(|e| build_graph(e).unwrap())
        .collect()
}

fn point_at(g: &TopoGraph, e: usize, t: Rational) -> GraphPoint {
    let (u, v) = g.endpoints(e);
    if t == Rational::from_integer(0) {
        GraphPoint::AtVertex(u)
    } else if t == Rational::from_integer(1) {
        GraphPoint::AtVertex(v)
    } else {
        GraphPoint::OnEdge { edge: e, position: t }
    }
}

/// Interval end-points, vertices, and every multiple of `1/n` inside.
pub fn samples(g: &TopoGraph, r: &Region, n: i64) -> Vec<GraphPoint> {
    let mut out: Vec<GraphPoint> = r.vertices().iter().map(|&v| GraphPoint::AtVertex(v)).collect();
    for e in 0..g.edge_count() {
        for &(a, b) in r.intervals(e) {
            out.push(point_at(g, e, a));
            out.push(point_at(g, e, b));
            for j in 1..n {
                let t = Rational::new(j, n);
                if a < t && t < b {
                    out.push(point_at(g, e, t));
                }
            }
        }
    }
    out
}

/// Hausdorff distance between the finite samples of two regions, through
/// point-to-point distances only.
pub fn sampled_hausdorff(g: &TopoGraph, r1: &Region, r2: &Region, n: i64) -> Rational {
    let (s1, s2) = (samples(g, r1, n), samples(g, r2, n));
    let directed = |from: &[GraphPoint], to: &[GraphPoint]| {
        from.iter()
            .map(|x| to.iter().map(|y| point_distance(g, x, y).unwrap()).min().unwrap())
            .max()
            .unwrap()
    };
    directed(&s1, &s2).max(directed(&s2, &s1))
}

/// A nonempty region with a few vertices and intervals on a grid of eighths
/// and sixths.
pub fn random_region(g: &TopoGraph, rng: &mut StdRng) -> Region {
    let dens = [1i64, 2, 3, 4, 6, 8];
    let mut vertices = Vec::new();
    for _ in 0..rng.gen_range(0..=2) {
        vertices.push(rng.gen_range(0..g.vertex_count()));
    }
    let mut intervals = Vec::new();
    for _ in 0..rng.gen_range(0..=3) {
        let e = rng.gen_range(0..g.edge_count());
        let d = dens[rng.gen_range(0..dens.len())];
        let x = Rational::new(rng.gen_range(0..=d), d);
        let y = Rational::new(rng.gen_range(0..=d), d);
        intervals.push((e, x.min(y), x.max(y)));
    }
    if vertices.is_empty() && intervals.is_empty() {
        vertices.push(0);
    }
    Region::new(g, vertices, intervals).unwrap()
}
