//! Exact closed subsets of a graph realization.
//!
//! A [`Region`] is a finite union of closed rational intervals on edges plus
//! a set of vertices. Connectivity of a region and of its complement, and
//! the Hausdorff distance between regions, are computed exactly.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::dsu::DisjointSets;
use crate::error::{Error, Result};
use crate::graph::{EdgeMap, GraphPoint, Rational, TopoGraph};
use crate::subgraph::Subgraph;

pub type Interval = (Rational, Rational);

/// A closed subset of the realization in canonical form.
///
/// Canonical means: per edge, intervals are sorted, pairwise disjoint and
/// not touching; an interval reaches position 0 (resp. 1) of edge `(u, v)`
/// exactly when `u` (resp. `v`) is in the vertex set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Region {
    vertices: BTreeSet<usize>,
    intervals: Vec<Vec<Interval>>,
}

/// Components of the complement of a region.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplementReport {
    pub component_count: usize,
    /// One point per component, in order of first appearance (vertices by
    /// id, then edge gaps by edge id and position).
    pub representatives: Vec<GraphPoint>,
}

fn merge_sorted(mut list: Vec<Interval>) -> Vec<Interval> {
    list.sort();
    let mut out: Vec<Interval> = Vec::with_capacity(list.len());
    for (a, b) in list {
        match out.last_mut() {
            Some(last) if a <= last.1 => {
                if b > last.1 {
                    last.1 = b;
                }
            }
            _ => out.push((a, b)),
        }
    }
    out
}

impl Region {
    /// Builds a canonical region from loose parts. Intervals may overlap or
    /// be given in any order; boundary vertices are added as needed.
    pub fn new(
        g: &TopoGraph,
        vertices: impl IntoIterator<Item = usize>,
        intervals: impl IntoIterator<Item = (usize, Rational, Rational)>,
    ) -> Result<Self> {
        let mut raw = Self {
            vertices: BTreeSet::new(),
            intervals: vec![Vec::new(); g.edge_count()],
        };
        for v in vertices {
            if v >= g.vertex_count() {
                return Err(Error::InvalidPoint(format!("no vertex {v}")));
            }
            raw.vertices.insert(v);
        }
        for (e, a, b) in intervals {
            if e >= g.edge_count() {
                return Err(Error::InvalidPoint(format!("no edge {e}")));
            }
            if a < Rational::zero() || b > Rational::one() || a > b {
                return Err(Error::InvalidPoint(format!("bad interval [{a}, {b}] on edge {e}")));
            }
            raw.intervals[e].push((a, b));
        }
        Ok(raw.canonicalized(g))
    }

    pub fn whole(g: &TopoGraph) -> Self {
        Self {
            vertices: (0..g.vertex_count()).collect(),
            intervals: vec![vec![(Rational::zero(), Rational::one())]; g.edge_count()],
        }
    }

    pub fn point(g: &TopoGraph, x: &GraphPoint) -> Result<Self> {
        g.validate_point(x)?;
        match *x {
            GraphPoint::AtVertex(v) => Self::new(g, [v], []),
            GraphPoint::OnEdge { edge, position } => Self::new(g, [], [(edge, position, position)]),
        }
    }

    /// The realization of a subgraph of `g` itself (each selected edge whole).
    pub fn of_subgraph(g: &TopoGraph, d: &Subgraph) -> Result<Self> {
        d.check_fits(g)?;
        Self::new(
            g,
            d.vertex_ids(),
            d.edge_ids().map(|e| (e, Rational::zero(), Rational::one())),
        )
    }

    pub fn vertices(&self) -> &BTreeSet<usize> {
        &self.vertices
    }

    pub fn intervals(&self, edge: usize) -> &[Interval] {
        &self.intervals[edge]
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty() && self.intervals.iter().all(|l| l.is_empty())
    }

    pub fn contains(&self, x: &GraphPoint) -> bool {
        match *x {
            GraphPoint::AtVertex(v) => self.vertices.contains(&v),
            GraphPoint::OnEdge { edge, position } => self.intervals[edge]
                .iter()
                .any(|&(a, b)| a <= position && position <= b),
        }
    }

    pub fn union(&self, g: &TopoGraph, other: &Self) -> Self {
        let mut raw = self.clone();
        raw.vertices.extend(other.vertices.iter().copied());
        for (e, list) in other.intervals.iter().enumerate() {
            raw.intervals[e].extend(list.iter().copied());
        }
        raw.canonicalized(g)
    }

    fn canonicalized(mut self, g: &TopoGraph) -> Self {
        let zero = Rational::zero();
        let one = Rational::one();
        for list in self.intervals.iter_mut() {
            *list = merge_sorted(std::mem::take(list));
        }
        for (e, list) in self.intervals.iter().enumerate() {
            let (u, v) = g.endpoints(e);
            if list.first().is_some_and(|i| i.0 == zero) {
                self.vertices.insert(u);
            }
            if list.last().is_some_and(|i| i.1 == one) {
                self.vertices.insert(v);
            }
        }
        for (e, list) in self.intervals.iter_mut().enumerate() {
            let (u, v) = g.endpoints(e);
            if self.vertices.contains(&u) {
                list.push((zero, zero));
            }
            if self.vertices.contains(&v) {
                list.push((one, one));
            }
            *list = merge_sorted(std::mem::take(list));
        }
        self
    }

    /// Errors unless the region is canonical for `g` and nonempty.
    pub fn check(&self, g: &TopoGraph) -> Result<()> {
        if self.intervals.len() != g.edge_count()
            || self.vertices.iter().any(|&v| v >= g.vertex_count())
        {
            return Err(Error::NonCanonicalRegion("region does not match the graph".into()));
        }
        if self.is_empty() {
            return Err(Error::EmptyRegion);
        }
        for (e, list) in self.intervals.iter().enumerate() {
            for &(a, b) in list {
                if a < Rational::zero() || b > Rational::one() || a > b {
                    return Err(Error::NonCanonicalRegion(format!(
                        "interval [{a}, {b}] on edge {e} is out of range"
                    )));
                }
            }
        }
        if self.clone().canonicalized(g) != *self {
            return Err(Error::NonCanonicalRegion(
                "intervals overlap, are unsorted, or disagree with the vertex set".into(),
            ));
        }
        Ok(())
    }

    /// Builds a region without canonicalizing; pair with [`Region::check`].
    pub fn from_raw_parts(vertices: BTreeSet<usize>, intervals: Vec<Vec<Interval>>) -> Self {
        Self {
            vertices,
            intervals,
        }
    }

    pub fn to_json(&self) -> RegionJson {
        RegionJson {
            vertices: self.vertices.iter().copied().collect(),
            intervals: self
                .intervals
                .iter()
                .enumerate()
                .filter(|(_, l)| !l.is_empty())
                .map(|(e, l)| {
                    let list = l
                        .iter()
                        .map(|(a, b)| [*a.numer(), *a.denom(), *b.numer(), *b.denom()])
                        .collect();
                    (e.to_string(), list)
                })
                .collect(),
        }
    }

    /// Reads the JSON form and canonicalizes it against `g`.
    pub fn from_json(g: &TopoGraph, json: &RegionJson) -> Result<Self> {
        let mut intervals = Vec::new();
        for (key, list) in &json.intervals {
            let e: usize = key
                .parse()
                .map_err(|_| Error::InvalidPoint(format!("edge key {key:?} is not an id")))?;
            for q in list {
                if q[1] == 0 || q[3] == 0 {
                    return Err(Error::InvalidPoint("zero denominator".into()));
                }
                intervals.push((e, Rational::new(q[0], q[1]), Rational::new(q[2], q[3])));
            }
        }
        Self::new(g, json.vertices.iter().copied(), intervals)
    }
}

/// Serialized region: `{"vertices": [...], "intervals": {"edgeId": [[a_num, a_den, b_num, b_den], ...]}}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegionJson {
    pub vertices: Vec<usize>,
    pub intervals: BTreeMap<String, Vec<[i64; 4]>>,
}

pub fn region_connected(g: &TopoGraph, r: &Region) -> Result<bool> {
    r.check(g)?;
    let n = g.vertex_count();
    let mut nodes: Vec<usize> = r.vertices.iter().copied().collect();
    let mut attach = Vec::new();
    let mut next = n;
    for (e, list) in r.intervals.iter().enumerate() {
        let (u, v) = g.endpoints(e);
        for &(a, b) in list {
            nodes.push(next);
            if a.is_zero() {
                attach.push((next, u));
            }
            if b.is_one() {
                attach.push((next, v));
            }
            next += 1;
        }
    }
    let mut dsu = DisjointSets::new(next);
    for (x, y) in attach {
        dsu.union(x, y);
    }
    Ok(dsu.count_among(nodes) == 1)
}

/// A maximal open gap of an edge missing from a region.
#[derive(Clone, Copy, Debug)]
struct Gap {
    edge: usize,
    lo: Rational,
    hi: Rational,
}

/// Partition of `G \ R` into components.
struct Complement {
    n: usize,
    missing_vertices: Vec<usize>,
    gaps: Vec<Gap>,
    /// node -> component index; nodes are vertices `0..n`, then gaps.
    component_of: Vec<Option<usize>>,
    count: usize,
}

impl Complement {
    fn new(g: &TopoGraph, r: &Region) -> Self {
        let n = g.vertex_count();
        let zero = Rational::zero();
        let one = Rational::one();
        let missing_vertices: Vec<usize> =
            (0..n).filter(|v| !r.vertices.contains(v)).collect();
        let mut gaps = Vec::new();
        let mut links = Vec::new();
        for (e, list) in r.intervals.iter().enumerate() {
            let (u, v) = g.endpoints(e);
            let mut cursor = zero;
            let mut at_start = true;
            for &(a, b) in list {
                if a > cursor || (at_start && a > zero) {
                    let idx = n + gaps.len();
                    gaps.push(Gap { edge: e, lo: cursor, hi: a });
                    if at_start {
                        links.push((idx, u));
                    }
                }
                cursor = b;
                at_start = false;
            }
            if at_start {
                let idx = n + gaps.len();
                gaps.push(Gap { edge: e, lo: zero, hi: one });
                links.push((idx, u));
                links.push((idx, v));
            } else if cursor < one {
                let idx = n + gaps.len();
                gaps.push(Gap { edge: e, lo: cursor, hi: one });
                links.push((idx, v));
            }
        }
        let mut dsu = DisjointSets::new(n + gaps.len());
        for (x, y) in links {
            dsu.union(x, y);
        }
        let mut component_of = vec![None; n + gaps.len()];
        let mut root_index: BTreeMap<usize, usize> = BTreeMap::new();
        let nodes = missing_vertices.iter().copied().chain(n..n + gaps.len());
        for node in nodes {
            let root = dsu.find(node);
            let next = root_index.len();
            let c = *root_index.entry(root).or_insert(next);
            component_of[node] = Some(c);
        }
        Self {
            n,
            missing_vertices,
            count: root_index.len(),
            gaps,
            component_of,
        }
    }

    fn representative(&self, node: usize) -> GraphPoint {
        if node < self.n {
            GraphPoint::AtVertex(node)
        } else {
            let gap = self.gaps[node - self.n];
            GraphPoint::OnEdge {
                edge: gap.edge,
                position: (gap.lo + gap.hi) / 2,
            }
        }
    }

    fn report(&self) -> ComplementReport {
        let mut reps = vec![None; self.count];
        let nodes = self
            .missing_vertices
            .iter()
            .copied()
            .chain(self.n..self.n + self.gaps.len());
        for node in nodes {
            let c = self.component_of[node].expect("complement node");
            if reps[c].is_none() {
                reps[c] = Some(self.representative(node));
            }
        }
        ComplementReport {
            component_count: self.count,
            representatives: reps.into_iter().map(|p| p.expect("nonempty")).collect(),
        }
    }

    fn locate(&self, x: &GraphPoint) -> Option<usize> {
        match *x {
            GraphPoint::AtVertex(v) => self.component_of[v],
            GraphPoint::OnEdge { edge, position } => self
                .gaps
                .iter()
                .position(|g| g.edge == edge && g.lo < position && position < g.hi)
                .and_then(|i| self.component_of[self.n + i]),
        }
    }
}

pub fn complement_components(g: &TopoGraph, r: &Region) -> Result<ComplementReport> {
    r.check(g)?;
    Ok(Complement::new(g, r).report())
}

/// Index (as in [`ComplementReport::representatives`]) of the complement
/// component containing `x`, or `None` when `x` lies in the region.
pub fn complement_component_of(g: &TopoGraph, r: &Region, x: &GraphPoint) -> Result<Option<usize>> {
    r.check(g)?;
    g.validate_point(x)?;
    Ok(Complement::new(g, r).locate(x))
}

/// Connected with a connected (or empty) complement.
pub fn is_noncut(g: &TopoGraph, r: &Region) -> Result<bool> {
    Ok(region_connected(g, r)? && complement_components(g, r)?.component_count <= 1)
}

/// Distance from every vertex to the region.
fn vertex_distances(g: &TopoGraph, r: &Region) -> Vec<Rational> {
    let n = g.vertex_count();
    let mut dist: Vec<Option<Rational>> = vec![None; n];
    let offer = |dist: &mut Vec<Option<Rational>>, v: usize, d: Rational| -> bool {
        if dist[v].is_none_or(|cur| d < cur) {
            dist[v] = Some(d);
            true
        } else {
            false
        }
    };
    for &v in &r.vertices {
        offer(&mut dist, v, Rational::zero());
    }
    for (e, list) in r.intervals.iter().enumerate() {
        let (u, v) = g.endpoints(e);
        if let (Some(first), Some(last)) = (list.first(), list.last()) {
            offer(&mut dist, u, first.0);
            offer(&mut dist, v, Rational::one() - last.1);
        }
    }
    let mut changed = true;
    while changed {
        changed = false;
        for &(u, v) in g.edges() {
            if let Some(du) = dist[u] {
                changed |= offer(&mut dist, v, du + 1);
            }
            if let Some(dv) = dist[v] {
                changed |= offer(&mut dist, u, dv + 1);
            }
        }
    }
    dist.into_iter()
        .map(|d| d.expect("connected graph, nonempty region"))
        .collect()
}

/// Distance-to-region on one edge, as a minimum of slope +1 and slope -1
/// pieces: `t + inc[i]` and `dec[j] - t`, plus zero inside intervals.
struct EdgeProfile<'a> {
    increasing: Vec<Rational>,
    decreasing: Vec<Rational>,
    inside: &'a [Interval],
}

impl<'a> EdgeProfile<'a> {
    fn new(g: &TopoGraph, r: &'a Region, dist: &[Rational], e: usize) -> Self {
        let (u, v) = g.endpoints(e);
        let inside = r.intervals(e);
        let mut increasing = vec![dist[u]];
        let mut decreasing = vec![Rational::one() + dist[v]];
        for &(a, b) in inside {
            increasing.push(-b);
            decreasing.push(a);
        }
        Self {
            increasing,
            decreasing,
            inside,
        }
    }

    fn at(&self, t: Rational) -> Rational {
        if self.inside.iter().any(|&(a, b)| a <= t && t <= b) {
            return Rational::zero();
        }
        let up = self.increasing.iter().map(|c| t + c);
        let down = self.decreasing.iter().map(|c| c - t);
        up.chain(down)
            .filter(|d| *d >= Rational::zero())
            .min()
            .expect("endpoint routes are always nonnegative")
    }

    /// Maximum over `[lo, hi]`: attained at an end or where a rising piece
    /// meets a falling one.
    fn max_on(&self, lo: Rational, hi: Rational) -> Rational {
        let mut best = self.at(lo).max(self.at(hi));
        for c1 in &self.increasing {
            for c2 in &self.decreasing {
                let t = (c2 - c1) / 2;
                if lo < t && t < hi {
                    best = best.max(self.at(t));
                }
            }
        }
        best
    }
}

/// Exact distance from a point to a region.
pub fn distance_to_region(g: &TopoGraph, r: &Region, x: &GraphPoint) -> Result<Rational> {
    r.check(g)?;
    g.validate_point(x)?;
    let dist = vertex_distances(g, r);
    Ok(match *x {
        GraphPoint::AtVertex(v) => dist[v],
        GraphPoint::OnEdge { edge, position } => EdgeProfile::new(g, r, &dist, edge).at(position),
    })
}

/// `sup { d(x, to) : x in from }`.
fn directed_hausdorff(g: &TopoGraph, from: &Region, to: &Region) -> Rational {
    let dist = vertex_distances(g, to);
    let mut best = from
        .vertices
        .iter()
        .map(|&v| dist[v])
        .max()
        .unwrap_or_else(Rational::zero);
    for (e, list) in from.intervals.iter().enumerate() {
        if list.is_empty() {
            continue;
        }
        let profile = EdgeProfile::new(g, to, &dist, e);
        for &(a, b) in list {
            best = best.max(profile.max_on(a, b));
        }
    }
    best
}

/// Exact Hausdorff distance under the path metric.
pub fn hausdorff_distance(g: &TopoGraph, r1: &Region, r2: &Region) -> Result<Rational> {
    r1.check(g)?;
    r2.check(g)?;
    Ok(directed_hausdorff(g, r1, r2).max(directed_hausdorff(g, r2, r1)))
}

/// The region of the coarse graph realizing a subgraph of the fine graph:
/// each fine edge contributes its `1/len` share of a coarse edge.
pub fn region_from_subgraph(coarse: &TopoGraph, map: &EdgeMap, d: &Subgraph) -> Result<Region> {
    let fine_vertices = map.fine_vertex_count();
    let fine_edges = map.fine_edge_count();
    let in_range = |mask: u64, n: usize| n >= 64 || mask >> n == 0;
    if !in_range(d.vertices, fine_vertices) || !in_range(d.edges, fine_edges) {
        return Err(Error::SubgraphGraphMismatch);
    }
    if map.chains().len() != coarse.edge_count() {
        return Err(Error::SubgraphGraphMismatch);
    }
    let mut vertices = Vec::new();
    let mut intervals = Vec::new();
    for v in d.vertex_ids() {
        match map.vertex_point(v) {
            GraphPoint::AtVertex(cv) => vertices.push(cv),
            GraphPoint::OnEdge { edge, position } => intervals.push((edge, position, position)),
        }
    }
    for fe in d.edge_ids() {
        let (ce, slot) = map.edge_origin(fe);
        let len = map.chain(ce).len() as i64;
        intervals.push((
            ce,
            Rational::new(slot as i64, len),
            Rational::new(slot as i64 + 1, len),
        ));
    }
    Region::new(coarse, vertices, intervals)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;
    use crate::graph::subdivide;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn canonical_form_adds_boundary_vertices() {
        let g = arc1();
        let r = Region::new(&g, [], [(0, q(0, 1), q(1, 4)), (0, q(1, 8), q(1, 2))]).unwrap();
        assert_eq!(r.vertices().iter().copied().collect::<Vec<_>>(), vec![0]);
        assert_eq!(r.intervals(0), &[(q(0, 1), q(1, 2))]);
        r.check(&g).unwrap();
    }

    #[test]
    fn loop_vertex_closes_both_ends() {
        let g = single_loop();
        let r = Region::new(&g, [], [(0, q(0, 1), q(1, 4))]).unwrap();
        assert_eq!(r.intervals(0), &[(q(0, 1), q(1, 4)), (q(1, 1), q(1, 1))]);
    }

    #[test]
    fn non_canonical_region_is_rejected() {
        let g = arc1();
        let raw = Region::from_raw_parts(BTreeSet::new(), vec![vec![(q(0, 1), q(1, 2))]]);
        assert!(matches!(raw.check(&g), Err(Error::NonCanonicalRegion(_))));
        let empty = Region::from_raw_parts(BTreeSet::new(), vec![vec![]]);
        assert_eq!(empty.check(&g), Err(Error::EmptyRegion));
    }

    #[test]
    fn region_connected_examples() {
        let g = arc1();
        assert!(region_connected(&g, &Region::whole(&g)).unwrap());
        let split = Region::new(&g, [], [(0, q(0, 1), q(1, 4)), (0, q(1, 2), q(1, 1))]).unwrap();
        assert!(!region_connected(&g, &split).unwrap());
        let t = triod();
        let halves = Region::new(&t, [0], (0..3).map(|e| (e, q(0, 1), q(1, 2)))).unwrap();
        assert!(region_connected(&t, &halves).unwrap());
    }

    #[test]
    fn complement_examples() {
        let t = triod();
        assert_eq!(complement_components(&t, &Region::whole(&t)).unwrap().component_count, 0);
        let center = Region::point(&t, &GraphPoint::AtVertex(0)).unwrap();
        let rep = complement_components(&t, &center).unwrap();
        assert_eq!(rep.component_count, 3);
        assert_eq!(rep.representatives.len(), 3);
        let g = arc1();
        let mid = Region::new(&g, [], [(0, q(1, 4), q(1, 2))]).unwrap();
        assert_eq!(complement_components(&g, &mid).unwrap().component_count, 2);
    }

    #[test]
    fn representatives_lie_in_their_components() {
        let t = triod();
        let center = Region::point(&t, &GraphPoint::AtVertex(0)).unwrap();
        let rep = complement_components(&t, &center).unwrap();
        for (i, p) in rep.representatives.iter().enumerate() {
            assert_eq!(complement_component_of(&t, &center, p).unwrap(), Some(i));
        }
        assert_eq!(
            complement_component_of(&t, &center, &GraphPoint::AtVertex(0)).unwrap(),
            None
        );
    }

    #[test]
    fn is_noncut_examples() {
        let g = arc1();
        let half = Region::new(&g, [], [(0, q(0, 1), q(1, 2))]).unwrap();
        assert!(is_noncut(&g, &half).unwrap());
        let mid = Region::new(&g, [], [(0, q(1, 4), q(1, 2))]).unwrap();
        assert!(!is_noncut(&g, &mid).unwrap());

        // the circle of the cricket: both parallel edges
        let c = cricket();
        let circle = Region::new(&c, [], [(0, q(0, 1), q(1, 1)), (1, q(0, 1), q(1, 1))]).unwrap();
        assert!(region_connected(&c, &circle).unwrap());
        assert_eq!(complement_components(&c, &circle).unwrap().component_count, 2);
        assert!(!is_noncut(&c, &circle).unwrap());
    }

    #[test]
    fn missing_segments_meeting_at_region_point_are_separate() {
        // arc with only its midpoint: two half-open complements
        let g = arc1();
        let p = Region::point(&g, &GraphPoint::on_edge(0, 1, 2)).unwrap();
        assert_eq!(complement_components(&g, &p).unwrap().component_count, 2);
    }

    #[test]
    fn hausdorff_examples() {
        let g = arc1();
        let half = Region::new(&g, [], [(0, q(0, 1), q(1, 2))]).unwrap();
        assert_eq!(hausdorff_distance(&g, &half, &half).unwrap(), q(0, 1));
        assert_eq!(hausdorff_distance(&g, &half, &Region::whole(&g)).unwrap(), q(1, 2));
        let lp = single_loop();
        let a = Region::new(&lp, [], [(0, q(0, 1), q(1, 4))]).unwrap();
        let b = Region::new(&lp, [], [(0, q(1, 2), q(3, 4))]).unwrap();
        assert_eq!(hausdorff_distance(&lp, &a, &b).unwrap(), q(3, 8));
    }

    #[test]
    fn region_from_subgraph_examples() {
        let g = arc1();
        let (fine, map) = subdivide(&g, 2).unwrap();
        let full = Subgraph::full(&fine);
        assert_eq!(region_from_subgraph(&g, &map, &full).unwrap(), Region::whole(&g));
        let single = Subgraph::vertex(0);
        assert_eq!(
            region_from_subgraph(&g, &map, &single).unwrap(),
            Region::point(&g, &GraphPoint::AtVertex(0)).unwrap()
        );
        // vertex 0, first piece, middle vertex (id 2)
        let first_half = Subgraph::from_ids(&[0, 2], &[0]);
        let r = region_from_subgraph(&g, &map, &first_half).unwrap();
        assert_eq!(r, Region::new(&g, [], [(0, q(0, 1), q(1, 2))]).unwrap());
        assert_eq!(
            region_from_subgraph(&g, &map, &Subgraph::vertex(7)),
            Err(Error::SubgraphGraphMismatch)
        );
    }

    #[test]
    fn json_round_trip() {
        let g = dumbbell();
        let r = Region::new(&g, [0], [(1, q(0, 1), q(1, 3)), (2, q(1, 4), q(1, 2))]).unwrap();
        let text = serde_json::to_string(&r.to_json()).unwrap();
        assert!(text.contains("\"intervals\""));
        let back: RegionJson = serde_json::from_str(&text).unwrap();
        assert_eq!(Region::from_json(&g, &back).unwrap(), r);
    }
}
