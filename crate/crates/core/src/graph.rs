//! Finite graphs as topological multigraphs.
//!
//! Every edge of a [`TopoGraph`] is isometric to `[0, 1]`; loops and
//! parallel edges are allowed. The continuum under study is the geometric
//! realization, so most questions here are asked about points of the
//! realization ([`GraphPoint`]) rather than about vertices alone.

use std::collections::{BTreeSet, VecDeque};

use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::dsu::DisjointSets;
use crate::error::{Error, Result};

pub type Rational = Ratio<i64>;

/// A connected multigraph with unit-length edges.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TopoGraph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
    /// `(edge, other endpoint)` per vertex; a loop is listed twice.
    incidence: Vec<Vec<(usize, usize)>>,
}

/// A point of the realization of a [`TopoGraph`].
///
/// `OnEdge` positions are measured from the edge's first stored endpoint and
/// lie strictly inside `(0, 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GraphPoint {
    AtVertex(usize),
    OnEdge { edge: usize, position: Rational },
}

impl GraphPoint {
    pub fn on_edge(edge: usize, num: i64, den: i64) -> Self {
        GraphPoint::OnEdge {
            edge,
            position: Rational::new(num, den),
        }
    }
}

/// Normalizes arbitrary vertex ids to `0..n` (ascending id order) and
/// validates the result. Edge order and orientation are preserved.
pub fn build_graph(edge_list: &[(usize, usize)]) -> Result<TopoGraph> {
    if edge_list.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let ids: BTreeSet<usize> = edge_list.iter().flat_map(|&(u, v)| [u, v]).collect();
    let ids: Vec<usize> = ids.into_iter().collect();
    let index = |x: usize| ids.binary_search(&x).expect("id collected above");
    let edges = edge_list.iter().map(|&(u, v)| (index(u), index(v))).collect();
    TopoGraph::from_parts(ids.len(), edges)
}

impl TopoGraph {
    /// Builds a graph over vertices `0..vertex_count`. Every vertex must be
    /// incident to some edge and the realization must be connected.
    pub fn from_parts(vertex_count: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        if edges.is_empty() {
            return Err(Error::EmptyGraph);
        }
        let mut incidence = vec![Vec::new(); vertex_count];
        for (e, &(u, v)) in edges.iter().enumerate() {
            if u >= vertex_count || v >= vertex_count {
                return Err(Error::InvalidPoint(format!(
                    "edge {e} has an endpoint outside 0..{vertex_count}"
                )));
            }
            incidence[u].push((e, v));
            incidence[v].push((e, u));
        }
        let mut dsu = DisjointSets::new(vertex_count);
        for &(u, v) in &edges {
            dsu.union(u, v);
        }
        if dsu.count_among(0..vertex_count) != 1 {
            return Err(Error::Disconnected);
        }
        Ok(Self {
            vertex_count,
            edges,
            incidence,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn endpoints(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    pub fn is_loop(&self, e: usize) -> bool {
        let (u, v) = self.edges[e];
        u == v
    }

    pub fn incident(&self, v: usize) -> &[(usize, usize)] {
        &self.incidence[v]
    }

    /// Topological degree: loops count twice.
    pub fn degree(&self, v: usize) -> usize {
        self.incidence[v].len()
    }

    pub fn other_end(&self, e: usize, v: usize) -> usize {
        let (a, b) = self.edges[e];
        if a == v {
            b
        } else {
            a
        }
    }

    /// True when the realization is a simple closed curve.
    pub fn is_circle(&self) -> bool {
        (0..self.vertex_count).all(|v| self.degree(v) == 2)
    }

    /// True when the realization is an arc.
    pub fn is_arc(&self) -> bool {
        self.edges.len() + 1 == self.vertex_count
            && (0..self.vertex_count).all(|v| self.degree(v) <= 2)
    }

    pub fn validate_point(&self, x: &GraphPoint) -> Result<()> {
        match *x {
            GraphPoint::AtVertex(v) if v < self.vertex_count => Ok(()),
            GraphPoint::AtVertex(v) => Err(Error::InvalidPoint(format!("no vertex {v}"))),
            GraphPoint::OnEdge { edge, .. } if edge >= self.edges.len() => {
                Err(Error::InvalidPoint(format!("no edge {edge}")))
            }
            GraphPoint::OnEdge { position, .. } => {
                if position > Rational::zero() && position < Rational::one() {
                    Ok(())
                } else {
                    Err(Error::InvalidPoint(format!(
                        "edge position {position} is not inside (0, 1)"
                    )))
                }
            }
        }
    }

    /// The graph formed by a subset of edges, with vertices renumbered in
    /// ascending order. Returns the graph and its local-to-global vertex map.
    pub fn edge_subgraph(&self, edges: &[usize]) -> Result<(TopoGraph, Vec<usize>)> {
        let verts: BTreeSet<usize> = edges
            .iter()
            .flat_map(|&e| {
                let (u, v) = self.edges[e];
                [u, v]
            })
            .collect();
        let verts: Vec<usize> = verts.into_iter().collect();
        let local = |x: usize| verts.binary_search(&x).expect("endpoint collected");
        let local_edges = edges
            .iter()
            .map(|&e| {
                let (u, v) = self.edges[e];
                (local(u), local(v))
            })
            .collect();
        Ok((TopoGraph::from_parts(verts.len(), local_edges)?, verts))
    }

    /// Hop distances between all vertex pairs (every edge has length 1).
    pub fn hop_distances(&self) -> Vec<Vec<i64>> {
        (0..self.vertex_count)
            .map(|s| {
                let mut dist = vec![i64::MAX; self.vertex_count];
                let mut queue = VecDeque::from([s]);
                dist[s] = 0;
                while let Some(u) = queue.pop_front() {
                    for &(_, w) in &self.incidence[u] {
                        if dist[w] == i64::MAX {
                            dist[w] = dist[u] + 1;
                            queue.push_back(w);
                        }
                    }
                }
                dist
            })
            .collect()
    }
}

/// Exact path metric on the realization.
#[derive(Clone, Debug)]
pub struct Metric<'a> {
    graph: &'a TopoGraph,
    hops: Vec<Vec<i64>>,
}

impl<'a> Metric<'a> {
    pub fn new(graph: &'a TopoGraph) -> Self {
        Self {
            graph,
            hops: graph.hop_distances(),
        }
    }

    pub fn vertex_distance(&self, u: usize, v: usize) -> i64 {
        self.hops[u][v]
    }

    fn anchors(&self, x: &GraphPoint) -> Vec<(usize, Rational)> {
        match *x {
            GraphPoint::AtVertex(v) => vec![(v, Rational::zero())],
            GraphPoint::OnEdge { edge, position } => {
                let (u, v) = self.graph.endpoints(edge);
                vec![(u, position), (v, Rational::one() - position)]
            }
        }
    }

    pub fn distance(&self, x: &GraphPoint, y: &GraphPoint) -> Result<Rational> {
        self.graph.validate_point(x)?;
        self.graph.validate_point(y)?;
        let mut best: Option<Rational> = None;
        let mut offer = |d: Rational| {
            if best.is_none_or(|b| d < b) {
                best = Some(d);
            }
        };
        for (a, da) in self.anchors(x) {
            for (b, db) in self.anchors(y) {
                offer(da + Rational::from_integer(self.hops[a][b]) + db);
            }
        }
        if let (
            GraphPoint::OnEdge { edge: e, position: s },
            GraphPoint::OnEdge { edge: f, position: t },
        ) = (*x, *y)
        {
            if e == f {
                offer(if s > t { s - t } else { t - s });
            }
        }
        Ok(best.expect("at least one anchor pair"))
    }
}

pub fn point_distance(g: &TopoGraph, x: &GraphPoint, y: &GraphPoint) -> Result<Rational> {
    Metric::new(g).distance(x, y)
}

/// Number of components of the realization with the point `x` removed.
pub fn components_at_point(g: &TopoGraph, x: &GraphPoint) -> Result<usize> {
    g.validate_point(x)?;
    match *x {
        GraphPoint::OnEdge { edge, .. } => {
            if g.is_loop(edge) {
                return Ok(1);
            }
            let mut dsu = DisjointSets::new(g.vertex_count());
            for (e, &(u, v)) in g.edges().iter().enumerate() {
                if e != edge {
                    dsu.union(u, v);
                }
            }
            let (u, v) = g.endpoints(edge);
            Ok(if dsu.same(u, v) { 1 } else { 2 })
        }
        GraphPoint::AtVertex(p) => {
            let n = g.vertex_count();
            let loops_at_p: Vec<usize> = (0..g.edge_count())
                .filter(|&e| g.endpoints(e) == (p, p))
                .collect();
            let mut dsu = DisjointSets::new(n + loops_at_p.len());
            for &(u, v) in g.edges() {
                if u != p && v != p {
                    dsu.union(u, v);
                }
            }
            let members = (0..n)
                .filter(|&v| v != p)
                .chain((0..loops_at_p.len()).map(|i| n + i));
            Ok(dsu.count_among(members))
        }
    }
}

/// A path in a fine graph that realizes one coarse edge.
///
/// `edges[i]` joins `vertices[i]` and `vertices[i + 1]`; for a closed chain
/// the first and last vertices coincide.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
}

impl Chain {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

/// Correspondence between a coarse graph and a fine graph that realizes it,
/// each coarse edge replaced by a chain of fine edges of equal length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeMap {
    chains: Vec<Chain>,
    vertex_image: Vec<usize>,
    /// fine edge -> (coarse edge, slot in chain, stored orientation agrees with chain)
    edge_origin: Vec<(usize, usize, bool)>,
    vertex_point: Vec<GraphPoint>,
}

impl EdgeMap {
    fn new(
        coarse: &TopoGraph,
        fine: &TopoGraph,
        chains: Vec<Chain>,
        vertex_image: Vec<usize>,
    ) -> Self {
        let mut edge_origin = vec![(usize::MAX, 0, true); fine.edge_count()];
        let mut vertex_point: Vec<Option<GraphPoint>> = vec![None; fine.vertex_count()];
        for (cv, &fv) in vertex_image.iter().enumerate() {
            vertex_point[fv] = Some(GraphPoint::AtVertex(cv));
        }
        for (ce, chain) in chains.iter().enumerate() {
            debug_assert_eq!(chain.vertices.len(), chain.edges.len() + 1);
            let len = chain.len() as i64;
            for (slot, &fe) in chain.edges.iter().enumerate() {
                let forward = fine.endpoints(fe).0 == chain.vertices[slot];
                edge_origin[fe] = (ce, slot, forward);
            }
            for (slot, &fv) in chain.vertices.iter().enumerate() {
                if slot > 0 && slot < chain.len() {
                    vertex_point[fv] = Some(GraphPoint::OnEdge {
                        edge: ce,
                        position: Rational::new(slot as i64, len),
                    });
                }
            }
        }
        debug_assert!(coarse.edge_count() == chains.len());
        Self {
            chains,
            vertex_image,
            edge_origin,
            vertex_point: vertex_point
                .into_iter()
                .map(|p| p.expect("every fine vertex lies on some chain"))
                .collect(),
        }
    }

    pub fn chains(&self) -> &[Chain] {
        &self.chains
    }

    pub fn fine_vertex_count(&self) -> usize {
        self.vertex_point.len()
    }

    pub fn fine_edge_count(&self) -> usize {
        self.edge_origin.len()
    }

    pub fn chain(&self, coarse_edge: usize) -> &Chain {
        &self.chains[coarse_edge]
    }

    /// Fine vertex realizing a coarse vertex.
    pub fn vertex_image(&self, coarse_vertex: usize) -> usize {
        self.vertex_image[coarse_vertex]
    }

    /// `(coarse edge, slot)` of a fine edge.
    pub fn edge_origin(&self, fine_edge: usize) -> (usize, usize) {
        let (e, slot, _) = self.edge_origin[fine_edge];
        (e, slot)
    }

    /// The coarse point at which a fine vertex sits.
    pub fn vertex_point(&self, fine_vertex: usize) -> GraphPoint {
        self.vertex_point[fine_vertex]
    }

    /// Carries a point of the fine realization to the coarse realization.
    pub fn transport(&self, x: &GraphPoint) -> GraphPoint {
        match *x {
            GraphPoint::AtVertex(v) => self.vertex_point[v],
            GraphPoint::OnEdge { edge, position } => {
                let (ce, slot, forward) = self.edge_origin[edge];
                let len = self.chains[ce].len() as i64;
                let local = if forward {
                    position
                } else {
                    Rational::one() - position
                };
                GraphPoint::OnEdge {
                    edge: ce,
                    position: (Rational::from_integer(slot as i64) + local) / len,
                }
            }
        }
    }
}

/// Splits a graph into maximal chains between vertices of degree other than
/// two. A circle yields one closed chain starting at the first endpoint of
/// edge 0.
pub fn chain_decomposition(g: &TopoGraph) -> Vec<Chain> {
    let other_edge = |cur: usize, via: usize| -> usize {
        g.incident(cur)
            .iter()
            .map(|&(f, _)| f)
            .find(|&f| f != via)
            .expect("degree-two vertex has a second edge")
    };
    if g.is_circle() {
        let (a, b) = g.endpoints(0);
        let mut chain = Chain {
            vertices: vec![a, b],
            edges: vec![0],
        };
        let (mut cur, mut via) = (b, 0);
        while cur != a {
            let f = other_edge(cur, via);
            cur = g.other_end(f, cur);
            via = f;
            chain.edges.push(f);
            chain.vertices.push(cur);
        }
        return vec![chain];
    }
    let is_top = |v: usize| g.degree(v) != 2;
    let mut assigned = vec![false; g.edge_count()];
    let mut chains = Vec::new();
    for e in 0..g.edge_count() {
        if assigned[e] {
            continue;
        }
        let (a, b) = g.endpoints(e);
        let mut vertices = VecDeque::from([a, b]);
        let mut edges = VecDeque::from([e]);
        let (mut cur, mut via) = (a, e);
        while !is_top(cur) {
            let f = other_edge(cur, via);
            cur = g.other_end(f, cur);
            via = f;
            edges.push_front(f);
            vertices.push_front(cur);
        }
        let (mut cur, mut via) = (b, e);
        while !is_top(cur) {
            let f = other_edge(cur, via);
            cur = g.other_end(f, cur);
            via = f;
            edges.push_back(f);
            vertices.push_back(cur);
        }
        for &f in &edges {
            assigned[f] = true;
        }
        chains.push(Chain {
            vertices: vertices.into(),
            edges: edges.into(),
        });
    }
    chains
}

/// Suppresses degree-two vertices, returning the smoothed graph and the map
/// from its edges to chains of the input graph.
pub fn smooth_with_map(g: &TopoGraph) -> (TopoGraph, EdgeMap) {
    let chains = chain_decomposition(g);
    if g.is_circle() {
        let coarse = TopoGraph::from_parts(1, vec![(0, 0)]).expect("single loop is valid");
        let image = vec![chains[0].vertices[0]];
        let map = EdgeMap::new(&coarse, g, chains, image);
        return (coarse, map);
    }
    let tops: Vec<usize> = (0..g.vertex_count()).filter(|&v| g.degree(v) != 2).collect();
    let index = |v: usize| tops.binary_search(&v).expect("chain ends are top vertices");
    let edges = chains
        .iter()
        .map(|c| (index(c.vertices[0]), index(*c.vertices.last().unwrap())))
        .collect();
    let coarse = TopoGraph::from_parts(tops.len(), edges).expect("smoothing preserves validity");
    let map = EdgeMap::new(&coarse, g, chains, tops);
    (coarse, map)
}

/// Homeomorphic graph without degree-two vertices; a circle becomes a single
/// loop and an arc a single edge.
pub fn smooth(g: &TopoGraph) -> TopoGraph {
    smooth_with_map(g).0
}

/// Replaces every edge by a chain of `k` edges. Original vertices keep their
/// ids; the `i`-th interior vertex of edge `e` is `n + e * (k - 1) + i - 1`
/// and the `j`-th piece of edge `e` is edge `e * k + j`.
///
/// For `k = 2` a loop becomes two parallel edges; no loops remain for any
/// `k >= 2`.
pub fn subdivide(g: &TopoGraph, k: usize) -> Result<(TopoGraph, EdgeMap)> {
    if k < 2 {
        return Err(Error::SubdivisionTooCoarse(k));
    }
    let n = g.vertex_count();
    let mut edges = Vec::with_capacity(g.edge_count() * k);
    let mut chains = Vec::with_capacity(g.edge_count());
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        let mut vertices = vec![u];
        vertices.extend((1..k).map(|i| n + e * (k - 1) + i - 1));
        vertices.push(v);
        let chain_edges: Vec<usize> = (0..k).map(|j| e * k + j).collect();
        for j in 0..k {
            edges.push((vertices[j], vertices[j + 1]));
        }
        chains.push(Chain {
            vertices,
            edges: chain_edges,
        });
    }
    let fine = TopoGraph::from_parts(n + g.edge_count() * (k - 1), edges)?;
    let map = EdgeMap::new(g, &fine, chains, (0..n).collect());
    Ok((fine, map))
}

/// A coarse graph (the smoothed input), the fine graph on which discrete
/// subcontinua live, and the chain map between them.
#[derive(Clone, Debug)]
pub struct Discretization {
    pub coarse: TopoGraph,
    pub fine: TopoGraph,
    pub map: EdgeMap,
    pub k: usize,
}

/// `k >= 2`: the fine graph is `subdivide(smooth(g), k)`.
/// `k = 1`: the input graph itself is the fine graph.
pub fn discretize(g: &TopoGraph, k: usize) -> Result<Discretization> {
    match k {
        0 => Err(Error::SubdivisionTooCoarse(0)),
        1 => {
            let (coarse, map) = smooth_with_map(g);
            Ok(Discretization {
                coarse,
                fine: g.clone(),
                map,
                k,
            })
        }
        _ => {
            let coarse = smooth(g);
            let (fine, map) = subdivide(&coarse, k)?;
            Ok(Discretization {
                coarse,
                fine,
                map,
                k,
            })
        }
    }
}

/// Lexicographically smallest sorted edge list over all vertex relabelings.
/// Brute force; intended for graphs with at most eight vertices.
pub fn canonical_edge_list(g: &TopoGraph) -> Vec<(usize, usize)> {
    let n = g.vertex_count();
    let mut perm: Vec<usize> = (0..n).collect();
    let relabel = |perm: &[usize]| {
        let mut list: Vec<(usize, usize)> = g
            .edges()
            .iter()
            .map(|&(u, v)| {
                let (a, b) = (perm[u], perm[v]);
                (a.min(b), a.max(b))
            })
            .collect();
        list.sort_unstable();
        list
    };
    let mut best = relabel(&perm);
    // Heap's algorithm
    let mut c = vec![0usize; n];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            let cand = relabel(&perm);
            if cand < best {
                best = cand;
            }
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    best
}

pub fn is_isomorphic(a: &TopoGraph, b: &TopoGraph) -> bool {
    a.vertex_count() == b.vertex_count()
        && a.edge_count() == b.edge_count()
        && canonical_edge_list(a) == canonical_edge_list(b)
}

/// Small named graphs used throughout the tests and docs.
pub mod fixtures {
    use super::{build_graph, TopoGraph};

    fn g(edges: &[(usize, usize)]) -> TopoGraph {
        build_graph(edges).expect("fixture is valid")
    }

    pub fn arc1() -> TopoGraph {
        g(&[(0, 1)])
    }
    pub fn single_loop() -> TopoGraph {
        g(&[(0, 0)])
    }
    pub fn triod() -> TopoGraph {
        g(&[(0, 1), (0, 2), (0, 3)])
    }
    pub fn star(legs: usize) -> TopoGraph {
        g(&(1..=legs).map(|i| (0, i)).collect::<Vec<_>>())
    }
    pub fn figure_eight() -> TopoGraph {
        g(&[(0, 0), (0, 0)])
    }
    pub fn dumbbell() -> TopoGraph {
        g(&[(0, 0), (0, 1), (1, 1)])
    }
    pub fn lollipop() -> TopoGraph {
        g(&[(0, 0), (0, 1)])
    }
    pub fn theta() -> TopoGraph {
        g(&[(0, 1), (0, 1), (0, 1)])
    }
    /// A circle made of two parallel u-v edges with a pendant edge at each of u and v.
    pub fn cricket() -> TopoGraph {
        g(&[(0, 1), (0, 1), (0, 2), (1, 3)])
    }
    pub fn k4() -> TopoGraph {
        g(&[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
    }
    pub fn cycle(n: usize) -> TopoGraph {
        g(&(0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>())
    }
    /// Path on `n` vertices.
    pub fn path(n: usize) -> TopoGraph {
        g(&(0..n - 1).map(|i| (i, i + 1)).collect::<Vec<_>>())
    }
}
