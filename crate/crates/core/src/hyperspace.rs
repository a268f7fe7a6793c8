//! Discrete model of the hyperspace of non-cut subcontinua: exhaustive
//! enumeration over a subdivided graph, star-move adjacency, connectivity,
//! and non-compactness certificates.

use std::collections::HashMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::dsu::DisjointSets;
use crate::error::{Error, Result};
use crate::graph::{discretize, Discretization, Rational, TopoGraph};
use crate::region::{complement_components, hausdorff_distance, is_noncut, region_from_subgraph, Region};
use crate::subgraph::{check_mask_capacity, Subgraph};

/// Largest subdivided edge count the enumerators accept.
pub const EDGE_BUDGET: usize = 24;

fn check_budget(g: &TopoGraph) -> Result<()> {
    if g.edge_count() > EDGE_BUDGET {
        return Err(Error::BudgetExceeded(format!(
            "{} subdivided edges, limit {EDGE_BUDGET}",
            g.edge_count()
        )));
    }
    check_mask_capacity(g)
}

fn edges_at(g: &TopoGraph, w: usize) -> u64 {
    g.incident(w).iter().fold(0, |m, &(e, _)| m | 1u64 << e)
}

fn nonzero_submasks(mask: u64) -> impl Iterator<Item = u64> {
    let mut s = mask;
    std::iter::from_fn(move || {
        if s == 0 {
            return None;
        }
        let out = s;
        s = (s - 1) & mask;
        Some(out)
    })
}

/// True when one subgraph strictly contains the other and the difference
/// lies in the closed star of a single vertex `w`: either `w` itself plus
/// edges at `w` reaching back into the smaller subgraph, or only edges at an
/// existing `w` with both ends already present.
pub fn star_move_adjacent(g: &TopoGraph, a: &Subgraph, b: &Subgraph) -> Result<bool> {
    if a.check_fits(g).is_err() || b.check_fits(g).is_err() {
        return Err(Error::GraphMismatch);
    }
    let (small, big) = if a.is_subset_of(b) && a != b {
        (a, b)
    } else if b.is_subset_of(a) && a != b {
        (b, a)
    } else {
        return Ok(false);
    };
    let diff = big.minus(small);
    let reaches_back = |e: usize, w: usize| {
        let o = g.other_end(e, w);
        o == w || small.has_vertex(o)
    };
    match diff.vertex_len() {
        0 => {
            let edges: Vec<usize> = diff.edge_ids().collect();
            let (u, v) = g.endpoints(edges[0]);
            Ok([u, v].into_iter().any(|w| {
                edges
                    .iter()
                    .all(|&e| edges_at(g, w) & (1u64 << e) != 0 && reaches_back(e, w))
            }))
        }
        1 => {
            let w = diff.vertex_ids().next().unwrap();
            Ok(diff
                .edge_ids()
                .all(|e| edges_at(g, w) & (1u64 << e) != 0 && reaches_back(e, w)))
        }
        _ => Ok(false),
    }
}

fn grow(adj: &[u64], allowed: u64, cur: u64, frontier: u64, out: &mut Vec<u64>) {
    if frontier == 0 {
        out.push(cur);
        return;
    }
    let e = frontier.trailing_zeros() as usize;
    let bit = 1u64 << e;
    let allowed = allowed & !bit;
    let with = cur | bit;
    grow(adj, allowed, with, (frontier | adj[e]) & allowed & !with, out);
    grow(adj, allowed, cur, frontier & !bit, out);
}

/// Every subcontinuum of the discrete model: singletons and connected
/// nonempty edge sets with their endpoints, in canonical order.
pub fn enumerate_connected(g: &TopoGraph) -> Result<Vec<Subgraph>> {
    check_budget(g)?;
    let m = g.edge_count();
    let ends: Vec<u64> = g
        .edges()
        .iter()
        .map(|&(u, v)| (1u64 << u) | (1u64 << v))
        .collect();
    let adj: Vec<u64> = (0..m)
        .map(|e| {
            (0..m)
                .filter(|&f| f != e && ends[e] & ends[f] != 0)
                .fold(0, |acc, f| acc | 1u64 << f)
        })
        .collect();
    let mut all: Vec<Subgraph> = (0..m)
        .into_par_iter()
        .flat_map_iter(|r| {
            let above = !((1u64 << r) | ((1u64 << r) - 1));
            let mut sets = Vec::new();
            grow(&adj, above, 1u64 << r, adj[r] & above, &mut sets);
            sets.into_iter().map(|es| {
                let vs = (0..m)
                    .filter(|&e| es & (1u64 << e) != 0)
                    .fold(0, |acc, e| acc | ends[e]);
                Subgraph::new(vs, es)
            })
        })
        .collect();
    all.extend((0..g.vertex_count()).map(Subgraph::vertex));
    all.sort_unstable();
    Ok(all)
}

/// The non-cut subcontinua of the discrete model in canonical order.
pub fn enumerate_ncstar(g: &TopoGraph) -> Result<Vec<Subgraph>> {
    let all = enumerate_connected(g)?;
    Ok(all.into_par_iter().filter(|s| s.is_noncut(g)).collect())
}

/// Nodes, star-move edges, and components of the discrete hyperspace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperspaceGraph {
    pub nodes: Vec<Subgraph>,
    /// Pairs `(i, j)` with `i < j`, sorted.
    pub adjacency: Vec<(usize, usize)>,
    /// Smallest node index of each node's component.
    pub component_ids: Vec<usize>,
}

/// Star-move supersets of `a` that are among the nodes.
fn upward_neighbors(g: &TopoGraph, index: &HashMap<Subgraph, usize>, a: &Subgraph) -> Vec<usize> {
    let mut out = Vec::new();
    for w in 0..g.vertex_count() {
        let present = a.has_vertex(w);
        let mut candidates = 0u64;
        let mut touches = false;
        for &(e, o) in g.incident(w) {
            if a.has_edge(e) {
                continue;
            }
            if a.has_vertex(o) {
                candidates |= 1u64 << e;
                touches = true;
            } else if o == w && !present {
                candidates |= 1u64 << e;
            }
        }
        if !present && !touches {
            continue;
        }
        let base = if present { *a } else { a.with_vertex(w) };
        for s in nonzero_submasks(candidates) {
            let b = Subgraph::new(base.vertices, base.edges | s);
            if let Some(&j) = index.get(&b) {
                out.push(j);
            }
        }
    }
    out
}

pub fn hyperspace_components(g: &TopoGraph, nodes: Vec<Subgraph>) -> HyperspaceGraph {
    let index: HashMap<Subgraph, usize> = nodes.iter().enumerate().map(|(i, s)| (*s, i)).collect();
    let mut adjacency: Vec<(usize, usize)> = nodes
        .par_iter()
        .enumerate()
        .flat_map_iter(|(i, a)| {
            upward_neighbors(g, &index, a)
                .into_iter()
                .map(move |j| (i.min(j), i.max(j)))
        })
        .collect();
    adjacency.sort_unstable();
    adjacency.dedup();
    let mut dsu = DisjointSets::new(nodes.len());
    for &(i, j) in &adjacency {
        dsu.union(i, j);
    }
    let mut smallest: HashMap<usize, usize> = HashMap::new();
    let component_ids = (0..nodes.len())
        .map(|i| *smallest.entry(dsu.find(i)).or_insert(i))
        .collect();
    HyperspaceGraph {
        nodes,
        adjacency,
        component_ids,
    }
}

const PALETTE: [&str; 8] = [
    "lightblue", "salmon", "palegreen", "khaki", "plum", "lightgray", "orange", "cyan",
];

impl HyperspaceGraph {
    pub fn component_count(&self) -> usize {
        self.components().len()
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() == 1
    }

    /// Node indices per component, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut groups: Vec<Vec<usize>> = Vec::new();
        let mut slot: HashMap<usize, usize> = HashMap::new();
        for (i, &c) in self.component_ids.iter().enumerate() {
            let k = *slot.entry(c).or_insert_with(|| {
                groups.push(Vec::new());
                groups.len() - 1
            });
            groups[k].push(i);
        }
        groups
    }

    pub fn to_json(&self) -> Value {
        json!({
            "nodes": self.nodes.iter().map(|s| s.to_hex()).collect::<Vec<_>>(),
            "adjacency": self.adjacency,
            "components": self.components(),
        })
    }

    pub fn to_dot(&self) -> String {
        let colour: HashMap<usize, usize> = self
            .components()
            .iter()
            .enumerate()
            .map(|(k, members)| (members[0], k))
            .collect();
        let mut out = String::from("graph hyperspace {\n  node [style=filled];\n");
        for (i, s) in self.nodes.iter().enumerate() {
            let k = colour[&self.component_ids[i]];
            let _ = writeln!(
                out,
                "  n{i} [label=\"{s}\", fillcolor={}, comment=\"component {k}\"];",
                PALETTE[k % PALETTE.len()]
            );
        }
        for &(i, j) in &self.adjacency {
            let _ = writeln!(out, "  n{i} -- n{j};");
        }
        out.push_str("}\n");
        out
    }
}

/// Builds the discrete hyperspace of `g` at subdivision `k`.
pub fn discrete_hyperspace(g: &TopoGraph, k: usize) -> Result<(Discretization, HyperspaceGraph)> {
    let d = discretize(g, k)?;
    let nodes = enumerate_ncstar(&d.fine)?;
    let h = hyperspace_components(&d.fine, nodes);
    Ok((d, h))
}

/// Whether the discrete hyperspace of `subdivide(smooth(g), k)` is connected.
pub fn oracle_verdict(g: &TopoGraph, k: usize) -> Result<bool> {
    if k < 2 {
        return Err(Error::SubdivisionTooCoarse(k));
    }
    Ok(discrete_hyperspace(g, k)?.1.is_connected())
}

/// A non-cut base, a pivot vertex next to it, and the approach edges from the
/// pivot into the base. The limit (base, approach edges, pivot) is a cut
/// subcontinuum reached by non-cut ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NoncompactnessCertificate {
    pub k: usize,
    pub base: Subgraph,
    pub pivot: usize,
    pub approach_edges: Vec<usize>,
    /// Realization in the coordinates of `smooth(g)`.
    pub limit: Region,
}

impl NoncompactnessCertificate {
    pub fn to_json(&self) -> Value {
        json!({
            "k": self.k,
            "base": self.base.to_hex(),
            "pivot": self.pivot,
            "approach_edges": self.approach_edges,
            "limit": self.limit.to_json(),
        })
    }
}

fn approach_candidates(fine: &TopoGraph, base: &Subgraph, v: usize) -> u64 {
    fine.incident(v)
        .iter()
        .filter(|&&(_, o)| o != v && base.has_vertex(o))
        .fold(0, |m, &(e, _)| m | 1u64 << e)
}

/// Complement components of `limit` all carry an edge at `v`.
fn every_component_touches(fine: &TopoGraph, limit: &Subgraph, v: usize) -> bool {
    let n = fine.vertex_count();
    let mut dsu = DisjointSets::new(n + fine.edge_count());
    let mut members = Vec::new();
    for u in (0..n).filter(|&u| !limit.has_vertex(u)) {
        members.push(u);
    }
    for e in (0..fine.edge_count()).filter(|&e| !limit.has_edge(e)) {
        members.push(n + e);
        let (a, b) = fine.endpoints(e);
        for w in [a, b] {
            if !limit.has_vertex(w) {
                dsu.union(n + e, w);
            }
        }
    }
    let all = dsu.count_among(members.iter().copied());
    let touching = dsu.count_among(
        fine.incident(v)
            .iter()
            .filter(|&&(e, _)| !limit.has_edge(e))
            .map(|&(e, _)| n + e),
    );
    all >= 2 && all == touching
}

/// First certificate in canonical search order: base, then pivot id, then
/// approach edge set as an integer mask.
pub fn noncompactness_certificate(g: &TopoGraph, k: usize) -> Result<Option<NoncompactnessCertificate>> {
    if k < 2 {
        return Err(Error::SubdivisionTooCoarse(k));
    }
    let d = discretize(g, k)?;
    let nodes = enumerate_ncstar(&d.fine)?;
    for base in &nodes {
        for v in (0..d.fine.vertex_count()).filter(|&v| !base.has_vertex(v)) {
            let candidates = approach_candidates(&d.fine, base, v);
            let mut subsets: Vec<u64> = nonzero_submasks(candidates).collect();
            subsets.sort_unstable();
            for s in subsets {
                let limit = Subgraph::new(base.vertices, base.edges | s).with_vertex(v);
                if every_component_touches(&d.fine, &limit, v) {
                    let region = region_from_subgraph(&d.coarse, &d.map, &limit)?;
                    return Ok(Some(NoncompactnessCertificate {
                        k,
                        base: *base,
                        pivot: v,
                        approach_edges: Subgraph::new(0, s).edge_ids().collect(),
                        limit: region,
                    }));
                }
            }
        }
    }
    Ok(None)
}

/// Regions `R_1..R_n` where `R_m` is the base plus the approach edges, each
/// stopped `2^-m / k` short of the pivot. Every postcondition is rechecked.
pub fn certificate_family(g: &TopoGraph, cert: &NoncompactnessCertificate, n: usize) -> Result<Vec<Region>> {
    let invalid = |m: String| Err(Error::InvalidCertificate(m));
    if n < 3 {
        return invalid(format!("family length {n} is below 3"));
    }
    let d = discretize(g, cert.k)?;
    if !cert.base.is_noncut(&d.fine) {
        return invalid("base is not non-cut".into());
    }
    if cert.base.has_vertex(cert.pivot) || cert.approach_edges.is_empty() {
        return invalid("pivot must lie outside the base and be approached".into());
    }
    let candidates = approach_candidates(&d.fine, &cert.base, cert.pivot);
    if cert.approach_edges.iter().any(|&e| candidates & (1u64 << e) == 0) {
        return invalid("approach edge does not join the pivot to the base".into());
    }
    if cert.limit.check(&d.coarse).is_err() {
        return invalid("limit is not a region of the smoothed graph".into());
    }
    if complement_components(&d.coarse, &cert.limit)?.component_count < 2 {
        return invalid("limit is not a cut subcontinuum".into());
    }
    let base_region = region_from_subgraph(&d.coarse, &d.map, &cert.base)?;
    let mut family = Vec::with_capacity(n);
    for m in 1..=n {
        let delta = Rational::new(1, (cert.k as i64) << m);
        let mut pieces = Vec::new();
        for &fe in &cert.approach_edges {
            let (ce, slot) = d.map.edge_origin(fe);
            let chain = d.map.chain(ce);
            let len = chain.len() as i64;
            let (a, b) = (Rational::new(slot as i64, len), Rational::new(slot as i64 + 1, len));
            let step = delta * Rational::new(cert.k as i64, len);
            if chain.vertices[slot] == cert.pivot {
                pieces.push((ce, a + step, b));
            } else {
                pieces.push((ce, a, b - step));
            }
        }
        let tail = Region::new(&d.coarse, [], pieces)?;
        let r = base_region.union(&d.coarse, &tail);
        if !is_noncut(&d.coarse, &r)? {
            return invalid(format!("member {m} is not non-cut"));
        }
        let dist = hausdorff_distance(&d.coarse, &r, &cert.limit)?;
        if dist != delta {
            return invalid(format!("member {m} lies at distance {dist}, expected {delta}"));
        }
        family.push(r);
    }
    if is_noncut(&d.coarse, &cert.limit)? {
        return invalid("limit is non-cut".into());
    }
    Ok(family)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;
    use crate::graph::{subdivide, GraphPoint};

    fn brute_connected(g: &TopoGraph) -> Vec<Subgraph> {
        let (n, m) = (g.vertex_count(), g.edge_count());
        let mut out = Vec::new();
        for vs in 1u64..(1 << n) {
            for es in 0u64..(1 << m) {
                let s = Subgraph::new(vs, es);
                if s.is_continuum(g) {
                    out.push(s);
                }
            }
        }
        out
    }

    #[test]
    fn enumeration_matches_brute_force() {
        for g in [triod(), cycle(4), theta(), figure_eight(), cricket(), k4()] {
            assert_eq!(enumerate_connected(&g).unwrap(), brute_connected(&g));
        }
        let (fine, _) = subdivide(&dumbbell(), 2).unwrap();
        assert_eq!(enumerate_connected(&fine).unwrap(), brute_connected(&fine));
    }

    #[test]
    fn ncstar_counts() {
        assert_eq!(enumerate_ncstar(&path(3)).unwrap().len(), 5);
        assert_eq!(enumerate_ncstar(&cycle(4)).unwrap().len(), 17);
        assert_eq!(enumerate_ncstar(&triod()).unwrap().len(), 7);
    }

    #[test]
    fn star_move_examples() {
        let p = path(3);
        let v1 = Subgraph::vertex(0);
        let v12 = Subgraph::from_ids(&[0, 1], &[0]);
        assert!(star_move_adjacent(&p, &v1, &v12).unwrap());
        assert!(!star_move_adjacent(&p, &v1, &Subgraph::full(&p)).unwrap());
        let c = cycle(4);
        let almost = Subgraph::new(0b1111, 0b0111);
        assert!(star_move_adjacent(&c, &almost, &Subgraph::full(&c)).unwrap());
        assert!(!star_move_adjacent(&c, &almost, &almost).unwrap());
        assert_eq!(
            star_move_adjacent(&p, &Subgraph::vertex(9), &v1),
            Err(Error::GraphMismatch)
        );
    }

    #[test]
    fn adjacency_agrees_with_predicate() {
        for g in [triod(), cycle(4), figure_eight(), theta()] {
            let nodes = enumerate_ncstar(&g).unwrap();
            let h = hyperspace_components(&g, nodes.clone());
            for i in 0..nodes.len() {
                for j in i + 1..nodes.len() {
                    let expect = star_move_adjacent(&g, &nodes[i], &nodes[j]).unwrap();
                    assert_eq!(h.adjacency.binary_search(&(i, j)).is_ok(), expect, "{i} {j}");
                }
            }
        }
    }

    #[test]
    fn component_examples() {
        let p4 = path(4);
        let h = hyperspace_components(&p4, enumerate_ncstar(&p4).unwrap());
        assert_eq!(h.nodes.len(), 7);
        assert_eq!(h.adjacency.len(), 6);
        assert!(h.is_connected());
        let t = triod();
        let h = hyperspace_components(&t, enumerate_ncstar(&t).unwrap());
        let mut sizes: Vec<usize> = h.components().iter().map(|c| c.len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 1, 1, 4]);
        let c = cycle(4);
        assert!(hyperspace_components(&c, enumerate_ncstar(&c).unwrap()).is_connected());
    }

    #[test]
    fn oracle_examples() {
        assert!(oracle_verdict(&figure_eight(), 2).unwrap());
        assert!(!oracle_verdict(&triod(), 2).unwrap());
        assert!(oracle_verdict(&dumbbell(), 2).unwrap());
        assert!(!oracle_verdict(&cricket(), 2).unwrap());
    }

    #[test]
    fn budget_guard() {
        assert!(matches!(oracle_verdict(&k4(), 5), Err(Error::BudgetExceeded(_))));
    }

    #[test]
    fn triod_certificate() {
        let cert = noncompactness_certificate(&triod(), 2).unwrap().unwrap();
        assert_eq!(cert.pivot, 0);
        assert_eq!(cert.base, Subgraph::from_ids(&[1, 4], &[1]));
        assert_eq!(
            complement_components(&smooth_triod(), &cert.limit).unwrap().component_count,
            2
        );
        let family = certificate_family(&triod(), &cert, 3).unwrap();
        let expected = [Rational::new(1, 4), Rational::new(1, 8), Rational::new(1, 16)];
        for (r, want) in family.iter().zip(expected) {
            assert_eq!(hausdorff_distance(&triod(), r, &cert.limit).unwrap(), want);
            assert!(r.contains(&GraphPoint::AtVertex(1)));
        }
    }

    fn smooth_triod() -> TopoGraph {
        crate::graph::smooth(&triod())
    }

    #[test]
    fn compact_graphs_have_no_certificate() {
        assert!(noncompactness_certificate(&path(5), 2).unwrap().is_none());
        assert!(noncompactness_certificate(&single_loop(), 4).unwrap().is_none());
        assert!(noncompactness_certificate(&theta(), 2).unwrap().is_some());
    }

    #[test]
    fn tampered_certificate_is_rejected() {
        let mut cert = noncompactness_certificate(&triod(), 2).unwrap().unwrap();
        cert.limit = Region::whole(&triod());
        assert!(matches!(
            certificate_family(&triod(), &cert, 3),
            Err(Error::InvalidCertificate(_))
        ));
    }

    #[test]
    fn dot_and_json() {
        let t = triod();
        let h = hyperspace_components(&t, enumerate_ncstar(&t).unwrap());
        let dot = h.to_dot();
        assert_eq!(dot.matches("fillcolor").count(), 7);
        assert_eq!(h.to_json()["components"].as_array().unwrap().len(), 4);
    }
}
