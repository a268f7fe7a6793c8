//! Monotone paths of non-cut subcontinua from a start subgraph to the whole
//! graph, following the tangle construction and the stage recipes for each
//! form, plus an independent checker.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::classify::{classify, Verdict};
use crate::cut::is_tangle;
use crate::error::{Error, Result};
use crate::graph::{chain_decomposition, discretize, Chain, TopoGraph};
use crate::hyperspace::{star_move_adjacent, HyperspaceGraph};
use crate::region::{is_noncut, region_connected, Region};
use crate::subgraph::Subgraph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TangleStage {
    Sigma1,
    Sigma3,
    Lambda,
    Xi,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StageLabel {
    Case1TwoSided,
    Case2Sweep,
    Claim1Gamma,
    EdgeSweep,
    TangleStage(TangleStage),
}

/// Keyframes of a monotone path; `stage_labels[i]` names the move from
/// keyframe `i` to keyframe `i + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NCPath {
    pub k: usize,
    pub keyframes: Vec<Subgraph>,
    pub avoid: Option<usize>,
    pub stage_labels: Vec<StageLabel>,
}

/// Frontier of a subgraph `A` of a fine tangle, with respect to an avoided
/// vertex `p`. Branch vertices are those of degree other than two.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrontierAnalysis {
    /// Vertices outside `A`.
    pub u: Vec<usize>,
    /// Branch vertices outside `A` on a chain that meets `A`.
    pub s: Vec<usize>,
    /// For each element of `s`, the initial segments from it to `A`.
    pub d_star: Vec<(usize, Subgraph)>,
    pub s_star: Vec<usize>,
    /// Lowest element of `s_star` whose segments can be absorbed keeping the
    /// complement connected; only computed when `s` has two or more points.
    pub chosen_w0: Option<usize>,
}

fn violation<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InternalInvariantViolation(msg.into()))
}

/// A chain read from one of its ends.
struct Branch {
    vertices: Vec<usize>,
    edges: Vec<usize>,
}

fn branches_at(chains: &[Chain], w: usize) -> Result<Vec<Branch>> {
    let mut out = Vec::new();
    for c in chains {
        let (first, last) = (c.vertices[0], *c.vertices.last().unwrap());
        if first == w && last == w {
            return violation(format!("closed chain at branch vertex {w}"));
        }
        if first == w {
            out.push(Branch {
                vertices: c.vertices.clone(),
                edges: c.edges.clone(),
            });
        } else if last == w {
            out.push(Branch {
                vertices: c.vertices.iter().rev().copied().collect(),
                edges: c.edges.iter().rev().copied().collect(),
            });
        }
    }
    out.sort_by_key(|b| b.edges[0]);
    Ok(out)
}

/// Index of the first vertex of `A` along the branch.
fn first_hit(b: &Branch, a: &Subgraph) -> Option<usize> {
    b.vertices.iter().position(|&x| a.has_vertex(x))
}

fn branch_vertices(g: &TopoGraph) -> Vec<usize> {
    if g.is_circle() {
        return Vec::new();
    }
    (0..g.vertex_count()).filter(|&v| g.degree(v) != 2).collect()
}

pub fn frontier_analysis(g: &TopoGraph, a: &Subgraph, p: usize) -> Result<FrontierAnalysis> {
    let chains = chain_decomposition(g);
    let u = (0..g.vertex_count()).filter(|&v| !a.has_vertex(v)).collect();
    let mut s = Vec::new();
    let mut d_star = Vec::new();
    for w in branch_vertices(g).into_iter().filter(|&w| !a.has_vertex(w)) {
        let mut d = Subgraph::vertex(w);
        let mut meets = false;
        for b in branches_at(&chains, w)? {
            if let Some(i) = first_hit(&b, a) {
                meets = true;
                for j in 0..=i {
                    d = d.with_vertex(b.vertices[j]);
                }
                for j in 0..i {
                    d = d.with_edge(b.edges[j]);
                }
            }
        }
        if meets {
            s.push(w);
            d_star.push((w, d));
        }
    }
    for (i, (v, dv)) in d_star.iter().enumerate() {
        for (w, dw) in &d_star[i + 1..] {
            let (x, y) = (dv.minus(a), dw.minus(a));
            if x.vertices & y.vertices != 0 || x.edges & y.edges != 0 {
                return violation(format!("segments of {v} and {w} overlap outside A"));
            }
        }
    }
    let s_star: Vec<usize> = d_star
        .iter()
        .filter(|(_, d)| !d.has_vertex(p))
        .map(|&(w, _)| w)
        .collect();
    let chosen_w0 = if s.len() >= 2 {
        d_star
            .iter()
            .filter(|(w, _)| s_star.contains(w))
            .find(|(_, d)| a.union(d).is_noncut(g))
            .map(|&(w, _)| w)
    } else {
        None
    };
    Ok(FrontierAnalysis {
        u,
        s,
        d_star,
        s_star,
        chosen_w0,
    })
}

/// `cur` plus `y` and every edge at `y` that closes up inside the result.
fn add_vertex(g: &TopoGraph, cur: &Subgraph, y: usize) -> Subgraph {
    let mut next = cur.with_vertex(y);
    for &(e, o) in g.incident(y) {
        if next.has_vertex(o) {
            next = next.with_edge(e);
        }
    }
    next
}

struct Builder<'a> {
    g: &'a TopoGraph,
    avoid: Option<usize>,
    keyframes: Vec<Subgraph>,
    labels: Vec<StageLabel>,
}

impl<'a> Builder<'a> {
    fn new(g: &'a TopoGraph, start: Subgraph, avoid: Option<usize>) -> Self {
        Self {
            g,
            avoid,
            keyframes: vec![start],
            labels: Vec::new(),
        }
    }

    fn cur(&self) -> Subgraph {
        *self.keyframes.last().unwrap()
    }

    fn push(&mut self, next: Subgraph, label: StageLabel) -> Result<()> {
        let cur = self.cur();
        if !(cur.is_subset_of(&next) && cur != next) {
            return violation(format!("move {label:?} does not grow the subcontinuum"));
        }
        if !next.is_noncut(self.g) {
            return violation(format!("move {label:?} produced a cut subcontinuum {next}"));
        }
        if let Some(p) = self.avoid {
            if next.has_vertex(p) && next != Subgraph::full(self.g) {
                return violation(format!("move {label:?} reached the avoided vertex early"));
            }
        }
        self.keyframes.push(next);
        self.labels.push(label);
        Ok(())
    }

    fn add(&mut self, y: usize, label: StageLabel) -> Result<()> {
        let next = add_vertex(self.g, &self.cur(), y);
        self.push(next, label)
    }

    /// Grows a vertex at a time along the open arc that remains, `p` last.
    fn case1(&mut self, p: usize) -> Result<()> {
        let full = Subgraph::full(self.g);
        while self.cur() != full {
            let cur = self.cur();
            let frontier: Vec<usize> = (0..self.g.vertex_count())
                .filter(|&y| !cur.has_vertex(y))
                .filter(|&y| self.g.incident(y).iter().any(|&(_, o)| cur.has_vertex(o)))
                .collect();
            match frontier.iter().find(|&&y| y != p) {
                Some(&y) => self.add(y, StageLabel::Case1TwoSided)?,
                None if frontier == [p] => {
                    self.add(p, StageLabel::Case1TwoSided)?;
                    if self.cur() != full {
                        return violation("arrival at the avoided vertex left the graph incomplete");
                    }
                }
                None => return violation("no frontier vertex in an incomplete subcontinuum"),
            }
        }
        Ok(())
    }

    /// Sweeps a branch from where it meets the current set back toward its
    /// first vertex, stopping short of it.
    fn sweep_branch(&mut self, b: &Branch, hit: usize, label: StageLabel) -> Result<()> {
        for j in (1..hit).rev() {
            self.add(b.vertices[j], label)?;
        }
        Ok(())
    }

    fn case2(&mut self, chains: &[Chain], v: usize, p: usize) -> Result<()> {
        let a = self.cur();
        let tops = branch_vertices(self.g);
        if tops.iter().any(|&w| w != v && !a.has_vertex(w)) {
            return violation("a branch vertex other than the unique frontier point lies outside A");
        }
        let branches: Vec<(Branch, usize)> = branches_at(chains, v)?
            .into_iter()
            .filter_map(|b| first_hit(&b, &a).map(|i| (b, i)))
            .collect();
        if branches.len() < 2 {
            return violation("single chain from the frontier point back to A");
        }
        let holding_p = branches
            .iter()
            .position(|(b, i)| b.vertices[1..*i].contains(&p));
        if p != v && holding_p.is_none() {
            return violation("avoided vertex lies on no chain at the frontier point");
        }
        for (idx, (b, i)) in branches.iter().enumerate() {
            if Some(idx) != holding_p {
                self.sweep_branch(b, *i, StageLabel::Case2Sweep)?;
            }
        }
        self.add(v, StageLabel::Case2Sweep)?;
        if p == v {
            if self.cur() != Subgraph::full(self.g) {
                return violation("arrival at the frontier point left the graph incomplete");
            }
            Ok(())
        } else {
            self.case1(p)
        }
    }

    fn claim1(&mut self, chains: &[Chain], w0: usize, d: &Subgraph) -> Result<()> {
        let a = self.cur();
        for b in branches_at(chains, w0)? {
            if let Some(i) = first_hit(&b, &a) {
                self.sweep_branch(&b, i, StageLabel::Claim1Gamma)?;
            }
        }
        self.add(w0, StageLabel::Claim1Gamma)?;
        if self.cur() != a.union(d) {
            return violation("absorbed set differs from A together with its segments at w0");
        }
        Ok(())
    }
}

/// Keyframes from `a` to the whole tangle `g`, `p` added only at the end.
fn tangle_walk(g: &TopoGraph, a: Subgraph, p: usize) -> Result<Builder<'_>> {
    let chains = chain_decomposition(g);
    let full = Subgraph::full(g);
    let mut bld = Builder::new(g, a, Some(p));
    while bld.cur() != full {
        let fa = frontier_analysis(g, &bld.cur(), p)?;
        match fa.s.len() {
            0 => {
                if branch_vertices(g).iter().any(|&w| !bld.cur().has_vertex(w)) {
                    return violation("branch vertex outside A but no frontier point");
                }
                bld.case1(p)?;
            }
            1 => bld.case2(&chains, fa.s[0], p)?,
            _ => {
                let Some(w0) = fa.chosen_w0 else {
                    return violation("no absorbable frontier point avoiding p");
                };
                let d = fa.d_star.iter().find(|(w, _)| *w == w0).unwrap().1;
                bld.claim1(&chains, w0, &d)?;
            }
        }
    }
    Ok(bld)
}

fn check_start(fine: &TopoGraph, a: &Subgraph) -> Result<()> {
    a.check_fits(fine)
        .map_err(|e| Error::InvalidStart(e.to_string()))?;
    if !a.is_noncut(fine) {
        return Err(Error::InvalidStart(format!("{a} is not a non-cut subcontinuum")));
    }
    Ok(())
}

/// Path in the hyperspace of a tangle from `a` to the whole graph that
/// avoids the fine vertex `p` until the last keyframe.
pub fn tangle_path(g: &TopoGraph, k: usize, a: &Subgraph, p: usize) -> Result<NCPath> {
    if !is_tangle(g) {
        return Err(Error::NotATangle);
    }
    let d = discretize(g, k)?;
    check_start(&d.fine, a)?;
    if p >= d.fine.vertex_count() {
        return Err(Error::InvalidPoint(format!("no fine vertex {p}")));
    }
    if a.has_vertex(p) {
        return Err(Error::PointInsideA);
    }
    let bld = tangle_walk(&d.fine, *a, p)?;
    Ok(NCPath {
        k,
        keyframes: bld.keyframes,
        avoid: Some(p),
        stage_labels: bld.labels,
    })
}

/// One side of the decomposition in fine coordinates. A degenerate side has
/// no edges and consists of its attaching vertex alone.
struct Side {
    edges: Vec<usize>,
    attach: usize,
    part: Subgraph,
}

impl Side {
    fn new(fine: &TopoGraph, edges: Vec<usize>, attach: usize) -> Self {
        let mut part = Subgraph::vertex(attach);
        for &e in &edges {
            let (u, v) = fine.endpoints(e);
            part = part.with_edge(e).with_vertex(u).with_vertex(v);
        }
        Self {
            edges,
            attach,
            part,
        }
    }

    fn inside_minus_attach(&self, a: &Subgraph) -> bool {
        !self.edges.is_empty() && a.is_subset_of(&self.part) && !a.has_vertex(self.attach)
    }
}

impl Builder<'_> {
    /// Runs a tangle stage on one side, starting from what the current set
    /// already holds there.
    fn side_stage(&mut self, side: &Side, avoid_attach: bool) -> Result<()> {
        if side.edges.is_empty() {
            return Ok(());
        }
        let cur = self.cur();
        let (local, vmap) = self.g.edge_subgraph(&side.edges)?;
        let mut e_local = Subgraph::default();
        for (i, &v) in vmap.iter().enumerate() {
            if cur.has_vertex(v) {
                e_local = e_local.with_vertex(i);
            }
        }
        for (i, &e) in side.edges.iter().enumerate() {
            if cur.has_edge(e) {
                e_local = e_local.with_edge(i);
            }
        }
        let label = StageLabel::TangleStage(if avoid_attach {
            TangleStage::Sigma1
        } else if e_local == Subgraph::vertex(vmap.binary_search(&side.attach).unwrap()) {
            TangleStage::Sigma3
        } else {
            TangleStage::Xi
        });
        let full_local = Subgraph::full(&local);
        if e_local == full_local {
            return Ok(());
        }
        let lift = |s: &Subgraph| {
            let mut out = cur;
            for v in s.vertex_ids() {
                out = out.with_vertex(vmap[v]);
            }
            for e in s.edge_ids() {
                out = out.with_edge(side.edges[e]);
            }
            out
        };
        if e_local.vertices == full_local.vertices {
            return self.push(lift(&full_local), label);
        }
        let p_local = if avoid_attach {
            vmap.binary_search(&side.attach).unwrap()
        } else {
            (0..local.vertex_count()).find(|&v| !e_local.has_vertex(v)).unwrap()
        };
        let inner = tangle_walk(&local, e_local, p_local)?;
        for s in &inner.keyframes[1..] {
            self.push(lift(s), label)?;
        }
        Ok(())
    }

    fn sweep_arc(&mut self, arc: &[usize]) -> Result<()> {
        for &y in arc {
            if !self.cur().has_vertex(y) {
                self.add(y, StageLabel::EdgeSweep)?;
            }
        }
        Ok(())
    }
}

/// Fine vertices of the connecting arc in order from `from` to `to`.
fn arc_order(fine: &TopoGraph, edges: &[usize], from: usize, to: usize) -> Result<Vec<usize>> {
    let mut order = vec![from];
    let mut used = Vec::new();
    while *order.last().unwrap() != to {
        let x = *order.last().unwrap();
        let Some(&e) = edges
            .iter()
            .find(|&&e| !used.contains(&e) && fine.incident(x).iter().any(|&(f, _)| f == e))
        else {
            return violation("connecting arc is broken");
        };
        used.push(e);
        order.push(fine.other_end(e, x));
    }
    Ok(order)
}

/// Path from `a` to the whole graph for any graph in the family.
pub fn ft_path(g: &TopoGraph, k: usize, a: &Subgraph) -> Result<NCPath> {
    let cls = classify(g);
    if !cls.verdict.is_ft() {
        return Err(Error::NotInFT);
    }
    let d = discretize(g, k)?;
    check_start(&d.fine, a)?;
    let dec = cls.decomposition.expect("family members carry a decomposition");
    let fine_edges = |coarse: &[usize]| -> Vec<usize> {
        let mut es: Vec<usize> = coarse
            .iter()
            .flat_map(|&e| d.map.chain(e).edges.iter().copied())
            .collect();
        es.sort_unstable();
        es
    };
    let mut bld = Builder::new(&d.fine, *a, None);
    let full = Subgraph::full(&d.fine);

    if let Verdict::Tangle { .. } = cls.verdict {
        let all = Side::new(&d.fine, (0..d.fine.edge_count()).collect(), 0);
        if *a != full {
            let cur = bld.cur();
            if cur.vertices == full.vertices {
                bld.push(full, StageLabel::TangleStage(TangleStage::Lambda))?;
            } else {
                let p = (0..d.fine.vertex_count()).find(|&v| !cur.has_vertex(v)).unwrap();
                let inner = tangle_walk(&d.fine, cur, p)?;
                for s in &inner.keyframes[1..] {
                    bld.push(*s, StageLabel::TangleStage(TangleStage::Lambda))?;
                }
            }
        }
        debug_assert_eq!(all.part, full);
        return finish(k, bld);
    }

    let p = d.map.vertex_image(dec.p.expect("sided forms have p"));
    let q = d.map.vertex_image(dec.q.expect("sided forms have q"));
    let arc_edges = fine_edges(&dec.arc_edges);
    let sides = [
        Side::new(&d.fine, fine_edges(&dec.k_edges), p),
        Side::new(&d.fine, fine_edges(&dec.m_edges), q),
    ];
    let arc = arc_order(&d.fine, &arc_edges, p, q)?;

    let start = bld.cur();
    for side in &sides {
        if side.inside_minus_attach(&start) {
            bld.side_stage(side, true)?;
            break;
        }
    }
    let cur = bld.cur();
    if sides[0].part.is_subset_of(&cur) {
        bld.sweep_arc(&arc)?;
        bld.side_stage(&sides[1], false)?;
    } else if sides[1].part.is_subset_of(&cur) {
        let back: Vec<usize> = arc.iter().rev().copied().collect();
        bld.sweep_arc(&back)?;
        bld.side_stage(&sides[0], false)?;
    } else {
        return violation("start meets the connecting arc without containing a side");
    }
    finish(k, bld)
}

fn finish(k: usize, bld: Builder<'_>) -> Result<NCPath> {
    if bld.cur() != Subgraph::full(bld.g) {
        return violation("stages ended before the whole graph");
    }
    Ok(NCPath {
        k,
        keyframes: bld.keyframes,
        avoid: bld.avoid,
        stage_labels: bld.labels,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PathViolation {
    Empty,
    LabelCountMismatch,
    InvalidKeyframe,
    CutKeyframe,
    AvoidViolated,
    NotMonotone,
    NotStarMove,
    DoesNotReachWhole,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathReport {
    pub keyframes: usize,
    /// First failing keyframe index and the reason; `None` on success.
    pub violation: Option<(usize, PathViolation)>,
}

impl PathReport {
    pub fn is_ok(&self) -> bool {
        self.violation.is_none()
    }
}

fn keyframe_problem(fine: &TopoGraph, s: &Subgraph) -> Option<PathViolation> {
    if s.check_fits(fine).is_err() || s.is_empty() || !s.is_closed(fine) {
        return Some(PathViolation::InvalidKeyframe);
    }
    let Ok(r) = Region::of_subgraph(fine, s) else {
        return Some(PathViolation::InvalidKeyframe);
    };
    if !region_connected(fine, &r).unwrap_or(false) {
        return Some(PathViolation::InvalidKeyframe);
    }
    if !is_noncut(fine, &r).unwrap_or(false) {
        return Some(PathViolation::CutKeyframe);
    }
    None
}

/// Rechecks every keyframe through exact region geometry and every
/// transition through the adjacency predicate.
pub fn verify_path(g: &TopoGraph, k: usize, path: &NCPath) -> PathReport {
    let report = |violation| PathReport {
        keyframes: path.keyframes.len(),
        violation,
    };
    let Ok(d) = discretize(g, k) else {
        return report(Some((0, PathViolation::InvalidKeyframe)));
    };
    let fine = &d.fine;
    if path.keyframes.is_empty() {
        return report(Some((0, PathViolation::Empty)));
    }
    let last = path.keyframes.len() - 1;
    for (i, s) in path.keyframes.iter().enumerate() {
        if let Some(v) = keyframe_problem(fine, s) {
            return report(Some((i, v)));
        }
        if let Some(p) = path.avoid {
            if i < last && s.has_vertex(p) {
                return report(Some((i, PathViolation::AvoidViolated)));
            }
        }
        if i > 0 {
            let prev = &path.keyframes[i - 1];
            if !(prev.is_subset_of(s) && prev != s) {
                return report(Some((i, PathViolation::NotMonotone)));
            }
            if !star_move_adjacent(fine, prev, s).unwrap_or(false) {
                return report(Some((i, PathViolation::NotStarMove)));
            }
        }
    }
    if path.keyframes[last] != Subgraph::full(fine) {
        return report(Some((last, PathViolation::DoesNotReachWhole)));
    }
    if path.stage_labels.len() != last {
        return report(Some((last, PathViolation::LabelCountMismatch)));
    }
    report(None)
}

impl NCPath {
    pub fn to_json(&self) -> Value {
        json!({
            "k": self.k,
            "keyframes": self.keyframes.iter().map(|s| s.to_hex()).collect::<Vec<_>>(),
            "stage_labels": self.stage_labels,
            "avoid": self.avoid,
        })
    }

    /// The path as a chain of keyframes, drawn over the hyperspace graph
    /// when one is given.
    pub fn to_dot(&self, hyperspace: Option<&HyperspaceGraph>) -> String {
        let mut out = String::from("digraph ncpath {\n");
        match hyperspace {
            Some(h) => {
                let id = |s: &Subgraph| h.nodes.binary_search(s).ok();
                for (i, s) in h.nodes.iter().enumerate() {
                    let on = self.keyframes.contains(s);
                    let _ = writeln!(
                        out,
                        "  n{i} [label=\"{s}\"{}];",
                        if on { ", style=bold, color=red" } else { ", color=gray" }
                    );
                }
                for &(i, j) in &h.adjacency {
                    let _ = writeln!(out, "  n{i} -> n{j} [dir=none, color=gray];");
                }
                for (w, label) in self.keyframes.windows(2).zip(&self.stage_labels) {
                    if let (Some(i), Some(j)) = (id(&w[0]), id(&w[1])) {
                        let _ = writeln!(out, "  n{i} -> n{j} [color=red, label=\"{label:?}\"];");
                    }
                }
            }
            None => {
                for (i, s) in self.keyframes.iter().enumerate() {
                    let _ = writeln!(out, "  k{i} [label=\"{s}\"];");
                }
                for (i, label) in self.stage_labels.iter().enumerate() {
                    let _ = writeln!(out, "  k{i} -> k{} [label=\"{label:?}\"];", i + 1);
                }
            }
        }
        out.push_str("}\n");
        out
    }
}
