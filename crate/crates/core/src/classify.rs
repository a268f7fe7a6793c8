//! Membership in the family of graphs with connected hyperspace of non-cut
//! subcontinua, plus the compactness predicates and disconnection witnesses.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::cut::{block_cut_tree, BlockCutTree, BlockKind};
use crate::error::{Error, Result};
use crate::graph::{components_at_point, smooth, GraphPoint, TopoGraph};
use crate::region::{complement_component_of, is_noncut, Region};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum NotFtReason {
    CutVertexWithThreeComponents(usize),
    BlockTreeNotAPath,
    TangleBlockWithTwoCutVertices(usize),
    MoreThanTwoTangleBlocks,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    Arc,
    Tangle { is_simple_closed_curve: bool },
    TangleWithSticker,
    JunctionOfTwoTangles,
    TwoTanglesJoinedByArc,
    NotFT(NotFtReason),
}

impl Verdict {
    pub fn is_ft(&self) -> bool {
        !matches!(self, Verdict::NotFT(_))
    }

    /// Letter of the form, `None` outside the family.
    pub fn form(&self) -> Option<char> {
        match self {
            Verdict::Arc => Some('A'),
            Verdict::Tangle { .. } => Some('B'),
            Verdict::TangleWithSticker => Some('C'),
            Verdict::JunctionOfTwoTangles => Some('D'),
            Verdict::TwoTanglesJoinedByArc => Some('E'),
            Verdict::NotFT(_) => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Verdict::Arc => "Arc",
            Verdict::Tangle { .. } => "Tangle",
            Verdict::TangleWithSticker => "TangleWithSticker",
            Verdict::JunctionOfTwoTangles => "JunctionOfTwoTangles",
            Verdict::TwoTanglesJoinedByArc => "TwoTanglesJoinedByArc",
            Verdict::NotFT(_) => "NotFT",
        }
    }
}

/// Edge sets of the smoothed graph: the side pieces `K` and `M`, and the arc
/// between them. `p` is where the arc meets `K` and `q` where it meets `M`.
///
/// Arc: `K` and `M` empty, `p`, `q` the end-points. Tangle: everything in
/// `K`, no `p`/`q`. Sticker: `M` empty and `q` the free end.
/// Junction: arc empty and `p == q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub k_edges: Vec<usize>,
    pub m_edges: Vec<usize>,
    pub arc_edges: Vec<usize>,
    pub p: Option<usize>,
    pub q: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FTClassification {
    pub verdict: Verdict,
    pub decomposition: Option<Decomposition>,
    /// The smoothed graph the verdict and decomposition refer to.
    pub smoothed_edges: Vec<(usize, usize)>,
}

impl FTClassification {
    pub fn to_json(&self, witness: Option<&Lemma5Witness>) -> Value {
        let reason = match self.verdict {
            Verdict::NotFT(r) => serde_json::to_value(r).expect("reason serializes"),
            _ => Value::Null,
        };
        json!({
            "verdict": self.verdict,
            "form": self.verdict.form().map(|c| c.to_string()),
            "decomposition": self.decomposition,
            "reason": reason,
            "witness": witness,
            "smoothed_edges": self.smoothed_edges,
        })
    }
}

fn verdict_for(s: &TopoGraph, tree: &BlockCutTree) -> Verdict {
    if let Some(v) = (0..s.vertex_count()).find(|&v| tree.blocks_at(v) >= 3) {
        return Verdict::NotFT(NotFtReason::CutVertexWithThreeComponents(v));
    }
    if !tree.is_path() {
        return Verdict::NotFT(NotFtReason::BlockTreeNotAPath);
    }
    let tangles = tree.tangle_blocks();
    if let Some(&b) = tangles.iter().find(|&&b| tree.cut_vertices_of(b).len() >= 2) {
        return Verdict::NotFT(NotFtReason::TangleBlockWithTwoCutVertices(b));
    }
    match tangles.len() {
        0 => Verdict::Arc,
        1 if tree.blocks.len() == 1 => Verdict::Tangle {
            is_simple_closed_curve: s.is_circle(),
        },
        1 => Verdict::TangleWithSticker,
        2 => {
            let (a, b) = (tangles[0], tangles[1]);
            let shared = tree.cut_vertices_of(a) == tree.cut_vertices_of(b);
            if shared && tree.blocks.len() == 2 {
                Verdict::JunctionOfTwoTangles
            } else {
                Verdict::TwoTanglesJoinedByArc
            }
        }
        _ => Verdict::NotFT(NotFtReason::MoreThanTwoTangleBlocks),
    }
}

fn decomposition_for(s: &TopoGraph, tree: &BlockCutTree, verdict: Verdict) -> Option<Decomposition> {
    let tangles = tree.tangle_blocks();
    let bridges = || -> Vec<usize> {
        let mut es: Vec<usize> = tree
            .blocks
            .iter()
            .filter(|b| b.kind == BlockKind::Bridge)
            .flat_map(|b| b.edges.iter().copied())
            .collect();
        es.sort_unstable();
        es
    };
    let attach = |b: usize| tree.cut_vertices_of(b).first().copied();
    let ends = || -> Vec<usize> { (0..s.vertex_count()).filter(|&v| s.degree(v) == 1).collect() };
    let d = match verdict {
        Verdict::NotFT(_) => return None,
        Verdict::Arc => {
            let e = ends();
            Decomposition {
                k_edges: vec![],
                m_edges: vec![],
                arc_edges: bridges(),
                p: e.first().copied(),
                q: e.get(1).copied(),
            }
        }
        Verdict::Tangle { .. } => Decomposition {
            k_edges: (0..s.edge_count()).collect(),
            m_edges: vec![],
            arc_edges: vec![],
            p: None,
            q: None,
        },
        Verdict::TangleWithSticker => Decomposition {
            k_edges: tree.blocks[tangles[0]].edges.clone(),
            m_edges: vec![],
            arc_edges: bridges(),
            p: attach(tangles[0]),
            q: ends().first().copied(),
        },
        Verdict::JunctionOfTwoTangles | Verdict::TwoTanglesJoinedByArc => Decomposition {
            k_edges: tree.blocks[tangles[0]].edges.clone(),
            m_edges: tree.blocks[tangles[1]].edges.clone(),
            arc_edges: bridges(),
            p: attach(tangles[0]),
            q: attach(tangles[1]),
        },
    };
    Some(d)
}

/// Decides the form of `smooth(g)`: the block–cut tree must be a path and
/// each tangle block may hold at most one cut vertex.
pub fn classify(g: &TopoGraph) -> FTClassification {
    let s = smooth(g);
    let tree = block_cut_tree(&s);
    let verdict = verdict_for(&s, &tree);
    let decomposition = decomposition_for(&s, &tree, verdict);
    FTClassification {
        verdict,
        decomposition,
        smoothed_edges: s.edges().to_vec(),
    }
}

pub fn ncstar_connected(g: &TopoGraph) -> bool {
    classify(g).verdict.is_ft()
}

/// True exactly for arcs and simple closed curves.
pub fn ncstar_compact(g: &TopoGraph) -> bool {
    let s = smooth(g);
    s.is_circle() || (s.edge_count() == 1 && !s.is_loop(0))
}

/// True exactly for simple closed curves.
#[allow(non_snake_case)]
pub fn ncstar_equals_C(g: &TopoGraph) -> bool {
    smooth(g).is_circle()
}

/// A point whose removal leaves at least three components, one non-cut
/// point in each, and the clopen family of non-cut subcontinua lying in the
/// first component.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lemma5Witness {
    pub p: GraphPoint,
    pub component_representatives: Vec<GraphPoint>,
    pub separating_family: String,
}

impl Lemma5Witness {
    /// Rechecks the witness from scratch against `g`.
    pub fn validate(&self, g: &TopoGraph) -> Result<()> {
        let bad = |m: &str| Err(Error::InternalInvariantViolation(format!("witness: {m}")));
        if components_at_point(g, &self.p)? < 3 {
            return bad("point has fewer than three complement components");
        }
        if self.component_representatives.len() < 3 {
            return bad("fewer than three representatives");
        }
        let cut = Region::point(g, &self.p)?;
        let mut seen = Vec::new();
        for x in &self.component_representatives {
            let Some(c) = complement_component_of(g, &cut, x)? else {
                return bad("representative is not in the complement");
            };
            if seen.contains(&c) {
                return bad("two representatives share a component");
            }
            seen.push(c);
            if !is_noncut(g, &Region::point(g, x)?)? {
                return bad("representative is a cut point");
            }
        }
        Ok(())
    }
}

fn noncut_candidates(g: &TopoGraph) -> Vec<GraphPoint> {
    let vertices = (0..g.vertex_count())
        .map(GraphPoint::AtVertex)
        .filter(|x| components_at_point(g, x).map(|c| c == 1).unwrap_or(false));
    let edges = (0..g.edge_count())
        .map(|e| GraphPoint::on_edge(e, 1, 2))
        .filter(|x| components_at_point(g, x).map(|c| c == 1).unwrap_or(false));
    vertices.chain(edges).collect()
}

/// Lowest vertex with at least three complement components, if any.
pub fn lemma5_witness(g: &TopoGraph) -> Option<Lemma5Witness> {
    let v = (0..g.vertex_count())
        .find(|&v| components_at_point(g, &GraphPoint::AtVertex(v)).unwrap_or(0) >= 3)?;
    let p = GraphPoint::AtVertex(v);
    let cut = Region::point(g, &p).ok()?;
    let count = components_at_point(g, &p).ok()?;
    let mut reps: Vec<Option<GraphPoint>> = vec![None; count];
    for x in noncut_candidates(g) {
        if let Ok(Some(c)) = complement_component_of(g, &cut, &x) {
            reps[c].get_or_insert(x);
        }
    }
    let reps: Vec<GraphPoint> = reps.into_iter().collect::<Option<_>>()?;
    let separating_family = format!(
        "non-cut subcontinua contained in the component of G \\ {{{v}}} containing {:?}",
        reps[0]
    );
    Some(Lemma5Witness {
        p,
        component_representatives: reps,
        separating_family,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;
    use crate::graph::{build_graph, subdivide};

    #[test]
    fn canonical_forms() {
        let d = classify(&dumbbell());
        assert_eq!(d.verdict, Verdict::TwoTanglesJoinedByArc);
        let dec = d.decomposition.unwrap();
        assert_eq!(dec.k_edges, vec![0]);
        assert_eq!(dec.m_edges, vec![2]);
        assert_eq!(dec.arc_edges, vec![1]);
        assert_eq!(classify(&figure_eight()).verdict, Verdict::JunctionOfTwoTangles);
        assert_eq!(classify(&lollipop()).verdict, Verdict::TangleWithSticker);
        assert_eq!(classify(&arc1()).verdict, Verdict::Arc);
        assert_eq!(
            classify(&cycle(5)).verdict,
            Verdict::Tangle { is_simple_closed_curve: true }
        );
        assert_eq!(
            classify(&k4()).verdict,
            Verdict::Tangle { is_simple_closed_curve: false }
        );
    }

    #[test]
    fn not_ft_reasons() {
        assert_eq!(
            classify(&triod()).verdict,
            Verdict::NotFT(NotFtReason::CutVertexWithThreeComponents(0))
        );
        assert_eq!(
            classify(&cricket()).verdict,
            Verdict::NotFT(NotFtReason::TangleBlockWithTwoCutVertices(0))
        );
        // Three loops in a chain: the middle loop carries two cut vertices.
        let chain = build_graph(&[(0, 0), (0, 1), (1, 1), (1, 2), (2, 2)]).unwrap();
        assert!(!ncstar_connected(&chain));
    }

    #[test]
    fn predicates() {
        assert!(ncstar_connected(&arc1()));
        assert!(ncstar_connected(&dumbbell()));
        assert!(!ncstar_connected(&triod()));
        assert!(ncstar_compact(&arc1()));
        assert!(ncstar_compact(&single_loop()));
        assert!(ncstar_compact(&path(5)));
        assert!(!ncstar_compact(&theta()));
        assert!(ncstar_equals_C(&single_loop()));
        assert!(ncstar_equals_C(&cycle(4)));
        assert!(!ncstar_equals_C(&arc1()));
        assert!(!ncstar_equals_C(&k4()));
    }

    #[test]
    fn witnesses() {
        let w = lemma5_witness(&triod()).unwrap();
        assert_eq!(w.p, GraphPoint::AtVertex(0));
        assert_eq!(w.component_representatives.len(), 3);
        w.validate(&triod()).unwrap();
        let w4 = lemma5_witness(&star(4)).unwrap();
        assert_eq!(w4.component_representatives.len(), 4);
        w4.validate(&star(4)).unwrap();
        assert!(lemma5_witness(&cycle(4)).is_none());
        // Two loops and a pendant edge at one vertex.
        let g = build_graph(&[(0, 0), (0, 0), (0, 1)]).unwrap();
        lemma5_witness(&g).unwrap().validate(&g).unwrap();
    }

    #[test]
    fn tampered_witness_fails_validation() {
        let mut w = lemma5_witness(&triod()).unwrap();
        w.component_representatives[1] = w.component_representatives[0];
        assert!(w.validate(&triod()).is_err());
    }

    #[test]
    fn subdivision_does_not_change_verdict() {
        for g in [dumbbell(), figure_eight(), lollipop(), triod(), cricket(), theta()] {
            for k in 2..=4 {
                let (fine, _) = subdivide(&g, k).unwrap();
                assert_eq!(classify(&g), classify(&fine));
            }
        }
    }

    #[test]
    fn json_has_expected_keys() {
        let v = classify(&dumbbell()).to_json(None);
        assert_eq!(v["form"], "E");
        assert!(v.to_string().contains("TwoTanglesJoinedByArc"));
        let t = classify(&triod()).to_json(lemma5_witness(&triod()).as_ref());
        assert!(t["witness"].is_object());
    }
}
