//! Blocks, cut vertices, and the block–cut tree of a multigraph.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::graph::{GraphPoint, TopoGraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BlockKind {
    /// A single non-loop edge whose interior consists of cut points.
    Bridge,
    /// A loop, a bundle of parallel edges, or a larger 2-connected piece.
    Tangle,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Block {
    pub edges: Vec<usize>,
    pub vertices: Vec<usize>,
    pub kind: BlockKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockCutTree {
    /// Ordered by smallest edge id.
    pub blocks: Vec<Block>,
    pub cut_vertices: BTreeSet<usize>,
    /// `(block index, cut vertex)` incidences.
    pub tree: Vec<(usize, usize)>,
}

struct Tarjan<'a> {
    g: &'a TopoGraph,
    disc: Vec<Option<usize>>,
    low: Vec<usize>,
    time: usize,
    stack: Vec<usize>,
    blocks: Vec<Vec<usize>>,
}

impl Tarjan<'_> {
    fn visit(&mut self, v: usize, parent_edge: Option<usize>) {
        self.disc[v] = Some(self.time);
        self.low[v] = self.time;
        self.time += 1;
        for &(e, w) in self.g.incident(v) {
            if Some(e) == parent_edge || self.g.is_loop(e) {
                continue;
            }
            match self.disc[w] {
                None => {
                    self.stack.push(e);
                    self.visit(w, Some(e));
                    self.low[v] = self.low[v].min(self.low[w]);
                    if self.low[w] >= self.disc[v].unwrap() {
                        let mut block = Vec::new();
                        while let Some(f) = self.stack.pop() {
                            block.push(f);
                            if f == e {
                                break;
                            }
                        }
                        self.blocks.push(block);
                    }
                }
                Some(dw) if dw < self.disc[v].unwrap() => {
                    self.stack.push(e);
                    self.low[v] = self.low[v].min(dw);
                }
                Some(_) => {}
            }
        }
    }
}

/// Biconnected blocks of the multigraph. Loops form their own blocks and
/// parallel edges are kept, so a doubled edge is a 2-connected block.
pub fn block_cut_tree(g: &TopoGraph) -> BlockCutTree {
    let mut tarjan = Tarjan {
        g,
        disc: vec![None; g.vertex_count()],
        low: vec![0; g.vertex_count()],
        time: 0,
        stack: Vec::new(),
        blocks: Vec::new(),
    };
    tarjan.visit(0, None);
    let mut edge_sets = tarjan.blocks;
    edge_sets.extend((0..g.edge_count()).filter(|&e| g.is_loop(e)).map(|e| vec![e]));
    for set in edge_sets.iter_mut() {
        set.sort_unstable();
    }
    edge_sets.sort_by_key(|set| set[0]);

    let blocks: Vec<Block> = edge_sets
        .into_iter()
        .map(|edges| {
            let vertices: BTreeSet<usize> = edges
                .iter()
                .flat_map(|&e| {
                    let (u, v) = g.endpoints(e);
                    [u, v]
                })
                .collect();
            let kind = if edges.len() == 1 && !g.is_loop(edges[0]) {
                BlockKind::Bridge
            } else {
                BlockKind::Tangle
            };
            Block {
                edges,
                vertices: vertices.into_iter().collect(),
                kind,
            }
        })
        .collect();

    let mut membership = vec![0usize; g.vertex_count()];
    for b in &blocks {
        for &v in &b.vertices {
            membership[v] += 1;
        }
    }
    let cut_vertices: BTreeSet<usize> =
        (0..g.vertex_count()).filter(|&v| membership[v] >= 2).collect();
    let tree = blocks
        .iter()
        .enumerate()
        .flat_map(|(i, b)| {
            b.vertices
                .iter()
                .filter(|v| cut_vertices.contains(v))
                .map(move |&v| (i, v))
        })
        .collect();
    BlockCutTree {
        blocks,
        cut_vertices,
        tree,
    }
}

impl BlockCutTree {
    /// Number of blocks containing `v`.
    pub fn blocks_at(&self, v: usize) -> usize {
        self.blocks.iter().filter(|b| b.vertices.contains(&v)).count()
    }

    pub fn cut_vertices_of(&self, block: usize) -> Vec<usize> {
        self.blocks[block]
            .vertices
            .iter()
            .copied()
            .filter(|v| self.cut_vertices.contains(v))
            .collect()
    }

    pub fn tangle_blocks(&self) -> Vec<usize> {
        (0..self.blocks.len())
            .filter(|&i| self.blocks[i].kind == BlockKind::Tangle)
            .collect()
    }

    /// The tree has no node of degree three or more.
    pub fn is_path(&self) -> bool {
        let block_ok = (0..self.blocks.len()).all(|b| self.cut_vertices_of(b).len() <= 2);
        let cut_ok = self.cut_vertices.iter().all(|&v| self.blocks_at(v) <= 2);
        block_ok && cut_ok
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph block_cut_tree {\n");
        for (i, b) in self.blocks.iter().enumerate() {
            let kind = match b.kind {
                BlockKind::Bridge => "Bridge",
                BlockKind::Tangle => "Tangle",
            };
            let edges: Vec<String> = b.edges.iter().map(|e| format!("e{e}")).collect();
            let _ = writeln!(
                out,
                "  b{i} [shape=box, label=\"{kind} b{i}\\n{}\"];",
                edges.join(" ")
            );
        }
        for v in &self.cut_vertices {
            let _ = writeln!(out, "  c{v} [shape=circle, label=\"{v}\"];");
        }
        for &(b, v) in &self.tree {
            let _ = writeln!(out, "  b{b} -- c{v};");
        }
        out.push_str("}\n");
        out
    }
}

/// Finite description of the cut points of a graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutPointSummary {
    pub cut_vertices: BTreeSet<usize>,
    /// Edges whose interiors consist entirely of cut points.
    pub bridge_edges: BTreeSet<usize>,
    pub noncut_vertices: BTreeSet<usize>,
}

impl CutPointSummary {
    pub fn is_cut_point(&self, x: &GraphPoint) -> bool {
        match *x {
            GraphPoint::AtVertex(v) => self.cut_vertices.contains(&v),
            GraphPoint::OnEdge { edge, .. } => self.bridge_edges.contains(&edge),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.cut_vertices.is_empty() && self.bridge_edges.is_empty()
    }
}

pub fn topological_cut_points(g: &TopoGraph) -> CutPointSummary {
    let tree = block_cut_tree(g);
    let bridge_edges = tree
        .blocks
        .iter()
        .filter(|b| b.kind == BlockKind::Bridge)
        .map(|b| b.edges[0])
        .collect();
    let noncut_vertices = (0..g.vertex_count())
        .filter(|v| !tree.cut_vertices.contains(v))
        .collect();
    CutPointSummary {
        cut_vertices: tree.cut_vertices,
        bridge_edges,
        noncut_vertices,
    }
}

/// A graph without cut points: no cut vertices and no bridges.
pub fn is_tangle(g: &TopoGraph) -> bool {
    topological_cut_points(g).is_empty()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;
    use crate::graph::{components_at_point, subdivide, build_graph};

    #[test]
    fn dumbbell_blocks() {
        let t = block_cut_tree(&dumbbell());
        let kinds: Vec<BlockKind> = t.blocks.iter().map(|b| b.kind).collect();
        assert_eq!(kinds, vec![BlockKind::Tangle, BlockKind::Bridge, BlockKind::Tangle]);
        assert_eq!(t.blocks[0].edges, vec![0]);
        assert_eq!(t.cut_vertices, BTreeSet::from([0, 1]));
        assert!(t.is_path());
    }

    #[test]
    fn theta_is_one_tangle_block() {
        let t = block_cut_tree(&theta());
        assert_eq!(t.blocks.len(), 1);
        assert_eq!(t.blocks[0].kind, BlockKind::Tangle);
        assert!(t.cut_vertices.is_empty());
    }

    #[test]
    fn triod_is_a_star() {
        let t = block_cut_tree(&triod());
        assert_eq!(t.blocks.len(), 3);
        assert!(t.blocks.iter().all(|b| b.kind == BlockKind::Bridge));
        assert_eq!(t.cut_vertices, BTreeSet::from([0]));
        assert!(!t.is_path());
        assert_eq!(t.blocks_at(0), 3);
    }

    #[test]
    fn parallel_bundle_is_a_tangle_block() {
        let g = build_graph(&[(0, 1), (0, 1), (1, 2)]).unwrap();
        let t = block_cut_tree(&g);
        assert_eq!(t.blocks[0].edges, vec![0, 1]);
        assert_eq!(t.blocks[0].kind, BlockKind::Tangle);
        assert_eq!(t.blocks[1].kind, BlockKind::Bridge);
    }

    #[test]
    fn cut_point_examples() {
        assert!(topological_cut_points(&single_loop()).is_empty());
        let arc = topological_cut_points(&arc1());
        assert_eq!(arc.bridge_edges, BTreeSet::from([0]));
        assert_eq!(arc.noncut_vertices, BTreeSet::from([0, 1]));
        let lol = topological_cut_points(&lollipop());
        assert_eq!(lol.cut_vertices, BTreeSet::from([0]));
        assert_eq!(lol.bridge_edges, BTreeSet::from([1]));
    }

    #[test]
    fn tangle_examples() {
        assert!(is_tangle(&theta()));
        assert!(is_tangle(&k4()));
        assert!(!is_tangle(&lollipop()));
        assert!(is_tangle(&single_loop()));
    }

    /// K4 brute check: every vertex and one interior point per edge is non-cut.
    #[test]
    fn k4_pointwise_oracle() {
        let g = k4();
        for v in 0..g.vertex_count() {
            assert_eq!(components_at_point(&g, &GraphPoint::AtVertex(v)).unwrap(), 1);
        }
        for e in 0..g.edge_count() {
            assert_eq!(components_at_point(&g, &GraphPoint::on_edge(e, 1, 2)).unwrap(), 1);
        }
    }

    #[test]
    fn summary_agrees_with_pointwise_counts() {
        for g in [dumbbell(), cricket(), figure_eight(), triod(), theta(), path(4)] {
            let s = topological_cut_points(&g);
            for v in 0..g.vertex_count() {
                let x = GraphPoint::AtVertex(v);
                assert_eq!(s.is_cut_point(&x), components_at_point(&g, &x).unwrap() >= 2);
            }
            for e in 0..g.edge_count() {
                let x = GraphPoint::on_edge(e, 1, 3);
                assert_eq!(s.is_cut_point(&x), components_at_point(&g, &x).unwrap() >= 2);
            }
        }
    }

    #[test]
    fn tangle_is_subdivision_invariant() {
        for g in [theta(), lollipop(), k4(), cricket(), figure_eight()] {
            let (fine, _) = subdivide(&g, 3).unwrap();
            assert_eq!(is_tangle(&g), is_tangle(&fine));
        }
    }

    #[test]
    fn dot_mentions_kinds() {
        let dot = block_cut_tree(&dumbbell()).to_dot();
        assert!(dot.contains("Bridge"));
        assert!(dot.contains("b1 -- c0"));
    }
}
