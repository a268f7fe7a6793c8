//! Discrete subcontinua: vertex-plus-edge subgraphs of a fine graph, stored
//! as a pair of 64-bit masks.

use std::fmt;

use crate::dsu::DisjointSets;
use crate::error::{Error, Result};
use crate::graph::TopoGraph;

/// Largest vertex or edge count a [`Subgraph`] mask can address.
pub const MAX_ELEMENTS: usize = 64;

/// A set of vertices and edges of a fine graph.
///
/// The derived ordering (vertex mask first, then edge mask, both compared as
/// integers) is the canonical order used for every listing.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgraph {
    pub vertices: u64,
    pub edges: u64,
}

fn bit(i: usize) -> u64 {
    1u64 << i
}

fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        bit(n) - 1
    }
}

fn ones(mask: u64) -> impl Iterator<Item = usize> {
    let mut m = mask;
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(i)
        }
    })
}

/// Errors unless the graph is small enough for mask-based subgraphs.
pub fn check_mask_capacity(g: &TopoGraph) -> Result<()> {
    let size = g.vertex_count().max(g.edge_count());
    if size > MAX_ELEMENTS {
        Err(Error::GraphTooLarge(size))
    } else {
        Ok(())
    }
}

impl Subgraph {
    pub fn new(vertices: u64, edges: u64) -> Self {
        Self { vertices, edges }
    }

    pub fn from_ids(vertices: &[usize], edges: &[usize]) -> Self {
        Self {
            vertices: vertices.iter().fold(0, |m, &v| m | bit(v)),
            edges: edges.iter().fold(0, |m, &e| m | bit(e)),
        }
    }

    pub fn vertex(v: usize) -> Self {
        Self::new(bit(v), 0)
    }

    pub fn full(g: &TopoGraph) -> Self {
        Self::new(low_mask(g.vertex_count()), low_mask(g.edge_count()))
    }

    pub fn is_empty(&self) -> bool {
        self.vertices == 0 && self.edges == 0
    }

    pub fn has_vertex(&self, v: usize) -> bool {
        self.vertices & bit(v) != 0
    }

    pub fn has_edge(&self, e: usize) -> bool {
        self.edges & bit(e) != 0
    }

    pub fn with_vertex(mut self, v: usize) -> Self {
        self.vertices |= bit(v);
        self
    }

    pub fn with_edge(mut self, e: usize) -> Self {
        self.edges |= bit(e);
        self
    }

    pub fn union(&self, other: &Self) -> Self {
        Self::new(self.vertices | other.vertices, self.edges | other.edges)
    }

    pub fn minus(&self, other: &Self) -> Self {
        Self::new(self.vertices & !other.vertices, self.edges & !other.edges)
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.vertices & !other.vertices == 0 && self.edges & !other.edges == 0
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = usize> {
        ones(self.vertices)
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = usize> {
        ones(self.edges)
    }

    pub fn vertex_len(&self) -> usize {
        self.vertices.count_ones() as usize
    }

    pub fn edge_len(&self) -> usize {
        self.edges.count_ones() as usize
    }

    /// Errors when a mask addresses elements the graph does not have.
    pub fn check_fits(&self, g: &TopoGraph) -> Result<()> {
        check_mask_capacity(g)?;
        if self.vertices & !low_mask(g.vertex_count()) != 0
            || self.edges & !low_mask(g.edge_count()) != 0
        {
            return Err(Error::SubgraphGraphMismatch);
        }
        Ok(())
    }

    /// Every selected edge has both endpoints selected.
    pub fn is_closed(&self, g: &TopoGraph) -> bool {
        self.edge_ids().all(|e| {
            let (u, v) = g.endpoints(e);
            self.has_vertex(u) && self.has_vertex(v)
        })
    }

    /// Nonempty, closed, and with a connected realization.
    pub fn is_continuum(&self, g: &TopoGraph) -> bool {
        if self.vertices == 0 || !self.is_closed(g) {
            return false;
        }
        let mut dsu = DisjointSets::new(g.vertex_count());
        for e in self.edge_ids() {
            let (u, v) = g.endpoints(e);
            dsu.union(u, v);
        }
        dsu.count_among(self.vertex_ids()) == 1
    }

    /// Components of the open set `G \ |self|`; zero when `self` is everything.
    pub fn complement_components(&self, g: &TopoGraph) -> usize {
        let n = g.vertex_count();
        let mut dsu = DisjointSets::new(n + g.edge_count());
        let mut members = Vec::new();
        for v in (0..n).filter(|&v| !self.has_vertex(v)) {
            members.push(v);
        }
        for e in (0..g.edge_count()).filter(|&e| !self.has_edge(e)) {
            members.push(n + e);
            let (u, v) = g.endpoints(e);
            for w in [u, v] {
                if !self.has_vertex(w) {
                    dsu.union(n + e, w);
                }
            }
        }
        dsu.count_among(members)
    }

    /// Discrete non-cut test: a subcontinuum whose complement is connected
    /// or empty.
    pub fn is_noncut(&self, g: &TopoGraph) -> bool {
        self.is_continuum(g) && self.complement_components(g) <= 1
    }

    /// Compact hex form `vertices:edges`.
    pub fn to_hex(&self) -> String {
        format!("{:x}:{:x}", self.vertices, self.edges)
    }

    pub fn from_hex(s: &str) -> Option<Self> {
        let (v, e) = s.split_once(':')?;
        Some(Self::new(
            u64::from_str_radix(v, 16).ok()?,
            u64::from_str_radix(e, 16).ok()?,
        ))
    }
}

impl fmt::Display for Subgraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vs: Vec<String> = self.vertex_ids().map(|v| v.to_string()).collect();
        let es: Vec<String> = self.edge_ids().map(|e| format!("e{e}")).collect();
        write!(f, "{{{}}}", vs.into_iter().chain(es).collect::<Vec<_>>().join(","))
    }
}
