//! Membership checks for the stability target classes, the set degree
//! condition and greedy kernelization.
//!
//! Every positive answer comes with an [`EmbeddingCertificate`] that
//! [`EmbeddingCertificate::verify`] re-checks by a direct scan of the
//! hyperedges.

mod embed;
mod setdegree;

pub use embed::{embeds_in_core, embeds_in_core_block, embeds_in_core_plus, in_pendant_class, in_pendant_class_any};
pub use setdegree::{
    check_set_degree, check_set_degree_with, kernelize, kernelize_with, set_degree_threshold, Kernel, RemovalOrder,
    RemovalStep,
};

use serde::{Deserialize, Serialize};

use crate::hypercore::{Hypergraph, Vertex, VertexSet};

/// A pendant hyperedge `A'_j ∪ D_j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Pendant {
    #[serde(rename = "Aprime")]
    pub core_part: VertexSet,
    #[serde(rename = "D")]
    pub outer: VertexSet,
}

impl Pendant {
    pub fn edge(&self) -> Vec<Vertex> {
        self.core_part.union(&self.outer).as_slice().to_vec()
    }
}

/// Vertex partition witnessing membership in one of the target classes.
///
/// Vertices outside `A`, the blocks and the pendant sets form `L`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EmbeddingCertificate {
    #[serde(rename = "A")]
    pub core: VertexSet,
    pub blocks: Vec<VertexSet>,
    pub exceptional: Option<Vec<Vertex>>,
    pub pendants: Vec<Pendant>,
}

impl EmbeddingCertificate {
    pub fn core_only(core: VertexSet) -> Self {
        EmbeddingCertificate {
            core,
            ..Self::default()
        }
    }

    /// Direct scan of every hyperedge against the partition. Checks
    /// disjointness, `|D_j| >= 2`, `A'_j ⊆ A`, that the exceptional edge is
    /// present with at most `r - 2` core vertices, that each pendant edge is
    /// present and is the only edge meeting its `D_j`, and that every other
    /// edge has at least `r - 1` core vertices or lies inside some `A ∪ B_i`.
    pub fn verify(&self, h: &Hypergraph) -> bool {
        let n = h.n();
        let r = h.r();
        let mut owner = vec![0u8; n + 1];
        let parts = std::iter::once(&self.core)
            .chain(&self.blocks)
            .chain(self.pendants.iter().map(|p| &p.outer));
        for part in parts {
            if !part.within_range(n) {
                return false;
            }
            for v in part.iter() {
                if owner[v] != 0 {
                    return false;
                }
                owner[v] = 1;
            }
        }
        let core = &self.core;
        let heavy = |e: &[Vertex]| e.iter().filter(|&&v| core.contains(v)).count() + 1 >= r;
        for p in &self.pendants {
            if p.outer.len() < 2 || !p.core_part.is_subset(core) || p.core_part.len() + p.outer.len() != r {
                return false;
            }
            if !h.contains_edge(&p.edge()) {
                return false;
            }
        }
        if let Some(x) = &self.exceptional {
            if !h.contains_edge(x) || heavy(x) {
                return false;
            }
        }
        let mut pendant_of = vec![usize::MAX; n + 1];
        for (j, p) in self.pendants.iter().enumerate() {
            for v in p.outer.iter() {
                pendant_of[v] = j;
            }
        }
        h.edges().iter().all(|e| {
            if let Some(&v) = e.iter().find(|&&v| pendant_of[v] != usize::MAX) {
                return *e == self.pendants[pendant_of[v]].edge();
            }
            heavy(e)
                || self.exceptional.as_deref() == Some(e.as_slice())
                || self
                    .blocks
                    .iter()
                    .any(|b| e.iter().all(|&v| core.contains(v) || b.contains(v)))
        })
    }

    /// True when the core has size `a` and the block sizes are exactly `bs`.
    pub fn has_shape(&self, a: usize, bs: &[usize]) -> bool {
        self.core.len() == a && self.blocks.len() == bs.len() && self.blocks.iter().zip(bs).all(|(b, &s)| b.len() == s)
    }
}
