use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::hypercore::{EdgeId, Hypergraph, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WitnessKind {
    Path,
    Cycle,
}

/// Alternating vertex/hyperedge sequence certifying a Berge path or cycle.
///
/// A path of length `t` has `t + 1` vertices and `t` edges; a cycle of length
/// `t` has `t` vertices and `t` edges, edge `i` joining vertex `i` to vertex
/// `i + 1 (mod t)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BergeWitness {
    pub kind: WitnessKind,
    pub vertices: Vec<Vertex>,
    pub edges: Vec<EdgeId>,
}

impl BergeWitness {
    pub fn path(vertices: Vec<Vertex>, edges: Vec<EdgeId>) -> Self {
        BergeWitness {
            kind: WitnessKind::Path,
            vertices,
            edges,
        }
    }

    pub fn cycle(vertices: Vec<Vertex>, edges: Vec<EdgeId>) -> Self {
        BergeWitness {
            kind: WitnessKind::Cycle,
            vertices,
            edges,
        }
    }

    /// Number of hyperedges.
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Consecutive vertex pairs joined by each edge.
    pub fn pairs(&self) -> Vec<(Vertex, Vertex)> {
        let v = &self.vertices;
        match self.kind {
            WitnessKind::Path => v.windows(2).map(|w| (w[0], w[1])).collect(),
            WitnessKind::Cycle => (0..v.len()).map(|i| (v[i], v[(i + 1) % v.len()])).collect(),
        }
    }

    pub fn to_json(&self, h: &Hypergraph) -> Result<WitnessJson> {
        Ok(WitnessJson {
            kind: self.kind,
            vertices: self.vertices.clone(),
            edges: self
                .edges
                .iter()
                .map(|&id| h.edge(id).map(<[Vertex]>::to_vec))
                .collect::<Result<_>>()?,
        })
    }
}

/// Standalone witness form: edges spelled out as vertex lists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessJson {
    pub kind: WitnessKind,
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Vec<Vertex>>,
}

impl WitnessJson {
    /// Resolves the spelled-out edges against `h`. `None` if some edge is not
    /// a hyperedge of `h`.
    pub fn resolve(&self, h: &Hypergraph) -> Option<BergeWitness> {
        let edges = self.edges.iter().map(|e| h.find_edge(e)).collect::<Option<Vec<_>>>()?;
        Some(BergeWitness {
            kind: self.kind,
            vertices: self.vertices.clone(),
            edges,
        })
    }
}

/// Checks every witness invariant against `h`.
pub fn verify_witness(h: &Hypergraph, w: &BergeWitness) -> Result<bool> {
    for &id in &w.edges {
        h.edge(id)?;
    }
    let t = w.edges.len();
    let shape_ok = match w.kind {
        WitnessKind::Path => w.vertices.len() == t + 1,
        WitnessKind::Cycle => w.vertices.len() == t && t >= 2,
    };
    if !shape_ok || w.vertices.iter().any(|&v| v == 0 || v > h.n()) {
        return Ok(false);
    }
    if !all_distinct(&w.vertices) || !all_distinct(&w.edges) {
        return Ok(false);
    }
    let edges = h.edges();
    Ok(w.pairs()
        .iter()
        .zip(&w.edges)
        .all(|(&(a, b), &id)| edges[id].contains(&a) && edges[id].contains(&b)))
}

/// Verifies a standalone JSON witness; unknown edges make it invalid.
pub fn verify_witness_json(h: &Hypergraph, w: &WitnessJson) -> bool {
    w.resolve(h)
        .map(|w| verify_witness(h, &w).unwrap_or(false))
        .unwrap_or(false)
}

fn all_distinct(items: &[usize]) -> bool {
    let mut s = items.to_vec();
    s.sort_unstable();
    s.windows(2).all(|w| w[0] != w[1])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    #[test]
    fn single_edge_path() {
        let h = Hypergraph::new(3, 3, [[1, 2, 3]]).unwrap();
        assert!(verify_witness(&h, &BergeWitness::path(vec![1, 2], vec![0])).unwrap());
    }

    #[test]
    fn repeated_edge_rejected() {
        let h = Hypergraph::new(3, 3, [[1, 2, 3]]).unwrap();
        let w = BergeWitness::path(vec![1, 2, 3], vec![0, 0]);
        assert!(!verify_witness(&h, &w).unwrap());
    }

    #[test]
    fn two_edge_path() {
        let h = Hypergraph::new(5, 3, [[1, 2, 3], [3, 4, 5]]).unwrap();
        assert!(verify_witness(&h, &BergeWitness::path(vec![2, 3, 4], vec![0, 1])).unwrap());
        assert!(!verify_witness(&h, &BergeWitness::path(vec![2, 4, 3], vec![0, 1])).unwrap());
    }

    #[test]
    fn unknown_edge_id() {
        let h = Hypergraph::new(3, 3, [[1, 2, 3]]).unwrap();
        assert_eq!(
            verify_witness(&h, &BergeWitness::path(vec![1, 2], vec![4])),
            Err(Error::UnknownEdgeId { id: 4, count: 1 })
        );
    }

    #[test]
    fn two_cycle() {
        let h = Hypergraph::new(4, 3, [[1, 2, 3], [1, 2, 4]]).unwrap();
        assert!(verify_witness(&h, &BergeWitness::cycle(vec![1, 2], vec![0, 1])).unwrap());
        assert!(!verify_witness(&h, &BergeWitness::cycle(vec![1, 2], vec![0, 0])).unwrap());
        assert!(!verify_witness(&h, &BergeWitness::cycle(vec![1], vec![0])).unwrap());
    }

    #[test]
    fn json_round_trip_and_tamper() {
        let h = Hypergraph::new(5, 3, [[1, 2, 3], [3, 4, 5]]).unwrap();
        let w = BergeWitness::path(vec![2, 3, 4], vec![0, 1]);
        let mut json = w.to_json(&h).unwrap();
        assert!(verify_witness_json(&h, &json));
        json.edges[1] = vec![2, 4, 5];
        assert!(!verify_witness_json(&h, &json));
    }
}
