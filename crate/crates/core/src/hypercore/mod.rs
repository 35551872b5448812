//! Uniform hypergraphs on labelled vertices `1..=n`.
//!
//! A [`Hypergraph`] is immutable once built. Hyperedges are kept as sorted
//! vertex lists in lexicographic order, so two hypergraphs are equal exactly
//! when they have the same vertex count, uniformity and edge set. For
//! `n <= 64` every edge also carries a bitmask (bit `v - 1` for vertex `v`).

mod canon;

pub(crate) use canon::twin_classes;
pub use canon::CanonicalLabel;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// 1-based vertex id.
pub type Vertex = usize;
/// Index of a hyperedge in the canonical edge order of its hypergraph.
pub type EdgeId = usize;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Hypergraph {
    n: usize,
    r: usize,
    edges: Vec<Vec<Vertex>>,
    masks: Option<Vec<u64>>,
}

impl Hypergraph {
    /// Builds a hypergraph, silently dropping duplicate hyperedges.
    pub fn new<I, E>(n: usize, r: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = E>,
        E: AsRef<[Vertex]>,
    {
        Self::with_duplicate_count(n, r, edges).map(|(h, _)| h)
    }

    /// Like [`Hypergraph::new`], also returning how many duplicate hyperedges
    /// were dropped.
    pub fn with_duplicate_count<I, E>(n: usize, r: usize, edges: I) -> Result<(Self, usize)>
    where
        I: IntoIterator<Item = E>,
        E: AsRef<[Vertex]>,
    {
        if n == 0 || r < 2 {
            return Err(Error::NonPositiveParams { n, r });
        }
        let mut out = Vec::new();
        for raw in edges {
            let raw = raw.as_ref();
            if let Some(&vertex) = raw.iter().find(|&&v| v == 0 || v > n) {
                return Err(Error::OutOfRangeVertex { vertex, n });
            }
            let mut e = raw.to_vec();
            e.sort_unstable();
            e.dedup();
            if e.len() != r || raw.len() != r {
                return Err(Error::WrongEdgeSize {
                    edge: raw.to_vec(),
                    expected: r,
                    found: e.len(),
                });
            }
            out.push(e);
        }
        let before = out.len();
        let h = Self::from_sorted_edges(n, r, out);
        let dropped = before - h.edges.len();
        Ok((h, dropped))
    }

    /// Trusted constructor: every edge must already be a sorted list of `r`
    /// distinct vertices in range. Sorts and deduplicates the edge list.
    pub(crate) fn from_sorted_edges(n: usize, r: usize, mut edges: Vec<Vec<Vertex>>) -> Self {
        debug_assert!(edges
            .iter()
            .all(|e| e.len() == r && e.windows(2).all(|w| w[0] < w[1]) && e[r - 1] <= n));
        edges.sort_unstable();
        edges.dedup();
        let masks = (n <= 64).then(|| edges.iter().map(|e| mask_of(e)).collect());
        Hypergraph { n, r, edges, masks }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edges(&self) -> &[Vec<Vertex>] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> Result<&[Vertex]> {
        self.edges.get(id).map(Vec::as_slice).ok_or(Error::UnknownEdgeId {
            id,
            count: self.edges.len(),
        })
    }

    /// Bitmask of edge `id` when `n <= 64`.
    pub fn edge_mask(&self, id: EdgeId) -> Option<u64> {
        self.masks.as_ref().and_then(|m| m.get(id).copied())
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> {
        1..=self.n
    }

    /// Id of the hyperedge with exactly these vertices (any order).
    pub fn find_edge(&self, vertices: &[Vertex]) -> Option<EdgeId> {
        let mut key = vertices.to_vec();
        key.sort_unstable();
        self.edges.binary_search(&key).ok()
    }

    pub fn contains_edge(&self, vertices: &[Vertex]) -> bool {
        self.find_edge(vertices).is_some()
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.edges.iter().filter(|e| e.contains(&v)).count()
    }

    /// Degrees indexed by `v - 1`.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for e in &self.edges {
            for &v in e {
                deg[v - 1] += 1;
            }
        }
        deg
    }

    pub fn min_degree(&self) -> usize {
        self.degrees().into_iter().min().unwrap_or(0)
    }

    /// Incident edge ids per vertex, indexed by `v - 1`.
    pub fn incidence(&self) -> Vec<Vec<EdgeId>> {
        let mut inc = vec![Vec::new(); self.n];
        for (id, e) in self.edges.iter().enumerate() {
            for &v in e {
                inc[v - 1].push(id);
            }
        }
        inc
    }

    /// Berge-connectivity. Every vertex must lie in some hyperedge and the
    /// vertex/edge incidence graph must be connected; a single vertex with no
    /// edges counts as connected.
    pub fn is_connected(&self) -> bool {
        if self.n == 1 {
            return true;
        }
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut covered = vec![false; self.n];
        for e in &self.edges {
            let root = find(&mut parent, e[0] - 1);
            for &v in e {
                covered[v - 1] = true;
                let rv = find(&mut parent, v - 1);
                parent[rv] = root;
            }
        }
        if covered.iter().any(|&c| !c) {
            return false;
        }
        let root = find(&mut parent, 0);
        (1..self.n).all(|v| find(&mut parent, v) == root)
    }

    /// Ids of the hyperedges meeting `s`.
    pub fn incident_edges(&self, s: &VertexSet) -> Vec<EdgeId> {
        self.edges
            .iter()
            .enumerate()
            .filter(|(_, e)| e.iter().any(|v| s.contains(*v)))
            .map(|(id, _)| id)
            .collect()
    }

    /// Open neighbourhood of `v`.
    pub fn neighborhood(&self, v: Vertex) -> VertexSet {
        self.edges
            .iter()
            .filter(|e| e.contains(&v))
            .flat_map(|e| e.iter().copied())
            .filter(|&u| u != v)
            .collect()
    }

    /// Returns a copy with one more hyperedge.
    pub fn with_edge(&self, vertices: &[Vertex]) -> Result<Self> {
        let mut edges = self.edges.clone();
        edges.push(vertices.to_vec());
        let (h, dropped) = Self::with_duplicate_count(self.n, self.r, &edges)?;
        if dropped > 0 {
            let mut e = vertices.to_vec();
            e.sort_unstable();
            return Err(Error::ExtraEdgeAlreadyPresent(e));
        }
        Ok(h)
    }

    /// Returns a copy with hyperedge `id` removed.
    pub fn without_edge(&self, id: EdgeId) -> Result<Self> {
        self.edge(id)?;
        let mut edges = self.edges.clone();
        edges.remove(id);
        Ok(Self::from_sorted_edges(self.n, self.r, edges))
    }

    /// Relabels vertex `v` as `perm[v - 1]`. `perm` must be a permutation of
    /// `1..=n`.
    pub fn relabel(&self, perm: &[Vertex]) -> Result<Self> {
        let mut seen = vec![false; self.n];
        if perm.len() != self.n {
            return Err(Error::invalid(format!(
                "permutation has length {}, expected {}",
                perm.len(),
                self.n
            )));
        }
        for &p in perm {
            if p == 0 || p > self.n || std::mem::replace(&mut seen[p - 1], true) {
                return Err(Error::invalid("relabeling is not a permutation"));
            }
        }
        let edges = self
            .edges
            .iter()
            .map(|e| {
                let mut m: Vec<Vertex> = e.iter().map(|&v| perm[v - 1]).collect();
                m.sort_unstable();
                m
            })
            .collect();
        Ok(Self::from_sorted_edges(self.n, self.r, edges))
    }

    /// True when every hyperedge of `self` is a hyperedge of `other` (same
    /// labels, `self.n <= other.n`).
    pub fn is_subhypergraph_of(&self, other: &Hypergraph) -> bool {
        self.r == other.r && self.n <= other.n && self.edges.iter().all(|e| other.edges.binary_search(e).is_ok())
    }

    /// Deletes the vertices in `s` and every hyperedge meeting them. The
    /// survivors are relabelled `1..` in increasing order; the second value
    /// maps new labels (index `new - 1`) back to old ones. `None` when no
    /// vertex survives.
    pub fn remove_vertices(&self, s: &VertexSet) -> (Option<Hypergraph>, Vec<Vertex>) {
        let kept: Vec<Vertex> = self.vertices().filter(|v| !s.contains(*v)).collect();
        if kept.is_empty() {
            return (None, kept);
        }
        let mut new_label = vec![0; self.n + 1];
        for (i, &v) in kept.iter().enumerate() {
            new_label[v] = i + 1;
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| e.iter().all(|v| !s.contains(*v)))
            .map(|e| e.iter().map(|&v| new_label[v]).collect())
            .collect();
        (Some(Self::from_sorted_edges(kept.len(), self.r, edges)), kept)
    }

    /// Isomorphism-invariant label: equal for two hypergraphs iff one is a
    /// relabelling of the other.
    pub fn canonical_form(&self) -> CanonicalLabel {
        canon::canonical_form(self)
    }
}

pub(crate) fn mask_of(e: &[Vertex]) -> u64 {
    e.iter().fold(0u64, |m, &v| m | 1u64 << (v - 1))
}

/// A set of vertex ids, kept sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "Vec<Vertex>", into = "Vec<Vertex>")]
pub struct VertexSet(Vec<Vertex>);

impl VertexSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn insert(&mut self, v: Vertex) -> bool {
        match self.0.binary_search(&v) {
            Ok(_) => false,
            Err(pos) => {
                self.0.insert(pos, v);
                true
            }
        }
    }

    pub fn remove(&mut self, v: Vertex) -> bool {
        match self.0.binary_search(&v) {
            Ok(pos) => {
                self.0.remove(pos);
                true
            }
            Err(_) => false,
        }
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[Vertex] {
        &self.0
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.iter().all(|v| !other.contains(v))
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.iter().all(|v| other.contains(v))
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        self.iter().chain(other.iter()).collect()
    }

    pub fn within_range(&self, n: usize) -> bool {
        self.0.first().is_none_or(|&v| v >= 1) && self.0.last().is_none_or(|&v| v <= n)
    }
}

impl FromIterator<Vertex> for VertexSet {
    fn from_iter<T: IntoIterator<Item = Vertex>>(iter: T) -> Self {
        let mut v: Vec<Vertex> = iter.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        VertexSet(v)
    }
}

impl From<Vec<Vertex>> for VertexSet {
    fn from(v: Vec<Vertex>) -> Self {
        v.into_iter().collect()
    }
}

impl From<VertexSet> for Vec<Vertex> {
    fn from(s: VertexSet) -> Self {
        s.0
    }
}

impl<const N: usize> From<[Vertex; N]> for VertexSet {
    fn from(v: [Vertex; N]) -> Self {
        v.into_iter().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hg(n: usize, r: usize, edges: &[&[Vertex]]) -> Hypergraph {
        Hypergraph::new(n, r, edges.iter().copied()).unwrap()
    }

    #[test]
    fn single_edge_and_dedup() {
        assert_eq!(hg(3, 3, &[&[1, 2, 3]]).edge_count(), 1);
        let (h, dropped) = Hypergraph::with_duplicate_count(5, 3, [[1, 2, 3], [3, 2, 1]]).unwrap();
        assert_eq!(h.edge_count(), 1);
        assert_eq!(dropped, 1);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(
            Hypergraph::new(4, 3, [[1, 2, 5]]),
            Err(Error::OutOfRangeVertex { vertex: 5, n: 4 })
        );
        assert!(matches!(
            Hypergraph::new(4, 3, [vec![1, 2]]),
            Err(Error::WrongEdgeSize { found: 2, .. })
        ));
        assert!(matches!(
            Hypergraph::new(4, 3, [[1, 1, 2]]),
            Err(Error::WrongEdgeSize { found: 2, .. })
        ));
        assert_eq!(
            Hypergraph::new(0, 3, Vec::<Vec<usize>>::new()),
            Err(Error::NonPositiveParams { n: 0, r: 3 })
        );
        assert_eq!(
            Hypergraph::new(3, 1, Vec::<Vec<usize>>::new()),
            Err(Error::NonPositiveParams { n: 3, r: 1 })
        );
    }

    #[test]
    fn connectivity() {
        assert!(hg(3, 3, &[&[1, 2, 3]]).is_connected());
        assert!(!hg(4, 3, &[&[1, 2, 3]]).is_connected());
        assert!(!hg(6, 3, &[&[1, 2, 3], &[4, 5, 6]]).is_connected());
        assert!(hg(5, 3, &[&[1, 2, 3], &[3, 4, 5]]).is_connected());
        assert!(Hypergraph::new(1, 2, Vec::<Vec<usize>>::new()).unwrap().is_connected());
        assert!(!Hypergraph::new(2, 2, Vec::<Vec<usize>>::new()).unwrap().is_connected());
    }

    #[test]
    fn incidence_queries() {
        let h = hg(5, 3, &[&[1, 2, 3], &[3, 4, 5]]);
        assert!(h.incident_edges(&VertexSet::new()).is_empty());
        assert_eq!(h.incident_edges(&h.vertices().collect()), vec![0, 1]);
        assert_eq!(h.incident_edges(&VertexSet::from([3])), vec![0, 1]);
        assert_eq!(h.incident_edges(&VertexSet::from([1])), vec![0]);
        assert_eq!(h.neighborhood(3), VertexSet::from([1, 2, 4, 5]));
        assert_eq!(hg(3, 3, &[&[1, 2, 3]]).neighborhood(1), VertexSet::from([2, 3]));
        assert!(hg(4, 3, &[&[1, 2, 3]]).neighborhood(4).is_empty());
    }

    #[test]
    fn min_degrees() {
        assert_eq!(hg(3, 3, &[&[1, 2, 3]]).min_degree(), 1);
        assert_eq!(hg(4, 3, &[&[1, 2, 3], &[1, 2, 4]]).min_degree(), 1);
        let k4 = hg(4, 3, &[&[1, 2, 3], &[1, 2, 4], &[1, 3, 4], &[2, 3, 4]]);
        assert_eq!(k4.min_degree(), 3);
        assert_eq!(hg(4, 3, &[&[1, 2, 3]]).min_degree(), 0);
    }

    #[test]
    fn remove_vertices_relabels() {
        let h = hg(5, 3, &[&[1, 2, 3], &[3, 4, 5], &[2, 4, 5]]);
        let (k, map) = h.remove_vertices(&VertexSet::from([1]));
        let k = k.unwrap();
        assert_eq!(map, vec![2, 3, 4, 5]);
        assert_eq!(k.edges(), &[vec![1, 3, 4], vec![2, 3, 4]]);
        let (none, _) = h.remove_vertices(&h.vertices().collect());
        assert!(none.is_none());
    }

    #[test]
    fn with_edge_rejects_duplicate() {
        let h = hg(4, 3, &[&[1, 2, 3]]);
        assert_eq!(
            h.with_edge(&[3, 1, 2]),
            Err(Error::ExtraEdgeAlreadyPresent(vec![1, 2, 3]))
        );
        assert_eq!(h.with_edge(&[2, 3, 4]).unwrap().edge_count(), 2);
    }
}
