//! Compact edge sets for desk-scale enumeration.
//!
//! The `C(n, r)` possible hyperedges are numbered in colex order and a
//! hypergraph is a `u128` bit set over those numbers, so `C(n, r) <= 128`.
//! Vertices are 1-based; vertex masks use bit `v - 1`.

use crate::hypercore::{Hypergraph, Vertex};

pub(crate) type EdgeSet = u128;

pub(crate) const MAX_UNIVERSE: usize = 128;

pub(crate) struct Universe {
    pub n: usize,
    pub r: usize,
    /// Vertex mask of every possible hyperedge, colex order.
    pub masks: Vec<u32>,
    binom: Vec<Vec<u32>>,
}

impl Universe {
    /// `None` when `C(n, r)` exceeds [`MAX_UNIVERSE`] or `n > 32`.
    pub fn new(n: usize, r: usize) -> Option<Self> {
        if n > 32 || r == 0 || crate::binomial(n, r) > MAX_UNIVERSE as u64 {
            return None;
        }
        let mut binom = vec![vec![0u32; n + 1]; n + 1];
        for a in 0..=n {
            binom[a][0] = 1;
            for b in 1..=a {
                binom[a][b] = binom[a - 1][b - 1] + if b < a { binom[a - 1][b] } else { 0 };
            }
        }
        let mut masks: Vec<u32> = (0u32..1 << n).filter(|m| m.count_ones() as usize == r).collect();
        // Colex: compare the largest element first.
        masks.sort_by_key(|&m| {
            let mut key = 0u64;
            for v in (0..n).rev() {
                key = key << 1 | (m >> v & 1) as u64;
            }
            key
        });
        Some(Universe { n, r, masks, binom })
    }

    pub fn len(&self) -> usize {
        self.masks.len()
    }

    pub fn full_vertex_mask(&self) -> u32 {
        if self.n == 32 {
            u32::MAX
        } else {
            (1u32 << self.n) - 1
        }
    }

    /// Colex rank of a vertex mask (any size): `Σ C(c_i, i)` over the
    /// 0-based members `c_1 < c_2 < ...`.
    pub fn rank(&self, mask: u32) -> usize {
        let mut rank = 0usize;
        let mut i = 1;
        let mut m = mask;
        while m != 0 {
            let c = m.trailing_zeros() as usize;
            if i <= c {
                rank += self.binom[c][i] as usize;
            }
            m &= m - 1;
            i += 1;
        }
        rank
    }

    pub fn edges_of(&self, set: EdgeSet) -> Vec<u32> {
        bits(set).map(|i| self.masks[i]).collect()
    }

    pub fn to_hypergraph(&self, set: EdgeSet) -> Hypergraph {
        let edges = bits(set).map(|i| mask_vertices(self.masks[i])).collect();
        Hypergraph::from_sorted_edges(self.n, self.r, edges)
    }

    pub fn set_of(&self, h: &Hypergraph) -> EdgeSet {
        h.edges()
            .iter()
            .map(|e| self.rank(e.iter().fold(0u32, |m, &v| m | 1 << (v - 1))))
            .fold(0, |s, i| s | 1u128 << i)
    }
}

pub(crate) fn bits(mut set: EdgeSet) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if set == 0 {
            return None;
        }
        let i = set.trailing_zeros() as usize;
        set &= set - 1;
        Some(i)
    })
}

pub(crate) fn mask_vertices(mask: u32) -> Vec<Vertex> {
    (0..32).filter(|b| mask >> b & 1 == 1).map(|b| b as usize + 1).collect()
}

/// Every vertex covered and the incidence graph connected; one vertex and
/// no edges counts as connected.
pub(crate) fn is_connected(edges: &[u32], full: u32) -> bool {
    if full.count_ones() == 1 {
        return true;
    }
    let Some(&first) = edges.first() else {
        return false;
    };
    let mut comp = first;
    loop {
        let grown = edges.iter().filter(|&&e| e & comp != 0).fold(comp, |c, &e| c | e);
        if grown == comp {
            return comp == full;
        }
        comp = grown;
    }
}

pub(crate) fn min_degree(edges: &[u32], n: usize) -> usize {
    (0..n)
        .map(|v| edges.iter().filter(|&&e| e >> v & 1 == 1).count())
        .min()
        .unwrap_or(0)
}

/// Lex-max canonicity: true when no relabelling yields an edge string that
/// is larger, comparing colex positions from the first and taking 1 > 0.
pub(crate) fn is_canonical(u: &Universe, set: EdgeSet) -> bool {
    let edges = u.edges_of(set);
    let mut inc = [0u128; 32];
    for (i, &e) in edges.iter().enumerate() {
        let mut m = e;
        while m != 0 {
            inc[m.trailing_zeros() as usize] |= 1u128 << i;
            m &= m - 1;
        }
    }
    // target[d] = block of edges whose largest vertex is d (0-based).
    let mut target = [0u128; 32];
    for &e in &edges {
        let top = 31 - e.leading_zeros() as usize;
        target[top] |= 1u128 << u.rank(e & !(1 << top));
    }
    let twin = twin_reps(u, set, &edges, &inc);
    let mut search = CanonSearch {
        u,
        edges: &edges,
        inc: &inc,
        target: &target,
        twin: &twin,
        label: [u8::MAX; 32],
        labelled: [0; 128],
        block: [0; 32],
    };
    !search.finds_greater(0)
}

/// Representative of each vertex's twin class: vertices whose swap maps
/// the set to itself are interchangeable in the canonicity search.
fn twin_reps(u: &Universe, set: EdgeSet, edges: &[u32], inc: &[u128; 32]) -> [u8; 32] {
    let n = u.n;
    let mut rep = [0u8; 32];
    let mut reps: Vec<usize> = Vec::with_capacity(n);
    'outer: for v in 0..n {
        rep[v] = v as u8;
        for &w in &reps {
            if inc[w].count_ones() != inc[v].count_ones() {
                continue;
            }
            let swapped = bits(inc[w]).all(|i| {
                let e = edges[i];
                if e >> v & 1 == 1 {
                    return true;
                }
                let image = e & !(1 << w) | 1 << v;
                set >> u.rank(image) & 1 == 1
            });
            if swapped {
                rep[v] = w as u8;
                continue 'outer;
            }
        }
        reps.push(v);
    }
    rep
}

struct CanonSearch<'a> {
    u: &'a Universe,
    edges: &'a [u32],
    inc: &'a [u128; 32],
    target: &'a [u128; 32],
    twin: &'a [u8; 32],
    /// 0-based new label of each vertex, `u8::MAX` if unassigned.
    label: [u8; 32],
    /// Labelled members per edge.
    labelled: [u8; 128],
    /// Block each unlabelled vertex would get if labelled next: edges whose
    /// other members are all labelled, ranked by those labels.
    block: [u128; 32],
}

impl CanonSearch<'_> {
    /// Rank of `e`'s labelled members other than `skip`, in new labels.
    fn relabelled_rank(&self, e: u32, skip: usize) -> usize {
        let mut others = e & !(1 << skip);
        let mut mask = 0u32;
        while others != 0 {
            let x = others.trailing_zeros() as usize;
            others &= others - 1;
            mask |= 1 << self.label[x];
        }
        self.u.rank(mask)
    }

    /// Labels `v` with `depth`, updating the blocks of vertices left with
    /// one unlabelled member in some edge; `on == false` undoes it.
    fn assign(&mut self, v: usize, depth: usize, on: bool) {
        let r = self.u.r as u8;
        if on {
            self.label[v] = depth as u8;
        }
        for i in bits(self.inc[v]) {
            let e = self.edges[i];
            if on {
                self.labelled[i] += 1;
            }
            if self.labelled[i] == r - 1 {
                let mut rest = e;
                while rest != 0 {
                    let x = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    if self.label[x] == u8::MAX && x != v {
                        let rank = self.relabelled_rank(e, x);
                        self.block[x] ^= 1u128 << rank;
                    }
                }
            }
            if !on {
                self.labelled[i] -= 1;
            }
        }
        if !on {
            self.label[v] = u8::MAX;
        }
    }

    fn finds_greater(&mut self, depth: usize) -> bool {
        let n = self.u.n;
        if depth == n {
            return false;
        }
        let target = self.target[depth];
        let mut tried = 0u32;
        for v in 0..n {
            let t = self.twin[v];
            if self.label[v] != u8::MAX || tried >> t & 1 == 1 {
                continue;
            }
            tried |= 1 << t;
            let block = self.block[v];
            let diff = block ^ target;
            if diff != 0 {
                if block & diff & diff.wrapping_neg() != 0 {
                    return true;
                }
                continue;
            }
            self.assign(v, depth, true);
            let greater = self.finds_greater(depth + 1);
            self.assign(v, depth, false);
            if greater {
                return true;
            }
        }
        false
    }
}

/// Berge path search on vertex-mask edge lists.
///
/// Branches on vertex sequences only. The hyperedges joining consecutive
/// vertices are kept as a bipartite matching that is augmented one pair at a
/// time, so a sequence survives exactly when it has distinct representatives.
pub(crate) struct PathProbe {
    /// Bit set of local edge indices through each vertex.
    inc: Vec<u128>,
    edges: usize,
    n: usize,
    k: usize,
}

const FREE: u8 = u8::MAX;

struct Matching {
    /// Pair index owning each edge, [`FREE`] when unused.
    owner: [u8; 128],
    cand: Vec<u128>,
}

impl Matching {
    fn augment(&mut self, pair: usize, seen: &mut u128) -> bool {
        let mut options = self.cand[pair] & !*seen;
        while options != 0 {
            let e = options.trailing_zeros() as usize;
            options &= options - 1;
            *seen |= 1u128 << e;
            let holder = self.owner[e];
            if holder == FREE || self.augment(holder as usize, seen) {
                self.owner[e] = pair as u8;
                return true;
            }
        }
        false
    }
}

impl PathProbe {
    pub fn new(edges: &[u32], n: usize, k: usize) -> Self {
        let mut inc = vec![0u128; n];
        for (i, &e) in edges.iter().enumerate() {
            for (v, set) in inc.iter_mut().enumerate() {
                if e >> v & 1 == 1 {
                    *set |= 1u128 << i;
                }
            }
        }
        PathProbe {
            inc,
            edges: edges.len(),
            n,
            k,
        }
    }

    /// Is there a Berge path of length `k`?
    pub fn has_path(&self) -> bool {
        if self.k == 0 {
            return self.n > 0;
        }
        if self.k + 1 > self.n || self.k > self.edges {
            return false;
        }
        let mut m = Matching {
            owner: [FREE; 128],
            cand: Vec::with_capacity(self.k),
        };
        (0..self.n).any(|v| self.inc[v] != 0 && self.extend(v, 1 << v, &mut m))
    }

    /// Is there a Berge path of length `k` using the edge with local index
    /// `through`? The path is grown outwards from a pair inside that edge.
    pub fn has_path_using(&self, through: usize) -> bool {
        if self.k == 0 {
            return self.n > 0;
        }
        if self.k + 1 > self.n || self.k > self.edges {
            return false;
        }
        let members: Vec<usize> = (0..self.n).filter(|&v| self.inc[v] >> through & 1 == 1).collect();
        let mut m = Matching {
            owner: [FREE; 128],
            cand: Vec::with_capacity(self.k),
        };
        m.owner[through] = 0;
        m.cand.push(1u128 << through);
        for (i, &a) in members.iter().enumerate() {
            for &b in &members[i + 1..] {
                if self.extend_both(b, a, 1 << a | 1 << b, &mut m) {
                    return true;
                }
            }
        }
        false
    }

    fn extend(&self, end: usize, used: u32, m: &mut Matching) -> bool {
        self.grow(end, None, used, m)
    }

    fn extend_both(&self, end: usize, other: usize, used: u32, m: &mut Matching) -> bool {
        self.grow(end, Some(other), used, m)
    }

    /// Grows the path at `end`. While `other` is set, the opposite end may
    /// still be grown once this end is finished.
    fn grow(&self, end: usize, other: Option<usize>, used: u32, m: &mut Matching) -> bool {
        let len = m.cand.len();
        if len == self.k {
            return true;
        }
        if self.n - (used.count_ones() as usize) < self.k - len {
            return false;
        }
        for x in 0..self.n {
            let shared = self.inc[end] & self.inc[x];
            if used >> x & 1 == 1 || shared == 0 {
                continue;
            }
            let saved = m.owner;
            m.cand.push(shared);
            if m.augment(len, &mut 0) && self.grow(x, other, used | 1 << x, m) {
                return true;
            }
            m.cand.pop();
            m.owner = saved;
        }
        match other {
            Some(o) => self.grow(o, None, used, m),
            None => false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use itertools::Itertools;

    #[test]
    fn colex_order_and_rank() {
        let u = Universe::new(5, 3).unwrap();
        assert_eq!(u.len(), 10);
        assert_eq!(mask_vertices(u.masks[0]), vec![1, 2, 3]);
        assert_eq!(mask_vertices(u.masks[1]), vec![1, 2, 4]);
        assert_eq!(mask_vertices(u.masks[3]), vec![2, 3, 4]);
        assert_eq!(mask_vertices(u.masks[4]), vec![1, 2, 5]);
        for (i, &m) in u.masks.iter().enumerate() {
            assert_eq!(u.rank(m), i);
        }
        assert!(Universe::new(11, 3).is_none());
        assert!(Universe::new(10, 3).is_some());
    }

    #[test]
    fn canonical_count_matches_orbits() {
        // Exactly one lex-max representative per orbit: 2-edge 3-graphs on 5
        // vertices fall into 2 orbits by intersection size 1 or 2 (disjoint
        // impossible), so exactly 2 canonical sets.
        let u = Universe::new(5, 3).unwrap();
        let count = (0..10)
            .combinations(2)
            .filter(|c| is_canonical(&u, c.iter().fold(0u128, |s, &i| s | 1 << i)))
            .count();
        assert_eq!(count, 2);
    }

    #[test]
    fn path_probe() {
        let u = Universe::new(5, 3).unwrap();
        let h = Hypergraph::new(5, 3, [[1, 2, 3], [3, 4, 5]]).unwrap();
        let edges = u.edges_of(u.set_of(&h));
        assert!(PathProbe::new(&edges, 5, 2).has_path());
        assert!(!PathProbe::new(&edges, 5, 3).has_path());
        assert!(PathProbe::new(&edges, 5, 2).has_path_using(0));
        assert!(!PathProbe::new(&edges, 5, 3).has_path_using(1));
        assert!(is_connected(&edges, u.full_vertex_mask()));
        assert_eq!(min_degree(&edges, 5), 1);
    }
}
