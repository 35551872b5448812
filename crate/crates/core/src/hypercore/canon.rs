//! Canonical labelling.
//!
//! Vertices are first split into an ordered partition by iterated degree
//! refinement (an isomorphism invariant). The label is then the
//! lexicographically largest edge string, in colex edge order, over all
//! relabellings that respect that ordered partition. The search compares the
//! string block by block (block `d` holds the edges whose largest new label
//! is `d`) and only ever branches on one vertex per twin class.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::{EdgeId, Hypergraph, Vertex};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CanonicalLabel {
    pub n: usize,
    pub r: usize,
    /// Edges of the canonical relabelling, each sorted, in colex order.
    pub edges: Vec<Vec<Vertex>>,
}

impl CanonicalLabel {
    pub fn to_hypergraph(&self) -> Hypergraph {
        Hypergraph::from_sorted_edges(self.n, self.r, self.edges.clone())
    }
}

/// Smallest member of each vertex's twin class, indexed by `v - 1`. Two
/// vertices are twins when swapping them is an automorphism.
pub(crate) fn twin_classes(h: &Hypergraph) -> Vec<Vertex> {
    let inc = h.incidence();
    let deg: Vec<usize> = inc.iter().map(Vec::len).collect();
    let mut rep: Vec<Vertex> = (1..=h.n()).collect();
    let mut reps: Vec<Vertex> = Vec::new();
    for v in 1..=h.n() {
        if let Some(&r) = reps
            .iter()
            .find(|&&r| deg[r - 1] == deg[v - 1] && swap_is_automorphism(h, &inc, r, v))
        {
            rep[v - 1] = r;
        } else {
            reps.push(v);
        }
    }
    rep
}

fn swap_is_automorphism(h: &Hypergraph, inc: &[Vec<EdgeId>], u: Vertex, v: Vertex) -> bool {
    // Degrees are equal, so checking one direction suffices.
    inc[u - 1].iter().all(|&id| {
        let e = &h.edges()[id];
        if e.contains(&v) {
            return true;
        }
        let mut image: Vec<Vertex> = e.iter().map(|&x| if x == u { v } else { x }).collect();
        image.sort_unstable();
        h.edges().binary_search(&image).is_ok()
    })
}

/// Ordered partition from iterated refinement: colour per vertex (`v - 1`),
/// colours numbered in an isomorphism-invariant order.
fn refine(h: &Hypergraph, inc: &[Vec<EdgeId>]) -> Vec<usize> {
    let mut colors: Vec<usize> = inc.iter().map(Vec::len).collect();
    let mut classes = count_distinct(&colors);
    loop {
        let keys: Vec<(usize, Vec<Vec<usize>>)> = (1..=h.n())
            .map(|v| {
                let mut sig: Vec<Vec<usize>> = inc[v - 1]
                    .iter()
                    .map(|&id| {
                        let mut c: Vec<usize> = h.edges()[id]
                            .iter()
                            .filter(|&&u| u != v)
                            .map(|&u| colors[u - 1])
                            .collect();
                        c.sort_unstable();
                        c
                    })
                    .collect();
                sig.sort_unstable();
                (colors[v - 1], sig)
            })
            .collect();
        let mut sorted: Vec<&(usize, Vec<Vec<usize>>)> = keys.iter().collect();
        sorted.sort();
        sorted.dedup();
        let next: Vec<usize> = keys
            .iter()
            .map(|k| sorted.binary_search(&k).expect("key present"))
            .collect();
        let next_classes = sorted.len();
        colors = next;
        if next_classes == classes {
            return colors;
        }
        classes = next_classes;
    }
}

fn count_distinct(v: &[usize]) -> usize {
    let mut s = v.to_vec();
    s.sort_unstable();
    s.dedup();
    s.len()
}

/// Block entries are the `(r-1)`-subsets of smaller labels, stored in
/// descending order so that plain lexicographic order is colex order.
type Block = Vec<Vec<usize>>;

/// Compares two blocks as bit strings over colex positions, 1 > 0.
fn cmp_blocks(a: &Block, b: &Block) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.cmp(y) {
            Ordering::Equal => continue,
            // `a` has a set bit at an earlier position than `b`.
            Ordering::Less => return Ordering::Greater,
            Ordering::Greater => return Ordering::Less,
        }
    }
    a.len().cmp(&b.len())
}

struct Search<'a> {
    h: &'a Hypergraph,
    inc: Vec<Vec<EdgeId>>,
    cell_of_depth: Vec<usize>,
    cells: Vec<Vec<Vertex>>,
    twin: Vec<Vertex>,
    label: Vec<usize>,
    best: Vec<Block>,
}

impl Search<'_> {
    fn block(&self, v: Vertex, depth: usize) -> Block {
        let mut block: Block = self.inc[v - 1]
            .iter()
            .filter_map(|&id| {
                let mut labels = Vec::with_capacity(self.h.r() - 1);
                for &u in &self.h.edges()[id] {
                    if u == v {
                        continue;
                    }
                    let l = self.label[u - 1];
                    if l == 0 || l >= depth {
                        return None;
                    }
                    labels.push(l);
                }
                labels.sort_unstable_by(|a, b| b.cmp(a));
                Some(labels)
            })
            .collect();
        block.sort_unstable();
        block
    }

    fn dfs(&mut self, depth: usize) {
        if depth > self.h.n() {
            return;
        }
        let cell = self.cell_of_depth[depth - 1];
        let mut tried_classes: Vec<Vertex> = Vec::new();
        for i in 0..self.cells[cell].len() {
            let v = self.cells[cell][i];
            if self.label[v - 1] != 0 || tried_classes.contains(&self.twin[v - 1]) {
                continue;
            }
            tried_classes.push(self.twin[v - 1]);
            self.label[v - 1] = depth;
            let block = self.block(v, depth);
            let descend = if self.best.len() >= depth {
                match cmp_blocks(&block, &self.best[depth - 1]) {
                    Ordering::Less => false,
                    Ordering::Equal => true,
                    Ordering::Greater => {
                        self.best.truncate(depth - 1);
                        self.best.push(block);
                        true
                    }
                }
            } else {
                self.best.push(block);
                true
            };
            if descend {
                self.dfs(depth + 1);
            }
            self.label[v - 1] = 0;
        }
    }
}

pub(super) fn canonical_form(h: &Hypergraph) -> CanonicalLabel {
    let inc = h.incidence();
    let colors = refine(h, &inc);
    let mut order: Vec<Vertex> = (1..=h.n()).collect();
    order.sort_by_key(|&v| (colors[v - 1], v));
    let mut cells: Vec<Vec<Vertex>> = Vec::new();
    let mut cell_of_depth = Vec::with_capacity(h.n());
    for (i, &v) in order.iter().enumerate() {
        if i == 0 || colors[v - 1] != colors[order[i - 1] - 1] {
            cells.push(Vec::new());
        }
        cells.last_mut().expect("cell").push(v);
        cell_of_depth.push(cells.len() - 1);
    }
    let mut search = Search {
        h,
        inc,
        cell_of_depth,
        cells,
        twin: twin_classes(h),
        label: vec![0; h.n()],
        best: Vec::with_capacity(h.n()),
    };
    search.dfs(1);
    let mut edges = Vec::with_capacity(h.edge_count());
    for (d, block) in search.best.iter().enumerate() {
        for entry in block {
            let mut e: Vec<Vertex> = entry.iter().rev().copied().collect();
            e.push(d + 1);
            edges.push(e);
        }
    }
    CanonicalLabel {
        n: h.n(),
        r: h.r(),
        edges,
    }
}
