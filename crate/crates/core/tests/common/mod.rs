#![allow(dead_code)]

use berge_core::Hypergraph;
use rand::seq::SliceRandom;
use rand::Rng;

/// Longest Berge path by trying every alternating sequence of distinct
/// vertices and distinct hyperedges.
pub fn naive_longest_path(h: &Hypergraph) -> usize {
    let mut best = 0;
    for v in 1..=h.n() {
        let mut used_v = vec![false; h.n() + 1];
        let mut used_e = vec![false; h.edge_count()];
        used_v[v] = true;
        grow_path(h, v, 0, &mut used_v, &mut used_e, &mut best);
    }
    best
}

fn grow_path(h: &Hypergraph, end: usize, len: usize, used_v: &mut [bool], used_e: &mut [bool], best: &mut usize) {
    *best = (*best).max(len);
    for (id, e) in h.edges().iter().enumerate() {
        if used_e[id] || !e.contains(&end) {
            continue;
        }
        used_e[id] = true;
        for &x in e {
            if !used_v[x] {
                used_v[x] = true;
                grow_path(h, x, len + 1, used_v, used_e, best);
                used_v[x] = false;
            }
        }
        used_e[id] = false;
    }
}

/// Longest Berge cycle of length at least `min_len` (and at least 2), by
/// the same exhaustive scan.
pub fn naive_longest_cycle(h: &Hypergraph, min_len: usize) -> Option<usize> {
    let mut best = None;
    for v in 1..=h.n() {
        let mut used_v = vec![false; h.n() + 1];
        let mut used_e = vec![false; h.edge_count()];
        used_v[v] = true;
        grow_cycle(h, v, v, 0, min_len.max(2), &mut used_v, &mut used_e, &mut best);
    }
    best
}

#[allow(clippy::too_many_arguments)]
fn grow_cycle(
    h: &Hypergraph,
    start: usize,
    end: usize,
    len: usize,
    min_len: usize,
    used_v: &mut [bool],
    used_e: &mut [bool],
    best: &mut Option<usize>,
) {
    for (id, e) in h.edges().iter().enumerate() {
        if used_e[id] || !e.contains(&end) {
            continue;
        }
        if len + 1 >= min_len && e.contains(&start) && *best < Some(len + 1) {
            *best = Some(len + 1);
        }
        used_e[id] = true;
        for &x in e {
            if !used_v[x] {
                used_v[x] = true;
                grow_cycle(h, start, x, len + 1, min_len, used_v, used_e, best);
                used_v[x] = false;
            }
        }
        used_e[id] = false;
    }
}

/// Uniformly random distinct `r`-subsets of `[n]`.
pub fn random_hypergraph(rng: &mut impl Rng, n: usize, r: usize, m: usize) -> Hypergraph {
    let mut edges: Vec<Vec<usize>> = Vec::new();
    let total = berge_core::binomial(n, r) as usize;
    let m = m.min(total);
    let vertices: Vec<usize> = (1..=n).collect();
    while edges.len() < m {
        let mut e: Vec<usize> = vertices.choose_multiple(rng, r).copied().collect();
        e.sort_unstable();
        if !edges.contains(&e) {
            edges.push(e);
        }
    }
    Hypergraph::new(n, r, edges).unwrap()
}

/// Random connected hypergraph: a chain of overlapping hyperedges through
/// a shuffled vertex order, plus `extra` random hyperedges.
pub fn random_connected(rng: &mut impl Rng, n: usize, r: usize, extra: usize) -> Hypergraph {
    let mut order: Vec<usize> = (1..=n).collect();
    order.shuffle(rng);
    let mut edges: Vec<Vec<usize>> = Vec::new();
    let mut covered = 1;
    while covered < n {
        let start = covered - 1;
        let mut e: Vec<usize> = order[start..(start + r).min(n)].to_vec();
        while e.len() < r {
            let v = order[rng.gen_range(0..start)];
            if !e.contains(&v) {
                e.push(v);
            }
        }
        e.sort_unstable();
        if !edges.contains(&e) {
            edges.push(e);
        }
        covered = (start + r).min(n);
    }
    let total = berge_core::binomial(n, r) as usize;
    let vertices: Vec<usize> = (1..=n).collect();
    let target = (edges.len() + extra).min(total);
    while edges.len() < target {
        let mut e: Vec<usize> = vertices.choose_multiple(rng, r).copied().collect();
        e.sort_unstable();
        if !edges.contains(&e) {
            edges.push(e);
        }
    }
    Hypergraph::new(n, r, edges).unwrap()
}

/// Connected Turán number by trying every labelled edge set: the maximum
/// size of a connected set with no Berge path of length `k`, and the number
/// of isomorphism classes attaining it. `None` when no such set exists.
pub fn brute_force_exconn(n: usize, r: usize, k: usize) -> Option<(usize, usize)> {
    use itertools::Itertools;
    let all: Vec<Vec<usize>> = (1..=n).combinations(r).collect();
    assert!(all.len() <= 20, "brute force limited to 2^20 sets");
    for m in (1..=all.len()).rev() {
        let mut classes = std::collections::HashSet::new();
        for pick in (0..all.len()).combinations(m) {
            let h = Hypergraph::new(n, r, pick.iter().map(|&i| all[i].clone())).unwrap();
            if h.is_connected() && !has_path_of(&h, k) {
                classes.insert(h.canonical_form());
            }
        }
        if !classes.is_empty() {
            return Some((m, classes.len()));
        }
    }
    None
}

/// Whether `h` has a Berge path of length at least `k`, stopping at the
/// first one found.
pub fn has_path_of(h: &Hypergraph, k: usize) -> bool {
    fn grow(h: &Hypergraph, end: usize, len: usize, k: usize, used_v: &mut [bool], used_e: &mut [bool]) -> bool {
        if len >= k {
            return true;
        }
        for (id, e) in h.edges().iter().enumerate() {
            if used_e[id] || !e.contains(&end) {
                continue;
            }
            used_e[id] = true;
            for &x in e {
                if !used_v[x] {
                    used_v[x] = true;
                    let found = grow(h, x, len + 1, k, used_v, used_e);
                    used_v[x] = false;
                    if found {
                        return true;
                    }
                }
            }
            used_e[id] = false;
        }
        false
    }
    (1..=h.n()).any(|v| {
        let mut used_v = vec![false; h.n() + 1];
        let mut used_e = vec![false; h.edge_count()];
        used_v[v] = true;
        grow(h, v, 0, k, &mut used_v, &mut used_e)
    })
}
