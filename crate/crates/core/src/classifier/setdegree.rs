use serde::{Deserialize, Serialize};

use crate::bergesearch::Outcome;
use crate::binomial;
use crate::error::{Error, Result};
use crate::hypercore::{Hypergraph, Vertex, VertexSet};

/// `C(⌊(k-3)/2⌋, r-1)`: every set `X` with `|X| <= k/2` must meet at least
/// `|X|` times this many hyperedges.
pub fn set_degree_threshold(k: usize, r: usize) -> Result<u64> {
    if k < 3 {
        return Err(Error::invalid(format!("set degree condition needs k >= 3, got {k}")));
    }
    Ok(binomial((k - 3) / 2, r - 1))
}

/// A violating set of minimum size (lexicographically first among those),
/// or `None` when the condition holds.
pub fn check_set_degree(h: &Hypergraph, k: usize) -> Result<Option<VertexSet>> {
    Ok(check_set_degree_with(h, k, None)?
        .complete()
        .expect("unbounded check completes"))
}

pub fn check_set_degree_with(h: &Hypergraph, k: usize, budget: Option<u64>) -> Result<Outcome<Option<VertexSet>>> {
    let threshold = set_degree_threshold(k, h.r())?;
    let mut scan = Scan::new(h, threshold, budget);
    for size in 1..=(k / 2).min(h.n()) {
        scan.target = size;
        scan.mode = Mode::First;
        scan.dfs(1);
        if scan.out_of_budget {
            return Ok(Outcome::Inconclusive { nodes: scan.nodes });
        }
        if let Some((x, _)) = scan.best.take() {
            return Ok(Outcome::Complete(Some(x.into_iter().collect())));
        }
    }
    Ok(Outcome::Complete(None))
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    First,
    MaxDeficit,
}

/// Enumerates vertex sets of size `target` in lexicographic order, tracking
/// how many hyperedges they meet.
struct Scan<'a> {
    h: &'a Hypergraph,
    inc: Vec<Vec<usize>>,
    threshold: u64,
    hits: Vec<u32>,
    met: u64,
    chosen: Vec<Vertex>,
    target: usize,
    mode: Mode,
    best: Option<(Vec<Vertex>, u64)>,
    nodes: u64,
    budget: u64,
    out_of_budget: bool,
}

impl<'a> Scan<'a> {
    fn new(h: &'a Hypergraph, threshold: u64, budget: Option<u64>) -> Self {
        Scan {
            h,
            inc: h.incidence(),
            threshold,
            hits: vec![0; h.edge_count()],
            met: 0,
            chosen: Vec::new(),
            target: 0,
            mode: Mode::First,
            best: None,
            nodes: 0,
            budget: budget.unwrap_or(u64::MAX),
            out_of_budget: false,
        }
    }

    /// Returns true to stop the enumeration.
    fn dfs(&mut self, from: Vertex) -> bool {
        let bound = self.target as u64 * self.threshold;
        if self.met >= bound {
            // Supersets only meet more hyperedges.
            return false;
        }
        if self.chosen.len() == self.target {
            let deficit = bound - self.met;
            let better = self.best.as_ref().is_none_or(|(_, d)| deficit > *d);
            if better {
                self.best = Some((self.chosen.clone(), deficit));
            }
            return self.mode == Mode::First;
        }
        let left = self.target - self.chosen.len();
        for v in from..=self.h.n() + 1 - left {
            self.nodes += 1;
            if self.nodes > self.budget {
                self.out_of_budget = true;
                return true;
            }
            self.add(v);
            let stop = self.dfs(v + 1);
            self.undo(v);
            if stop {
                return true;
            }
        }
        false
    }

    fn add(&mut self, v: Vertex) {
        self.chosen.push(v);
        for &id in &self.inc[v - 1] {
            if self.hits[id] == 0 {
                self.met += 1;
            }
            self.hits[id] += 1;
        }
    }

    fn undo(&mut self, v: Vertex) {
        self.chosen.pop();
        for &id in &self.inc[v - 1] {
            self.hits[id] -= 1;
            if self.hits[id] == 0 {
                self.met -= 1;
            }
        }
    }
}

/// Which violating set the greedy process removes next.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RemovalOrder {
    /// Smallest violating set, ties broken lexicographically.
    #[default]
    MinSet,
    /// Largest `|S|·C - |E(S)|`, then smallest, then lexicographic.
    MaxDeficit,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RemovalStep {
    /// Removed vertices, in the labels of the input hypergraph.
    pub removed: VertexSet,
    /// `|E(S)|` at the time of removal.
    pub edges_removed: usize,
    pub potential_before: i64,
    pub potential_after: i64,
}

/// Fixed point of the greedy removal process.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Kernel {
    /// `None` when every vertex was removed.
    pub hypergraph: Option<Hypergraph>,
    /// Input label of each surviving vertex, indexed by `new - 1`.
    pub vertex_map: Vec<Vertex>,
    pub log: Vec<RemovalStep>,
}

/// Greedy kernelization with the default removal order and no budget.
pub fn kernelize(h: &Hypergraph, k: usize) -> Result<Kernel> {
    Ok(kernelize_with(h, k, RemovalOrder::MinSet, None)?
        .complete()
        .expect("unbounded kernelization completes"))
}

/// Repeatedly deletes a set `S` with `|S| <= k/2` and
/// `|E(S)| < |S|·C(⌊(k-3)/2⌋, r-1)`, together with `E(S)`. The potential
/// `|E| - |V|·C` is logged before and after every step.
pub fn kernelize_with(h: &Hypergraph, k: usize, order: RemovalOrder, budget: Option<u64>) -> Result<Outcome<Kernel>> {
    let threshold = set_degree_threshold(k, h.r())?;
    let potential = |g: &Hypergraph| g.edge_count() as i64 - (g.n() as u64 * threshold) as i64;
    let mut current = h.clone();
    let mut map: Vec<Vertex> = (1..=h.n()).collect();
    let mut log = Vec::new();
    let mut spent = 0u64;
    loop {
        let remaining = budget.map(|b| b.saturating_sub(spent));
        let (found, nodes) = match order {
            RemovalOrder::MinSet => match check_set_degree_with(&current, k, remaining)? {
                Outcome::Complete(x) => (x, 0),
                Outcome::Inconclusive { nodes } => return Ok(Outcome::Inconclusive { nodes: spent + nodes }),
            },
            RemovalOrder::MaxDeficit => match max_deficit_set(&current, k, threshold, remaining) {
                Outcome::Complete(found) => found,
                Outcome::Inconclusive { nodes } => return Ok(Outcome::Inconclusive { nodes: spent + nodes }),
            },
        };
        spent += nodes;
        let Some(s) = found else {
            return Ok(Outcome::Complete(Kernel {
                hypergraph: Some(current),
                vertex_map: map,
                log,
            }));
        };
        let before = potential(&current);
        let edges_removed = current.incident_edges(&s).len();
        let removed: VertexSet = s.iter().map(|v| map[v - 1]).collect();
        let (next, kept) = current.remove_vertices(&s);
        map = kept.iter().map(|&v| map[v - 1]).collect();
        let after = next.as_ref().map_or(0, potential);
        log.push(RemovalStep {
            removed,
            edges_removed,
            potential_before: before,
            potential_after: after,
        });
        match next {
            Some(g) => current = g,
            None => {
                return Ok(Outcome::Complete(Kernel {
                    hypergraph: None,
                    vertex_map: map,
                    log,
                }))
            }
        }
    }
}

fn max_deficit_set(h: &Hypergraph, k: usize, threshold: u64, budget: Option<u64>) -> Outcome<(Option<VertexSet>, u64)> {
    let mut scan = Scan::new(h, threshold, budget);
    scan.mode = Mode::MaxDeficit;
    let mut best: Option<(Vec<Vertex>, u64)> = None;
    for size in 1..=(k / 2).min(h.n()) {
        scan.target = size;
        scan.best = None;
        scan.dfs(1);
        if scan.out_of_budget {
            return Outcome::Inconclusive { nodes: scan.nodes };
        }
        if let Some((x, d)) = scan.best.take() {
            if best.as_ref().is_none_or(|(_, bd)| d > *bd) {
                best = Some((x, d));
            }
        }
    }
    Outcome::Complete((best.map(|(x, _)| x.into_iter().collect()), scan.nodes))
}

#[cfg(test)]
mod tests {
    use super::*;
    use itertools::Itertools;

    #[test]
    fn complete_hypergraph_satisfies() {
        let all: Vec<Vec<usize>> = (1..=7).combinations(3).collect();
        let h = Hypergraph::new(7, 3, &all).unwrap();
        assert_eq!(check_set_degree(&h, 7).unwrap(), None);
    }

    #[test]
    fn singleton_violation() {
        let all: Vec<Vec<usize>> = (1..=6).combinations(3).chain([vec![6, 7, 8]]).collect();
        let h = Hypergraph::new(8, 3, &all).unwrap();
        // k = 9: threshold C(3, 2) = 3.
        assert_eq!(set_degree_threshold(9, 3).unwrap(), 3);
        assert_eq!(check_set_degree(&h, 9).unwrap(), Some(VertexSet::from([7])));
    }

    #[test]
    fn k7_threshold() {
        assert_eq!(set_degree_threshold(7, 3).unwrap(), 1);
        let h = Hypergraph::new(5, 3, [[1, 2, 3]]).unwrap();
        assert_eq!(check_set_degree(&h, 7).unwrap(), Some(VertexSet::from([4])));
        assert!(check_set_degree(&h, 2).is_err());
    }

    #[test]
    fn kernel_removes_pendant() {
        let all: Vec<Vec<usize>> = (1..=6).combinations(3).chain([vec![6, 7, 8]]).collect();
        let h = Hypergraph::new(8, 3, &all).unwrap();
        let kernel = kernelize(&h, 9).unwrap();
        assert_eq!(kernel.log[0].removed, VertexSet::from([7]));
        assert_eq!(kernel.vertex_map, vec![1, 2, 3, 4, 5, 6]);
        let g = kernel.hypergraph.unwrap();
        assert_eq!(g.edge_count(), 20);
        assert_eq!(check_set_degree(&g, 9).unwrap(), None);
        for step in &kernel.log {
            assert!(step.potential_after > step.potential_before);
        }
        let other = kernelize_with(&h, 9, RemovalOrder::MaxDeficit, None)
            .unwrap()
            .complete()
            .unwrap();
        assert_eq!(other.hypergraph.unwrap().edge_count(), 20);
    }

    #[test]
    fn fixed_point_is_untouched() {
        let h = Hypergraph::new(4, 3, [[1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4]]).unwrap();
        let kernel = kernelize(&h, 5).unwrap();
        assert!(kernel.log.is_empty());
        assert_eq!(kernel.hypergraph.unwrap(), h);
    }
}
