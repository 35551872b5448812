//! Exact search for Berge paths and Berge cycles.
//!
//! Every search is exhaustive. Results are deterministic: among all optimal
//! witnesses the one with the lexicographically smallest vertex sequence is
//! returned, and for that sequence the smallest edge-id sequence. Paths
//! therefore always satisfy `first <= last`, and cycles start at their
//! smallest vertex.

mod engine;
mod witness;

use std::sync::atomic::AtomicUsize;

use rayon::prelude::*;

pub(crate) use engine::Shadow;
use engine::{all_sdrs, lexmin_sdr, Budget, Core, Found, Goal};
pub use witness::{verify_witness, verify_witness_json, BergeWitness, WitnessJson, WitnessKind};

use crate::hypercore::{Hypergraph, Vertex};

/// Node budget applied when none is given and the hypergraph has more than
/// 16 vertices.
pub const DEFAULT_LARGE_BUDGET: u64 = 200_000_000;

#[derive(Clone, Debug)]
pub struct SearchOptions {
    /// Maximum number of search nodes; `None` means unbounded for `n <= 16`
    /// and [`DEFAULT_LARGE_BUDGET`] beyond.
    pub budget: Option<u64>,
    /// Worker count for root-level parallelism.
    pub threads: usize,
    /// Shortest cycle that counts (at least 2).
    pub min_cycle_len: usize,
    /// Vertices that may not be defining vertices.
    pub excluded: Vec<Vertex>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            budget: None,
            threads: 1,
            min_cycle_len: 2,
            excluded: Vec::new(),
        }
    }
}

impl SearchOptions {
    pub fn unbounded() -> Self {
        SearchOptions {
            budget: Some(u64::MAX),
            ..Self::default()
        }
    }

    fn effective_budget(&self, h: &Hypergraph) -> Option<u64> {
        self.budget.or_else(|| (h.n() > 16).then_some(DEFAULT_LARGE_BUDGET))
    }
}

/// Result of a budgeted search. `Inconclusive` is never a wrong answer: it
/// only says the budget ran out first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome<T> {
    Complete(T),
    Inconclusive { nodes: u64 },
}

impl<T> Outcome<T> {
    pub fn complete(self) -> Option<T> {
        match self {
            Outcome::Complete(t) => Some(t),
            Outcome::Inconclusive { .. } => None,
        }
    }

    pub fn is_complete(&self) -> bool {
        matches!(self, Outcome::Complete(_))
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> Outcome<U> {
        match self {
            Outcome::Complete(t) => Outcome::Complete(f(t)),
            Outcome::Inconclusive { nodes } => Outcome::Inconclusive { nodes },
        }
    }

    fn unwrap_unbounded(self) -> T {
        match self {
            Outcome::Complete(t) => t,
            Outcome::Inconclusive { .. } => unreachable!("unbounded search cannot run out of budget"),
        }
    }
}

/// Longest path or cycle with its witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Longest {
    pub length: usize,
    pub witness: Option<BergeWitness>,
}

/// A Berge path of length exactly `k`, if there is one.
pub fn has_berge_path(h: &Hypergraph, k: usize) -> Option<BergeWitness> {
    find_berge_path(h, k, &SearchOptions::unbounded()).unwrap_unbounded()
}

pub fn find_berge_path(h: &Hypergraph, k: usize, opts: &SearchOptions) -> Outcome<Option<BergeWitness>> {
    if k == 0 {
        return Outcome::Complete(first_allowed(h, opts).map(|v| BergeWitness::path(vec![v], vec![])));
    }
    if k > h.edge_count() || k + 1 > h.n() {
        return Outcome::Complete(None);
    }
    let shadow = Shadow::new(h);
    let budget = Budget::new(opts.effective_budget(h));
    let mut core = Core::new(h, &shadow, &budget, &opts.excluded, true);
    for start in h.vertices() {
        let mut found = Found::default();
        core.paths_from(start, Goal::Exact(k), &mut found);
        if budget.exhausted() {
            return Outcome::Inconclusive { nodes: budget.used() };
        }
        if let Some(seq) = found.seq {
            return Outcome::Complete(Some(path_witness(h, &shadow, seq)));
        }
    }
    Outcome::Complete(None)
}

fn first_allowed(h: &Hypergraph, opts: &SearchOptions) -> Option<Vertex> {
    h.vertices().find(|v| !opts.excluded.contains(v))
}

/// Length of a longest Berge path with a witness (`None` for length 0).
pub fn longest_berge_path(h: &Hypergraph) -> Longest {
    longest_path_with(h, &SearchOptions::unbounded()).unwrap_unbounded()
}

pub fn longest_path_with(h: &Hypergraph, opts: &SearchOptions) -> Outcome<Longest> {
    if h.is_empty() {
        return Outcome::Complete(Longest {
            length: 0,
            witness: None,
        });
    }
    let shadow = Shadow::new(h);
    let budget = Budget::new(opts.effective_budget(h));
    let shared = AtomicUsize::new(0);
    let run = |start: Vertex| {
        let mut core = Core::new(h, &shadow, &budget, &opts.excluded, true);
        let mut found = Found::default();
        core.paths_from(start, Goal::Longest(&shared), &mut found);
        found
    };
    let per_start = run_roots(h, opts.threads, run);
    if budget.exhausted() {
        return Outcome::Inconclusive { nodes: budget.used() };
    }
    let best = pick_best(per_start);
    Outcome::Complete(match best {
        Some(f) if f.len > 0 => Longest {
            length: f.len,
            witness: Some(path_witness(h, &shadow, f.seq.expect("sequence"))),
        },
        _ => Longest {
            length: 0,
            witness: None,
        },
    })
}

/// Longest Berge cycle (length at least 2), if any.
pub fn longest_berge_cycle(h: &Hypergraph) -> Option<Longest> {
    longest_cycle_with(h, &SearchOptions::unbounded()).unwrap_unbounded()
}

pub fn longest_cycle_with(h: &Hypergraph, opts: &SearchOptions) -> Outcome<Option<Longest>> {
    let min_len = opts.min_cycle_len.max(2);
    if h.edge_count() < min_len {
        return Outcome::Complete(None);
    }
    let shadow = Shadow::new(h);
    let budget = Budget::new(opts.effective_budget(h));
    let shared = AtomicUsize::new(0);
    let run = |start: Vertex| {
        let mut core = Core::new(h, &shadow, &budget, &opts.excluded, true);
        let mut found = Found::default();
        core.cycles_from(start, min_len, Goal::Longest(&shared), &mut found);
        found
    };
    let per_start = run_roots(h, opts.threads, run);
    if budget.exhausted() {
        return Outcome::Inconclusive { nodes: budget.used() };
    }
    Outcome::Complete(pick_best(per_start).map(|f| {
        let seq = f.seq.expect("sequence");
        Longest {
            length: f.len,
            witness: Some(cycle_witness(h, &shadow, seq)),
        }
    }))
}

/// Every Berge cycle of length `t`, each listed once: rotations start at the
/// smallest vertex, reflections are removed, and every choice of defining
/// hyperedges is a separate cycle.
pub fn cycles_of_length(h: &Hypergraph, t: usize) -> Vec<BergeWitness> {
    if t < 2 || t > h.n() || t > h.edge_count() {
        return Vec::new();
    }
    let shadow = Shadow::new(h);
    let budget = Budget::new(None);
    let mut core = Core::new(h, &shadow, &budget, &[], false);
    let mut out = Vec::new();
    for start in h.vertices() {
        for seq in core.closed_sequences(start, t) {
            if t >= 3 && seq[1] > seq[t - 1] {
                continue;
            }
            let pairs: Vec<_> = (0..t).map(|i| (seq[i], seq[(i + 1) % t])).collect();
            let cands: Vec<_> = pairs.iter().map(|&(a, b)| shadow.common(a, b)).collect();
            for edges in all_sdrs(&cands, h.edge_count()) {
                if t == 2 && edges[0] > edges[1] {
                    continue;
                }
                out.push(BergeWitness::cycle(seq.clone(), edges));
            }
        }
    }
    out
}

fn run_roots<F>(h: &Hypergraph, threads: usize, run: F) -> Vec<Found>
where
    F: Fn(Vertex) -> Found + Sync,
{
    let starts: Vec<Vertex> = h.vertices().collect();
    if threads <= 1 {
        return starts.into_iter().map(run).collect();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(pool) => pool.install(|| starts.par_iter().map(|&s| run(s)).collect()),
        Err(_) => starts.into_iter().map(run).collect(),
    }
}

/// Longest over all roots; ties go to the earliest root, whose sequence is
/// lexicographically smaller.
fn pick_best(per_start: Vec<Found>) -> Option<Found> {
    per_start
        .into_iter()
        .filter(|f| f.seq.is_some())
        .fold(None, |best: Option<Found>, f| match &best {
            Some(b) if b.len >= f.len => best,
            _ => Some(f),
        })
}

fn path_witness(h: &Hypergraph, shadow: &Shadow, seq: Vec<Vertex>) -> BergeWitness {
    let pairs: Vec<_> = seq.windows(2).map(|w| (w[0], w[1])).collect();
    let edges = lexmin_sdr(shadow, h.edge_count(), &pairs).expect("search only keeps feasible sequences");
    BergeWitness::path(seq, edges)
}

fn cycle_witness(h: &Hypergraph, shadow: &Shadow, seq: Vec<Vertex>) -> BergeWitness {
    let t = seq.len();
    let pairs: Vec<_> = (0..t).map(|i| (seq[i], seq[(i + 1) % t])).collect();
    let edges = lexmin_sdr(shadow, h.edge_count(), &pairs).expect("search only keeps feasible sequences");
    BergeWitness::cycle(seq, edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hg(n: usize, edges: &[[usize; 3]]) -> Hypergraph {
        Hypergraph::new(n, 3, edges).unwrap()
    }

    #[test]
    fn single_edge() {
        let h = hg(3, &[[1, 2, 3]]);
        assert!(has_berge_path(&h, 1).is_some());
        assert!(has_berge_path(&h, 2).is_none());
        let l = longest_berge_path(&h);
        assert_eq!(l.length, 1);
        assert_eq!(l.witness.unwrap().vertices, vec![1, 2]);
        assert!(longest_berge_cycle(&h).is_none());
    }

    #[test]
    fn edgeless() {
        let h = Hypergraph::new(4, 3, Vec::<Vec<usize>>::new()).unwrap();
        assert_eq!(
            longest_berge_path(&h),
            Longest {
                length: 0,
                witness: None
            }
        );
    }

    #[test]
    fn two_edges_sharing_a_pair() {
        let h = hg(4, &[[1, 2, 3], [1, 2, 4]]);
        let p = longest_berge_path(&h);
        assert_eq!(p.length, 2);
        assert!(verify_witness(&h, p.witness.as_ref().unwrap()).unwrap());
        let c = longest_berge_cycle(&h).unwrap();
        assert_eq!(c.length, 2);
        let w = c.witness.unwrap();
        assert_eq!(w.vertices, vec![1, 2]);
        assert_eq!(w.edges, vec![0, 1]);
        let mut three = SearchOptions::unbounded();
        three.min_cycle_len = 3;
        assert_eq!(longest_cycle_with(&h, &three), Outcome::Complete(None));
    }

    #[test]
    fn complete_on_five_has_hamiltonian_cycle() {
        let all: Vec<[usize; 3]> = itertools::Itertools::combinations(1..=5usize, 3)
            .map(|c| [c[0], c[1], c[2]])
            .collect();
        let h = hg(5, &all);
        let c = longest_berge_cycle(&h).unwrap();
        assert_eq!(c.length, 5);
        assert!(verify_witness(&h, c.witness.as_ref().unwrap()).unwrap());
        assert_eq!(longest_berge_path(&h).length, 4);
    }

    #[test]
    fn witness_is_lexicographically_smallest() {
        let h = hg(5, &[[3, 4, 5], [1, 2, 3]]);
        let w = longest_berge_path(&h).witness.unwrap();
        assert_eq!(w.vertices, vec![1, 3, 4]);
        assert_eq!(w.edges, vec![0, 1]);
    }

    #[test]
    fn budget_yields_inconclusive() {
        let all: Vec<[usize; 3]> = itertools::Itertools::combinations(1..=9usize, 3)
            .map(|c| [c[0], c[1], c[2]])
            .collect();
        let h = hg(9, &all);
        let opts = SearchOptions {
            budget: Some(3),
            ..SearchOptions::default()
        };
        assert!(matches!(longest_cycle_with(&h, &opts), Outcome::Inconclusive { .. }));
    }

    #[test]
    fn excluded_vertices_are_avoided() {
        let h = hg(5, &[[1, 2, 3], [2, 3, 4], [3, 4, 5], [1, 4, 5]]);
        let opts = SearchOptions {
            excluded: vec![3],
            ..SearchOptions::unbounded()
        };
        let l = longest_path_with(&h, &opts).complete().unwrap();
        assert!(!l.witness.unwrap().vertices.contains(&3));
    }

    #[test]
    fn enumerated_cycles_are_distinct_and_valid() {
        let h = hg(4, &[[1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4]]);
        let cycles = cycles_of_length(&h, 4);
        assert!(!cycles.is_empty());
        for c in &cycles {
            assert!(verify_witness(&h, c).unwrap());
        }
        let mut keys: Vec<_> = cycles.iter().map(|c| (c.vertices.clone(), c.edges.clone())).collect();
        keys.sort();
        keys.dedup();
        assert_eq!(keys.len(), cycles.len());
    }
}
