//! Exhaustive desk-scale enumeration: isomorph-free generation, exact
//! connected Turán numbers for Berge paths, and audits over all small
//! instances.
//!
//! Everything here is deterministic. Parallel runs cut the search tree at a
//! fixed depth into independent subtrees whose results are merged in a
//! fixed order, so reports do not depend on the worker count.

mod audit;
mod compact;
mod exconn;
mod orderly;

use serde::{Deserialize, Serialize};

pub use audit::{
    audit_lemma1, audit_lemma1_with, verify_stability, verify_stability_each, verify_stability_with, AuditReport,
    CensusCounts, CensusEntry, CensusOptions, CensusReport, Counterexample, Verdict,
};
pub use exconn::{exconn_bruteforce, exconn_bruteforce_with, ExconnOptions};

use compact::{EdgeSet, Universe, MAX_UNIVERSE};
use orderly::{Node, Walker};

use crate::binomial;
use crate::error::{Error, Result};
use crate::hypercore::{Hypergraph, Vertex};

pub const SCHEMA_VERSION: u32 = 1;

/// Largest `n` enumerated by default: 8 for 3-uniform, otherwise the
/// largest `n` whose edge universe fits the compact representation.
pub fn desk_limit(r: usize) -> usize {
    if r == 3 {
        return 8;
    }
    (r..=32)
        .take_while(|&n| binomial(n, r) <= MAX_UNIVERSE as u64)
        .last()
        .unwrap_or(r)
}

fn check_universe(n: usize, r: usize, max_n: Option<usize>) -> Result<Universe> {
    if n == 0 || r < 2 {
        return Err(Error::NonPositiveParams { n, r });
    }
    if let Some(limit) = max_n {
        if n > limit {
            return Err(Error::LimitExceeded(format!(
                "n = {n} exceeds the desk limit {limit} for r = {r}"
            )));
        }
    }
    Universe::new(n, r).ok_or_else(|| {
        Error::LimitExceeded(format!(
            "C({n}, {r}) = {} possible hyperedges exceeds {MAX_UNIVERSE}",
            binomial(n, r)
        ))
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Explored {
    /// Search-tree nodes visited.
    pub nodes: u64,
    /// Independent subtrees after the sequential top phase.
    pub subtrees: usize,
    pub subtrees_done: usize,
}

/// Result of [`exconn_bruteforce`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchReport {
    pub schema_version: u32,
    pub n: usize,
    pub r: usize,
    pub k: usize,
    /// `None` when no connected `BP_k`-free hypergraph was found.
    pub value: Option<u64>,
    /// One representative per isomorphism class, each an edge list.
    pub witnesses: Vec<Vec<Vec<Vertex>>>,
    pub explored: Explored,
    pub budget_exhausted: bool,
    pub annotations: Vec<String>,
}

impl SearchReport {
    pub const CSV_HEADER: &'static str = "n,r,k,value,witness_count,explored,exhaustive";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            self.n,
            self.r,
            self.k,
            self.value.map_or(String::new(), |v| v.to_string()),
            self.witnesses.len(),
            self.explored.nodes,
            !self.budget_exhausted
        )
    }

    pub fn witness_hypergraphs(&self) -> Vec<Hypergraph> {
        self.witnesses
            .iter()
            .map(|edges| Hypergraph::new(self.n, self.r, edges).expect("witnesses are valid"))
            .collect()
    }
}

struct Collect<'p> {
    predicate: &'p dyn Fn(&Hypergraph) -> bool,
    out: Vec<Hypergraph>,
}

impl Walker for Collect<'_> {
    fn allow(&self, u: &Universe, child: EdgeSet, _edge: usize) -> bool {
        (self.predicate)(&u.to_hypergraph(child))
    }

    fn visit(&mut self, u: &Universe, node: &Node) -> bool {
        self.out.push(u.to_hypergraph(node.set));
        true
    }
}

/// Every edge set on `n` vertices satisfying a hereditary `predicate`, one
/// per isomorphism class when `up_to_iso`. The empty hypergraph is included
/// when it satisfies the predicate. `n` is capped by [`desk_limit`].
pub fn enumerate_hypergraphs(
    n: usize,
    r: usize,
    predicate: &dyn Fn(&Hypergraph) -> bool,
    up_to_iso: bool,
) -> Result<Vec<Hypergraph>> {
    enumerate_hypergraphs_with(n, r, predicate, up_to_iso, desk_limit(r))
}

pub fn enumerate_hypergraphs_with(
    n: usize,
    r: usize,
    predicate: &dyn Fn(&Hypergraph) -> bool,
    up_to_iso: bool,
    max_n: usize,
) -> Result<Vec<Hypergraph>> {
    let u = check_universe(n, r, Some(max_n))?;
    let mut w = Collect {
        predicate,
        out: Vec::new(),
    };
    if !predicate(&u.to_hypergraph(0)) {
        return Ok(Vec::new());
    }
    let start = orderly::root(&u, &w);
    orderly::walk(&u, &start, &mut w, up_to_iso, None, &mut Vec::new());
    Ok(w.out)
}
