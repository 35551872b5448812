use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::compact::{self, EdgeSet, PathProbe, Universe};
use super::exconn::Limits;
use super::orderly::{self, local_index, Node, Walker};
use super::{check_universe, desk_limit, enumerate_hypergraphs_with, SCHEMA_VERSION};
use crate::bergesearch::{
    cycles_of_length, longest_berge_path, longest_cycle_with, BergeWitness, SearchOptions, WitnessJson,
};
use crate::classifier::{embeds_in_core, embeds_in_core_block, embeds_in_core_plus, EmbeddingCertificate};
use crate::constructions::{regime_annotations, stability_threshold};
use crate::error::{Error, Result};
use crate::hypercore::{EdgeId, Hypergraph, Vertex};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    /// `"i"`, `"ii"` or `"iii"`.
    pub item: String,
    pub edges: Vec<Vec<Vertex>>,
    pub cycle: WitnessJson,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditReport {
    pub schema_version: u32,
    pub n: usize,
    pub r: usize,
    pub min_cycle_len: usize,
    pub classes: u64,
    pub skipped_disconnected: u64,
    pub skipped_min_degree: u64,
    /// No cycle, or longest path and longest cycle of different lengths.
    pub skipped_length_mismatch: u64,
    pub audited: u64,
    pub cycles_checked: u64,
    pub counterexamples: Vec<Counterexample>,
}

/// Checks the three structural statements about a longest cycle `C` on
/// every connected class with minimum degree at least 2 whose longest path
/// and longest cycle have the same length `t`, for every cycle of length `t`:
///
/// * (i) every hyperedge outside `C` has at most one vertex outside `V(C)`;
/// * (ii) there are no distinct hyperedges `h1, h2` outside `C`, an index
///   `i` and outside vertices `v, u` with `v, v_i ∈ h1` and
///   `u, v_{i+1} ∈ h2`;
/// * (iii) if some outside vertex `v` lies in distinct hyperedges
///   `h1 ∋ v_{i-1}` and `h2 ∋ v_{i+1}` outside `C`, there is a cycle of
///   length `t` without `v_i` as a defining vertex.
pub fn audit_lemma1(n: usize, r: usize) -> Result<AuditReport> {
    audit_lemma1_with(n, r, 2)
}

pub fn audit_lemma1_with(n: usize, r: usize, min_cycle_len: usize) -> Result<AuditReport> {
    let classes = enumerate_hypergraphs_with(n, r, &|_| true, true, desk_limit(r))?;
    let opts = SearchOptions {
        min_cycle_len: min_cycle_len.max(2),
        ..SearchOptions::unbounded()
    };
    let mut report = AuditReport {
        schema_version: SCHEMA_VERSION,
        n,
        r,
        min_cycle_len: opts.min_cycle_len,
        classes: classes.len() as u64,
        skipped_disconnected: 0,
        skipped_min_degree: 0,
        skipped_length_mismatch: 0,
        audited: 0,
        cycles_checked: 0,
        counterexamples: Vec::new(),
    };
    for h in &classes {
        if !h.is_connected() {
            report.skipped_disconnected += 1;
            continue;
        }
        if h.min_degree() < 2 {
            report.skipped_min_degree += 1;
            continue;
        }
        let path = longest_berge_path(h).length;
        let cycle = longest_cycle_with(h, &opts)
            .complete()
            .expect("unbounded")
            .map(|c| c.length);
        if cycle != Some(path) {
            report.skipped_length_mismatch += 1;
            continue;
        }
        report.audited += 1;
        for c in cycles_of_length(h, path) {
            report.cycles_checked += 1;
            audit_cycle(h, &c, &opts, &mut report.counterexamples);
        }
    }
    Ok(report)
}

fn audit_cycle(h: &Hypergraph, c: &BergeWitness, opts: &SearchOptions, out: &mut Vec<Counterexample>) {
    let t = c.vertices.len();
    let on_cycle = |v: Vertex| c.vertices.contains(&v);
    let others: Vec<EdgeId> = (0..h.edge_count()).filter(|id| !c.edges.contains(id)).collect();
    let edges = h.edges();
    let outside = |id: EdgeId| -> Vec<Vertex> { edges[id].iter().copied().filter(|&v| !on_cycle(v)).collect() };
    let mut report = |item: &str, detail: String| {
        out.push(Counterexample {
            item: item.into(),
            edges: edges.to_vec(),
            cycle: c.to_json(h).expect("cycle edges exist"),
            detail,
        })
    };
    for &id in &others {
        if outside(id).len() > 1 {
            report(
                "i",
                format!("hyperedge {:?} has vertices {:?} off the cycle", edges[id], outside(id)),
            );
        }
    }
    for i in 0..t {
        let vi = c.vertices[i];
        let next = c.vertices[(i + 1) % t];
        let prev = c.vertices[(i + t - 1) % t];
        for &h1 in &others {
            for &h2 in &others {
                if h1 == h2 {
                    continue;
                }
                let (o1, o2) = (outside(h1), outside(h2));
                if edges[h1].contains(&vi) && edges[h2].contains(&next) && !o1.is_empty() && !o2.is_empty() {
                    report(
                        "ii",
                        format!(
                            "{:?} joins v_i = {vi} to {:?} and {:?} joins v_(i+1) = {next} to {:?}",
                            edges[h1], o1, edges[h2], o2
                        ),
                    );
                }
                let shared: Vec<Vertex> = o1.iter().copied().filter(|v| o2.contains(v)).collect();
                if !shared.is_empty() && edges[h1].contains(&prev) && edges[h2].contains(&next) {
                    let avoid = SearchOptions {
                        excluded: vec![vi],
                        ..opts.clone()
                    };
                    let best = longest_cycle_with(h, &avoid)
                        .complete()
                        .expect("unbounded")
                        .map(|l| l.length);
                    if best != Some(t) {
                        report(
                            "iii",
                            format!(
                                "outside vertex {:?} lies in {:?} (with v_(i-1) = {prev}) and {:?} (with v_(i+1) = {next}) but no {t}-cycle avoids v_i = {vi} (longest: {best:?})",
                                shared, edges[h1], edges[h2]
                            ),
                        );
                    }
                }
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct CensusOptions {
    /// Worker count; reports do not depend on it.
    pub threads: usize,
    pub split_depth: usize,
    pub max_n: usize,
    /// Entries kept in the report. Every entry is still classified, counted
    /// and folded into the digest.
    pub max_entries: usize,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions {
            threads: 1,
            split_depth: 3,
            max_n: desk_limit(3),
            max_entries: 2000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Conforming,
    NonConforming,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusEntry {
    pub edges: Vec<Vec<Vertex>>,
    pub edge_count: usize,
    pub verdict: Verdict,
    /// Which target class embedded the hypergraph.
    pub class: Option<String>,
    pub certificate: Option<EmbeddingCertificate>,
    pub certificate_verified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusCounts {
    pub candidates: usize,
    pub conforming: usize,
    pub non_conforming: usize,
    pub out_of_regime: usize,
    pub certificates: usize,
    pub certificates_verified: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusReport {
    pub schema_version: u32,
    pub n: usize,
    pub r: usize,
    pub k: usize,
    pub threshold: u64,
    pub core_size: usize,
    pub in_proven_regime: bool,
    pub counts: CensusCounts,
    pub explored_nodes: u64,
    pub annotations: Vec<String>,
    /// SHA-256 over every entry's JSON line, in report order.
    pub digest: String,
    /// The first [`CensusOptions::max_entries`] entries.
    pub entries: Vec<CensusEntry>,
    pub entries_truncated: bool,
}

/// Collects connected, minimum degree 2, `BP_k`-free sets above the
/// threshold.
struct CensusWalk<'a> {
    n: usize,
    k: usize,
    threshold: usize,
    hits: Vec<EdgeSet>,
    nodes: u64,
    limits: &'a Limits,
}

impl Walker for CensusWalk<'_> {
    fn allow(&self, u: &Universe, child: EdgeSet, edge: usize) -> bool {
        let edges = u.edges_of(child);
        !PathProbe::new(&edges, self.n, self.k).has_path_using(local_index(child, edge))
    }

    fn visit(&mut self, u: &Universe, node: &Node) -> bool {
        self.nodes += 1;
        let m = node.size();
        let reachable = node.addable.iter().fold(node.set, |s, &g| s | 1u128 << g);
        let widest = u.edges_of(reachable);
        if !compact::is_connected(&widest, u.full_vertex_mask()) || compact::min_degree(&widest, self.n) < 2 {
            return false;
        }
        if m > self.threshold {
            let edges = u.edges_of(node.set);
            if compact::is_connected(&edges, u.full_vertex_mask()) && compact::min_degree(&edges, self.n) >= 2 {
                self.hits.push(node.set);
            }
        }
        node.bound() > self.threshold
    }

    fn floor(&self) -> usize {
        self.threshold + 1
    }

    fn stopped(&self) -> bool {
        self.limits.stopped()
    }
}

/// Census of every connected, minimum degree 2, `BP_k`-free class above the
/// stability threshold, each run through the parity's classifier chain:
/// core embedding for odd `k`; core plus one block of size 2, or core plus
/// one exceptional hyperedge, for even `k`.
pub fn verify_stability(n: usize, r: usize, k: usize) -> Result<CensusReport> {
    verify_stability_with(n, r, k, &CensusOptions::default())
}

pub fn verify_stability_with(n: usize, r: usize, k: usize, opts: &CensusOptions) -> Result<CensusReport> {
    verify_stability_each(n, r, k, opts, &mut |_| {})
}

/// [`verify_stability_with`], also handing every entry to `sink` in report
/// order.
pub fn verify_stability_each(
    n: usize,
    r: usize,
    k: usize,
    opts: &CensusOptions,
    sink: &mut dyn FnMut(&CensusEntry),
) -> Result<CensusReport> {
    if k < 3 {
        return Err(Error::invalid(format!("need k >= 3, got {k}")));
    }
    let u = check_universe(n, r, Some(opts.max_n))?;
    let threshold = stability_threshold(n, k, r)?;
    let limits = Limits::new(None, None);
    let make = || CensusWalk {
        n,
        k,
        threshold: threshold as usize,
        hits: Vec::new(),
        nodes: 0,
        limits: &limits,
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.threads.max(1))
        .build()
        .map_err(|e| Error::invalid(format!("thread pool: {e}")))?;
    let mut top = make();
    let start = orderly::root(&u, &top);
    let mut frontier = Vec::new();
    orderly::walk(&u, &start, &mut top, true, Some(opts.split_depth), &mut frontier);
    let run = |node: &Node| {
        let mut w = make();
        orderly::walk(&u, node, &mut w, true, None, &mut Vec::new());
        (w.hits, w.nodes)
    };
    let parts: Vec<(Vec<EdgeSet>, u64)> = pool.install(|| frontier.par_iter().map(run).collect());
    let mut hits = std::mem::take(&mut top.hits);
    let mut nodes = top.nodes;
    for (h, c) in parts {
        hits.extend(h);
        nodes += c;
    }
    hits.sort_unstable_by_key(|&set| (set.count_ones(), set));

    let a = (k - 1) / 2;
    let mut counts = CensusCounts {
        candidates: hits.len(),
        conforming: 0,
        non_conforming: 0,
        out_of_regime: hits.len(),
        certificates: 0,
        certificates_verified: 0,
    };
    let mut digest = Sha256::new();
    let mut entries = Vec::new();
    for chunk in hits.chunks(4096) {
        let classified: Vec<CensusEntry> = pool.install(|| {
            chunk
                .par_iter()
                .map(|&set| classify(&u.to_hypergraph(set), k, a))
                .collect()
        });
        for entry in classified {
            match entry.verdict {
                Verdict::Conforming => counts.conforming += 1,
                Verdict::NonConforming => counts.non_conforming += 1,
            }
            if entry.certificate.is_some() {
                counts.certificates += 1;
                counts.certificates_verified += usize::from(entry.certificate_verified);
            }
            digest.update(serde_json::to_string(&entry).expect("entries serialize"));
            digest.update(b"\n");
            sink(&entry);
            if entries.len() < opts.max_entries {
                entries.push(entry);
            }
        }
    }
    let mut annotations = regime_annotations(n, k, r);
    annotations
        .push("every verdict is empirical: no desk-scale instance is known to lie inside the proven regime".into());
    if n <= k {
        annotations.push(format!(
            "n = {n} <= k = {k}: every hypergraph here is BP_k-free, so the census covers all connected classes above the threshold"
        ));
    }
    Ok(CensusReport {
        schema_version: SCHEMA_VERSION,
        n,
        r,
        k,
        threshold,
        core_size: a,
        in_proven_regime: false,
        counts,
        explored_nodes: nodes,
        annotations,
        digest: format!("{:x}", digest.finalize()),
        entries_truncated: entries.len() < hits.len(),
        entries,
    })
}

fn classify(h: &Hypergraph, k: usize, a: usize) -> CensusEntry {
    let found = if k % 2 == 1 {
        embeds_in_core(h, a).map(|c| ("core".to_string(), c))
    } else {
        embeds_in_core_block(h, a, &[2])
            .map(|c| ("core+block".to_string(), c))
            .or_else(|| embeds_in_core_plus(h, a).map(|c| ("core-plus".to_string(), c)))
    };
    let verified = found.as_ref().is_some_and(|(_, c)| c.verify(h));
    CensusEntry {
        edges: h.edges().to_vec(),
        edge_count: h.edge_count(),
        verdict: if found.is_some() {
            Verdict::Conforming
        } else {
            Verdict::NonConforming
        },
        class: found.as_ref().map(|(name, _)| name.clone()),
        certificate: found.map(|(_, c)| c),
        certificate_verified: verified,
    }
}
