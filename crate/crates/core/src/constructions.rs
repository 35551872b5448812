//! The extremal families and their closed-form counts.
//!
//! `H_{n,a,b_1..b_t}` has a core `A` of size `a`, disjoint blocks `B_i` of
//! sizes `b_i` and the remaining vertices `L`. Its hyperedges are every
//! `r`-set inside some `A ∪ B_i` (or inside `A` when `t = 0`) and every
//! `{c} ∪ A'` with `c ∈ L` and `A'` an `(r-1)`-subset of `A`.
//!
//! Vertex layout is fixed: `A = 1..=a`, then the blocks in order, then `L`.

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::binomial;
use crate::error::{Error, Result};
use crate::hypercore::{Hypergraph, Vertex, VertexSet};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ConstructionParams {
    pub n: usize,
    pub a: usize,
    pub bs: Vec<usize>,
    pub r: usize,
    /// Relaxes `a >= r - 1` to `a >= 0` and `n >= 2a + Σb` to `n >= a + Σb`.
    #[serde(default)]
    pub permissive: bool,
}

impl ConstructionParams {
    pub fn new(n: usize, a: usize, bs: impl Into<Vec<usize>>, r: usize) -> Self {
        ConstructionParams {
            n,
            a,
            bs: bs.into(),
            r,
            permissive: false,
        }
    }

    pub fn permissive(mut self) -> Self {
        self.permissive = true;
        self
    }

    pub fn t(&self) -> usize {
        self.bs.len()
    }

    pub fn block_total(&self) -> usize {
        self.bs.iter().sum()
    }

    pub fn validate(&self) -> Result<()> {
        let (n, a, r) = (self.n, self.a, self.r);
        if n == 0 || r < 2 {
            return Err(Error::NonPositiveParams { n, r });
        }
        if let Some(b) = self.bs.iter().find(|&&b| b < 2) {
            return Err(Error::invalid(format!("block sizes must be at least 2, got {b}")));
        }
        let sum = self.block_total();
        if self.permissive {
            if a + sum > n {
                return Err(Error::invalid(format!("a + Σb = {} exceeds n = {n}", a + sum)));
            }
            return Ok(());
        }
        if a + 1 < r {
            return Err(Error::invalid(format!(
                "need a >= r - 1 (a = {a}, r = {r}); use the permissive mode for smaller cores"
            )));
        }
        if 2 * a + sum > n {
            return Err(Error::invalid(format!(
                "need n >= 2a + Σb = {}, got n = {n}",
                2 * a + sum
            )));
        }
        Ok(())
    }

    pub fn partition(&self) -> Result<Partition> {
        self.validate()?;
        let core: VertexSet = (1..=self.a).collect();
        let mut next = self.a + 1;
        let mut blocks = Vec::with_capacity(self.t());
        for &b in &self.bs {
            blocks.push((next..next + b).collect());
            next += b;
        }
        let outer: VertexSet = (next..=self.n).collect();
        Ok(Partition { core, blocks, outer })
    }
}

/// Vertex partition of a construction: `A`, the blocks `B_i` and `L`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Partition {
    #[serde(rename = "A")]
    pub core: VertexSet,
    #[serde(rename = "B")]
    pub blocks: Vec<VertexSet>,
    #[serde(rename = "L")]
    pub outer: VertexSet,
}

/// Builds `H_{n,a,b_1..b_t}`.
pub fn build_extremal(p: &ConstructionParams) -> Result<Hypergraph> {
    let part = p.partition()?;
    let r = p.r;
    let core = part.core.as_slice();
    let mut edges: Vec<Vec<Vertex>> = core.iter().copied().combinations(r).collect();
    for block in &part.blocks {
        let inner: Vec<Vertex> = core.iter().chain(block.as_slice()).copied().collect();
        edges.extend(inner.into_iter().combinations(r).filter(|e| e.iter().any(|&v| v > p.a)));
    }
    for c in part.outer.iter() {
        for sub in core.iter().copied().combinations(r - 1) {
            let mut e = sub;
            e.push(c);
            edges.push(e);
        }
    }
    Ok(Hypergraph::from_sorted_edges(p.n, r, edges))
}

/// Closed-form hyperedge count
/// `(n - a - Σb)·C(a, r-1) + Σ C(a + b_i, r) - (t - 1)·C(a, r)`.
pub fn edge_count_formula(p: &ConstructionParams) -> Result<u64> {
    p.validate()?;
    let (n, a, r) = (p.n as i128, p.a, p.r);
    let outer = n - a as i128 - p.block_total() as i128;
    let blocks: i128 = p.bs.iter().map(|&b| binomial(a + b, r) as i128).sum();
    let value = outer * binomial(a, r - 1) as i128 + blocks - (p.t() as i128 - 1) * binomial(a, r) as i128;
    u64::try_from(value).map_err(|_| Error::invalid(format!("edge count {value} out of range")))
}

/// Length of the longest Berge path as given in closed form:
/// `2a - t + Σb` if `t <= a + 1`, else `a - 1` plus the `a + 1` largest `b_i`.
pub fn longest_path_formula(p: &ConstructionParams) -> Result<usize> {
    p.validate()?;
    let (a, t) = (p.a, p.t());
    if t <= a + 1 {
        return Ok(2 * a + p.block_total() - t);
    }
    let mut bs = p.bs.clone();
    bs.sort_unstable_by(|x, y| y.cmp(x));
    Ok(a + bs[..=a].iter().sum::<usize>() - 1)
}

/// `H_{n,a}` plus one extra hyperedge with at most `r - 2` vertices in `A`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlusVariant {
    pub base: ConstructionParams,
    pub extra: Vec<Vertex>,
}

impl PlusVariant {
    pub fn new(base: ConstructionParams, extra: impl Into<Vec<Vertex>>) -> Self {
        let mut extra = extra.into();
        extra.sort_unstable();
        PlusVariant { base, extra }
    }

    /// The variant whose extra edge uses the first `j` core vertices and the
    /// first `r - j` vertices of `L`.
    pub fn with_core_share(base: ConstructionParams, j: usize) -> Result<Self> {
        let outer_needed = base.r.saturating_sub(j);
        if j > base.a || j > base.r {
            return Err(Error::invalid(format!(
                "extra edge cannot take {j} core vertices (a = {}, r = {})",
                base.a, base.r
            )));
        }
        if base.a + outer_needed > base.n {
            return Err(Error::invalid(format!("L has fewer than {outer_needed} vertices")));
        }
        let extra: Vec<Vertex> = (1..=j).chain(base.a + 1..=base.a + outer_needed).collect();
        Ok(Self::new(base, extra))
    }

    /// Number of extra-edge vertices inside `A`.
    pub fn core_share(&self) -> usize {
        self.extra.iter().filter(|&&v| v <= self.base.a).count()
    }
}

pub fn build_extremal_plus(v: &PlusVariant) -> Result<Hypergraph> {
    if !v.base.bs.is_empty() {
        return Err(Error::invalid(
            "the plus variant is defined over H_{n,a} with no blocks",
        ));
    }
    let h = build_extremal(&v.base)?;
    if v.core_share() + 1 >= v.base.r {
        return Err(Error::ExtraEdgeAlreadyPresent(v.extra.clone()));
    }
    h.with_edge(&v.extra)
}

/// The graph `H_{n,k,a}`: `A` of size `a`, `B` of size `k - 2a`, `L` of size
/// `n - k + a`; all edges inside `A ∪ B` and all edges between `A` and `L`.
pub fn build_graph_construction(n: usize, k: usize, a: usize) -> Result<Hypergraph> {
    if a == 0 || 2 * a >= k {
        return Err(Error::invalid(format!("need 1 <= a < k/2, got a = {a}, k = {k}")));
    }
    if n < k {
        return Err(Error::invalid(format!("need n >= k, got n = {n}, k = {k}")));
    }
    let inner = k - a;
    let mut edges: Vec<Vec<Vertex>> = (1..=inner).combinations(2).collect();
    for c in inner + 1..=n {
        edges.extend((1..=a).map(|x| vec![x, c]));
    }
    Ok(Hypergraph::from_sorted_edges(n, 2, edges))
}

/// `a(n - k + a) + C(k - a, 2)`.
pub fn graph_construction_count(n: usize, k: usize, a: usize) -> Result<u64> {
    if a == 0 || 2 * a >= k || n < k {
        return Err(Error::invalid(format!(
            "need n >= k and 1 <= a < k/2, got n = {n}, k = {k}, a = {a}"
        )));
    }
    Ok((a * (n - k + a)) as u64 + binomial(k - a, 2))
}

/// Parameters of the conjectured connected extremal hypergraph for `BP_k`:
/// `H_{n,⌊(k-1)/2⌋}` for odd `k`, `H_{n,⌊(k-1)/2⌋,2}` for even `k`.
pub fn turan_params(n: usize, k: usize, r: usize) -> Result<ConstructionParams> {
    if k < 2 {
        return Err(Error::invalid(format!("need k >= 2, got {k}")));
    }
    let bs = if k.is_multiple_of(2) { vec![2] } else { vec![] };
    Ok(ConstructionParams::new(n, (k - 1) / 2, bs, r).permissive())
}

pub fn turan_value_formula(n: usize, k: usize, r: usize) -> Result<u64> {
    edge_count_formula(&turan_params(n, k, r)?)
}

/// Parameters behind the stability threshold: `H_{n,(k-3)/2,3}` for odd `k`,
/// `H_{n,⌊(k-3)/2⌋,4}` for even `k`.
pub fn stability_params(n: usize, k: usize, r: usize) -> Result<ConstructionParams> {
    if k < 3 {
        return Err(Error::invalid(format!("need k >= 3, got {k}")));
    }
    let bs = if k.is_multiple_of(2) { vec![4] } else { vec![3] };
    Ok(ConstructionParams::new(n, (k - 3) / 2, bs, r).permissive())
}

pub fn stability_threshold(n: usize, k: usize, r: usize) -> Result<u64> {
    edge_count_formula(&stability_params(n, k, r)?)
}

/// Notes on where `(n, k, r)` sits relative to the parameter ranges in which
/// the extremal and stability statements are proven. The thresholds `n_{k,r}`
/// and `q_ε` are not effective, so no desk-scale instance is ever certified
/// to be inside the proven range.
pub fn regime_annotations(n: usize, k: usize, r: usize) -> Vec<String> {
    let mut notes = Vec::new();
    if k >= 2 * r + 13 {
        notes.push(format!(
            "k = {k} meets k >= 2r + 13 = {}, but n = {n} cannot be checked against the non-effective n_(k,r)",
            2 * r + 13
        ));
    } else {
        notes.push(format!(
            "outside proven regime: extremal statement needs k >= 2r + 13 = {}, got k = {k}",
            2 * r + 13
        ));
    }
    if r < 3 {
        notes.push("outside proven regime: stability statements need r >= 3".to_string());
    } else {
        notes.push(format!(
            "outside proven regime: stability statements need k >= (2+eps)r + q_eps and n >= n_(k,r), neither effective (k = {k}, r = {r}, n = {n})"
        ));
    }
    notes
}
