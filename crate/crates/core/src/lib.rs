//! Exact combinatorial engine for Berge paths in uniform hypergraphs.
//!
//! * [`hypercore`]: hypergraph representation, incidence queries,
//!   connectivity and canonical labelling.
//! * [`bergesearch`]: exact longest Berge path / cycle search with
//!   verifiable witnesses.
//! * [`constructions`]: the extremal families `H_{n,a,b_1..b_t}`, their plus
//!   variants, the graph family `H_{n,k,a}` and the closed-form counts.
//! * [`classifier`]: membership certificates for the stability classes, the
//!   set degree condition and greedy kernelization.
//! * [`oracle`]: isomorph-free enumeration, brute-force connected Turán
//!   numbers and exhaustive audits at desk scale.
//! * [`format`]: the `.hg` text format.

pub mod bergesearch;
pub mod classifier;
pub mod constructions;
pub mod error;
pub mod format;
pub mod hypercore;
pub mod oracle;

pub use error::{Error, Result};
pub use hypercore::{EdgeId, Hypergraph, Vertex, VertexSet};

/// Binomial coefficient; saturates instead of overflowing.
pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}
