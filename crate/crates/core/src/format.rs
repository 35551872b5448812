//! The `.hg` text format: a header line `n r m`, then `m` lines of `r`
//! increasing vertex ids, lines in lexicographic order.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::hypercore::{Hypergraph, Vertex};

pub fn to_hg(h: &Hypergraph) -> String {
    let mut out = format!("{} {} {}\n", h.n(), h.r(), h.edge_count());
    for e in h.edges() {
        let line = e.iter().map(Vertex::to_string).collect::<Vec<_>>().join(" ");
        let _ = writeln!(out, "{line}");
    }
    out
}

/// Parses `.hg` text. Blank lines and lines starting with `#` are skipped;
/// edges may appear in any order and are normalised on load.
pub fn parse_hg(text: &str) -> Result<Hypergraph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (line, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        message: "missing header line `n r m`".into(),
    })?;
    let nums = numbers(line, header)?;
    let [n, r, m] = nums[..] else {
        return Err(Error::Parse {
            line,
            message: format!("header needs 3 integers, found {}", nums.len()),
        });
    };
    let mut edges = Vec::with_capacity(m);
    for (line, text) in lines {
        let e = numbers(line, text)?;
        if e.len() != r {
            return Err(Error::Parse {
                line,
                message: format!("expected {r} vertices, found {}", e.len()),
            });
        }
        edges.push((line, e));
    }
    if edges.len() != m {
        return Err(Error::Parse {
            line: edges.last().map_or(line, |(l, _)| *l),
            message: format!("header announces {m} hyperedges, found {}", edges.len()),
        });
    }
    // Surface structural errors with the offending line number.
    for (line, e) in &edges {
        Hypergraph::new(n.max(1), r.max(2), [e]).map_err(|err| Error::Parse {
            line: *line,
            message: err.to_string(),
        })?;
    }
    Hypergraph::new(n, r, edges.iter().map(|(_, e)| e)).map_err(|err| Error::Parse {
        line,
        message: err.to_string(),
    })
}

fn numbers(line: usize, text: &str) -> Result<Vec<usize>> {
    text.split_whitespace()
        .map(|tok| {
            tok.parse::<usize>().map_err(|_| Error::Parse {
                line,
                message: format!("`{tok}` is not a non-negative integer"),
            })
        })
        .collect()
}
