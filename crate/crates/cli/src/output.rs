use std::fs;
use std::path::Path;

use berge_core::format::parse_hg;
use berge_core::Hypergraph;
use serde::Serialize;

use crate::CliError;

pub fn read_text(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))
}

pub fn read_hg(path: &Path) -> Result<Hypergraph, CliError> {
    parse_hg(&read_text(path)?).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

pub fn write(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| CliError::Io(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report serializes") + "\n"
}

pub fn csv(header: &str, rows: &[String]) -> String {
    let mut out = String::from(header);
    out.push('\n');
    for row in rows {
        out.push_str(row);
        out.push('\n');
    }
    out
}

/// Block list as one CSV cell, e.g. `3;2`.
pub fn blocks_cell(bs: &[usize]) -> String {
    bs.iter().map(usize::to_string).collect::<Vec<_>>().join(";")
}
