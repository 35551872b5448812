mod common;

use std::path::PathBuf;

use berge_core::oracle::{exconn_bruteforce, exconn_bruteforce_with, ExconnOptions, SearchReport};
use berge_core::Hypergraph;

/// `(n, r, k, value, extremal classes)`, computed by the labelled brute
/// force in `common` and frozen.
const EXCONN_TABLE: &[(usize, usize, usize, Option<u64>, usize)] = &[
    (4, 2, 1, None, 0),
    (4, 2, 2, None, 0),
    (4, 2, 3, Some(3), 1),
    (4, 2, 4, Some(6), 1),
    (5, 2, 2, None, 0),
    (5, 2, 3, Some(4), 1),
    (5, 2, 4, Some(5), 1),
    (5, 2, 5, Some(10), 1),
    (6, 2, 2, None, 0),
    (6, 2, 3, Some(5), 1),
    (6, 2, 4, Some(6), 1),
    (6, 2, 5, Some(9), 1),
    (6, 2, 6, Some(15), 1),
    (4, 3, 2, None, 0),
    (4, 3, 3, Some(2), 1),
    (4, 3, 4, Some(4), 1),
    (5, 3, 2, None, 0),
    (5, 3, 3, Some(2), 1),
    (5, 3, 4, Some(3), 3),
    (5, 3, 5, Some(10), 1),
    (6, 3, 3, None, 0),
    (6, 3, 4, Some(4), 1),
    (6, 3, 5, Some(5), 1),
    (6, 3, 6, Some(20), 1),
];

#[test]
fn exconn_matches_labelled_brute_force() {
    for &(n, r, k, value, classes) in EXCONN_TABLE {
        let report = exconn_bruteforce(n, r, k).unwrap();
        assert!(!report.budget_exhausted);
        assert_eq!(report.value, value, "(n={n}, r={r}, k={k})");
        assert_eq!(report.witnesses.len(), classes, "(n={n}, r={r}, k={k})");
        for h in report.witness_hypergraphs() {
            assert!(h.is_connected());
            assert_eq!(Some(h.edge_count() as u64), value);
            assert!(common::naive_longest_path(&h) < k);
        }
    }
}

#[test]
#[ignore = "recomputes the frozen table by brute force"]
fn frozen_table_reproduces() {
    for &(n, r, k, value, classes) in EXCONN_TABLE {
        let brute = common::brute_force_exconn(n, r, k);
        assert_eq!(brute.map(|(v, _)| v as u64), value, "(n={n}, r={r}, k={k})");
        assert_eq!(brute.map_or(0, |(_, c)| c), classes, "(n={n}, r={r}, k={k})");
    }
}

#[test]
fn exconn_5_3_4_fixture() {
    let report = exconn_bruteforce(5, 3, 4).unwrap();
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/exconn_n5_r3_k4.json");
    let text = serde_json::to_string_pretty(&report).unwrap() + "\n";
    match std::fs::read_to_string(&path) {
        Ok(stored) => {
            let stored: SearchReport = serde_json::from_str(&stored).unwrap();
            assert_eq!(stored, report);
        }
        Err(_) => std::fs::write(&path, text).unwrap(),
    }
}

#[test]
fn worker_count_and_split_do_not_change_reports() {
    let base = exconn_bruteforce(7, 3, 5).unwrap();
    for (threads, split_depth) in [(3, 3), (2, 1), (4, 5)] {
        let opts = ExconnOptions {
            threads,
            split_depth,
            ..ExconnOptions::default()
        };
        let other = exconn_bruteforce_with(7, 3, 5, &opts).unwrap();
        assert_eq!(other.value, base.value);
        assert_eq!(other.witnesses, base.witnesses);
    }
    let unseeded = ExconnOptions {
        seed_with_construction: false,
        ..ExconnOptions::default()
    };
    let other = exconn_bruteforce_with(7, 3, 5, &unseeded).unwrap();
    assert_eq!((other.value, other.witnesses), (base.value, base.witnesses));
}

#[test]
fn checkpoint_resume_completes_the_same_search() {
    let dir = tempfile::tempdir().unwrap();
    let checkpoint = dir.path().join("search.json");
    let full = exconn_bruteforce(8, 3, 6).unwrap();
    let partial = exconn_bruteforce_with(
        8,
        3,
        6,
        &ExconnOptions {
            budget: Some(50),
            checkpoint: Some(checkpoint.clone()),
            ..ExconnOptions::default()
        },
    )
    .unwrap();
    assert!(partial.budget_exhausted);
    assert!(checkpoint.exists());
    let resumed = exconn_bruteforce_with(
        8,
        3,
        6,
        &ExconnOptions {
            checkpoint: Some(checkpoint.clone()),
            ..ExconnOptions::default()
        },
    )
    .unwrap();
    assert!(!resumed.budget_exhausted);
    assert_eq!(resumed.value, full.value);
    assert_eq!(resumed.witnesses, full.witnesses);
}

#[test]
fn checkpoint_for_other_parameters_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let checkpoint = dir.path().join("search.json");
    let opts = ExconnOptions {
        checkpoint: Some(checkpoint),
        ..ExconnOptions::default()
    };
    exconn_bruteforce_with(6, 3, 4, &opts).unwrap();
    assert!(exconn_bruteforce_with(6, 3, 5, &opts).is_err());
}

#[test]
fn parse_round_trip_of_witnesses() {
    let report = exconn_bruteforce(6, 3, 5).unwrap();
    for h in report.witness_hypergraphs() {
        let text = berge_core::format::to_hg(&h);
        let back: Hypergraph = berge_core::format::parse_hg(&text).unwrap();
        assert_eq!(back, h);
    }
}
