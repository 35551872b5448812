use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use berge_core::constructions::{build_extremal, ConstructionParams};
use serde_json::Value;
use tempfile::TempDir;

fn btl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_btl"))
        .args(args)
        .env_remove("BTL_BUDGET_NODES")
        .output()
        .expect("btl runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}\nstderr: {}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        )
    })
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn construct(dir: &TempDir, name: &str, args: &[&str]) -> PathBuf {
    let path = dir.path().join(name);
    let mut all = vec!["construct", "--format", "hg", "-o", path_str(&path)];
    all.extend_from_slice(args);
    let out = btl(&all);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    path
}

#[test]
fn construct_writes_hg_and_partition_header() {
    let dir = TempDir::new().unwrap();
    let hg = construct(&dir, "h.hg", &["--n", "10", "--a", "3", "--b", "3", "--r", "3"]);
    let text = std::fs::read_to_string(&hg).unwrap();
    assert!(text.starts_with("10 3 32\n"));
    assert_eq!(text.lines().count(), 33);
    let header: Value = serde_json::from_str(&std::fs::read_to_string(hg.with_extension("json")).unwrap()).unwrap();
    assert_eq!(header["schema_version"], 1);
    assert_eq!(header["edge_count"], 32);
    assert_eq!(header["partition"]["A"], serde_json::json!([1, 2, 3]));
    assert_eq!(header["partition"]["B"], serde_json::json!([[4, 5, 6]]));
    assert_eq!(header["partition"]["L"], serde_json::json!([7, 8, 9, 10]));
}

#[test]
fn construct_count_round_trip() {
    let dir = TempDir::new().unwrap();
    for r in [3usize, 4] {
        for a in r - 1..=5 {
            for bs in [vec![], vec![2], vec![3], vec![3, 2]] {
                let n = 2 * a + bs.iter().sum::<usize>() + 2;
                let mut args: Vec<String> = vec!["--n".into(), n.to_string(), "--a".into(), a.to_string()];
                for b in &bs {
                    args.extend(["--b".into(), b.to_string()]);
                }
                args.extend(["--r".into(), r.to_string()]);
                let refs: Vec<&str> = args.iter().map(String::as_str).collect();
                let hg = construct(&dir, "g.hg", &refs);
                let expected = build_extremal(&ConstructionParams::new(n, a, bs.clone(), r))
                    .unwrap()
                    .edge_count();
                let from_file = stdout_json(&btl(&["count", "--input", path_str(&hg)]));
                assert_eq!(from_file["edge_count"], expected, "{refs:?}");
                let mut direct = vec!["count"];
                direct.extend_from_slice(&refs);
                let from_params = stdout_json(&btl(&direct));
                assert_eq!(from_params["edge_count"], expected);
                assert_eq!(from_params["formula"], expected);
            }
        }
    }
}

#[test]
fn longest_path_of_construction_is_eight_and_verifies() {
    let dir = TempDir::new().unwrap();
    let hg = construct(&dir, "h.hg", &["--n", "10", "--a", "3", "--b", "3", "--r", "3"]);
    let report = dir.path().join("path.json");
    let out = btl(&["longest-path", "--input", path_str(&hg), "-o", path_str(&report)]);
    assert_eq!(code(&out), 0);
    let value: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(value["length"], 8);
    assert_eq!(value["witness"]["edges"].as_array().unwrap().len(), 8);
    let out = btl(&["verify", "--witness", path_str(&report), "--hypergraph", path_str(&hg)]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout_json(&out)["valid"], true);
}

#[test]
fn longest_cycle_and_check_free_witnesses_verify() {
    let dir = TempDir::new().unwrap();
    let hg = construct(&dir, "h.hg", &["--n", "7", "--a", "2", "--b", "2", "--r", "3"]);
    for (args, name) in [
        (vec!["longest-cycle", "--input", path_str(&hg)], "cycle.json"),
        (vec!["check-free", "--input", path_str(&hg), "--k", "3"], "free.json"),
    ] {
        let report = dir.path().join(name);
        let mut all = args.clone();
        all.extend(["-o", path_str(&report)]);
        assert_eq!(code(&btl(&all)), 0);
        let value: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
        assert!(!value["witness"].is_null(), "{name}: {value}");
        let out = btl(&["verify", "--witness", path_str(&report), "--hypergraph", path_str(&hg)]);
        assert_eq!(code(&out), 0, "{name}");
    }
}

#[test]
fn tampered_witness_is_rejected() {
    let dir = TempDir::new().unwrap();
    let hg = construct(&dir, "h.hg", &["--n", "10", "--a", "3", "--b", "3", "--r", "3"]);
    let out = btl(&["longest-path", "--input", path_str(&hg)]);
    let mut value = stdout_json(&out);
    // no hyperedge lies inside L
    value["witness"]["edges"][0] = serde_json::json!([7, 8, 9]);
    let tampered = dir.path().join("tampered.json");
    std::fs::write(&tampered, value.to_string()).unwrap();
    let out = btl(&[
        "verify",
        "--witness",
        path_str(&tampered),
        "--hypergraph",
        path_str(&hg),
    ]);
    assert_ne!(code(&out), 0);
    assert_eq!(stdout_json(&out)["valid"], false);
}

#[test]
fn certificate_for_wrong_hypergraph_is_rejected() {
    let dir = TempDir::new().unwrap();
    let core = construct(&dir, "core.hg", &["--n", "8", "--a", "3", "--r", "3"]);
    let blocked = construct(&dir, "blocked.hg", &["--n", "9", "--a", "3", "--b", "3", "--r", "3"]);
    let cert = dir.path().join("cert.json");
    let out = btl(&["embed", "--input", path_str(&core), "--a", "3", "-o", path_str(&cert)]);
    assert_eq!(code(&out), 0);
    let value: Value = serde_json::from_str(&std::fs::read_to_string(&cert).unwrap()).unwrap();
    assert_eq!(value["embeds"], true);
    assert_eq!(value["certificate_verified"], true);
    assert_eq!(
        code(&btl(&[
            "verify",
            "--witness",
            path_str(&cert),
            "--hypergraph",
            path_str(&core)
        ])),
        0
    );
    assert_ne!(
        code(&btl(&[
            "verify",
            "--witness",
            path_str(&cert),
            "--hypergraph",
            path_str(&blocked)
        ])),
        0
    );
}

#[test]
fn block_embedding_certificate_verifies() {
    let dir = TempDir::new().unwrap();
    let hg = construct(&dir, "h.hg", &["--n", "9", "--a", "3", "--b", "2", "--r", "3"]);
    let out = btl(&[
        "embed",
        "--input",
        path_str(&hg),
        "--a",
        "3",
        "--b",
        "2",
        "--class",
        "core-block",
    ]);
    let value = stdout_json(&out);
    assert_eq!(value["embeds"], true);
    let cert = dir.path().join("cert.json");
    std::fs::write(&cert, value.to_string()).unwrap();
    assert_eq!(
        code(&btl(&[
            "verify",
            "--witness",
            path_str(&cert),
            "--hypergraph",
            path_str(&hg)
        ])),
        0
    );
}

#[test]
fn turan_json_and_csv() {
    let out = btl(&["turan", "--n", "5", "--r", "3", "--k", "4"]);
    assert_eq!(code(&out), 0);
    let report = stdout_json(&out);
    assert_eq!(report["schema_version"], 1);
    assert_eq!(report["value"], 3);
    assert_eq!(report["witnesses"].as_array().unwrap().len(), 3);
    assert_eq!(report["budget_exhausted"], false);
    let out = btl(&["turan", "--n", "5", "--r", "3", "--k", "4", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,r,k,value,witness_count,explored,exhaustive");
    assert!(lines[1].starts_with("5,3,4,3,3,"));
    assert!(lines[1].ends_with(",true"));
}

#[test]
fn kernelize_reports_rising_potential() {
    let dir = TempDir::new().unwrap();
    let hg = dir.path().join("h.hg");
    // a dense core with a sparse tail that the process strips
    std::fs::write(&hg, "7 3 6\n1 2 3\n1 2 4\n1 3 4\n2 3 4\n4 5 6\n5 6 7\n").unwrap();
    let out = btl(&["kernelize", "--input", path_str(&hg), "--k", "7"]);
    assert_eq!(code(&out), 0);
    let value = stdout_json(&out);
    for step in value["steps"].as_array().unwrap() {
        assert!(step["potential_after"].as_i64() > step["potential_before"].as_i64());
    }
}

#[test]
fn audit_and_census_reports() {
    let out = btl(&["audit-lemma1", "--n", "5", "--r", "3"]);
    assert_eq!(code(&out), 0);
    let audit = stdout_json(&out);
    assert_eq!(audit["counterexamples"].as_array().unwrap().len(), 0);
    let out = btl(&[
        "verify-stability",
        "--n",
        "5",
        "--r",
        "3",
        "--k",
        "5",
        "--format",
        "csv",
    ]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().nth(1).unwrap().starts_with("5,3,5,4,19,"));
}

#[test]
fn exit_codes_follow_the_contract() {
    let dir = TempDir::new().unwrap();
    let hg = construct(&dir, "h.hg", &["--n", "10", "--a", "3", "--b", "3", "--r", "3"]);
    let bad = dir.path().join("bad.hg");
    std::fs::write(&bad, "4 3 1\n1 2 9\n").unwrap();
    let garbage = dir.path().join("garbage.json");
    std::fs::write(&garbage, "{not json").unwrap();
    let unwritable = dir.path().join("missing-dir").join("out.json");
    let cases: Vec<(Vec<&str>, i32)> = vec![
        (vec!["construct", "--n", "3", "--a", "3", "--r", "3"], 1),
        (vec!["construct", "--n", "10", "--a", "1", "--r", "3"], 1),
        (vec!["turan", "--n", "5", "--r", "3", "--k", "0"], 1),
        (vec!["kernelize", "--input", path_str(&hg), "--k", "2"], 1),
        (vec!["verify-stability", "--n", "4", "--r", "3", "--k", "6"], 1),
        (
            vec![
                "construct",
                "--n",
                "10",
                "--a",
                "3",
                "--format",
                "hg",
                "--extra",
                "1,2,4",
            ],
            1,
        ),
        (vec!["turan", "--n", "8", "--r", "3", "--k", "7", "--budget", "10"], 2),
        (vec!["longest-path", "--input", path_str(&hg), "--budget", "1"], 2),
        (
            vec!["check-free", "--input", path_str(&hg), "--k", "9", "--budget", "1"],
            2,
        ),
        (vec!["longest-path", "--input", "/nonexistent/h.hg"], 3),
        (vec!["longest-path", "--input", path_str(&bad)], 3),
        (
            vec!["verify", "--witness", path_str(&garbage), "--hypergraph", path_str(&hg)],
            3,
        ),
        (
            vec!["construct", "--n", "8", "--a", "3", "-o", path_str(&unwritable)],
            3,
        ),
        (vec!["longest-path"], 3),
        (vec!["frobnicate"], 3),
        (vec!["turan", "--n", "5", "--k", "4", "--threads", "0"], 3),
        (vec!["turan", "--n", "5", "--r", "3", "--k", "4", "--format", "hg"], 1),
        (vec!["--version"], 0),
    ];
    for (args, expected) in cases {
        let out = btl(&args);
        assert_eq!(
            code(&out),
            expected,
            "{args:?}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
}

#[test]
fn budget_comes_from_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_btl"))
        .args(["turan", "--n", "8", "--r", "3", "--k", "7"])
        .env("BTL_BUDGET_NODES", "10")
        .output()
        .unwrap();
    assert_eq!(code(&out), 2);
    let report = stdout_json(&out);
    assert_eq!(report["budget_exhausted"], true);
    // the seed construction is still a valid lower bound
    assert!(report["value"].as_u64().unwrap() >= 16);
}

#[test]
fn plus_variant_has_one_extra_edge() {
    let out = btl(&["construct", "--n", "8", "--a", "3", "--r", "3", "--extra", "1,4,5"]);
    assert_eq!(code(&out), 0);
    let with = stdout_json(&out);
    let base = stdout_json(&btl(&["construct", "--n", "8", "--a", "3", "--r", "3"]));
    assert_eq!(
        with["edge_count"].as_u64().unwrap(),
        base["edge_count"].as_u64().unwrap() + 1
    );
    assert_eq!(with["extra"], serde_json::json!([1, 4, 5]));
}
