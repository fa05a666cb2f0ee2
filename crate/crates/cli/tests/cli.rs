//! End-to-end checks of the `kfactor` binary: subcommand behavior, exit
//! codes, JSON output and reproducibility.

use std::path::Path;
use std::process::{Command, Output};

fn kfactor(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kfactor"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).to_string()
}

fn write(path: &Path, text: &str) {
    std::fs::write(path, text).unwrap();
}

#[test]
fn gen_multipartite_emits_graph6() {
    let out = kfactor(&["gen", "--family", "multipartite", "--sizes", "1,1,1,1"]);
    assert!(out.status.success());
    // K_4 in graph6.
    assert_eq!(stdout_of(&out).trim(), "C~");
}

#[test]
fn gen_figure1_sidecar_names_the_apex() {
    let dir = tempfile::tempdir().unwrap();
    let g6 = dir.path().join("f1.g6");
    let sidecar = dir.path().join("f1.json");
    let out = kfactor(&[
        "gen",
        "--family",
        "figure1",
        "--n",
        "20",
        "--r",
        "3",
        "--x",
        "0.5",
        "--out",
        g6.to_str().unwrap(),
        "--sidecar",
        sidecar.to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let meta: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&sidecar).unwrap()).unwrap();
    assert_eq!(meta["designated"]["apex"], serde_json::json!([0]));
    assert_eq!(meta["provenance"]["family"], "figure1");

    // The emitted instance has no factor, exit code 1.
    let factor = kfactor(&["factor", "--input", g6.to_str().unwrap(), "--r", "3"]);
    assert_eq!(factor.status.code(), Some(1));
    assert!(stdout_of(&factor).contains("no-factor"));

    // And exactly one uncovered vertex.
    let cover = kfactor(&[
        "--json",
        "cover",
        "--input",
        g6.to_str().unwrap(),
        "--r",
        "3",
    ]);
    assert_eq!(cover.status.code(), Some(0));
    let parsed: serde_json::Value = serde_json::from_str(&stdout_of(&cover)).unwrap();
    assert_eq!(parsed["uncovered"], serde_json::json!([0]));
}

#[test]
fn gen_figure1_derives_x_from_rho() {
    // rho = 0 gives x = 1/2.
    let a = kfactor(&[
        "gen", "--family", "figure1", "--n", "20", "--r", "3", "--rho", "0",
    ]);
    let b = kfactor(&[
        "gen", "--family", "figure1", "--n", "20", "--r", "3", "--x", "0.5",
    ]);
    assert!(a.status.success() && b.status.success());
    assert_eq!(stdout_of(&a), stdout_of(&b));
}

#[test]
fn factor_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("k333.g6");
    let out = kfactor(&[
        "gen",
        "--family",
        "multipartite",
        "--sizes",
        "3,3,3",
        "--out",
        good.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert_eq!(
        kfactor(&["factor", "--input", good.to_str().unwrap(), "--r", "3"])
            .status
            .code(),
        Some(0)
    );

    let bad = dir.path().join("k243.g6");
    kfactor(&[
        "gen",
        "--family",
        "multipartite",
        "--sizes",
        "2,4,3",
        "--out",
        bad.to_str().unwrap(),
    ]);
    assert_eq!(
        kfactor(&["factor", "--input", bad.to_str().unwrap(), "--r", "3"])
            .status
            .code(),
        Some(1)
    );

    // A starved budget cannot decide: exit 3.
    let dense = dir.path().join("dense.txt");
    let mut edges = String::from("24\n");
    for u in 0..24u32 {
        for v in (u + 1)..24 {
            if (u + v) % 5 != 0 {
                edges.push_str(&format!("{u} {v}\n"));
            }
        }
    }
    write(&dense, &edges);
    let out = kfactor(&[
        "--budget-nodes",
        "1",
        "factor",
        "--input",
        dense.to_str().unwrap(),
        "--r",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn missing_file_is_io_error_and_garbage_is_usage_error() {
    let out = kfactor(&["factor", "--input", "/nonexistent/x.g6", "--r", "3"]);
    assert_eq!(out.status.code(), Some(4));

    let dir = tempfile::tempdir().unwrap();
    let junk = dir.path().join("junk.g6");
    write(&junk, "ü");
    let out = kfactor(&["factor", "--input", junk.to_str().unwrap(), "--r", "3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn alpha_threshold_verdict_codes() {
    let dir = tempfile::tempdir().unwrap();
    let c5 = dir.path().join("c5.txt");
    write(&c5, "0 1\n1 2\n2 3\n3 4\n4 0\n");
    // alpha_2(C_5) = 2.
    let yes = kfactor(&[
        "alpha",
        "--input",
        c5.to_str().unwrap(),
        "--ell",
        "2",
        "--threshold",
        "2",
    ]);
    assert_eq!(yes.status.code(), Some(0));
    let no = kfactor(&[
        "alpha",
        "--input",
        c5.to_str().unwrap(),
        "--ell",
        "2",
        "--threshold",
        "1",
    ]);
    assert_eq!(no.status.code(), Some(1));

    let exact = kfactor(&[
        "--json",
        "alpha",
        "--input",
        c5.to_str().unwrap(),
        "--ell",
        "2",
    ]);
    let parsed: serde_json::Value = serde_json::from_str(&stdout_of(&exact)).unwrap();
    assert_eq!(parsed["lower"], 2);
    assert_eq!(parsed["exact"], true);
}

#[test]
fn cliques_listing_and_cap() {
    let dir = tempfile::tempdir().unwrap();
    let k4 = dir.path().join("k4.g6");
    write(&k4, "C~\n");
    let out = kfactor(&["cliques", "--input", k4.to_str().unwrap(), "--r", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    let lines: Vec<&str> = text.trim().lines().map(str::trim).collect();
    assert_eq!(lines, vec!["0 1 2", "0 1 3", "0 2 3", "1 2 3"]);

    let capped = kfactor(&[
        "cliques",
        "--input",
        k4.to_str().unwrap(),
        "--r",
        "3",
        "--cap",
        "2",
    ]);
    assert_eq!(capped.status.code(), Some(3));
    assert_eq!(stdout_of(&capped).trim().lines().count(), 2);
}

#[test]
fn wpart_check_and_estimate() {
    let dir = tempfile::tempdir().unwrap();
    let w = dir.path().join("w.json");
    let mut triples = Vec::new();
    for i in 0..30usize {
        for j in (i + 1)..30 {
            triples.push(format!("[{i},{j},1.0]"));
        }
    }
    write(
        &w,
        &format!("{{\"k\":30,\"triples\":[{}]}}", triples.join(",")),
    );

    let pass = kfactor(&[
        "wpart",
        "check",
        "--input",
        w.to_str().unwrap(),
        "--c",
        "0.5",
        "--mu",
        "0.3",
    ]);
    assert_eq!(pass.status.code(), Some(0));

    let search = kfactor(&[
        "--json",
        "wpart",
        "search",
        "--input",
        w.to_str().unwrap(),
        "--c",
        "0.5",
        "--mu",
        "0.3",
        "--t",
        "2",
    ]);
    assert_eq!(search.status.code(), Some(0));
    let parsed: serde_json::Value = serde_json::from_str(&stdout_of(&search)).unwrap();
    assert_eq!(parsed["q"], 10);

    let est = kfactor(&[
        "wpart",
        "estimate",
        "--input",
        w.to_str().unwrap(),
        "--c",
        "0.5",
        "--mu",
        "0.3",
        "--t",
        "2",
        "--trials",
        "99",
    ]);
    assert_eq!(
        est.status.code(),
        Some(2),
        "too few trials is a precondition error"
    );

    let zero = dir.path().join("zero.json");
    write(&zero, "{\"k\":10,\"triples\":[]}");
    let fail = kfactor(&[
        "wpart",
        "check",
        "--input",
        zero.to_str().unwrap(),
        "--c",
        "0.5",
        "--mu",
        "0.3",
    ]);
    assert_eq!(fail.status.code(), Some(1));
}

#[test]
fn absorb_verify_verdicts() {
    let dir = tempfile::tempdir().unwrap();
    let k6 = dir.path().join("k6.g6");
    let gen = kfactor(&[
        "gen",
        "--family",
        "multipartite",
        "--sizes",
        "1,1,1,1,1,1",
        "--out",
        k6.to_str().unwrap(),
    ]);
    assert!(gen.status.success());

    let yes = kfactor(&[
        "absorb",
        "verify",
        "--input",
        k6.to_str().unwrap(),
        "--r",
        "3",
        "--t",
        "1",
        "--set",
        "0,1,2",
        "--absorber",
        "3,4,5",
    ]);
    assert_eq!(yes.status.code(), Some(0));

    // Wrong absorber size: verdict false, exit 1.
    let no = kfactor(&[
        "absorb",
        "verify",
        "--input",
        k6.to_str().unwrap(),
        "--r",
        "3",
        "--t",
        "1",
        "--set",
        "0,1,2",
        "--absorber",
        "3,4",
    ]);
    assert_eq!(no.status.code(), Some(1));
}

#[test]
fn absorb_census_and_transferral_roundtrip() {
    let dir = tempfile::tempdir().unwrap();
    let k9_text = dir.path().join("k9.txt");
    let mut edges = String::from("9\n");
    for u in 0..9u32 {
        for v in (u + 1)..9 {
            edges.push_str(&format!("{u} {v}\n"));
        }
    }
    write(&k9_text, &edges);

    let census_out = kfactor(&[
        "--json",
        "absorb",
        "census",
        "--input",
        k9_text.to_str().unwrap(),
        "--r",
        "3",
        "--beta",
        "1/9",
        "--parts",
        "0,1,2/3,4,5/6,7,8",
    ]);
    assert_eq!(census_out.status.code(), Some(0));
    let census_path = dir.path().join("census.json");
    write(&census_path, &stdout_of(&census_out));
    let parsed: serde_json::Value = serde_json::from_str(&stdout_of(&census_out)).unwrap();
    assert_eq!(parsed["entries"].as_array().unwrap().len(), 10);

    let rep = kfactor(&[
        "--json",
        "absorb",
        "transferral",
        "--census",
        census_path.to_str().unwrap(),
        "--i",
        "0",
        "--j",
        "1",
    ]);
    assert_eq!(rep.status.code(), Some(0));
    let parsed: serde_json::Value = serde_json::from_str(&stdout_of(&rep)).unwrap();
    assert_eq!(parsed["in_lattice"], true);

    let inline = kfactor(&[
        "absorb",
        "transferral",
        "--vectors",
        "3,0;0,3",
        "--i",
        "0",
        "--j",
        "1",
    ]);
    assert_eq!(
        inline.status.code(),
        Some(1),
        "no witness pair in disjoint census"
    );
}

#[test]
fn gen_is_seed_deterministic() {
    let args = [
        "--seed",
        "41",
        "gen",
        "--family",
        "blowup",
        "--n",
        "10",
        "--epsilon",
        "0.1",
    ];
    let dir = tempfile::tempdir().unwrap();
    let base = dir.path().join("k3.txt");
    write(&base, "0 1\n1 2\n2 0\n");
    let with_base: Vec<&str> = args
        .iter()
        .copied()
        .chain(["--base", base.to_str().unwrap()])
        .collect();
    let a = kfactor(&with_base);
    let b = kfactor(&with_base);
    assert!(a.status.success());
    assert_eq!(stdout_of(&a), stdout_of(&b));
}

#[test]
fn sweep_and_report_binary_flow() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("sweep.json");
    write(
        &cfg,
        r#"{
            "version": 1,
            "family": {"kind": "multipartite", "r": 3},
            "ns": [9, 12],
            "ell": 2,
            "seeds_per_cell": 2,
            "budget_nodes": 100000
        }"#,
    );
    let out_dir = dir.path().join("out");
    let run = kfactor(&[
        "sweep",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        out_dir.to_str().unwrap(),
    ]);
    assert!(
        run.status.success(),
        "{}",
        String::from_utf8_lossy(&run.stderr)
    );
    assert!(out_dir.join("records.csv").exists());
    assert!(out_dir.join("timings.csv").exists());

    let report = kfactor(&[
        "report",
        "--records",
        out_dir.join("records.json").to_str().unwrap(),
        "--csv",
    ]);
    assert!(report.status.success());
    let text = stdout_of(&report);
    assert!(text.starts_with("cell,"));
    assert!(text.contains("n=9"));

    // Unwritable output directory fails with the I/O code before computing.
    let blocker = dir.path().join("blocker");
    write(&blocker, "file, not dir");
    let bad = kfactor(&[
        "sweep",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        blocker.join("sub").to_str().unwrap(),
    ]);
    assert_eq!(bad.status.code(), Some(4));

    // Empty grid is refused as a precondition violation.
    let empty_cfg = dir.path().join("empty.json");
    write(
        &empty_cfg,
        r#"{"version":1,"family":{"kind":"multipartite","r":3},"ns":[],"ell":2,"seeds_per_cell":1,"budget_nodes":1000}"#,
    );
    let refused = kfactor(&[
        "sweep",
        "--config",
        empty_cfg.to_str().unwrap(),
        "--out",
        dir.path().join("o2").to_str().unwrap(),
    ]);
    assert_eq!(refused.status.code(), Some(2));
}

#[test]
fn sweep_apex_family_full_grid() {
    // Three n values x five seeds: every instance refuses a factor and has
    // exactly one uncovered vertex, so the factor rate aggregates to zero.
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("sweep.json");
    write(
        &cfg,
        r#"{
            "version": 1,
            "family": {"kind": "figure1", "r": 3, "x": 0.5, "core": "edgeless"},
            "ns": [20, 30, 40],
            "ell": 2,
            "seeds_per_cell": 5,
            "budget_nodes": 500000
        }"#,
    );
    let out_dir = dir.path().join("out");
    let run = kfactor(&[
        "--threads",
        "1",
        "sweep",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        out_dir.to_str().unwrap(),
    ]);
    assert!(
        run.status.success(),
        "{}",
        String::from_utf8_lossy(&run.stderr)
    );
    let records: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out_dir.join("records.json")).unwrap())
            .unwrap();
    let rows = records.as_array().unwrap();
    assert_eq!(rows.len(), 15);
    for row in rows {
        assert_eq!(row["outcome"], "no-factor");
        assert_eq!(row["cover_violations"], 1);
    }
    let report = kfactor(&[
        "report",
        "--records",
        out_dir.join("records.json").to_str().unwrap(),
        "--csv",
    ]);
    let text = stdout_of(&report);
    for line in text.lines().skip(1) {
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(fields[5], "0.000000", "factor_rate column: {line}");
    }
}

#[test]
fn cross_tiling_command() {
    let dir = tempfile::tempdir().unwrap();
    let k12 = dir.path().join("k12.txt");
    let mut edges = String::from("12\n");
    for u in 0..12u32 {
        for v in (u + 1)..12 {
            edges.push_str(&format!("{u} {v}\n"));
        }
    }
    write(&k12, &edges);
    let out = kfactor(&[
        "--json",
        "cross-tiling",
        "--input",
        k12.to_str().unwrap(),
        "--r",
        "4",
        "--a",
        "2",
        "--x-side",
        "0,1,2,3,4,5",
        "--y-side",
        "6,7,8,9,10,11",
    ]);
    assert!(out.status.success());
    let parsed: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(parsed["parts"].as_array().unwrap().len(), 3);
}
