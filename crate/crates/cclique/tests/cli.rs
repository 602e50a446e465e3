// SPDX-License-Identifier: Apache-2.0

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use cclique::bench::BenchRecord;
use cclique::generate::{gnp, planted_cclosed};
use cclique::io::{parse_edge_list, write_edge_list, Labels};
use cclique_core::closure_number;
use proptest::prelude::*;

fn cclique(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cclique"))
        .args(args)
        .env_remove("CCLIQUE_ORACLE_LIMIT")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

const C5: &str = "0 1\n1 2\n2 3\n3 4\n4 0\n";

#[test]
fn enumerate_c5() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "c5.txt", C5);
    for extra in [
        &[][..],
        &["--safe"],
        &["--algo", "baseline"],
        &["--algo", "tomita"],
        &["--algo", "outsens"],
        &["--algo", "oracle"],
        &["--auto-order", "--kernel", "outsens", "--direct"],
    ] {
        let mut args = vec!["enumerate", f.as_str()];
        args.extend_from_slice(extra);
        let o = cclique(&args);
        assert!(o.status.success(), "{extra:?}");
        assert_eq!(stdout(&o), "0 1\n0 4\n1 2\n2 3\n3 4\n", "{extra:?}");
    }
}

#[test]
fn enumerate_metrics_and_stats() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "mm.txt", "");
    let gen = cclique(&["generate", "moon-moser", "--k", "3", "-o", &f]);
    assert!(gen.status.success());
    let m = dir.path().join("m.json");
    let o = cclique(&[
        "enumerate",
        &f,
        "--auto-order",
        "--stats",
        "--metrics",
        m.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 27);
    assert!(String::from_utf8_lossy(&o.stderr).contains("alpha=27"));
    let metrics: serde_json::Value = serde_json::from_str(&fs::read_to_string(m).unwrap()).unwrap();
    assert_eq!(metrics["alpha"], 27);
    assert!(metrics["bound_checks"]
        .as_array()
        .unwrap()
        .iter()
        .all(|b| b["holds"] == true));
}

#[test]
fn closure_and_wedges() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "c5.txt", C5);
    let o = cclique(&["closure", &f]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["closure_c"], 2);
    assert_eq!(v["weak_c"], 2);

    let o = cclique(&["wedges", &f]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["wedges"], 5);
    let o = cclique(&["wedges", &f, "--dump"]);
    assert_eq!(stdout(&o).lines().count(), 5);
    assert!(stdout(&o).starts_with("0 1 2\n"));
}

#[test]
fn relabelled_input() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "names.txt", "a b\nb c\nc a\nc d\n");
    let o = cclique(&["enumerate", &f, "--relabel", "--safe"]);
    assert_eq!(stdout(&o), "a b c\nc d\n");
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.txt", "0 1\n1 x\n");
    let o = cclique(&["closure", &bad]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));

    assert_eq!(cclique(&["enumerate"]).status.code(), Some(2));
    assert_eq!(cclique(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        cclique(&["generate", "moon-moser", "--k", "9"])
            .status
            .code(),
        Some(2)
    );

    let big = write(dir.path(), "big.txt", "# n=30\n0 1\n");
    assert_eq!(cclique(&["verify", &big]).status.code(), Some(3));
    assert_eq!(
        cclique(&["enumerate", &big, "--algo", "oracle"])
            .status
            .code(),
        Some(3)
    );
    let c5 = write(dir.path(), "c5.txt", C5);
    let o = Command::new(env!("CARGO_BIN_EXE_cclique"))
        .args(["verify", &c5])
        .env("CCLIQUE_ORACLE_LIMIT", "4")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(cclique(&["verify", &big, "--cross"]).status.code(), Some(0));
}

#[test]
fn verify_reports_pass_and_failure() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "c5.txt", C5);
    let o = cclique(&["verify", &f]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["pass"], true);

    // Blocks {4,6}, {4,5}, {4,5,6} for vertex 0: the filter keeps {4,5}.
    let f = write(
        dir.path(),
        "interleaved.txt",
        "0 4\n0 5\n0 6\n1 4\n1 6\n2 4\n2 5\n3 4\n3 5\n3 6\n4 5\n4 6\n5 6\n",
    );
    let o = cclique(&["verify", &f]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let failing: Vec<&str> = v["pipelines"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|p| p["pass"] == false)
        .map(|p| p["label"].as_str().unwrap())
        .collect();
    assert!(!failing.is_empty());
    assert!(failing.iter().all(|l| l.contains("doublescan")));
}

#[test]
fn generate_is_deterministic_and_canonical() {
    let a = cclique(&["generate", "gnp", "--n", "50", "--p", "0.2", "--seed", "4"]);
    let b = cclique(&["generate", "gnp", "--n", "50", "--p", "0.2", "--seed", "4"]);
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    let g = parse_edge_list(&text, Labels::Numeric).unwrap().graph;
    assert_eq!(write_edge_list(&g), text);
    assert_eq!(text, write_edge_list(&gnp(50, 0.2, 4).unwrap()));

    let empty = cclique(&["generate", "gnp", "--n", "10", "--p", "0", "--seed", "1"]);
    assert_eq!(stdout(&empty), "# n=10 m=0\n");

    let p = cclique(&[
        "generate", "planted", "--n", "80", "--c", "5", "--seed", "2",
    ]);
    let g = parse_edge_list(&stdout(&p), Labels::Numeric).unwrap().graph;
    assert!(closure_number(&g) <= 5);
}

#[test]
fn bench_writes_json_lines() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "c5.txt", C5);
    let suite = write(
        dir.path(),
        "suite.json",
        r#"{"instances": [
            {"name": "mm2", "generator": {"kind": "moon_moser", "k": 2}},
            {"name": "c5", "file": "c5.txt"}
        ], "configs": [{}, {"mode": "baseline", "order": "identity"}]}"#,
    );
    let o = cclique(&["bench", &suite, "--threads", "2"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let records: Vec<BenchRecord> = stdout(&o)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    let alphas: Vec<u64> = records.iter().map(|r| r.alpha).collect();
    assert_eq!(alphas, vec![9, 9, 5, 5]);
    assert!(records.iter().all(|r| r.error.is_none() && !r.timed_out));

    let empty = write(dir.path(), "empty.json", "{}");
    let o = cclique(&["bench", &empty]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
}

#[test]
fn graph_round_trip_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let g = planted_cclosed(64, 4, 11, Some(0.1)).unwrap();
    let f = write(dir.path(), "g.txt", &write_edge_list(&g));
    let back = cclique(&[
        "generate", "planted", "--n", "64", "--c", "4", "--seed", "11", "--p", "0.1",
    ]);
    assert_eq!(fs::read_to_string(f).unwrap(), stdout(&back));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bench_record_json_round_trip(
        alpha in any::<u64>(),
        work in any::<u64>(),
        ratio in proptest::num::f64::NORMAL | proptest::num::f64::ZERO,
        timed_out in any::<bool>(),
        name in "[a-z0-9_]{0,12}",
    ) {
        let record = BenchRecord {
            instance: name,
            alpha,
            work,
            work_per_alpha: ratio,
            work_per_alpha_n: ratio / 3.0,
            timed_out,
            bounds_hold: Some(!timed_out),
            ..Default::default()
        };
        let text = serde_json::to_string(&record).unwrap();
        let back: BenchRecord = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, record);
    }

    #[test]
    fn edge_list_round_trip(n in 1usize..40, p in 0.0f64..1.0, seed in any::<u64>()) {
        let g = gnp(n, p, seed).unwrap();
        let text = write_edge_list(&g);
        let back = parse_edge_list(&text, Labels::Numeric).unwrap().graph;
        prop_assert_eq!(&back, &g);
        prop_assert_eq!(write_edge_list(&back), text);
    }
}
