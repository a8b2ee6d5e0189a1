use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn seatplan(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_seatplan"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn report(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is one JSON document")
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn random_instance(dir: &TempDir, name: &str, extra: &[&str]) -> PathBuf {
    let out = dir.path().join(name);
    let mut args = vec!["generate", "--reduction", "random", "--out", path_str(&out)];
    args.extend_from_slice(extra);
    let o = seatplan(&args);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    out
}

#[test]
fn triangle_forward_arrangement_is_envy_free() {
    let dir = TempDir::new().unwrap();
    let src = write(&dir, "k3.json", r#"{"vertices":3,"edges":[[0,1],[1,2],[0,2]]}"#);
    let inst = dir.path().join("inst.json");
    let fwd = dir.path().join("fwd.json");
    for reduction in ["pit-b", "pit-w-binary", "pit-w-strict"] {
        let o = seatplan(&[
            "generate",
            "--reduction",
            reduction,
            "--source",
            path_str(&src),
            "--out",
            path_str(&inst),
            "--forward-out",
            path_str(&fwd),
        ]);
        assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
        let o = seatplan(&[
            "--json",
            "check",
            "--instance",
            path_str(&inst),
            "--arrangement",
            path_str(&fwd),
            "--property",
            "envy-free",
        ]);
        assert_eq!(code(&o), 0, "{reduction}");
        assert_eq!(report(&o)["result"]["holds"], Value::Bool(true));
    }
}

#[test]
fn pit_no_instance_has_no_forward_arrangement() {
    let dir = TempDir::new().unwrap();
    let src = write(
        &dir,
        "hex.json",
        r#"{"vertices":6,"edges":[[0,1],[1,2],[2,3],[3,4],[4,5],[0,5]]}"#,
    );
    let fwd = dir.path().join("fwd.json");
    let o = seatplan(&[
        "generate",
        "--reduction",
        "pit-w-binary",
        "--source",
        path_str(&src),
        "--out",
        path_str(&dir.path().join("i.json")),
        "--forward-out",
        path_str(&fwd),
    ]);
    assert_eq!(code(&o), 1);
    assert!(!fwd.exists());
}

#[test]
fn one_dimensional_four_cycle_has_no_envy_free_arrangement() {
    let dir = TempDir::new().unwrap();
    let inst = random_instance(
        &dir,
        "c4.json",
        &[
            "--n",
            "4",
            "--graph",
            "cycle",
            "--prefs",
            "one-dimensional,unique-positions",
            "--range",
            "0:20",
            "--utility",
            "S",
            "--seed",
            "3",
        ],
    );
    let o = seatplan(&["exact", "--instance", path_str(&inst), "--problem", "efa"]);
    assert_eq!(code(&o), 1);
    assert_eq!(report(&o)["result"]["status"], "none_exists");
}

#[test]
fn algorithm1_output_checks_stable() {
    let dir = TempDir::new().unwrap();
    let inst = random_instance(
        &dir,
        "b.json",
        &["--n", "9", "--graph", "star-mix", "--prefs", "symmetric", "--utility", "B", "--seed", "5"],
    );
    let arr = dir.path().join("a.json");
    let o = seatplan(&["solve", "--instance", path_str(&inst), "--method", "algorithm1", "--out", path_str(&arr)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let o = seatplan(&[
        "check",
        "--instance",
        path_str(&inst),
        "--arrangement",
        path_str(&arr),
        "--property",
        "exchange-stable",
    ]);
    assert_eq!(code(&o), 0);
}

#[test]
fn consecutive_output_checks_stable() {
    let dir = TempDir::new().unwrap();
    let inst = random_instance(
        &dir,
        "p.json",
        &["--n", "7", "--graph", "path-graph", "--prefs", "one-dimensional", "--utility", "W"],
    );
    let arr = dir.path().join("a.json");
    let o = seatplan(&["solve", "--instance", path_str(&inst), "--method", "consecutive", "--out", path_str(&arr)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let o = seatplan(&[
        "check",
        "--instance",
        path_str(&inst),
        "--arrangement",
        path_str(&arr),
        "--property",
        "exchange-stable",
    ]);
    assert_eq!(code(&o), 0);
}

#[test]
fn exact_witnesses_verify_under_check() {
    let dir = TempDir::new().unwrap();
    let inst = random_instance(&dir, "r.json", &["--n", "6", "--graph", "path", "--seed", "2"]);
    let arr = dir.path().join("w.json");
    let o = seatplan(&["exact", "--instance", path_str(&inst), "--problem", "mua", "--out", path_str(&arr)]);
    assert_eq!(code(&o), 0);
    let value = report(&o)["result"]["objective"].clone();
    let t = format!("{}/{}", value[0], value[1]);
    let o = seatplan(&[
        "exact",
        "--instance",
        path_str(&inst),
        "--problem",
        "threshold",
        "--threshold",
        &t,
        "--out",
        path_str(&arr),
    ]);
    assert_eq!(code(&o), 0);
    let o = seatplan(&[
        "check",
        "--instance",
        path_str(&inst),
        "--arrangement",
        path_str(&arr),
        "--property",
        "min-utility",
        "--threshold",
        &t,
    ]);
    assert_eq!(code(&o), 0);
    let o = seatplan(&["exact", "--instance", path_str(&inst), "--problem", "sta", "--out", path_str(&arr)]);
    if code(&o) == 0 {
        let o = seatplan(&[
            "check",
            "--instance",
            path_str(&inst),
            "--arrangement",
            path_str(&arr),
            "--property",
            "exchange-stable",
        ]);
        assert_eq!(code(&o), 0);
    }
}

#[test]
fn exhausted_budget_is_inconclusive() {
    let dir = TempDir::new().unwrap();
    let inst = random_instance(&dir, "r.json", &["--n", "8", "--graph", "arbitrary"]);
    let o = seatplan(&["exact", "--instance", path_str(&inst), "--problem", "mwa", "--max-nodes", "1"]);
    assert_eq!(code(&o), 2);
    assert_eq!(report(&o)["result"]["status"], "inconclusive");
}

#[test]
fn dynamics_emits_json_lines() {
    let dir = TempDir::new().unwrap();
    let inst = random_instance(
        &dir,
        "s.json",
        &["--n", "7", "--graph", "cycle", "--prefs", "symmetric", "--utility", "S", "--seed", "9"],
    );
    let o = seatplan(&["dynamics", "--instance", path_str(&inst), "--policy", "random", "--seed", "4"]);
    assert_eq!(code(&o), 0);
    let lines: Vec<Value> = String::from_utf8(o.stdout)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines[0]["event"], "start");
    let end = lines.last().unwrap();
    assert_eq!(end["event"], "end");
    assert_eq!(end["terminated"], true);
    assert_eq!(end["step_count"].as_u64().unwrap() as usize, lines.len() - 2);
}

#[test]
fn generation_is_deterministic_and_seed_defaults_to_zero() {
    let a = seatplan(&["generate", "--reduction", "random", "--n", "6", "--graph", "cycle-graph"]);
    let b = seatplan(&["generate", "--reduction", "random", "--n", "6", "--graph", "cycle-graph", "--seed", "0"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn canonical_files_round_trip() {
    let dir = TempDir::new().unwrap();
    let src = write(&dir, "bp.json", r#"{"sizes":[2,1,1],"capacity":2,"bins":2}"#);
    let o = seatplan(&["generate", "--reduction", "binpack-1d", "--source", path_str(&src)]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    let doc = seatplan::io::read_document(&text).unwrap();
    assert_eq!(seatplan::io::write_document(&doc), text);
    let inst = write(&dir, "i.json", &text);
    let o = seatplan(&["info", "--instance", path_str(&inst)]);
    assert_eq!(code(&o), 0);
    let r = report(&o);
    assert_eq!(r["result"]["family"], "binpack-1d");
    assert_eq!(r["result"]["preferences"]["one_dimensional"], true);
    assert_eq!(r["instance_digest"].as_str().unwrap().len(), 64);
}

#[test]
fn malformed_input_exits_65() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.json", "{\"version\":1}");
    let o = seatplan(&["info", "--instance", path_str(&bad)]);
    assert_eq!(code(&o), 65);
    assert!(!o.stderr.is_empty());
    let o = seatplan(&["info", "--instance", path_str(&dir.path().join("missing.json"))]);
    assert_eq!(code(&o), 65);
}

#[test]
fn usage_errors_exit_64() {
    let dir = TempDir::new().unwrap();
    let inst = random_instance(&dir, "r.json", &["--n", "4"]);
    let o = seatplan(&["exact", "--instance", path_str(&inst), "--problem", "threshold"]);
    assert_eq!(code(&o), 64);
    let o = seatplan(&["solve", "--instance", path_str(&inst)]);
    assert_eq!(code(&o), 64);
    let o = seatplan(&["generate", "--reduction", "random"]);
    assert_eq!(code(&o), 64);
}
