//! The `fpc` binary: output formats and exit codes.

use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn fpc(args: &[&str]) -> (i32, String, String) {
    fpc_env(args, &[])
}

fn fpc_env(args: &[&str], env: &[(&str, &str)]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_fpc"))
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .args(args)
        .envs(env.iter().copied())
        .output()
        .expect("spawn fpc");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let (code, stdout, _) = fpc(&all);
    (code, serde_json::from_str(&stdout).unwrap_or_else(|e| panic!("{e}: {stdout}")))
}

#[test]
fn check_prints_the_type() {
    assert_eq!(fpc(&["check", "examples/two_unfolds.fpc"]), (0, "1\n".into(), String::new()));
    let (code, v) = json(&["check", "corpus/pairs/nat/left.fpc"]);
    assert_eq!((code, v["type"].as_str()), (0, Some("mu a. 1 + a")));
}

#[test]
fn run_reports_value_and_unfold_count() {
    assert_eq!(fpc(&["run", "examples/two_unfolds.fpc"]).1, "() : 1\nk = 2\n");
    let (code, v) = json(&["run", "examples/two_unfolds.fpc"]);
    assert_eq!(code, 0);
    assert_eq!((v["value"].as_str(), v["k"].as_u64()), (Some("()"), Some(2)));
    let (_, trace, _) = fpc(&["run", "examples/two_unfolds.fpc", "--trace"]);
    assert_eq!(trace.lines().filter(|l| l.contains("->1")).count(), 2, "{trace}");
    assert!(trace.ends_with("k = 2\n() : 1\n"), "{trace}");
}

#[test]
fn divergence_times_out() {
    let (code, out, _) = fpc(&["run", "examples/diverge.fpc", "--fuel", "1000"]);
    assert_eq!((code, out.as_str()), (3, "Timeout (fuel 1000)\n"));
    let (code, v) = json(&["denote", "examples/diverge.fpc", "--fuel", "50"]);
    assert_eq!((code, v["verdict"].as_str()), (3, Some("timeout")));
}

#[test]
fn denote_counts_steps() {
    assert_eq!(fpc(&["denote", "examples/two_unfolds.fpc"]).1, "() after 2 steps\n");
}

#[test]
fn adequacy_compares_both_counts() {
    let (code, out, _) = fpc(&["adequacy", "examples/two_unfolds.fpc", "--fuel", "100"]);
    assert_eq!((code, out.as_str()), (0, "operational k=2, denotational steps=2, MATCH\n"));
    let (code, v) = json(&["adequacy", "examples/two_unfolds.fpc", "--fuel", "100"]);
    assert_eq!(code, 0);
    assert_eq!(v["operational_k"], 2);
    assert_eq!(v["denotational_steps"], 2);
    assert_eq!(v["verdict"], "match");
    assert_eq!(fpc(&["adequacy", "examples/diverge.fpc", "--fuel", "100"]).0, 3);
}

#[test]
fn exec_needs_enough_fuel() {
    let (code, out, _) = fpc(&["exec", "examples/true_after_3.fpc", "--fuel", "2"]);
    assert_eq!((code, out.as_str()), (3, "More (not yet decided)\n"));
    let (code, out, _) = fpc(&["exec", "examples/true_after_3.fpc", "--fuel", "3"]);
    assert_eq!((code, out.as_str()), (0, "inl (true)\n"));
    let (code, v) = json(&["exec", "examples/true_after_3.fpc", "--fuel", "3"]);
    assert_eq!((code, v["side"].as_str()), (0, Some("left")));
}

#[test]
fn bisim_relates_pairs() {
    let args = ["bisim", "corpus/pairs/nat/left.fpc", "corpus/pairs/nat/right.fpc", "--depth", "10"];
    let (code, out, _) = fpc(&args);
    assert_eq!((code, out.as_str()), (0, "bisim at mu a. 1 + a: holds at depth 10\n"));
    let (code, v) = json(&args);
    assert_eq!((code, v["verdict"].as_str(), v["depth"].as_u64()), (0, Some("holds"), Some(10)));
    let (code, _, _) = fpc(&["bisim", "examples/unit.fpc", "corpus/pairs/nat/left.fpc"]);
    assert_eq!(code, 2, "different types are a usage error");
}

#[test]
fn ctx_equiv_runs_a_suite() {
    let pairs = PathBuf::from("corpus/pairs/unit");
    let left = pairs.join("left.fpc");
    let right = pairs.join("right.fpc");
    let args = [
        "ctx-equiv",
        left.to_str().unwrap(),
        right.to_str().unwrap(),
        "--contexts",
        "corpus/contexts/unit",
    ];
    let (code, out, _) = fpc(&args);
    assert_eq!(code, 0, "{out}");
    assert!(out.lines().next().unwrap().starts_with("00_beta_delay"));
    let (_, v) = json(&args);
    let results = v["results"].as_array().unwrap();
    assert_eq!(results.len(), 30);
    assert!(results.iter().all(|r| r["outcome"] == "agree" && r["flagged"] == false));

    let (code, out, _) = fpc(&[
        "ctx-equiv",
        "examples/unit.fpc",
        "examples/diverge.fpc",
        "--contexts",
        "corpus/contexts/unit",
        "--fuel",
        "500",
    ]);
    assert_eq!(code, 1, "{out}");
    assert!(out.contains("flagged"));
}

#[test]
fn errors_exit_with_usage_code() {
    let (code, _, err) = fpc(&["check", "no/such/file.fpc"]);
    assert_eq!(code, 2);
    assert!(err.starts_with("error:"), "{err}");
    assert_eq!(fpc(&["frobnicate"]).0, 2);
    assert_eq!(fpc(&[]).0, 2);
    let (code, _, err) = fpc(&["check", "corpus/contexts/unit/00_beta_delay.fpc"]);
    assert_eq!(code, 2);
    assert!(err.contains("hole"), "{err}");
}

#[test]
fn seed_must_be_numeric() {
    assert_eq!(fpc_env(&["check", "examples/unit.fpc"], &[("FPC_SEED", "17")]).0, 0);
    let (code, _, err) = fpc_env(&["check", "examples/unit.fpc"], &[("FPC_SEED", "abc")]);
    assert_eq!(code, 2);
    assert!(err.contains("FPC_SEED"), "{err}");
}
