use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use manymatch_cli::format::{MarketFile, MatchingFile};
use serde_json::Value;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_manymatch"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn enumerate_example1() {
    let out = run(&["enumerate", path(&data("example1.json")), "--trace"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v.as_array().unwrap().len(), 4);
    let trace = String::from_utf8_lossy(&out.stderr);
    assert!(trace.contains("cycle {(w1,f1),(w4,f3)}"));
    assert!(trace.contains("cycle {(w2,f1),(w3,f2)}"));
}

#[test]
fn compare_example2_reports_missing_matching() {
    let out = run(&["compare", path(&data("example2.json"))]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["stable_set"]["count"], 3);
    assert_eq!(v["oracle"]["count"], 3);
    assert_eq!(v["mms"]["count"], 2);
    assert_eq!(v["agree"], false);
    let missing = v["mms_missing"].as_array().unwrap();
    assert_eq!(missing.len(), 1);
    assert_eq!(missing[0]["assignment"]["f1"][0], "w3");
}

#[test]
fn validate_reports_axiom_failure() {
    let dir = tempfile::tempdir().unwrap();
    let market = dir.path().join("bad.json");
    std::fs::write(
        &market,
        r#"{"firms":["f1"],"workers":["w1","w2"],
            "firm_prefs":{"f1":[["w1","w2"]]},
            "worker_prefs":{"w1":[["f1"]],"w2":[["f1"]]}}"#,
    )
    .unwrap();
    let out = run(&["validate", market.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("f1 violates substitutability"), "{err}");
    assert_eq!(stdout_json(&out)["valid"], false);

    let out = run(&["enumerate", market.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["validate", path(&data("example1.json"))]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn malformed_inputs_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let market = dir.path().join("m.json");
    std::fs::write(&market, r#"{"firms":["f1"],"workers":["w1"],"firm_prefs":{"f1":[["w9"]]}}"#).unwrap();
    assert_eq!(run(&["enumerate", market.to_str().unwrap()]).status.code(), Some(1));
    std::fs::write(&market, "not json").unwrap();
    assert_eq!(run(&["da", market.to_str().unwrap()]).status.code(), Some(1));
    assert_eq!(run(&["oracle", "/nonexistent/market.json"]).status.code(), Some(1));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
}

#[test]
fn cap_exceeded_exits_three() {
    let out = run(&["oracle", path(&data("example1.json")), "--cap", "10"]);
    assert_eq!(out.status.code(), Some(3));
    let out = run(&["gen", "--firms", "3", "--workers", "40", "--quota", "5", "--prob", "0.5", "--seed", "1"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn da_both_sides() {
    let m = data("example2.json");
    let out = run(&["da", path(&m), "--proposing", "workers", "--trace"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["assignment"]["f1"][0], "w4");
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("round 1"));
    let v = stdout_json(&run(&["da", path(&m)]));
    assert_eq!(v["assignment"]["f1"][0], "w1");
}

#[test]
fn reduce_and_cycles_commands() {
    let market = data("example1.json");
    let mu = data("example1_mu_f.json");
    let out = run(&["reduce", path(&market), "--mu", path(&mu)]);
    assert_eq!(out.status.code(), Some(0));
    let reduced: MarketFile = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(reduced.firm_prefs["f2"].len(), 6);
    assert!(reduced.worker_prefs["w6"].is_empty());

    let out = run(&["cycles", path(&market), "--mu", path(&mu)]);
    let v = stdout_json(&out);
    assert_eq!(v, serde_json::json!([[["w1", "f1"], ["w4", "f3"]], [["w2", "f1"], ["w3", "f2"]]]));

    let out = run(&["cycles", path(&market), "--mu", path(&data("example1_sigma1.json"))]);
    assert_eq!(stdout_json(&out), serde_json::json!([[["w2", "f1"], ["w3", "f2"]]]));

    // the worker-optimal matching is not above the firm-optimal one
    let dir = tempfile::tempdir().unwrap();
    let mw = dir.path().join("mw.json");
    let da = run(&["da", path(&market), "--proposing", "workers"]);
    std::fs::write(&mw, &da.stdout).unwrap();
    let out = run(&["reduce", path(&market), "--mu", mw.to_str().unwrap(), "--mu-tilde", path(&mu)]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn mms_example2() {
    let v = stdout_json(&run(&["mms", path(&data("example2.json"))]));
    assert_eq!(v["count"], 2);
    let c = &v["candidates"][0];
    assert_eq!(c["firm"], "f1");
    assert_eq!(c["truncated_worker"], "w1");
    assert_eq!(
        c["failing_conditions"][0],
        serde_json::json!({"worker": "w1", "offered": ["f1", "f4"], "chosen": ["f1"], "required": ["f4"]})
    );
}

#[test]
fn gen_writes_file_and_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let args = |out: &str| {
        vec![
            "gen".to_string(),
            "--firms".into(),
            "3".into(),
            "--workers".into(),
            "4".into(),
            "--quota".into(),
            "2".into(),
            "--prob".into(),
            "0.7".into(),
            "--seed".into(),
            "42".into(),
            "--out".into(),
            out.to_string(),
        ]
    };
    let out = Command::new(env!("CARGO_BIN_EXE_manymatch"))
        .args(args(a.to_str().unwrap()))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let first = std::fs::read(&a).unwrap();
    let market: MarketFile = serde_json::from_slice(&first).unwrap();
    assert_eq!(market.firms, ["f1", "f2", "f3"]);
    let b = dir.path().join("b.json");
    Command::new(env!("CARGO_BIN_EXE_manymatch"))
        .args(args(b.to_str().unwrap()))
        .output()
        .unwrap();
    assert_eq!(first, std::fs::read(&b).unwrap());

    let e1 = run(&["enumerate", a.to_str().unwrap()]);
    let e2 = run(&["enumerate", a.to_str().unwrap()]);
    assert_eq!(e1.stdout, e2.stdout);
    let oracle = run(&["oracle", a.to_str().unwrap()]);
    assert_eq!(e1.stdout, oracle.stdout);
}

#[test]
fn matching_output_loads_back() {
    let market = data("example1.json");
    let out = run(&["enumerate", path(&market)]);
    let all: Vec<MatchingFile> = serde_json::from_slice(&out.stdout).unwrap();
    let profile = manymatch_cli::load_market(&market).unwrap();
    for m in &all {
        let loaded = m.to_matching(&profile).unwrap();
        assert_eq!(&MatchingFile::from_matching(&profile, &loaded), m);
    }
}
