use std::path::Path;
use std::process::{Command, Output};

use iontrap::compiler::{Backend, Compiler};
use iontrap::ham::{build_holstein, build_hubbard};
use iontrap::jw::jw_transform;
use iontrap::trotter::trotterize;
use iontrap_cli::files::{read_json, HamiltonianFile, SequenceFile};
use serde_json::Value;

fn iontrap(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_iontrap"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn ok(args: &[&str]) -> String {
    let o = iontrap(args);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{args:?}: {}",
        String::from_utf8_lossy(&o.stderr)
    );
    stdout(&o)
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn build_writes_hubbard_and_holstein_files() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    let msg = ok(&[
        "build",
        "--model",
        "hubbard",
        "--rows",
        "4",
        "--cols",
        "5",
        "--out",
        path_str(&a),
    ]);
    assert!(msg.contains("40 fermionic modes, 0 bosonic modes, 144 terms"), "{msg}");
    ok(&[
        "build",
        "--model",
        "hubbard",
        "--rows",
        "4",
        "--cols",
        "5",
        "--out",
        path_str(&b),
    ]);
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());

    let file: HamiltonianFile = read_json(&a).unwrap();
    assert_eq!(file.to_hamiltonian().unwrap(), build_hubbard(4, 5, 1.0, 4.0).unwrap());

    let text = ok(&["build", "--model", "holstein", "--sites", "10"]);
    let file: HamiltonianFile = serde_json::from_str(&text).unwrap();
    assert_eq!((file.n_fermionic, file.n_bosonic), (10, 10));
    assert_eq!(
        file.to_hamiltonian().unwrap(),
        build_holstein(10, 1.0, 0.5, 1.0).unwrap()
    );
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        vec!["build", "--model", "hubbard", "--rows", "x", "--cols", "2"],
        vec!["build", "--model", "hubbard", "--rows", "2"],
        vec![
            "build", "--model", "hubbard", "--rows", "2", "--cols", "2", "--sites", "3",
        ],
        vec!["build", "--model", "hubbard", "--rows", "0", "--cols", "2"],
        vec!["compile", "--model", "holstein", "--sites", "2", "--order", "3"],
        vec!["compile", "--model", "holstein", "--sites", "2", "--backend", "xyz"],
        vec!["compile"],
        vec!["estimate", "--sequence", "/nonexistent/seq.json"],
    ] {
        let o = iontrap(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn compile_prints_golden_counts() {
    let ms = ok(&[
        "compile", "--model", "hubbard", "--rows", "4", "--cols", "5", "--steps", "10",
    ]);
    assert!(ms.contains("entangling gates per step: 268\n"), "{ms}");
    assert!(ms.contains("entangling gates total: 2680 "), "{ms}");

    let cx = ok(&[
        "compile",
        "--model",
        "hubbard",
        "--rows",
        "4",
        "--cols",
        "5",
        "--backend",
        "cnot",
    ]);
    assert!(cx.contains("entangling gates per step: 1724\n"), "{cx}");
    assert!(cx.contains("entangling gates total: 17240 (~1.7e4)"), "{cx}");

    let hol = ok(&["compile", "--model", "holstein", "--sites", "10"]);
    assert!(hol.contains("MS 18"), "{hol}");
    assert!(hol.contains("SDD 10"), "{hol}");
    assert!(hol.contains("DRIVE 10"), "{hol}");
    assert!(
        hol.contains("gate census (entangling + mode drives): 38 per step, 380 total"),
        "{hol}"
    );
}

#[test]
fn compiled_sequence_file_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("seq.json");
    ok(&[
        "compile",
        "--model",
        "holstein",
        "--sites",
        "3",
        "--steps",
        "2",
        "--order",
        "2",
        "--backend",
        "cnot",
        "--out",
        path_str(&out),
    ]);
    let file: SequenceFile = read_json(&out).unwrap();
    let sum = jw_transform(&build_holstein(3, 1.0, 0.5, 1.0).unwrap()).unwrap();
    let expected = Compiler::new(Backend::Cnot, 3, 3)
        .compile_plan(&trotterize(&sum, 1.0, 2, 2).unwrap())
        .unwrap();
    assert_eq!(file.to_sequence().unwrap(), expected);
}

fn estimate_json(args: &[&str]) -> Value {
    let mut full = vec!["estimate", "--format", "json"];
    full.extend_from_slice(args);
    serde_json::from_str(&ok(&full)).unwrap()
}

#[test]
fn estimate_reproduces_timing_chain() {
    let hubbard = ["--model", "hubbard", "--rows", "4", "--cols", "5"];
    let off = estimate_json(&hubbard);
    let headline = off["headline_us"].as_f64().unwrap();
    assert!((headline - 50_000.0).abs() <= 0.1 * 50_000.0, "{headline}");
    assert_eq!(off["n_ions"], 40);
    assert_eq!(off["umq_speedup"].as_f64(), Some(25.0));
    assert_eq!(off["classical_dimension"].as_u64(), Some(1 << 40));

    let mut scaled = hubbard.to_vec();
    scaled.extend(["--scaling", "on"]);
    let on = estimate_json(&scaled)["headline_us"].as_f64().unwrap();
    assert!((on - 1e6).abs() <= 0.1 * 1e6, "{on}");

    let hol = estimate_json(&[
        "--model",
        "holstein",
        "--sites",
        "10",
        "--steps",
        "1",
        "--scaling",
        "on",
    ]);
    assert_eq!(hol["n_ions"], 11);
    let step = hol["headline_us"].as_f64().unwrap();
    assert!((1500.0..=3000.0).contains(&step), "{step}");
}

#[test]
fn estimate_text_csv_and_sequence_input() {
    let dir = tempfile::tempdir().unwrap();
    let seq = dir.path().join("seq.json");
    ok(&[
        "compile",
        "--model",
        "hubbard",
        "--rows",
        "2",
        "--cols",
        "2",
        "--steps",
        "3",
        "--out",
        path_str(&seq),
    ]);
    let from_file = ok(&["estimate", "--sequence", path_str(&seq), "--format", "csv"]);
    let direct = ok(&[
        "estimate", "--model", "hubbard", "--rows", "2", "--cols", "2", "--steps", "3", "--format", "csv",
    ]);
    assert_eq!(from_file, direct);
    assert!(direct.starts_with("gate_kind,count,per_step,time_us,cumulative_error\n"));

    let report = dir.path().join("report.txt");
    ok(&["estimate", "--sequence", path_str(&seq), "--out", path_str(&report)]);
    let text = std::fs::read_to_string(&report).unwrap();
    assert!(text.contains("entangling time with scaling off / on"), "{text}");
    assert!(text.contains("classical state dimension: 256"), "{text}");
}

#[test]
fn config_file_with_inline_hamiltonian() {
    let dir = tempfile::tempdir().unwrap();
    let ham = ok(&["build", "--model", "holstein", "--sites", "2"]);
    let config = dir.path().join("job.json");
    let body = format!(r#"{{"hamiltonian": {ham}, "steps": 4, "cutoff": 3, "backend": "umq"}}"#);
    std::fs::write(&config, body).unwrap();
    let out = ok(&["compile", "--config", path_str(&config)]);
    assert!(out.contains("backend umq, order 1, 4 steps"), "{out}");
    let verified = ok(&["verify", "--config", path_str(&config)]);
    assert!(verified.contains("PASS trotter-scan"), "{verified}");
}

#[test]
fn verify_passes_small_models() {
    let hub = ok(&["verify", "--model", "hubbard", "--rows", "1", "--cols", "2"]);
    assert_eq!(hub.matches("PASS").count(), 4, "{hub}");
    let hol = ok(&[
        "verify",
        "--model",
        "holstein",
        "--sites",
        "2",
        "--cutoff",
        "3",
        "--order",
        "2",
        "--backend",
        "cnot",
    ]);
    assert!(!hol.contains("FAIL"), "{hol}");
}

#[test]
fn verify_rejects_corrupted_sequence() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("good.json");
    let bad = dir.path().join("bad.json");
    let model = ["--model", "holstein", "--sites", "2", "--cutoff", "3", "--steps", "3"];
    let mut compile = vec!["compile"];
    compile.extend(model);
    compile.extend(["--out", path_str(&good)]);
    ok(&compile);

    let mut file: Value = serde_json::from_str(&std::fs::read_to_string(&good).unwrap()).unwrap();
    let theta = file["steps"][1][2]["theta"].as_f64().unwrap();
    file["steps"][1][2]["theta"] = Value::from(theta + 0.2);
    std::fs::write(&bad, serde_json::to_string(&file).unwrap()).unwrap();

    let mut check = vec!["verify"];
    check.extend(model);
    check.extend(["--sequence", path_str(&good)]);
    assert!(ok(&check).contains("PASS sequence-file"));
    *check.last_mut().unwrap() = path_str(&bad);
    let o = iontrap(&check);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL sequence-file"), "{}", stdout(&o));
    assert!(stdout(&o).contains("deviation"));
}

#[test]
fn dimension_limit_override() {
    let o = Command::new(env!("CARGO_BIN_EXE_iontrap"))
        .args(["verify", "--model", "holstein", "--sites", "2", "--cutoff", "3"])
        .env("IONTRAP_DIM_LIMIT", "32")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("exceeds limit 32"));
}
