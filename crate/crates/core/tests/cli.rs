use std::path::Path;
use std::process::{Command, Output};

use qcap::channels::{read_channel_file, write_channel_file, Channel, KrausChannel};
use qcap::cloners::{cloner_channel, ClonerSpec};
use qcap::degradability::{rank2_qubit_channel, Rank2QubitParams};
use qcap::qmat::ComplexMatrix;
use serde_json::Value;

fn qcap(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qcap"))
        .args(args)
        .env_remove("QCAP_TOLERANCE")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn cloner_capacity_text_and_json() {
    let o = qcap(&["capacity", "cloner", "--n", "1", "--m", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("0.584962500721156"));

    let o = qcap(&["--json", "capacity", "cloner", "--n", "2", "--m", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert!((v["closed_form_bits"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert!(v["delta"].as_f64().unwrap() < 1e-9);
}

#[test]
fn out_of_range_arguments_are_usage_errors() {
    for args in [
        &["capacity", "cloner", "--n", "3", "--m", "2"][..],
        &["capacity", "cloner", "--n", "0", "--m", "2"],
        &["capacity", "cloner", "--n", "1", "--m", "129"],
        &["capacity", "unruh", "--z", "1.5"],
        &["capacity", "unruh", "--z", "0"],
        &["capacity", "unruh"],
        &["--tolerance", "-1", "capacity", "unruh", "--z", "0.5"],
        &["frobnicate"],
    ] {
        let o = qcap(args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        assert!(!stderr(&o).is_empty());
    }
}

#[test]
fn help_goes_to_stdout() {
    let o = qcap(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("capacity"));
}

#[test]
fn unruh_single_point() {
    let o = qcap(&["--json", "capacity", "unruh", "--z", "0.5"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert!((v["capacity_bits"].as_f64().unwrap() - 0.435763217375791).abs() < 1e-12);
    assert!(v["tail_bound"].as_f64().unwrap() <= 1e-12);
}

#[test]
fn unruh_sweep_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for p in [&a, &b] {
        let o = qcap(&["capacity", "unruh", "--sweep", "0.01", "0.99", "--steps", "99", "--out", path_str(p)]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    }
    let text = std::fs::read(&a).unwrap();
    assert_eq!(text, std::fs::read(&b).unwrap());
    let mut reader = csv::Reader::from_reader(text.as_slice());
    let rows: Vec<csv::StringRecord> = reader.records().map(|r| r.unwrap()).collect();
    assert_eq!(rows.len(), 99);
    let q: Vec<f64> = rows.iter().map(|r| r[1].parse().unwrap()).collect();
    assert!(q.windows(2).all(|w| w[1] < w[0]));
}

#[test]
fn exported_cloner_classifies() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("c12.json");
    let o = qcap(&["export", "cloner", "--n", "1", "--m", "2", "--out", path_str(&file)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));

    let o = qcap(&["classify", path_str(&file)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("\ndegradable: yes"), "{text}");
    assert!(text.contains("conjugate-degradable: yes"), "{text}");
    assert!(text.contains("conjugate-antidegradable: not found"), "{text}");

    let o = qcap(&["--json", "classify", path_str(&file), "--modes", "degradable"]);
    let v = json(&o);
    assert_eq!(v["report"]["verdicts"].as_array().unwrap().len(), 1);
    assert_eq!(v["report"]["verdicts"][0]["holds"], Value::Bool(true));
}

#[test]
fn perfect_cloner_is_degradable() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("c22.json");
    qcap(&["export", "cloner", "--n", "2", "--m", "2", "--out", path_str(&file)]);
    let o = qcap(&["--json", "classify", path_str(&file), "--modes", "degradable"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(json(&o)["report"]["verdicts"][0]["holds"], Value::Bool(true));
}

#[test]
fn rank2_channel_on_the_manifold() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("r2.json");
    let q = std::f64::consts::FRAC_PI_4;
    write_channel_file(&file, &rank2_qubit_channel(Rank2QubitParams::new(q, q))).unwrap();
    let o = qcap(&["classify", path_str(&file), "--modes", "conjugate_antidegradable"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("entanglement-breaking: yes"), "{text}");
    assert!(text.contains("conjugate-antidegradable: yes"), "{text}");
}

#[test]
fn bad_channel_files_are_validation_errors() {
    let dir = tempfile::tempdir().unwrap();
    let lossy = dir.path().join("lossy.json");
    std::fs::write(&lossy, r#"{"din": 1, "dout": 1, "kraus": [[[[0.5, 0.0]]]]}"#).unwrap();
    let o = qcap(&["classify", path_str(&lossy)]);
    assert_eq!(o.status.code(), Some(2));

    let broken = dir.path().join("broken.json");
    std::fs::write(&broken, "{\n  \"din\": 2,\n  \"dout\": \n}").unwrap();
    let o = qcap(&["classify", path_str(&broken)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 4"), "{}", stderr(&o));

    let o = qcap(&["classify", path_str(&dir.path().join("missing.json"))]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn choi_dimension_cap() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("c12.json");
    qcap(&["export", "cloner", "--n", "1", "--m", "2", "--out", path_str(&file)]);
    let o = qcap(&["classify", path_str(&file), "--max-choi-dim", "4"]);
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));

    let o = qcap(&["classify", path_str(&file), "--max-choi-dim", "100"]);
    assert_eq!(o.status.code(), Some(1));
    let o = qcap(&["classify", path_str(&file), "--max-choi-dim", "100", "--accept-runtime-cost"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
}

#[test]
fn tolerance_from_the_environment() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("c12.json");
    qcap(&["export", "cloner", "--n", "1", "--m", "2", "--out", path_str(&file)]);
    let run = |tol: &str| {
        Command::new(env!("CARGO_BIN_EXE_qcap"))
            .args(["classify", path_str(&file), "--modes", "degradable"])
            .env("QCAP_TOLERANCE", tol)
            .output()
            .unwrap()
    };
    assert_eq!(run("1e-3").status.code(), Some(0));
    assert_eq!(run("-2").status.code(), Some(1));
    assert_eq!(run("tiny").status.code(), Some(1));
}

#[test]
fn export_to_a_missing_directory_fails_cleanly() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("nope").join("c.json");
    let o = qcap(&["export", "cloner", "--n", "1", "--m", "2", "--out", path_str(&file)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!file.exists());
}

#[test]
fn export_preserves_the_choi_matrix() {
    let dir = tempfile::tempdir().unwrap();
    for (n, m) in [(1, 2), (2, 3), (1, 4)] {
        let file = dir.path().join(format!("c{n}{m}.json"));
        let o = qcap(&["export", "cloner", "--n", &n.to_string(), "--m", &m.to_string(), "--out", path_str(&file)]);
        assert_eq!(o.status.code(), Some(0));
        let back: KrausChannel = read_channel_file(&file).unwrap();
        let direct = cloner_channel(ClonerSpec::new(n, m).unwrap()).unwrap();
        let (a, b): (ComplexMatrix, ComplexMatrix) = (back.choi().into_matrix(), direct.choi().into_matrix());
        assert!(a.max_abs_diff(&b) < 1e-12);
    }
}
