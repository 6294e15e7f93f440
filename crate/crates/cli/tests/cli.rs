use std::path::Path;
use std::process::{Command, Output};

use ambient_cycles::persistence::{MeasureSummary, PersistenceRecord};
use ambient_cycles::transition::ClassificationReport;
use ambient_cycles::SurfaceKind;
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ambient-cycles"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_owned()
}

#[test]
fn dist_examples() {
    let v = json(&run(&["dist", "--surface", "torus", "0.1", "0.1", "0.9", "0.1"]));
    assert!((v["distance"].as_f64().unwrap() - 0.2).abs() < 1e-12);
    assert_eq!(v["minimizers"], serde_json::json!([[-1, 0]]));
    assert_eq!(v["tied"], false);

    let v = json(&run(&["dist", "--surface", "rp2", "0", "0", "1", "0", "0", "-1"]));
    assert_eq!(v["distance"].as_f64(), Some(0.0));
    assert_eq!(v["minimizers"], serde_json::json!([1]));

    let v = json(&run(&["dist", "--surface", "torus", "0", "0", "0.5", "0"]));
    assert_eq!(v["tied"], true);

    let v = json(&run(&["dist", "--surface", "genus2", "0.1", "-0.2", "0.5", "0.3"]));
    assert!(v["minimizers"][0].is_string());
}

#[test]
fn dist_errors() {
    assert_eq!(run(&["dist", "--surface", "torus", "0.1", "0.1", "0.9"]).status.code(), Some(2));
    assert_eq!(run(&["dist", "--surface", "torus", "0.1", "x", "0.9", "0.1"]).status.code(), Some(2));
    assert_eq!(run(&["dist", "--surface", "rp2", "0", "0", "2", "0", "0", "1"]).status.code(), Some(2));
    assert_eq!(run(&["dist", "--surface", "genus2", "1.5", "0", "0", "0"]).status.code(), Some(2));
    assert_eq!(run(&["dist", "--surface", "mobius", "0", "0", "0", "0"]).status.code(), Some(2));
    let capped = run(&["--max-word-length", "0", "dist", "--surface", "genus2", "0.1", "0", "0.5", "0.3"]);
    assert_eq!(capped.status.code(), Some(3));
    let bad_tie = run(&["--tie-tolerance", "0", "dist", "--surface", "torus", "0", "0", "0.5", "0"]);
    assert_eq!(bad_tie.status.code(), Some(2));
}

#[test]
fn classify_meridian() {
    let dir = tempfile::tempdir().unwrap();
    let rows: String = (0..8).map(|k| format!("{},0.5\n", k as f64 / 8.0)).collect();
    let input = write(dir.path(), "meridian.csv", &format!("x,y\n{rows}"));
    let out = run(&["classify", "--surface", "torus", "--input", &input, "--epsilon", "0.13"]);
    let v = json(&out);
    assert_eq!(v["cycles"].as_array().unwrap().len(), 1);
    let class = v["cycles"][0]["class_free"].as_array().unwrap();
    assert_eq!(class.iter().map(|c| c.as_i64().unwrap().abs()).collect::<Vec<_>>(), [1, 0]);

    // The report carries enough to recompute every class.
    let report: ClassificationReport = serde_json::from_slice(&out.stdout).unwrap();
    let t = report.transition_map().unwrap();
    for cycle in &report.cycles {
        let class = t.homology_class(&ambient_cycles::Chain::from_loop(&cycle.vertices)).unwrap();
        assert_eq!(class.free, cycle.class_free);
        assert_eq!(class.torsion, cycle.class_torsion);
    }

    let file = dir.path().join("report.json");
    let status = run(&[
        "classify", "--surface", "torus", "--input", &input, "--epsilon", "0.13", "-o", file.to_str().unwrap(),
    ]);
    assert!(status.status.success() && status.stdout.is_empty());
    let written: Value = serde_json::from_str(&std::fs::read_to_string(file).unwrap()).unwrap();
    assert_eq!(written, v);
}

#[test]
fn classify_other_surfaces() {
    let dir = tempfile::tempdir().unwrap();
    let rows: String = (0..6)
        .map(|k| {
            let a = std::f64::consts::PI * k as f64 / 6.0;
            format!("{},0,{}\n", a.sin(), a.cos())
        })
        .collect();
    let input = write(dir.path(), "rp2.csv", &format!("x,y,z\n{rows}"));
    let v = json(&run(&["classify", "--surface", "rp2", "--input", &input, "--epsilon", "0.6"]));
    assert_eq!(v["cycles"][0]["class"], "(;1)");

    let input = write(dir.path(), "g2.csv", "re,im\n0.1,0.1\n-0.2,0.3\n");
    let v = json(&run(&["classify", "--surface", "genus2", "--input", &input, "--epsilon", "2.0"]));
    assert_eq!(v["surface"], "genus2");
}

#[test]
fn classify_errors() {
    let dir = tempfile::tempdir().unwrap();
    let empty = write(dir.path(), "empty.csv", "");
    assert_eq!(run(&["classify", "--surface", "torus", "--input", &empty, "--epsilon", "0.1"]).status.code(), Some(2));
    let header_only = write(dir.path(), "header.csv", "x,y\n");
    let out = run(&["classify", "--surface", "torus", "--input", &header_only, "--epsilon", "0.1"]);
    assert_eq!(out.status.code(), Some(2));
    let dup = write(dir.path(), "dup.csv", "x,y\n0.1,0.2\n1.1,0.2\n");
    let out = run(&["classify", "--surface", "torus", "--input", &dup, "--epsilon", "0.1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("same base point"));
    let wrong = write(dir.path(), "wrong.csv", "re,im\n0.1,0.2\n");
    assert_eq!(run(&["classify", "--surface", "torus", "--input", &wrong, "--epsilon", "0.1"]).status.code(), Some(2));
    let ragged = write(dir.path(), "ragged.csv", "x,y\n0.1,0.2\n0.3\n");
    assert_eq!(run(&["classify", "--surface", "torus", "--input", &ragged, "--epsilon", "0.1"]).status.code(), Some(2));
    let missing = dir.path().join("missing.csv");
    let out = run(&["classify", "--surface", "torus", "--input", missing.to_str().unwrap(), "--epsilon", "0.1"]);
    assert_eq!(out.status.code(), Some(4));
    let good = write(dir.path(), "good.csv", "x,y\n0.1,0.2\n0.3,0.2\n");
    let out = run(&["classify", "--surface", "torus", "--input", &good, "--epsilon", "-1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn ppm_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("out");
    let o = out_dir.to_str().unwrap();
    let status = run(&["ppm", "--surface", "klein", "-n", "2000", "--seed", "7", "-o", o]);
    assert!(status.status.success(), "{}", String::from_utf8_lossy(&status.stderr));
    assert!(!status.stderr.is_empty());

    let summary: MeasureSummary =
        serde_json::from_str(&std::fs::read_to_string(out_dir.join("summary.json")).unwrap()).unwrap();
    assert_eq!(summary.surface, SurfaceKind::KleinBottle);
    assert_eq!(summary.total, 2000);
    assert!(summary.phi_bar > 0.0 && summary.phi_bar < 1.0);
    let jsonl = std::fs::read_to_string(out_dir.join("ppm.jsonl")).unwrap();
    let records: Vec<PersistenceRecord> = jsonl.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(records.len(), summary.persistent);
    let clean = records.iter().filter(|r| !r.degenerate).count();
    assert_eq!(summary.class_counts.values().sum::<usize>(), clean);
    assert!(records.iter().all(|r| r.death > r.birth));

    let single = run(&["--threads", "1", "ppm", "--surface", "klein", "-n", "2000", "--seed", "7", "-o", o]);
    assert!(single.status.success());
    assert_eq!(std::fs::read_to_string(out_dir.join("ppm.jsonl")).unwrap(), jsonl);
}

#[test]
fn ppm_errors() {
    let dir = tempfile::tempdir().unwrap();
    let o = dir.path().to_str().unwrap();
    assert_eq!(run(&["ppm", "--surface", "torus", "-n", "0", "--seed", "1", "-o", o]).status.code(), Some(2));
    assert_eq!(run(&["ppm", "--surface", "torus", "-n", "10", "-o", o]).status.code(), Some(2));
    let blocker = write(dir.path(), "file", "");
    let nested = format!("{blocker}/sub");
    assert_eq!(run(&["ppm", "--surface", "torus", "-n", "10", "--seed", "1", "-o", &nested]).status.code(), Some(4));
}

#[test]
fn surfaces_lists_all_four() {
    let out = run(&["surfaces"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    for name in ["torus", "klein", "rp2", "genus2"] {
        assert!(text.lines().any(|l| l.starts_with(name)), "{name}");
    }
}
