use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use sphertest_core::classical::TestName;
use sphertest_core::io::write_spk1;
use sphertest_core::power::classical_power;
use tempfile::tempdir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sphertest"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn ok(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

/// Header row and numeric rows of a CSV with a `#` comment block.
fn csv_table(text: &str) -> (Vec<String>, Vec<Vec<f64>>) {
    let mut lines = text.lines().filter(|l| !l.starts_with('#'));
    let header = lines.next().unwrap().split(',').map(String::from).collect();
    let rows = lines
        .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
        .collect();
    (header, rows)
}

fn read(path: &Path) -> String {
    std::fs::read_to_string(path).unwrap()
}

#[test]
fn envelope_table() {
    let text = ok(&["envelope", "--alpha", "0.05"]);
    assert!(text.starts_with("# sphertest "));
    for key in ["# command:", "# seed:", "# scale: desk"] {
        assert!(text.contains(key), "{key}");
    }
    let (header, rows) = csv_table(&text);
    assert_eq!(header, ["theta", "h_over_sqrt_c", "envelope_lambda", "envelope_mu"]);
    assert_eq!(rows[0], vec![0.0, 0.0, 0.05, 0.05]);
    let two = rows.iter().find(|r| (r[0] - 2.0).abs() < 1e-12).unwrap();
    assert!((two[2] - 0.409).abs() < 5e-4 && (two[3] - 0.339).abs() < 5e-4, "{two:?}");
    for r in &rows {
        assert!((r[1] - (1.0 - (-r[0] * r[0]).exp()).sqrt()).abs() < 1e-12);
    }
}

#[test]
fn envelope_json_carries_provenance() {
    let v: Value = serde_json::from_str(&ok(&["envelope", "--format", "json", "--grid", "3:4", "--seed", "8"])).unwrap();
    assert_eq!(v["provenance"]["seed"], 8);
    assert_eq!(v["provenance"]["scale"], "desk");
    assert!(v["provenance"]["command"].as_str().unwrap().contains("envelope"));
    assert_eq!(v["rows"].as_array().unwrap().len(), 4);
}

#[test]
fn power_figures_files() {
    let dir = tempdir().unwrap();
    let out = dir.path().join("figs");
    ok(&[
        "power-figures",
        "--c",
        "0.5",
        "--grid",
        "6:100",
        "--curve",
        "6:13",
        "--draws",
        "20000",
        "--out",
        out.to_str().unwrap(),
    ]);
    for name in ["fig3_lambda.csv", "fig3_mu.csv", "fig4_john.csv", "fig5_lw_clr.csv"] {
        let text = read(&out.join(name));
        assert!(text.starts_with("# sphertest "), "{name}");
        let (_, rows) = csv_table(&text);
        assert_eq!(rows.len(), 13);
        assert!(rows.iter().all(|r| r[2..].iter().all(|v| (0.0..=1.0).contains(v))), "{name}");
    }
    let (header, rows) = csv_table(&read(&out.join("fig5_lw_clr.csv")));
    assert_eq!(header[4], "clr");
    for r in &rows {
        assert_eq!(r[4], classical_power(r[0], 0.05, TestName::Clr, Some(0.5)).unwrap());
    }
    for name in ["fig3_lambda.csv", "fig3_mu.csv"] {
        let (_, rows) = csv_table(&read(&out.join(name)));
        for r in &rows {
            // envelope, lr, wap
            assert!(r[3] > r[2] - 0.13 && r[3] < r[2] + 0.03, "{name} lr at {}: {r:?}", r[0]);
            assert!(r[4] < r[2] + 0.03, "{name} wap at {}: {r:?}", r[0]);
        }
    }
}

fn json_lines(text: &str) -> Vec<Value> {
    text.lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

#[test]
fn spherical_input_is_not_rejected() {
    let dir = tempdir().unwrap();
    let path = dir.path().join("ones.txt");
    std::fs::write(&path, "# flat spectrum\n".to_string() + &"1\n".repeat(30)).unwrap();
    let lines = json_lines(&ok(&["test", "--input", path.to_str().unwrap(), "--n", "60", "--tests", "john,lw"]));
    assert!(lines[0].get("provenance").is_some());
    assert_eq!(lines.len(), 3);
    assert_eq!(lines[1]["test"], "john");
    assert_eq!(lines[1]["reject"], false);
}

#[test]
fn inapplicable_test_is_marked_not_fatal() {
    let out = run(&["test", "--p", "50", "--n", "40", "--reps", "2", "--tests", "clr,john"]);
    assert!(out.status.success());
    let lines = json_lines(&String::from_utf8(out.stdout).unwrap());
    assert_eq!(lines.len(), 5);
    let clr: Vec<&Value> = lines.iter().filter(|l| l["test"] == "clr").collect();
    assert_eq!(clr.len(), 2);
    assert!(clr.iter().all(|l| l["error"].as_str().unwrap().contains("not applicable")));
    assert!(lines.iter().filter(|l| l["test"] == "john").all(|l| l.get("stat").is_some()));
}

#[test]
fn malformed_input_reports_position() {
    let dir = tempdir().unwrap();
    let text = dir.path().join("bad.csv");
    std::fs::write(&text, "1.0\n2.0\nnope\n").unwrap();
    let out = run(&["test", "--input", text.to_str().unwrap(), "--n", "10"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));

    let bin = dir.path().join("bad.spk");
    std::fs::write(&bin, b"SPK1\x05\x00\x00\x00\x00\x00").unwrap();
    let out = run(&["test", "--input", bin.to_str().unwrap(), "--n", "10"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("byte offset 8"));

    let out = run(&["test", "--input", dir.path().join("missing").to_str().unwrap(), "--n", "10"]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn simulated_spectra_round_trip() {
    let dir = tempdir().unwrap();
    let path = dir.path().join("eigs.spk1");
    ok(&["simulate", "--p", "20", "--n", "30", "--theta", "1", "--reps", "3", "--out", path.to_str().unwrap()]);
    let bytes = std::fs::read(&path).unwrap();
    assert_eq!(&bytes[..4], b"SPK1");
    let from_file = json_lines(&ok(&[
        "test", "--input", path.to_str().unwrap(), "--p", "20", "--n", "30", "--tests", "john",
    ]));
    let direct = json_lines(&ok(&["test", "--p", "20", "--n", "30", "--theta", "1", "--reps", "3", "--tests", "john"]));
    assert_eq!(from_file.len(), 4);
    for (a, b) in from_file[1..].iter().zip(&direct[1..]) {
        assert_eq!(a["stat"], b["stat"]);
    }
}

#[test]
fn spk1_with_explicit_zeros() {
    let dir = tempdir().unwrap();
    let path = dir.path().join("wide.spk1");
    let f = std::fs::File::create(&path).unwrap();
    write_spk1(f, &[vec![3.0, 2.0, 1.5, 0.5]]).unwrap();
    let lines = json_lines(&ok(&[
        "test", "--input", path.to_str().unwrap(), "--p", "8", "--n", "4", "--tests", "john,tw_lambda",
    ]));
    assert_eq!(lines.len(), 3);
    assert_eq!(lines[1]["p"], 8);
}

fn payload(text: &str) -> Value {
    let mut v: Value = serde_json::from_str(text).unwrap();
    v.as_object_mut().unwrap().remove("provenance");
    v
}

#[test]
fn mc_critical_is_deterministic_and_pivotal() {
    let base = ["mc-critical", "--p", "20", "--n", "40", "--grid", "3:7", "--reps", "200", "--seed", "5"];
    let a = payload(&ok(&base));
    let mut args = base.to_vec();
    args.extend(["--threads", "1"]);
    let b = payload(&ok(&args));
    assert_eq!(a, b);
    for key in ["kind", "p", "n", "M", "alpha", "critical_value", "reps", "seed", "failures"] {
        assert!(a.get(key).is_some(), "{key}");
    }
    assert_eq!(a["kind"], "mu");
    assert_eq!(a["M"], 3.0);

    let mut args = base.to_vec();
    args.extend(["--sigma2", "4"]);
    let scaled = payload(&ok(&args));
    let (x, y) = (a["critical_value"].as_f64().unwrap(), scaled["critical_value"].as_f64().unwrap());
    assert!((x - y).abs() < 1e-9, "{x} {y}");

    let mut args = base.to_vec();
    args[8] = "400";
    args[10] = "6";
    let doubled = payload(&ok(&args));
    let z = doubled["critical_value"].as_f64().unwrap();
    let se = a["standard_error"].as_f64().unwrap().hypot(doubled["standard_error"].as_f64().unwrap());
    assert!((x - z).abs() < 2.0 * se, "{x} {z} {se}");
}

#[test]
fn sup_simulation_output() {
    let dir = tempdir().unwrap();
    let path = dir.path().join("sup.csv");
    ok(&["sup-sim", "--grid", "6:50", "--draws", "4000", "--out", path.to_str().unwrap()]);
    let text = read(&path);
    assert!(text.contains("# quantile: "));
    let (header, rows) = csv_table(&text);
    assert_eq!(header, ["sample_index", "value"]);
    assert_eq!(rows.len(), 4000);
    assert!(rows.windows(2).all(|w| w[0][1] <= w[1][1]));
    assert!(rows.iter().all(|r| r[1] >= 0.0));
}

#[test]
fn decay_probe_output() {
    let v: Value = serde_json::from_str(&ok(&[
        "decay-probe", "--c", "1", "--h", "2", "--n-list", "20,40", "--reps", "5", "--format", "json",
    ]))
    .unwrap();
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[1]["p"], 40);
    assert!(v["slope"].as_f64().unwrap().is_finite());
    let out = run(&["decay-probe", "--c", "1", "--h", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn config_file_precedence() {
    let dir = tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    std::fs::write(&cfg, r#"{"command": "envelope", "alpha": 0.01, "grid": "2:3"}"#).unwrap();
    let c = cfg.to_str().unwrap();
    let (_, rows) = csv_table(&ok(&["envelope", "--config", c]));
    assert_eq!(rows.len(), 3);
    assert_eq!(rows[0][2], 0.01);
    let (_, rows) = csv_table(&ok(&["envelope", "--config", c, "--alpha", "0.1"]));
    assert_eq!(rows[0][2], 0.1);

    assert_eq!(run(&["sup-sim", "--config", c]).status.code(), Some(2));
    std::fs::write(&cfg, r#"{"alpah": 0.01}"#).unwrap();
    assert_eq!(run(&["envelope", "--config", c]).status.code(), Some(2));
    assert_eq!(run(&["envelope", "--alpha", "1.5"]).status.code(), Some(2));
    assert_eq!(run(&["envelope", "--config", dir.path().join("none.json").to_str().unwrap()]).status.code(), Some(4));
}
