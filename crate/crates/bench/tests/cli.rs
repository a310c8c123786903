use std::fs;
use std::process::{Command, Output};

fn batsonar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_batsonar")).args(args).output().unwrap()
}

#[test]
fn run_writes_csv_to_out() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.csv");
    let o = batsonar(&[
        "run",
        "--function",
        "f2",
        "--epochs",
        "7",
        "--seed",
        "3",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().next().unwrap(), "epoch,seed,best_fitness,best_point,iterations_to_best,wall_ms");
    assert_eq!(text.lines().count(), 8);
}

#[test]
fn config_file_with_flag_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.json");
    fs::write(&cfg, r#"{"function": "f5", "algorithm": "msu", "epochs": 50, "sonar": {"unit_count": 2, "max_iterations": 40}}"#)
        .unwrap();
    let out = dir.path().join("r.json");
    let o = batsonar(&[
        "run",
        "--config",
        cfg.to_str().unwrap(),
        "--epochs",
        "4",
        "--angle",
        "rand:0.1,0.4",
        "--format",
        "json",
        "--out",
        out.to_str().unwrap(),
        "--trajectory",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = fs::read_to_string(&out).unwrap();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["config"]["epochs"], 4);
    assert_eq!(v["config"]["function"], "f5");
    assert_eq!(v["config"]["sonar"]["max_iterations"], 40);
    assert_eq!(v["config"]["sonar"]["angle_mode"]["mode"], "rand");
    assert_eq!(v["records"].as_array().unwrap().len(), 4);
    assert!(v["summary"]["efficiency"].is_number());
    // record fields keep the CSV column order
    let first = &text[text.find("\"records\"").unwrap()..];
    let at = |k: &str| first.find(&format!("\"{k}\"")).unwrap();
    let cols = ["epoch", "seed", "best_fitness", "best_point", "iterations_to_best", "wall_ms"];
    assert!(cols.windows(2).all(|w| at(w[0]) < at(w[1])));
    assert!(dir.path().join("r.trajectory.csv").exists());
}

#[test]
fn configuration_errors_exit_with_one() {
    for args in [
        &["run", "--function", "nope"][..],
        &["run", "--epochs", "0"],
        &["run", "--algorithm", "msu", "--units", "1"],
        &["run", "--algorithm", "warp"],
        &["run", "--angle", "fixed"],
        &["run", "--trajectory"],
        &["run", "--config", "/does/not/exist.json"],
        &["compare", "--function", "f1", "--with", "ssu"],
        &["bogus"],
    ] {
        let o = batsonar(args);
        assert_eq!(o.status.code(), Some(1), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    }
}

#[test]
fn runtime_errors_exit_with_two() {
    let o = batsonar(&["run", "--epochs", "2", "--out", "/nonexistent-dir/x.csv"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("/nonexistent-dir/x.csv"));
}

#[test]
fn compare_and_oracle() {
    let o = batsonar(&["compare", "--function", "f1", "--epochs", "30", "--with", "ssu", "--with", "ga"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = String::from_utf8(o.stdout).unwrap();
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows[0], "label,best_fitness,best_point,mean_wall_ms");
    assert_eq!(rows.len(), 3);
    for row in &rows[1..] {
        let best: f64 = row.split(',').nth(1).unwrap().parse().unwrap();
        assert!((best - 15.4564).abs() < 1e-3, "{row}");
    }

    let o = batsonar(&["oracle", "--function", "f2", "--resolution", "1e-4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8(o.stdout).unwrap().lines().nth(1).unwrap().ends_with(",ok"));
}
