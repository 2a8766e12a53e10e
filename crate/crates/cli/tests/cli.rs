use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_sudden-quench"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

/// Data rows of a CSV document (comments and header stripped).
fn records(csv: &str) -> Vec<Vec<String>> {
    csv.lines()
        .filter(|l| !l.starts_with('#') && !l.is_empty())
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

fn read(path: &Path) -> String {
    std::fs::read_to_string(path).unwrap()
}

#[test]
fn list_scenarios_names_all_four() {
    let o = run(&["list-scenarios"]);
    assert!(o.status.success());
    let text = stdout(&o);
    for s in ["delta", "pt", "sho", "hydrogen"] {
        assert!(text.lines().any(|l| l.starts_with(s)), "{s} missing");
    }
}

#[test]
fn delta_at_rest_stays_bound() {
    let o = run(&["run", "delta", "--theta", "0"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    assert!(text.contains("# config_sha256: "));
    assert!(text.contains("# units: hbar=1 mass=1 length_scale=1"));
    let rows = records(&text);
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0][2], "1.0");
}

#[test]
fn pt_frames_track_the_moving_well() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = run(&["run", "pt", "--lambda", "1", "--kappa", "1", "--times", "0,5,10,15", "--output", out]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    for t in ["0", "5", "10", "15"] {
        let frame = read(&dir.path().join(format!("frame_t{t}.csv")));
        assert!(frame.contains("x,density,re,im"));
        let rows = records(&frame);
        assert_eq!(rows.len(), 4096);
        let (x, _) = rows
            .iter()
            .map(|r| (r[0].parse::<f64>().unwrap(), r[1].parse::<f64>().unwrap()))
            .max_by(|a, b| a.1.total_cmp(&b.1))
            .unwrap();
        let vt: f64 = t.parse().unwrap();
        assert!((x - vt).abs() < 0.5, "t {t}: peak at {x}");
    }
    let table = read(&dir.path().join("probabilities.csv"));
    let rows = records(&table);
    let total: f64 = rows[0][5].parse().unwrap();
    assert!((total - 1.0).abs() < 1e-6);
}

#[test]
fn hydrogen_ionization_report() {
    let o = run(&["run", "hydrogen", "--ionization", "--n-max", "3"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    assert!(text.contains("ionization_coefficient,0.283412215955"), "{text}");
    assert!(text.contains("-0.28341221595516952094"));
    assert!(text.contains("# content: coefficients"));
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    for dir in [&a, &b] {
        let o = run(&[
            "run", "sho", "--sweep", "kappa:0:2:0.5", "--times", "1", "--format", "json", "--output",
            dir.path().to_str().unwrap(),
        ]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    }
    let mut names: Vec<_> = std::fs::read_dir(a.path()).unwrap().map(|e| e.unwrap().file_name()).collect();
    names.sort();
    assert_eq!(names.len(), 6);
    for name in names {
        assert_eq!(std::fs::read(a.path().join(&name)).unwrap(), std::fs::read(b.path().join(&name)).unwrap());
    }
}

#[test]
fn json_mirrors_csv() {
    let csv = stdout(&run(&["run", "pt", "--sweep", "kappa:0.5:1.5:0.5"]));
    let json = stdout(&run(&["run", "pt", "--sweep", "kappa:0.5:1.5:0.5", "--format", "json"]));
    let doc: serde_json::Value = serde_json::from_str(&json).unwrap();
    let rows = records(&csv);
    let recs = doc["records"].as_array().unwrap();
    assert_eq!(rows.len(), recs.len());
    for (row, rec) in rows.iter().zip(recs) {
        assert_eq!(row[4].parse::<f64>().unwrap(), rec["p_continuum"].as_f64().unwrap());
    }
    assert_eq!(doc["metadata"]["schema_version"], 1);
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.json");
    std::fs::write(&path, r#"{"scenario": "delta", "parameters": {"theta": 2.0}}"#).unwrap();
    let cfg = path.to_str().unwrap();
    let from_file = records(&stdout(&run(&["run", "--config", cfg])));
    assert_eq!(from_file[0][0], "2.0");
    let overridden = records(&stdout(&run(&["run", "--config", cfg, "--theta", "3"])));
    assert_eq!(overridden[0][0], "3.0");
    std::fs::write(&path, r#"{"scenario": "delta", "unknown": 1}"#).unwrap();
    assert_eq!(run(&["run", "--config", cfg]).status.code(), Some(2));
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        &["run", "pt", "--param", "theta=1"][..],
        &["run", "pt", "--sweep", "kappa:1:0:0.1"],
        &["run", "pt", "--sweep", "kappa:0:1:0"],
        &["run", "delta", "--times", "-1"],
        &["run", "hydrogen", "--times", "1"],
        &["run", "sho", "--tol-override", "bogus=1"],
        &["run", "nowhere"],
        &["run"],
        &["verify", "--criteria", "11"],
        &["verify", "--tol-override", "c1.nothing=1"],
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    }
}

#[test]
fn numerical_failure_exits_with_three() {
    // a momentum grid this coarse cannot represent the frame
    let o = run(&["run", "pt", "--times", "10", "--k-step", "0.5"]);
    assert_eq!(o.status.code(), Some(3), "{}", String::from_utf8_lossy(&o.stderr));
    let o = run(&["run", "sho", "--kappa", "10", "--n-max", "12"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("n_max"));
}

#[test]
fn verify_reports_items_and_runtime() {
    let o = run(&["verify", "--criteria", "7,8"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("criterion  7 PASS ("));
    assert!(text.contains("criterion  8 PASS ("));
    assert!(text.contains("[c8.continuum] continuum u-integral: measured 2.834122159551"));
    assert!(text.contains("2/2 criteria passed"));
}

#[test]
fn tampered_tolerance_fails_verify() {
    let o = run(&["verify", "--criteria", "7", "--tol-override", "c7.c2=1e-12"]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.contains("criterion  7 FAIL"));
    assert!(text.contains("0/1 criteria passed"));
}

#[test]
fn verify_json_report() {
    let o = run(&["verify", "--criteria", "6", "--format", "json"]);
    assert!(o.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc[0]["id"], 6);
    assert_eq!(doc[0]["passed"], true);
    assert!(doc[0]["seconds"].as_f64().unwrap() >= 0.0);
}

#[test]
fn thread_count_comes_from_the_environment() {
    let o = bin().args(["run", "delta"]).env("SUDDEN_QUENCH_THREADS", "0").output().unwrap();
    assert_eq!(o.status.code(), Some(2));
    let o = bin().args(["run", "pt", "--sweep", "kappa:0:1:0.5"]).env("SUDDEN_QUENCH_THREADS", "1").output().unwrap();
    let serial = stdout(&o);
    let o = bin().args(["run", "pt", "--sweep", "kappa:0:1:0.5"]).env("SUDDEN_QUENCH_THREADS", "4").output().unwrap();
    assert_eq!(stdout(&o), serial);
}
