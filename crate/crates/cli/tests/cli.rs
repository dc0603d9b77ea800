use std::process::{Command, Output};

fn fucik(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fucik")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn csv_rows(o: &Output) -> Vec<Vec<String>> {
    stdout(o)
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(str::to_owned).collect())
        .collect()
}

#[test]
fn classical_eigenvalues() {
    let o = fucik(&["eigen", "--preset", "classical", "--k", "1..4"]);
    assert_eq!(o.status.code(), Some(0));
    let rows = csv_rows(&o);
    assert_eq!(rows.len(), 4);
    for (i, row) in rows.iter().enumerate() {
        let k = (i + 1) as f64;
        let l: f64 = row[1].parse().unwrap();
        assert!((l - k * k).abs() < 1e-8, "{row:?}");
    }
}

#[test]
fn missing_negative_eigenvalue_is_a_none_row() {
    let o = fucik(&["eigen", "--preset", "classical", "--k", "-1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "k,lambda\n-1,none\n");
}

#[test]
fn eigen_json_and_subinterval() {
    let o = fucik(&[
        "eigen",
        "--preset",
        "classical",
        "--k",
        "1",
        "--sub",
        "0,1.5707963267948966",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let l = v["eigenvalues"][0]["lambda"].as_f64().unwrap();
    assert!((l - 4.0).abs() < 1e-8);
}

#[test]
fn malformed_problem_file_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, "{\"interval\": [0, 1], \"m\": ").unwrap();
    let o = fucik(&["eigen", "--problem", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("EOF"));
}

#[test]
fn problem_file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p.json");
    std::fs::write(&path, r#"{"interval": [0, 3.141592653589793], "m": {"constant": 2}}"#).unwrap();
    let o = fucik(&["eigen", "--problem", path.to_str().unwrap(), "--k", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let l: f64 = csv_rows(&o)[0][1].parse().unwrap();
    assert!((l - 2.0).abs() < 1e-8);
}

#[test]
fn bad_arguments_exit_1() {
    assert_eq!(fucik(&["eigen"]).status.code(), Some(1));
    assert_eq!(fucik(&["bogus"]).status.code(), Some(1));
    assert_eq!(fucik(&["eigen", "--preset", "nope"]).status.code(), Some(1));
    assert_eq!(
        fucik(&["eigen", "--preset", "classical", "--tol-rel", "0.5"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        fucik(&["trace", "--preset", "classical", "--k", "1"]).status.code(),
        Some(1)
    );
    assert_eq!(fucik(&["--help"]).status.code(), Some(0));
}

#[test]
fn unreachable_eigenvalue_exits_2() {
    // a vanishingly small weight pushes lambda_1 past the bracket limit
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("tiny.json");
    std::fs::write(&path, r#"{"interval": [0, 1], "m": {"constant": 1e-14}}"#).unwrap();
    let o = fucik(&["eigen", "--problem", path.to_str().unwrap(), "--k", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn classical_trace_satisfies_the_closed_form() {
    let o = fucik(&[
        "trace",
        "--preset",
        "classical",
        "--k",
        "2",
        "--branch",
        "gt",
        "--quadrant",
        "pp",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("k,branch,quadrant,a,b\n"));
    let rows = csv_rows(&o);
    assert!(rows.len() >= 64);
    for row in rows {
        assert_eq!(&row[..3], ["2", "gt", "pp"]);
        let a: f64 = row[3].parse().unwrap();
        let b: f64 = row[4].parse().unwrap();
        assert!((1.0 / a.sqrt() + 1.0 / b.sqrt() - 1.0).abs() < 1e-6);
    }
}

#[test]
fn empty_curve_exits_3() {
    let o = fucik(&["trace", "--preset", "sine:6.283", "--k", "3", "--quadrant", "pm"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("empty at resolution 1e4"));
}

#[test]
fn trace_is_deterministic_and_writes_files() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let path = dir.path().join(name);
        let o = fucik(&[
            "trace",
            "--preset",
            "example_3_13",
            "--k",
            "2",
            "--quadrant",
            "all",
            "--grid-per-decade",
            "8",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(3), "C_2^< is empty in some quadrants");
        std::fs::read(path).unwrap()
    };
    let first = run("a.csv");
    assert!(first.len() > 100);
    assert_eq!(first, run("b.csv"));
}

#[test]
fn reports_match_the_known_counts() {
    let o = fucik(&["report", "--preset", "example_3_13"]);
    assert_eq!(o.status.code(), Some(0));
    for row in csv_rows(&o) {
        assert_eq!(&row[1..3], ["1", "true"], "{row:?}");
    }

    let o = fucik(&["report", "--preset", "classical", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["per_quadrant"]["pp"]["total"]["kind"], "at_least");
    for q in ["mm", "pm", "mp"] {
        assert_eq!(v["per_quadrant"][q]["total"]["value"], 0);
    }

    let o = fucik(&["report", "--preset", "sine:9.425", "--quadrant", "pm"]);
    assert_eq!(csv_rows(&o), vec![vec!["pm", "3", "true", "false"]]);
}

#[test]
fn count_lists_levels() {
    let o = fucik(&["count", "--preset", "sine:9.425", "--quadrant", "pm", "--k-stop", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let nonempty = csv_rows(&o).iter().filter(|r| r[3] == "true").count();
    assert_eq!(nonempty, 3);
}

#[test]
fn zero_function_and_its_trace() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("shot.csv");
    let o = fucik(&[
        "zerofn",
        "--preset",
        "sine",
        "--a",
        "1e3",
        "--s",
        "0",
        "--trace",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let t: f64 = csv_rows(&o)[0][2].parse().unwrap();
    assert!((t - 0.2670442619919343).abs() < 5e-9);
    let shot = std::fs::read_to_string(path).unwrap();
    assert!(shot.starts_with("t,u,v\n"));
    assert!(shot.lines().count() > 10);

    let o = fucik(&["zerofn", "--preset", "classical", "--a", "0.5", "--s", "0"]);
    assert_eq!(csv_rows(&o)[0][2], "beyond");
}

#[test]
fn asymptote_probes() {
    let o = fucik(&[
        "asymptote",
        "--preset",
        "classical",
        "--a-probe",
        "1e3",
        "--probes",
        "3",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["case"], "i");
    assert_eq!(v["probes"].as_array().unwrap().len(), 3);
    assert!((v["horizontal"].as_f64().unwrap() - 1.0).abs() < 1e-6);
}

#[test]
fn presets_are_listed() {
    let o = fucik(&["presets", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let names: Vec<&str> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|p| p["name"].as_str().unwrap())
        .collect();
    for name in [
        "classical",
        "sine",
        "example_3_13",
        "alternating_bumps",
        "bump",
        "remark_3_9",
    ] {
        assert!(names.contains(&name));
    }
}
