use std::f64::consts::PI;

use fucik::config::{load_file, ProblemSource};
use fucik::eigen::{eigenvalue, EigenRequest};
use fucik::{Error, Preset, Problem, Tolerances, WeightSelector};

fn write(name: &str, text: &str) -> std::path::PathBuf {
    let path = std::env::temp_dir().join(format!("fucik-{}-{name}.json", std::process::id()));
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn file_and_preset_describe_the_same_problem() {
    let path = write(
        "classical",
        &format!(r#"{{"interval": [0, {PI}], "m": {{"constant": 1}}, "n": {{"constant": 1}}}}"#),
    );
    let from_file: Problem = load_file(&path).unwrap();
    let from_preset: Problem = ProblemSource::Preset(Preset::Classical).load().unwrap();
    let tol = Tolerances::default();
    for k in 1..=3 {
        let a = eigenvalue(&from_file, &EigenRequest::full(&from_file, WeightSelector::M, k), &tol).unwrap();
        let b = eigenvalue(
            &from_preset,
            &EigenRequest::full(&from_preset, WeightSelector::M, k),
            &tol,
        )
        .unwrap();
        assert!((a.unwrap() - b.unwrap()).abs() < 1e-9);
    }
    std::fs::remove_file(path).unwrap();
}

#[test]
fn variable_coefficients_are_honoured() {
    // p = 4 halves the oscillation frequency: lambda_1 = 4 on [0, pi]
    let path = write(
        "scaled",
        &format!(r#"{{"interval": [0, {PI}], "p": {{"constant": 4}}, "m": {{"constant": 1}}}}"#),
    );
    let p: Problem = ProblemSource::File(path.clone()).load().unwrap();
    let l = eigenvalue(
        &p,
        &EigenRequest::full(&p, WeightSelector::M, 1),
        &Tolerances::default(),
    )
    .unwrap();
    assert!((l.unwrap() - 4.0).abs() < 1e-8);
    std::fs::remove_file(path).unwrap();
}

#[test]
fn missing_and_malformed_files() {
    let missing = std::env::temp_dir().join("fucik-does-not-exist.json");
    assert!(matches!(load_file::<f64>(&missing), Err(Error::Io(_))));
    let path = write("bad", r#"{"interval": [1, 0], "m": {"constant": 1}}"#);
    assert!(matches!(load_file::<f64>(&path), Err(Error::Config(_))));
    std::fs::remove_file(path).unwrap();
}
