use std::process::{Command, Output};

use serde_json::Value;

fn verify(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kappa-verify")).args(args).output().expect("binary runs")
}

fn write_spec(dir: &tempfile::TempDir, text: &str) -> String {
    let path = dir.path().join("run.spec");
    std::fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn light_cone_weyl_passes_with_json_report() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_spec(&dir, "n=2\nmetric=[[0,1],[1,0]]\ndeformation=weyl\nlayer=all\nsamples=3\n");
    let json = dir.path().join("report.json");
    let out = verify(&["--spec", &spec, "--json", json.to_str().unwrap(), "--order", "3"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.ends_with("overall: PASS\n"));

    let report: Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    let body = &report["body"];
    assert_eq!(body["schema_version"], 1);
    assert_eq!(body["config"]["order"], 3);
    assert_eq!(body["config"]["deformation"], "weyl");
    assert!(report["header"]["unix_time"].as_u64().unwrap() > 0);
    let checks = body["checks"].as_array().unwrap();
    assert!(checks.iter().all(|c| c["status"] == "pass"));
    let cybe = checks.iter().find(|c| c["name"] == "classical.cybe").unwrap();
    assert_eq!(cybe["detail"], "holds: [r,r] = 0");
}

#[test]
fn minkowski_weyl_group_fails_on_jacobi() {
    let out = verify(&["--metric", "minkowski", "--n", "3", "--deformation", "weyl", "--layer", "group", "--samples", "0"]);
    assert_eq!(out.status.code(), Some(1));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("FAIL  group.jacobi"));
    assert!(stdout.contains("PASS  group.weyl_jacobiator_form"));
    assert!(stdout.ends_with("overall: FAIL\n"));
}

#[test]
fn minkowski_poincare_reports_modified_cybe() {
    let out = verify(&["--metric", "[[1,0,0],[0,-1,0],[0,0,-1]]", "--layer", "classical", "--samples", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("classical.cybe (1 checked, 0 failed) [modified: [r,r] != 0 but ad-invariant]"));
}

#[test]
fn quiet_suppresses_summary() {
    let out = verify(&["--metric", "light-cone", "--n", "2", "--layer", "classical", "--samples", "1", "--quiet"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
}

#[test]
fn report_body_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let mut bodies = Vec::new();
    for k in 0..2 {
        let path = dir.path().join(format!("r{k}.json"));
        let args = ["--metric", "minkowski", "--n", "2", "--deformation", "weyl", "--samples", "4", "--seed", "9", "--order", "2", "--quiet"];
        let mut args: Vec<&str> = args.to_vec();
        let p = path.to_string_lossy().into_owned();
        args.extend(["--output", &p]);
        verify(&args);
        let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
        bodies.push(v["body"].to_string());
    }
    assert_eq!(bodies[0], bodies[1]);
}

#[test]
fn configuration_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        ("n=2\nmetric=[[1,0],[0,0]]\n", "metric is singular"),
        ("n=2\nmetric=[[1,2],[3,4]]\n", "metric is not symmetric"),
        ("n=2\nmetric=[[1,0],[0,-1]]\nflavour=up\n", "line 3: unknown key `flavour`"),
        ("n=2\nmetric [[1,0],[0,-1]]\n", "line 2:"),
        ("n=2\nmetric=[[1,0],[0,-1]]\ndeformation=galilei\n", "line 3: deformation"),
        ("n=3\nmetric=[[1,0],[0,-1]]\n", "but n = 3"),
        ("n=7\nmetric=minkowski\n", "exceeds the supported maximum"),
    ];
    for (text, message) in cases {
        let spec = write_spec(&dir, text);
        let out = verify(&["--spec", &spec]);
        assert_eq!(out.status.code(), Some(2), "{text}");
        let stderr = String::from_utf8(out.stderr).unwrap();
        assert!(stderr.contains(message), "{text}: {stderr}");
    }
    let out = verify(&["--spec", "/nonexistent/run.spec"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn flags_override_spec_values() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_spec(&dir, "n=2\nmetric=[[1,0],[0,-1]]\ndeformation=weyl\nlayer=group\nsamples=0\norder=2\n");
    assert_eq!(verify(&["--spec", &spec, "--quiet"]).status.code(), Some(1));
    assert_eq!(verify(&["--spec", &spec, "--quiet", "--deformation", "poincare"]).status.code(), Some(0));
}
