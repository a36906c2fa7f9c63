use std::process::{Command, Output};

fn dimer(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dimer"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn fixtures_list_names_five() {
    let o = dimer(&["fixtures", "--list"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["results"]["names"].as_array().unwrap().len(), 5);
}

#[test]
fn nested_two_is_not_normal() {
    let o = dimer(&["normality", "fixture:fig_nested(2)"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["results"]["summary"], "not normal");
}

#[test]
fn malformed_quiver_is_input_error() {
    let dir = std::env::temp_dir().join(format!("dimer-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.json");
    std::fs::write(&path, "{\"vertices\": 2, \"arrows\": [").unwrap();
    let o = dimer(&["validate", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("error"));
}

#[test]
fn usage_errors_exit_three() {
    assert_eq!(dimer(&["bogus"]).status.code(), Some(3));
    assert_eq!(dimer(&["--bounds", "7", "fixtures"]).status.code(), Some(3));
    assert_eq!(
        dimer(&["validate", "fixture:no_such"]).status.code(),
        Some(3)
    );
}

#[test]
fn output_is_byte_identical_across_runs() {
    for args in [
        vec!["matchings", "fixture:fig_deformation"],
        vec!["cycle-algebra", "fixture:fig_iso_R", "--text"],
        vec!["normality", "fixture:fig_nested(2)", "--seed", "5"],
        vec!["eq", "fixture:fig_deformation", "0,5,5,1,2", "3,5,5,4,2"],
    ] {
        let runs: Vec<Vec<u8>> = (0..3).map(|_| dimer(&args).stdout).collect();
        assert!(!runs[0].is_empty());
        assert!(runs.iter().all(|r| r == &runs[0]), "{args:?}");
    }
}

#[test]
fn contract_writes_a_valid_target() {
    let dir = std::env::temp_dir().join(format!("dimer-contract-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("target.json");
    let o = dimer(&[
        "contract",
        "fixture:fig_deformation",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let o = dimer(&["validate", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
}
