use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn hochlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hochlab"))
        .args(args)
        .current_dir(fixtures())
        .env_remove("HOCHLAB_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut all = args.to_vec();
    all.extend(["--output", "json"]);
    let o = hochlab(&all);
    let value = serde_json::from_str(&stdout(&o)).unwrap_or_else(|e| panic!("{e}: {}", stderr(&o)));
    (value, o.status.code().unwrap())
}

#[test]
fn validate_dual_numbers() {
    let o = hochlab(&["validate", "--algebra", "dual_numbers.json"]);
    assert_eq!(o.status.code(), Some(0));
    let (v, _) = json(&["validate", "--algebra", "dual_numbers.json"]);
    assert_eq!(v["result"]["algebra"]["violations"], serde_json::json!([]));
}

#[test]
fn cohomology_of_dual_numbers() {
    let o = hochlab(&["cohomology", "--algebra", "dual_numbers.json", "--module", "regular", "--max-degree", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("dims: 2,1,1,1"));
    let (v, _) = json(&["cohomology", "--algebra", "dual_numbers_f2.json", "--max-degree", "4"]);
    assert_eq!(v["result"]["dims"], serde_json::json!([2, 2, 2, 2, 2]));
}

#[test]
fn main_theorem_agrees_for_each_pair() {
    let args = ["verify-main-theorem", "--algebra", "dual_numbers.json", "--module", "regular", "--degree", "2", "--seed", "7"];
    let o = hochlab(&args);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let verdicts: Vec<&str> = text.lines().filter(|l| l.starts_with("sample ")).collect();
    // 5 samples × a 2-dimensional relative center
    assert_eq!(verdicts.len(), 10);
    assert!(verdicts.iter().all(|l| l.ends_with("AGREE (difference is a coboundary)")));
}

#[test]
fn main_theorem_over_twisted_and_f2() {
    for (algebra, module) in [("dual_numbers.json", "twisted:sign_twist.json"), ("dual_numbers_f2.json", "regular")] {
        for degree in ["1", "3"] {
            let (v, code) = json(&["verify-main-theorem", "--algebra", algebra, "--module", module, "--degree", degree]);
            assert_eq!(code, 0, "{algebra} {module} {degree}");
            assert_eq!(v["result"]["all_agree"], Value::Bool(true));
        }
    }
}

#[test]
fn json_reports_are_byte_identical_and_fingerprinted() {
    let args = ["verify-main-theorem", "--algebra", "dual_numbers.json", "--module", "twisted_dual_numbers.json", "--degree", "2", "--seed", "11", "--output", "json"];
    let first = stdout(&hochlab(&args));
    let second = stdout(&hochlab(&args));
    assert_eq!(first, second);
    let v: Value = serde_json::from_str(&first).unwrap();
    assert_eq!(v["field"], serde_json::json!({"kind": "rational"}));
    let inputs = v["inputs"].as_array().unwrap();
    let paths: Vec<&str> = inputs.iter().map(|i| i["path"].as_str().unwrap()).collect();
    assert_eq!(paths, ["dual_numbers.json", "twisted_dual_numbers.json"]);
    assert!(inputs.iter().all(|i| i["sha256"].as_str().unwrap().len() == 64));

    let other = stdout(&hochlab(&[&args[..9], &["--seed", "12", "--output", "json"]].concat()));
    assert_ne!(first, other);
}

#[test]
fn parse_errors_exit_two_and_name_file_line_and_field() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.json");
    std::fs::write(&path, "{\n  \"field\": {\"kind\": \"prime\", \"p\": 3},\n  \"dim\": \"two\"\n}\n").unwrap();
    let o = hochlab(&["center", "--algebra", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.contains("broken.json:3:"), "{err}");
    assert!(err.contains("field `dim`"), "{err}");
}

#[test]
fn invalid_algebras_are_reported() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("nonassoc.json");
    // x·x = 1 + x is fine, but the unit claims 1·x = 0
    std::fs::write(
        &path,
        r#"{"field": {"kind": "rational"}, "dim": 2, "basis": ["1", "x"], "unit": ["1", "0"], "table": [[0, 0, 0, "1"], [1, 0, 1, "1"]]}"#,
    )
    .unwrap();
    let p = path.to_str().unwrap();
    let (v, code) = json(&["validate", "--algebra", p]);
    assert_eq!(code, 2);
    assert!(!v["result"]["algebra"]["violations"].as_array().unwrap().is_empty());
    let o = hochlab(&["cohomology", "--algebra", p]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("invalid algebra"));
}

#[test]
fn budget_exhaustion_exits_three() {
    let o = hochlab(&["cohomology", "--algebra", "dual_numbers.json", "--budget", "50"]);
    assert_eq!(o.status.code(), Some(3));
    let o = Command::new(env!("CARGO_BIN_EXE_hochlab"))
        .args(["cohomology", "--algebra", "dual_numbers.json"])
        .current_dir(fixtures())
        .env("HOCHLAB_BUDGET", "50")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn unknown_flags_are_rejected() {
    let o = hochlab(&["center", "--algebra", "dual_numbers.json", "--degree", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("unexpected argument"));
}

#[test]
fn centers() {
    let (v, _) = json(&["center", "--algebra", "matrix_2x2.json"]);
    assert_eq!(v["result"]["dim"], 1);
    let (v, _) = json(&["relcenter", "--algebra", "dual_numbers.json", "--module", "twisted:nil_twist.json"]);
    assert_eq!(v["result"]["dim"], 1);
    assert_eq!(v["result"]["center_dim"], 2);
}

#[test]
fn brackets_on_both_sides_agree_for_the_euler_derivation() {
    let (cochain_side, _) = json(&["bracket", "--algebra", "dual_numbers.json", "--degree", "1"]);
    let entries = cochain_side["result"]["entries"].as_array().unwrap();
    let classes: Vec<&Value> = entries.iter().map(|e| &e["bracket_class"]).collect();
    for file in ["euler_extension.json", "euler_derivation.json"] {
        let (ext_side, code) = json(&["ext-bracket", "--algebra", "dual_numbers.json", "--extension", file]);
        assert_eq!(code, 0);
        let ext: Vec<&Value> = ext_side["result"]["entries"].as_array().unwrap().iter().map(|e| &e["class"]).collect();
        assert_eq!(ext, classes, "{file}");
    }
}

#[test]
fn chain_criteria_expose_the_vanishing_pattern() {
    let (v, _) = json(&["chain-criteria", "--algebra", "dual_numbers.json", "--max-degree", "2"]);
    assert_eq!(v["result"]["chain"]["outcomes"].as_array().unwrap().len(), 4);
    let pattern = v["result"]["vanishing_pattern"].as_array().unwrap();
    assert!(pattern.iter().any(|p| p["module"] == "regular" && p["vanishes"] == false));
    let (v, _) = json(&["chain-criteria", "--algebra", "upper_triangular.json", "--max-degree", "2"]);
    assert!(v["result"]["vanishing_pattern"].as_array().unwrap().iter().all(|p| p["vanishes"] == true));
}

#[test]
fn braiding_reports() {
    let (v, code) = json(&["braiding", "--algebra", "matrix_2x2.json", "--target", "algebra"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["braiding"]["outcomes"][0]["holds"], true);
    let (v, _) = json(&["braiding", "--algebra", "dual_numbers.json"]);
    assert_eq!(v["result"]["braiding"]["outcomes"][0]["holds"], false);
    assert_eq!(v["result"]["ring_epi"]["outcomes"][0]["holds"], false);
}

#[test]
fn ed_check_covers_zero_and_euler_derivations() {
    let (v, code) = json(&["ed-check", "--algebra", "dual_numbers.json"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["derivations"].as_array().unwrap().len(), 2);
    let (_, code) = json(&["ed-check", "--algebra", "dual_numbers.json", "--cochain", "euler_derivation.json"]);
    assert_eq!(code, 0);
}

#[test]
fn morita_poisson_and_axioms() {
    let (v, code) = json(&["morita", "--algebra", "dual_numbers.json", "--size", "2"]);
    assert_eq!(code, 0);
    assert!(v["result"]["outcomes"].as_array().unwrap().iter().all(|o| o["holds"] == true));
    let (_, code) = json(&["poisson", "--algebra", "dual_numbers_f3.json"]);
    assert_eq!(code, 0);
    let o = hochlab(&["poisson", "--algebra", "dual_numbers_f2.json"]);
    assert_eq!(o.status.code(), Some(2));
    let (v, code) = json(&["axioms", "--algebra", "cyclic2_f2.json", "--max-degree", "2"]);
    assert_eq!(code, 0);
    assert!(v["result"]["extension_module_evidence"].is_object());
}

#[test]
fn poisson_on_the_euler_bivector() {
    let (v, code) = json(&["poisson", "--algebra", "two_dual_numbers.json", "--cochain", "euler_bivector.json"]);
    assert_eq!(code, 0, "{v}");
    let text = v.to_string();
    assert!(text.contains("antisymmetry") && text.contains("jacobi"), "{text}");
}
