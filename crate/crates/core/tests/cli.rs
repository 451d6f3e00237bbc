use std::io::Write;
use std::process::{Command, Output};

fn evenflows(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_evenflows"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json_file(contents: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    f
}

#[test]
fn minuscule_verdicts() {
    let o = evenflows(&["minuscule", "--n", "9", "--weight", "0,1,0,0,0,1,0,0,0", "--mode", "both"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("not even minuscule\n"));
    assert!(stdout(&o).contains("α_{6,2} + α_{6,1}"));

    let o = evenflows(&["minuscule", "--n", "4", "--weight", "1,0,1,0"]);
    assert_eq!(stdout(&o).trim(), "even minuscule");
    let o = evenflows(&["minuscule", "--n", "3", "--weight", "0,0,5", "--mode", "oracle"]);
    assert_eq!(stdout(&o).trim(), "even minuscule");
    let o = evenflows(&["minuscule", "--n", "3", "--weight", "0,0,-5", "--mode", "both"]);
    assert_eq!(stdout(&o).trim(), "even minuscule");
}

#[test]
fn minuscule_input_errors_exit_one() {
    for args in [
        vec!["minuscule", "--n", "3", "--weight", "0,-1,0"],
        vec!["minuscule", "--n", "3", "--weight", "1,0"],
        vec!["minuscule", "--n", "3", "--weight", "1,x,0"],
        vec!["minuscule", "--n", "3"],
        vec!["no-such-command"],
    ] {
        assert_eq!(evenflows(&args).status.code(), Some(1), "{args:?}");
    }
}

#[test]
fn minuscule_json() {
    let o = evenflows(&["--output", "json", "minuscule", "--n", "5", "--weight", "1,1,0,0,0", "--mode", "both"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["even_minuscule"], false);
    assert_eq!(v["mode"], "both");
    assert_eq!(v["witness"]["roots"][0]["height"], 2);
    assert_eq!(v["witness"]["lower"], serde_json::json!([0, 0, 1, 0, 0]));
}

#[test]
fn classify_examples() {
    let f = json_file(r#"{"n":4,"delta0":{},"middle":[{"c":1},{},{"c":1}]}"#);
    let o = evenflows(&["--output", "json", "classify", f.path().to_str().unwrap()]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!((v["very_stable"].as_bool(), v["even_very_stable"].as_bool()), (Some(false), Some(true)));

    let f = json_file(r#"{"n":4,"delta0":{},"middle":[{},{},{}]}"#);
    let o = evenflows(&["classify", f.path().to_str().unwrap()]);
    assert_eq!(stdout(&o), "very stable: true\neven very stable: true\n");

    let f = json_file(r#"{"n":4,"delta0":{},"middle":[{"c":1},{"c":1},{}]}"#);
    let o = evenflows(&["classify", f.path().to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("even very stable: false\nwitness odd-parity-pair at c: (1,2)"));
}

#[test]
fn classify_rejects_bad_files() {
    let f = json_file(r#"{"n":4,"middle":[{"c":-1},{},{}]}"#);
    assert_eq!(evenflows(&["classify", f.path().to_str().unwrap()]).status.code(), Some(1));
    let f = json_file("not json");
    assert_eq!(evenflows(&["classify", f.path().to_str().unwrap()]).status.code(), Some(1));
    assert_eq!(evenflows(&["classify", "/nonexistent/tuple.json"]).status.code(), Some(1));
}

#[test]
fn hecke_path_output() {
    let f = json_file(r#"{"n":4,"mu":{"c":[2,0,1,-1]}}"#);
    let o = evenflows(&["hecke", f.path().to_str().unwrap()]);
    assert_eq!(stdout(&o), "(c, 1)\n(c, 1)\n(c, 3)\n(c, -4)\n");
    let o = evenflows(&["--output", "json", "hecke", f.path().to_str().unwrap()]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["delta"]["delta0"]["c"], -1);
    assert_eq!(v["ops"].as_array().unwrap().len(), 4);
}

#[test]
fn poincare_and_multiplicity() {
    let o = evenflows(&["poincare", "GL4/GL2xGL2"]);
    assert_eq!(stdout(&o), "P(q) = 1+q+2q^2+q^3+q^4\neuler characteristic = 6\nsignature = 2\n");
    assert_eq!(evenflows(&["poincare", "GL4/GL3"]).status.code(), Some(1));
    assert_eq!(stdout(&evenflows(&["multiplicity", "--n", "4", "--k", "2"])).trim(), "6");
    assert_eq!(stdout(&evenflows(&["multiplicity", "--n", "4", "--k", "2", "--even"])).trim(), "2");
    assert_eq!(evenflows(&["multiplicity", "--n", "4", "--k", "1", "--even"]).status.code(), Some(1));
    assert_eq!(evenflows(&["multiplicity", "--n", "4", "--k", "4"]).status.code(), Some(1));
}

#[test]
fn verify_single_and_all() {
    let o = evenflows(&["--output", "json", "verify", "--case", "quaternionic", "--n", "2", "--k", "1"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["equal"], true);
    assert_eq!(v["coinvariant_series"], serde_json::json!({"num": [], "den": [2, 2]}));

    let a = evenflows(&["--output", "json", "verify", "--all", "--degree", "4"]);
    let b = evenflows(&["--output", "json", "verify", "--all", "--degree", "4"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    let reports = v.as_array().unwrap();
    assert!(reports.iter().all(|r| r["equal"] == true));
    assert_eq!(reports[0]["case"], "quaternionic");
    assert_eq!(reports.last().unwrap()["case"], "so4n");

    assert_eq!(evenflows(&["verify", "--case", "sphere"]).status.code(), Some(1));
}

#[test]
fn monomial_cap_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_evenflows"))
        .args(["verify", "--case", "quaternionic", "--n", "4", "--k", "2", "--degree", "10"])
        .env("EVENFLOWS_MONOMIAL_CAP", "5")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("resource cap"));
}
