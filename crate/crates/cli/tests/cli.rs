use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn liecohom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_liecohom")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let o = liecohom(&full);
    let v = serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("bad json ({e}): {}", stdout(&o)));
    (o.status.code().unwrap(), v)
}

fn betti(v: &Value) -> Vec<u64> {
    v["betti"].as_array().unwrap().iter().map(|b| b.as_u64().unwrap()).collect()
}

fn n(v: &Value) -> u64 {
    v.as_u64().unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn cohomology_presets() {
    let (code, v) = json(&["cohomology", "--algebra", "heisenberg3", "--module", "trivial:1"]);
    assert_eq!(code, 0);
    assert_eq!(betti(&v), [1, 2, 2, 1]);
    assert_eq!(v["reduced_equals_unreduced"], true);

    let (_, v) = json(&["cohomology", "--algebra", "abelian:4", "--module", "trivial:1"]);
    assert_eq!(betti(&v), [1, 4, 6, 4, 1]);

    let (_, v) = json(&["cohomology", "--algebra", "sl2", "--subalgebra", "compact", "--module", "trivial:1"]);
    assert_eq!(betti(&v), [1, 0, 1]);
    let degrees = v["degrees"].as_array().unwrap();
    assert_eq!(degrees[1]["dim_cochains"], 0);
    assert_eq!(degrees[2]["dim_cocycles"], 1);
}

#[test]
fn table_numbers_match_json() {
    let t = stdout(&liecohom(&["cohomology", "--algebra", "heisenberg3"]));
    let (_, v) = json(&["cohomology", "--algebra", "heisenberg3"]);
    for d in v["degrees"].as_array().unwrap() {
        let line = format!(
            "{:>6} {:>8} {:>8} {:>12} {:>6}",
            n(&d["degree"]),
            n(&d["dim_cochains"]),
            n(&d["dim_cocycles"]),
            n(&d["dim_coboundaries"]),
            n(&d["betti"])
        );
        assert!(t.contains(&line), "missing {line:?} in\n{t}");
    }
}

#[test]
fn representatives_are_optional() {
    let (_, v) = json(&["cohomology", "--algebra", "heisenberg3"]);
    assert!(v["degrees"][1].get("representatives").is_none());
    let (_, v) = json(&["cohomology", "--algebra", "heisenberg3", "--representatives"]);
    assert_eq!(v["degrees"][1]["representatives"].as_array().unwrap().len(), 2);
}

#[test]
fn max_degree_is_bounded_by_quotient() {
    let o = liecohom(&["cohomology", "--algebra", "sl2", "--subalgebra", "compact", "--max-degree", "3"]);
    assert_eq!(o.status.code(), Some(2));
    let (code, v) = json(&["cohomology", "--algebra", "abelian:3", "--max-degree", "1"]);
    assert_eq!(code, 0);
    assert_eq!(betti(&v), [1, 3]);
}

#[test]
fn validate_cases() {
    let o = liecohom(&["validate", "--algebra", "sl2", "--module", "natural"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));

    let dir = tempfile::tempdir().unwrap();
    let broken = write(
        dir.path(),
        "broken.json",
        r#"{"dim": 3, "basis": ["X","Y","Z"], "brackets": {"0,1": {"2": "1"}, "0,2": {"0": "1"}}}"#,
    );
    let (code, v) = json(&["validate", "--algebra", &broken]);
    assert_eq!(code, 1);
    let jacobi = &v["checks"][0];
    assert_eq!(jacobi["check"], "jacobi");
    assert_eq!(jacobi["failures"][0]["location"], "triple (0,1,2)");

    let o = liecohom(&["validate", "--algebra", dir.path().join("missing.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));

    let garbled = write(dir.path(), "garbled.json", "{\n  \"dim\": 2,\n  \"brackets\": {\n");
    let o = liecohom(&["validate", "--algebra", &garbled]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 4"));

    let o = liecohom(&["validate", "--algebra", "sl2", "--subalgebra", "1,2"]);
    assert_eq!(o.status.code(), Some(1));
    let o = liecohom(&["validate", "--algebra", "sl2", "--subalgebra", "0,1"]);
    assert_eq!(o.status.code(), Some(1), "non-reductive h fails validation");
}

#[test]
fn module_files() {
    let dir = tempfile::tempdir().unwrap();
    let natural = write(
        dir.path(),
        "natural.json",
        r#"{"dim": 2, "action": [
            {"rows": 2, "cols": 2, "entries": [[0,0,"1"],[1,1,"-1"]]},
            {"rows": 2, "cols": 2, "entries": [[0,1,"1"]]},
            {"rows": 2, "cols": 2, "entries": [[1,0,"1"]]}]}"#,
    );
    let (code, v) = json(&["cohomology", "--algebra", "sl2", "--module", &natural]);
    assert_eq!(code, 0);
    assert_eq!(betti(&v), [0, 0, 0, 0]);
    let bad = write(
        dir.path(),
        "bad.json",
        r#"{"dim": 2, "action": [
            {"rows": 2, "cols": 2, "entries": [[0,0,"1"]]},
            {"rows": 2, "cols": 2, "entries": [[0,1,"1"]]},
            {"rows": 2, "cols": 2, "entries": [[1,0,"1"]]}]}"#,
    );
    let (code, v) = json(&["validate", "--algebra", "sl2", "--module", &bad]);
    assert_eq!(code, 1);
    assert_eq!(v["checks"].as_array().unwrap().last().unwrap()["check"], "representation");
}

#[test]
fn verify_suite() {
    let (code, v) = json(&["verify", "--algebra", "heisenberg3", "--truncation", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["pass"], true);
    let verdicts = v["verdicts"].as_array().unwrap();
    assert!(verdicts.iter().all(|x| x["pass"] == true && x["residual_norm_zero"] == true));
    assert!(verdicts.iter().any(|x| x["check"] == "standard-dd-zero" && x["window"]["vacuous"] == false));

    let (code, v) = json(&["verify", "--algebra", "heisenberg3", "--truncation", "1"]);
    assert_eq!(code, 0);
    let dd = v["verdicts"].as_array().unwrap().iter().find(|x| x["check"] == "twisted-dd-zero").unwrap();
    assert_eq!(dd["window"]["vacuous"], true);
    assert_eq!(dd["window"]["evaluated_up_to"], 0);

    let (code, v) = json(&["verify", "--algebra", "heisenberg3", "--truncation", "3", "--unsigned-bracket-sum"]);
    assert_eq!(code, 1);
    let failed: Vec<&str> =
        v["verdicts"].as_array().unwrap().iter().filter(|x| x["pass"] == false).map(|x| x["check"].as_str().unwrap()).collect();
    assert!(failed.contains(&"standard-dd-zero"), "{failed:?}");
    assert!(!failed.contains(&"twisted-dd-zero"));
}

#[test]
fn shapiro_reports_h_cohomology() {
    let (code, v) = json(&["shapiro", "--algebra", "heisenberg3", "--subalgebra", "center", "--truncation", "2"]);
    assert_eq!(code, 0);
    let h: Vec<u64> = v["h_cohomology"].as_array().unwrap().iter().map(|d| d["betti"].as_u64().unwrap()).collect();
    assert_eq!(h, [1, 1]);
    assert!(v["note"].as_str().unwrap().contains("not computed"));
    assert!(!v["verdicts"].as_array().unwrap().is_empty());

    let (code, v) = json(&["shapiro", "--algebra", "gl2", "--subalgebra", "0,1,2", "--module", "natural", "--truncation", "2"]);
    assert_eq!(code, 0);
    let h: Vec<u64> = v["h_cohomology"].as_array().unwrap().iter().map(|d| d["betti"].as_u64().unwrap()).collect();
    assert_eq!(h, [0, 0, 0, 0]);
}

#[test]
fn homotopy_files() {
    let dir = tempfile::tempdir().unwrap();
    let exact = write(
        dir.path(),
        "exact.json",
        r#"{"spaces": [1, 2, 1], "maps": [
            {"rows": 2, "cols": 1, "entries": [[0,0,"1"]]},
            {"rows": 1, "cols": 2, "entries": [[0,1,"1"]]}]}"#,
    );
    let (code, v) = json(&["homotopy", "--complex", &exact]);
    assert_eq!(code, 0);
    assert_eq!(v["homotopy_check"]["pass"], true);
    assert_eq!(v["homotopy"][0]["entries"][0], serde_json::json!([0, 0, "1"]));
    let t = stdout(&liecohom(&["homotopy", "--complex", &exact]));
    assert!(t.contains("s^0 (1x2):\n  [1, 0]"), "{t}");

    let non_exact = write(
        dir.path(),
        "non_exact.json",
        r#"{"spaces": [0, 2, 1], "maps": [
            {"rows": 2, "cols": 0, "entries": []},
            {"rows": 1, "cols": 2, "entries": []}]}"#,
    );
    let (code, v) = json(&["homotopy", "--complex", &non_exact]);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["kind"], "NotExact");
    assert_eq!(v["error"]["degree"], 0);

    let empty = write(dir.path(), "empty.json", r#"{"spaces": [], "maps": []}"#);
    let (code, _) = json(&["homotopy", "--complex", &empty]);
    assert_eq!(code, 0);
}

#[test]
fn output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        let o = liecohom(&["verify", "--algebra", "sl2", "--module", "adjoint", "--truncation", "2", "--format", "json", "--out", p.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}
