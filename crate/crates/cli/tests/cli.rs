use std::process::{Command, Output};

use serde_json::{json, Value};

fn pcomp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pcomp")).args(args).output().expect("binary runs")
}

fn lines(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).expect("every line is JSON"))
        .collect()
}

fn ok(args: &[&str]) -> Vec<Value> {
    let out = pcomp(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    lines(&out)
}

#[test]
fn validate_prints_the_flags() {
    let out = pcomp(&["validate", "--omega", "[2,3,1]"]);
    assert_eq!(
        String::from_utf8_lossy(&out.stdout).trim(),
        r#"{"is_algebraic":true,"is_essential":true,"is_key":true,"is_normal_form":true,"is_primitive":true}"#
    );
    let v = &ok(&["validate", "--omega", "[2,4]"])[0];
    assert_eq!(v["is_key"], json!(false));
    assert!(v["violations"].as_array().unwrap().contains(&json!("P2")));
}

#[test]
fn classify_report() {
    let v = &ok(&["classify", "--omega", "[4,6,3,3]"])[0];
    assert_eq!(v["p_g"], json!(1));
    assert_eq!(v["is_elliptic"], json!(true));
    assert_eq!(v["k_canonical"], json!(1));
}

#[test]
fn keyforms_and_expansion() {
    let v = &ok(&["keyforms", "--omega", "[2,3,1]", "--theta", "[1]", "--poly", "[[1,1,0,3]]"])[0];
    assert_eq!(v["key_forms_text"], json!(["x", "y", "y^2 - x^3"]));
    assert_eq!(v["key_forms"][2], json!([[-1, 1, 3, 0], [1, 1, 0, 2]]));
    // y^3 = y*g_2 + x^3 y
    assert_eq!(v["semidegree"], json!(9));
    assert_eq!(v["expansion"].as_array().unwrap().len(), 2);
}

#[test]
fn semidegree_from_file_and_series_agree() {
    let path = std::env::temp_dir().join(format!("pcomp-poly-{}.json", std::process::id()));
    std::fs::write(&path, "[[1,1,0,2],[-1,1,3,0],[2,1,1,1]]").unwrap();
    let p = path.to_str().unwrap();
    let v = &ok(&[
        "semidegree",
        "--poly",
        p,
        "--omega",
        "[2,3,1]",
        "--series",
        r#"{"body":[[1,1,3,2]],"r":[-1,1]}"#,
    ])[0];
    std::fs::remove_file(&path).unwrap();
    assert_eq!(v["agree"], json!(true));
    // delta(x y) = 5 beats delta(g_2) = 1
    assert_eq!(v["semidegree"], json!(5));
}

#[test]
fn brenton_groups_by_family() {
    let v = ok(&["brenton", "--bound", "6"]);
    let fams: Vec<&str> = v.iter().map(|l| l["family"].as_str().unwrap()).collect();
    assert_eq!(fams, ["P2", "P(1,1,2)", "P(1,2,3)", "F_1", "F_2", "F_3", "F_4", "F_5"]);
    assert_eq!(v[4]["ambient"], json!([1, 2, 3, 2]));
}

#[test]
fn normalize_round_trips() {
    let v = &ok(&["normalize", "--series", r#"{"body":[[1,1,3,2],[1,1,1,1]],"r":[-1,1]}"#])[0];
    assert_eq!(v["omega"], json!([2, 3, 1]));
    let again = &ok(&["normalize", "--series", &v["series"].to_string()])[0];
    assert_eq!(again["series"], v["series"]);
}

#[test]
fn reports_parse_for_every_command() {
    for args in [
        &["equations", "--omega", "[2,3,1]"][..],
        &["curve-infinity", "--omega", "[4,6,3,3]"],
        &["aut", "--omega", "[2,3,1]"],
        &["moduli", "--omega", "[4,6,3,1]"],
        &["moduli", "--omega", "[2,3,1]", "--essential"],
        &["moduli", "--omega", "[2,3]", "--curve"],
        &["g2a", "--omega", "[1,3]"],
    ] {
        assert_eq!(ok(args).len(), 1, "{args:?}");
    }
    let m = &ok(&["moduli", "--omega", "[2,3,1]", "--essential"])[0];
    assert_eq!(m["omega_check_sets"], json!([[2]]));
}

#[test]
fn enumerate_stream_revalidates() {
    let v = ok(&["enumerate", "--max-entry", "12", "--max-length", "4", "--filter", "non-algebraic,normal,primitive"]);
    assert!(v.iter().any(|l| l["omega"] == json!([9, 12, 2, 1])));
    for l in &v {
        let w = l["omega"].to_string();
        let again = &ok(&["validate", "--omega", &w])[0];
        for k in ["is_key", "is_primitive", "is_algebraic", "is_essential", "is_normal_form"] {
            assert_eq!(again[k], l[k], "{w} {k}");
        }
        assert_eq!(l["is_algebraic"], json!(false));
    }
    let one = pcomp(&["enumerate", "--max-entry", "9", "--max-length", "4", "--jobs", "1"]);
    let four = pcomp(&["enumerate", "--max-entry", "9", "--max-length", "4", "--jobs", "4"]);
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn exit_codes() {
    let out = pcomp(&["classify", "--omega", "[2,4]"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(lines(&out)[0]["error"]["kind"], json!("InvalidKeySequence"));

    let out = pcomp(&["enumerate", "--max-entry", "20000", "--max-length", "3"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(lines(&out)[0]["error"]["kind"], json!("BoundsTooLarge"));

    let out = pcomp(&["classify", "--omega", "[2,"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--omega"));

    let out = pcomp(&["enumerate", "--max-entry", "3", "--max-length", "3", "--filter", "shiny"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--filter"));

    assert_eq!(pcomp(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(pcomp(&["classify"]).status.code(), Some(2));
    assert_eq!(pcomp(&["semidegree", "--poly", "[[1,1,0,1]]"]).status.code(), Some(2));
}

#[test]
fn selftest_passes() {
    let v = ok(&["selftest", "--polys", "10"]);
    assert_eq!(v.last().unwrap()["passed"], json!(true));
}
