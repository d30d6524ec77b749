use std::process::{Command, Output};

fn cychom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cychom"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn partitions_text() {
    let o = cychom(&["partitions", "4"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("(4)>(3+1)>(2+2)>(2+1+1)>(1+1+1+1)"));
}

#[test]
fn hh_json_is_parseable() {
    let o = cychom(&["hh", "builtin:dual_numbers", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["data"]["hh_dims"], serde_json::json!([2, 1, 1, 1, 1, 1]));
    assert_eq!(v["claims"][0]["verdict"], "PASS");
    assert_eq!(v["parameters"]["seed"], 1729);
}

#[test]
fn flags_reach_the_report() {
    let o = cychom(&[
        "hc",
        "builtin:rationals",
        "--max-degree",
        "4",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["parameters"]["max_degree"], 4);
    assert_eq!(v["data"]["hc_dims"], serde_json::json!([1, 0, 1, 0]));
}

#[test]
fn undetermined_exits_nonzero() {
    // the bundled cyclic module stops at degree 4, too shallow for window 3
    let o = cychom(&["hp", "builtin:constant_cyclic"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("UNDETERMINED"));
}

#[test]
fn invalid_file_names_the_entry() {
    let path = concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/corpus/invalid/zero_denominator.json"
    );
    let o = cychom(&["hh", path]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("products[1].value.e"), "{err}");
}

#[test]
fn wrong_kind_is_an_error() {
    let o = cychom(&["check", "mv", "builtin:rationals"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn check_free_with_random_modules() {
    let o = cychom(&[
        "check",
        "free",
        "--random",
        "2",
        "--seed",
        "7",
        "--max-degree",
        "5",
    ]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("random 1: HP = 0"));
    assert!(stdout(&o).contains("seed 7"));
}

#[test]
fn reports_are_reproducible() {
    let run = || {
        let o = cychom(&["check", "free", "--random", "3", "--format", "json"]);
        let mut v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        v["elapsed_ms"] = serde_json::Value::Null;
        v
    };
    assert_eq!(run(), run());
}

#[test]
fn schema_and_corpus_listing() {
    let s = cychom(&["schema"]);
    let v: serde_json::Value = serde_json::from_slice(&s.stdout).unwrap();
    assert!(v["$schema"].is_string());
    let c = stdout(&cychom(&["corpus"]));
    assert!(c.lines().any(|l| l == "builtin:square_dual"));
}

#[test]
fn gapset_digits() {
    let o = cychom(&["gapset", "22012110202", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["data"]["members"], serde_json::json!([4, 8]));
}
