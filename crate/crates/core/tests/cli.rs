use std::process::Command;

use serde_json::Value;

fn run(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_loopfusion"))
        .args(args)
        .env_remove("LOOPFUSION_WEYL_CAP")
        .output()
        .unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

const INVOCATIONS: [&[&str]; 9] = [
    &["roots", "--algebra", "G2"],
    &["dim", "--algebra", "B2", "--weights", "1,0;0,1"],
    &["tensor", "--algebra", "A2", "--weights", "1,0;0,1"],
    &["reduce", "--algebra", "A1", "--level", "1", "--weights", "3"],
    &["fusion", "--algebra", "G2", "--level", "2", "--weights", "1,0;1,0", "--method", "s"],
    &["verlinde", "--algebra", "A2", "--level", "1", "--genus", "2"],
    &["report", "--algebra", "B2", "--level", "1", "--genus", "1", "--weights", "0,1", "--boundary", "0,1"],
    &["induce", "--algebra", "A2", "--level", "1", "--weights", "2,2"],
    &["check", "--algebra", "A1", "--level", "2", "--genus", "2"],
];

#[test]
fn every_subcommand_emits_the_envelope() {
    for args in INVOCATIONS {
        let mut json = args.to_vec();
        json.extend(["--format", "json"]);
        let (code, out) = run(&json);
        assert_eq!(code, 0, "{args:?}");
        let v: Value = serde_json::from_str(&out).unwrap();
        let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
        assert_eq!(keys, ["algebra", "level", "result", "meta"], "{args:?}");
        assert!(v["meta"]["kappa"].is_u64());
    }
}

#[test]
fn table_output_is_nonempty() {
    for args in INVOCATIONS {
        let (code, out) = run(args);
        assert_eq!(code, 0, "{args:?}");
        assert!(out.ends_with('\n') && out.lines().count() >= 2, "{args:?}: {out}");
    }
}

#[test]
fn json_output_is_deterministic() {
    let args = ["tensor", "--algebra", "G2", "--weights", "1,0;1,0", "--format", "json"];
    assert_eq!(run(&args), run(&args));
}

#[test]
fn methods_agree() {
    let base = ["fusion", "--algebra", "B2", "--level", "2", "--weights", "0,1;1,1", "--format", "json"];
    let (_, kw) = run(&base);
    let mut s = base.to_vec();
    s.extend(["--method", "s"]);
    assert_eq!(run(&s).1, kw);
}

#[test]
fn weyl_cap_can_be_raised() {
    let args = ["roots", "--algebra", "E7", "--format", "json"];
    let (code, _) = run(&args);
    assert_eq!(code, 0);
    let out = Command::new(env!("CARGO_BIN_EXE_loopfusion"))
        .args(["tensor", "--algebra", "E7", "--weights", "0,0,0,0,0,0,1;0,0,0,0,0,0,0", "--format", "json"])
        .env("LOOPFUSION_WEYL_CAP", "3000000")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let capped = run(&["tensor", "--algebra", "E7", "--weights", "0,0,0,0,0,0,1;0,0,0,0,0,0,0"]);
    assert_eq!(capped.0, 5);
}
