use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

use qres::cli::run;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name).to_string_lossy().into_owned()
}

fn qres(args: &[&str]) -> (i32, String, String) {
    run(std::iter::once("qres").chain(args.iter().copied()))
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let (code, out, err) = qres(&full);
    assert_eq!(code, 0, "{err}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn charpoly_of_the_cusp() {
    let v = json(&["charpoly", "--gen", "one-branch:2,3"]);
    assert_eq!(v["phi"], serde_json::json!({"6": 1}));
    let (code, out, _) = qres(&["charpoly", "--gen", "one-branch:2,3"]);
    assert_eq!(code, 0);
    assert!(out.contains("canonical: {6: 1}"), "{out}");
}

#[test]
fn zariski_member_report() {
    let v = json(&["mhs", "--gen", "two-branch:21,44,14,11"]);
    assert_eq!(v["delta"]["degree"], 1451);
    let (_, text, _) = qres(&["mhs", "--gen", "two-branch:21,44,14,11"]);
    assert!(text.contains("gr_0  dim    0"), "{text}");
    assert!(text.contains("gr_1  dim 1450"), "{text}");
    assert!(text.contains("gr_2  dim    1"), "{text}");
    assert!(text.contains("hodge (725, 725)"), "{text}");
    let (_, other, _) = qres(&["mhs", "--gen", "two-branch:33,28,22,7"]);
    assert_eq!(text, other);
}

#[test]
fn yls_cusp_semistable() {
    let (code, out, err) = qres(&["semistable", &data("yls_cusp.json")]);
    assert_eq!(code, 0, "{err}");
    assert!(out.contains("gr_4 dim 0"), "{out}");
}

#[test]
fn shipped_files_validate() {
    for name in ["one_branch.json", "two_branch.json", "yls_cusp.json", "yls_two_branch.json", "multibranch.json"] {
        let (code, out, err) = qres(&["--strict", "validate", &data(name)]);
        assert_eq!(code, 0, "{name}: {err}");
        assert!(out.starts_with("valid"), "{name}: {out}");
    }
}

#[test]
fn exit_codes() {
    assert_eq!(qres(&["charpoly", "--gen", "two-branch:4,1,2,3"]).0, 1);
    assert_eq!(qres(&["charpoly", "--gen", "no-such-family:1"]).0, 1);
    assert_eq!(qres(&["frobnicate"]).0, 1);
    assert_eq!(qres(&["--help"]).0, 0);
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"matrix": [[2]], "e": 1}"#).unwrap();
    assert_eq!(qres(&["jordan", bad.to_str().unwrap()]).0, 2);
    std::fs::write(&bad, r#"{"levels": {"2": {"1": -1}}}"#).unwrap();
    assert_eq!(qres(&["jordan", bad.to_str().unwrap()]).0, 2);
}

#[test]
fn strict_schema() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("extra.json");
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(data("one_branch.json")).unwrap()).unwrap();
    v["note"] = Value::from("hand edited");
    std::fs::write(&path, v.to_string()).unwrap();
    let p = path.to_str().unwrap();
    assert_eq!(qres(&["validate", p]).0, 0);
    let (code, _, err) = qres(&["--strict", "validate", p]);
    assert_eq!(code, 1);
    assert!(err.contains("/note"), "{err}");
    let out = Command::new(env!("CARGO_BIN_EXE_qres")).args(["validate", p]).env("QRES_STRICT", "1").output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let out = Command::new(env!("CARGO_BIN_EXE_qres")).args(["validate", p]).env("QRES_STRICT", "0").output().unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn binary_output_is_deterministic() {
    let runs: Vec<_> = (0..3)
        .map(|_| Command::new(env!("CARGO_BIN_EXE_qres")).args(["--format", "json", "mhs", "--gen", "two-branch:2,3,4,1"]).output().unwrap())
        .collect();
    assert!(runs[0].status.success());
    assert!(runs.windows(2).all(|w| w[0].stdout == w[1].stdout));
    assert!(!runs[0].stdout.is_empty());
}

#[test]
fn other_commands() {
    let (code, out, _) = qres(&["normalize", "2:1,1"]);
    assert_eq!((code, out.trim()), (0, "X(2; 1, 1) -> X(2; 1, 1) (rescale [1, 1])"));
    let (code, out, _) = qres(&["--format", "dot", "dualgraph", "--gen", "two-branch:2,3,4,1"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("graph") && out.trim_end().ends_with('}'), "{out}");
    assert_eq!(qres(&["blowup2", "3:1,2", "--omega", "1,1"]).0, 0);
    assert_eq!(qres(&["blowup3", "smooth:3", "--omega", "1,2,3"]).0, 0);
    assert_eq!(qres(&["jordan", &data("extra/jordan_matrix.json")]).0, 0);
    let (code, out, err) = qres(&["mhs", &data("yls_two_branch.json"), "--aux", &data("extra/yls_aux.json")]);
    assert_eq!(code, 0, "{err}");
    assert!(out.contains("gr_4"), "{out}");
    assert_eq!(qres(&["mhs", "--gen", "multibranch:2,3,4,5,6,7"]).0, 0);
}
