use std::process::{Command, Output};

use bdforge::chevalley::ChevalleyAlgebra;
use bdforge::cli::tensor_to_json;
use bdforge::rootsys::{RootSystem, TypeLabel};
use serde_json::Value;

fn bdforge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bdforge")).args(args).output().expect("binary runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn omega_json(l: TypeLabel, n: usize) -> String {
    let g = ChevalleyAlgebra::new(RootSystem::new(l, n).unwrap());
    tensor_to_json(g.omega()).to_string()
}

#[test]
fn enumerate_a2() {
    let out = bdforge(&["enumerate", "--type", "A", "--rank", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["count"], 3);
    assert_eq!(r["triples"][1]["tau"]["1"], "2");
}

#[test]
fn full_suite_a1_passes() {
    let out = bdforge(&["full-suite", "--type", "A", "--rank", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["pass"], true);
}

#[test]
fn omega_is_rejected() {
    let omega = omega_json(TypeLabel::A, 2);
    let out = bdforge(&["verify", "--type", "A", "--rank", "2", "--r", &omega]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(report(&out)["verdict"], "CYBNonzero");

    let out = bdforge(&["bialg", "verify", "--type", "A", "--rank", "2", "--r", &omega]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(
        (r["antisymmetric"].clone(), r["cojacobi"].clone(), r["cocycle"].clone()),
        (true.into(), true.into(), true.into())
    );
}

#[test]
fn built_rmatrix_verifies() {
    let triple = r#"{"gamma1":[1],"gamma2":[2],"tau":{"1":"2"}}"#;
    let out = bdforge(&["bd", "build", "--type", "A", "--rank", "2", "--triple", triple]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out)["r"].to_string();
    let out = bdforge(&["verify", "--type", "A", "--rank", "2", "--r", &r]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["lambda"], "1");
}

#[test]
fn invalid_inputs_exit_2() {
    for args in [
        vec!["enumerate", "--type", "E", "--rank", "6"],
        vec!["enumerate", "--type", "D", "--rank", "3"],
        vec!["enumerate", "--type", "A"],
        vec!["descend", "sun", "--n", "3", "--d", "4"],
        vec!["descend", "sun", "--n", "7", "--d", "5"],
        vec!["verify", "--type", "A", "--rank", "1", "--r", "[[0, 9, \"1\"]]"],
        vec![
            "bd",
            "build",
            "--type",
            "A",
            "--rank",
            "2",
            "--triple",
            "{\"gamma1\":[1,2],\"gamma2\":[2,1],\"tau\":{\"1\":\"2\",\"2\":\"1\"}}",
        ],
    ] {
        assert_eq!(bdforge(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn twist_commands() {
    let out = bdforge(&["twist", "find-pi", "--type", "A", "--rank", "2"]);
    assert_eq!(report(&out)["pi"]["1"], "1");
    let out = bdforge(&[
        "twist",
        "find-pi",
        "--type",
        "A",
        "--rank",
        "2",
        "--triple",
        r#"{"gamma1":[1],"gamma2":[2],"tau":{"1":"2"}}"#,
    ]);
    assert_eq!(report(&out)["pi"]["1"], "2");
    let out = bdforge(&["twist", "cocycle", "--type", "A", "--rank", "2", "--d", "5", "--pi", r#"{"1":"2","2":"1"}"#]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["case2"], true);
    let bd = r#"{"gamma1":[1],"gamma2":[2],"tau":{"1":"2"}}"#;
    let out = bdforge(&[
        "twist",
        "cocycle",
        "--type",
        "A",
        "--rank",
        "2",
        "--triple",
        bd,
        "--d",
        "5",
        "--pi",
        r#"{"1":"1","2":"2"}"#,
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn descend_su3() {
    let out = bdforge(&["descend", "sun", "--n", "3", "--d", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["dim"], 8);
    assert_eq!(r["case"], "Case2");
    assert_eq!(r["round_trip"], true);
}

#[test]
fn output_is_deterministic() {
    let args = ["full-suite", "--type", "A", "--rank", "2", "--seed", "7"];
    let a = bdforge(&args);
    let b = Command::new(env!("CARGO_BIN_EXE_bdforge")).args(args).env("BDFORGE_THREADS", "1").output().unwrap();
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn output_flag_writes_file() {
    let path = std::env::temp_dir().join(format!("bdforge-cli-{}.json", std::process::id()));
    let out = bdforge(&["enumerate", "--type", "B", "--rank", "2", "--output", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(r["count"], 1);
    let _ = std::fs::remove_file(path);
}
