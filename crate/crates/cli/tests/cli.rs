use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn glt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_glt"))
        .args(args)
        .stdin(Stdio::null())
        .output()
        .expect("binary runs")
}

fn glt_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_glt"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is one JSON document")
}

fn ok_payload(args: &[&str]) -> Value {
    let out = glt(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["schema"], "glt.result.v1");
    assert_eq!(v["status"], "ok");
    v["payload"].clone()
}

#[test]
fn dim_poly_of_standard_object() {
    let p = ok_payload(&["dim-poly", r#"{"lambda_bullet":[1],"lambda_circ":[]}"#]);
    assert_eq!(p["poly"], "t");
    assert_eq!(p["methods_agree"], true);
    assert_eq!(p["schema"], "glt.dim-poly.v1");
}

#[test]
fn witness_primes_of_quadratic() {
    let p = ok_payload(&["witness-primes", r#"{"q":[-2,0,1],"bound":7}"#]);
    let pairs = p["pairs"].as_array().unwrap();
    assert!(pairs.contains(&serde_json::json!([3, 7])));
}

#[test]
fn hom_dim_matches_oracle() {
    let p = ok_payload(&["hom-dim", r#"{"src":[1,1],"dst":[1,1],"n":3}"#]);
    assert_eq!(p["diagrammatic"], 2);
    assert_eq!(p["oracle"], 2);
}

#[test]
fn gram_det_of_one_one() {
    let p = ok_payload(&["gram-det", r#"{"r":1,"s":1}"#]);
    assert_eq!(p["det_string"], "t^4 - t^2");
}

#[test]
fn stdin_and_dash_inputs() {
    for args in [&["witness-primes"][..], &["witness-primes", "-"][..]] {
        let out = glt_stdin(args, r#"{"q":[-2,0,1],"bound":7}"#);
        assert_eq!(out.status.code(), Some(0));
        assert_eq!(json(&out)["payload"]["odd_primes"], serde_json::json!([7]));
    }
}

#[test]
fn file_input() {
    let path = std::env::temp_dir().join(format!("glt-cli-test-{}.json", std::process::id()));
    std::fs::write(&path, r#"{"src":[1,0],"dst":[1,0]}"#).unwrap();
    let p = ok_payload(&["hom-dim", path.to_str().unwrap()]);
    std::fs::remove_file(&path).unwrap();
    assert_eq!(p["diagrammatic"], 1);
}

#[test]
fn output_is_deterministic() {
    let args = ["--field", "fp:7", "bound-scan", r#"{"n":2,"max_spread":4,"primes":[3,5]}"#];
    let a = glt(&args);
    let b = glt(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn exit_codes() {
    let unknown = glt(&["no-such-command"]);
    assert_eq!(unknown.status.code(), Some(2));
    assert_eq!(json(&unknown)["error"]["code"], "unknown_subcommand");

    let malformed = glt(&["hom-dim", "{\"src\":"]);
    assert_eq!(malformed.status.code(), Some(2));
    assert_eq!(json(&malformed)["error"]["code"], "malformed_json");

    let bad_field = glt(&["--field", "fp:4", "hom-dim", r#"{"src":[1],"dst":[1]}"#]);
    assert_eq!(bad_field.status.code(), Some(2));

    let domain = glt(&["yangian", "build", r#"{"alpha":0,"beta":1}"#]);
    assert_eq!(domain.status.code(), Some(1));
    let v = json(&domain);
    assert_eq!(v["status"], "error");
    assert_eq!(v["command"], "yangian-build");
}

#[test]
fn weyl_mod_reducible_at_p() {
    let p = ok_payload(&["weyl-mod", r#"{"lambda":[5,0],"p":5}"#]);
    assert_eq!(p["irreducible"], false);
    assert_eq!(p["relations_ok"], true);
    assert_eq!(p["linkage_ok"], true);
}

#[test]
fn yangian_tensor_over_f7() {
    let input = r#"{"factors":[{"alpha":1,"beta":0},{"alpha":2,"beta":0,"character":3}]}"#;
    let irr = ok_payload(&["--field", "fp:7", "yangian", "irreducible", input]);
    assert_eq!(irr["dim"], 6);
    assert_eq!(irr["irreducible"], true);
    assert_eq!(irr["criterion"]["satisfied"], true);
    let dr = ok_payload(&["--field", "fp:7", "yangian", "drinfeld", input]);
    assert_eq!(dr["agree"], true);
    assert_eq!(dr["polynomials"][0]["roots"].as_array().unwrap().len(), 3);
}

#[test]
fn yangian_verify_and_qdet() {
    let v = ok_payload(&["yangian", "verify", r#"{"lambda":[2,0]}"#]);
    assert_eq!(v["rtt"], true);
    let flipped = ok_payload(&["yangian", "verify", r#"{"lambda":[1,0],"sign":"flipped"}"#]);
    assert_eq!(flipped["rtt"], false);
    let q = ok_payload(&["yangian", "qdet", r#"{"lambda":[3,1]}"#]);
    assert_eq!(q["central"], true);
}

#[test]
fn drinfeld_round_trip_and_normalize() {
    let w = ok_payload(&[
        "drinfeld",
        "weight-to-poly",
        r#"{"evaluation":{"factors":[{"eta":{"lambda_bullet":[1]},"c":1},{"eta":{"lambda_bullet":[1]},"c":-1}],"standard_gl_action":true}}"#,
    ]);
    assert_eq!(w["drinfeld"]["P_bullet"][0]["roots"], serde_json::json!(["-1", "1"]));
    let n = ok_payload(&["--field", "fp:3", "drinfeld", "normalize", r#"{"roots":[0,1,2,-5]}"#]);
    assert_eq!(n["poly"]["roots"].as_array().unwrap().len(), 1);
}

#[test]
fn selftest_subset() {
    let out = glt(&["selftest", "--only", "2,3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["payload"]["all_passed"], true);
    assert_eq!(v["payload"]["criteria"].as_array().unwrap().len(), 2);
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert_eq!(stderr.lines().filter(|l| l.starts_with("[PASS]")).count(), 2);
}
