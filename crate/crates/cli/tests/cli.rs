use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(format!("{name}.json"))
}

fn run(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_superint")).args(args).arg("--format").arg("json").output().unwrap();
    let stdout = String::from_utf8(out.stdout).unwrap();
    let json = serde_json::from_str(&stdout).unwrap_or_else(|e| panic!("{e}: {stdout}"));
    (out.status.code().unwrap(), json)
}

fn run_spec(cmd: &str, name: &str, extra: &[&str]) -> (i32, Value) {
    let path = fixture(name);
    let mut args = vec![cmd, "--spec", path.to_str().unwrap()];
    args.extend_from_slice(extra);
    run(&args)
}

fn strs(v: &Value) -> Vec<String> {
    v.as_array().unwrap().iter().map(|c| c.as_str().unwrap().to_string()).collect()
}

#[test]
fn i4_is_elementary_with_order_29() {
    let (code, out) = run_spec("integrate", "i4", &[]);
    assert_eq!(code, 0);
    assert_eq!(out["schema"], 1);
    assert_eq!(out["verdict"], "Elementary");
    let logs = out["expression"]["logs"].as_array().unwrap();
    assert_eq!(logs.len(), 1);
    assert_eq!(logs[0]["certificate"]["N"], 29);
    assert_eq!(logs[0]["certificate"]["primes"], serde_json::json!([3, 5, 11]));
    let chain = logs[0]["chain"].as_array().unwrap();
    assert_eq!(chain.len(), 7);
    assert_eq!(strs(&chain[0][0]), ["1", "40", "512"]);
    assert!(out.to_string().contains("\"N\":29"));
}

#[test]
fn i1_reduces_mod_13_to_the_reference_divisor() {
    let (code, out) = run_spec("reduce-divisor", "i1", &["--prime", "13"]);
    assert_eq!(code, 1);
    let first = &out["divisors"][0];
    assert_eq!(first["prime"], 13);
    assert_eq!(first["principal"], false);
    assert_eq!(first["reduced"], serde_json::json!([[["1", "11"], ["11"], [1, 0, 0]]]));
}

#[test]
fn i1_torsion_orders() {
    let (code, out) = run_spec("torsion-order", "i1", &[]);
    assert_eq!(code, 1);
    let cert = &out["divisors"][0]["certificate"];
    assert_eq!(cert["N"], 0);
    assert_eq!(cert["primes"], serde_json::json!([13, 19]));
    assert_eq!(cert["orders"], serde_json::json!([2, 19]));
}

#[test]
fn i1_is_not_elementary() {
    let (code, out) = run_spec("integrate", "i1", &[]);
    assert_eq!(code, 1);
    assert_eq!(out["obstruction"]["kind"], "NotTorsion");
    assert_eq!(out["residues"].as_array().unwrap().len(), 3);
}

#[test]
fn hermite_failure_exits_one() {
    let (code, out) = run(&["integrate", "x/((x^3+2)^(1/2))"]);
    assert_eq!(code, 1);
    assert_eq!(out["obstruction"]["kind"], "HermiteFail");
    let (code, out) = run(&["hermite", "x/((x^3+2)^(1/2))"]);
    assert_eq!(code, 1);
    assert_eq!(out["result"], "HermiteFail");
}

#[test]
fn text_integrand_is_normalized() {
    let (_, out) = run(&["hermite", "3/((x-1)*(x^3+8)^(1/2))"]);
    let int = &out["integral"];
    assert_eq!(strs(&int["P"]), ["3"]);
    assert_eq!(strs(&int["Q"]), ["1", "-1"]);
    assert_eq!(strs(&int["S"]), ["1", "0", "0", "8"]);
    assert_eq!(int["k"], 2);
}

#[test]
fn errors_are_reported_as_json() {
    let (code, out) = run(&["integrate", "1/((x^2-1)^(1/2))"]);
    assert_eq!(code, 4);
    assert_eq!(out["error"], "technical_condition");
    assert!(out["detail"].as_str().unwrap().contains("not coprime"));

    let (code, out) = run(&["integrate", "1/((x^3+1)^(1/2)"]);
    assert_eq!(code, 3);
    assert_eq!(out["error"], "parse");

    let (code, out) = run(&["integrate", "1/((x^3+a)^(1/2))", "--field", "a^2-4"]);
    assert_eq!(code, 5);
    assert_eq!(out["error"], "field");
}

#[test]
fn trace_integral_over_a_sextic_extension() {
    let (code, out) = run_spec("trace-integrals", "family_2", &["--alpha", "z^6 - z^3/191867 - 1/32425523"]);
    assert_eq!(code, 0);
    let nonzero: Vec<&Value> =
        out["trace_integrals"].as_array().unwrap().iter().filter(|t| strs(&t["P"]) != ["0"]).collect();
    assert_eq!(nonzero.len(), 1);
    assert_eq!(nonzero[0]["j"], 1);
}

#[test]
fn output_is_deterministic_modulo_timings() {
    for name in ["i1", "i3", "i4", "synthetic_00"] {
        let runs: Vec<Value> = (0..2)
            .map(|_| {
                let (_, mut out) = run_spec("integrate", name, &["--seed", "7"]);
                out.as_object_mut().unwrap().remove("timings");
                out
            })
            .collect();
        assert_eq!(runs[0].to_string(), runs[1].to_string(), "{name}");
    }
}

#[test]
fn every_fixture_integrates_without_errors() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let mut names: Vec<String> = std::fs::read_dir(&dir)
        .unwrap()
        .map(|e| e.unwrap().path().file_stem().unwrap().to_string_lossy().into_owned())
        .collect();
    names.sort();
    assert_eq!(names.iter().filter(|n| n.starts_with("synthetic")).count(), 20);
    for name in &names {
        let (code, out) = run_spec("integrate", name, &[]);
        assert!(code <= 2, "{name}: {out}");
        let expected = match name.as_str() {
            "i4" => "Elementary",
            n if n.starts_with("synthetic") => "Elementary",
            _ => "NotElementary",
        };
        assert_eq!(out["verdict"], expected, "{name}");
    }
}
