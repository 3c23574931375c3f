use std::process::{Command, Output};

use serde_json::Value;

fn qcharlier(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qcharlier"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn gen_prints_canonical_coefficients() {
    let out = qcharlier(&["gen", "--t", "9/10", "--alpha", "1/2", "--n", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["coefficients"], serde_json::json!(["-81/200", "1"]));
    assert_eq!(v["q"], "81/100");
    let text = String::from_utf8(out.stdout).unwrap();
    let positions: Vec<usize> = [
        "\"t\"",
        "\"q\"",
        "\"alphas\"",
        "\"multi_index\"",
        "\"method\"",
        "\"basis\"",
        "\"coefficients\"",
    ]
    .iter()
    .map(|k| text.find(k).unwrap())
    .collect();
    assert!(positions.windows(2).all(|w| w[0] < w[1]), "{text}");
}

#[test]
fn gen_is_deterministic_and_method_independent() {
    let args = [
        "gen", "--t", "9/10", "--alpha", "1/2", "--alpha", "3/5", "--n", "2,2",
    ];
    let a = qcharlier(&args);
    let b = qcharlier(&args);
    assert_eq!(a.stdout, b.stdout);
    for method in ["rodrigues", "explicit", "recurrence"] {
        let other = qcharlier(&[&args[..], &["--method", method]].concat());
        assert_eq!(
            json(&other)["coefficients"],
            json(&a)["coefficients"],
            "{method}"
        );
    }
    let falling = qcharlier(&[&args[..], &["--basis", "falling"]].concat());
    assert_eq!(json(&falling)["basis"], "falling");
}

#[test]
fn gen_float_backend() {
    let out = qcharlier(&["gen", "--q", "0.81", "--alpha", "0.5", "--n", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let c0: f64 = json(&out)["coefficients"][0]
        .as_str()
        .unwrap()
        .parse()
        .unwrap();
    assert!((c0 + 0.405).abs() < 1e-15);
}

#[test]
fn invalid_arguments_exit_2_and_name_the_guard() {
    let cases = [
        (
            vec![
                "gen", "--t", "9/10", "--alpha", "1/2", "--alpha", "1/2", "--n", "1,1",
            ],
            "distinctness",
        ),
        (
            vec!["gen", "--t", "9/10", "--alpha", "0", "--n", "1"],
            "positivity",
        ),
        (
            vec![
                "gen", "--t", "9/10", "--alpha", "1/2", "--alpha", "81/200", "--n", "1,1",
            ],
            "ratio",
        ),
        (
            vec!["gen", "--t", "1", "--alpha", "1/2", "--n", "1"],
            "lattice",
        ),
        (
            vec!["gen", "--t", "9/10", "--alpha", "1/2", "--n", "1,1"],
            "r = 1",
        ),
        (
            vec!["gen", "--t", "9/10", "--alpha", "1/2", "--n", "x"],
            "parse",
        ),
    ];
    for (args, needle) in cases {
        let out = qcharlier(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        let err = String::from_utf8_lossy(&out.stderr);
        assert!(err.contains(needle), "{args:?}: {err}");
    }
    assert_eq!(
        qcharlier(&["verify", "--suite", "bogus"]).status.code(),
        Some(2)
    );
    assert_eq!(qcharlier(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn verify_default_grid_passes() {
    let out = qcharlier(&["verify", "--quiet"]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
    let v = json(&out);
    assert_eq!(v["status"], "pass");
    for suite in [
        "orthogonality",
        "raising",
        "lowering",
        "diffeq",
        "nn",
        "stepline",
    ] {
        assert!(
            v["summary"][suite]["total"].as_u64().unwrap() > 0,
            "{suite}"
        );
        assert_eq!(v["summary"][suite]["failed"], 0, "{suite}");
    }
    assert!(v.get("timings_ms").is_none());
    assert!(out.stderr.is_empty());
}

#[test]
fn verify_nn_on_three_measures() {
    let out = qcharlier(&[
        "verify",
        "--suite",
        "nn",
        "--rmax",
        "3",
        "--nmax",
        "2",
        "--timings",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!(v["timings_ms"]["total"].as_f64().is_some());
    assert!(String::from_utf8_lossy(&out.stderr).contains("nn"));
}

#[test]
fn verify_corrupted_fixture_fails_with_named_identity() {
    let out = qcharlier(&["verify", "--suite", "all", "--corrupt", "2,1"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["status"], "fail");
    let failures: Vec<&Value> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["status"] == "fail")
        .collect();
    for suite in ["orthogonality", "diffeq", "nn"] {
        assert!(failures.iter().any(|c| c["suite"] == suite), "{suite}");
    }
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("FAIL orthogonality at (2,1)"), "{err}");
}

#[test]
fn zeros_command() {
    let out = qcharlier(&["zeros", "--q", "0.81", "--alpha", "0.5", "--n", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let root: f64 = json(&out)["roots"][0].as_str().unwrap().parse().unwrap();
    assert!((root - 0.405).abs() < 1e-10);

    let two = qcharlier(&[
        "zeros", "--t", "9/10", "--alpha", "1/2", "--alpha", "3/5", "--n", "1,1",
    ]);
    let roots: Vec<f64> = json(&two)["roots"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r.as_str().unwrap().parse().unwrap())
        .collect();
    assert_eq!(roots.len(), 2);
    // interlacing with the degree-one polynomials X - alpha_i q
    assert!(roots[0] > 0.0 && roots[0] < 0.405 && roots[1] > 0.486);

    let none = qcharlier(&[
        "zeros", "--q", "0.81", "--alpha", "0.5", "--alpha", "0.6", "--n", "0,0",
    ]);
    assert_eq!(json(&none)["roots"], serde_json::json!([]));
}

#[test]
fn limit_command_reports_first_order() {
    let out = qcharlier(&["limit", "--n", "2,1"]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
    let v = json(&out);
    for o in v["coefficient_orders"].as_array().unwrap() {
        assert!((o.as_f64().unwrap() - 1.0).abs() < 0.2);
    }
    let e1 = json(&qcharlier(&[
        "limit", "--alpha", "0.5", "--n", "1", "--m-list", "2,3",
    ]));
    let err: f64 = e1["samples"][0]["coefficient_error"]
        .as_str()
        .unwrap()
        .parse()
        .unwrap();
    assert!((err - 0.5 * 0.01).abs() < 1e-15);
}
