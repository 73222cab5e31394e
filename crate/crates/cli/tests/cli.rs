use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use serde_json::{json, Value};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
}

fn run(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_cdpoly"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let mut pipe = child.stdin.take().unwrap();
    pipe.write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn ok_json(args: &[&str], stdin: Option<&str>) -> Value {
    let out = run(args, stdin);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

fn path(name: &str) -> String {
    data(name).to_string_lossy().into_owned()
}

#[test]
fn worked_example_roots() {
    let roots = ok_json(
        &["alt-roots", "--input", &path("worked_example.json")],
        None,
    );
    let roots = roots.as_array().unwrap();
    assert_eq!(roots.len(), 2);
    assert_eq!(roots[0]["kind"], "isolated");
    assert_eq!(roots[0]["norm"], json!(1));
    assert_eq!(roots[0]["root"], json!([0, 0, 1, 0]));
    assert_eq!(roots[1]["norm"], json!(2));
    assert_eq!(roots[1]["root"], json!([0, 1, 1, 0]));
    assert!(roots
        .iter()
        .all(|r| r["exact"] == json!(true) && r["residual"] == json!(0)));
}

#[test]
fn no_roots_and_spherical_files() {
    assert_eq!(
        ok_json(&["alt-roots", "--input", &path("x2_plus_1.json")], None),
        json!([])
    );
    let roots = ok_json(&["alt-roots", "--input", &path("x2_minus_1.json")], None);
    assert_eq!(roots[0]["kind"], "spherical");
    assert_eq!(roots[0]["norm"], json!(1));
    assert_eq!(roots[0]["root"], json!([1, 0, 0, 0]));
    assert_eq!(roots.as_array().unwrap().len(), 1);
}

#[test]
fn eval_examples() {
    let at = |file: &str, point: &str, kind: &str| {
        ok_json(
            &[
                "eval",
                "--input",
                &path(file),
                "--at",
                point,
                "--kind",
                kind,
            ],
            None,
        )
    };
    assert_eq!(
        at("worked_example.json", "[0,0,1,0]", "alternating"),
        json!([0, 0, 0, 0])
    );
    assert_eq!(
        at("x2_plus_1.json", "[0,1,0,0]", "regular"),
        json!([0, 0, 0, 0])
    );
    assert_eq!(
        at("x2_plus_1.json", "[0,1,0,0]", "alternating"),
        json!([2, 0, 0, 0])
    );
}

#[test]
fn friend_over_octonions_and_round_trip() {
    let friend = ok_json(
        &[
            "friend",
            "--input",
            &path("worked_example.json"),
            "--gamma",
            "-1",
        ],
        None,
    );
    assert_eq!(friend["gammas"], json!([-1, -1, -1]));
    assert_eq!(
        friend["coefficients"],
        json!([
            [-1, 0, 0, 1, 0, 0, 0, 0],
            [0, 0, 0, 0, 0, 1, 0, 0],
            [-1, 0, 0, 0, 0, 0, 0, 0]
        ])
    );
    let parts = ok_json(&["decompose"], Some(&friend.to_string()));
    let original: Value =
        serde_json::from_str(&std::fs::read_to_string(data("worked_example.json")).unwrap())
            .unwrap();
    assert_eq!(parts["f"]["coefficients"], original["coefficients"]);
    assert_eq!(parts["g"]["coefficients"], json!([]));
}

#[test]
fn constant_friend_is_the_embedded_conjugate() {
    let file = r#"{"gammas":[-1],"coefficients":[["1/2", 3]]}"#;
    let friend = ok_json(&["friend", "--gamma", "2"], Some(file));
    assert_eq!(friend["coefficients"], json!([["1/2", -3, 0, 0]]));
}

#[test]
fn emitted_roots_reverify_through_eval() {
    for (file, mode) in [
        ("worked_example.json", "exact"),
        ("cubic_octonion.json", "float"),
    ] {
        let roots = ok_json(&["--mode", mode, "alt-roots", "--input", &path(file)], None);
        assert!(!roots.as_array().unwrap().is_empty());
        for r in roots.as_array().unwrap() {
            let point = r["root"].to_string();
            let value = ok_json(
                &[
                    "--mode",
                    mode,
                    "eval",
                    "--input",
                    &path(file),
                    "--at",
                    &point,
                ],
                None,
            );
            for c in value.as_array().unwrap() {
                let v = match c {
                    Value::String(s) => panic!("inexact residual {s}"),
                    other => other.as_f64().unwrap(),
                };
                assert!(v.abs() <= 1e-12, "{file}: residual {v}");
            }
        }
    }
}

#[test]
fn check_command() {
    let report = ok_json(&["check", "--gammas", "-1,-1", "--iterations", "30"], None);
    assert_eq!(report["passed"], json!(true));

    let report = ok_json(
        &["check", "--gammas", "[-1,-1,-1,-1]", "--iterations", "5"],
        None,
    );
    let composition = report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == "composition_law")
        .unwrap();
    assert!(composition["note"]
        .as_str()
        .unwrap()
        .contains("violating pair"));

    let report = ok_json(&["check", "--gammas", "[]", "--iterations", "5"], None);
    assert_eq!(report["passed"], json!(true));
}

#[test]
fn multiplication_table() {
    let table = ok_json(&["table", "--gammas", "-1,-1"], None);
    assert_eq!(table["table"][1], json!(["e1", "-e0", "e3", "-e2"]));
    assert_eq!(table["table"][2][1], json!("-e3"));
    let table = ok_json(&["table", "--gammas", "[2]"], None);
    assert_eq!(table["table"][1][1], json!("2*e0"));
}

#[test]
fn output_is_deterministic() {
    let args = [
        "--mode",
        "float",
        "alt-roots",
        "--input",
        &path("cubic_octonion.json"),
    ];
    assert_eq!(run(&args, None).stdout, run(&args, None).stdout);
    let args = [
        "check",
        "--gammas",
        "-1,1,-1",
        "--seed",
        "9",
        "--iterations",
        "10",
    ];
    assert_eq!(run(&args, None).stdout, run(&args, None).stdout);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["no-such-command"], None).status.code(), Some(1));
    assert_eq!(
        run(&["alt-roots"], Some("{not json")).status.code(),
        Some(1)
    );
    let mismatched = r#"{"gammas":[-1,-1],"coefficients":[[1,0]]}"#;
    assert_eq!(run(&["alt-roots"], Some(mismatched)).status.code(), Some(1));
    let rational_in_float = r#"{"gammas":[-1],"mode":"float","coefficients":[["1/2",0]]}"#;
    assert_eq!(
        run(&["alt-roots"], Some(rational_in_float)).status.code(),
        Some(1)
    );
    let sedenion = json!({"gammas": [-1, -1, -1, -1], "coefficients": [vec![1; 16], vec![0; 16]]});
    let out = run(&["alt-roots"], Some(&sedenion.to_string()));
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("division"));
    assert_eq!(
        run(
            &["decompose"],
            Some(r#"{"gammas":[],"coefficients":[[1]]}"#)
        )
        .status
        .code(),
        Some(1)
    );
}

#[test]
fn experimental_scan_on_sedenions() {
    let mut coeffs = vec![vec![0.0; 16]; 4];
    coeffs[0][0] = -0.5;
    coeffs[0][9] = 1.0;
    coeffs[1][3] = 1.0;
    coeffs[3][0] = 1.0;
    let file =
        json!({"gammas": [-1, -1, -1, -1], "mode": "float", "coefficients": coeffs}).to_string();
    let roots = ok_json(&["alt-roots", "--experimental-general"], Some(&file));
    assert!(!roots.as_array().unwrap().is_empty());
    for r in roots.as_array().unwrap() {
        assert_eq!(r["experimental"], json!(true));
        let value = ok_json(&["eval", "--at", &r["root"].to_string()], Some(&file));
        let worst = value
            .as_array()
            .unwrap()
            .iter()
            .map(|c| c.as_f64().unwrap().abs())
            .fold(0.0, f64::max);
        assert!(worst <= 1e-9, "residual {worst}");
    }
}
