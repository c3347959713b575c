use std::process::{Command, Output};

use serde_json::Value;

use qpolya::lineseries::{dump_prefix, load_prefix};

fn qpolya(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qpolya"))
        .args(args)
        .env_remove("QPOLYA_MAX_PRECISION")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let o = qpolya(&full);
    (
        serde_json::from_slice(&o.stdout).expect("json output"),
        o.status.code().unwrap(),
    )
}

#[test]
fn flagship_coefficients() {
    let o = qpolya(&[
        "series", "0", "0", "2", "1", "--terms", "5", "--order", "1", "--q", "2",
    ]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "1, 3, 35, 1395, 200787");
}

#[test]
fn flagship_verdict() {
    let (v, code) = json(&["decide", "0", "0", "2", "1", "--order", "1", "--q", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"], "transcendental");
    assert_eq!(v["certificate"]["kind"], "degree_growth");
    assert_eq!(v["certificate"]["degree_poly"], "j^2");
}

#[test]
fn paths_example() {
    let o = qpolya(&["paths", "1", "1"]);
    assert_eq!(stdout(&o).trim(), "1 + q");
}

#[test]
fn order_defaults_to_one() {
    let a = qpolya(&["series", "0", "0", "2", "1", "--terms", "4", "--q", "3/2"]);
    let b = qpolya(&[
        "series", "0", "0", "2", "1", "--terms", "4", "--order", "1", "--q", "3/2",
    ]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn exit_codes() {
    let cases: &[(&[&str], i32)] = &[
        (&["qbinom", "4", "2"], 0),
        (&["paths", "2", "2"], 0),
        (&["vandermonde", "1"], 0),
        (&["check-ratio", "0", "0", "2", "1", "--jmax", "3"], 0),
        (&["lucas-split", "0", "0", "2", "1", "--order", "3"], 0),
        // usage
        (&[], 2),
        (&["frobnicate"], 2),
        (
            &["series", "0", "0", "2", "1", "--terms", "x", "--q", "2"],
            2,
        ),
        (&["decide", "0", "0", "2"], 2),
        (&["--format", "yaml", "paths", "1", "1"], 2),
        // syntax
        (&["qbinom", "4", "2", "--q", "1 +"], 2),
        (
            &["series", "0", "0", "2", "1", "--terms", "3", "--q", "2**"],
            2,
        ),
        (&["decide", "0", "0", "2", "1", "--q", "z)"], 2),
        // domain
        (&["decide", "5", "1", "2", "1", "--q", "2"], 1),
        (&["decide", "0", "0", "4", "2", "--q", "2"], 1),
        (&["decide", "0", "0", "2", "1", "--q", "0"], 1),
        (
            &["series", "0", "0", "2", "1", "--terms", "3", "--q", "1/0"],
            1,
        ),
        (
            &[
                "series", "0", "0", "2", "1", "--terms", "3", "--order", "0", "--q", "1",
            ],
            1,
        ),
        (&["qbinom", "2", "5"], 1),
        (
            &[
                "guess-alg",
                "--input",
                "/nonexistent/prefix.txt",
                "--dx",
                "1",
                "--dz",
                "1",
            ],
            1,
        ),
    ];
    for (args, expected) in cases {
        let code = qpolya(args).status.code().unwrap();
        assert_eq!(code, *expected, "qpolya {}", args.join(" "));
    }
}

#[test]
fn json_errors_carry_codes() {
    let (v, code) = json(&["decide", "5", "1", "2", "1", "--q", "2"]);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["code"], "inadmissible_spec");
    let (v, code) = json(&["qbinom", "3", "1", "--q", "(1 + "]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["code"], "syntax_error");
    let (v, _) = json(&["decide", "0", "0", "2", "1", "--q", "0"]);
    assert!(v["error"]["code"].is_string());
    assert!(v["error"]["message"].is_string());
}

#[test]
fn dump_then_guess_reads_exactly() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("prefix.txt");
    let p = path.to_str().unwrap();
    let o = qpolya(&[
        "series", "0", "0", "2", "1", "--terms", "60", "--order", "3", "--q", "z", "--dump", p,
    ]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(dump_prefix(&load_prefix(&text).unwrap()), text);

    let (v, code) = json(&["guess-alg", "--input", p, "--dx", "3", "--dz", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["found"], true);
    assert_eq!(v["equation"]["verified_order"], 60);
    let (v, _) = json(&["guess-alg", "--input", p, "--dx", "1", "--dz", "1"]);
    assert_eq!(v["found"], false);
}

#[test]
fn malformed_dump_is_a_syntax_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.txt");
    std::fs::write(&path, "s=1 n=0 k=0 a=2 b=1 N=2\n1/1\nnope\n").unwrap();
    let (v, code) = json(&[
        "guess-rec",
        "--input",
        path.to_str().unwrap(),
        "--r",
        "1",
        "--d",
        "1",
    ]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["code"], "malformed_dump");
    assert!(v["error"]["message"].as_str().unwrap().contains("line 3"));
}

#[test]
fn text_and_json_agree() {
    let series = [
        "series", "0", "0", "2", "1", "--terms", "6", "--order", "4", "--q", "1 + z",
    ];
    let text = stdout(&qpolya(&series));
    let (v, _) = json(&series);
    let from_json: Vec<&str> = v["text"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| t.as_str().unwrap())
        .collect();
    assert_eq!(text.trim(), from_json.join(", "));

    let decide = ["decide", "0", "0", "2", "1", "--order", "3", "--q", "z"];
    let text = stdout(&qpolya(&decide));
    let (v, _) = json(&decide);
    assert_eq!(v["verdict"], "algebraic");
    assert!(text.starts_with("algebraic: "));
    assert!(text.contains(v["equation"]["text"].as_str().unwrap()));

    let qb = ["qbinom", "5", "2"];
    let (v, _) = json(&qb);
    assert_eq!(stdout(&qpolya(&qb)).trim(), v["text"]);

    let vd = ["vandermonde", "2"];
    let text = stdout(&qpolya(&vd));
    let (v, _) = json(&vd);
    assert!(text.contains(v["text"].as_str().unwrap()));
    assert!(text.contains(v["factored"].as_str().unwrap()));
}

#[test]
fn precision_cap_from_environment() {
    let args = [
        "decide",
        "0",
        "0",
        "2",
        "1",
        "--order",
        "5",
        "--q",
        "1 + z/2^80",
        "--format",
        "json",
    ];
    let capped = Command::new(env!("CARGO_BIN_EXE_qpolya"))
        .args(args)
        .env("QPOLYA_MAX_PRECISION", "64")
        .output()
        .unwrap();
    assert_eq!(capped.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&capped.stdout).unwrap();
    assert_eq!(v["error"]["code"], "precision_exhausted");

    let o = qpolya(&args);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["certificate"]["kind"], "degree_growth");
}
