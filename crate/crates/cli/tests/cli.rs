use std::fs;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hadwiger"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn kv(out: &Output) -> Vec<(String, String)> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .filter_map(|l| l.split_once('='))
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect()
}

fn field(out: &Output, key: &str) -> String {
    kv(out)
        .into_iter()
        .find(|(k, _)| k == key)
        .unwrap_or_else(|| panic!("missing {key} in {}", String::from_utf8_lossy(&out.stdout)))
        .1
}

#[test]
fn code_info_named() {
    let out = run(&["--format", "kv", "code", "info", "--code", "golay24"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(field(&out, "d"), "8");
    assert_eq!(field(&out, "A_d"), "759");
    assert_eq!(field(&out, "weight.12"), "2576");
}

#[test]
fn code_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rep.txt");
    fs::write(&path, "# repetition\n1111\n").unwrap();
    let p = path.to_str().unwrap();
    let out = run(&[
        "--format", "kv", "lattice", "kissing", "--code", p, "--t", "4", "--body", "lp:1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(field(&out, "N_s"), "10");
    assert_eq!(field(&out, "method"), "coset-exact");
}

#[test]
fn kissing_fields_and_oracle() {
    let args = [
        "--format", "kv", "lattice", "kissing", "--code", "hamming8", "--t", "2", "--body", "lp:2",
    ];
    let exact = run(&args);
    let mut with_oracle = args.to_vec();
    with_oracle.extend(["--oracle", "--box", "1"]);
    let oracle = run(&with_oracle);
    for key in ["n", "k", "d", "A_d", "t", "nu", "N_s", "method", "elapsed_ms"] {
        field(&exact, key);
    }
    assert_eq!(field(&exact, "N_s"), "240");
    assert_eq!(field(&oracle, "N_s"), "240");
    assert_eq!(field(&oracle, "method"), "brute-force");
    assert_eq!(field(&oracle, "box_sufficient"), "true");
    assert_eq!(field(&exact, "nu"), field(&oracle, "nu"));
}

#[test]
fn table_format_has_header() {
    let out = run(&[
        "--format",
        "table",
        "lattice",
        "kissing",
        "--code",
        "repetition(4)",
        "--t",
        "auto",
        "--body",
        "lp:2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("field") && text.contains("N_s"), "{text}");
    assert!(kv(&out).is_empty());
}

#[test]
fn body_check_accepts_and_rejects() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("good.txt");
    fs::write(&good, "block [1,2] lq q=2 w=[1,1] p=2\nblock [3] max w=[1] p=1\n").unwrap();
    let out = run(&["--format", "kv", "body", "check", good.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(field(&out, "blocks"), "2");
    assert_eq!(field(&out, "common_exponent"), "none");

    let reused = dir.path().join("reused.txt");
    fs::write(
        &reused,
        "block [1,2] lq q=2 w=[1,1] p=2\nblock [1,3] lq q=2 w=[1,1] p=2\n",
    )
    .unwrap();
    let out = run(&["body", "check", reused.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
}

#[test]
fn theorem3_exit_codes() {
    let pass = run(&["--format", "kv", "theorem3", "verify", "--code", "hamming8", "--p", "2"]);
    assert_eq!(pass.status.code(), Some(0));
    assert_eq!(field(&pass, "result"), "PASS");
    assert_eq!(field(&pass, "kissing.N_s"), "240");

    // t = 3 gives the lattice (1/3)Z⁸, whose minimum the codewords do not attain.
    let fail = run(&[
        "--format", "kv", "theorem3", "verify", "--code", "hamming8", "--p", "1.5",
    ]);
    assert_eq!(fail.status.code(), Some(1));
    assert_eq!(field(&fail, "result"), "FAIL");
    assert_eq!(field(&fail, "check.codewords_minimal"), "FAIL");
}

#[test]
fn theorem4_with_body_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("body.txt");
    let text: Vec<String> = (0..4)
        .map(|i| format!("block [{},{}] lq q=1 w=[1,2] p=3/2", 2 * i + 1, 2 * i + 2))
        .collect();
    fs::write(&path, text.join("\n")).unwrap();
    let out = run(&[
        "--format",
        "kv",
        "theorem4",
        "verify",
        "--code",
        "repetition(4)",
        "--body",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(field(&out, "plan.positions"), "1,3,5,7");
    assert_eq!(field(&out, "plan.mu"), "0.5");
    assert_eq!(field(&out, "kissing.N_s"), "2");
    assert_eq!(field(&out, "check.pigeonhole"), "PASS");
}

#[test]
fn bounds_commands() {
    let out = run(&["--format", "kv", "bounds", "table", "--n", "8,24"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(field(&out, "n.8.quadratic"), "72");
    assert_eq!(field(&out, "crossover_n"), "14756");

    let out = run(&["--format", "kv", "bounds", "constants"]);
    assert_eq!(out.status.code(), Some(0));
    let m: f64 = field(&out, "M").parse().unwrap();
    assert!((m - 0.001877).abs() < 1e-6);
    assert_eq!(field(&out, "argmax_s"), "3");
}

#[test]
fn errors_exit_two() {
    for args in [
        &["code", "info", "--code", "no-such-code"][..],
        &[
            "lattice", "kissing", "--code", "golay24", "--t", "2", "--body", "lp:0.5",
        ],
        &[
            "lattice", "kissing", "--code", "golay24", "--t", "2", "--body", "lp:2", "--oracle",
        ],
        &[
            "theorem4",
            "verify",
            "--code",
            "golay24",
            "--body",
            "/nonexistent/body.txt",
        ],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn reports_are_deterministic() {
    let args = [
        "--format", "kv", "lattice", "kissing", "--code", "rm(1,4)", "--t", "4", "--body", "lp:1.5",
    ];
    let strip =
        |o: Output| -> Vec<(String, String)> { kv(&o).into_iter().filter(|(k, _)| k != "elapsed_ms").collect() };
    assert_eq!(strip(run(&args)), strip(run(&args)));
}
