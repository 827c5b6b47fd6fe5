use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_trace-codes")).args(args).env_remove("TRACE_CODES_CAP").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn verify_json_report() {
    let o = run(&["verify", "--p", "3", "--e", "4", "--alpha", "1", "--a", "1", "--c", "1", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.ends_with("}\n"));
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["theorem"], 4);
    assert_eq!(v["verdict"], "match");
    assert_eq!(v["n"], 36);
    assert_eq!(v["field"]["modulus"], serde_json::json!([1, 0, 1, 1, 1]));
    assert_eq!(v["defining_set"]["census"], serde_json::json!({"unsolvable": 72, "0": 1, "1": 4, "2": 4}));
    let reparsed: trace_codes::cwe::VerificationReport = serde_json::from_str(&text).unwrap();
    assert_eq!(trace_codes::report::to_json(&reparsed).unwrap(), text);
}

#[test]
fn configuration_errors_exit_2_with_one_line() {
    for (args, msg) in [
        (vec!["verify", "--p", "3", "--e", "2", "--alpha", "1", "--a", "0", "--c", "1"], "degenerate code of length 0"),
        (vec!["verify", "--p", "4", "--e", "4", "--alpha", "1", "--a", "1", "--c", "1"], "p must be an odd prime"),
        (vec!["verify", "--p", "3", "--e", "4", "--alpha", "1", "--a", "1", "--c", "0"], "c = 0"),
        (vec!["verify", "--p", "3", "--e", "4", "--alpha", "2", "--a", "1", "--c", "1", "--threads", "0"], "--threads"),
        (vec!["sweep", "--max-q", "50", "--primes", "3"], "no admissible parameters"),
    ] {
        let o = run(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        let err = stderr(&o);
        assert_eq!(err.lines().count(), 1, "{err}");
        assert!(err.contains(msg), "{err}");
        assert!(o.stdout.is_empty());
    }
    assert_eq!(run(&["sums", "--kind", "bogus"]).status.code(), Some(2));
}

#[test]
fn cap_env_var_is_enforced() {
    let o = Command::new(env!("CARGO_BIN_EXE_trace-codes"))
        .args(["verify", "--p", "3", "--e", "6", "--alpha", "1", "--a", "0", "--c", "1"])
        .env("TRACE_CODES_CAP", "100")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("exceeds the cap"));
}

#[test]
fn csv_and_out_file() {
    let dir = std::env::temp_dir().join(format!("trace-codes-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("r.csv");
    let o = run(&[
        "verify", "--p", "5", "--e", "4", "--alpha", "1", "--a", "1", "--c", "1", "--format", "csv", "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let csv = std::fs::read_to_string(&path).unwrap();
    assert!(csv.starts_with("kind,key,brute,closed\n"));
    assert!(csv.lines().any(|l| l == "weight,150,7,7"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn sweep_rows_and_exit() {
    let o = run(&["sweep", "--max-q", "7000", "--primes", "3,5", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    let rows = text.lines().count() - 1;
    // (3,4), (3,6), (3,8) with 3, 3, 7 alphas and 3*2 (a, c); (5,4) with 3 alphas and 5*4
    assert_eq!(rows, (3 + 3 + 7) * 6 + 3 * 20);
    assert!(text.lines().skip(1).all(|l| l.ends_with(",match,0")));
}

#[test]
fn sums_suites() {
    let o = run(&["sums", "--kind", "legendre", "--p", "7"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("legendre: pass"));

    let o = run(&["sums", "--kind", "census", "--p", "3", "--e", "4", "--alpha", "1", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["rows"][0]["note"], "unsolvable=72 0=1 1=4 2=4");

    let o = run(&["sums", "--kind", "coulter", "--p", "3", "--e", "2", "--alpha", "1", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let warnings = v["warnings"].as_array().unwrap();
    assert_eq!(warnings.len(), 1);
    assert_eq!(warnings[0]["case"], "even_permutation");
    assert_eq!(warnings[0]["sign_flips"], warnings[0]["pairs"]);
    assert_eq!(v["pass"], true);
}

#[test]
fn mode_selection() {
    let o = run(&["verify", "--p", "3", "--e", "4", "--alpha", "1", "--a", "0", "--c", "1", "--mode", "closed", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v.get("brute").is_none() && v.get("verdict").is_none());
    assert_eq!(v["mode"], "closed");
}
