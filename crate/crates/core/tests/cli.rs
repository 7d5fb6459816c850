//! End-to-end runs of the command-line tool.

use std::io::Write;
use std::process::{Command, Output, Stdio};

fn run(args: &[&str], stdin: Option<&[u8]>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_shortcode"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let mut pipe = child.stdin.take().unwrap();
    if let Some(bytes) = stdin {
        pipe.write_all(bytes).unwrap();
    }
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn ok(args: &[&str], stdin: Option<&[u8]>) -> Vec<u8> {
    let out = run(args, stdin);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    out.stdout
}

fn csv_pairs(out: &[u8]) -> Vec<(usize, u128)> {
    String::from_utf8(out.to_vec())
        .unwrap()
        .lines()
        .skip(1)
        .map(|l| {
            let (w, c) = l.split_once(',').unwrap();
            (w.parse().unwrap(), c.parse().unwrap())
        })
        .collect()
}

#[test]
fn build_shorten_enumerate_pipeline() {
    let code = ok(&["build", "apn:p=2,m=5,e=1"], None);
    let short = ok(&["shorten", "T=alpha^1"], Some(&code));
    let wd = ok(&["--format", "csv", "wd"], Some(&short));
    assert_eq!(csv_pairs(&wd), [(0, 1), (12, 310), (16, 527), (20, 186)]);
}

#[test]
fn prediction_matches_enumeration() {
    let pred = ok(&["--format", "csv", "predict", "--table", "tab15", "--p", "3", "--m", "3"], None);
    assert_eq!(csv_pairs(&pred), [(0, 1), (15, 48), (18, 32)]);
    let short = ok(&["shorten", "T=GF(p)", "--code", "pn:p=3,m=3,s=2"], None);
    let wd = ok(&["--format", "csv", "wd"], Some(&short));
    assert_eq!(csv_pairs(&wd), csv_pairs(&pred));
}

#[test]
fn enumeration_mass_is_p_to_the_k() {
    let wd = ok(&["--format", "csv", "wd", "--code", "pn:p=3,m=3,s=2"], None);
    let total: u128 = csv_pairs(&wd).iter().map(|&(_, c)| c).sum();
    assert_eq!(total, 3u128.pow(7));
}

#[test]
fn json_round_trip_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("code.json");
    let first = ok(&["build", "pn:p=3,m=3,s=2"], None);
    std::fs::write(&path, &first).unwrap();
    let again = ok(&["shorten", "", "--from-json", path.to_str().unwrap()], None);
    let via_stdin = ok(&["shorten", ""], Some(&first));
    assert_eq!(again, first);
    assert_eq!(via_stdin, first);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["bogus"], None).status.code(), Some(2));
    assert_eq!(run(&["predict", "--table", "tab10", "--m", "4"], None).status.code(), Some(2));
    assert_eq!(run(&["wd"], Some(b"not json")).status.code(), Some(2));
    assert_eq!(run(&["build", "apn:p=3,m=2,s=2"], None).status.code(), Some(2));
    let verify = run(&["verify", "--suite", "paper-examples"], None);
    assert_eq!(verify.status.code(), Some(0));
}

#[test]
fn json_output_parses() {
    let out = ok(&["--format", "json", "predict", "--table", "tab10", "--m", "4", "--lambda", "2"], None);
    let v: serde_json::Value = serde_json::from_slice(&out).unwrap();
    assert!(v.is_object(), "{v}");
}
