//! Golden-file tests for every subcommand. Set `TLSYM_UPDATE_GOLDEN=1` to
//! rewrite the expected outputs.

use std::path::{Path, PathBuf};
use std::process::Command;

use tlsym::cli::{run, EXIT_CHECK_FAILED, EXIT_OK, EXIT_USAGE};

fn dir(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests").join(name)
}

fn fixture(name: &str) -> String {
    dir("fixtures").join(name).to_string_lossy().into_owned()
}

fn invoke(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("tlsym").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn golden(name: &str, args: &[&str]) {
    let (code, out, err) = invoke(args);
    assert_eq!(code, EXIT_OK, "{args:?}: {err}");
    let (again_code, again, _) = invoke(args);
    assert_eq!((again_code, &again), (code, &out), "{args:?} is not deterministic");
    let path = dir("golden").join(name);
    if std::env::var_os("TLSYM_UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &out).unwrap();
        return;
    }
    let want = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(out, want, "{args:?} differs from {name}");
}

#[test]
fn meander_outputs() {
    golden("meander_4.json", &["meander", "--n", "4", "--format", "json"]);
    golden("meander_3.txt", &["meander", "--n", "3"]);
    golden("meander_3.csv", &["meander", "--n", "3", "--format", "csv"]);
    golden("meander_check.txt", &["meander"]);
}

#[test]
fn index_outputs() {
    let a3 = fixture("a3.json");
    golden("index_a3.txt", &["index", "--graph", &a3, "--k", "1"]);
    golden("index_a3.json", &["index", "--graph", &a3, "--format", "json"]);
    golden("index_a3.csv", &["index", "--graph", &a3, "--format", "csv"]);
    golden("index_check.txt", &["index"]);
}

#[test]
fn index_output_ends_with_the_index() {
    let (_, out, _) = invoke(&["index", "--graph", &fixture("a3.json"), "--k", "0"]);
    assert!(out.trim_end().ends_with("I = 2, r_0 = 2.656854249492"), "{out}");
}

#[test]
fn gram_outputs() {
    golden("gram_bars.txt", &["gram", "--shape", "0,0,2,2,+"]);
    golden("gram_bars_numeric.csv", &["gram", "--shape", "0,0,2,2,+", "--delta", "2", "--format", "csv"]);
    golden("gram_side.json", &["gram", "--shape", "1,1,2,0,-", "--pairing", "tau-prime", "--delta", "1.9", "--format", "json"]);
    golden("gram_check.json", &["gram", "--max-boundary", "4", "--format", "json"]);
}

#[test]
fn trace_outputs() {
    let bars = fixture("bars.json");
    golden("trace_bars.txt", &["trace", "--element", &bars]);
    golden("trace_bars_numeric.json", &["trace", "--element", &bars, "--delta", "2", "--format", "json"]);
    golden("trace_check.csv", &["trace", "--max-boundary", "6", "--format", "csv"]);
}

#[test]
fn expectation_outputs() {
    let bars = fixture("bars.json");
    golden("expectation_bars.json", &["expectation", "--element", &bars, "--format", "json"]);
    golden("expectation_bars.txt", &["expectation", "--element", &bars]);
    golden("expectation_check.txt", &["expectation", "--max-boundary", "4"]);
}

#[test]
fn check_outputs() {
    golden("cob_check.txt", &["cob-check", "--max-boundary", "4", "--seed", "3"]);
    golden("derivation_check.txt", &["derivation-check", "--max-boundary", "4", "--max-degree", "2"]);
    golden("conjugate_check.json", &["conjugate-check", "--max-boundary", "3", "--max-degree", "2", "--format", "json"]);
}

#[test]
fn canonical_document_round_trips() {
    use tlsym::io::{emit_element, parse_element};
    let text = std::fs::read_to_string(fixture("bars.json")).unwrap();
    let parsed = parse_element(&text).unwrap().strict().unwrap();
    assert_eq!(emit_element(&parsed.element, parsed.parity), text);
}

#[test]
fn input_errors() {
    let (code, _, err) = invoke(&["trace", "--element", &fixture("crossing.json")]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("cross"), "{err}");
    let (code, out, _) = invoke(&["trace", "--element", &fixture("unreduced.json")]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("Tr = "));
    let (code, _, err) = invoke(&["trace", "--element", &fixture("unreduced.json"), "--strict"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("non-canonical"), "{err}");
    let (code, _, _) = invoke(&["trace", "--element", "/nonexistent/element.json"]);
    assert_eq!(code, EXIT_USAGE);
}

#[test]
fn usage_errors() {
    for args in [
        &["frobnicate"][..],
        &["meander", "--n", "x"],
        &["meander", "--n", "9"],
        &["meander", "--n", "0"],
        &["cob-check", "--max-degree", "6"],
        &["gram", "--shape", "0,0,1,2,+"],
        &["trace", "--delta", "-2"],
        &["index", "--graph", &fixture("a3.json"), "--delta", "1.5"],
        &["--format", "xml", "meander"],
    ] {
        let (code, _, err) = invoke(args);
        assert_eq!(code, EXIT_USAGE, "{args:?}");
        assert!(!err.is_empty(), "{args:?}");
    }
    let (code, out, _) = invoke(&["--help"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("cob-check"));
}

#[test]
fn failing_identity_exits_with_one() {
    // a check with no cases counts as a failure
    let (code, out, _) = invoke(&["conjugate-check", "--max-boundary", "1", "--max-degree", "0"]);
    assert_eq!(code, EXIT_CHECK_FAILED, "{out}");
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_tlsym");
    let ok = Command::new(bin).args(["meander", "--n", "2"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(EXIT_OK));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("m_2(q) = 2*q + 2*q^2"));
    let bad = Command::new(bin).arg("nope").output().unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_USAGE));
}
