use std::path::PathBuf;

use idre::cli::run;

fn golden(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

fn idre(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("idre").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn same_as_golden(args: &[&str], name: &str) {
    let (code, out, _) = idre(args);
    assert_eq!(code, 0);
    assert_eq!(out, std::fs::read_to_string(golden(name)).unwrap(), "{name}");
}

#[test]
fn check_exit_codes() {
    let (code, out, _) = idre(&["check", "(a?&b)a"]);
    assert_eq!(code, 1);
    assert!(out.contains("nondeterministic"));
    assert_eq!(idre(&["check", "a"]).0, 0);
    for engine in ["w", "unmarked", "marked", "oracle"] {
        assert_eq!(idre(&["check", "--engine", engine, "(a?&b)a"]).0, 1, "{engine}");
        assert_eq!(idre(&["check", "--engine", engine, "(a?&b)c"]).0, 0, "{engine}");
    }
    let (code, _, err) = idre(&["check", "(a+"]);
    assert_eq!(code, 2);
    assert!(err.contains("idre:"));
    assert_eq!(idre(&["check", "--engine", "oracle", "--oracle-max-len", "2", "a[3,3]"]).0, 3);
    assert_eq!(idre(&["frobnicate"]).0, 2);
    assert_eq!(idre(&["--help"]).0, 0);
}

#[test]
fn check_reports_the_locus() {
    let (code, out, _) = idre(&["check", "((a.a?&b).(c+d)?)*"]);
    assert_eq!(code, 1);
    assert_eq!(out.trim(), "(((aa?)&b)(c+d)?)*: nondeterministic at /0/0/0 (aa?) [concat/ct-guard]");
    same_as_golden(&["--json", "check", "--engine", "w", "a*b"], "check_w.json");
}

#[test]
fn json_documents_are_stable() {
    let (code, out, _) = idre(&["--json", "check", "((a.a?&b).(c+d)?)*"]);
    assert_eq!(code, 1);
    assert_eq!(out, std::fs::read_to_string(golden("check.json")).unwrap());
    same_as_golden(&["--json", "attrs", "(a[1,2]+b)[2,2]"], "attrs.json");
    same_as_golden(&["--json", "enum", "(ab)&(cd+e)", "4"], "enum.json");
    let v: serde_json::Value = serde_json::from_str(&idre(&["--json", "enum", "(ab)&(cd+e)", "4"]).1).unwrap();
    assert_eq!(v["count"], 9);
}

#[test]
fn check_reads_files() {
    let dir = std::env::temp_dir().join(format!("idre-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("exprs.txt");
    std::fs::write(&file, "a\n\n(a?&b)a\nab*\n").unwrap();
    let (code, out, _) = idre(&["check", "--file", file.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert_eq!(out.lines().count(), 3);
    assert_eq!(idre(&["check", "--file", dir.join("missing").to_str().unwrap()]).0, 2);
}

#[test]
fn match_and_enum() {
    let (code, out, _) = idre(&["match", "(ab)&(cd+e)", "abe"]);
    assert_eq!((code, out.trim()), (0, "accepted"));
    assert_eq!(idre(&["match", "(ab)&(cd+e)", "eba"]).0, 1);
    assert_eq!(idre(&["match", "a*", "eps"]).0, 0);
    assert_eq!(idre(&["match", "a", "A"]).0, 2);
    let (_, out, _) = idre(&["enum", "(ab)&(cd+e)", "4"]);
    assert_eq!(out.lines().count(), 9);
    assert_eq!(out.lines().next(), Some("abe"));
}

#[test]
fn grammar_commands() {
    let (code, out, _) = idre(&["grammar", "--variant", "g1", "--sigma", "1", "--stats"]);
    assert_eq!((code, out.trim()), (0, "N=33 P=2097"));
    let (_, out, _) = idre(&["grammar", "--sigma", "1", "--simplify", "--stats"]);
    assert_eq!(out.trim(), "N=6 P=15");
    assert_eq!(idre(&["grammar", "--sigma", "4", "--stats"]).0, 3);
    assert_eq!(idre(&["grammar", "--sigma", "5", "--simplify", "--stats"]).0, 2);
    assert_eq!(idre(&["grammar", "--sigma", "1"]).0, 2);
    same_as_golden(&["grammar", "--sigma", "1", "--simplify", "--export", "-"], "g1_sigma1_simplified.txt");
}

#[test]
fn gen_is_seeded_and_validated() {
    let a = idre(&["gen", "--sigma", "2", "--max-size", "20", "--count", "5", "--seed", "9"]);
    let b = idre(&["gen", "--sigma", "2", "--max-size", "20", "--count", "5", "--seed", "9"]);
    assert_eq!(a.0, 0);
    assert_eq!(a.1, b.1);
    assert_eq!(a.1.lines().count(), 5);
    for line in a.1.lines() {
        assert_eq!(idre(&["check", line]).0, 0, "{line}");
    }
    assert_eq!(idre(&["gen", "--sigma", "0", "--max-size", "20"]).0, 2);
    same_as_golden(&["--json", "gen", "--sigma", "2", "--max-size", "12", "--count", "3", "--seed", "5"], "gen.json");
}

#[test]
fn bench_tables() {
    let (code, out, _) = idre(&["bench", "grammar-size", "--max-sigma", "2"]);
    assert_eq!(code, 0);
    assert_eq!(out.matches("match").count(), 2);
    let (_, out, _) = idre(&["--json", "bench", "simplified-size", "--max-sigma", "2"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 4);
    assert_eq!(v["rows"][0]["published"][0]["match"], true);
    let (code, out, _) = idre(&["bench", "gen-time", "--max-sigma", "2", "--count", "3"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 4);
}
