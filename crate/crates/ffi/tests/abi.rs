use std::ffi::{CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use idre_ffi::*;

fn parse(text: &str) -> *mut IdreExpr {
    let c = CString::new(text).unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { idre_parse(c.as_ptr(), &mut out) }, IdreStatus::Ok);
    out
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(idre_last_error_message()) }.to_string_lossy().into_owned()
}

#[test]
fn parse_print_size_round_trip() {
    let e = parse("(a.b)&(c.d+e)");
    let s = unsafe { idre_expr_print(e) };
    assert_eq!(unsafe { CStr::from_ptr(s) }.to_str().unwrap(), "(ab)&(cd+e)");
    assert_eq!(unsafe { idre_expr_size(e) }, 9);
    unsafe {
        idre_string_free(s);
        idre_expr_free(e);
    }
}

#[test]
fn parse_error_sets_message() {
    let c = CString::new("(a+").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { idre_parse(c.as_ptr(), &mut out) }, IdreStatus::ParseError);
    assert!(out.is_null());
    assert!(!last_error().is_empty());
    assert_eq!(unsafe { idre_parse(ptr::null(), &mut out) }, IdreStatus::InvalidArgument);
}

#[test]
fn check_reports_locus_and_clause() {
    let e = parse("((a.a?&b).(c+d)?)*");
    let mut v = IdreVerdict { deterministic: true, locus: ptr::null_mut(), clause: ptr::null_mut(), visited: 0 };
    assert_eq!(unsafe { idre_check(e, IdreEngine::Unmarked, &mut v) }, IdreStatus::Negative);
    assert!(!v.deterministic);
    assert_eq!(unsafe { CStr::from_ptr(v.locus) }.to_str().unwrap(), "/0/0/0");
    assert_eq!(unsafe { CStr::from_ptr(v.clause) }.to_str().unwrap(), "concat/ct-guard");
    assert!(v.visited <= 4);
    unsafe { idre_verdict_clear(&mut v) };
    assert!(v.locus.is_null());
    for engine in [IdreEngine::W, IdreEngine::Marked, IdreEngine::Oracle] {
        assert_eq!(unsafe { idre_check(e, engine, &mut v) }, IdreStatus::Negative);
        unsafe { idre_verdict_clear(&mut v) };
    }
    unsafe { idre_expr_free(e) };
    let e = parse("a*b");
    assert_eq!(unsafe { idre_check(e, IdreEngine::Unmarked, &mut v) }, IdreStatus::Ok);
    assert!(v.deterministic && v.locus.is_null());
    unsafe { idre_expr_free(e) };
}

#[test]
fn match_words() {
    let e = parse("(ab)&(cd+e)");
    let word = |w: &str| unsafe { idre_match(e, CString::new(w).unwrap().as_ptr()) };
    assert_eq!(word("abe"), IdreStatus::Ok);
    assert_eq!(word("acbd"), IdreStatus::Ok);
    assert_eq!(word("ba"), IdreStatus::Negative);
    assert_eq!(word("a1"), IdreStatus::InvalidArgument);
    unsafe { idre_expr_free(e) };
}

#[test]
fn generate_is_seeded() {
    let gen = |seed| {
        let mut out = ptr::null_mut();
        assert_eq!(unsafe { idre_generate(3, 30, seed, &mut out) }, IdreStatus::Ok);
        let s = unsafe { idre_expr_print(out) };
        let text = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
        unsafe {
            idre_string_free(s);
            idre_expr_free(out);
        }
        text
    };
    assert_eq!(gen(11), gen(11));
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { idre_generate(0, 30, 1, &mut out) }, IdreStatus::InvalidArgument);
}

#[test]
fn grammar_stats() {
    let (mut n, mut p) = (0, 0);
    assert_eq!(unsafe { idre_grammar_stats(IdreVariant::G1, 1, false, &mut n, &mut p) }, IdreStatus::Ok);
    assert_eq!((n, p), (33, 2097));
    assert_eq!(unsafe { idre_grammar_stats(IdreVariant::G1, 4, false, &mut n, &mut p) }, IdreStatus::Resource);
    assert_eq!(unsafe { idre_grammar_stats(IdreVariant::G2, 9, true, &mut n, &mut p) }, IdreStatus::InvalidArgument);
}

#[test]
fn header_compiles_as_c() {
    let header = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/idre.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for name in ["idre_parse", "idre_check", "idre_last_error_message", "IDRE_STATUS_INCONCLUSIVE", "typedef struct IdreExpr IdreExpr"] {
        assert!(text.contains(name), "{name}");
    }
    let Ok(status) = Command::new("cc").args(["-fsyntax-only", "-x", "c", "-std=c99", "-Wall", "-Werror"]).arg(&header).status() else {
        return;
    };
    assert!(status.success());
}
