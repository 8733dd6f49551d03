//! C ABI over `idre`. Expressions are opaque handles; every fallible call
//! returns an [`IdreStatus`] and leaves a message for
//! [`idre_last_error_message`]. Strings handed out must be released with
//! [`idre_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use idre::checker::{determ_marked, determ_unmarked, determ_w};
use idre::generator::{generate, GenConfig, GenError};
use idre::grammar::{build, stats, BuildError, Variant};
use idre::oracle::{determinism_oracle, membership, Determinism, OracleBounds};
use idre::{ExtExpr, Letter};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IdreStatus {
    Ok = 0,
    /// The expression is not deterministic, or the word is rejected.
    Negative = 1,
    InvalidArgument = 2,
    ParseError = 3,
    /// A size or time bound was hit.
    Resource = 4,
    /// The bounded oracle could not decide.
    Inconclusive = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IdreEngine {
    W = 0,
    Unmarked = 1,
    Marked = 2,
    Oracle = 3,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IdreVariant {
    G1 = 1,
    G2 = 2,
}

/// Opaque expression handle.
pub struct IdreExpr {
    inner: ExtExpr,
}

/// Result of [`idre_check`]. `locus` and `clause` are null for deterministic
/// expressions and for the oracle engine; release them with
/// [`idre_verdict_clear`].
#[repr(C)]
pub struct IdreVerdict {
    pub deterministic: bool,
    pub locus: *mut c_char,
    pub clause: *mut c_char,
    pub visited: u32,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl ToString) {
    let text = CString::new(msg.to_string().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = text);
}

fn guard(f: impl FnOnce() -> IdreStatus) -> IdreStatus {
    set_error("");
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| {
        set_error("internal panic");
        IdreStatus::Panic
    })
}

fn fail(status: IdreStatus, msg: impl ToString) -> IdreStatus {
    set_error(msg);
    status
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, IdreStatus> {
    if s.is_null() {
        return Err(fail(IdreStatus::InvalidArgument, "null string"));
    }
    CStr::from_ptr(s).to_str().map_err(|_| fail(IdreStatus::InvalidArgument, "string is not UTF-8"))
}

fn to_c(s: impl Into<Vec<u8>>) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

/// Message of the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn idre_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Parses and normalises `text` into a new handle stored in `*out`.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn idre_parse(text: *const c_char, out: *mut *mut IdreExpr) -> IdreStatus {
    guard(|| {
        if out.is_null() {
            return fail(IdreStatus::InvalidArgument, "null output pointer");
        }
        let text = match read_str(text) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match idre::parse(text) {
            Ok(e) => {
                *out = Box::into_raw(Box::new(IdreExpr { inner: idre::simplify(&e) }));
                IdreStatus::Ok
            }
            Err(e) => fail(IdreStatus::ParseError, e),
        }
    })
}

/// # Safety
/// `expr` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn idre_expr_free(expr: *mut IdreExpr) {
    if !expr.is_null() {
        drop(Box::from_raw(expr));
    }
}

/// Printed form of the expression, or null on a null handle.
///
/// # Safety
/// `expr` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn idre_expr_print(expr: *const IdreExpr) -> *mut c_char {
    match expr.as_ref() {
        Some(e) => to_c(idre::print(&e.inner)),
        None => ptr::null_mut(),
    }
}

/// Size with counters weighted by the bit lengths of their bounds; 0 on a
/// null handle.
///
/// # Safety
/// `expr` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn idre_expr_size(expr: *const IdreExpr) -> u64 {
    expr.as_ref().map_or(0, |e| idre::size(&e.inner))
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn idre_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Decides determinism. Returns `Ok` or `Negative` with `*out` filled, or
/// `Inconclusive` when the oracle engine runs out of words.
///
/// # Safety
/// `expr` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn idre_check(expr: *const IdreExpr, engine: IdreEngine, out: *mut IdreVerdict) -> IdreStatus {
    guard(|| {
        let (Some(e), false) = (expr.as_ref(), out.is_null()) else {
            return fail(IdreStatus::InvalidArgument, "null argument");
        };
        let e = &e.inner;
        let mut verdict = IdreVerdict { deterministic: true, locus: ptr::null_mut(), clause: ptr::null_mut(), visited: 0 };
        if engine == IdreEngine::Oracle {
            match determinism_oracle(e, OracleBounds::for_expr(e)) {
                Determinism::Deterministic => {}
                Determinism::Violation(_) => verdict.deterministic = false,
                Determinism::Inconclusive => return fail(IdreStatus::Inconclusive, "bounded language too large"),
            }
        } else {
            let v = match engine {
                IdreEngine::W => determ_w(e),
                IdreEngine::Marked => determ_marked(e),
                _ => determ_unmarked(e),
            };
            verdict.deterministic = v.deterministic;
            verdict.visited = v.visited_nodes.len() as u32;
            if let Some(p) = &v.locus {
                verdict.locus = to_c(p.to_string());
            }
            if let Some(c) = v.violated_clause {
                verdict.clause = to_c(c);
            }
        }
        let status = if verdict.deterministic { IdreStatus::Ok } else { IdreStatus::Negative };
        *out = verdict;
        status
    })
}

/// Releases the strings of a verdict and nulls them.
///
/// # Safety
/// `v` must be null or point to a verdict filled by [`idre_check`].
#[no_mangle]
pub unsafe extern "C" fn idre_verdict_clear(v: *mut IdreVerdict) {
    if let Some(v) = v.as_mut() {
        idre_string_free(v.locus);
        idre_string_free(v.clause);
        v.locus = ptr::null_mut();
        v.clause = ptr::null_mut();
    }
}

/// Membership of `word` (letters `a`-`z`, empty string for ε). Returns `Ok`
/// when accepted and `Negative` when rejected.
///
/// # Safety
/// `expr` must be a live handle and `word` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn idre_match(expr: *const IdreExpr, word: *const c_char) -> IdreStatus {
    guard(|| {
        let Some(e) = expr.as_ref() else {
            return fail(IdreStatus::InvalidArgument, "null handle");
        };
        let word = match read_str(word) {
            Ok(w) => w,
            Err(s) => return s,
        };
        let Some(w) = word.chars().map(Letter::from_char).collect::<Option<Vec<_>>>() else {
            return fail(IdreStatus::InvalidArgument, "word must use letters a-z");
        };
        if membership(&e.inner, &w) {
            IdreStatus::Ok
        } else {
            IdreStatus::Negative
        }
    })
}

/// Generates one deterministic expression over the first `alphabet_size`
/// letters with size at most `max_size`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn idre_generate(alphabet_size: u32, max_size: u64, seed: u64, out: *mut *mut IdreExpr) -> IdreStatus {
    guard(|| {
        if out.is_null() {
            return fail(IdreStatus::InvalidArgument, "null output pointer");
        }
        match generate(&GenConfig::new(alphabet_size as usize, max_size, seed)) {
            Ok(r) => {
                *out = Box::into_raw(Box::new(IdreExpr { inner: r.expr }));
                IdreStatus::Ok
            }
            Err(e @ GenError::Config(_)) => fail(IdreStatus::InvalidArgument, e),
            Err(e) => fail(IdreStatus::Resource, e),
        }
    })
}

/// Nonterminal and production counts of a grammar.
///
/// # Safety
/// `nonterminals` and `productions` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn idre_grammar_stats(
    variant: IdreVariant,
    sigma: u32,
    simplified: bool,
    nonterminals: *mut u64,
    productions: *mut u64,
) -> IdreStatus {
    guard(|| {
        if nonterminals.is_null() || productions.is_null() {
            return fail(IdreStatus::InvalidArgument, "null output pointer");
        }
        let variant = match variant {
            IdreVariant::G1 => Variant::G1,
            IdreVariant::G2 => Variant::G2,
        };
        match build(variant, sigma as usize, simplified) {
            Ok(g) => {
                let s = stats(&g);
                *nonterminals = s.nonterminals;
                *productions = s.productions;
                IdreStatus::Ok
            }
            Err(e @ BuildError::Alphabet(_)) => fail(IdreStatus::InvalidArgument, e),
            Err(e) => fail(IdreStatus::Resource, e),
        }
    })
}
