//! C ABI for `fid`.
//!
//! Structures and formulas cross the boundary as opaque handles created by
//! the `*_parse` functions and released with the matching `*_free`. Every
//! fallible call returns a [`FidStatus`]; on failure the message is available
//! from [`fid_last_error`] until the next call on the same thread. Strings
//! returned through out-parameters are owned by the caller and released with
//! [`fid_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use fid::games::distinguishing_rank_alt;
use fid::invariants::invariant_report;
use fid::logic::{parse_formula, Formula};
use fid::structures::{are_isomorphic, parse_structure, write_structure, Structure};
use fid::synthesis::{synthesize, Method};
use fid::verification::{verify_identifies, RivalClass};
use fid::{Error, Limits};

/// Status codes returned by every fallible function.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FidStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Precondition = 4,
    CapExceeded = 5,
    VocabularyMismatch = 6,
    Internal = 7,
}

/// An opaque finite structure.
pub struct FidStructure(Structure);

/// An opaque first-order sentence.
pub struct FidFormula(Formula);

/// Numeric invariants of a structure.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct FidInvariants {
    pub order: usize,
    pub max_arity: usize,
    pub sigma: usize,
    /// Exact when `delta_exact` is set, otherwise a lower bound.
    pub delta: usize,
    pub delta_exact: bool,
    pub rho: usize,
    pub fineness: usize,
}

/// Summary of a synthesized sentence.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct FidSynthesisInfo {
    pub quantifiers: usize,
    pub existential: usize,
    pub universal: usize,
    pub claimed_bound: usize,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> FidStatus {
    match e {
        Error::Parse { .. } | Error::Vocabulary(_) | Error::UnknownSymbol(_) | Error::ArityMismatch { .. } => {
            FidStatus::Parse
        }
        Error::CapExceeded(_) => FidStatus::CapExceeded,
        Error::VocabularyMismatch => FidStatus::VocabularyMismatch,
        Error::Invariant(_) => FidStatus::Internal,
        _ => FidStatus::Precondition,
    }
}

/// Runs `f`, recording its error and containing panics.
fn guard(f: impl FnOnce() -> Result<(), FidStatus>) -> FidStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => FidStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("panic inside fid".into());
            FidStatus::Internal
        }
    }
}

fn lib<T>(r: fid::Result<T>) -> Result<T, FidStatus> {
    r.map_err(|e| {
        set_error(e.to_string());
        status_of(&e)
    })
}

fn null(what: &str) -> FidStatus {
    set_error(format!("null pointer: {what}"));
    FidStatus::NullPointer
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, FidStatus> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|e| {
        set_error(format!("{what}: {e}"));
        FidStatus::InvalidUtf8
    })
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, FidStatus> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn write<T>(out: *mut T, value: T, what: &str) -> Result<(), FidStatus> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

/// Message of the last failed call on this thread, or null. Valid until the
/// next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn fid_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by the library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn fid_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a structure in the `.fos` text format.
///
/// # Safety
/// `src` must be a valid C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fid_structure_parse(src: *const c_char, out: *mut *mut FidStructure) -> FidStatus {
    guard(|| {
        let m = lib(parse_structure(text(src, "src")?))?;
        write(out, Box::into_raw(Box::new(FidStructure(m))), "out")
    })
}

/// Releases a structure. Null is ignored.
///
/// # Safety
/// `m` must come from [`fid_structure_parse`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn fid_structure_free(m: *mut FidStructure) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Number of elements, or 0 for null.
///
/// # Safety
/// `m` must be null or a live structure handle.
#[no_mangle]
pub unsafe extern "C" fn fid_structure_order(m: *const FidStructure) -> usize {
    m.as_ref().map_or(0, |m| m.0.order())
}

/// Serializes a structure to the `.fos` text format.
///
/// # Safety
/// `m` must be a live structure handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fid_structure_to_text(m: *const FidStructure, out: *mut *mut c_char) -> FidStatus {
    guard(|| {
        let m = deref(m, "structure")?;
        write(out, owned_string(write_structure(&m.0)), "out")
    })
}

/// Whether two structures are isomorphic.
///
/// # Safety
/// `a` and `b` must be live structure handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fid_are_isomorphic(
    a: *const FidStructure,
    b: *const FidStructure,
    out: *mut bool,
) -> FidStatus {
    guard(|| {
        let (a, b) = (deref(a, "a")?, deref(b, "b")?);
        if a.0.vocab() != b.0.vocab() {
            return lib(Err(Error::VocabularyMismatch));
        }
        write(out, are_isomorphic(&a.0, &b.0), "out")
    })
}

/// Computes σ, δ, ρ and the fineness of the ρ witness base.
///
/// # Safety
/// `m` must be a live structure handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fid_invariants(m: *const FidStructure, out: *mut FidInvariants) -> FidStatus {
    guard(|| {
        let m = deref(m, "structure")?;
        let r = lib(invariant_report(&m.0, Limits::default().delta_exact_max))?;
        let inv = FidInvariants {
            order: r.n,
            max_arity: r.k,
            sigma: r.sigma,
            delta: r.delta_exact.unwrap_or(r.delta_lower),
            delta_exact: r.delta_exact.is_some(),
            rho: r.rho,
            fineness: r.fineness,
        };
        write(out, inv, "out")
    })
}

/// Parses a sentence in the formula text grammar.
///
/// # Safety
/// `src` must be a valid C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fid_formula_parse(src: *const c_char, out: *mut *mut FidFormula) -> FidStatus {
    guard(|| {
        let f = lib(parse_formula(text(src, "src")?))?;
        write(out, Box::into_raw(Box::new(FidFormula(f))), "out")
    })
}

/// Releases a formula. Null is ignored.
///
/// # Safety
/// `f` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn fid_formula_free(f: *mut FidFormula) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Prints a formula in the text grammar.
///
/// # Safety
/// `f` must be a live formula handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fid_formula_to_text(f: *const FidFormula, out: *mut *mut c_char) -> FidStatus {
    guard(|| {
        let f = deref(f, "formula")?;
        write(out, owned_string(f.0.to_string()), "out")
    })
}

/// Synthesizes an identifying sentence. `method` is one of `naive-id`,
/// `naive-def`, `sigma`, `rho`, `delta`, `auto` or `graph`. `info` may be null.
///
/// # Safety
/// `m` must be a live structure handle, `method` a valid C string, `out` a
/// valid pointer and `info` null or valid.
#[no_mangle]
pub unsafe extern "C" fn fid_synthesize(
    m: *const FidStructure,
    method: *const c_char,
    out: *mut *mut FidFormula,
    info: *mut FidSynthesisInfo,
) -> FidStatus {
    guard(|| {
        let m = deref(m, "structure")?;
        let method: Method = lib(text(method, "method")?.parse())?;
        let r = lib(synthesize(&m.0, method, &Limits::default()))?;
        if !info.is_null() {
            info.write(FidSynthesisInfo {
                quantifiers: r.metrics.quantifiers,
                existential: r.metrics.existential,
                universal: r.metrics.universal,
                claimed_bound: r.claimed_bound,
            });
        }
        write(out, Box::into_raw(Box::new(FidFormula(r.formula))), "out")
    })
}

/// Whether `f` holds in `m` and in no other structure of the same order up to
/// isomorphism. Graphs are compared with graphs only.
///
/// # Safety
/// `m` and `f` must be live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fid_verify_identifies(
    m: *const FidStructure,
    f: *const FidFormula,
    out: *mut bool,
) -> FidStatus {
    guard(|| {
        let (m, f) = (deref(m, "structure")?, deref(f, "formula")?);
        lib(f.0.validate(m.0.vocab()))?;
        let v = lib(verify_identifies(&m.0, &f.0, RivalClass::for_structure(&m.0), &Limits::default()))?;
        write(out, v.passed(), "out")
    })
}

/// Least number of rounds in which Spoiler wins the game on `a` and `b`.
/// A negative `alternations` means unrestricted; `max_rounds = 0` selects
/// `max(n, n') + 1`. `found` is false when Spoiler cannot win within the cap,
/// which includes isomorphic inputs.
///
/// # Safety
/// `a` and `b` must be live structure handles; `value` and `found` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn fid_game_value(
    a: *const FidStructure,
    b: *const FidStructure,
    alternations: i64,
    max_rounds: usize,
    value: *mut usize,
    found: *mut bool,
) -> FidStatus {
    guard(|| {
        let (a, b) = (deref(a, "a")?, deref(b, "b")?);
        let alternations = usize::try_from(alternations).ok();
        let cap = (max_rounds > 0).then_some(max_rounds);
        let v = lib(distinguishing_rank_alt(&a.0, &b.0, alternations, cap))?;
        write(found, v.is_some(), "found")?;
        write(value, v.unwrap_or(0), "value")
    })
}
