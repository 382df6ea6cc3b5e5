//! C ABI over `tripfact`.
//!
//! Groups and triples are opaque heap handles released with their `_free`
//! function. Every fallible call returns a [`TfStatusCode`]; on failure the
//! message is kept per thread and read with [`tf_last_error`]. Strings handed
//! out by the library are released with [`tf_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use tripfact::io::{parse_group, parse_permutation, parse_triple};
use tripfact::{Error, PermGroup, Status, TripleFactorisation};

/// Return codes. The nonzero values match the command-line exit codes where
/// they overlap.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TfStatusCode {
    Ok = 0,
    /// Unclassified library error.
    Error = 1,
    /// Malformed input or mismatched degrees.
    Parse = 2,
    /// A configured ceiling was exceeded.
    Ceiling = 3,
    /// An internal consistency check failed.
    Assertion = 4,
    /// A required pointer was null.
    NullPointer = 5,
    /// A panic was caught at the boundary.
    Panic = 6,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TfClass {
    NotFactorisation = 0,
    Trivial = 1,
    Degenerate = 2,
    Nondegenerate = 3,
}

/// A permutation group.
pub struct TfGroup {
    inner: PermGroup,
}

/// A triple `(G, A, B)`.
pub struct TfTriple {
    inner: TripleFactorisation,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<String>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn code_of(e: &Error) -> TfStatusCode {
    match e.exit_code() {
        2 => TfStatusCode::Parse,
        3 => TfStatusCode::Ceiling,
        4 => TfStatusCode::Assertion,
        _ => TfStatusCode::Error,
    }
}

fn guard<F>(f: F) -> TfStatusCode
where
    F: FnOnce() -> Result<(), TfStatusCode>,
{
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => TfStatusCode::Ok,
        Ok(Err(code)) => code,
        Err(_) => {
            set_error("panic inside tripfact".to_string());
            TfStatusCode::Panic
        }
    }
}

fn lift<T>(r: tripfact::Result<T>) -> Result<T, TfStatusCode> {
    r.map_err(|e| {
        set_error(e.to_string());
        code_of(&e)
    })
}

unsafe fn c_str<'a>(s: *const c_char) -> Result<&'a str, TfStatusCode> {
    if s.is_null() {
        set_error("null string".to_string());
        return Err(TfStatusCode::NullPointer);
    }
    CStr::from_ptr(s).to_str().map_err(|_| {
        set_error("string is not UTF-8".to_string());
        TfStatusCode::Parse
    })
}

unsafe fn deref<'a, T>(p: *const T) -> Result<&'a T, TfStatusCode> {
    p.as_ref().ok_or_else(|| {
        set_error("null handle".to_string());
        TfStatusCode::NullPointer
    })
}

fn out_ptr<T>(p: *mut T) -> Result<(), TfStatusCode> {
    if p.is_null() {
        set_error("null output pointer".to_string());
        return Err(TfStatusCode::NullPointer);
    }
    Ok(())
}

/// Parses a group file (cycle notation, one generator per line, optional
/// `degree N` header).
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tf_group_from_cycles(text: *const c_char, out: *mut *mut TfGroup) -> TfStatusCode {
    guard(|| {
        out_ptr(out)?;
        let g = lift(parse_group(c_str(text)?))?;
        *out = Box::into_raw(Box::new(TfGroup { inner: g }));
        Ok(())
    })
}

/// The degree of the group.
///
/// # Safety
/// `g` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tf_group_degree(g: *const TfGroup, out: *mut usize) -> TfStatusCode {
    guard(|| {
        out_ptr(out)?;
        *out = deref(g)?.inner.degree();
        Ok(())
    })
}

/// The group order; `TF_STATUS_CODE_CEILING` if it does not fit in 64 bits.
///
/// # Safety
/// `g` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tf_group_order(g: *const TfGroup, out: *mut u64) -> TfStatusCode {
    guard(|| {
        out_ptr(out)?;
        let order = deref(g)?.inner.order();
        *out = u64::try_from(order).map_err(|_| {
            set_error(format!("order {order} exceeds 64 bits"));
            TfStatusCode::Ceiling
        })?;
        Ok(())
    })
}

/// Membership of a permutation given in cycle notation.
///
/// # Safety
/// `g` must be a live handle, `perm` a NUL-terminated string and `out` a
/// valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tf_group_contains(g: *const TfGroup, perm: *const c_char, out: *mut bool) -> TfStatusCode {
    guard(|| {
        out_ptr(out)?;
        let g = &deref(g)?.inner;
        let x = lift(parse_permutation(c_str(perm)?, g.degree()))?;
        *out = lift(g.contains(&x))?;
        Ok(())
    })
}

/// # Safety
/// `g` must be null or a handle from this library, freed at most once.
#[no_mangle]
pub unsafe extern "C" fn tf_group_free(g: *mut TfGroup) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Builds a triple from three groups of equal degree; `a` and `b` must be
/// subgroups of `g`. The inputs are copied and stay owned by the caller.
///
/// # Safety
/// The group handles must be live and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tf_triple_new(
    g: *const TfGroup,
    a: *const TfGroup,
    b: *const TfGroup,
    out: *mut *mut TfTriple,
) -> TfStatusCode {
    guard(|| {
        out_ptr(out)?;
        let (g, a, b) = (&deref(g)?.inner, &deref(a)?.inner, &deref(b)?.inner);
        for h in [a, b] {
            if h.degree() != g.degree() {
                let e = Error::DegreeMismatch {
                    left: h.degree(),
                    right: g.degree(),
                };
                set_error(e.to_string());
                return Err(TfStatusCode::Parse);
            }
        }
        let t = lift(TripleFactorisation::new(g.clone(), a.clone(), b.clone()))?;
        *out = Box::into_raw(Box::new(TfTriple { inner: t }));
        Ok(())
    })
}

/// Parses a triple file with `G:`, `A:` and `B:` sections.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tf_triple_from_text(text: *const c_char, out: *mut *mut TfTriple) -> TfStatusCode {
    guard(|| {
        out_ptr(out)?;
        let t = lift(parse_triple(c_str(text)?))?;
        *out = Box::into_raw(Box::new(TfTriple { inner: t }));
        Ok(())
    })
}

/// # Safety
/// `t` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tf_triple_classify(t: *const TfTriple, out: *mut TfClass) -> TfStatusCode {
    guard(|| {
        out_ptr(out)?;
        *out = match lift(deref(t)?.inner.status())? {
            Status::NotFactorisation => TfClass::NotFactorisation,
            Status::Trivial => TfClass::Trivial,
            Status::Degenerate => TfClass::Degenerate,
            Status::Nondegenerate => TfClass::Nondegenerate,
        };
        Ok(())
    })
}

/// The classification report as JSON; release with [`tf_string_free`].
///
/// # Safety
/// `t` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tf_triple_report_json(t: *const TfTriple, out: *mut *mut c_char) -> TfStatusCode {
    guard(|| {
        out_ptr(out)?;
        let report = lift(deref(t)?.inner.report())?;
        let json = serde_json::to_string(&report).map_err(|e| {
            set_error(e.to_string());
            TfStatusCode::Error
        })?;
        *out = CString::new(json).expect("JSON has no NUL").into_raw();
        Ok(())
    })
}

/// # Safety
/// `t` must be null or a handle from this library, freed at most once.
#[no_mangle]
pub unsafe extern "C" fn tf_triple_free(t: *mut TfTriple) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// The message of the last failed call on this thread, or null. Release
/// with [`tf_string_free`].
#[no_mangle]
pub extern "C" fn tf_last_error() -> *mut c_char {
    LAST_ERROR.with(|e| match e.borrow().as_ref() {
        Some(msg) => CString::new(msg.replace('\0', " ")).map_or(ptr::null_mut(), CString::into_raw),
        None => ptr::null_mut(),
    })
}

/// # Safety
/// `s` must be null or a string returned by this library, freed at most once.
#[no_mangle]
pub unsafe extern "C" fn tf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
