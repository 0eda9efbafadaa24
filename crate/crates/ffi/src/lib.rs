//! C ABI for toriclib.
//!
//! Objects cross the boundary as opaque handles created by `tl_*`
//! constructors and released with the matching `*_free`. Every fallible call returns a `TlStatus`; on failure the message
//! is available from `tl_last_error` on the same thread. Strings returned to
//! the caller are owned by it and must be released with `tl_string_free`.
//! Polynomial coefficients are exact rationals rendered as `"p"` or `"p/q"`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use toriclib::algebra::Poly;
use toriclib::chromatic::{brute_bc_free_count, chromatic_coefficients};
use toriclib::counting::{f_polynomial_box, f_polynomial_torus, p_sequence_via_multisets};
use toriclib::figures::io::FigureSet;
use toriclib::schema::{first_difference, q_sequence_via_schema, verify_binomial, Catalog};
use toriclib::{Error, Limits};

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TlStatus {
    Ok = 0,
    /// Two computations that must agree did not.
    Mismatch = 1,
    /// Malformed input text or figure data.
    Parse = 2,
    /// A size guard or brute-force budget stopped the call.
    Guard = 3,
    /// An argument was out of range.
    InvalidArgument = 4,
    /// A required pointer was null.
    NullPointer = 5,
    /// A panic or broken internal invariant.
    Internal = 6,
}

/// A parsed figure-set file.
pub struct TlFigureSet(FigureSet);

/// A polynomial with rational coefficients.
pub struct TlPoly(Poly);

/// A sequence of polynomials `q_0 .. q_K`.
pub struct TlTable(Vec<Poly>);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_for(e: &Error) -> TlStatus {
    match e {
        e if e.is_guard() => TlStatus::Guard,
        Error::Parse(_) | Error::InvalidFigure(_) | Error::DimensionMismatch { .. } => {
            TlStatus::Parse
        }
        Error::Internal(_) => TlStatus::Internal,
        _ => TlStatus::InvalidArgument,
    }
}

/// Runs `f`, converting errors and panics into a status plus a message.
fn guarded(f: impl FnOnce() -> Result<(), (TlStatus, String)>) -> TlStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => TlStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("panic inside toriclib".to_string());
            TlStatus::Internal
        }
    }
}

fn lib<T>(r: Result<T, Error>) -> Result<T, (TlStatus, String)> {
    r.map_err(|e| (status_for(&e), e.to_string()))
}

fn null(what: &str) -> (TlStatus, String) {
    (TlStatus::NullPointer, format!("{what} is null"))
}

fn limits(allow_large: bool) -> Limits {
    if allow_large {
        Limits::relaxed()
    } else {
        Limits::default()
    }
}

unsafe fn write_out<T>(out: *mut *mut T, value: T) {
    *out = Box::into_raw(Box::new(value));
}

fn to_c_string(s: String) -> *mut c_char {
    CString::new(s)
        .map(CString::into_raw)
        .unwrap_or(ptr::null_mut())
}

/// Message of the last failed call on this thread, or NULL if none. The
/// caller owns the returned string.
#[no_mangle]
pub extern "C" fn tl_last_error() -> *mut c_char {
    LAST_ERROR.with(|e| {
        e.borrow()
            .as_ref()
            .map_or(ptr::null_mut(), |c| c.clone().into_raw())
    })
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn tl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a figure-set JSON document.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tl_figure_set_from_json(
    json: *const c_char,
    out: *mut *mut TlFigureSet,
) -> TlStatus {
    guarded(|| {
        if json.is_null() {
            return Err(null("json"));
        }
        if out.is_null() {
            return Err(null("out"));
        }
        let text = CStr::from_ptr(json)
            .to_str()
            .map_err(|e| (TlStatus::Parse, format!("input is not UTF-8: {e}")))?;
        let set = lib(FigureSet::from_json(text))?;
        write_out(out, TlFigureSet(set));
        Ok(())
    })
}

/// Number of distinct figures in the set, or 0 for NULL.
///
/// # Safety
/// `set` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn tl_figure_set_len(set: *const TlFigureSet) -> usize {
    set.as_ref().map_or(0, |s| s.0.entries.len())
}

/// Dimension of the figures in the set, or 0 for NULL.
///
/// # Safety
/// `set` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn tl_figure_set_dim(set: *const TlFigureSet) -> usize {
    set.as_ref().map_or(0, |s| s.0.dim)
}

/// # Safety
/// `set` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tl_figure_set_free(set: *mut TlFigureSet) {
    if !set.is_null() {
        drop(Box::from_raw(set));
    }
}

unsafe fn placement_poly(
    set: *const TlFigureSet,
    boxed: bool,
    allow_large: bool,
    out: *mut *mut TlPoly,
    n0: *mut u64,
) -> TlStatus {
    guarded(|| {
        let set = set.as_ref().ok_or_else(|| null("set"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let ms = lib(set.0.to_multiset())?;
        let l = limits(allow_large);
        let p = lib(if boxed {
            f_polynomial_box(&ms, &l)
        } else {
            f_polynomial_torus(&ms, &l)
        })?;
        if !n0.is_null() {
            *n0 = p.n0;
        }
        write_out(out, TlPoly(p.poly));
        Ok(())
    })
}

/// Placement polynomial of the set on the torus, in `N = n^d`. `n0`, if not
/// NULL, receives the side length from which it is exact.
///
/// # Safety
/// `set` must be a live handle; `out` must be writable; `n0` NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn tl_poly_torus(
    set: *const TlFigureSet,
    allow_large: bool,
    out: *mut *mut TlPoly,
    n0: *mut u64,
) -> TlStatus {
    placement_poly(set, false, allow_large, out, n0)
}

/// Placement polynomial of the set in the box `[0,n)^d`, in the side `n`.
///
/// # Safety
/// As for `tl_poly_torus`.
#[no_mangle]
pub unsafe extern "C" fn tl_poly_box(
    set: *const TlFigureSet,
    allow_large: bool,
    out: *mut *mut TlPoly,
    n0: *mut u64,
) -> TlStatus {
    placement_poly(set, true, allow_large, out, n0)
}

/// Degree of the polynomial, or -1 for the zero polynomial and NULL.
///
/// # Safety
/// `p` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn tl_poly_degree(p: *const TlPoly) -> i64 {
    p.as_ref()
        .and_then(|p| p.0.degree())
        .map_or(-1, |d| d as i64)
}

/// Coefficient of `var^i` as an exact rational string. Owned by the caller.
///
/// # Safety
/// `p` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn tl_poly_coeff(p: *const TlPoly, i: usize) -> *mut c_char {
    match p.as_ref() {
        Some(p) => to_c_string(p.0.coeff(i).to_string()),
        None => ptr::null_mut(),
    }
}

/// Human-readable form such as `2N^2 - 7N`, using `var` as the variable
/// name (`"N"` when NULL). Owned by the caller.
///
/// # Safety
/// `p` must be NULL or a live handle; `var` NULL or NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn tl_poly_to_string(p: *const TlPoly, var: *const c_char) -> *mut c_char {
    let Some(p) = p.as_ref() else {
        return ptr::null_mut();
    };
    let var = if var.is_null() {
        "N".to_string()
    } else {
        CStr::from_ptr(var).to_string_lossy().into_owned()
    };
    to_c_string(p.0.display_with(&var))
}

/// Value at the integer `x` as an exact rational string. Owned by the caller.
///
/// # Safety
/// `p` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn tl_poly_eval(p: *const TlPoly, x: i64) -> *mut c_char {
    match p.as_ref() {
        Some(p) => to_c_string(p.0.eval_int(x).to_string()),
        None => ptr::null_mut(),
    }
}

/// # Safety
/// `p` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tl_poly_free(p: *mut TlPoly) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// The sequence `q_0 .. q_K` of the catalog given by `set` (each figure
/// listed once, with its weight). Both routes are computed; disagreement
/// returns `TL_STATUS_MISMATCH`.
///
/// # Safety
/// `set` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tl_sequence_table(
    set: *const TlFigureSet,
    max_weight: usize,
    allow_large: bool,
    out: *mut *mut TlTable,
) -> TlStatus {
    guarded(|| {
        let set = set.as_ref().ok_or_else(|| null("set"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let l = limits(allow_large);
        let catalog = lib(Catalog::from_figure_set(&set.0))?;
        let direct = lib(p_sequence_via_multisets(&catalog, max_weight, &l))?;
        let schema = lib(q_sequence_via_schema(&catalog, max_weight, &l))?;
        if let Some((k, a, b)) = first_difference(&direct, &schema) {
            return Err((
                TlStatus::Mismatch,
                format!("routes differ at k={k}: {a} vs {b}"),
            ));
        }
        write_out(out, TlTable(direct.polys));
        Ok(())
    })
}

/// Unsigned chromatic coefficient polynomials of `T^d_n` through `x^(N-K)`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tl_chromatic_table(
    dim: usize,
    max_weight: usize,
    allow_large: bool,
    out: *mut *mut TlTable,
) -> TlStatus {
    guarded(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        if dim == 0 {
            return Err((
                TlStatus::InvalidArgument,
                "dimension must be positive".to_string(),
            ));
        }
        let table =
            chromatic_coefficients(dim, max_weight, &limits(allow_large)).map_err(|e| match e {
                Error::Internal(m) => (TlStatus::Mismatch, m),
                e => (status_for(&e), e.to_string()),
            })?;
        write_out(out, TlTable(table.polys));
        Ok(())
    })
}

/// Number of polynomials in the table (`K + 1`), or 0 for NULL.
///
/// # Safety
/// `t` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn tl_table_len(t: *const TlTable) -> usize {
    t.as_ref().map_or(0, |t| t.0.len())
}

/// A new handle holding a copy of `q_k`, or NULL if out of range.
///
/// # Safety
/// `t` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn tl_table_get(t: *const TlTable, k: usize) -> *mut TlPoly {
    match t.as_ref().and_then(|t| t.0.get(k)) {
        Some(p) => Box::into_raw(Box::new(TlPoly(p.clone()))),
        None => ptr::null_mut(),
    }
}

/// Checks the binomial-type identities for the whole table. `passed`
/// receives the verdict.
///
/// # Safety
/// `t` must be a live handle; `passed` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tl_table_verify_binomial(
    t: *const TlTable,
    passed: *mut bool,
) -> TlStatus {
    guarded(|| {
        let t = t.as_ref().ok_or_else(|| null("table"))?;
        if passed.is_null() {
            return Err(null("passed"));
        }
        let table = toriclib::counting::SequenceTable { polys: t.0.clone() };
        let report = lib(verify_binomial(&table, table.max_weight()))?;
        *passed = report.passed();
        Ok(())
    })
}

/// # Safety
/// `t` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tl_table_free(t: *mut TlTable) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// Number of `k`-edge subsets of `T^d_n` with no broken circuit.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tl_bc_free_count(
    dim: usize,
    n: u64,
    k: usize,
    allow_large: bool,
    out: *mut u64,
) -> TlStatus {
    guarded(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let c = lib(brute_bc_free_count(dim, n, k, &limits(allow_large)))?;
        *out = u64::try_from(c)
            .map_err(|_| (TlStatus::Guard, format!("count {c} exceeds 64 bits")))?;
        Ok(())
    })
}
