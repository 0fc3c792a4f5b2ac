//! C ABI over `rittforge`.
//!
//! Values cross the boundary as opaque handles or JSON strings. Every call
//! returns an [`RfStatus`]; on failure [`rf_last_error`] describes the cause.
//! Strings returned through `char **` must be released with [`rf_string_free`],
//! handles with their matching `*_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use rittforge::decompose::complete_decomposition;
use rittforge::equivalence::affine_biequiv;
use rittforge::hcorr::HolCorr;
use rittforge::julia::{self, GridClassification, Region, RenderBudgets};
use rittforge::poly::Poly;
use rittforge::Error;

#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RfStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Domain = 4,
    Budget = 5,
    Io = 6,
    Panic = 7,
}

/// Exact polynomial over ℚ(i).
pub struct RfPoly(Poly);

/// Finite holomorphic correspondence.
pub struct RfHolCorr(HolCorr);

/// Classified render grid.
pub struct RfGrid(GridClassification);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Failure(RfStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Parse(_) => RfStatus::Parse,
            Error::BudgetExceeded(_) => RfStatus::Budget,
            Error::Io(_) => RfStatus::Io,
            _ => RfStatus::Domain,
        };
        Failure(status, e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure(RfStatus::Parse, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(RfStatus::NullPointer, format!("{what} is null"))
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> RfStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            RfStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            RfStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure(RfStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn put<T>(out: *mut *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("out"));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("out"));
    }
    *out = CString::new(s).map_err(|e| Failure(RfStatus::Domain, e.to_string()))?.into_raw();
    Ok(())
}

unsafe fn put_json(out: *mut *mut c_char, v: &impl serde::Serialize) -> Result<(), Failure> {
    put_string(out, serde_json::to_string(v)?)
}

/// Message for the most recent failure on this thread, or NULL after a
/// success. Valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn rf_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be NULL or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn rf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a polynomial from JSON, e.g. `{"coeffs":["1","0","1"]}`.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rf_poly_from_json(json: *const c_char, out: *mut *mut RfPoly) -> RfStatus {
    guard(|| {
        let p: Poly = serde_json::from_str(str_arg(json, "json")?)?;
        put(out, RfPoly(p))
    })
}

/// Parses a polynomial in `z` from an expression such as `z^2 - 1 + i`.
///
/// # Safety
/// `expr` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rf_poly_parse(expr: *const c_char, out: *mut *mut RfPoly) -> RfStatus {
    guard(|| put(out, RfPoly(julia::parse_map(str_arg(expr, "expr")?)?)))
}

/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rf_poly_to_json(p: *const RfPoly, out: *mut *mut c_char) -> RfStatus {
    guard(|| put_json(out, &handle(p, "p")?.0))
}

/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rf_poly_degree(p: *const RfPoly, out: *mut usize) -> RfStatus {
    guard(|| {
        let d = handle(p, "p")?.0.degree();
        *out.as_mut().ok_or_else(|| null("out"))? = d;
        Ok(())
    })
}

/// `out = f∘g`.
///
/// # Safety
/// `f`, `g` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rf_poly_compose(f: *const RfPoly, g: *const RfPoly, out: *mut *mut RfPoly) -> RfStatus {
    guard(|| {
        let h = handle(f, "f")?.0.compose(&handle(g, "g")?.0);
        put(out, RfPoly(h))
    })
}

/// # Safety
/// `p` must be NULL or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn rf_poly_free(p: *mut RfPoly) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Complete decomposition into primes, as JSON.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rf_decompose(p: *const RfPoly, out: *mut *mut c_char) -> RfStatus {
    guard(|| put_json(out, &complete_decomposition(&handle(p, "p")?.0)?))
}

/// Affine bi-equivalence `q = A∘p∘B`. Writes the witness JSON, or `null`
/// when none exists; `found` receives 1 or 0.
///
/// # Safety
/// `p`, `q` must be live handles; `found` and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rf_affine_biequiv(
    p: *const RfPoly,
    q: *const RfPoly,
    found: *mut i32,
    out: *mut *mut c_char,
) -> RfStatus {
    guard(|| {
        let w = affine_biequiv(&handle(p, "p")?.0, &handle(q, "q")?.0);
        *found.as_mut().ok_or_else(|| null("found"))? = i32::from(w.is_some());
        put_json(out, &w)
    })
}

/// Parses a correspondence from JSON, e.g. `{"coeffs_in_W":[...]}`.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rf_hcorr_from_json(json: *const c_char, out: *mut *mut RfHolCorr) -> RfStatus {
    guard(|| {
        let k: HolCorr = serde_json::from_str(str_arg(json, "json")?)?;
        put(out, RfHolCorr(k))
    })
}

/// # Safety
/// `k` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rf_hcorr_to_json(k: *const RfHolCorr, out: *mut *mut c_char) -> RfStatus {
    guard(|| put_json(out, &handle(k, "k")?.0))
}

/// `out = k2∘k1`, optionally reduced to its squarefree part.
///
/// # Safety
/// `k2`, `k1` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rf_hcorr_compose(
    k2: *const RfHolCorr,
    k1: *const RfHolCorr,
    squarefree: bool,
    out: *mut *mut RfHolCorr,
) -> RfStatus {
    guard(|| {
        let k = rittforge::hcorr::compose(&handle(k2, "k2")?.0, &handle(k1, "k1")?.0, squarefree)?;
        put(out, RfHolCorr(k))
    })
}

/// # Safety
/// `k` must be NULL or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn rf_hcorr_free(k: *mut RfHolCorr) {
    if !k.is_null() {
        drop(Box::from_raw(k));
    }
}

/// Classifies an `nx × nx` grid over the square of side `width` centred at
/// `(re, im)` with default budgets.
///
/// # Safety
/// `map` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rf_julia_render(
    map: *const RfPoly,
    re: f64,
    im: f64,
    width: f64,
    nx: usize,
    out: *mut *mut RfGrid,
) -> RfStatus {
    guard(|| {
        let region = Region::square(num_complex::Complex64::new(re, im), width);
        let grid = julia::render(&handle(map, "map")?.0, &region, nx, nx, &RenderBudgets::default())?;
        put(out, RfGrid(grid))
    })
}

/// # Safety
/// `g` must be a live handle; `nx`, `ny` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rf_grid_size(g: *const RfGrid, nx: *mut usize, ny: *mut usize) -> RfStatus {
    guard(|| {
        let g = &handle(g, "g")?.0;
        *nx.as_mut().ok_or_else(|| null("nx"))? = g.nx;
        *ny.as_mut().ok_or_else(|| null("ny"))? = g.ny;
        Ok(())
    })
}

/// Copies row-major class codes (0 finite, 85 undecided, 170 attracted,
/// 255 escape) into `buf`, which must hold `nx·ny` bytes.
///
/// # Safety
/// `g` must be a live handle; `buf` must be writable for `len` bytes.
#[no_mangle]
pub unsafe extern "C" fn rf_grid_codes(g: *const RfGrid, buf: *mut u8, len: usize) -> RfStatus {
    guard(|| {
        let g = &handle(g, "g")?.0;
        if buf.is_null() {
            return Err(null("buf"));
        }
        if len < g.cells.len() {
            return Err(Failure(RfStatus::Domain, format!("buffer holds {len} bytes, need {}", g.cells.len())));
        }
        let dst = std::slice::from_raw_parts_mut(buf, g.cells.len());
        for (d, c) in dst.iter_mut().zip(&g.cells) {
            *d = c.class.code();
        }
        Ok(())
    })
}

/// # Safety
/// `g` must be NULL or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn rf_grid_free(g: *mut RfGrid) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Runs acceptance check `id` (1-based) with `seed`; `pass` receives 1 or 0.
///
/// # Safety
/// `pass` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rf_check_run(id: usize, seed: u64, pass: *mut i32) -> RfStatus {
    guard(|| {
        if !(1..=rittforge::acceptance::CHECK_COUNT).contains(&id) {
            return Err(Failure(RfStatus::Domain, format!("no check {id}")));
        }
        let checks = rittforge::acceptance::Checks { seed, ..Default::default() };
        let report = checks.run(id);
        *pass.as_mut().ok_or_else(|| null("pass"))? = i32::from(report.pass);
        Ok(())
    })
}
