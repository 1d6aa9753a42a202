//! C ABI over the `awproof` library.
//!
//! Handles are opaque and owned by the caller once returned; free them with
//! the matching `*_free`. Strings returned through `char **` out-parameters
//! are heap allocated and must be released with [`aw_string_free`]. Every
//! fallible call returns an [`AwStatus`]; on anything but `AW_STATUS_OK` the
//! message is available from [`aw_last_error`] on the same thread.
//!
//! Numbers cross the boundary as rational strings such as `"-3/16"`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use awproof::askey_wilson::{build_family, AWFamily, AWParams, FamilyJson};
use awproof::proof_engine::run_chain;
use awproof::scalars::{format_rational, parse_rational, parse_rational_list, QContext, Rational};
use awproof::Error;

/// Result codes. Zero is success.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AwStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Domain = 4,
    DegenerateParams = 5,
    ExponentOverflow = 6,
    EigenvalueCollision = 7,
    OrthogonalityBroken = 8,
    Usage = 9,
    Index = 10,
    Dependency = 11,
    ProportionalityFailure = 12,
    NoRationalMatch = 13,
    Internal = 14,
    Panic = 15,
}

impl From<&Error> for AwStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::Domain(_) => AwStatus::Domain,
            Error::ExponentOverflow { .. } => AwStatus::ExponentOverflow,
            Error::DegenerateParams(_) => AwStatus::DegenerateParams,
            Error::EigenvalueCollision { .. } => AwStatus::EigenvalueCollision,
            Error::OrthogonalityBroken(_) => AwStatus::OrthogonalityBroken,
            Error::Usage(_) => AwStatus::Usage,
            Error::Index(_) => AwStatus::Index,
            Error::Dependency(_) => AwStatus::Dependency,
            Error::ProportionalityFailure { .. } => AwStatus::ProportionalityFailure,
            Error::NoRationalMatch(_) => AwStatus::NoRationalMatch,
            Error::Parse(_) => AwStatus::Parse,
            Error::Internal(_) => AwStatus::Internal,
        }
    }
}

/// A `q`-context: `v = q^{1/2}` with its tabulated `q`-numbers.
pub struct AwContext(QContext);

/// A monic family `p_0..p_N` with recurrence data.
pub struct AwFamily(AWFamily);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

struct Fail(AwStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(AwStatus::from(&e), e.to_string())
    }
}

/// Runs `f`, translating errors and panics into a status.
fn guard<F: FnOnce() -> Result<(), Fail>>(f: F) -> AwStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => AwStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("panic inside awproof");
            AwStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if s.is_null() {
        return Err(Fail(AwStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| Fail(AwStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn write_out<T>(out: *mut *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail(AwStatus::NullPointer, "output pointer is null".into()));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail(AwStatus::NullPointer, "output pointer is null".into()));
    }
    let c = CString::new(s).map_err(|_| Fail(AwStatus::Internal, "string has an interior NUL".into()))?;
    *out = c.into_raw();
    Ok(())
}

unsafe fn borrow<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref()
        .ok_or_else(|| Fail(AwStatus::NullPointer, format!("{what} is null")))
}

fn four(s: &str) -> Result<[Rational; 4], Fail> {
    parse_rational_list(s)?
        .try_into()
        .map_err(|_| Fail(AwStatus::Usage, "expected four comma-separated rationals".into()))
}

/// Message for the last failed call on this thread, or null. Valid until the
/// next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn aw_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn aw_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Creates a context for `v = q^{1/2}` given as a rational string in (0, 1).
///
/// # Safety
/// `qsqrt` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn aw_context_new(qsqrt: *const c_char, out: *mut *mut AwContext) -> AwStatus {
    guard(|| {
        let v = parse_rational(read_str(qsqrt, "qsqrt")?)?;
        write_out(out, AwContext(QContext::new(v)?))
    })
}

/// # Safety
/// `ctx` must come from [`aw_context_new`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn aw_context_free(ctx: *mut AwContext) {
    if !ctx.is_null() {
        drop(Box::from_raw(ctx));
    }
}

/// Writes `gamma_n` as a rational string.
///
/// # Safety
/// `ctx` must be a live context; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn aw_gamma(ctx: *const AwContext, n: usize, out: *mut *mut c_char) -> AwStatus {
    guard(|| {
        let ctx = borrow(ctx, "context")?;
        write_string(out, format_rational(&ctx.0.gamma(n)?))
    })
}

/// Builds `p_0..p_{n_max}`. `params` holds four comma-separated rationals,
/// read as the elementary symmetric functions when `as_sigmas` is nonzero and
/// as the four parameters otherwise.
///
/// # Safety
/// `ctx` must be a live context, `params` a NUL-terminated string, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn aw_family_build(
    ctx: *const AwContext,
    params: *const c_char,
    as_sigmas: i32,
    n_max: usize,
    out: *mut *mut AwFamily,
) -> AwStatus {
    guard(|| {
        let ctx = borrow(ctx, "context")?;
        let vals = four(read_str(params, "params")?)?;
        let p = if as_sigmas != 0 {
            AWParams::from_sigmas(vals)?
        } else {
            AWParams::from_roots(vals)?
        };
        write_out(out, AwFamily(build_family(&ctx.0, &p, n_max)?))
    })
}

/// Loads a family from the JSON written by [`aw_family_to_json`].
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn aw_family_from_json(json: *const c_char, out: *mut *mut AwFamily) -> AwStatus {
    guard(|| {
        let doc: FamilyJson = serde_json::from_str(read_str(json, "json")?)
            .map_err(|e| Fail(AwStatus::Parse, e.to_string()))?;
        write_out(out, AwFamily(AWFamily::from_json(&doc)?))
    })
}

/// # Safety
/// `fam` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn aw_family_free(fam: *mut AwFamily) {
    if !fam.is_null() {
        drop(Box::from_raw(fam));
    }
}

/// Highest degree `N` in the family, or 0 for a null handle.
///
/// # Safety
/// `fam` must be null or a live family.
#[no_mangle]
pub unsafe extern "C" fn aw_family_n_max(fam: *const AwFamily) -> usize {
    fam.as_ref().map_or(0, |f| f.0.n_max())
}

/// # Safety
/// `fam` must be a live family; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn aw_family_to_json(fam: *const AwFamily, out: *mut *mut c_char) -> AwStatus {
    guard(|| {
        let fam = borrow(fam, "family")?;
        let s = serde_json::to_string(&fam.0.to_json()).map_err(|e| Fail(AwStatus::Internal, e.to_string()))?;
        write_string(out, s)
    })
}

/// Writes `C_n` as a rational string (`1 <= n < N`).
///
/// # Safety
/// `fam` must be a live family; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn aw_family_c(fam: *const AwFamily, n: usize, out: *mut *mut c_char) -> AwStatus {
    guard(|| {
        let fam = borrow(fam, "family")?;
        write_string(out, format_rational(fam.0.c(n)?))
    })
}

/// Runs the proof chain for the orders `ks[0..nk]` up to `n_max` and writes
/// the JSON report. `*passed` is set to 1 iff every check passed. Failing
/// checks are not an error: the status is `AW_STATUS_OK` whenever a report
/// was produced.
///
/// # Safety
/// `fam` must be a live family, `ks` must point to `nk` values, and `report`
/// and `passed` must be writable.
#[no_mangle]
pub unsafe extern "C" fn aw_verify_chain(
    fam: *const AwFamily,
    ks: *const usize,
    nk: usize,
    n_max: usize,
    report: *mut *mut c_char,
    passed: *mut i32,
) -> AwStatus {
    guard(|| {
        let fam = borrow(fam, "family")?;
        if ks.is_null() || nk == 0 {
            return Err(Fail(AwStatus::Usage, "at least one order is required".into()));
        }
        if passed.is_null() {
            return Err(Fail(AwStatus::NullPointer, "passed is null".into()));
        }
        let ks = std::slice::from_raw_parts(ks, nk);
        if ks.contains(&0) {
            return Err(Fail(AwStatus::Usage, "chain orders start at 1".into()));
        }
        let r = run_chain(&fam.0, ks, n_max);
        write_string(report, r.to_json())?;
        *passed = i32::from(r.passed());
        Ok(())
    })
}
