//! C ABI over `sasaki-core`.
//!
//! Joins are exposed as opaque handles created by [`sasaki_join_new`] and
//! released by [`sasaki_join_free`]. Every fallible call returns a
//! [`SasakiStatus`]; on failure the message is available from
//! [`sasaki_last_error`] on the same thread. Strings handed out by the
//! library are NUL-terminated UTF-8 and must be released with
//! [`sasaki_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use sasaki_core::join::{validate_join, BaseGeometry, JoinData};
use sasaki_core::{cli, rays, report, Error};

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SasakiStatus {
    Ok = 0,
    /// Null pointer, bad UTF-8 or an undersized buffer.
    InvalidArgument = 1,
    /// The library rejected the input data.
    InvalidInput = 2,
    /// A solver failed to converge or hit an internal inconsistency.
    SolverFailure = 3,
    /// A Rust panic was caught at the boundary.
    Panic = 4,
}

/// Opaque handle to a validated join.
pub struct SasakiJoin {
    inner: JoinData,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn status_of(err: &Error) -> SasakiStatus {
    match err.exit_code() {
        2 => SasakiStatus::InvalidInput,
        _ => SasakiStatus::SolverFailure,
    }
}

/// Runs `f`, translating errors and panics into a status code.
fn guard(f: impl FnOnce() -> Result<(), (SasakiStatus, String)>) -> SasakiStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SasakiStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| payload.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            set_error(format!("panic: {msg}"));
            SasakiStatus::Panic
        }
    }
}

fn core_err(e: Error) -> (SasakiStatus, String) {
    (status_of(&e), e.to_string())
}

fn bad_arg(msg: &str) -> (SasakiStatus, String) {
    (SasakiStatus::InvalidArgument, msg.to_string())
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, (SasakiStatus, String)> {
    if p.is_null() {
        return Err(bad_arg(&format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| bad_arg(&format!("{what} is not valid UTF-8")))
}

unsafe fn join_ref<'a>(j: *const SasakiJoin) -> Result<&'a JoinData, (SasakiStatus, String)> {
    j.as_ref().map(|j| &j.inner).ok_or_else(|| bad_arg("join handle is null"))
}

unsafe fn write_out<T>(out: *mut T, value: T, what: &str) -> Result<(), (SasakiStatus, String)> {
    if out.is_null() {
        return Err(bad_arg(&format!("{what} is null")));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), (SasakiStatus, String)> {
    let c = CString::new(s).map_err(|_| (SasakiStatus::SolverFailure, "output contains NUL".to_string()))?;
    if out.is_null() {
        return Err(bad_arg("output pointer is null"));
    }
    out.write(c.into_raw());
    Ok(())
}

/// Message of the last failed call on this thread, or null. The pointer is
/// valid until the next library call on the same thread.
#[no_mangle]
pub extern "C" fn sasaki_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn sasaki_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn sasaki_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Validates a join over a preset base (`"CP1"`, `"CP^2"`, ...) and stores
/// a new handle in `*out`. Weights may be given in either order.
///
/// # Safety
/// `base` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn sasaki_join_new(
    base: *const c_char,
    l1: u64,
    l2: u64,
    w1: u64,
    w2: u64,
    out: *mut *mut SasakiJoin,
) -> SasakiStatus {
    guard(|| {
        let name = read_str(base, "base")?;
        let base = BaseGeometry::preset(name).map_err(core_err)?;
        let inner = validate_join(base, l1, l2, w1, w2).map_err(core_err)?;
        write_out(out, Box::into_raw(Box::new(SasakiJoin { inner })), "out")
    })
}

/// Releases a join handle. Null is ignored.
///
/// # Safety
/// `j` must come from [`sasaki_join_new`] and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn sasaki_join_free(j: *mut SasakiJoin) {
    if !j.is_null() {
        drop(Box::from_raw(j));
    }
}

/// Canonical weights, with `*w1 >= *w2`.
///
/// # Safety
/// `j` must be a live handle; `w1` and `w2` writable pointers.
#[no_mangle]
pub unsafe extern "C" fn sasaki_join_weights(j: *const SasakiJoin, w1: *mut u64, w2: *mut u64) -> SasakiStatus {
    guard(|| {
        let j = join_ref(j)?;
        write_out(w1, j.w1, "w1")?;
        write_out(w2, j.w2, "w2")
    })
}

/// Join data and contact invariants as a JSON object.
///
/// # Safety
/// `j` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn sasaki_join_json(j: *const SasakiJoin, out: *mut *mut c_char) -> SasakiStatus {
    guard(|| {
        let j = join_ref(j)?;
        let mut v = report::join_value(j);
        v["invariants"] = report::invariants_value(&sasaki_core::join::contact_invariants(j));
        write_string(out, v.to_string())
    })
}

/// Number of constant scalar curvature rays, including the product ray
/// when the weights are equal.
///
/// # Safety
/// `j` must be a live handle and `count` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn sasaki_csc_ray_count(j: *const SasakiJoin, count: *mut usize) -> SasakiStatus {
    guard(|| {
        let rays = rays::find_csc_rays(join_ref(j)?).map_err(core_err)?;
        write_out(count, rays.len(), "count")
    })
}

/// Slopes `b` of the constant scalar curvature rays, ascending, as `f64`.
///
/// Writes the ray count to `*len`. When `cap` is smaller than the count
/// nothing is copied and `InvalidArgument` is returned, so a caller can
/// query the size with `cap = 0`.
///
/// # Safety
/// `j` must be a live handle, `len` writable and `buf` valid for `cap`
/// writes (it may be null when `cap` is 0).
#[no_mangle]
pub unsafe extern "C" fn sasaki_csc_ray_slopes(
    j: *const SasakiJoin,
    buf: *mut f64,
    cap: usize,
    len: *mut usize,
) -> SasakiStatus {
    guard(|| {
        let rays = rays::find_csc_rays(join_ref(j)?).map_err(core_err)?;
        write_out(len, rays.len(), "len")?;
        if rays.len() > cap {
            return Err(bad_arg(&format!("buffer holds {cap} slopes, need {}", rays.len())));
        }
        if rays.is_empty() {
            return Ok(());
        }
        if buf.is_null() {
            return Err(bad_arg("buf is null"));
        }
        for (i, r) in rays.iter().enumerate() {
            buf.add(i).write(r.slope());
        }
        Ok(())
    })
}

/// Constant scalar curvature rays as a JSON object with `ray_count` and
/// `rays`; slopes are exact where they are rational.
///
/// # Safety
/// `j` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn sasaki_csc_rays_json(j: *const SasakiJoin, out: *mut *mut c_char) -> SasakiStatus {
    guard(|| {
        let rays = rays::find_csc_rays(join_ref(j)?).map_err(core_err)?;
        write_string(out, report::rays_value(&rays).to_string())
    })
}

/// The Sasaki-Einstein ray as a JSON object, or `null` when none exists
/// in the cone.
///
/// # Safety
/// `j` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn sasaki_se_ray_json(j: *const SasakiJoin, out: *mut *mut c_char) -> SasakiStatus {
    guard(|| {
        let ray = rays::find_se_ray(join_ref(j)?).map_err(core_err)?;
        let v = ray.as_ref().map_or(serde_json::Value::Null, report::ray_value);
        write_string(out, v.to_string())
    })
}

/// Runs a command line (without the program name) and stores its JSON
/// report in `*out`. `*exit_code` receives the code the `sasaki` binary
/// would return. Input errors still produce a report; the status is `Ok`
/// whenever a report was written.
///
/// # Safety
/// `argv` must point to `argc` NUL-terminated strings; `out` and
/// `exit_code` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sasaki_run_json(
    argc: usize,
    argv: *const *const c_char,
    out: *mut *mut c_char,
    exit_code: *mut i32,
) -> SasakiStatus {
    guard(|| {
        if argc > 0 && argv.is_null() {
            return Err(bad_arg("argv is null"));
        }
        let mut args = vec!["sasaki".to_string()];
        for i in 0..argc {
            args.push(read_str(*argv.add(i), "argv entry")?.to_string());
        }
        if !args.iter().any(|a| a == "--json" || a == "--csv") {
            args.push("--json".into());
        }
        let outcome = cli::run(args);
        write_out(exit_code, outcome.code, "exit_code")?;
        if outcome.stdout.is_empty() {
            return Err((SasakiStatus::InvalidInput, outcome.stderr.trim().to_string()));
        }
        write_string(out, outcome.stdout)
    })
}
