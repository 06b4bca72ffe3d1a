//! C interface to the verification engine.
//!
//! Handles are opaque and owned by the caller once returned; release them
//! with the matching `_free` function. Every fallible call returns a
//! [`KappaStatus`]; on failure [`kappa_last_error`] describes the cause.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::ptr;

use kappa_core::cli::{run, ConfigBuilder, RunReport, Status};
use kappa_core::error::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KappaStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Config = 4,
    SingularMetric = 5,
    NonSymmetricMetric = 6,
    Limit = 7,
    Io = 8,
    Internal = 9,
    OutOfRange = 10,
}

/// Run configuration under construction.
pub struct KappaBuilder(ConfigBuilder);

/// Result of a run.
pub struct KappaReport {
    report: RunReport,
    json: CString,
    body_json: CString,
    names: Vec<CString>,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn fail(e: &Error) -> KappaStatus {
    set_error(e.to_string());
    match e {
        Error::Parse { .. } => KappaStatus::Parse,
        Error::SingularMetric => KappaStatus::SingularMetric,
        Error::NonSymmetricMetric => KappaStatus::NonSymmetricMetric,
        Error::Limit(_) | Error::DegreeCap { .. } => KappaStatus::Limit,
        Error::Io(_) => KappaStatus::Io,
        Error::Config(_) => KappaStatus::Config,
        _ => KappaStatus::Internal,
    }
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, KappaStatus> {
    if p.is_null() {
        set_error("null argument");
        return Err(KappaStatus::NullArgument);
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error("argument is not valid UTF-8");
        KappaStatus::InvalidUtf8
    })
}

/// Message for the most recent failure on this thread. Valid until the
/// next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn kappa_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Empty builder; `metric` must be set before running.
#[no_mangle]
pub extern "C" fn kappa_builder_new() -> *mut KappaBuilder {
    Box::into_raw(Box::new(KappaBuilder(ConfigBuilder::default())))
}

/// Builder from the text of a run specification.
///
/// # Safety
/// `spec` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn kappa_builder_from_spec(spec: *const c_char, out: *mut *mut KappaBuilder) -> KappaStatus {
    if out.is_null() {
        return KappaStatus::NullArgument;
    }
    *out = ptr::null_mut();
    let spec = match text(spec) {
        Ok(s) => s,
        Err(s) => return s,
    };
    match ConfigBuilder::from_spec(spec) {
        Ok(b) => {
            *out = Box::into_raw(Box::new(KappaBuilder(b)));
            KappaStatus::Ok
        }
        Err(e) => fail(&e),
    }
}

/// Sets one key, replacing any value from the specification.
///
/// # Safety
/// `b` must come from this library; `key` and `value` must be
/// NUL-terminated strings.
#[no_mangle]
pub unsafe extern "C" fn kappa_builder_set(b: *mut KappaBuilder, key: *const c_char, value: *const c_char) -> KappaStatus {
    let Some(b) = b.as_mut() else {
        set_error("null builder");
        return KappaStatus::NullArgument;
    };
    let (key, value) = match (text(key), text(value)) {
        (Ok(k), Ok(v)) => (k, v),
        (Err(s), _) | (_, Err(s)) => return s,
    };
    match b.0.set(key, value) {
        Ok(()) => KappaStatus::Ok,
        Err(e) => fail(&e),
    }
}

/// # Safety
/// `b` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn kappa_builder_free(b: *mut KappaBuilder) {
    if !b.is_null() {
        drop(Box::from_raw(b));
    }
}

/// Validates the configuration and runs the selected layers. A run whose
/// checks fail still returns `KAPPA_STATUS_OK`; inspect the report.
///
/// # Safety
/// `b` must come from this library and `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn kappa_run(b: *const KappaBuilder, out: *mut *mut KappaReport) -> KappaStatus {
    if out.is_null() {
        return KappaStatus::NullArgument;
    }
    *out = ptr::null_mut();
    let Some(b) = b.as_ref() else {
        set_error("null builder");
        return KappaStatus::NullArgument;
    };
    let report = match b.0.build().and_then(|cfg| run(&cfg)) {
        Ok(r) => r,
        Err(e) => return fail(&e),
    };
    let cstr = |s: String| CString::new(s).unwrap_or_default();
    let names = report.body.checks.iter().map(|c| cstr(c.name.clone())).collect();
    let json = cstr(report.to_json());
    let body_json = cstr(report.body_json());
    *out = Box::into_raw(Box::new(KappaReport { report, json, body_json, names }));
    KappaStatus::Ok
}

/// 1 if every check passed, 0 otherwise or for a null report.
///
/// # Safety
/// `r` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn kappa_report_passed(r: *const KappaReport) -> i32 {
    r.as_ref().map_or(0, |r| r.report.passed() as i32)
}

/// Process exit code the command-line tool would use: 0 pass, 1 failure.
///
/// # Safety
/// `r` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn kappa_report_exit_code(r: *const KappaReport) -> i32 {
    r.as_ref().map_or(2, |r| r.report.exit_code())
}

/// # Safety
/// `r` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn kappa_report_check_count(r: *const KappaReport) -> usize {
    r.as_ref().map_or(0, |r| r.report.body.checks.len())
}

/// Name and status (0 pass, 1 fail, 2 skipped) of check `index`. The name
/// pointer lives as long as the report.
///
/// # Safety
/// `r` must come from this library; `name` and `status` must be valid
/// pointers.
#[no_mangle]
pub unsafe extern "C" fn kappa_report_check(
    r: *const KappaReport,
    index: usize,
    name: *mut *const c_char,
    status: *mut i32,
) -> KappaStatus {
    let Some(r) = r.as_ref() else {
        set_error("null report");
        return KappaStatus::NullArgument;
    };
    if name.is_null() || status.is_null() {
        set_error("null output pointer");
        return KappaStatus::NullArgument;
    }
    let Some(c) = r.report.body.checks.get(index) else {
        set_error(format!("check index {index} out of range"));
        return KappaStatus::OutOfRange;
    };
    *name = r.names[index].as_ptr();
    *status = match c.status {
        Status::Pass => 0,
        Status::Fail => 1,
        Status::Skipped => 2,
    };
    KappaStatus::Ok
}

/// Full JSON report, header included. Lives as long as the report.
///
/// # Safety
/// `r` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn kappa_report_json(r: *const KappaReport) -> *const c_char {
    r.as_ref().map_or(ptr::null(), |r| r.json.as_ptr())
}

/// Deterministic report body only. Lives as long as the report.
///
/// # Safety
/// `r` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn kappa_report_body_json(r: *const KappaReport) -> *const c_char {
    r.as_ref().map_or(ptr::null(), |r| r.body_json.as_ptr())
}

/// # Safety
/// `r` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn kappa_report_free(r: *mut KappaReport) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}
