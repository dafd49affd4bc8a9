//! C ABI over `projtc`.
//!
//! Specs and reports are opaque heap handles owned by the caller and released
//! with the matching `_free` function. Every fallible call returns a
//! [`ProjtcStatus`]; on failure a message is kept per thread and can be read
//! with [`projtc_last_error`] until the next failing call on that thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use projtc::cli::{parse_spec, run, Report, RunError, RunOptions, SpecFile};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProjtcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    /// Refused input such as a bundle above the dimension cap.
    InvalidInput = 4,
    InvariantViolation = 5,
    Panic = 6,
}

/// Parsed bundle spec.
pub struct ProjtcSpec(SpecFile);

/// Result of running the engine on a spec.
pub struct ProjtcReport(Report);

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ProjtcInterval {
    pub lower: u32,
    /// Meaningful only when `has_upper` is set.
    pub upper: u32,
    pub has_upper: bool,
    pub exact: bool,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ProjtcHeights {
    pub v_l: u32,
    pub v_r: u32,
    pub v_sum: u32,
}

struct LastError {
    message: CString,
    location: Option<(usize, usize)>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<LastError>> = const { RefCell::new(None) };
}

fn set_error(message: impl Into<String>, location: Option<(usize, usize)>) {
    let message = CString::new(message.into().replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(LastError { message, location }));
}

fn fail(status: ProjtcStatus, message: impl Into<String>) -> ProjtcStatus {
    set_error(message, None);
    status
}

fn guard(body: impl FnOnce() -> ProjtcStatus) -> ProjtcStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            fail(ProjtcStatus::Panic, format!("panic: {msg}"))
        }
    }
}

/// Parses spec-file text into a new handle stored in `*out`.
///
/// # Safety
/// `text` must be NULL or a NUL-terminated string; `out` must be NULL or
/// valid for writes.
#[no_mangle]
pub unsafe extern "C" fn projtc_spec_parse(
    text: *const c_char,
    out: *mut *mut ProjtcSpec,
) -> ProjtcStatus {
    guard(|| {
        if text.is_null() || out.is_null() {
            return fail(ProjtcStatus::NullPointer, "null argument");
        }
        *out = ptr::null_mut();
        let Ok(text) = CStr::from_ptr(text).to_str() else {
            return fail(ProjtcStatus::InvalidUtf8, "spec text is not valid UTF-8");
        };
        match parse_spec(text) {
            Ok(spec) => {
                *out = Box::into_raw(Box::new(ProjtcSpec(spec)));
                ProjtcStatus::Ok
            }
            Err(e) => {
                set_error(e.to_string(), Some((e.line, e.column)));
                ProjtcStatus::ParseError
            }
        }
    })
}

/// # Safety
/// `spec` must be NULL or a handle from [`projtc_spec_parse`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn projtc_spec_free(spec: *mut ProjtcSpec) {
    if !spec.is_null() {
        drop(Box::from_raw(spec));
    }
}

/// Rank of the bundle, or 0 for NULL.
///
/// # Safety
/// `spec` must be NULL or a live spec handle.
#[no_mangle]
pub unsafe extern "C" fn projtc_spec_rank(spec: *const ProjtcSpec) -> u32 {
    spec.as_ref().map_or(0, |s| s.0.bundle.rank())
}

/// Runs the engine. With `all_checks` every applicable check runs, otherwise
/// only those the spec requests. A zero `max_dim` selects the default cap.
/// Failed checks still produce a report; see [`projtc_report_failed_checks`].
///
/// # Safety
/// `spec` must be NULL or a live spec handle; `out` must be NULL or valid
/// for writes.
#[no_mangle]
pub unsafe extern "C" fn projtc_compute(
    spec: *const ProjtcSpec,
    max_dim: u32,
    all_checks: bool,
    out: *mut *mut ProjtcReport,
) -> ProjtcStatus {
    guard(|| {
        let (Some(spec), false) = (spec.as_ref(), out.is_null()) else {
            return fail(ProjtcStatus::NullPointer, "null argument");
        };
        *out = ptr::null_mut();
        let file = &spec.0;
        let mut options = RunOptions {
            checks: if all_checks {
                RunOptions::all_checks(file.bundle.rank())
            } else {
                file.checks.clone()
            },
            ..RunOptions::default()
        };
        if max_dim != 0 {
            options.max_dim = max_dim;
        }
        match run(&file.bundle, &options) {
            Ok(report) => {
                *out = Box::into_raw(Box::new(ProjtcReport(report)));
                ProjtcStatus::Ok
            }
            Err(e @ RunError::DimensionCap { .. }) => {
                fail(ProjtcStatus::InvalidInput, e.to_string())
            }
            Err(e) => fail(ProjtcStatus::InvariantViolation, e.to_string()),
        }
    })
}

/// # Safety
/// `report` must be NULL or a handle from [`projtc_compute`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn projtc_report_free(report: *mut ProjtcReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// # Safety
/// `report` must be NULL or a live report handle; `out` NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn projtc_report_interval(
    report: *const ProjtcReport,
    out: *mut ProjtcInterval,
) -> ProjtcStatus {
    let (Some(report), Some(out)) = (report.as_ref(), out.as_mut()) else {
        return fail(ProjtcStatus::NullPointer, "null argument");
    };
    let i = report.0.interval;
    *out = ProjtcInterval {
        lower: i.lower(),
        upper: i.upper().unwrap_or(0),
        has_upper: i.upper().is_some(),
        exact: i.is_exact(),
    };
    ProjtcStatus::Ok
}

/// Writes the enhancement heights and returns true; returns false for rank
/// one bundles, which have no enhancements.
///
/// # Safety
/// `report` must be NULL or a live report handle; `out` NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn projtc_report_heights(
    report: *const ProjtcReport,
    out: *mut ProjtcHeights,
) -> bool {
    match (out.as_mut(), report.as_ref().and_then(|r| r.0.heights)) {
        (Some(out), Some(h)) => {
            *out = ProjtcHeights {
                v_l: h.v_l,
                v_r: h.v_r,
                v_sum: h.v_sum,
            };
            true
        }
        _ => false,
    }
}

/// # Safety
/// `report` must be NULL or a live report handle.
#[no_mangle]
pub unsafe extern "C" fn projtc_report_failed_checks(report: *const ProjtcReport) -> u32 {
    report
        .as_ref()
        .map_or(0, |r| r.0.failed_checks().count() as u32)
}

/// The flat JSON report as a new string, released with [`projtc_string_free`].
///
/// # Safety
/// `report` must be NULL or a live report handle; `out` NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn projtc_report_json(
    report: *const ProjtcReport,
    out: *mut *mut c_char,
) -> ProjtcStatus {
    guard(|| {
        let (Some(report), false) = (report.as_ref(), out.is_null()) else {
            return fail(ProjtcStatus::NullPointer, "null argument");
        };
        let json = CString::new(report.0.to_json()).expect("JSON has no NUL bytes");
        *out = json.into_raw();
        ProjtcStatus::Ok
    })
}

/// # Safety
/// `s` must be NULL or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn projtc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message of the last failure on this thread, or NULL. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn projtc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| {
        e.borrow()
            .as_ref()
            .map_or(ptr::null(), |e| e.message.as_ptr())
    })
}

/// 1-based line and column of the last parse failure on this thread.
///
/// # Safety
/// `line` and `column` must be NULL or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn projtc_last_error_location(line: *mut usize, column: *mut usize) -> bool {
    let loc = LAST_ERROR.with(|e| e.borrow().as_ref().and_then(|e| e.location));
    match (loc, line.as_mut(), column.as_mut()) {
        (Some((l, c)), Some(line), Some(column)) => {
            *line = l;
            *column = c;
            true
        }
        _ => false,
    }
}
