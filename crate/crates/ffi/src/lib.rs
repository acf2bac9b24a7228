//! C ABI over dspkit.
//!
//! Problems are parsed from the same JSON accepted by the command-line tool
//! and held behind an opaque handle. Every entry point returns a
//! [`DspStatus`]; on failure a message is available from
//! [`dsp_last_error`] on the calling thread. Strings handed out by the
//! library must be released with [`dsp_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use dspkit::cli::{self, Problem};
use dspkit::decider::Verdict;
use dspkit::realize::Budget;
use dspkit::DspError;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DspStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    /// Malformed JSON, partitions, eigenvalues or tuples.
    InvalidInput = 3,
    /// The question is outside the scope of the available procedures.
    NotApplicable = 4,
    /// A search budget or size cap was exhausted.
    ResourceExceeded = 5,
    UnknownCommand = 6,
    /// A Rust panic was caught at the boundary.
    Internal = 7,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DspVerdict {
    Solvable = 0,
    NotSolvable = 1,
    Unknown = 2,
}

impl From<Verdict> for DspVerdict {
    fn from(v: Verdict) -> Self {
        match v {
            Verdict::Solvable => DspVerdict::Solvable,
            Verdict::NotSolvable => DspVerdict::NotSolvable,
            Verdict::Unknown => DspVerdict::Unknown,
        }
    }
}

/// Opaque parsed problem.
pub struct DspProblem {
    inner: Problem,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: impl Into<String>) {
    let text = message.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).ok());
}

fn status_of(err: &DspError) -> DspStatus {
    match err {
        DspError::NotApplicable(_) | DspError::KappaNotTwo(_) | DspError::IllConditioned => DspStatus::NotApplicable,
        DspError::ResourceExceeded(_) | DspError::SamplingExhausted(_) => DspStatus::ResourceExceeded,
        _ => DspStatus::InvalidInput,
    }
}

fn fail(err: DspError) -> DspStatus {
    set_error(format!("{}: {err}", cli::error_kind(&err)));
    status_of(&err)
}

/// Runs `body` with panics turned into [`DspStatus::Internal`].
fn guarded(body: impl FnOnce() -> DspStatus) -> DspStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("internal error: {msg}"));
            DspStatus::Internal
        }
    }
}

unsafe fn read_str<'a>(text: *const c_char) -> Result<&'a str, DspStatus> {
    if text.is_null() {
        set_error("null string argument");
        return Err(DspStatus::NullArgument);
    }
    CStr::from_ptr(text).to_str().map_err(|_| {
        set_error("argument is not valid UTF-8");
        DspStatus::InvalidUtf8
    })
}

unsafe fn problem_ref<'a>(problem: *const DspProblem) -> Result<&'a Problem, DspStatus> {
    match problem.as_ref() {
        Some(p) => Ok(&p.inner),
        None => {
            set_error("null problem handle");
            Err(DspStatus::NullArgument)
        }
    }
}

fn null_out() -> DspStatus {
    set_error("null output pointer");
    DspStatus::NullArgument
}

/// Message for the last failed call on this thread, or null. The pointer
/// stays valid until the next call into the library from this thread.
#[no_mangle]
pub extern "C" fn dsp_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn dsp_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parses a problem from JSON text into a new handle.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn dsp_problem_parse(json: *const c_char, out: *mut *mut DspProblem) -> DspStatus {
    guarded(|| {
        if out.is_null() {
            return null_out();
        }
        *out = ptr::null_mut();
        let text = match read_str(json) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match Problem::from_json(text) {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(DspProblem { inner }));
                DspStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Releases a handle from [`dsp_problem_parse`]. Null is ignored.
///
/// # Safety
/// `problem` must come from [`dsp_problem_parse`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn dsp_problem_free(problem: *mut DspProblem) {
    if !problem.is_null() {
        drop(Box::from_raw(problem));
    }
}

/// Matrix size n of the problem.
///
/// # Safety
/// `problem` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dsp_problem_size(problem: *const DspProblem, out: *mut usize) -> DspStatus {
    guarded(|| {
        let p = match problem_ref(problem) {
            Ok(p) => p,
            Err(s) => return s,
        };
        if out.is_null() {
            return null_out();
        }
        *out = p.tuple.size();
        DspStatus::Ok
    })
}

/// Index of rigidity 2n² − Σ dim of the classes.
///
/// # Safety
/// `problem` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dsp_problem_rigidity_index(problem: *const DspProblem, out: *mut i64) -> DspStatus {
    guarded(|| {
        let p = match problem_ref(problem) {
            Ok(p) => p,
            Err(s) => return s,
        };
        if out.is_null() {
            return null_out();
        }
        *out = p.tuple.rigidity_index();
        DspStatus::Ok
    })
}

/// Solvability for generic eigenvalues, or of the weak problem when `weak`
/// is set (which needs an entry with distinct eigenvalues).
///
/// # Safety
/// `problem` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dsp_problem_decide(problem: *const DspProblem, weak: bool, out: *mut DspVerdict) -> DspStatus {
    guarded(|| {
        let p = match problem_ref(problem) {
            Ok(p) => p,
            Err(s) => return s,
        };
        if out.is_null() {
            return null_out();
        }
        let report = if weak {
            match dspkit::decider::decide_weak_distinct(&p.tuple) {
                Ok(r) => r,
                Err(e) => return fail(e),
            }
        } else {
            dspkit::decider::decide_generic(&p.tuple)
        };
        *out = report.verdict.into();
        DspStatus::Ok
    })
}

/// JSON report for `command`: one of `invariants`, `decide`,
/// `decide-weak`, `generic`, `classify` or `realize` (default budget with
/// the given seed). The string must be freed with [`dsp_string_free`].
///
/// # Safety
/// `problem` must be a live handle, `command` a NUL-terminated string and
/// `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dsp_problem_report(
    problem: *const DspProblem,
    command: *const c_char,
    seed: u64,
    out: *mut *mut c_char,
) -> DspStatus {
    guarded(|| {
        if out.is_null() {
            return null_out();
        }
        *out = ptr::null_mut();
        let p = match problem_ref(problem) {
            Ok(p) => p,
            Err(s) => return s,
        };
        let command = match read_str(command) {
            Ok(c) => c,
            Err(s) => return s,
        };
        let report = match command {
            "invariants" => Ok(cli::invariants_report(p)),
            "decide" => cli::decide_report(p, false, true),
            "decide-weak" => cli::decide_report(p, true, true),
            "generic" => cli::generic_report(p),
            "classify" => cli::classify_report(p),
            "realize" => cli::realize_report(p, &Budget { seed, ..Budget::default() }, None),
            other => {
                set_error(format!("unknown command {other:?}"));
                return DspStatus::UnknownCommand;
            }
        };
        match report {
            Ok(value) => match CString::new(value.to_string()) {
                Ok(s) => {
                    *out = s.into_raw();
                    DspStatus::Ok
                }
                Err(_) => {
                    set_error("report contained a NUL byte");
                    DspStatus::Internal
                }
            },
            Err(e) => fail(e),
        }
    })
}

/// Releases a string returned by the library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn dsp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
