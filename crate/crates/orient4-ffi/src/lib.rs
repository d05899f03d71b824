//! C interface to `orient4`.
//!
//! Every fallible call returns an [`O4Status`]; the message of the most
//! recent failure on the calling thread is available from
//! [`o4_last_error`]. Handles are opaque and must be released with their
//! matching `_free` function. Strings returned through `char **` are
//! owned by the caller and released with [`o4_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use orient4::{classify, construct_optimal, orientation_number, Error, OracleOptions, Orientation, TreeSpec, Verdict};

/// Result codes shared by all functions.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum O4Status {
    Ok = 0,
    NullArgument = 1,
    Parse = 2,
    InvalidSpec = 3,
    Refused = 4,
    Usage = 5,
    Internal = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum O4Verdict {
    C0 = 0,
    C1 = 1,
    UnknownGap = 2,
}

/// A validated tree specification.
pub struct O4Spec(TreeSpec);

/// A diameter-4 orientation produced by [`o4_construct`].
pub struct O4Orientation {
    inner: Orientation,
    case: CString,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> O4Status {
    match e {
        Error::Parse(_) => O4Status::Parse,
        Error::InvalidSpec(_) => O4Status::InvalidSpec,
        Error::Refused(_) | Error::ExtensionInapplicable(_) => O4Status::Refused,
        Error::Usage(_) => O4Status::Usage,
        Error::Internal(_) => O4Status::Internal,
    }
}

/// Runs `f`, recording its error or panic as the thread's last error.
fn guard<F: FnOnce() -> Result<(), Error>>(f: F) -> O4Status {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => O4Status::Ok,
        Ok(Err(e)) => {
            set_error(&e.to_string());
            status_of(&e)
        }
        Err(_) => {
            set_error("panic inside orient4");
            O4Status::Panic
        }
    }
}

fn out_string(s: String, out: *mut *mut c_char) -> Result<(), Error> {
    let c = CString::new(s).map_err(|_| Error::Internal("string contains NUL".into()))?;
    // SAFETY: callers check `out` for null before calling.
    unsafe { *out = c.into_raw() };
    Ok(())
}

macro_rules! non_null {
    ($($p:expr),+) => {
        if $($p.is_null())||+ {
            set_error("null argument");
            return O4Status::NullArgument;
        }
    };
}

/// Message describing the last failure on this thread; empty if none. The
/// pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn o4_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Parses and validates a JSON tree spec.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn o4_spec_from_json(json: *const c_char, out: *mut *mut O4Spec) -> O4Status {
    non_null!(json, out);
    guard(|| {
        let text = CStr::from_ptr(json).to_str().map_err(|e| Error::Parse(format!("not UTF-8: {e}")))?;
        let spec = TreeSpec::from_json(text)?;
        orient4::tree::validate(&spec)?;
        *out = Box::into_raw(Box::new(O4Spec(spec)));
        Ok(())
    })
}

/// # Safety
/// `spec` must come from [`o4_spec_from_json`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn o4_spec_free(spec: *mut O4Spec) {
    if !spec.is_null() {
        drop(Box::from_raw(spec));
    }
}

/// Classifies a spec. `orientation_number` receives 4, 5, or 0 for the
/// open case.
///
/// # Safety
/// `spec` must be a live handle; the out pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn o4_classify(
    spec: *const O4Spec,
    verdict: *mut O4Verdict,
    orientation_number: *mut u32,
) -> O4Status {
    non_null!(spec, verdict, orientation_number);
    guard(|| {
        let c = classify(&(*spec).0)?;
        *verdict = match c.verdict {
            Verdict::C0 => O4Verdict::C0,
            Verdict::C1 => O4Verdict::C1,
            Verdict::UnknownGap => O4Verdict::UnknownGap,
        };
        *orientation_number = c.orientation_number.unwrap_or(0);
        Ok(())
    })
}

/// Full classification report as JSON.
///
/// # Safety
/// `spec` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn o4_classify_json(spec: *const O4Spec, out: *mut *mut c_char) -> O4Status {
    non_null!(spec, out);
    guard(|| {
        let c = classify(&(*spec).0)?;
        out_string(serde_json::to_string(&c).map_err(|e| Error::Internal(e.to_string()))?, out)
    })
}

/// Builds a diameter-4 orientation. C1 and open instances give
/// `O4_STATUS_REFUSED`.
///
/// # Safety
/// `spec` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn o4_construct(spec: *const O4Spec, out: *mut *mut O4Orientation) -> O4Status {
    non_null!(spec, out);
    guard(|| {
        let c = construct_optimal(&(*spec).0)?;
        let case = CString::new(c.case.name()).map_err(|_| Error::Internal("case name".into()))?;
        *out = Box::into_raw(Box::new(O4Orientation { inner: c.orientation, case }));
        Ok(())
    })
}

/// # Safety
/// `d` must come from [`o4_construct`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn o4_orientation_free(d: *mut O4Orientation) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// Diameter of the orientation, or 0 when it is not strongly connected.
///
/// # Safety
/// `d` must be a live handle or null (which gives 0).
#[no_mangle]
pub unsafe extern "C" fn o4_orientation_diameter(d: *const O4Orientation) -> u32 {
    if d.is_null() {
        return 0;
    }
    (*d).inner.diameter().finite().unwrap_or(0)
}

/// Case identifier of the construction, e.g. `P39`. Borrowed from the
/// handle.
///
/// # Safety
/// `d` must be a live handle or null (which gives null).
#[no_mangle]
pub unsafe extern "C" fn o4_orientation_case(d: *const O4Orientation) -> *const c_char {
    if d.is_null() {
        return ptr::null();
    }
    (*d).case.as_ptr()
}

/// Arcs as text, one `u -> v` per line.
///
/// # Safety
/// `d` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn o4_orientation_edge_list(d: *const O4Orientation, out: *mut *mut c_char) -> O4Status {
    non_null!(d, out);
    guard(|| out_string((*d).inner.to_edge_list(), out))
}

/// Exhaustive orientation number; refuses above `max_edges` edges.
///
/// # Safety
/// `spec` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn o4_oracle(spec: *const O4Spec, max_edges: usize, out: *mut u32) -> O4Status {
    non_null!(spec, out);
    guard(|| {
        let opts = OracleOptions { max_edges, ..OracleOptions::default() };
        *out = orientation_number(&(*spec).0, &opts)?.orientation_number;
        Ok(())
    })
}

/// `κ_{n,r}(m)`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn o4_kappa(n: u32, r: u32, m: u64, out: *mut i64) -> O4Status {
    non_null!(out);
    guard(|| {
        *out = orient4::sperner::kappa(n, r, m)?;
        Ok(())
    })
}

/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn o4_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
