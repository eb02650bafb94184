//! C ABI over `quartic-hasse`.
//!
//! Every fallible function returns a [`QhStatus`]; on failure the message is
//! available from [`qh_last_error_message`] on the same thread. Certificates are
//! opaque handles owned by the caller and released with
//! [`qh_certificate_free`]. Strings documented as owned are released with
//! [`qh_string_free`]; all others are borrowed from the handle.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use quartic_hasse::arith::{search_params, ParamTuple};
use quartic_hasse::certificate::{certify_with_retry, parse_u, recheck, Certificate, DEFAULT_PLACE_BOUND};
use quartic_hasse::conic::is_smooth;
use quartic_hasse::poly::TernForm;
use quartic_hasse::subgroup::{ea32_classes, AmbientLabel};
use quartic_hasse::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QhStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    OutOfRange = 4,
    Validation = 5,
    NotSmooth = 6,
    SearchExhausted = 7,
    Internal = 8,
    Panic = 9,
}

/// Opaque certificate handle.
pub struct QhCertificate {
    cert: Certificate,
    quartic: CString,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let text = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(text));
}

fn status_of(err: &Error) -> QhStatus {
    match err {
        Error::Parse(_) => QhStatus::Parse,
        Error::OutOfRange(_) => QhStatus::OutOfRange,
        Error::Validation(_) => QhStatus::Validation,
        Error::NotSmooth { .. } => QhStatus::NotSmooth,
        Error::SearchExhausted(_) => QhStatus::SearchExhausted,
        _ => QhStatus::Internal,
    }
}

fn fail(err: Error) -> QhStatus {
    let status = status_of(&err);
    set_error(err.to_string());
    status
}

/// Runs `body`, turning panics into [`QhStatus::Panic`].
fn guard(body: impl FnOnce() -> QhStatus) -> QhStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(_) => {
            set_error("panic inside quartic-hasse");
            QhStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(text: *const c_char) -> Result<&'a str, QhStatus> {
    if text.is_null() {
        set_error("null string argument");
        return Err(QhStatus::NullPointer);
    }
    CStr::from_ptr(text).to_str().map_err(|_| {
        set_error("string argument is not valid UTF-8");
        QhStatus::InvalidUtf8
    })
}

fn null_error(what: &str) -> QhStatus {
    set_error(format!("null {what}"));
    QhStatus::NullPointer
}

fn into_owned_string(s: String) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

fn wrap(cert: Certificate) -> *mut QhCertificate {
    let quartic = CString::new(cert.quartic.clone()).unwrap_or_default();
    Box::into_raw(Box::new(QhCertificate { cert, quartic }))
}

/// Message of the last failure on this thread, or null if none. Borrowed; valid
/// until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn qh_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Crate version. Static; never freed.
#[no_mangle]
pub extern "C" fn qh_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned as owned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn qh_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Certifies the tuple `b[0..5]`. `u` is a rational such as `"-1/197633"` or
/// null for the default. Singular quartics are retried up to `retries` times
/// with re-sampled `u`.
///
/// # Safety
/// `b` must point to 5 integers, `u` must be null or a NUL-terminated string,
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qh_certify(
    b: *const i64,
    u: *const c_char,
    retries: u32,
    out: *mut *mut QhCertificate,
) -> QhStatus {
    guard(|| {
        if b.is_null() {
            return null_error("parameter array");
        }
        if out.is_null() {
            return null_error("output pointer");
        }
        *out = ptr::null_mut();
        let b: [i64; 5] = std::slice::from_raw_parts(b, 5).try_into().expect("length 5");
        let u_text = if u.is_null() {
            "auto"
        } else {
            match read_str(u) {
                Ok(s) => s,
                Err(status) => return status,
            }
        };
        let u = match parse_u(u_text, &b) {
            Ok(u) => u,
            Err(e) => return fail(e),
        };
        let (result, _) =
            certify_with_retry(&ParamTuple::new(b, u), &[], DEFAULT_PLACE_BOUND, retries as usize);
        match result {
            Ok(cert) => {
                *out = wrap(cert);
                QhStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Loads a certificate from its JSON form.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qh_certificate_from_json(
    json: *const c_char,
    out: *mut *mut QhCertificate,
) -> QhStatus {
    guard(|| {
        if out.is_null() {
            return null_error("output pointer");
        }
        *out = ptr::null_mut();
        let text = match read_str(json) {
            Ok(s) => s,
            Err(status) => return status,
        };
        match serde_json::from_str::<Certificate>(text) {
            Ok(cert) => {
                *out = wrap(cert);
                QhStatus::Ok
            }
            Err(e) => fail(Error::Parse(e.to_string())),
        }
    })
}

/// # Safety
/// `cert` must be null or a live handle; it is invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn qh_certificate_free(cert: *mut QhCertificate) {
    if !cert.is_null() {
        drop(Box::from_raw(cert));
    }
}

/// Stored verdict that the quartic fails the Hasse principle for bitangents.
/// False for a null handle.
///
/// # Safety
/// `cert` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qh_certificate_bitangent_hasse_failure(cert: *const QhCertificate) -> bool {
    cert.as_ref().is_some_and(|c| c.cert.verdicts.bitangent_hasse_failure)
}

/// Stored verdict for symmetric determinantal representations.
///
/// # Safety
/// `cert` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qh_certificate_sdr_hasse_failure(cert: *const QhCertificate) -> bool {
    cert.as_ref().is_some_and(|c| c.cert.verdicts.sdr_hasse_failure)
}

/// The quartic as text. Borrowed from the handle.
///
/// # Safety
/// `cert` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qh_certificate_quartic(cert: *const QhCertificate) -> *const c_char {
    cert.as_ref().map_or(ptr::null(), |c| c.quartic.as_ptr())
}

/// The parameter tuple `b`, written to `b_out[0..5]`.
///
/// # Safety
/// `cert` must be a live handle and `b_out` must have room for 5 integers.
#[no_mangle]
pub unsafe extern "C" fn qh_certificate_params(cert: *const QhCertificate, b_out: *mut i64) -> QhStatus {
    let Some(c) = cert.as_ref() else {
        return null_error("certificate");
    };
    if b_out.is_null() {
        return null_error("output array");
    }
    ptr::copy_nonoverlapping(c.cert.params.b.as_ptr(), b_out, 5);
    QhStatus::Ok
}

/// Pretty-printed JSON. Owned; release with [`qh_string_free`].
///
/// # Safety
/// `cert` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qh_certificate_json(cert: *const QhCertificate) -> *mut c_char {
    let Some(c) = cert.as_ref() else {
        null_error("certificate");
        return ptr::null_mut();
    };
    match serde_json::to_string_pretty(&c.cert) {
        Ok(s) => into_owned_string(s),
        Err(e) => {
            set_error(e.to_string());
            ptr::null_mut()
        }
    }
}

/// Re-derives the verdicts from the stored sections. `agrees` receives whether
/// they match the stored verdicts and every place is consistent.
///
/// # Safety
/// `cert` must be a live handle and `agrees` writable.
#[no_mangle]
pub unsafe extern "C" fn qh_certificate_recheck(cert: *const QhCertificate, agrees: *mut bool) -> QhStatus {
    let Some(c) = cert.as_ref() else {
        return null_error("certificate");
    };
    if agrees.is_null() {
        return null_error("output pointer");
    }
    guard(|| {
        let report = recheck(&c.cert);
        *agrees = report.agrees && report.inconsistent_places.is_empty();
        QhStatus::Ok
    })
}

/// Searches for a valid tuple with primes up to `bound`; writes it to `b_out[0..5]`.
///
/// # Safety
/// `b_out` must have room for 5 integers.
#[no_mangle]
pub unsafe extern "C" fn qh_search_params(bound: u64, seed: u64, b_out: *mut i64) -> QhStatus {
    if b_out.is_null() {
        return null_error("output array");
    }
    guard(|| match search_params(bound, seed) {
        Ok(t) => {
            ptr::copy_nonoverlapping(t.b.as_ptr(), b_out, 5);
            QhStatus::Ok
        }
        Err(e) => fail(e),
    })
}

/// Smoothness of a ternary quartic written like `"1 * X^4 + 1 * Y^4 + 1 * Z^4"`.
///
/// # Safety
/// `text` must be a NUL-terminated string and `smooth` writable.
#[no_mangle]
pub unsafe extern "C" fn qh_is_smooth_quartic(text: *const c_char, smooth: *mut bool) -> QhStatus {
    if smooth.is_null() {
        return null_error("output pointer");
    }
    guard(|| {
        let text = match read_str(text) {
            Ok(s) => s,
            Err(status) => return status,
        };
        match TernForm::parse(text, 4) {
            Ok(f) => {
                *smooth = is_smooth(&f);
                QhStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Number of conjugacy classes of `F_2^5` in `"sp6"`, `"u63"` or `"u36"`.
///
/// # Safety
/// `ambient` must be a NUL-terminated string and `count` writable.
#[no_mangle]
pub unsafe extern "C" fn qh_classify_ea32_count(ambient: *const c_char, count: *mut usize) -> QhStatus {
    if count.is_null() {
        return null_error("output pointer");
    }
    guard(|| {
        let label = match read_str(ambient).map(str::parse::<AmbientLabel>) {
            Ok(Ok(l)) => l,
            Ok(Err(e)) => return fail(e),
            Err(status) => return status,
        };
        match ea32_classes(label) {
            Ok(classes) => {
                *count = classes.len();
                QhStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}
