//! C interface. Objects cross the boundary as opaque handles, strings as
//! NUL-terminated UTF-8 owned by the caller once returned (free them with
//! `qp_string_free`). Every fallible call returns a `QpStatus`; details of
//! the last failure on the calling thread are available through
//! `qp_last_error_code` and `qp_last_error_message`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use qpolya::algdecide::{decide, DecideConfig};
use qpolya::arith::{CyclotomicNumber, PrecisionBudget};
use qpolya::expr::parse_cyclotomic_expr;
use qpolya::lineseries::{dump_prefix, load_prefix, prefix, LineSpec, SeriesPrefix};
use qpolya::qcomb::q_binomial;
use qpolya::{json, Error};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QpStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Syntax = 3,
    Domain = 4,
    OutOfRange = 5,
    Panic = 6,
}

/// An element of a cyclotomic field.
pub struct QpCyclotomic(CyclotomicNumber);

/// A computed or loaded prefix of a line series.
pub struct QpSeries(SeriesPrefix);

struct LastError {
    code: String,
    message: String,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<LastError>> = const { RefCell::new(None) };
}

fn set_error(code: &str, message: String) {
    LAST_ERROR.with(|e| {
        *e.borrow_mut() = Some(LastError {
            code: code.to_owned(),
            message,
        })
    });
}

fn fail(status: QpStatus, code: &str, message: impl Into<String>) -> QpStatus {
    set_error(code, message.into());
    status
}

fn lib_error(e: Error) -> QpStatus {
    let status = if e.is_syntax() {
        QpStatus::Syntax
    } else {
        QpStatus::Domain
    };
    fail(status, e.code(), e.to_string())
}

fn guard(f: impl FnOnce() -> QpStatus) -> QpStatus {
    LAST_ERROR.with(|e| e.borrow_mut().take());
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => fail(QpStatus::Panic, "panic", "internal panic"),
    }
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, QpStatus> {
    if s.is_null() {
        return Err(fail(
            QpStatus::NullPointer,
            "null_pointer",
            "null string argument",
        ));
    }
    CStr::from_ptr(s).to_str().map_err(|_| {
        fail(
            QpStatus::InvalidUtf8,
            "invalid_utf8",
            "string argument is not UTF-8",
        )
    })
}

fn into_c_string(s: String) -> *mut c_char {
    // interior NULs cannot appear in our output
    CString::new(s).expect("no interior NUL").into_raw()
}

macro_rules! out_ptr {
    ($p:expr) => {
        if $p.is_null() {
            return fail(QpStatus::NullPointer, "null_pointer", "null output pointer");
        }
    };
}

macro_rules! handle {
    ($p:expr) => {
        match $p.as_ref() {
            Some(h) => h,
            None => return fail(QpStatus::NullPointer, "null_pointer", "null handle"),
        }
    };
}

macro_rules! try_lib {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(e) => return lib_error(e),
        }
    };
}

/// Parses `expr` as an element of Q(ζ_order), `z` standing for ζ_order.
///
/// # Safety
/// `expr` must be a valid C string, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qp_cyclotomic_parse(
    expr: *const c_char,
    order: u64,
    out: *mut *mut QpCyclotomic,
) -> QpStatus {
    guard(|| {
        out_ptr!(out);
        let text = match read_str(expr) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let v = try_lib!(parse_cyclotomic_expr(text, order));
        *out = Box::into_raw(Box::new(QpCyclotomic(v)));
        QpStatus::Ok
    })
}

/// # Safety
/// `h` must come from this library and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn qp_cyclotomic_free(h: *mut QpCyclotomic) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// # Safety
/// `h` must be a live handle, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qp_cyclotomic_to_string(
    h: *const QpCyclotomic,
    out: *mut *mut c_char,
) -> QpStatus {
    guard(|| {
        out_ptr!(out);
        let h = handle!(h);
        *out = into_c_string(h.0.to_string());
        QpStatus::Ok
    })
}

/// # Safety
/// `h` must be a live handle, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qp_cyclotomic_order(h: *const QpCyclotomic, out: *mut u64) -> QpStatus {
    guard(|| {
        out_ptr!(out);
        *out = handle!(h).0.order();
        QpStatus::Ok
    })
}

/// # Safety
/// `h` must be a live handle, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qp_is_root_of_unity(h: *const QpCyclotomic, out: *mut bool) -> QpStatus {
    guard(|| {
        out_ptr!(out);
        *out = try_lib!(handle!(h).0.is_root_of_unity());
        QpStatus::Ok
    })
}

/// First `len` coefficients of the line series through (n, k) with slope
/// (a, b), evaluated at `q`.
///
/// # Safety
/// `q` must be a live handle, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qp_series_new(
    n: i64,
    k: i64,
    a: i64,
    b: i64,
    q: *const QpCyclotomic,
    len: usize,
    out: *mut *mut QpSeries,
) -> QpStatus {
    guard(|| {
        out_ptr!(out);
        let q = handle!(q);
        let spec = try_lib!(LineSpec::new(n, k, a, b));
        let p = try_lib!(prefix(&spec, &q.0, len));
        *out = Box::into_raw(Box::new(QpSeries(p)));
        QpStatus::Ok
    })
}

/// # Safety
/// `h` must come from this library and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn qp_series_free(h: *mut QpSeries) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// # Safety
/// `h` must be a live handle, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qp_series_len(h: *const QpSeries, out: *mut usize) -> QpStatus {
    guard(|| {
        out_ptr!(out);
        *out = handle!(h).0.len();
        QpStatus::Ok
    })
}

/// Copies coefficient `j` into a new handle.
///
/// # Safety
/// `h` must be a live handle, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qp_series_term(
    h: *const QpSeries,
    j: usize,
    out: *mut *mut QpCyclotomic,
) -> QpStatus {
    guard(|| {
        out_ptr!(out);
        let h = handle!(h);
        match h.0.terms.get(j) {
            Some(t) => {
                *out = Box::into_raw(Box::new(QpCyclotomic(t.clone())));
                QpStatus::Ok
            }
            None => fail(
                QpStatus::OutOfRange,
                "out_of_range",
                format!("index {j} out of range for {} terms", h.0.len()),
            ),
        }
    })
}

/// Text dump of the prefix, in the same format the CLI writes.
///
/// # Safety
/// `h` must be a live handle, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qp_series_dump(h: *const QpSeries, out: *mut *mut c_char) -> QpStatus {
    guard(|| {
        out_ptr!(out);
        *out = into_c_string(dump_prefix(&handle!(h).0));
        QpStatus::Ok
    })
}

/// # Safety
/// `text` must be a valid C string, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qp_series_load(text: *const c_char, out: *mut *mut QpSeries) -> QpStatus {
    guard(|| {
        out_ptr!(out);
        let text = match read_str(text) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let p = try_lib!(load_prefix(text));
        *out = Box::into_raw(Box::new(QpSeries(p)));
        QpStatus::Ok
    })
}

/// Runs the decision procedure and writes the verdict as JSON. A
/// `max_degree` of 0 selects the default.
///
/// # Safety
/// `q` must be a live handle, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qp_decide_json(
    n: i64,
    k: i64,
    a: i64,
    b: i64,
    q: *const QpCyclotomic,
    max_degree: u32,
    out: *mut *mut c_char,
) -> QpStatus {
    guard(|| {
        out_ptr!(out);
        let q = handle!(q);
        let spec = try_lib!(LineSpec::new(n, k, a, b));
        let mut config = DecideConfig {
            precision: PrecisionBudget::from_env(),
            ..DecideConfig::default()
        };
        if max_degree > 0 {
            config.max_degree = max_degree as usize;
        }
        let v = try_lib!(decide(&spec, &q.0, &config));
        *out = into_c_string(json::verdict(&v).to_string());
        QpStatus::Ok
    })
}

/// The Gaussian binomial [n choose k]_q as a JSON array of coefficients.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qp_qbinomial_json(n: i64, k: i64, out: *mut *mut c_char) -> QpStatus {
    guard(|| {
        out_ptr!(out);
        let p = try_lib!(q_binomial(n, k));
        *out = into_c_string(json::int_poly(&p).to_string());
        QpStatus::Ok
    })
}

/// Machine-readable code of the last error on this thread, or null.
#[no_mangle]
pub extern "C" fn qp_last_error_code() -> *mut c_char {
    LAST_ERROR.with(|e| {
        e.borrow()
            .as_ref()
            .map_or(ptr::null_mut(), |e| into_c_string(e.code.clone()))
    })
}

/// Message of the last error on this thread, or null.
#[no_mangle]
pub extern "C" fn qp_last_error_message() -> *mut c_char {
    LAST_ERROR.with(|e| {
        e.borrow()
            .as_ref()
            .map_or(ptr::null_mut(), |e| into_c_string(e.message.clone()))
    })
}

/// # Safety
/// `s` must come from this library and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn qp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_follows_error_kind() {
        assert_eq!(lib_error(Error::ZeroQ), QpStatus::Domain);
        assert_eq!(
            lib_error(Error::Dump {
                line: 1,
                message: "x".into()
            }),
            QpStatus::Syntax
        );
        LAST_ERROR.with(|e| assert_eq!(e.borrow().as_ref().unwrap().code, "malformed_dump"));
    }

    #[test]
    fn panics_become_status() {
        assert_eq!(guard(|| panic!("boom")), QpStatus::Panic);
    }
}
