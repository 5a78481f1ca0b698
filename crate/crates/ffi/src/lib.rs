//! C ABI over quandlekit.
//!
//! Objects cross the boundary as opaque handles (`QkQuandle`, `QkElement`)
//! owned by the caller and released with the matching `*_free`. Every
//! function returns a `QkStatus`; results come back through out-pointers.
//! Strings returned to C are NUL-terminated and released with
//! `qk_string_free`. After a failure, `qk_last_error` describes it.

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;

use quandlekit::certificate::verify_certificates;
use quandlekit::commutators::commutator;
use quandlekit::idempotents::{idempotents_box, idempotents_modular};
use quandlekit::quandle::{parse_table_file, predicates, write_table_file};
use quandlekit::ring::{delta_square_is_zero, parse_element};
use quandlekit::{catalog, CoefficientRing, Error, FiniteQuandle, RingElement};

/// Result codes. Zero is success.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QkStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    UnknownName = 4,
    InvalidQuandle = 5,
    RingMismatch = 6,
    BoundExceeded = 7,
    Unsupported = 8,
    HypothesisFailed = 9,
    VerificationFailed = 10,
    Io = 11,
    OutOfRange = 12,
    Panic = 13,
}

impl From<&Error> for QkStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::Parse(_) => QkStatus::Parse,
            Error::UnknownName(_) => QkStatus::UnknownName,
            Error::MalformedTable(_)
            | Error::IdempotenceViolation { .. }
            | Error::RightTranslationViolation { .. }
            | Error::DistributivityViolation { .. }
            | Error::InvalidGroup(_)
            | Error::NotAutomorphism(_) => QkStatus::InvalidQuandle,
            Error::RingMismatch
            | Error::RankMismatch(..)
            | Error::DimensionMismatch { .. }
            | Error::InvalidModulus(_)
            | Error::NotIntegralDomain(_)
            | Error::TwoNotInvertible(_)
            | Error::ExcludedCharacteristic(_) => QkStatus::RingMismatch,
            Error::BoundExceeded { .. } => QkStatus::BoundExceeded,
            Error::Unsupported(_) => QkStatus::Unsupported,
            Error::HypothesisFailed(_) => QkStatus::HypothesisFailed,
            Error::VerificationFailed(_) => QkStatus::VerificationFailed,
            Error::Io(_) => QkStatus::Io,
            Error::IndexOutOfRange { .. } => QkStatus::OutOfRange,
        }
    }
}

/// A finite quandle.
pub struct QkQuandle(Arc<FiniteQuandle>);

/// An element of a quandle ring.
pub struct QkElement(RingElement);

/// Structural predicates of a finite quandle.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct QkPredicates {
    pub trivial: bool,
    pub latin: bool,
    pub semi_latin: bool,
    pub involutary: bool,
    pub commutative: bool,
    pub strongly_non_commutative: bool,
    pub connected: bool,
    pub delta_square_zero: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

struct Failure(QkStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(QkStatus::from(&e), e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(QkStatus::NullPointer, format!("{what} is null"))
}

/// Runs `f`, recording any error or panic for `qk_last_error`.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> QkStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_last_error("");
            QkStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_last_error(&msg);
            status
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_last_error(&format!("internal panic: {msg}"));
            QkStatus::Panic
        }
    }
}

unsafe fn text<'a>(s: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| Failure(QkStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn put<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

/// Boxes `value` into a fresh handle, only once `out` is known to be usable.
unsafe fn put_handle<T>(out: *mut *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(Box::into_raw(Box::new(value)));
    Ok(())
}

fn c_string(s: String) -> Result<*mut c_char, Failure> {
    CString::new(s)
        .map(CString::into_raw)
        .map_err(|_| Failure(QkStatus::InvalidUtf8, "output contains a NUL byte".into()))
}

unsafe fn put_string(out: *mut *mut c_char, s: String, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(c_string(s)?);
    Ok(())
}

fn ring(s: &str) -> Result<CoefficientRing, Failure> {
    Ok(CoefficientRing::parse(s)?)
}

/// Human-readable detail for the most recent failure on this thread, or an
/// empty string. Valid until the next call into this library on the thread.
#[no_mangle]
pub extern "C" fn qk_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Static name of a status code.
#[no_mangle]
pub extern "C" fn qk_status_name(status: QkStatus) -> *const c_char {
    let s: &'static CStr = match status {
        QkStatus::Ok => c"ok",
        QkStatus::NullPointer => c"null pointer",
        QkStatus::InvalidUtf8 => c"invalid utf-8",
        QkStatus::Parse => c"parse error",
        QkStatus::UnknownName => c"unknown name",
        QkStatus::InvalidQuandle => c"invalid quandle",
        QkStatus::RingMismatch => c"ring mismatch",
        QkStatus::BoundExceeded => c"bound exceeded",
        QkStatus::Unsupported => c"unsupported",
        QkStatus::HypothesisFailed => c"hypothesis failed",
        QkStatus::VerificationFailed => c"verification failed",
        QkStatus::Io => c"i/o error",
        QkStatus::OutOfRange => c"out of range",
        QkStatus::Panic => c"internal panic",
    };
    s.as_ptr()
}

/// # Safety
/// `s` is null or was returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qk_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Looks up a catalog quandle (`R3`, `Cs4`, `Conj(S3)`, `T<n>`, ...).
///
/// # Safety
/// `name` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn qk_quandle_from_catalog(name: *const c_char, out: *mut *mut QkQuandle) -> QkStatus {
    guard(|| {
        let q = catalog::get_finite(text(name, "name")?)?;
        put_handle(out, QkQuandle(q), "out")
    })
}

/// Builds a quandle from a row-major `n * n` table of products.
///
/// # Safety
/// `table` points to `n * n` readable entries; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn qk_quandle_from_table(table: *const usize, n: usize, out: *mut *mut QkQuandle) -> QkStatus {
    guard(|| {
        if table.is_null() {
            return Err(null("table"));
        }
        let len = n
            .checked_mul(n)
            .ok_or_else(|| Failure(QkStatus::BoundExceeded, "table too large".into()))?;
        let flat = std::slice::from_raw_parts(table, len);
        let rows: Vec<Vec<usize>> = flat.chunks(n.max(1)).map(<[usize]>::to_vec).collect();
        let q = FiniteQuandle::from_table(&rows)?;
        put_handle(out, QkQuandle(Arc::new(q)), "out")
    })
}

/// Parses a quandle table file.
///
/// # Safety
/// `src` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn qk_quandle_parse(src: *const c_char, out: *mut *mut QkQuandle) -> QkStatus {
    guard(|| {
        let q = parse_table_file(text(src, "src")?)?;
        put_handle(out, QkQuandle(Arc::new(q)), "out")
    })
}

/// # Safety
/// `q` is null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn qk_quandle_free(q: *mut QkQuandle) {
    if !q.is_null() {
        drop(Box::from_raw(q));
    }
}

/// # Safety
/// `q` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn qk_quandle_order(q: *const QkQuandle, out: *mut usize) -> QkStatus {
    guard(|| put(out, deref(q, "q")?.0.order(), "out"))
}

/// The product `i * j` of two element indices.
///
/// # Safety
/// `q` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn qk_quandle_mul(q: *const QkQuandle, i: usize, j: usize, out: *mut usize) -> QkStatus {
    guard(|| {
        let q = &deref(q, "q")?.0;
        let n = q.order();
        for index in [i, j] {
            if index >= n {
                return Err(Error::IndexOutOfRange { index, n }.into());
            }
        }
        put(out, q.mul(i, j), "out")
    })
}

/// The table file text for `q`; free with `qk_string_free`.
///
/// # Safety
/// `q` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn qk_quandle_write(q: *const QkQuandle, out: *mut *mut c_char) -> QkStatus {
    guard(|| {
        let s = write_table_file(&deref(q, "q")?.0);
        put_string(out, s, "out")
    })
}

/// # Safety
/// `q` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn qk_quandle_predicates(q: *const QkQuandle, out: *mut QkPredicates) -> QkStatus {
    guard(|| {
        let q = &deref(q, "q")?.0;
        let p = predicates(q);
        let value = QkPredicates {
            trivial: p.trivial,
            latin: p.latin,
            semi_latin: p.semi_latin,
            involutary: p.involutary,
            commutative: p.commutative,
            strongly_non_commutative: p.strongly_non_commutative,
            connected: p.connected,
            delta_square_zero: delta_square_is_zero(q, CoefficientRing::Integers),
        };
        put(out, value, "out")
    })
}

/// Parses a ring-element literal such as `2*a0 - a1` or `[2,-1,0]` over
/// `ring_name` (`z`, `q` or `zmod:<m>`).
///
/// # Safety
/// `q` is a live handle; the strings are NUL-terminated; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn qk_element_parse(
    q: *const QkQuandle,
    ring_name: *const c_char,
    literal: *const c_char,
    out: *mut *mut QkElement,
) -> QkStatus {
    guard(|| {
        let q = &deref(q, "q")?.0;
        let r = ring(text(ring_name, "ring")?)?;
        let e = parse_element(q, r, text(literal, "literal")?)?;
        put_handle(out, QkElement(e), "out")
    })
}

/// # Safety
/// `e` is null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn qk_element_free(e: *mut QkElement) {
    if !e.is_null() {
        drop(Box::from_raw(e));
    }
}

/// Binary operations on ring elements.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QkOp {
    Add = 0,
    Sub = 1,
    Mul = 2,
    Commutator = 3,
}

/// `a op b` as a new element.
///
/// # Safety
/// `a` and `b` are live handles; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn qk_element_op(
    op: QkOp,
    a: *const QkElement,
    b: *const QkElement,
    out: *mut *mut QkElement,
) -> QkStatus {
    guard(|| {
        let (a, b) = (&deref(a, "a")?.0, &deref(b, "b")?.0);
        let e = match op {
            QkOp::Add => a.add(b)?,
            QkOp::Sub => a.sub(b)?,
            QkOp::Mul => a.mul(b)?,
            QkOp::Commutator => commutator(a, b)?,
        };
        put_handle(out, QkElement(e), "out")
    })
}

/// # Safety
/// `e` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn qk_element_is_zero(e: *const QkElement, out: *mut bool) -> QkStatus {
    guard(|| put(out, deref(e, "e")?.0.is_zero(), "out"))
}

/// # Safety
/// `e` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn qk_element_to_string(e: *const QkElement, out: *mut *mut c_char) -> QkStatus {
    guard(|| {
        let s = deref(e, "e")?.0.to_string();
        put_string(out, s, "out")
    })
}

/// Nonzero idempotents, one literal per line. Over `z` the coefficients
/// lie in `[-bound, bound]`; over `zmod:<m>` the search is complete and
/// `bound` is ignored.
///
/// # Safety
/// `q` is a live handle; `ring_name` is NUL-terminated; the out-pointers
/// are writable.
#[no_mangle]
pub unsafe extern "C" fn qk_idempotents(
    q: *const QkQuandle,
    ring_name: *const c_char,
    bound: i64,
    budget: u64,
    count: *mut usize,
    listing: *mut *mut c_char,
) -> QkStatus {
    guard(|| {
        let q = &deref(q, "q")?.0;
        let found = match ring(text(ring_name, "ring")?)? {
            CoefficientRing::Integers => idempotents_box(q, bound.into(), budget.into())?,
            CoefficientRing::IntegersMod(m) => idempotents_modular(q, m, budget.into())?,
            CoefficientRing::Rationals => {
                return Err(Error::Unsupported("idempotent search needs z or zmod:<m>".into()).into())
            }
        };
        if count.is_null() || listing.is_null() {
            return Err(null("output pointer"));
        }
        let nonzero: Vec<String> = found.iter().filter(|z| !z.is_zero()).map(|z| z.to_string()).collect();
        listing.write(c_string(nonzero.join("\n"))?);
        count.write(nonzero.len());
        Ok(())
    })
}

/// Verifies every certificate in `src`; `count` receives how many there
/// were. Any rejected certificate gives `VerificationFailed` or `Parse`.
///
/// # Safety
/// `src` is NUL-terminated; `count` is writable.
#[no_mangle]
pub unsafe extern "C" fn qk_verify_certificates(src: *const c_char, count: *mut usize) -> QkStatus {
    guard(|| {
        let certs = verify_certificates(text(src, "src")?)?;
        put(count, certs.len(), "count")
    })
}

/// Runs the command-line front end in-process. `argv` excludes the program
/// name. Standard output and standard error come back as strings (free
/// both); `exit_code` receives the process exit code the CLI would use.
///
/// # Safety
/// `argv` points to `argc` NUL-terminated strings; the out-pointers are
/// writable.
#[no_mangle]
pub unsafe extern "C" fn qk_cli_run(
    argc: c_int,
    argv: *const *const c_char,
    exit_code: *mut c_int,
    stdout_text: *mut *mut c_char,
    stderr_text: *mut *mut c_char,
) -> QkStatus {
    guard(|| {
        let argc = usize::try_from(argc).map_err(|_| Failure(QkStatus::OutOfRange, "negative argc".into()))?;
        if argc > 0 && argv.is_null() {
            return Err(null("argv"));
        }
        let mut args = vec!["quandlekit".to_string()];
        for k in 0..argc {
            args.push(text(*argv.add(k), "argument")?.to_string());
        }
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = quandlekit::cli::run(args, &mut out, &mut err);
        let out = c_string(String::from_utf8_lossy(&out).into_owned())?;
        let err = match c_string(String::from_utf8_lossy(&err).into_owned()) {
            Ok(e) => e,
            Err(f) => {
                qk_string_free(out);
                return Err(f);
            }
        };
        if exit_code.is_null() || stdout_text.is_null() || stderr_text.is_null() {
            qk_string_free(out);
            qk_string_free(err);
            return Err(null("output pointer"));
        }
        exit_code.write(code);
        stdout_text.write(out);
        stderr_text.write(err);
        Ok(())
    })
}
