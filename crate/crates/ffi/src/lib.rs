//! C interface: parse a spec document into an opaque handle, then check or
//! normalize against it. Every call returns an `SpStatus`; on failure the
//! message is available from `sp_last_error_message` on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use superpoisson::cli::expr::{eval_uea, parse_expr};
use superpoisson::cli::spec::{parse_spec, AlgebraSpec};
use superpoisson::poisson::{verify_poisson, BracketTable};
use superpoisson::uea::{pbw_basis, Uea};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpStatus {
    Ok = 0,
    /// The input was well formed but a mathematical check failed.
    MathFailure = 1,
    InputError = 2,
    NullPointer = 3,
    InvalidUtf8 = 4,
    Panic = 5,
}

/// A parsed spec together with its bracket table.
pub struct SpSpec {
    spec: AlgebraSpec,
    table: BracketTable,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(CString::new(msg).expect("nul bytes removed")));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

type Fallible<T> = Result<T, (SpStatus, String)>;

fn input(msg: impl ToString) -> (SpStatus, String) {
    (SpStatus::InputError, msg.to_string())
}

/// Runs `f`, converting errors and panics into a status plus last-error message.
fn guard(f: impl FnOnce() -> Fallible<SpStatus>) -> SpStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(s)) => s,
        Ok(Err((s, msg))) => {
            set_error(msg);
            s
        }
        Err(_) => {
            set_error("internal panic");
            SpStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Fallible<&'a str> {
    if p.is_null() {
        return Err((SpStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|e| (SpStatus::InvalidUtf8, format!("{what} is not UTF-8: {e}")))
}

unsafe fn spec_ref<'a>(p: *const SpSpec) -> Fallible<&'a SpSpec> {
    p.as_ref().ok_or((SpStatus::NullPointer, "spec handle is null".into()))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Fallible<()> {
    if out.is_null() {
        return Err((SpStatus::NullPointer, "output pointer is null".into()));
    }
    out.write(value);
    Ok(())
}

fn to_c(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("nul bytes removed").into_raw()
}

/// Parses a spec document. On success `*out` owns a handle to be released
/// with `sp_spec_free`.
///
/// # Safety
/// `text` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sp_spec_parse(text: *const c_char, out: *mut *mut SpSpec) -> SpStatus {
    guard(|| {
        if !out.is_null() {
            out.write(ptr::null_mut());
        }
        let doc = read_str(text, "spec text")?;
        let spec = parse_spec(doc).map_err(input)?;
        let table = spec.table().map_err(input)?;
        let handle = Box::into_raw(Box::new(SpSpec { spec, table }));
        if let Err(e) = write_out(out, handle) {
            drop(Box::from_raw(handle));
            return Err(e);
        }
        Ok(SpStatus::Ok)
    })
}

/// Releases a handle from `sp_spec_parse`. Null is ignored.
///
/// # Safety
/// `spec` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sp_spec_free(spec: *mut SpSpec) {
    if !spec.is_null() {
        drop(Box::from_raw(spec));
    }
}

/// Number of generators in the spec's algebra.
///
/// # Safety
/// `spec` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sp_spec_generator_count(spec: *const SpSpec, out: *mut usize) -> SpStatus {
    guard(|| {
        let s = spec_ref(spec)?;
        write_out(out, s.spec.generators.len())?;
        Ok(SpStatus::Ok)
    })
}

/// Verifies the Poisson axioms. Returns `SP_STATUS_OK` if they hold and
/// `SP_STATUS_MATH_FAILURE` otherwise; in both cases `*report` (if non-null)
/// receives a JSON report to be released with `sp_string_free`.
///
/// # Safety
/// `spec` must be a live handle; `report` may be null.
#[no_mangle]
pub unsafe extern "C" fn sp_check(spec: *const SpSpec, report: *mut *mut c_char) -> SpStatus {
    guard(|| {
        let s = spec_ref(spec)?;
        let r = verify_poisson(&s.table);
        if !report.is_null() {
            let json = serde_json::to_string(&r).map_err(input)?;
            report.write(to_c(json));
        }
        if r.passed {
            Ok(SpStatus::Ok)
        } else {
            let msg = match &r.failure {
                Some(f) => format!("not Poisson: {}", serde_json::to_string(f).unwrap_or_default()),
                None => "not Poisson".into(),
            };
            set_error(msg);
            Ok(SpStatus::MathFailure)
        }
    })
}

/// Normal form of an enveloping-algebra expression such as `h(x1)*m(y1)`.
/// `*out` is released with `sp_string_free`.
///
/// # Safety
/// `spec` must be a live handle, `expr` a NUL-terminated string, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn sp_normalize(spec: *const SpSpec, expr: *const c_char, out: *mut *mut c_char) -> SpStatus {
    guard(|| {
        let s = spec_ref(spec)?;
        let src = read_str(expr, "expression")?;
        if out.is_null() {
            return Err((SpStatus::NullPointer, "output pointer is null".into()));
        }
        let alg = s.table.algebra();
        let p = parse_expr(src).and_then(|e| eval_uea(&e, alg)).map_err(|e| input(format!("expression {e}")))?;
        let n = Uea::new(&s.table).normalize(&p).map_err(input)?;
        out.write(to_c(n.to_string()));
        Ok(SpStatus::Ok)
    })
}

/// Number of PBW normal forms with per-generator m-exponents at most `dm`
/// and h-exponents at most `dh`.
///
/// # Safety
/// `spec` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sp_basis_count(spec: *const SpSpec, dm: u32, dh: u32, out: *mut usize) -> SpStatus {
    guard(|| {
        let s = spec_ref(spec)?;
        write_out(out, pbw_basis(s.table.algebra(), dm, dh).len())?;
        Ok(SpStatus::Ok)
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the most recent failing call on this thread, or null. The
/// pointer stays valid until the next call into this library on the thread.
#[no_mangle]
pub extern "C" fn sp_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}
