//! C ABI over `fracgruss`.
//!
//! Every fallible call returns an [`FgStatus`] and writes its result through
//! an out-pointer. On failure the message is available from
//! [`fg_last_error_message`] on the same thread. Strings returned by the
//! library are owned by the caller and released with [`fg_string_free`];
//! function handles are released with [`fg_function_free`].

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use fracgruss::harness::{evaluate, run_suite, CaseSpec, SuiteConfig};
use fracgruss::inequalities::TheoremId;
use fracgruss::{Error, FunctionSpec, OperatorParams};

/// Result codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FgStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Domain = 4,
    Evaluation = 5,
    Precondition = 6,
    Unsupported = 7,
    Inconsistency = 8,
    UnknownTheorem = 9,
    Config = 10,
    NoConvergence = 11,
    Panic = 99,
}

impl From<&Error> for FgStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::Domain(_) => FgStatus::Domain,
            Error::Evaluation { .. } => FgStatus::Evaluation,
            Error::Parse { .. } => FgStatus::Parse,
            Error::Precondition(_) => FgStatus::Precondition,
            Error::UnsupportedReduction(_) => FgStatus::Unsupported,
            Error::Inconsistency(_) => FgStatus::Inconsistency,
            Error::UnknownTheorem(_) => FgStatus::UnknownTheorem,
            Error::Config(_) => FgStatus::Config,
            Error::NoConvergence(_) => FgStatus::NoConvergence,
        }
    }
}

/// Operator parameters `(ρ, α, β, η, k)`.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct FgParams {
    pub rho: f64,
    pub alpha: f64,
    pub beta: f64,
    pub eta: f64,
    pub k: f64,
}

impl FgParams {
    fn to_params(self) -> Result<OperatorParams, Failure> {
        Ok(OperatorParams::new(
            self.rho, self.alpha, self.beta, self.eta, self.k,
        )?)
    }
}

/// Opaque handle to a parsed function.
pub struct FgFunction {
    spec: FunctionSpec,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = c);
}

struct Failure(FgStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(FgStatus::from(&e), e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(FgStatus::NullPointer, format!("{what} is null"))
}

/// Runs `body`, converting errors and panics into a status.
fn guard<F>(body: F) -> FgStatus
where
    F: FnOnce() -> Result<(), Failure>,
{
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            set_last_error("");
            FgStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_last_error(&msg);
            status
        }
        Err(_) => {
            set_last_error("internal panic");
            FgStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(FgStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

unsafe fn write<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    *out = value;
    Ok(())
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " "))
        .expect("interior nul removed")
        .into_raw()
}

/// Parses a function in prefix form, e.g. `"(add (pow t 2) (const 1))"`.
///
/// # Safety
/// `text` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fg_function_parse(text: *const c_char, out: *mut *mut FgFunction) -> FgStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = ptr::null_mut();
        let spec = FunctionSpec::parse(read_str(text, "text")?)?;
        *out = Box::into_raw(Box::new(FgFunction { spec }));
        Ok(())
    })
}

/// Releases a handle from [`fg_function_parse`]. Null is ignored.
///
/// # Safety
/// `f` must come from [`fg_function_parse`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn fg_function_free(f: *mut FgFunction) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Canonical text of a function; free with [`fg_string_free`].
///
/// # Safety
/// `f` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fg_function_to_string(f: *const FgFunction, out: *mut *mut c_char) -> FgStatus {
    guard(|| {
        let f = deref(f, "function")?;
        write(out, into_c_string(f.spec.to_string()), "out")
    })
}

/// # Safety
/// `f` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fg_function_eval(f: *const FgFunction, tau: f64, out: *mut f64) -> FgStatus {
    guard(|| {
        let f = deref(f, "function")?;
        let v = f.spec.eval(tau)?;
        write(out, v, "out")
    })
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fg_log_gamma(x: f64, out: *mut f64) -> FgStatus {
    guard(|| write(out, fracgruss::log_gamma(x)?, "out"))
}

/// # Safety
/// `p` must point to valid parameters; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fg_lambda_value(p: *const FgParams, x: f64, out: *mut f64) -> FgStatus {
    guard(|| {
        let p = deref(p, "params")?.to_params()?;
        write(out, fracgruss::lambda_value(&p, x)?, "out")
    })
}

/// Left-sided integral with `n` quadrature nodes.
///
/// # Safety
/// Pointers must be valid as for the other calls.
#[no_mangle]
pub unsafe extern "C" fn fg_left_integral(
    f: *const FgFunction,
    p: *const FgParams,
    x: f64,
    n: usize,
    out: *mut f64,
) -> FgStatus {
    guard(|| {
        let f = deref(f, "function")?;
        let p = deref(p, "params")?.to_params()?;
        let r = fracgruss::left_integral(&f.spec, &p, x, n)?;
        write(out, r.value, "out")
    })
}

/// Right-sided integral on `[x, b]` with `n` quadrature nodes.
///
/// # Safety
/// Pointers must be valid as for the other calls.
#[no_mangle]
pub unsafe extern "C" fn fg_right_integral(
    f: *const FgFunction,
    p: *const FgParams,
    x: f64,
    b: f64,
    n: usize,
    out: *mut f64,
) -> FgStatus {
    guard(|| {
        let f = deref(f, "function")?;
        let p = deref(p, "params")?.to_params()?;
        let r = fracgruss::right_integral(&f.spec, &p, x, b, n)?;
        write(out, r.value, "out")
    })
}

/// Exact left-sided value on `τ^(ρs)`.
///
/// # Safety
/// Pointers must be valid as for the other calls.
#[no_mangle]
pub unsafe extern "C" fn fg_power_closed_form(
    s: f64,
    p: *const FgParams,
    x: f64,
    out: *mut f64,
) -> FgStatus {
    guard(|| {
        let p = deref(p, "params")?.to_params()?;
        write(out, fracgruss::power_closed_form(s, &p, x)?, "out")
    })
}

/// Runs one checker on a JSON case and returns the JSON report.
///
/// `holds` receives 1 or 0. A violated inequality is still `FG_STATUS_OK`.
///
/// # Safety
/// Strings must be nul-terminated; out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn fg_check_json(
    theorem: *const c_char,
    case_json: *const c_char,
    report_json: *mut *mut c_char,
    holds: *mut c_int,
) -> FgStatus {
    guard(|| {
        if report_json.is_null() {
            return Err(null("report_json"));
        }
        *report_json = ptr::null_mut();
        let id: TheoremId = read_str(theorem, "theorem")?.parse()?;
        let case: CaseSpec = serde_json::from_str(read_str(case_json, "case_json")?)
            .map_err(|e| Failure(FgStatus::Config, e.to_string()))?;
        let report = evaluate(id, &case)?;
        write(holds, report.holds as c_int, "holds")?;
        let text = serde_json::to_string(&report).expect("report serializes");
        *report_json = into_c_string(text);
        Ok(())
    })
}

/// Runs a suite from a JSON config and returns the JSON report.
///
/// # Safety
/// As for [`fg_check_json`].
#[no_mangle]
pub unsafe extern "C" fn fg_run_suite_json(
    config_json: *const c_char,
    report_json: *mut *mut c_char,
    all_hold: *mut c_int,
) -> FgStatus {
    guard(|| {
        if report_json.is_null() {
            return Err(null("report_json"));
        }
        *report_json = ptr::null_mut();
        let cfg = SuiteConfig::from_json(read_str(config_json, "config_json")?)?;
        let report = run_suite(&cfg)?;
        write(all_hold, report.all_hold() as c_int, "all_hold")?;
        let text = serde_json::to_string(&report).expect("report serializes");
        *report_json = into_c_string(text);
        Ok(())
    })
}

/// Message of the last failed call on this thread, or an empty string.
/// The pointer stays valid until the next call on this thread.
#[no_mangle]
pub extern "C" fn fg_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn fg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
