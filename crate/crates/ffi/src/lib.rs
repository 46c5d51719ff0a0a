//! C ABI over `johnson-walk`.
//!
//! Every entry point returns a [`JwStatus`]. On failure the message is kept
//! per thread and read with [`jw_last_error_message`]. Strings handed out by
//! the library are released with [`jw_string_free`], instances with
//! [`jw_instance_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use johnson_walk::cost::{choose_parameters, table1, table1_csv};
use johnson_walk::error::Error;
use johnson_walk::families::{make_family, FamilyParams};
use johnson_walk::full_sim::FullSim;
use johnson_walk::instance::{Classification, Family, ProblemInstance};
use johnson_walk::reduced::{ReducedBasis, ReducedEngine};
use johnson_walk::spectral::SpectralReport;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JwStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    MemoryCap = 3,
    Numerical = 4,
    Panic = 5,
}

/// Walk parameters: subset size `m`, inner steps `t1`, outer rounds `t2`.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct JwRunParams {
    pub m: u64,
    pub t1: u64,
    pub t2: u64,
}

/// Opaque problem instance.
pub struct JwInstance {
    inner: ProblemInstance,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let text = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).ok());
}

fn status_of(err: &Error) -> JwStatus {
    match err {
        Error::MemoryCap { .. } => JwStatus::MemoryCap,
        Error::NotUnitary { .. } | Error::RootBracketing { .. } | Error::MalformedState(_) => {
            JwStatus::Numerical
        }
        _ => JwStatus::InvalidArgument,
    }
}

fn guard(f: impl FnOnce() -> Result<(), JwStatus>) -> JwStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => JwStatus::Ok,
        Ok(Err(status)) => status,
        Err(_) => {
            set_error("internal panic");
            JwStatus::Panic
        }
    }
}

fn fail(err: Error) -> JwStatus {
    let status = status_of(&err);
    set_error(err.to_string());
    status
}

fn check_out<T>(out: *mut T) -> Result<(), JwStatus> {
    if out.is_null() {
        set_error("output pointer is null");
        return Err(JwStatus::NullPointer);
    }
    Ok(())
}

unsafe fn read_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, JwStatus> {
    if s.is_null() {
        set_error(format!("{what} is null"));
        return Err(JwStatus::NullPointer);
    }
    CStr::from_ptr(s).to_str().map_err(|_| {
        set_error(format!("{what} is not UTF-8"));
        JwStatus::InvalidArgument
    })
}

unsafe fn write_string(out: *mut *mut c_char, text: String) -> Result<(), JwStatus> {
    let c = CString::new(text).map_err(|_| {
        set_error("output contains a NUL byte");
        JwStatus::InvalidArgument
    })?;
    *out = c.into_raw();
    Ok(())
}

unsafe fn instance_ref<'a>(inst: *const JwInstance) -> Result<&'a JwInstance, JwStatus> {
    inst.as_ref().ok_or_else(|| {
        set_error("instance is null");
        JwStatus::NullPointer
    })
}

/// Message for the last failed call on this thread, or NULL. Valid until the
/// next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn jw_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be NULL or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn jw_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Generate an instance of a named family (`"element-distinctness"`,
/// `"zero-sum-xor"`, `"l-clique"`, ...).
///
/// # Safety
/// `family` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn jw_instance_generate(
    family: *const c_char,
    n: u64,
    l: u64,
    seed: u64,
    plant: bool,
    out: *mut *mut JwInstance,
) -> JwStatus {
    guard(|| {
        check_out(out)?;
        let name = read_str(family, "family")?;
        let fam: Family = name.parse().map_err(fail)?;
        let inst = make_family(fam, &FamilyParams::new(n as usize, l as usize, seed, plant))
            .map_err(fail)?;
        *out = Box::into_raw(Box::new(JwInstance { inner: inst }));
        Ok(())
    })
}

/// Parse an instance from its JSON file format.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn jw_instance_from_json(
    json: *const c_char,
    out: *mut *mut JwInstance,
) -> JwStatus {
    guard(|| {
        check_out(out)?;
        let text = read_str(json, "json")?;
        let inst = ProblemInstance::from_json(text).map_err(fail)?;
        *out = Box::into_raw(Box::new(JwInstance { inner: inst }));
        Ok(())
    })
}

/// # Safety
/// `inst` must be valid; `out` must be writable. The string is freed with [`jw_string_free`].
#[no_mangle]
pub unsafe extern "C" fn jw_instance_to_json(
    inst: *const JwInstance,
    out: *mut *mut c_char,
) -> JwStatus {
    guard(|| {
        check_out(out)?;
        let inst = instance_ref(inst)?;
        write_string(out, inst.inner.to_json().map_err(fail)?)
    })
}

/// # Safety
/// `inst` must be NULL or a handle from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn jw_instance_free(inst: *mut JwInstance) {
    if !inst.is_null() {
        drop(Box::from_raw(inst));
    }
}

/// Domain size N and subset size L of an instance.
///
/// # Safety
/// `inst` must be valid; `n` and `l` must be writable.
#[no_mangle]
pub unsafe extern "C" fn jw_instance_shape(
    inst: *const JwInstance,
    n: *mut u64,
    l: *mut u64,
) -> JwStatus {
    guard(|| {
        check_out(n)?;
        check_out(l)?;
        let inst = instance_ref(inst)?;
        *n = inst.inner.n as u64;
        *l = inst.inner.l as u64;
        Ok(())
    })
}

/// Number of marked subsets: 0, 1, or the exact count when several exist.
///
/// # Safety
/// `inst` must be valid; `count` must be writable.
#[no_mangle]
pub unsafe extern "C" fn jw_instance_marked_count(
    inst: *const JwInstance,
    count: *mut u64,
) -> JwStatus {
    guard(|| {
        check_out(count)?;
        let inst = instance_ref(inst)?;
        *count = match inst.inner.find_marked() {
            Classification::None => 0,
            Classification::Unique(_) => 1,
            Classification::Multiple(k) => k,
        };
        Ok(())
    })
}

/// Default parameters for `(n, l)`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn jw_default_params(n: u64, l: u64, out: *mut JwRunParams) -> JwStatus {
    guard(|| {
        check_out(out)?;
        let p = choose_parameters(n, l as usize).map_err(fail)?;
        *out = JwRunParams {
            m: p.m,
            t1: p.t1,
            t2: p.t2,
        };
        Ok(())
    })
}

/// Run the full engine and return the run report as JSON.
///
/// # Safety
/// `inst` and `params` must be valid; `out_json` must be writable.
#[no_mangle]
pub unsafe extern "C" fn jw_simulate_full(
    inst: *const JwInstance,
    params: *const JwRunParams,
    out_json: *mut *mut c_char,
) -> JwStatus {
    guard(|| {
        check_out(out_json)?;
        let inst = instance_ref(inst)?;
        let p = params.as_ref().ok_or_else(|| {
            set_error("params is null");
            JwStatus::NullPointer
        })?;
        let sim = FullSim::new(&inst.inner, p.m as usize).map_err(fail)?;
        let run = sim.run(p.t1, p.t2).map_err(fail)?;
        write_string(out_json, run.report.to_json())
    })
}

/// Run the reduced engine and return the run report as JSON.
///
/// # Safety
/// `params` must be valid; `out_json` must be writable.
#[no_mangle]
pub unsafe extern "C" fn jw_simulate_reduced(
    n: u64,
    l: u64,
    params: *const JwRunParams,
    out_json: *mut *mut c_char,
) -> JwStatus {
    guard(|| {
        check_out(out_json)?;
        let p = params.as_ref().ok_or_else(|| {
            set_error("params is null");
            JwStatus::NullPointer
        })?;
        let basis = ReducedBasis::new(n, p.m, l as usize).map_err(fail)?;
        write_string(
            out_json,
            ReducedEngine::new(basis).run(p.t1, p.t2).report.to_json(),
        )
    })
}

/// Spectral report for `(n, m, l)` as JSON.
///
/// # Safety
/// `out_json` must be writable.
#[no_mangle]
pub unsafe extern "C" fn jw_spectrum(
    n: u64,
    m: u64,
    l: u64,
    out_json: *mut *mut c_char,
) -> JwStatus {
    guard(|| {
        check_out(out_json)?;
        let report = SpectralReport::compute(n, m, l as usize).map_err(fail)?;
        write_string(out_json, report.to_json())
    })
}

/// Clique exponent table as CSV.
///
/// # Safety
/// `out_csv` must be writable.
#[no_mangle]
pub unsafe extern "C" fn jw_table1_csv(out_csv: *mut *mut c_char) -> JwStatus {
    guard(|| {
        check_out(out_csv)?;
        write_string(out_csv, table1_csv(&table1()))
    })
}
