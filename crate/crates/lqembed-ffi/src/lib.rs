//! C ABI over the certification engine: opaque family handles, JSON-emitting
//! certificate calls, and status codes matching the CLI exit codes.
//!
//! Every function catches unwinds and reports them as `LqStatus::Internal`,
//! and treats null pointers as `LqStatus::InvalidInput`. Out-parameters are
//! written only on `LqStatus::Ok`. Strings handed out through out-parameters
//! are heap allocations that must be released with `lq_string_free`.

use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use lqembed::embed::{counterexample_bundle, embeds, lambda_threshold};
use lqembed::exact::Rational;
use lqembed::norms::PerturbedNormFamily;
use lqembed::Error;

/// Status of a call. Values equal the CLI exit codes so scripted callers see
/// one convention across both surfaces.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LqStatus {
    Ok = 0,
    /// Malformed input: null pointer, bad rational string, out-of-range
    /// parameter, wrong vector length, or an unsupported exponent class.
    InvalidInput = 2,
    /// The requested window degenerates to a point (for example n = 2).
    DegenerateWindow = 3,
    /// A broken invariant or a caught panic; always a bug.
    Internal = 4,
}

fn status_of(err: &Error) -> LqStatus {
    match err.exit_code() {
        3 => LqStatus::DegenerateWindow,
        4 => LqStatus::Internal,
        _ => LqStatus::InvalidInput,
    }
}

/// Opaque handle to a perturbed norm family; create with `lq_family_new`,
/// release with `lq_family_free`.
pub struct LqFamily {
    inner: PerturbedNormFamily,
}

fn guarded(f: impl FnOnce() -> LqStatus) -> LqStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or(LqStatus::Internal)
}

unsafe fn parse_rational(ptr: *const c_char) -> Result<Rational, LqStatus> {
    if ptr.is_null() {
        return Err(LqStatus::InvalidInput);
    }
    let s = unsafe { CStr::from_ptr(ptr) }.to_str().map_err(|_| LqStatus::InvalidInput)?;
    s.parse().map_err(|_| LqStatus::InvalidInput)
}

unsafe fn serialize_to<T: serde::Serialize>(out: *mut *mut c_char, value: &T) -> LqStatus {
    let json = match serde_json::to_string(value) {
        Ok(json) => json,
        Err(_) => return LqStatus::Internal,
    };
    match CString::new(json) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            LqStatus::Ok
        }
        Err(_) => LqStatus::Internal,
    }
}

/// Engine version as a static string; the pointer stays valid for the whole
/// process and must not be freed.
#[no_mangle]
pub extern "C" fn lq_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Creates a family handle for ambient dimension `n` and profile power `s`.
///
/// # Safety
/// `out` must point to writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn lq_family_new(n: u32, s: u32, out: *mut *mut LqFamily) -> LqStatus {
    if out.is_null() {
        return LqStatus::InvalidInput;
    }
    guarded(|| match PerturbedNormFamily::new(n, s) {
        Ok(inner) => {
            unsafe { *out = Box::into_raw(Box::new(LqFamily { inner })) };
            LqStatus::Ok
        }
        Err(e) => status_of(&e),
    })
}

/// Releases a family handle; null is a no-op.
///
/// # Safety
/// `family` must be null or a pointer returned by `lq_family_new` that has
/// not been freed yet.
#[no_mangle]
pub unsafe extern "C" fn lq_family_free(family: *mut LqFamily) {
    if !family.is_null() {
        drop(unsafe { Box::from_raw(family) });
    }
}

/// Evaluates the norm at `x` (length `len`, which must equal the family's
/// dimension) for the perturbation strength `lambda`, an exact rational
/// string such as "1/14".
///
/// # Safety
/// `family` must be a live handle; `lambda` a NUL-terminated string; `x` an
/// array of `len` doubles; `out` writable storage for one double.
#[no_mangle]
pub unsafe extern "C" fn lq_family_evaluate(
    family: *const LqFamily,
    lambda: *const c_char,
    x: *const f64,
    len: usize,
    out: *mut f64,
) -> LqStatus {
    if family.is_null() || x.is_null() || out.is_null() {
        return LqStatus::InvalidInput;
    }
    guarded(|| {
        let family = unsafe { &(*family).inner };
        let lambda = match unsafe { parse_rational(lambda) } {
            Ok(v) => v,
            Err(status) => return status,
        };
        if len != family.n() as usize {
            return LqStatus::InvalidInput;
        }
        let xs = unsafe { std::slice::from_raw_parts(x, len) };
        match family.evaluator(&lambda) {
            Ok(evaluator) => {
                unsafe { *out = evaluator.value(xs) };
                LqStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Writes the certified lambda convexity window of the family as JSON.
///
/// # Safety
/// `family` must be a live handle; `out` writable storage for one pointer.
/// The returned string must be released with `lq_string_free`.
#[no_mangle]
pub unsafe extern "C" fn lq_convexity_interval_json(
    family: *const LqFamily,
    out: *mut *mut c_char,
) -> LqStatus {
    if family.is_null() || out.is_null() {
        return LqStatus::InvalidInput;
    }
    guarded(|| {
        let family = unsafe { &(*family).inner };
        match family.convexity_interval() {
            Ok(cert) => unsafe { serialize_to(out, &cert) },
            Err(e) => status_of(&e),
        }
    })
}

/// Writes the exact embedding threshold certificate for exponent `q` (an
/// exact rational string) as JSON. A degenerate window still returns Ok; the
/// certificate carries the flag.
///
/// # Safety
/// `family` must be a live handle; `q` a NUL-terminated string; `out`
/// writable storage for one pointer. Release the string with
/// `lq_string_free`.
#[no_mangle]
pub unsafe extern "C" fn lq_threshold_json(
    family: *const LqFamily,
    q: *const c_char,
    out: *mut *mut c_char,
) -> LqStatus {
    if family.is_null() || out.is_null() {
        return LqStatus::InvalidInput;
    }
    guarded(|| {
        let family = unsafe { &(*family).inner };
        let q = match unsafe { parse_rational(q) } {
            Ok(v) => v,
            Err(status) => return status,
        };
        match lambda_threshold(family, &q) {
            Ok(cert) => unsafe { serialize_to(out, &cert) },
            Err(e) => status_of(&e),
        }
    })
}

/// Decides whether the family at strength `lambda` embeds isometrically in
/// L_q. Both parameters are exact rational strings.
///
/// # Safety
/// `family` must be a live handle; `q` and `lambda` NUL-terminated strings;
/// `out` writable storage for one bool.
#[no_mangle]
pub unsafe extern "C" fn lq_embeds(
    family: *const LqFamily,
    q: *const c_char,
    lambda: *const c_char,
    out: *mut bool,
) -> LqStatus {
    if family.is_null() || out.is_null() {
        return LqStatus::InvalidInput;
    }
    guarded(|| {
        let family = unsafe { &(*family).inner };
        let q = match unsafe { parse_rational(q) } {
            Ok(v) => v,
            Err(status) => return status,
        };
        let lambda = match unsafe { parse_rational(lambda) } {
            Ok(v) => v,
            Err(status) => return status,
        };
        match embeds(family, &q, &lambda) {
            Ok(decision) => {
                unsafe { *out = decision.embeds };
                LqStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Writes the full counterexample bundle for dimension `n` as JSON: the
/// witness lambda, the norm decision, and the embeds / fails-to-embed pair.
/// Returns DegenerateWindow for n = 2, where no witness exists.
///
/// # Safety
/// `out` must point to writable storage for one pointer. Release the string
/// with `lq_string_free`.
#[no_mangle]
pub unsafe extern "C" fn lq_counterexample_json(n: u32, out: *mut *mut c_char) -> LqStatus {
    if out.is_null() {
        return LqStatus::InvalidInput;
    }
    guarded(|| match counterexample_bundle(n) {
        Ok(bundle) => unsafe { serialize_to(out, &bundle) },
        Err(e) => status_of(&e),
    })
}

/// Releases a string returned by any of the *_json calls; null is a no-op.
///
/// # Safety
/// `s` must be null or a string pointer obtained from this library that has
/// not been freed yet.
#[no_mangle]
pub unsafe extern "C" fn lq_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}
