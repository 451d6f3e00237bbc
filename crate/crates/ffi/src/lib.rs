//! C ABI over `evenflows`.
//!
//! Every fallible call returns an [`EvfStatus`] and writes its result through
//! an out-pointer. On failure the message is kept per thread and can be
//! fetched with [`evf_last_error_message`]. Strings handed out by this
//! library must be released with [`evf_string_free`]; handles with their
//! matching `*_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use evenflows::cohomology::{verify_diagram, DiagramCase};
use evenflows::higgs::{classify, even_hitchin_multiplicity, hitchin_multiplicity, DivisorTuple};
use evenflows::weights::{default_oracle_bound, even_leq, is_even_minuscule, is_even_minuscule_oracle, DominantWeight};
use evenflows::weyl::{euler_characteristic, poincare_polynomial, signature, HomogeneousPair};
use evenflows::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvfStatus {
    Ok = 0,
    Domain = 1,
    RankMismatch = 2,
    Parse = 3,
    InvariantBreach = 4,
    ResourceCap = 5,
    NullPointer = 6,
    InvalidUtf8 = 7,
    Panic = 8,
}

/// Opaque dominant weight of `GL(n)`.
pub struct EvfWeight {
    inner: DominantWeight,
}

/// Opaque divisor tuple `(δ₀; δ₁,…,δ_{n−1})`.
pub struct EvfDivisorTuple {
    inner: DivisorTuple,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Failure(EvfStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Domain(_) => EvfStatus::Domain,
            Error::RankMismatch { .. } => EvfStatus::RankMismatch,
            Error::Parse(_) => EvfStatus::Parse,
            Error::InvariantBreach(_) => EvfStatus::InvariantBreach,
            Error::ResourceCap { .. } => EvfStatus::ResourceCap,
        };
        Failure(status, e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> EvfStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            EvfStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".to_string());
            EvfStatus::Panic
        }
    }
}

fn null() -> Failure {
    Failure(EvfStatus::NullPointer, "null pointer argument".to_string())
}

unsafe fn deref<'a, T>(p: *const T) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(null)
}

unsafe fn write<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null());
    }
    out.write(value);
    Ok(())
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(null());
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| Failure(EvfStatus::InvalidUtf8, "string is not valid UTF-8".to_string()))
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("interior NULs removed").into_raw()
}

fn json_string(r: serde_json::Result<String>) -> String {
    r.expect("report types serialize")
}

/// Copy of the last error message on this thread, or NULL if the last call succeeded.
#[no_mangle]
pub extern "C" fn evf_last_error_message() -> *mut c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(std::ptr::null_mut(), |c| c.clone().into_raw()))
}

/// # Safety
/// `s` must be NULL or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn evf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Build a weight from `len` coordinates in the fundamental-weight basis.
///
/// # Safety
/// `coords` must point to `len` readable values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn evf_weight_new(coords: *const i64, len: usize, out: *mut *mut EvfWeight) -> EvfStatus {
    guard(|| {
        if coords.is_null() {
            return Err(null());
        }
        let v = std::slice::from_raw_parts(coords, len).to_vec();
        let inner = DominantWeight::new(v)?;
        write(out, Box::into_raw(Box::new(EvfWeight { inner })))
    })
}

/// # Safety
/// `w` must be NULL or a handle from [`evf_weight_new`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn evf_weight_free(w: *mut EvfWeight) {
    if !w.is_null() {
        drop(Box::from_raw(w));
    }
}

/// Rank `n`, or 0 for a NULL handle.
///
/// # Safety
/// `w` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn evf_weight_rank(w: *const EvfWeight) -> usize {
    w.as_ref().map_or(0, |w| w.inner.rank())
}

/// # Safety
/// `w` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn evf_weight_is_even_minuscule(w: *const EvfWeight, out: *mut bool) -> EvfStatus {
    guard(|| write(out, is_even_minuscule(&deref(w)?.inner)))
}

/// Brute-force check over the box `{0..bound}^{n−1}`; `bound <= 0` selects the default box.
///
/// # Safety
/// `w` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn evf_weight_is_even_minuscule_oracle(
    w: *const EvfWeight,
    bound: i64,
    out: *mut bool,
) -> EvfStatus {
    guard(|| {
        let w = &deref(w)?.inner;
        let bound = if bound > 0 { bound } else { default_oracle_bound(w) };
        write(out, is_even_minuscule_oracle(w, bound))
    })
}

/// Whether `lambda − mu` lies in the even root cone.
///
/// # Safety
/// Both handles must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn evf_weight_even_leq(
    mu: *const EvfWeight,
    lambda: *const EvfWeight,
    out: *mut bool,
) -> EvfStatus {
    guard(|| write(out, even_leq(&deref(mu)?.inner, &deref(lambda)?.inner)?))
}

/// Parse `{"n": .., "delta0": {..}, "middle": [..]}`.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn evf_divisor_tuple_from_json(
    json: *const c_char,
    out: *mut *mut EvfDivisorTuple,
) -> EvfStatus {
    guard(|| {
        let inner: DivisorTuple =
            serde_json::from_str(read_str(json)?).map_err(|e| Failure(EvfStatus::Parse, e.to_string()))?;
        write(out, Box::into_raw(Box::new(EvfDivisorTuple { inner })))
    })
}

/// # Safety
/// `t` must be NULL or a handle from [`evf_divisor_tuple_from_json`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn evf_divisor_tuple_free(t: *mut EvfDivisorTuple) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// # Safety
/// `t` must be a live handle; both out-pointers writable.
#[no_mangle]
pub unsafe extern "C" fn evf_divisor_tuple_classify(
    t: *const EvfDivisorTuple,
    very_stable: *mut bool,
    even_very_stable: *mut bool,
) -> EvfStatus {
    guard(|| {
        let report = classify(&deref(t)?.inner);
        write(very_stable, report.very_stable)?;
        write(even_very_stable, report.even_very_stable)
    })
}

/// Full classification report, witnesses included, as JSON.
///
/// # Safety
/// `t` must be a live handle and `out` writable; free the result with [`evf_string_free`].
#[no_mangle]
pub unsafe extern "C" fn evf_divisor_tuple_classify_json(
    t: *const EvfDivisorTuple,
    out: *mut *mut c_char,
) -> EvfStatus {
    guard(|| write(out, into_c_string(json_string(serde_json::to_string(&classify(&deref(t)?.inner))))))
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn evf_hitchin_multiplicity(n: usize, k: usize, out: *mut u64) -> EvfStatus {
    guard(|| write(out, hitchin_multiplicity(n, k)?))
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn evf_even_hitchin_multiplicity(n: usize, k: usize, out: *mut u64) -> EvfStatus {
    guard(|| write(out, even_hitchin_multiplicity(n, k)?))
}

/// Poincaré polynomial, Euler characteristic and signature of a pair such as `"GL4/GL2xGL2"`.
///
/// # Safety
/// `pair` must be a NUL-terminated string and `out` writable; free the result with [`evf_string_free`].
#[no_mangle]
pub unsafe extern "C" fn evf_poincare_json(pair: *const c_char, out: *mut *mut c_char) -> EvfStatus {
    guard(|| {
        let pair: HomogeneousPair = read_str(pair)?.parse()?;
        let report = serde_json::json!({
            "pair": pair.to_string(),
            "coefficients": poincare_polynomial(&pair)?,
            "euler_characteristic": euler_characteristic(&pair)?,
            "signature": signature(&pair)?,
        });
        write(out, into_c_string(json_string(serde_json::to_string(&report))))
    })
}

/// Diagram report for a case name; `n` and `k` equal to 0 mean "not given".
///
/// # Safety
/// `case_name` must be a NUL-terminated string and `out` writable; free the result with [`evf_string_free`].
#[no_mangle]
pub unsafe extern "C" fn evf_verify_diagram_json(
    case_name: *const c_char,
    n: usize,
    k: usize,
    oracle_degree: u32,
    out: *mut *mut c_char,
) -> EvfStatus {
    guard(|| {
        let opt = |v: usize| (v > 0).then_some(v);
        let case = DiagramCase::new(read_str(case_name)?, opt(n), opt(k))?;
        write(out, into_c_string(json_string(serde_json::to_string(&verify_diagram(&case, oracle_degree)?))))
    })
}
