//! C ABI over `rees-core`.
//!
//! Ideals and matroids are opaque handles created by `rees_*_new` or
//! `rees_*_from_json` and released with the matching `*_free`. Every fallible
//! call returns a [`ReesStatus`]; on failure `rees_last_error` returns a
//! message for the calling thread. Strings handed out by the library must be
//! released with [`rees_string_free`]. Panics never cross the boundary.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use rees_core::cli::{self, OracleMode};
use rees_core::json::{self, parse_instance};
use rees_core::matroid::{basis_monomial_ideal, check_basis_exchange};
use rees_core::reescone::{classify, facet_normals, rees_generators};
use rees_core::semigroup::{self, Verdict};
use rees_core::{Classification, Error, IntVec, Matroid, MonomialIdeal};

/// Status codes returned by every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReesStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidInput = 2,
    ParseError = 3,
    ExchangeFailure = 4,
    CapExceeded = 5,
    PreconditionFailed = 6,
    IntegrityError = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReesClassification {
    Ideal = 0,
    QuasiIdeal = 1,
    Neither = 2,
}

/// Opaque monomial ideal.
pub struct ReesIdeal(MonomialIdeal);

/// Opaque matroid.
pub struct ReesMatroid(Matroid);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior nul removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> ReesStatus {
    match e {
        Error::Parse(_) => ReesStatus::ParseError,
        Error::ExchangeFailure(_) | Error::PolymatroidExchangeFailure(_) => ReesStatus::ExchangeFailure,
        Error::CapExceeded { .. } => ReesStatus::CapExceeded,
        Error::PreconditionFailed(_) => ReesStatus::PreconditionFailed,
        Error::IntegrityError(_) | Error::MethodDisagreement { .. } => ReesStatus::IntegrityError,
        _ => ReesStatus::InvalidInput,
    }
}

struct Fail(ReesStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(ReesStatus::NullPointer, format!("{what} is null"))
}

// Runs `f`, recording any error or panic as the thread's last error.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> ReesStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            ReesStatus::Ok
        }
        Ok(Err(Fail(status, msg))) => {
            set_last_error(&msg);
            status
        }
        Err(_) => {
            set_last_error("internal panic");
            ReesStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Fail(ReesStatus::ParseError, format!("{what} is not UTF-8")))
}

unsafe fn ideal_arg<'a>(p: *const ReesIdeal) -> Result<&'a MonomialIdeal, Fail> {
    p.as_ref().map(|h| &h.0).ok_or_else(|| null("ideal"))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(())
}

fn to_c_string(s: String) -> *mut c_char {
    CString::new(s).expect("JSON has no interior nul").into_raw()
}

/// Null-terminated message for the last failed call on this thread, or null.
/// Valid until the next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn rees_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static null-terminated string.
#[no_mangle]
pub extern "C" fn rees_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by the library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn rees_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds an ideal from `q` exponent rows of length `n`, stored row-major.
///
/// # Safety
/// `exponents` must point to `n * q` readable values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rees_ideal_new(
    n: usize,
    exponents: *const i64,
    q: usize,
    out: *mut *mut ReesIdeal,
) -> ReesStatus {
    guard(|| {
        if exponents.is_null() {
            return Err(null("exponents"));
        }
        let len = n.checked_mul(q).ok_or_else(|| Fail(ReesStatus::InvalidInput, "n * q overflows".into()))?;
        let flat = std::slice::from_raw_parts(exponents, len);
        let rows: Vec<IntVec> = if n == 0 { Vec::new() } else { flat.chunks(n).map(IntVec::from_i64s).collect() };
        let ideal = MonomialIdeal::new(n, rows)?;
        write_out(out, Box::into_raw(Box::new(ReesIdeal(ideal))))
    })
}

/// Builds an ideal from an instance document: an ideal, a polymatroid, or a
/// matroid (giving its basis ideal).
///
/// # Safety
/// `json` must be a null-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rees_ideal_from_json(json: *const c_char, out: *mut *mut ReesIdeal) -> ReesStatus {
    guard(|| {
        let text = str_arg(json, "json")?;
        let ideal = parse_instance(text, "instance")?.payload.validate()?.ideal()?;
        write_out(out, Box::into_raw(Box::new(ReesIdeal(ideal))))
    })
}

/// # Safety
/// `ideal` must come from this library and not have been freed. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn rees_ideal_free(ideal: *mut ReesIdeal) {
    if !ideal.is_null() {
        drop(Box::from_raw(ideal));
    }
}

/// # Safety
/// `ideal` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rees_ideal_num_generators(ideal: *const ReesIdeal, out: *mut usize) -> ReesStatus {
    guard(|| write_out(out, ideal_arg(ideal)?.num_generators()))
}

/// Builds a matroid on `{1..n}` from `num_bases` bases of `rank` elements
/// each, stored row-major and 1-indexed.
///
/// # Safety
/// `bases` must point to `num_bases * rank` readable values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rees_matroid_new(
    n: usize,
    bases: *const usize,
    num_bases: usize,
    rank: usize,
    out: *mut *mut ReesMatroid,
) -> ReesStatus {
    guard(|| {
        if bases.is_null() {
            return Err(null("bases"));
        }
        if rank == 0 {
            return Err(Fail(ReesStatus::InvalidInput, "rank must be positive".into()));
        }
        let len = num_bases
            .checked_mul(rank)
            .ok_or_else(|| Fail(ReesStatus::InvalidInput, "num_bases * rank overflows".into()))?;
        let flat = std::slice::from_raw_parts(bases, len);
        let family: Vec<Vec<usize>> = flat.chunks(rank).map(<[usize]>::to_vec).collect();
        let m = check_basis_exchange(n, &family)?;
        write_out(out, Box::into_raw(Box::new(ReesMatroid(m))))
    })
}

/// # Safety
/// `matroid` must come from this library and not have been freed. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn rees_matroid_free(matroid: *mut ReesMatroid) {
    if !matroid.is_null() {
        drop(Box::from_raw(matroid));
    }
}

/// New ideal handle for the basis monomial ideal of `matroid`.
///
/// # Safety
/// `matroid` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rees_matroid_basis_ideal(matroid: *const ReesMatroid, out: *mut *mut ReesIdeal) -> ReesStatus {
    guard(|| {
        let m = matroid.as_ref().ok_or_else(|| null("matroid"))?;
        write_out(out, Box::into_raw(Box::new(ReesIdeal(basis_monomial_ideal(&m.0)))))
    })
}

/// # Safety
/// `ideal` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rees_ideal_classify(ideal: *const ReesIdeal, out: *mut ReesClassification) -> ReesStatus {
    guard(|| {
        let f = facet_normals(&rees_generators(ideal_arg(ideal)?))?;
        let c = match classify(&f).verdict {
            Classification::Ideal => ReesClassification::Ideal,
            Classification::QuasiIdeal => ReesClassification::QuasiIdeal,
            Classification::Neither => ReesClassification::Neither,
        };
        write_out(out, c)
    })
}

/// Facet system as JSON `{"unit_normals": [...], "ell_normals": [[...]]}`.
///
/// # Safety
/// `ideal` must be a live handle; `out` must be writable. Free the result
/// with `rees_string_free`.
#[no_mangle]
pub unsafe extern "C" fn rees_ideal_facets_json(ideal: *const ReesIdeal, out: *mut *mut c_char) -> ReesStatus {
    guard(|| {
        let f = facet_normals(&rees_generators(ideal_arg(ideal)?))?;
        write_out(out, to_c_string(serde_json::to_string(&json::facets_to_json(&f)).expect("serializes")))
    })
}

/// Decides normality. `cap` bounds the Hilbert basis work (0 selects the
/// default). When `witness_json` is non-null it receives the certificate as
/// JSON, to be freed with `rees_string_free`.
///
/// # Safety
/// `ideal` must be a live handle; `is_normal` must be writable;
/// `witness_json` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn rees_ideal_is_normal(
    ideal: *const ReesIdeal,
    cap: u64,
    is_normal: *mut bool,
    witness_json: *mut *mut c_char,
) -> ReesStatus {
    guard(|| {
        let i = ideal_arg(ideal)?;
        let cap = if cap == 0 { semigroup::DEFAULT_VOLUME_CAP } else { cap };
        let cert = semigroup::is_normal_capped(i, cap)?;
        write_out(is_normal, cert.verdict == Verdict::Normal)?;
        if !witness_json.is_null() {
            let s = serde_json::to_string(&json::certificate_to_json(&cert)).expect("serializes");
            witness_json.write(to_c_string(s));
        }
        Ok(())
    })
}

/// The full analysis document for an instance given as JSON text.
///
/// # Safety
/// `instance_json` must be a null-terminated string; `out` must be writable.
/// Free the result with `rees_string_free`.
#[no_mangle]
pub unsafe extern "C" fn rees_analyze_json(instance_json: *const c_char, out: *mut *mut c_char) -> ReesStatus {
    guard(|| {
        let text = str_arg(instance_json, "instance_json")?;
        let file = parse_instance(text, "instance")?;
        let inst = file.payload.validate()?;
        // a Hilbert basis over the cap is reported inside the document
        let (_, doc) = cli::analyze(&file.name, &inst, semigroup::DEFAULT_VOLUME_CAP, None, OracleMode::Auto)?;
        write_out(out, to_c_string(json::render(&doc)))
    })
}
