//! C ABI for the `succession` crate.
//!
//! Frequency vectors are opaque handles created by `succession_fv_new` or
//! `succession_fv_from_counts` and released with `succession_fv_free`.
//! Laws are passed by value as a kind plus one parameter. Every fallible
//! call returns a [`SuccessionStatus`]; on failure
//! `succession_last_error_message` describes the error for the calling
//! thread.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use succession::codec::{evaluate_stream, SymbolStream};
use succession::priors;
use succession::{Error, FrequencyVector, SuccessionLaw, Symbol};

/// Result codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuccessionStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    SymbolOutOfRange = 3,
    /// The quantity is undefined for this history.
    Undefined = 4,
    /// The law does not support the operation.
    Unsupported = 5,
    /// A symbol had probability zero.
    NonFinite = 6,
    /// A panic was caught at the boundary.
    Internal = 7,
}

/// Which estimation rule.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuccessionLawKind {
    Laplace = 0,
    /// `param` is λ > 0; λ = 0.5 is Jeffreys-Perks.
    Lidstone = 1,
    UniformSubsets = 2,
    Natural = 3,
    SharpenedSubsets = 4,
    SharpenedNatural = 5,
    MethodA = 6,
    MethodB = 7,
    MethodC = 8,
    MethodD = 9,
    GoodTuring = 10,
    /// `param` is δ in (0, 1).
    AbsoluteDiscount = 11,
    /// `param` is α in (0, 1).
    LinearDiscount = 12,
}

/// A law and its parameter; `param` is ignored by laws without one.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct SuccessionLawSpec {
    pub kind: SuccessionLawKind,
    pub param: f64,
}

/// Codelength totals for one stream.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct SuccessionReport {
    pub bits: f64,
    pub bytes_ceil: u64,
    pub entropy_bits: f64,
    pub entropy_bytes_ceil: u64,
    pub score_bytes: i64,
    pub q: u64,
    pub n: u64,
}

/// Opaque frequency vector.
pub struct SuccessionFrequencyVector(FrequencyVector);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> SuccessionStatus {
    use SuccessionStatus::*;
    match e {
        Error::SymbolOutOfRange { .. } => SymbolOutOfRange,
        Error::EmptyHistory(_) | Error::UnrealizedCount { .. } => Undefined,
        Error::NoClosedForm { .. } | Error::UnsupportedLaw { .. } => Unsupported,
        Error::NonFiniteCodelength { .. } => NonFinite,
        _ => InvalidArgument,
    }
}

fn guard<F>(f: F) -> SuccessionStatus
where
    F: FnOnce() -> Result<(), SuccessionStatus>,
{
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SuccessionStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("panic in succession".into());
            SuccessionStatus::Internal
        }
    }
}

fn check<T>(r: succession::Result<T>) -> Result<T, SuccessionStatus> {
    r.map_err(|e| {
        set_error(e.to_string());
        status_of(&e)
    })
}

fn non_null<'a, T>(p: *const T, what: &str) -> Result<&'a T, SuccessionStatus> {
    // SAFETY: callers pass either null or a pointer valid for reads of T
    unsafe { p.as_ref() }.ok_or_else(|| {
        set_error(format!("{what} is null"));
        SuccessionStatus::NullPointer
    })
}

fn write_out<T>(out: *mut T, value: T) -> Result<(), SuccessionStatus> {
    if out.is_null() {
        set_error("output pointer is null".into());
        return Err(SuccessionStatus::NullPointer);
    }
    // SAFETY: non-null and, per the API contract, valid for writes of T
    unsafe { out.write(value) };
    Ok(())
}

fn to_law(spec: SuccessionLawSpec) -> Result<SuccessionLaw, SuccessionStatus> {
    use SuccessionLawKind::*;
    check(match spec.kind {
        Laplace => Ok(SuccessionLaw::Laplace),
        Lidstone => SuccessionLaw::lidstone(spec.param),
        UniformSubsets => Ok(SuccessionLaw::UniformSubsets),
        Natural => Ok(SuccessionLaw::Natural),
        SharpenedSubsets => Ok(SuccessionLaw::SharpenedSubsets),
        SharpenedNatural => Ok(SuccessionLaw::SharpenedNatural),
        MethodA => Ok(SuccessionLaw::MethodA),
        MethodB => Ok(SuccessionLaw::MethodB),
        MethodC => Ok(SuccessionLaw::MethodC),
        MethodD => Ok(SuccessionLaw::MethodD),
        GoodTuring => Ok(SuccessionLaw::GoodTuring),
        AbsoluteDiscount => SuccessionLaw::absolute_discount(spec.param),
        LinearDiscount => SuccessionLaw::linear_discount(spec.param),
    })
}

/// Message for the last failed call on this thread; empty if none. The
/// pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn succession_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn succession_status_string(status: SuccessionStatus) -> *const c_char {
    let s: &'static [u8] = match status {
        SuccessionStatus::Ok => b"ok\0",
        SuccessionStatus::NullPointer => b"null pointer\0",
        SuccessionStatus::InvalidArgument => b"invalid argument\0",
        SuccessionStatus::SymbolOutOfRange => b"symbol out of range\0",
        SuccessionStatus::Undefined => b"undefined for this history\0",
        SuccessionStatus::Unsupported => b"unsupported by this law\0",
        SuccessionStatus::NonFinite => b"zero-probability event\0",
        SuccessionStatus::Internal => b"internal error\0",
    };
    s.as_ptr().cast()
}

/// Empty frequency vector over `k` symbols.
#[no_mangle]
pub extern "C" fn succession_fv_new(
    k: usize,
    out: *mut *mut SuccessionFrequencyVector,
) -> SuccessionStatus {
    guard(|| {
        let fv = check(FrequencyVector::new(k))?;
        write_out(out, Box::into_raw(Box::new(SuccessionFrequencyVector(fv))))
    })
}

/// Frequency vector from `len` counts; missing trailing counts are zero.
/// Negative counts are rejected.
///
/// # Safety
/// `counts` must point to `len` readable values, or be null with `len = 0`.
#[no_mangle]
pub unsafe extern "C" fn succession_fv_from_counts(
    k: usize,
    counts: *const i64,
    len: usize,
    out: *mut *mut SuccessionFrequencyVector,
) -> SuccessionStatus {
    guard(|| {
        let raw: &[i64] = if len == 0 {
            &[]
        } else {
            non_null(counts, "counts")?;
            // SAFETY: non-null and valid for `len` reads per the contract
            unsafe { std::slice::from_raw_parts(counts, len) }
        };
        let mut unsigned = Vec::with_capacity(raw.len());
        for (index, &value) in raw.iter().enumerate() {
            if value < 0 {
                return check(Err(Error::NegativeCount { index, value }));
            }
            unsigned.push(value as u64);
        }
        let fv = check(FrequencyVector::from_counts(k, &unsigned))?;
        write_out(out, Box::into_raw(Box::new(SuccessionFrequencyVector(fv))))
    })
}

/// Releases a handle; null is ignored.
///
/// # Safety
/// `fv` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn succession_fv_free(fv: *mut SuccessionFrequencyVector) {
    if !fv.is_null() {
        // SAFETY: the handle came from Box::into_raw and is freed once
        drop(unsafe { Box::from_raw(fv) });
    }
}

/// Records one more occurrence of `symbol`.
///
/// # Safety
/// `fv` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn succession_fv_observe(
    fv: *mut SuccessionFrequencyVector,
    symbol: usize,
) -> SuccessionStatus {
    guard(|| {
        // SAFETY: null or a live, exclusively borrowed handle
        let fv = unsafe { fv.as_mut() }.ok_or_else(|| {
            set_error("frequency vector is null".into());
            SuccessionStatus::NullPointer
        })?;
        check(fv.0.observe(Symbol(symbol)))
    })
}

/// Summary statistics of a frequency vector.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct SuccessionStats {
    pub k: u64,
    pub n: u64,
    /// Attested symbols.
    pub q: u64,
    /// Symbols seen at least twice.
    pub q_prime: u64,
    /// Empirical entropy of the counts times n, in bits.
    pub entropy_bits: f64,
}

/// # Safety
/// `fv` must be null or a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn succession_fv_stats(
    fv: *const SuccessionFrequencyVector,
    out: *mut SuccessionStats,
) -> SuccessionStatus {
    guard(|| {
        let fv = &non_null(fv, "frequency vector")?.0;
        write_out(
            out,
            SuccessionStats {
                k: fv.k() as u64,
                n: fv.n(),
                q: fv.q() as u64,
                q_prime: fv.q_prime() as u64,
                entropy_bits: fv.empirical_entropy_bits(),
            },
        )
    })
}

/// Count of `symbol`.
///
/// # Safety
/// `fv` must be null or a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn succession_fv_count(
    fv: *const SuccessionFrequencyVector,
    symbol: usize,
    out: *mut u64,
) -> SuccessionStatus {
    guard(|| {
        let fv = &non_null(fv, "frequency vector")?.0;
        if symbol >= fv.k() {
            return check(Err(Error::SymbolOutOfRange { symbol, k: fv.k() }));
        }
        write_out(out, fv.count(Symbol(symbol)))
    })
}

/// Probability that the next symbol is `symbol`.
///
/// # Safety
/// `fv` must be null or a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn succession_conditional(
    fv: *const SuccessionFrequencyVector,
    law: SuccessionLawSpec,
    symbol: usize,
    out: *mut f64,
) -> SuccessionStatus {
    guard(|| {
        let fv = &non_null(fv, "frequency vector")?.0;
        let law = to_law(law)?;
        let p = check(law.conditional(fv, Symbol(symbol)))?;
        write_out(out, p.value())
    })
}

/// Total probability of the novel symbols.
///
/// # Safety
/// `fv` must be null or a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn succession_escape_mass(
    fv: *const SuccessionFrequencyVector,
    law: SuccessionLawSpec,
    out: *mut f64,
) -> SuccessionStatus {
    guard(|| {
        let fv = &non_null(fv, "frequency vector")?.0;
        let law = to_law(law)?;
        write_out(out, law.escape_mass(fv).value())
    })
}

/// `log2` of the probability the law's prior gives one string with these
/// counts.
///
/// # Safety
/// `fv` must be null or a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn succession_string_log2prob(
    fv: *const SuccessionFrequencyVector,
    law: SuccessionLawSpec,
    out: *mut f64,
) -> SuccessionStatus {
    guard(|| {
        let fv = &non_null(fv, "frequency vector")?.0;
        let law = to_law(law)?;
        write_out(out, check(priors::string_logprob(fv, &law))?.log2())
    })
}

/// `log2 p_a - log2 p_b` for one string with these counts.
///
/// # Safety
/// `fv` must be null or a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn succession_log_ratio(
    fv: *const SuccessionFrequencyVector,
    a: SuccessionLawSpec,
    b: SuccessionLawSpec,
    out: *mut f64,
) -> SuccessionStatus {
    guard(|| {
        let fv = &non_null(fv, "frequency vector")?.0;
        let (a, b) = (to_law(a)?, to_law(b)?);
        write_out(out, check(priors::log_ratio(fv, &a, &b))?)
    })
}

/// Sequential codelength of `len` symbols, each below `k`.
///
/// # Safety
/// `symbols` must point to `len` readable values, or be null with `len = 0`;
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn succession_evaluate(
    symbols: *const u32,
    len: usize,
    k: usize,
    law: SuccessionLawSpec,
    out: *mut SuccessionReport,
) -> SuccessionStatus {
    guard(|| {
        let data: &[u32] = if len == 0 {
            &[]
        } else {
            non_null(symbols, "symbols")?;
            // SAFETY: non-null and valid for `len` reads per the contract
            unsafe { std::slice::from_raw_parts(symbols, len) }
        };
        let law = to_law(law)?;
        let stream = check(SymbolStream::new(k, data.to_vec()))?;
        let r = check(evaluate_stream(&stream, &law))?;
        write_out(
            out,
            SuccessionReport {
                bits: r.bits,
                bytes_ceil: r.bytes_ceil,
                entropy_bits: r.entropy_bits,
                entropy_bytes_ceil: r.entropy_bytes_ceil,
                score_bytes: r.score_bytes,
                q: r.q as u64,
                n: r.n,
            },
        )
    })
}
