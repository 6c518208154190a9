//! C ABI for the lucasdiv library.
//!
//! All entry points are panic-safe and return a [`LucasdivStatus`]; results
//! travel through out-pointers. Sequence values that can exceed 64 bits are
//! returned as malloc'd decimal strings, released with
//! [`lucasdiv_string_free`]. Parameter pairs live behind the opaque
//! [`LucasdivParams`] handle created by [`lucasdiv_params_new`] and released
//! with [`lucasdiv_params_free`].

use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use num_bigint::BigInt;

use lucasdiv::algebraic::find_dependence;
use lucasdiv::error::Error;
use lucasdiv::lucas::{self, LucasParams};
use lucasdiv::solver::{self, MinS};
use lucasdiv::valuation;

/// Status code returned by every FFI entry point.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum LucasdivStatus {
    /// Call succeeded; out-parameters are valid.
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// The parameter pair is outside the accepted family (b not in {-1, 1},
    /// zero discriminant, or a degenerate pair).
    InvalidParams = 2,
    /// An argument failed a precondition (range, coprimality, ...).
    RejectedInput = 3,
    /// A bounded search exhausted its cap without an answer.
    CapExceeded = 4,
    /// Floating point precision too low to certify; retry with more bits.
    PrecisionInsufficient = 5,
    /// Unexpected internal failure.
    InternalError = 6,
}

/// Opaque handle for a validated Lucas parameter pair.
pub struct LucasdivParams(LucasParams);

/// Result of a minimal-exponent search.
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct LucasdivMinS {
    /// 1 if a minimal exponent was found, 0 if none can ever exist
    /// (certified obstruction).
    pub found: u8,
    /// The minimal exponent when `found` is 1.
    pub s: u64,
    /// The witnessing shift when `found` is 1.
    pub n: u64,
}

/// Result of a multiplicative-dependence search.
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct LucasdivWitness {
    /// 1 if a dependence was certified within the search bound.
    pub found: u8,
    /// Exponent of the fundamental root in the certified relation.
    pub r: i64,
    /// Exponent of the twisted ratio in the certified relation.
    pub s: i64,
    /// Order of the root of unity the monomial lands on.
    pub torsion: u64,
}

fn status_of(err: &Error) -> LucasdivStatus {
    match err {
        Error::InvalidParams { .. } => LucasdivStatus::InvalidParams,
        Error::RejectedInput(_) => LucasdivStatus::RejectedInput,
        Error::CapExceeded(_) => LucasdivStatus::CapExceeded,
        Error::PrecisionInsufficient(_) => LucasdivStatus::PrecisionInsufficient,
        _ => LucasdivStatus::InternalError,
    }
}

fn guarded(f: impl FnOnce() -> LucasdivStatus) -> LucasdivStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or(LucasdivStatus::InternalError)
}

/// Creates a parameter handle for the pair `(a, b)`.
///
/// Writes the handle to `out` on success. Rejects `b` outside `{-1, 1}`,
/// zero discriminant, and degenerate pairs.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lucasdiv_params_new(
    a: i64,
    b: i64,
    out: *mut *mut LucasdivParams,
) -> LucasdivStatus {
    if out.is_null() {
        return LucasdivStatus::NullPointer;
    }
    guarded(|| match LucasParams::new(a, b) {
        Ok(p) => {
            *out = Box::into_raw(Box::new(LucasdivParams(p)));
            LucasdivStatus::Ok
        }
        Err(e) => status_of(&e),
    })
}

/// Releases a handle returned by [`lucasdiv_params_new`]. Null is a no-op.
///
/// # Safety
/// `params` must be null or a pointer from `lucasdiv_params_new` not yet
/// freed.
#[no_mangle]
pub unsafe extern "C" fn lucasdiv_params_free(params: *mut LucasdivParams) {
    if !params.is_null() {
        drop(Box::from_raw(params));
    }
}

/// Releases a string returned by this library. Null is a no-op.
///
/// # Safety
/// `s` must be null or a string pointer produced by this library not yet
/// freed.
#[no_mangle]
pub unsafe extern "C" fn lucasdiv_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

unsafe fn emit_bigint(value: &BigInt, out: *mut *mut c_char) -> LucasdivStatus {
    match CString::new(value.to_string()) {
        Ok(cs) => {
            *out = cs.into_raw();
            LucasdivStatus::Ok
        }
        Err(_) => LucasdivStatus::InternalError,
    }
}

/// Writes `U_n` as a decimal string to `out`.
///
/// # Safety
/// `params` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lucasdiv_u(
    params: *const LucasdivParams,
    n: u64,
    out: *mut *mut c_char,
) -> LucasdivStatus {
    if params.is_null() || out.is_null() {
        return LucasdivStatus::NullPointer;
    }
    guarded(|| emit_bigint(&lucas::lucas_u(&(*params).0, n), out))
}

/// Writes the companion value `V_n` as a decimal string to `out`.
///
/// # Safety
/// `params` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lucasdiv_v(
    params: *const LucasdivParams,
    n: u64,
    out: *mut *mut c_char,
) -> LucasdivStatus {
    if params.is_null() || out.is_null() {
        return LucasdivStatus::NullPointer;
    }
    guarded(|| emit_bigint(&lucas::lucas_v(&(*params).0, n), out))
}

/// Writes `U_n mod modulus` (least nonnegative residue) to `out`.
/// Requires `modulus >= 2`.
///
/// # Safety
/// `params` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lucasdiv_u_mod(
    params: *const LucasdivParams,
    n: u64,
    modulus: u64,
    out: *mut u64,
) -> LucasdivStatus {
    if params.is_null() || out.is_null() {
        return LucasdivStatus::NullPointer;
    }
    guarded(|| {
        match lucas::lucas_u_mod(&(*params).0, n, &BigInt::from(modulus)) {
            Ok(r) => {
                // residue is reduced mod a u64, so the cast is exact
                *out = u64::try_from(r).unwrap_or(0);
                LucasdivStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Rank of appearance of the prime `p`: least `t >= 1` with `p | U_t`.
///
/// # Safety
/// `params` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lucasdiv_rank_of_appearance(
    params: *const LucasdivParams,
    p: u64,
    out: *mut u64,
) -> LucasdivStatus {
    if params.is_null() || out.is_null() {
        return LucasdivStatus::NullPointer;
    }
    guarded(|| match valuation::rank_of_appearance(&(*params).0, p) {
        Ok(f) => {
            *out = f;
            LucasdivStatus::Ok
        }
        Err(e) => status_of(&e),
    })
}

/// Minimal `s` with `U_m | U_{n+k}^s - U_n^s` for some `n in [1, 4m]`,
/// searching `s <= s_cap` (pass 0 for the default cap `4m`).
///
/// On `Ok`, `out->found == 1` carries the exponent and witness shift;
/// `out->found == 0` means no exponent exists for any `n` and `s`
/// (certified obstruction). Returns `CapExceeded` if the cap is exhausted
/// without either outcome.
///
/// # Safety
/// `params` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lucasdiv_min_s(
    params: *const LucasdivParams,
    k: u64,
    m: u64,
    s_cap: u64,
    out: *mut LucasdivMinS,
) -> LucasdivStatus {
    if params.is_null() || out.is_null() {
        return LucasdivStatus::NullPointer;
    }
    guarded(|| {
        let cap = if s_cap == 0 { 4 * m } else { s_cap };
        match solver::min_s_over_n(&(*params).0, k, m, cap) {
            Ok(MinS::Found { s, n }) => {
                *out = LucasdivMinS { found: 1, s, n };
                LucasdivStatus::Ok
            }
            Ok(MinS::NoneCertified) => {
                *out = LucasdivMinS { found: 0, s: 0, n: 0 };
                LucasdivStatus::Ok
            }
            Ok(MinS::CapExhausted) => LucasdivStatus::CapExceeded,
            Err(e) => status_of(&e),
        }
    })
}

/// Searches for a multiplicative dependence between the fundamental root
/// and the twisted ratio attached to `(k, v, j)`.
///
/// Scans exponent pairs up to `bound` (in `[1, 64]`) using
/// `precision_bits` of floating point precision for the screen; every
/// candidate is certified exactly. On `Ok`, `out->found` tells whether a
/// relation was certified within the bound.
///
/// # Safety
/// `params` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lucasdiv_find_dependence(
    params: *const LucasdivParams,
    k: u64,
    v: u64,
    j: u64,
    bound: u64,
    precision_bits: u32,
    out: *mut LucasdivWitness,
) -> LucasdivStatus {
    if params.is_null() || out.is_null() {
        return LucasdivStatus::NullPointer;
    }
    guarded(|| {
        match find_dependence(&(*params).0, k, v, j, bound, precision_bits) {
            Ok(Some(w)) => {
                *out = LucasdivWitness {
                    found: 1,
                    r: w.r,
                    s: w.s,
                    torsion: w.torsion_order,
                };
                LucasdivStatus::Ok
            }
            Ok(None) => {
                *out = LucasdivWitness { found: 0, r: 0, s: 0, torsion: 0 };
                LucasdivStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ffi::CStr;
    use std::ptr;

    #[test]
    fn fibonacci_roundtrip() {
        unsafe {
            let mut h: *mut LucasdivParams = ptr::null_mut();
            assert_eq!(lucasdiv_params_new(1, 1, &mut h), LucasdivStatus::Ok);
            let mut s: *mut c_char = ptr::null_mut();
            assert_eq!(lucasdiv_u(h, 10, &mut s), LucasdivStatus::Ok);
            assert_eq!(CStr::from_ptr(s).to_str().unwrap(), "55");
            lucasdiv_string_free(s);
            let mut r = 0u64;
            assert_eq!(lucasdiv_u_mod(h, 10, 7, &mut r), LucasdivStatus::Ok);
            assert_eq!(r, 55 % 7);
            lucasdiv_params_free(h);
        }
    }

    #[test]
    fn degenerate_pair_rejected() {
        unsafe {
            let mut h: *mut LucasdivParams = ptr::null_mut();
            assert_eq!(
                lucasdiv_params_new(1, -1, &mut h),
                LucasdivStatus::InvalidParams
            );
            assert!(h.is_null());
        }
    }

    #[test]
    fn min_s_and_certified_none() {
        unsafe {
            let mut h: *mut LucasdivParams = ptr::null_mut();
            assert_eq!(lucasdiv_params_new(1, 1, &mut h), LucasdivStatus::Ok);
            let mut out = LucasdivMinS { found: 9, s: 0, n: 0 };
            assert_eq!(lucasdiv_min_s(h, 1, 7, 0, &mut out), LucasdivStatus::Ok);
            assert_eq!((out.found, out.s, out.n), (1, 1, 8));
            lucasdiv_params_free(h);

            assert_eq!(lucasdiv_params_new(4, -1, &mut h), LucasdivStatus::Ok);
            let mut out = LucasdivMinS { found: 9, s: 0, n: 0 };
            assert_eq!(lucasdiv_min_s(h, 1, 4, 0, &mut out), LucasdivStatus::Ok);
            assert_eq!(out.found, 0);
            lucasdiv_params_free(h);
        }
    }

    #[test]
    fn dependence_witness() {
        unsafe {
            let mut h: *mut LucasdivParams = ptr::null_mut();
            assert_eq!(lucasdiv_params_new(4, -1, &mut h), LucasdivStatus::Ok);
            let mut w = LucasdivWitness { found: 9, r: 1, s: 1, torsion: 0 };
            assert_eq!(
                lucasdiv_find_dependence(h, 1, 4, 1, 20, 128, &mut w),
                LucasdivStatus::Ok
            );
            assert_eq!((w.found, w.r, w.s, w.torsion), (1, 0, 12, 12));
            lucasdiv_params_free(h);
        }
    }

    #[test]
    fn null_pointer_checks() {
        unsafe {
            let mut s: *mut c_char = ptr::null_mut();
            assert_eq!(
                lucasdiv_u(ptr::null(), 1, &mut s),
                LucasdivStatus::NullPointer
            );
            assert_eq!(
                lucasdiv_params_new(1, 1, ptr::null_mut()),
                LucasdivStatus::NullPointer
            );
            lucasdiv_params_free(ptr::null_mut());
            lucasdiv_string_free(ptr::null_mut());
        }
    }
}
