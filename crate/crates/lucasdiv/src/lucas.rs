//! Exact and modular evaluation of the Lucas pair `(U_n, V_n)`.
//!
//! `U` satisfies `U_0 = 0`, `U_1 = 1`, `U_{n+2} = a U_{n+1} + b U_n` with
//! `b ∈ {±1}`; the companion `V` has `V_0 = 2`, `V_1 = a`. Evaluation uses
//! doubling on the pair `(U_n, U_{n+1})`:
//!
//! ```text
//! U_{2n}   = U_n (2 U_{n+1} - a U_n)
//! U_{2n+1} = U_{n+1}^2 + b U_n^2
//! V_n      = 2 U_{n+1} - a U_n
//! ```
//!
//! which needs no division and therefore works verbatim modulo any modulus.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::real::{RatInterval, RealQuadApprox};

/// Admissible parameter pair `(a, b)` with `b ∈ {±1}`, `Δ = a² + 4b > 0` and
/// `α/β` not a root of unity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LucasParams {
    a: i64,
    b: i64,
}

/// The degenerate pairs excluded by the theorem's hypothesis.
pub const DEGENERATE_PAIRS: [(i64, i64); 6] =
    [(0, 1), (0, -1), (1, -1), (-1, -1), (2, -1), (-2, -1)];

impl LucasParams {
    pub fn new(a: i64, b: i64) -> Result<Self> {
        if b != 1 && b != -1 {
            return Err(Error::InvalidParams {
                a,
                b,
                reason: "b must be +1 or -1".into(),
            });
        }
        if a == 0 {
            return Err(Error::InvalidParams {
                a,
                b,
                reason: "a must be nonzero".into(),
            });
        }
        if DEGENERATE_PAIRS.contains(&(a, b)) {
            return Err(Error::InvalidParams {
                a,
                b,
                reason: "degenerate pair: alpha/beta is a root of unity".into(),
            });
        }
        let disc = a.checked_mul(a).and_then(|s| s.checked_add(4 * b));
        match disc {
            Some(d) if d > 0 => Ok(LucasParams { a, b }),
            Some(_) => Err(Error::InvalidParams {
                a,
                b,
                reason: "discriminant a^2 + 4b must be positive".into(),
            }),
            None => Err(Error::InvalidParams {
                a,
                b,
                reason: "a too large".into(),
            }),
        }
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    /// `Δ = a² + 4b`.
    pub fn disc(&self) -> i64 {
        self.a * self.a + 4 * self.b
    }

    /// `(-b)^n`.
    pub fn minus_b_pow(&self, n: u64) -> i64 {
        if self.b == -1 || n % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Enclosure of `α = (|a| + √Δ)/2` to the requested precision.
    ///
    /// The sign normalization follows the reduction of `a < 0` to `a > 0`:
    /// the dominant root always satisfies `α > 1`.
    pub fn alpha_interval(&self, precision_bits: u32) -> RatInterval {
        let delta = BigRational::from_integer(BigInt::from(self.disc()));
        let sqrt = RatInterval::sqrt_of_rational(&delta, precision_bits + 2);
        let abs_a = RatInterval::from_int(self.a.abs());
        abs_a
            .add(&sqrt)
            .scale(&BigRational::new(BigInt::one(), BigInt::from(2)))
    }

    /// `α` with a certified relative error bound.
    pub fn alpha_approx(&self, precision_bits: u32) -> RealQuadApprox {
        assert!(precision_bits >= 16, "precision_bits must be at least 16");
        RealQuadApprox {
            value: self.alpha_interval(precision_bits),
            precision_bits,
        }
    }
}

/// One exact evaluation of the pair `(U_n, V_n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LucasPair {
    pub u: BigInt,
    pub v: BigInt,
    pub index: u64,
}

/// `(U_n, U_{n+1})` by binary doubling.
fn pair_u(params: &LucasParams, n: u64) -> (BigInt, BigInt) {
    let a = BigInt::from(params.a);
    let b = params.b;
    let mut u = BigInt::zero(); // U_k
    let mut w = BigInt::one(); // U_{k+1}
    if n == 0 {
        return (u, w);
    }
    for i in (0..64 - n.leading_zeros()).rev() {
        // (U_k, U_{k+1}) -> (U_{2k}, U_{2k+1})
        let u2 = &u * (&w + &w - &a * &u);
        let w2 = &w * &w + if b == 1 { &u * &u } else { -(&u * &u) };
        if (n >> i) & 1 == 1 {
            let next = &a * &w2 + if b == 1 { u2.clone() } else { -u2.clone() };
            u = w2;
            w = next;
        } else {
            u = u2;
            w = w2;
        }
    }
    (u, w)
}

/// `(U_n mod M, U_{n+1} mod M)` by the same doubling, never materializing
/// the full values.
fn pair_u_mod(params: &LucasParams, n: u64, modulus: &BigInt) -> (BigInt, BigInt) {
    let a = BigInt::from(params.a).mod_floor(modulus);
    let b = params.b;
    let mut u = BigInt::zero();
    let mut w = BigInt::one().mod_floor(modulus);
    if n == 0 {
        return (u, w);
    }
    for i in (0..64 - n.leading_zeros()).rev() {
        let u2 = (&u * (&w + &w - &a * &u)).mod_floor(modulus);
        let usq = (&u * &u).mod_floor(modulus);
        let w2 = (&w * &w + if b == 1 { usq } else { -usq }).mod_floor(modulus);
        if (n >> i) & 1 == 1 {
            let next = (&a * &w2 + if b == 1 { u2.clone() } else { -u2.clone() }).mod_floor(modulus);
            u = w2;
            w = next;
        } else {
            u = u2;
            w = w2;
        }
    }
    (u, w)
}

/// `U_n`, exact, in `O(log n)` big-integer multiplications.
pub fn lucas_u(params: &LucasParams, n: u64) -> BigInt {
    pair_u(params, n).0
}

/// `V_n`, exact.
pub fn lucas_v(params: &LucasParams, n: u64) -> BigInt {
    let (u, w) = pair_u(params, n);
    2 * w - BigInt::from(params.a) * u
}

/// `(U_n, V_n)` with the classical self-check `Δ U_n² + 4 (-b)^n = V_n²`.
pub fn lucas_pair(params: &LucasParams, n: u64) -> LucasPair {
    let (u, w) = pair_u(params, n);
    let v = 2 * &w - BigInt::from(params.a) * &u;
    let lhs = BigInt::from(params.disc()) * &u * &u + 4 * params.minus_b_pow(n);
    assert_eq!(lhs, &v * &v, "pair self-check failed at n={n}");
    LucasPair { u, v, index: n }
}

/// `U_n mod modulus` for `modulus >= 2`.
pub fn lucas_u_mod(params: &LucasParams, n: u64, modulus: &BigInt) -> Result<BigInt> {
    if modulus < &BigInt::from(2) {
        return Err(Error::RejectedInput(format!(
            "modulus must be >= 2, got {modulus}"
        )));
    }
    Ok(pair_u_mod(params, n, modulus).0)
}

/// Checks `U_{n+4m} - U_n = U_m V_m V_{n+2m}` exactly.
pub fn check_periodicity_identity(params: &LucasParams, m: u64, n: u64) -> bool {
    assert!(m >= 2, "m must be >= 2");
    let lhs = lucas_u(params, n + 4 * m) - lucas_u(params, n);
    let rhs = lucas_u(params, m) * lucas_v(params, m) * lucas_v(params, n + 2 * m);
    lhs == rhs
}

/// Which of the three closed-form identities to check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IdentityKind {
    /// `U_{n+k} - U_n = U_{n+k/2} V_{k/2}` (`b = 1`, `k ≡ 2 (mod 4)`)
    Diff,
    /// `U_{n+k} + U_n = U_{n+k/2} V_{k/2}` (`b = 1`, `4 | k`; or `b = -1`, `k` even)
    Sum,
    /// `U_{n+k}² + U_n² = U_{2n+k} U_k` (`b = 1`, `k` odd)
    SqSum,
}

/// Checks one closed-form identity exactly at `(n, k)`.
pub fn check_comment_identity(
    params: &LucasParams,
    k: u64,
    n: u64,
    which: IdentityKind,
) -> Result<bool> {
    if k == 0 {
        return Err(Error::RejectedInput("k must be positive".into()));
    }
    let b = params.b();
    match which {
        IdentityKind::Diff => {
            if !(b == 1 && k % 4 == 2) {
                return Err(Error::RejectedInput(
                    "DIFF requires b=1 and k ≡ 2 (mod 4)".into(),
                ));
            }
            let lhs = lucas_u(params, n + k) - lucas_u(params, n);
            let rhs = lucas_u(params, n + k / 2) * lucas_v(params, k / 2);
            Ok(lhs == rhs)
        }
        IdentityKind::Sum => {
            let ok = (b == 1 && k % 4 == 0) || (b == -1 && k % 2 == 0);
            if !ok {
                return Err(Error::RejectedInput(
                    "SUM requires (b=1, 4|k) or (b=-1, k even)".into(),
                ));
            }
            let lhs = lucas_u(params, n + k) + lucas_u(params, n);
            let rhs = lucas_u(params, n + k / 2) * lucas_v(params, k / 2);
            Ok(lhs == rhs)
        }
        IdentityKind::SqSum => {
            if !(b == 1 && k % 2 == 1) {
                return Err(Error::RejectedInput(
                    "SQSUM requires b=1 and k odd".into(),
                ));
            }
            let x = lucas_u(params, n + k);
            let y = lucas_u(params, n);
            let lhs = &x * &x + &y * &y;
            let rhs = lucas_u(params, 2 * n + k) * lucas_u(params, k);
            Ok(lhs == rhs)
        }
    }
}

/// The near-miss `U_{4n+2} | 4 (U_{n+1}^6 - U_n^6)` for `(a, b) = (4, -1)`.
pub fn check_near_miss(n: u64) -> bool {
    let params = LucasParams::new(4, -1).expect("(4,-1) is admissible");
    let um = lucas_u(&params, 4 * n + 2);
    let x = lucas_u(&params, n + 1);
    let y = lucas_u(&params, n);
    let diff = BigInt::from(4) * (x.pow(6) - y.pow(6));
    (diff % um).is_zero()
}

/// Same numerator without the factor 4; used to confirm the "near" part.
pub fn near_miss_undoubled(n: u64) -> bool {
    let params = LucasParams::new(4, -1).expect("(4,-1) is admissible");
    let um = lucas_u(&params, 4 * n + 2);
    let diff = lucas_u(&params, n + 1).pow(6) - lucas_u(&params, n).pow(6);
    (diff % um).is_zero()
}

/// Naive recurrence iteration; oracle for the doubling implementation.
pub fn lucas_u_naive(params: &LucasParams, n: u64) -> BigInt {
    let a = BigInt::from(params.a);
    let b = params.b;
    let mut prev = BigInt::zero();
    let mut cur = BigInt::one();
    if n == 0 {
        return prev;
    }
    for _ in 1..n {
        let next = &a * &cur + if b == 1 { prev.clone() } else { -prev.clone() };
        prev = cur;
        cur = next;
    }
    cur
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    fn p(a: i64, b: i64) -> LucasParams {
        LucasParams::new(a, b).unwrap()
    }

    #[test]
    fn rejects_degenerate_pairs() {
        for (a, b) in DEGENERATE_PAIRS {
            assert!(LucasParams::new(a, b).is_err(), "({a},{b}) should be rejected");
        }
        assert!(LucasParams::new(3, 2).is_err());
        assert!(LucasParams::new(0, 1).is_err());
    }

    #[test]
    fn fibonacci_values() {
        let fib = p(1, 1);
        assert_eq!(lucas_u(&fib, 0), BigInt::from(0));
        assert_eq!(lucas_u(&fib, 1), BigInt::from(1));
        assert_eq!(lucas_u(&fib, 10), BigInt::from(55));
        assert_eq!(lucas_v(&fib, 0), BigInt::from(2));
        assert_eq!(lucas_v(&fib, 1), BigInt::from(1));
    }

    #[test]
    fn pell_and_others() {
        assert_eq!(lucas_u(&p(2, 1), 5), BigInt::from(29));
        assert_eq!(lucas_u(&p(4, -1), 6), BigInt::from(780));
        // V(3,1): 2, 3, 11, 36, 119
        assert_eq!(lucas_v(&p(3, 1), 4), BigInt::from(119));
    }

    #[test]
    fn modular_matches_exact() {
        let fib = p(1, 1);
        assert_eq!(
            lucas_u_mod(&fib, 10, &BigInt::from(13)).unwrap(),
            BigInt::from(3)
        );
        assert_eq!(
            lucas_u_mod(&fib, 0, &BigInt::from(7)).unwrap(),
            BigInt::from(0)
        );
        assert_eq!(
            lucas_u_mod(&p(2, 1), 5, &BigInt::from(12)).unwrap(),
            BigInt::from(5)
        );
        assert!(lucas_u_mod(&fib, 3, &BigInt::from(1)).is_err());
    }

    #[test]
    fn doubling_agrees_with_naive() {
        for &(a, b) in &[(1i64, 1i64), (2, 1), (3, -1), (4, -1), (-3, 1), (6, -1)] {
            let params = p(a, b);
            for n in 0..80 {
                assert_eq!(
                    lucas_u(&params, n),
                    lucas_u_naive(&params, n),
                    "mismatch at ({a},{b}), n={n}"
                );
            }
        }
    }

    #[test]
    fn periodicity_identity_examples() {
        assert!(check_periodicity_identity(&p(1, 1), 2, 1));
        assert!(check_periodicity_identity(&p(1, 1), 2, 0));
        assert!(check_periodicity_identity(&p(4, -1), 3, 2));
    }

    #[test]
    fn comment_identity_examples() {
        assert!(check_comment_identity(&p(1, 1), 2, 3, IdentityKind::Diff).unwrap());
        assert!(check_comment_identity(&p(1, 1), 1, 3, IdentityKind::SqSum).unwrap());
        assert!(check_comment_identity(&p(3, -1), 2, 1, IdentityKind::Sum).unwrap());
        // precondition violations
        assert!(check_comment_identity(&p(1, 1), 1, 3, IdentityKind::Diff).is_err());
        assert!(check_comment_identity(&p(3, -1), 2, 1, IdentityKind::SqSum).is_err());
    }

    #[test]
    fn near_miss_examples() {
        assert!(check_near_miss(0));
        assert!(check_near_miss(1));
        assert!(check_near_miss(5));
    }

    #[test]
    fn alpha_values() {
        let phi = p(1, 1).alpha_approx(64);
        let v = phi.to_f64();
        assert!((v - 1.618033988749895).abs() < 1e-12);
        let pell = p(2, 1).alpha_approx(64);
        assert!((pell.to_f64() - 2.414213562373095).abs() < 1e-12);
        let c = p(4, -1).alpha_approx(64);
        assert!((c.to_f64() - 3.732050807568877).abs() < 1e-12);
        // a < 0 uses |a|
        let neg = p(-1, 1).alpha_approx(64);
        assert!((neg.to_f64() - 1.618033988749895).abs() < 1e-12);
    }

    #[test]
    fn pair_self_check_runs() {
        for &(a, b) in &[(1i64, 1i64), (5, -1), (-4, 1)] {
            let params = p(a, b);
            for n in 0..40 {
                let pair = lucas_pair(&params, n);
                assert_eq!(pair.index, n);
            }
        }
    }

    #[test]
    fn sign_flip_covariance() {
        for &(a, b) in &[(3i64, 1i64), (4, -1), (5, 1)] {
            let pos = p(a, b);
            let neg = p(-a, b);
            for n in 0..60 {
                assert_eq!(lucas_u(&pos, n).abs(), lucas_u(&neg, n).abs());
            }
        }
    }
}
