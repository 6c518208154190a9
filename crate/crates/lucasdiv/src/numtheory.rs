//! Cyclotomic polynomials, arithmetic functions, gcd identities and the
//! short-vector lemma.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lucas::{self, LucasParams};
use crate::real::RatInterval;

/// Divisors of `n` in ascending order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut divs = Vec::new();
    let mut i = 1;
    while i * i <= n {
        if n % i == 0 {
            divs.push(i);
            if i != n / i {
                divs.push(n / i);
            }
        }
        i += 1;
    }
    divs.sort_unstable();
    divs
}

/// Prime factorization by trial division, `(p, exponent)` pairs.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n) == [(n, 1)]
}

/// Möbius function.
pub fn moebius(v: u64) -> i64 {
    assert!(v >= 1);
    let f = factorize(v);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Euler totient.
pub fn euler_phi(v: u64) -> u64 {
    assert!(v >= 1);
    factorize(v)
        .iter()
        .fold(v, |acc, &(p, _)| acc / p * (p - 1))
}

/// Number of square-free divisors, `2^ω(v)`.
pub fn tau_star(v: u64) -> u64 {
    assert!(v >= 1);
    1 << factorize(v).len()
}

// ---------------------------------------------------------------------------
// Integer polynomials, low degree first.

fn poly_trim(c: &mut Vec<BigInt>) {
    while c.len() > 1 && c.last().map(|x| x.is_zero()).unwrap_or(false) {
        c.pop();
    }
}

fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Exact division of integer polynomials; panics if the division is inexact.
fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem: Vec<BigInt> = num.to_vec();
    poly_trim(&mut rem);
    let dd = den.len() - 1;
    assert!(!den[dd].is_zero());
    assert!(rem.len() > dd || (rem.len() == 1 && rem[0].is_zero()));
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    for i in (0..quot.len()).rev() {
        let (q, r) = rem[i + dd].div_rem(&den[dd]);
        assert!(r.is_zero(), "inexact polynomial division");
        if !q.is_zero() {
            for (j, d) in den.iter().enumerate() {
                let t = &q * d;
                rem[i + j] -= t;
            }
        }
        quot[i] = q;
    }
    assert!(rem.iter().all(|c| c.is_zero()), "nonzero remainder");
    quot
}

fn x_pow_minus_one(n: u64) -> Vec<BigInt> {
    let mut c = vec![BigInt::zero(); n as usize + 1];
    c[0] = -BigInt::one();
    c[n as usize] = BigInt::one();
    c
}

/// The `v`-th cyclotomic polynomial with exact integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycloPoly {
    pub v: u64,
    /// Coefficients, low degree first; degree `φ(v)`, leading coefficient 1.
    pub coeffs: Vec<BigInt>,
}

impl CycloPoly {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Exact value at an integer point.
    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Exact value at a rational point.
    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    /// Interval enclosure of the value at an interval point.
    pub fn eval_interval(&self, x: &RatInterval) -> RatInterval {
        let mut acc = RatInterval::point(BigRational::zero());
        for c in self.coeffs.iter().rev() {
            acc = acc
                .mul(x)
                .add(&RatInterval::point(BigRational::from_integer(c.clone())));
        }
        acc
    }
}

/// `Φ_v` by iterative exact division of `X^v - 1` by `Φ_d` for proper
/// divisors `d` (the default construction: no rational intermediates).
pub fn cyclotomic(v: u64) -> CycloPoly {
    assert!(v >= 1);
    let mut poly = x_pow_minus_one(v);
    for d in divisors(v) {
        if d == v {
            continue;
        }
        let phi_d = cyclotomic(d);
        poly = poly_div_exact(&poly, &phi_d.coeffs);
    }
    debug_assert_eq!(poly.len() as u64 - 1, euler_phi(v));
    CycloPoly { v, coeffs: poly }
}

/// `Φ_v` via the Möbius product `∏_{d|v} (X^d - 1)^{μ(v/d)}`; the
/// cross-validation route.
pub fn cyclotomic_moebius(v: u64) -> CycloPoly {
    assert!(v >= 1);
    let mut num = vec![BigInt::one()];
    let mut den = vec![BigInt::one()];
    for d in divisors(v) {
        match moebius(v / d) {
            1 => num = poly_mul(&num, &x_pow_minus_one(d)),
            -1 => den = poly_mul(&den, &x_pow_minus_one(d)),
            _ => {}
        }
    }
    let coeffs = poly_div_exact(&num, &den);
    CycloPoly { v, coeffs }
}

/// `Φ_v(1)`: `p` when `v = p^ℓ` is a prime power, else 1 (for `v >= 2`).
pub fn cyclotomic_at_one(v: u64) -> BigInt {
    assert!(v >= 2);
    let f = factorize(v);
    let predicted = if f.len() == 1 {
        BigInt::from(f[0].0)
    } else {
        BigInt::one()
    };
    debug_assert_eq!(predicted, cyclotomic(v).eval_int(&BigInt::one()));
    predicted
}

/// Strict inequality `Φ_v(α) > (α(α-1))^{φ(v)/2}` decided on interval
/// endpoints; compares squares to avoid the half-integer exponent.
pub fn check_cyclotomic_lower_bound(v: u64, alpha: &RatInterval) -> bool {
    assert!(v >= 2);
    assert!(alpha.lo > BigRational::one(), "alpha must exceed 1");
    let phi = cyclotomic(v);
    let lhs = phi.eval_interval(alpha);
    let one = RatInterval::point(BigRational::one());
    let base = alpha.mul(&alpha.sub(&one));
    let lhs_sq = lhs.mul(&lhs);
    let rhs = base.pow(euler_phi(v) as u32);
    lhs_sq.certainly_gt(&rhs)
}

/// The sharper intermediate bound `Φ_v(α) > α^{φ(v)} ((α-1)/α)^{τ*(v)/2}`,
/// again via squares: `Φ_v(α)² α^{τ*} > α^{2φ(v)} (α-1)^{τ*}`.
pub fn check_cyclotomic_tau_bound(v: u64, alpha: &RatInterval) -> bool {
    assert!(v >= 2);
    let phi = cyclotomic(v);
    let lhs = phi.eval_interval(alpha);
    let one = RatInterval::point(BigRational::one());
    let ts = tau_star(v) as u32;
    let lhs_sq = lhs.mul(&lhs).mul(&alpha.pow(ts));
    let rhs = alpha
        .pow(2 * euler_phi(v) as u32)
        .mul(&alpha.sub(&one).pow(ts));
    lhs_sq.certainly_gt(&rhs)
}

// ---------------------------------------------------------------------------

/// A witness for the short-vector lemma: `(u, v) ≠ (0, 0)` with
/// `max(|u|, |v|) ≤ √X` and `|a·u + b·v| ≤ 3√X`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ShortVector {
    pub u: i64,
    pub v: i64,
    pub combo: i64,
}

/// Deterministic short-vector search: exhaustive over the box, returning the
/// lexicographically smallest valid `(|combo|, |u|, |v|)` witness.
pub fn short_vector(a: u64, b: u64, x: f64) -> Result<ShortVector> {
    if x < 3.0 {
        return Err(Error::RejectedInput(format!("X must be >= 3, got {x}")));
    }
    if (a.max(b)) as f64 > x {
        return Err(Error::RejectedInput(format!(
            "max(a, b) = {} exceeds X = {x}",
            a.max(b)
        )));
    }
    let s = x.sqrt().floor() as i64;
    let mut best: Option<(i64, i64, i64, ShortVector)> = None;
    for u in -s..=s {
        for v in -s..=s {
            if u == 0 && v == 0 {
                continue;
            }
            let combo = (a as i128) * (u as i128) + (b as i128) * (v as i128);
            // |combo| <= 3 sqrt(X)  <=>  combo^2 <= 9 X, checked exactly in
            // integers when X is integral, conservatively otherwise.
            if (combo * combo) as f64 > 9.0 * x {
                continue;
            }
            let combo = combo as i64;
            let key = (combo.abs(), u.abs(), v.abs());
            let better = match &best {
                None => true,
                Some((c, uu, vv, _)) => key < (*c, *uu, *vv),
            };
            if better {
                best = Some((key.0, key.1, key.2, ShortVector { u, v, combo }));
            }
        }
    }
    best.map(|(_, _, _, w)| w).ok_or_else(|| {
        Error::CapExceeded("no short vector in the search box (cannot happen for X >= 3)".into())
    })
}

/// `gcd(γ^m - 1, γ^n - 1)`, asserted equal to `|γ^{gcd(m,n)} - 1|`.
pub fn gcd_power_minus_one(gamma: &BigInt, m: u64, n: u64) -> BigInt {
    assert!(gamma.abs() >= BigInt::from(2), "|gamma| must be >= 2");
    assert!(m >= 1 && n >= 1);
    let gm = gamma.pow(m as u32) - BigInt::one();
    let gn = gamma.pow(n as u32) - BigInt::one();
    let g = gm.gcd(&gn);
    let d = m.gcd(&n);
    let expected = (gamma.pow(d as u32) - BigInt::one()).abs();
    assert_eq!(g, expected, "gcd identity failed for gamma={gamma}, m={m}, n={n}");
    g
}

/// Resultant of two integer polynomials by the subresultant
/// (fraction-free) pseudo-remainder sequence.
pub fn resultant(f: &[BigInt], g: &[BigInt]) -> BigInt {
    let mut a: Vec<BigInt> = f.to_vec();
    let mut b: Vec<BigInt> = g.to_vec();
    poly_trim(&mut a);
    poly_trim(&mut b);
    if a.len() == 1 {
        return a[0].pow((b.len() - 1) as u32);
    }
    if b.len() == 1 {
        return b[0].pow((a.len() - 1) as u32);
    }
    let mut sign = BigInt::one();
    let mut gg = BigInt::one();
    let mut hh = BigInt::one();
    loop {
        let da = a.len() - 1;
        let db = b.len() - 1;
        if da < db {
            std::mem::swap(&mut a, &mut b);
            if da % 2 == 1 && db % 2 == 1 {
                sign = -sign;
            }
            continue;
        }
        let delta = da - db;
        // pseudo-remainder: R = lc(b)^{delta+1} a mod b, built by repeated
        // scale-and-eliminate so every step stays in Z.
        let lb = b[db].clone();
        let mut r = a.clone();
        for i in (db..=da).rev() {
            let coef = if i < r.len() {
                r[i].clone()
            } else {
                BigInt::zero()
            };
            for c in r.iter_mut() {
                *c *= &lb;
            }
            if !coef.is_zero() {
                for (j, bc) in b.iter().enumerate() {
                    let t = &coef * bc;
                    r[i - db + j] -= t;
                }
            }
            r.truncate(i);
            if r.is_empty() {
                r.push(BigInt::zero());
            }
        }
        poly_trim(&mut r);
        if r.iter().all(|c| c.is_zero()) {
            // nontrivial common factor: resultant is zero
            return BigInt::zero();
        }
        if da % 2 == 1 && db % 2 == 1 {
            sign = -sign;
        }
        let divisor = &gg * hh.pow(delta as u32);
        for c in r.iter_mut() {
            let (q, rem) = c.div_rem(&divisor);
            debug_assert!(rem.is_zero());
            *c = q;
        }
        let dr = r.len() - 1;
        gg = lb.clone();
        hh = if delta == 0 {
            hh
        } else {
            // h' = l(b)^delta / h^(delta-1)
            let num = lb.pow(delta as u32);
            let den = hh.pow(delta as u32 - 1);
            let (q, rem) = num.div_rem(&den);
            debug_assert!(rem.is_zero());
            q
        };
        if dr == 0 {
            // finish: res = sign * r0^db / h^(db-1)
            let num = r[0].pow(db as u32);
            let den = hh.pow(db as u32 - 1);
            let (q, rem) = num.div_rem(&den);
            debug_assert!(rem.is_zero());
            return sign * q;
        }
        a = b;
        b = r;
    }
}

/// Resultant of `(X^m - 1)/(X - 1)` and `(X^n - 1)/(X - 1)` for coprime
/// `m, n >= 2`; by the unit lemma this is always `±1`.
pub fn cyclotomic_resultant_unit(m: u64, n: u64) -> Result<BigInt> {
    if m < 2 || n < 2 {
        return Err(Error::RejectedInput("m and n must be >= 2".into()));
    }
    if m.gcd(&n) != 1 {
        return Err(Error::RejectedInput(format!(
            "m={m} and n={n} must be coprime"
        )));
    }
    let x_minus_one = [-BigInt::one(), BigInt::one()];
    let f = poly_div_exact(&x_pow_minus_one(m), &x_minus_one);
    let g = poly_div_exact(&x_pow_minus_one(n), &x_minus_one);
    Ok(resultant(&f, &g))
}

/// `gcd(U_m, U_n) = |U_{gcd(m,n)}|`, the integer shadow of the ideal
/// identity; always true for admissible parameters.
pub fn lucas_gcd_property(params: &LucasParams, m: u64, n: u64) -> bool {
    assert!(m >= 1 && n >= 1);
    let um = lucas::lucas_u(params, m);
    let un = lucas::lucas_u(params, n);
    let g = um.gcd(&un);
    g == lucas::lucas_u(params, m.gcd(&n)).abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn cyclotomic_small() {
        assert_eq!(
            cyclotomic(1).coeffs,
            vec![BigInt::from(-1), BigInt::from(1)]
        );
        assert_eq!(
            cyclotomic(4).coeffs,
            vec![BigInt::from(1), BigInt::from(0), BigInt::from(1)]
        );
        // Phi_9 = X^6 + X^3 + 1
        let phi9 = cyclotomic(9);
        let mut expect = vec![BigInt::from(0); 7];
        expect[0] = BigInt::from(1);
        expect[3] = BigInt::from(1);
        expect[6] = BigInt::from(1);
        assert_eq!(phi9.coeffs, expect);
    }

    #[test]
    fn moebius_route_agrees() {
        for v in 1..=100 {
            assert_eq!(cyclotomic(v), cyclotomic_moebius(v), "v={v}");
        }
    }

    #[test]
    fn at_one_dichotomy() {
        assert_eq!(cyclotomic_at_one(9), BigInt::from(3));
        assert_eq!(cyclotomic_at_one(6), BigInt::from(1));
        assert_eq!(cyclotomic_at_one(2), BigInt::from(2));
        for v in 2..=200 {
            let direct = cyclotomic(v).eval_int(&BigInt::one());
            assert_eq!(cyclotomic_at_one(v), direct, "v={v}");
        }
    }

    #[test]
    fn arithmetic_functions() {
        assert_eq!(tau_star(12), 4);
        assert_eq!(moebius(12), 0);
        assert_eq!(euler_phi(12), 4);
        assert_eq!(tau_star(6), 4);
        assert_eq!(euler_phi(6), 2);
        assert_eq!((euler_phi(1), moebius(1), tau_star(1)), (1, 1, 1));
        // phi(v) = sum_{d|v} d mu(v/d)
        for v in 1..=300u64 {
            let s: i64 = divisors(v)
                .iter()
                .map(|&d| d as i64 * moebius(v / d))
                .sum();
            assert_eq!(s, euler_phi(v) as i64, "v={v}");
        }
        // tau*(v) <= phi(v) outside {1, 2, 6}
        for v in 3..=500u64 {
            if v != 6 {
                assert!(tau_star(v) <= euler_phi(v), "v={v}");
            }
        }
        assert!(tau_star(6) > euler_phi(6));
    }

    #[test]
    fn lower_bound_examples() {
        // golden ratio: phi(phi-1) = 1 exactly
        let fib = crate::lucas::LucasParams::new(1, 1).unwrap();
        let alpha = fib.alpha_interval(128);
        assert!(check_cyclotomic_lower_bound(2, &alpha));
        let two = RatInterval::from_int(2);
        assert!(check_cyclotomic_lower_bound(6, &two));
        let small = RatInterval::point(BigRational::new(BigInt::from(11), BigInt::from(10)));
        assert!(check_cyclotomic_lower_bound(12, &small));
    }

    #[test]
    fn short_vector_examples() {
        let w = short_vector(9, 9, 9.0).unwrap();
        assert_eq!(w.combo, 0);
        assert!(w.u.abs() <= 3 && w.v.abs() <= 3);
        let w = short_vector(7, 5, 9.0).unwrap();
        assert!(w.combo.abs() <= 9);
        let w = short_vector(100, 99, 100.0).unwrap();
        assert!(w.combo.abs() <= 30 && w.u.abs() <= 10 && w.v.abs() <= 10);
        assert!(short_vector(5, 5, 2.0).is_err());
        assert!(short_vector(50, 5, 9.0).is_err());
    }

    #[test]
    fn gcd_power_examples() {
        assert_eq!(gcd_power_minus_one(&BigInt::from(2), 6, 4), BigInt::from(3));
        assert_eq!(
            gcd_power_minus_one(&BigInt::from(10), 3, 3),
            BigInt::from(999)
        );
        assert_eq!(gcd_power_minus_one(&BigInt::from(3), 5, 7), BigInt::from(2));
    }

    #[test]
    fn resultant_sanity() {
        // res(x^2 - 1, x^2 - 4) = 9
        let f = [BigInt::from(-1), BigInt::from(0), BigInt::from(1)];
        let g = [BigInt::from(-4), BigInt::from(0), BigInt::from(1)];
        assert_eq!(resultant(&f, &g), BigInt::from(9));
        // res with a common root is 0
        let h = [BigInt::from(-1), BigInt::from(1)];
        assert_eq!(resultant(&f, &h), BigInt::from(0));
    }

    #[test]
    fn cyclotomic_resultants_are_units() {
        for (m, n) in [(2u64, 3u64), (4, 9), (5, 6)] {
            let r = cyclotomic_resultant_unit(m, n).unwrap();
            assert!(r.abs() == BigInt::one(), "res({m},{n}) = {r}");
        }
        assert!(cyclotomic_resultant_unit(4, 6).is_err());
    }

    #[test]
    fn lucas_gcd_examples() {
        let fib = crate::lucas::LucasParams::new(1, 1).unwrap();
        assert!(lucas_gcd_property(&fib, 12, 18));
        assert!(lucas_gcd_property(&fib, 5, 7));
        let pell = crate::lucas::LucasParams::new(2, 1).unwrap();
        assert!(lucas_gcd_property(&pell, 4, 6));
    }
}
