//! Exact rational interval arithmetic.
//!
//! Inequalities between real algebraic quantities are decided with directed
//! rounding: every interval endpoint is an exact rational, so a comparison
//! that succeeds on the interval endpoints is a proof, never rounding luck.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A closed interval `[lo, hi]` with exact rational endpoints.
#[derive(Debug, Clone, PartialEq)]
pub struct RatInterval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl RatInterval {
    pub fn point(x: BigRational) -> Self {
        RatInterval { lo: x.clone(), hi: x }
    }

    pub fn from_int(x: i64) -> Self {
        Self::point(BigRational::from_integer(BigInt::from(x)))
    }

    /// Enclosure of `sqrt(x)` with width at most `2^-bits` times `x`'s scale.
    ///
    /// Requires `x >= 0`.
    pub fn sqrt_of_rational(x: &BigRational, bits: u32) -> Self {
        assert!(!x.is_negative(), "sqrt of negative rational");
        if x.is_zero() {
            return Self::point(BigRational::zero());
        }
        // sqrt(p/q) = sqrt(p*q)/q; scale by 4^bits for the requested width.
        let p = x.numer();
        let q = x.denom();
        let scaled = p * q << (2 * bits as usize);
        let s = scaled.sqrt();
        let denom = q << (bits as usize);
        let lo = BigRational::new(s.clone(), denom.clone());
        let hi = BigRational::new(s + BigInt::one(), denom);
        RatInterval { lo, hi }
    }

    pub fn add(&self, other: &Self) -> Self {
        RatInterval {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        RatInterval {
            lo: &self.lo - &other.hi,
            hi: &self.hi - &other.lo,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let candidates = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let lo = candidates.iter().min().unwrap().clone();
        let hi = candidates.iter().max().unwrap().clone();
        RatInterval { lo, hi }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_negative() {
            RatInterval {
                lo: &self.hi * c,
                hi: &self.lo * c,
            }
        } else {
            RatInterval {
                lo: &self.lo * c,
                hi: &self.hi * c,
            }
        }
    }

    /// `self^n` for a nonnegative exponent.
    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::point(BigRational::one());
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// True iff every point of `self` is strictly greater than every point of
    /// `other`.
    pub fn certainly_gt(&self, other: &Self) -> bool {
        self.lo > other.hi
    }

    /// True iff every point of `self` is `<=` every point of `other`.
    pub fn certainly_le(&self, other: &Self) -> bool {
        self.hi <= other.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(BigInt::from(2))
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn to_f64(&self) -> f64 {
        rational_to_f64(&self.midpoint())
    }
}

pub fn rational_to_f64(x: &BigRational) -> f64 {
    // Good to f64 precision for desk-scale magnitudes.
    let scale = BigInt::one() << 64usize;
    let scaled = (x.numer() * &scale) / x.denom();
    let (sign, digits) = scaled.to_u64_digits();
    let mut v = 0.0f64;
    for &d in digits.iter().rev() {
        v = v * 1.8446744073709552e19 + d as f64;
    }
    let v = v / 1.8446744073709552e19;
    match sign {
        num_bigint::Sign::Minus => -v,
        _ => v,
    }
}

/// A high-precision enclosure of a real quadratic irrationality.
#[derive(Debug, Clone)]
pub struct RealQuadApprox {
    pub value: RatInterval,
    pub precision_bits: u32,
}

impl RealQuadApprox {
    pub fn to_f64(&self) -> f64 {
        self.value.to_f64()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn sqrt_encloses() {
        let two = rat(2, 1);
        let iv = RatInterval::sqrt_of_rational(&two, 80);
        let lo2 = &iv.lo * &iv.lo;
        let hi2 = &iv.hi * &iv.hi;
        assert!(lo2 <= two && two <= hi2);
        assert!(iv.width() < rat(1, 1 << 40));
    }

    #[test]
    fn interval_mul_signs() {
        let a = RatInterval {
            lo: rat(-2, 1),
            hi: rat(3, 1),
        };
        let b = RatInterval {
            lo: rat(-1, 1),
            hi: rat(4, 1),
        };
        let p = a.mul(&b);
        assert_eq!(p.lo, rat(-8, 1));
        assert_eq!(p.hi, rat(12, 1));
    }

    #[test]
    fn pow_point() {
        let x = RatInterval::point(rat(3, 2));
        let y = x.pow(4);
        assert_eq!(y.lo, rat(81, 16));
        assert_eq!(y.hi, rat(81, 16));
    }
}
