//! High-precision complex floating point on top of MPFR reals.

use num_rational::BigRational;
use rug::float::Constant;
use rug::ops::CompleteRound;
use rug::{Float, Rational};

use super::quadrat::QuadRat;

/// A complex number with both parts at the same MPFR precision.
#[derive(Debug, Clone)]
pub struct Complex {
    pub re: Float,
    pub im: Float,
}

/// Converts an exact rational to a correctly rounded MPFR float.
pub fn rational_to_float(x: &BigRational, prec: u32) -> Float {
    let r: Rational = x
        .to_string()
        .parse()
        .expect("BigRational prints as p or p/q");
    Float::with_val(prec, r)
}

/// `x + y √Δ` as a float; correctly rounded pieces, error ≤ a few ulp.
pub fn quadrat_to_float(q: &QuadRat, prec: u32) -> Float {
    let sqrt_d = Float::with_val(prec, q.disc()).sqrt();
    rational_to_float(q.x(), prec) + rational_to_float(q.y(), prec) * sqrt_d
}

impl Complex {
    pub fn new(re: Float, im: Float) -> Self {
        Complex { re, im }
    }

    pub fn zero(prec: u32) -> Self {
        Complex::new(Float::new(prec), Float::new(prec))
    }

    pub fn one(prec: u32) -> Self {
        Complex::new(Float::with_val(prec, 1), Float::new(prec))
    }

    pub fn from_real(re: Float) -> Self {
        let prec = re.prec();
        Complex::new(re, Float::new(prec))
    }

    pub fn from_rational(x: &BigRational, prec: u32) -> Self {
        Complex::from_real(rational_to_float(x, prec))
    }

    pub fn prec(&self) -> u32 {
        self.re.prec()
    }

    /// `exp(2πi k/n)`.
    pub fn root_of_unity(n: u64, k: u64, prec: u32) -> Self {
        let theta = Float::with_val(prec, Constant::Pi) * 2u32 * Float::with_val(prec, k)
            / Float::with_val(prec, n);
        let (sin, cos) = theta.sin_cos(Float::new(prec));
        Complex::new(cos, sin)
    }

    pub fn add(&self, other: &Self) -> Self {
        Complex::new(
            (&self.re + &other.re).complete(self.prec()),
            (&self.im + &other.im).complete(self.prec()),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        Complex::new(
            (&self.re - &other.re).complete(self.prec()),
            (&self.im - &other.im).complete(self.prec()),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        let prec = self.prec();
        let re = (&self.re * &other.re).complete(prec) - (&self.im * &other.im).complete(prec);
        let im = (&self.re * &other.im).complete(prec) + (&self.im * &other.re).complete(prec);
        Complex::new(re, im)
    }

    pub fn scale(&self, c: &Float) -> Self {
        Complex::new(
            (&self.re * c).complete(self.prec()),
            (&self.im * c).complete(self.prec()),
        )
    }

    pub fn conj(&self) -> Self {
        Complex::new(self.re.clone(), -self.im.clone())
    }

    pub fn norm_sqr(&self) -> Float {
        self.re.clone().square() + self.im.clone().square()
    }

    pub fn abs(&self) -> Float {
        self.re.clone().hypot(&self.im)
    }

    pub fn inv(&self) -> Self {
        let n = self.norm_sqr();
        Complex::new(
            self.re.clone() / n.clone(),
            -self.im.clone() / n,
        )
    }

    pub fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }

    pub fn pow_i64(&self, e: i64) -> Self {
        let base = if e < 0 { self.inv() } else { self.clone() };
        let mut exp = e.unsigned_abs();
        let mut acc = Complex::one(self.prec());
        let mut sq = base;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&sq);
            }
            exp >>= 1;
            if exp > 0 {
                sq = sq.mul(&sq);
            }
        }
        acc
    }

    /// `|self - other|`.
    pub fn dist(&self, other: &Self) -> Float {
        self.sub(other).abs()
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn roots_of_unity_close_cycle() {
        let prec = 128;
        for n in [1u64, 2, 3, 5, 12] {
            let z = Complex::root_of_unity(n, 1, prec);
            let zn = z.pow_i64(n as i64);
            let err = zn.dist(&Complex::one(prec));
            assert!(err < Float::with_val(prec, 1e-30), "n = {n}, err = {err}");
            // |z| = 1
            let mod_err = (z.abs() - 1u32).abs();
            assert!(mod_err < Float::with_val(prec, 1e-30));
        }
    }

    #[test]
    fn rational_and_quadratic_conversion() {
        let prec = 96;
        let third = BigRational::new(BigInt::from(1), BigInt::from(3));
        let f = rational_to_float(&third, prec);
        assert!((f * 3u32 - 1u32).abs() < Float::with_val(prec, 1e-25));
        // golden ratio satisfies x^2 = x + 1
        let params = crate::lucas::LucasParams::new(1, 1).unwrap();
        let phi = quadrat_to_float(&QuadRat::alpha(&params), prec);
        let resid = (phi.clone().square() - phi - 1u32).abs();
        assert!(resid < Float::with_val(prec, 1e-25));
    }

    #[test]
    fn division_round_trip() {
        let prec = 128;
        let z = Complex::root_of_unity(7, 3, prec);
        let w = Complex::root_of_unity(5, 2, prec);
        let q = z.div(&w).mul(&w);
        assert!(q.dist(&z) < Float::with_val(prec, 1e-30));
    }
}
