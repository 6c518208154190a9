//! Exact arithmetic in `Q(√Δ)`: elements `x + y √Δ` with rational `x, y`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::lucas::LucasParams;

/// `x + y √Δ` for a fixed positive nonsquare discriminant `Δ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadRat {
    x: BigRational,
    y: BigRational,
    disc: i64,
}

impl QuadRat {
    pub fn new(x: BigRational, y: BigRational, disc: i64) -> Self {
        assert!(disc > 0);
        QuadRat { x, y, disc }
    }

    pub fn from_int(x: i64, disc: i64) -> Self {
        QuadRat::new(
            BigRational::from_integer(BigInt::from(x)),
            BigRational::zero(),
            disc,
        )
    }

    /// The dominant root `α = (|a| + √Δ)/2` of `x² - |a| x - b`.
    pub fn alpha(params: &LucasParams) -> Self {
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        QuadRat::new(
            &half * BigRational::from_integer(BigInt::from(params.a().abs())),
            half,
            params.disc(),
        )
    }

    pub fn x(&self) -> &BigRational {
        &self.x
    }

    pub fn y(&self) -> &BigRational {
        &self.y
    }

    pub fn disc(&self) -> i64 {
        self.disc
    }

    pub fn is_rational(&self) -> bool {
        self.y.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.disc, other.disc);
        QuadRat::new(&self.x + &other.x, &self.y + &other.y, self.disc)
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.disc, other.disc);
        QuadRat::new(&self.x - &other.x, &self.y - &other.y, self.disc)
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.disc, other.disc);
        let d = BigRational::from_integer(BigInt::from(self.disc));
        QuadRat::new(
            &self.x * &other.x + &self.y * &other.y * &d,
            &self.x * &other.y + &self.y * &other.x,
            self.disc,
        )
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        QuadRat::new(&self.x * c, &self.y * c, self.disc)
    }

    pub fn conj(&self) -> Self {
        QuadRat::new(self.x.clone(), -self.y.clone(), self.disc)
    }

    /// `x² - y² Δ`.
    pub fn norm(&self) -> BigRational {
        &self.x * &self.x
            - &self.y * &self.y * BigRational::from_integer(BigInt::from(self.disc))
    }

    pub fn trace(&self) -> BigRational {
        &self.x + &self.x
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn inv(&self) -> Self {
        let n = self.norm();
        assert!(!n.is_zero(), "inverse of zero quadratic element");
        self.conj().scale(&n.recip())
    }

    pub fn pow(&self, e: i64) -> Self {
        let base = if e < 0 { self.inv() } else { self.clone() };
        let mut exp = e.unsigned_abs();
        let mut acc = QuadRat::from_int(1, self.disc);
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
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lucas::lucas_u;

    #[test]
    fn golden_ratio_powers_are_fibonacci() {
        // α^n = (L_n + F_n √5)/2, so the √5-coefficient of α^n is F_n / 2...
        // more robustly: α^n - ᾱ^n = F_n √5, i.e. 2·y(α^n) = F_n.
        let params = LucasParams::new(1, 1).unwrap();
        let alpha = QuadRat::alpha(&params);
        for n in 1..=15i64 {
            let an = alpha.pow(n);
            let fib = lucas_u(&params, n as u64);
            assert_eq!(
                an.y() * BigRational::from_integer(BigInt::from(2)),
                BigRational::from_integer(fib),
                "n = {n}"
            );
        }
    }

    #[test]
    fn norm_and_inverse() {
        let params = LucasParams::new(2, 1).unwrap(); // α = 1 + √2, norm -1
        let alpha = QuadRat::alpha(&params);
        assert_eq!(alpha.norm(), BigRational::from_integer(BigInt::from(-1)));
        let one = QuadRat::from_int(1, alpha.disc());
        assert_eq!(alpha.mul(&alpha.inv()), one);
        assert_eq!(alpha.pow(-3).mul(&alpha.pow(3)), one);
        // trace is a, norm is -b
        let p = LucasParams::new(4, -1).unwrap();
        let a4 = QuadRat::alpha(&p);
        assert_eq!(a4.trace(), BigRational::from_integer(BigInt::from(4)));
        assert_eq!(a4.norm(), BigRational::from_integer(BigInt::from(1)));
    }
}
