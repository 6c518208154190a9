//! Exact arithmetic in `Q[x]/Φ_n(x)`, the `n`-th cyclotomic field.
//!
//! Elements are coefficient vectors of length `φ(n)` over the rationals.
//! Since `Φ_n` is irreducible over `Q`, the quotient is a field and every
//! nonzero element is invertible via the extended Euclidean algorithm.

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::numtheory::{cyclotomic, euler_phi};

pub struct CycloField {
    n: u64,
    phi: usize,
    /// Monic `Φ_n`, low degree first, length `phi + 1`.
    modulus: Vec<BigRational>,
    /// `x^t` reduced, for `0 <= t < n`.
    powers: Vec<Vec<BigRational>>,
}

impl CycloField {
    pub fn new(n: u64) -> Self {
        assert!(n >= 1);
        let phi = euler_phi(n) as usize;
        let modulus: Vec<BigRational> = cyclotomic(n)
            .coeffs
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        debug_assert_eq!(modulus.len(), phi + 1);
        debug_assert!(modulus[phi].is_one());
        let mut powers = Vec::with_capacity(n as usize);
        let mut cur = vec![BigRational::zero(); phi];
        cur[0] = BigRational::one();
        powers.push(cur.clone());
        for _ in 1..n {
            // multiply by x: shift up, then reduce the overflow coefficient
            let top = cur[phi - 1].clone();
            for i in (1..phi).rev() {
                cur[i] = cur[i - 1].clone();
            }
            cur[0] = BigRational::zero();
            if !top.is_zero() {
                for (i, m) in modulus.iter().take(phi).enumerate() {
                    cur[i] -= &top * m;
                }
            }
            powers.push(cur.clone());
        }
        CycloField {
            n,
            phi,
            modulus,
            powers,
        }
    }

    pub fn order(&self) -> u64 {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.phi
    }

    pub fn zero(&self) -> Vec<BigRational> {
        vec![BigRational::zero(); self.phi]
    }

    pub fn one(&self) -> Vec<BigRational> {
        self.constant(&BigRational::one())
    }

    pub fn constant(&self, c: &BigRational) -> Vec<BigRational> {
        let mut e = self.zero();
        e[0] = c.clone();
        e
    }

    /// `x^t` for `0 <= t < n` (and `x^n = 1`, so any `t` reduced mod `n`).
    pub fn monomial(&self, t: u64) -> Vec<BigRational> {
        self.powers[(t % self.n) as usize].clone()
    }

    pub fn add(&self, a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    pub fn sub(&self, a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        a.iter().zip(b).map(|(x, y)| x - y).collect()
    }

    pub fn scale(&self, a: &[BigRational], c: &BigRational) -> Vec<BigRational> {
        a.iter().map(|x| x * c).collect()
    }

    pub fn mul(&self, a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        let phi = self.phi;
        let mut conv = vec![BigRational::zero(); 2 * phi - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    conv[i + j] += x * y;
                }
            }
        }
        for i in (phi..conv.len()).rev() {
            if conv[i].is_zero() {
                continue;
            }
            let c = std::mem::replace(&mut conv[i], BigRational::zero());
            for (j, m) in self.modulus.iter().take(phi).enumerate() {
                if !m.is_zero() {
                    conv[i - phi + j] -= &c * m;
                }
            }
        }
        conv.truncate(phi);
        conv
    }

    pub fn is_zero(&self, a: &[BigRational]) -> bool {
        a.iter().all(|c| c.is_zero())
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: &[BigRational]) -> Option<Vec<BigRational>> {
        if self.is_zero(a) {
            return None;
        }
        // extended gcd of a (as a polynomial) with Φ_n; the gcd is a
        // nonzero constant because Φ_n is irreducible and deg a < deg Φ_n
        let mut r0 = self.modulus.clone();
        let mut r1 = trim(a.to_vec());
        let mut s0 = vec![];
        let mut s1 = vec![BigRational::one()];
        while !r1.is_empty() {
            let (q, rem) = poly_divmod(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = r1;
            r1 = rem;
            s0 = s1;
            s1 = s2;
        }
        debug_assert_eq!(r0.len(), 1, "cyclotomic modulus must be irreducible");
        let g = r0[0].clone();
        let mut out = self.zero();
        for (i, c) in s0.iter().enumerate() {
            debug_assert!(i < self.phi);
            out[i] = c / &g;
        }
        Some(out)
    }

    pub fn pow(&self, a: &[BigRational], e: i64) -> Vec<BigRational> {
        if e < 0 {
            let inv = self.inv(a).expect("inverse of zero");
            return self.pow_ref(&inv, e.unsigned_abs());
        }
        self.pow_ref(a, e as u64)
    }

    pub fn pow_ref(&self, a: &[BigRational], mut e: u64) -> Vec<BigRational> {
        let mut acc = self.one();
        let mut sq = a.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &sq);
            }
            e >>= 1;
            if e > 0 {
                sq = self.mul(&sq, &sq);
            }
        }
        acc
    }
}

fn trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] -= c;
    }
    trim(out)
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

/// `(quotient, remainder)` of dense rational polynomial division.
fn poly_divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    assert!(!b.is_empty());
    let db = b.len() - 1;
    let lead = &b[db];
    let mut rem = a.to_vec();
    if rem.len() <= db {
        return (vec![], trim(rem));
    }
    let mut quo = vec![BigRational::zero(); rem.len() - db];
    for i in (db..rem.len()).rev() {
        if rem[i].is_zero() {
            continue;
        }
        let c = &rem[i] / lead;
        for (j, bc) in b.iter().enumerate() {
            let sub = &c * bc;
            rem[i - db + j] -= sub;
        }
        quo[i - db] = c;
    }
    (trim(quo), trim(rem))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomials_multiply_like_roots_of_unity() {
        for n in [5u64, 8, 12, 15] {
            let f = CycloField::new(n);
            for s in 0..n {
                for t in 0..n {
                    let prod = f.mul(&f.monomial(s), &f.monomial(t));
                    assert_eq!(prod, f.monomial((s + t) % n), "n={n} s={s} t={t}");
                }
            }
            assert_eq!(f.pow_ref(&f.monomial(1), n), f.one());
        }
    }

    #[test]
    fn inverses() {
        let f = CycloField::new(12);
        let e = f.add(&f.monomial(1), &f.constant(&BigRational::from_integer(3.into())));
        let inv = f.inv(&e).unwrap();
        assert_eq!(f.mul(&e, &inv), f.one());
        assert!(f.inv(&f.zero()).is_none());
        // x^-1 = x^{n-1}
        assert_eq!(f.inv(&f.monomial(1)).unwrap(), f.monomial(11));
        assert_eq!(f.pow(&f.monomial(5), -3), f.monomial(12 - 15 % 12));
    }

    #[test]
    fn gauss_sum_squares_to_five() {
        // in Q(ζ_5): (Σ (5/t) ζ^t)² = 5
        let f = CycloField::new(5);
        let mut g = f.zero();
        for t in 1..5u64 {
            let chi = super::super::kronecker(5, t as i64);
            let term = f.scale(&f.monomial(t), &BigRational::from_integer(chi.into()));
            g = f.add(&g, &term);
        }
        let g2 = f.mul(&g, &g);
        assert_eq!(g2, f.constant(&BigRational::from_integer(5.into())));
    }
}
