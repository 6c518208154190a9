//! Exact quadratic and cyclotomic-field arithmetic, multiplicative
//! dependence witnesses, and the norm identity for `α_1 - ζ`.
//!
//! Dependence candidates are detected numerically at high precision and
//! then certified exactly in `Q[x]/Φ_N(x)` for a cyclotomic order `N`
//! large enough to contain both the relevant root of unity and `√Δ`
//! (embedded through a quadratic Gauss sum). A reported witness is
//! therefore an exact algebraic identity, never a numerical coincidence.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::lucas::LucasParams;
use crate::numtheory::{self, euler_phi};
use crate::real::RatInterval;

mod complexfp;
mod cyclofield;
mod quadrat;

pub use complexfp::Complex;
pub use cyclofield::CycloField;
pub use quadrat::QuadRat;

// ---------------------------------------------------------------------------
// Kronecker symbol and fundamental discriminants

/// Kronecker symbol `(d / n)`.
pub fn kronecker(d: i64, n: i64) -> i64 {
    if n == 0 {
        return if d == 1 || d == -1 { 1 } else { 0 };
    }
    let mut n = n;
    let mut result = 1i64;
    if n < 0 {
        n = -n;
        if d < 0 {
            result = -result;
        }
    }
    // factor out 2s of n
    let mut twos = 0;
    while n % 2 == 0 {
        n /= 2;
        twos += 1;
    }
    if twos > 0 {
        if d % 2 == 0 {
            return 0;
        }
        // (d/2) = 1 if d ≡ ±1 (mod 8), -1 if d ≡ ±3 (mod 8)
        let dm8 = d.rem_euclid(8);
        let two_symbol = if dm8 == 1 || dm8 == 7 { 1 } else { -1 };
        if twos % 2 == 1 {
            result *= two_symbol;
        }
    }
    // now n odd positive: Jacobi symbol with reciprocity
    let mut a = d.rem_euclid(n);
    while a != 0 {
        let mut t = 0;
        while a % 2 == 0 {
            a /= 2;
            t += 1;
        }
        if t % 2 == 1 {
            let nm8 = n.rem_euclid(8);
            if nm8 == 3 || nm8 == 5 {
                result = -result;
            }
        }
        if a.rem_euclid(4) == 3 && n.rem_euclid(4) == 3 {
            result = -result;
        }
        std::mem::swap(&mut a, &mut n);
        a %= n;
    }
    if n == 1 {
        result
    } else {
        0
    }
}

/// Splits a positive nonsquare `Δ ≡ 0, 1 (mod 4)` as `Δ = f² d₀` with `d₀`
/// a fundamental discriminant; returns `(f, d₀)`.
pub fn fundamental_disc(delta: i64) -> (i64, i64) {
    assert!(delta > 0, "discriminant must be positive");
    // squarefree part
    let mut square_free = 1i64;
    let mut f = 1i64;
    for (p, e) in numtheory::factorize(delta as u64) {
        let p = p as i64;
        if e % 2 == 1 {
            square_free *= p;
        }
        f *= p.pow(e / 2);
    }
    assert!(square_free > 1, "discriminant must be nonsquare");
    if square_free.rem_euclid(4) == 1 {
        (f, square_free)
    } else {
        assert!(f % 2 == 0, "delta = f^2 d with d !≡ 1 (4) forces 2 | f");
        (f / 2, 4 * square_free)
    }
}

/// True iff `d` is a fundamental discriminant of a real quadratic field.
pub fn is_fundamental_disc(d: i64) -> bool {
    if d <= 1 {
        return false;
    }
    let squarefree = |x: i64| numtheory::factorize(x as u64).iter().all(|&(_, e)| e == 1);
    if d.rem_euclid(4) == 1 {
        squarefree(d)
    } else if d % 4 == 0 {
        let q = d / 4;
        let qm = q.rem_euclid(4);
        (qm == 2 || qm == 3) && squarefree(q)
    } else {
        false
    }
}

/// Containment of the real quadratic field of fundamental discriminant
/// `d` in the `v`-th cyclotomic field: holds iff `d | v` (conductor rule).
pub fn quad_in_cyclotomic(disc_fundamental: i64, v: u64) -> Result<bool> {
    if !is_fundamental_disc(disc_fundamental) {
        return Err(Error::RejectedInput(format!(
            "{disc_fundamental} is not a fundamental discriminant of a real quadratic field"
        )));
    }
    Ok(v % disc_fundamental as u64 == 0)
}

// ---------------------------------------------------------------------------
// v* and the torsion twist

/// The order of `δ ζ̄` for `ζ` of order `v` and `δ = ±1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VStarMap {
    pub v: u64,
    pub delta: i64,
    pub v_star: u64,
}

/// `v* = v` if `4 | v` or `δ = 1`; `v/2` if `2‖v` and `δ = -1`; `2v` if
/// `v` odd and `δ = -1`.
pub fn v_star(v: u64, delta: i64) -> u64 {
    assert!(v >= 1);
    assert!(delta == 1 || delta == -1);
    if v % 4 == 0 || delta == 1 {
        v
    } else if v % 2 == 0 {
        v / 2
    } else {
        2 * v
    }
}

pub fn v_star_map(v: u64, delta: i64) -> VStarMap {
    let vs = v_star(v, delta);
    debug_assert_eq!(euler_phi(vs), euler_phi(v));
    VStarMap {
        v,
        delta,
        v_star: vs,
    }
}

// ---------------------------------------------------------------------------
// The compositum context for one (params, v, j) instance

/// Exact-arithmetic context for the compositum `Q(ζ_v, √Δ)`, realised
/// inside `Q(ζ_N)` with `N = lcm(v, d₀)`.
pub struct Compositum {
    pub field: CycloField,
    /// Embedding residue: the numerical embedding is `x ↦ exp(2πi r/N)`.
    pub r: u64,
    pub n: u64,
    pub v: u64,
    /// `ζ`, the chosen primitive `v`-th root.
    pub zeta: Vec<BigRational>,
    /// `α = (|a| + √Δ)/2`.
    pub alpha: Vec<BigRational>,
    /// `α^{-1}`.
    pub alpha_inv: Vec<BigRational>,
}

impl Compositum {
    pub fn new(params: &LucasParams, v: u64, j: u64) -> Result<Self> {
        if v == 0 || j.gcd(&v) != 1 {
            return Err(Error::RejectedInput(format!(
                "j = {j} must be coprime to v = {v}"
            )));
        }
        let delta = params.disc();
        let (f, d0) = fundamental_disc(delta);
        let n = (v as i64).lcm(&d0) as u64;
        // smallest r ≡ j (mod v) coprime to N
        let mut r = j % v;
        if r == 0 {
            r = v; // only when v = 1
        }
        while r.gcd(&n) != 1 {
            r += v;
        }
        let field = CycloField::new(n);
        // Under x ↦ exp(2πi r/N), x^{N/v} ↦ exp(2πi r/v) = exp(2πi j/v)
        // since r ≡ j (mod v); so this monomial is the requested ζ.
        let zeta = field.monomial(n / v);
        // Gauss sum for √d₀: g = Σ_{t coprime to d₀} (d₀/t) x^{(N/d₀) t},
        // which embeds to (d₀/r) √d₀.
        let mut gauss = field.zero();
        let d0u = d0 as u64;
        for t in 1..d0u {
            if t.gcd(&d0u) != 1 {
                continue;
            }
            let chi = kronecker(d0, t as i64);
            if chi == 0 {
                continue;
            }
            let mono = field.monomial(((n / d0u) as u128 * t as u128 % n as u128) as u64);
            let term = field.scale(&mono, &BigRational::from_integer(BigInt::from(chi)));
            gauss = field.add(&gauss, &term);
        }
        let chi_r = kronecker(d0, r as i64);
        debug_assert!(chi_r != 0);
        // √Δ = f √d₀ = f (d₀/r) · g under the chosen embedding
        let sqrt_delta = field.scale(
            &gauss,
            &BigRational::from_integer(BigInt::from(f * chi_r)),
        );
        let abs_a = BigRational::from_integer(BigInt::from(params.a().abs()));
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let alpha = field.scale(
            &field.add(&field.constant(&abs_a), &sqrt_delta),
            &half,
        );
        // α^{-1} = -b ᾱ = -b (|a| - √Δ)/2
        let minus_b = BigRational::from_integer(BigInt::from(-params.b()));
        let alpha_bar = field.scale(
            &field.sub(&field.constant(&abs_a), &sqrt_delta),
            &half,
        );
        let alpha_inv = field.scale(&alpha_bar, &minus_b);
        // sanity: α · α^{-1} = 1
        debug_assert_eq!(field.mul(&alpha, &alpha_inv), field.one());
        Ok(Compositum {
            field,
            r,
            n,
            v,
            zeta,
            alpha,
            alpha_inv,
        })
    }

    /// Torsion bound of `Q(ζ_N)`: every root of unity has order dividing
    /// `lcm(2, N)`.
    pub fn torsion_bound(&self) -> u64 {
        self.n.lcm(&2)
    }

    /// `ξ = (α^k - δ ζ̄)/(α^k - ζ)` as an exact field element.
    pub fn xi_exact(&self, k: u64, delta: i64) -> Result<Vec<BigRational>> {
        let f = &self.field;
        let alpha1 = f.pow(&self.alpha, k as i64);
        let zeta_bar = f.pow(&self.zeta, -1);
        let num = f.sub(
            &alpha1,
            &f.scale(&zeta_bar, &BigRational::from_integer(BigInt::from(delta))),
        );
        let den = f.sub(&alpha1, &self.zeta);
        let den_inv = f.inv(&den).ok_or_else(|| {
            Error::RejectedInput("alpha^k - zeta is zero (cannot happen for alpha > 1)".into())
        })?;
        Ok(f.mul(&num, &den_inv))
    }

    /// Exact multiplicative order of `e` as a root of unity, or `None` if
    /// `e` is not a root of unity in the field.
    pub fn root_of_unity_order(&self, e: &[BigRational]) -> Option<u64> {
        let t = self.torsion_bound();
        for d in numtheory::divisors(t) {
            if self.field.pow_ref(e, d) == self.field.one() {
                return Some(d);
            }
        }
        None
    }

    /// Numerical value of a field element under `x ↦ exp(2πi r/N)`.
    pub fn embed(&self, e: &[BigRational], prec: u32) -> Complex {
        let mut acc = Complex::zero(prec);
        let root = Complex::root_of_unity(self.n, self.r, prec);
        // Horner in the embedded root
        for c in e.iter().rev() {
            acc = acc.mul(&root).add(&Complex::from_rational(c, prec));
        }
        acc
    }
}

mod dependence;
mod normid;

pub use dependence::{
    check_exceptional_catalogue, find_dependence, CatalogueEntry, CatalogueReport,
    DependenceWitness,
};
pub use normid::{check_norm_identity, unit_difference_check, xi_value};

// ---------------------------------------------------------------------------

/// Exact `α₁ = α^k` as a quadratic element over `Q(√Δ)`.
pub fn alpha_power(params: &LucasParams, k: u64) -> QuadRat {
    QuadRat::alpha(params).pow(k as i64)
}

/// Interval enclosure of a quadratic element.
pub fn quadrat_interval(q: &QuadRat, precision_bits: u32) -> RatInterval {
    let sqrt = RatInterval::sqrt_of_rational(
        &BigRational::from_integer(BigInt::from(q.disc())),
        precision_bits,
    );
    RatInterval::point(q.x().clone()).add(&sqrt.scale(q.y()))
}
