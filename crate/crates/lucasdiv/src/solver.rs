//! Minimal-exponent search for `U_m | U_{n+k}^s - U_n^s` and the
//! exhaustive grid scan against the `m < 20000 (sk)^2` bound.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lucas::{self, LucasParams};

/// One row of a theorem scan.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivRecord {
    pub a: i64,
    pub b: i64,
    pub k: u64,
    pub m: u64,
    /// Least exponent for which the divisibility holds, `None` when no
    /// exponent exists (certified, e.g. by parity).
    pub s_min: Option<u64>,
    pub n_witness: Option<u64>,
    /// True when `s_min ∈ {1, 2, 4}`.
    pub structural: bool,
    /// `structural || m < 20000 (s_min k)^2`; vacuously true when no
    /// exponent exists.
    pub bound_ok: bool,
}

/// Quantification mode over `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum NMode {
    /// `s` minimal at one fixed `n`.
    PerN,
    /// `s` minimal over `n ∈ [1, 4m]` (the period cap).
    MinOverN,
}

/// Grid scan configuration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanConfig {
    pub a_min: i64,
    pub a_max: i64,
    pub b_values: Vec<i64>,
    pub k_max: u64,
    pub m_max: u64,
    /// Cap on the exponent search; `None` means the default `4m` per `m`.
    pub s_cap: Option<u64>,
    pub n_mode: NMode,
}

impl ScanConfig {
    pub fn validate(&self) -> Result<()> {
        if let Some(cap) = self.s_cap {
            if cap < 4 {
                return Err(Error::RejectedInput("s_cap must be >= 4".into()));
            }
        }
        for &b in &self.b_values {
            if b != 1 && b != -1 {
                return Err(Error::RejectedInput("b values must be ±1".into()));
            }
        }
        Ok(())
    }

    fn s_cap_for(&self, m: u64) -> u64 {
        self.s_cap.unwrap_or(4 * m)
    }

    /// The grid in deterministic `(a, b, k, m)` order, inadmissible pairs
    /// skipped.
    pub fn grid(&self) -> Vec<(LucasParams, u64, u64)> {
        let mut bs = self.b_values.clone();
        bs.sort_unstable();
        bs.dedup();
        let mut out = Vec::new();
        for a in self.a_min..=self.a_max {
            for &b in &bs {
                let Ok(params) = LucasParams::new(a, b) else {
                    continue;
                };
                for k in 1..=self.k_max {
                    for m in 2..=self.m_max {
                        out.push((params, k, m));
                    }
                }
            }
        }
        out
    }
}

/// Outcome of a minimal-exponent search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MinS {
    Found { s: u64, n: u64 },
    /// No exponent can ever work; certified by the rank-two obstruction.
    NoneCertified,
    /// Search exhausted the cap without an answer.
    CapExhausted,
}

/// Rank-two obstruction certifying that no exponent exists.
///
/// Any prime `p | a` has rank of appearance 2 (`U_2 = a`), so `p | U_t`
/// exactly when `t` is even; modulo `p` the recurrence degenerates to
/// `U_{t+2} ≡ b U_t`, making every odd-index term a unit. For odd `k` the
/// indices `n` and `n+k` have opposite parity, so exactly one of `U_n`,
/// `U_{n+k}` is divisible by `p` and the difference of `s`-th powers is a
/// unit mod `p` for every `n, s` — while `p | U_m` whenever `m` is even.
fn rank_two_obstruction(params: &LucasParams, k: u64, m: u64) -> bool {
    params.a().abs() >= 2 && k % 2 == 1 && m % 2 == 0
}

/// Least `s ∈ [1, s_cap]` with `U_m | U_{n+k}^s - U_n^s` at a fixed `n`,
/// using running powers of the residues modulo `U_m`.
pub fn min_s_at_n(
    params: &LucasParams,
    k: u64,
    m: u64,
    n: u64,
    s_cap: u64,
) -> Result<Option<u64>> {
    if m < 2 {
        return Err(Error::RejectedInput("m must be >= 2".into()));
    }
    if n < 1 {
        return Err(Error::RejectedInput("n must be >= 1".into()));
    }
    let modulus = lucas::lucas_u(params, m).abs();
    if modulus <= BigInt::one() {
        // unit modulus: everything divides
        return Ok(Some(1));
    }
    let t = lucas::lucas_u_mod(params, n + k, &modulus)?;
    let w = lucas::lucas_u_mod(params, n, &modulus)?;
    let mut tp = t.clone();
    let mut wp = w.clone();
    for s in 1..=s_cap {
        if tp == wp {
            return Ok(Some(s));
        }
        tp = (tp * &t).mod_floor(&modulus);
        wp = (wp * &w).mod_floor(&modulus);
    }
    Ok(None)
}

/// Minimal `s` over `n ∈ [1, 4m]`, returning the least `n` achieving it.
///
/// Iterates `s` upward, holding the running powers of every residue pair,
/// so the first hit is simultaneously minimal in `s` and (within that `s`)
/// minimal in `n`.
pub fn min_s_over_n(params: &LucasParams, k: u64, m: u64, s_cap: u64) -> Result<MinS> {
    if m < 2 {
        return Err(Error::RejectedInput("m must be >= 2".into()));
    }
    if rank_two_obstruction(params, k, m) {
        return Ok(MinS::NoneCertified);
    }
    let modulus = lucas::lucas_u(params, m).abs();
    if modulus <= BigInt::one() {
        return Ok(MinS::Found { s: 1, n: 1 });
    }
    let n_max = 4 * m;
    // residues U_0 .. U_{n_max + k} mod U_m by the plain recurrence
    let len = (n_max + k + 1) as usize;
    let mut u = Vec::with_capacity(len);
    u.push(BigInt::zero());
    u.push(BigInt::one().mod_floor(&modulus));
    let a = BigInt::from(params.a());
    let b = params.b();
    for i in 2..len {
        let next = (&a * &u[i - 1]
            + if b == 1 {
                u[i - 2].clone()
            } else {
                -u[i - 2].clone()
            })
        .mod_floor(&modulus);
        u.push(next);
    }
    let base_t: Vec<BigInt> = (1..=n_max).map(|n| u[(n + k) as usize].clone()).collect();
    let base_w: Vec<BigInt> = (1..=n_max).map(|n| u[n as usize].clone()).collect();
    // an `n` with |U_{n+k}| = |U_n| makes the difference identically zero
    // for matching power signs; since |U_i| is strictly increasing from
    // i = 2 (and from i = 1 when |a| >= 2), the only collision is
    // |U_1| = |U_2| = 1 for |a| = 1, b = 1. Such vacuous witnesses are
    // skipped by the minimizer.
    let skip_n1 = k == 1 && params.a().abs() == 1 && params.b() == 1;
    let mut pow_t = base_t.clone();
    let mut pow_w = base_w.clone();
    for s in 1..=s_cap {
        for i in 0..pow_t.len() {
            if pow_t[i] == pow_w[i] && !(skip_n1 && i == 0) {
                return Ok(MinS::Found { s, n: i as u64 + 1 });
            }
        }
        if s < s_cap {
            for i in 0..pow_t.len() {
                pow_t[i] = (&pow_t[i] * &base_t[i]).mod_floor(&modulus);
                pow_w[i] = (&pow_w[i] * &base_w[i]).mod_floor(&modulus);
            }
        }
    }
    Ok(MinS::CapExhausted)
}

/// The structural exponent forced by the closed-form identities, when `m`
/// has the matching parity form.
///
/// Even `k`: `m = n + k/2` with `n >= 1` gives `s = 1` (`b = 1`,
/// `k ≡ 2 mod 4`) or `s = 2` (`b = 1`, `4 | k`; or `b = -1`). Odd `k` with
/// `b = 1`: `m = 2n + k` with `n >= 1` gives `s = 4`.
pub fn structural_s(params: &LucasParams, k: u64, m: u64) -> Option<(u64, u64)> {
    if k % 2 == 0 {
        let half = k / 2;
        if m <= half {
            return None;
        }
        let n = m - half;
        let s = if params.b() == 1 && k % 4 == 2 { 1 } else { 2 };
        Some((s, n))
    } else if params.b() == 1 && m > k && (m - k) % 2 == 0 {
        Some((4, (m - k) / 2))
    } else {
        None
    }
}

/// The earlier Fibonacci-case bound `m < 500 s^2`; report column only.
pub fn verify_klt_bound(m: u64, s: u64) -> Result<bool> {
    if s == 1 || s == 2 || s == 4 {
        return Err(Error::RejectedInput(
            "the m < 500 s^2 bound excludes s in {1, 2, 4}".into(),
        ));
    }
    Ok((m as u128) < 500 * (s as u128) * (s as u128))
}

fn bound_holds(m: u64, s: u64, k: u64) -> bool {
    (m as u128) < 20000 * ((s * k) as u128) * ((s * k) as u128)
}

/// Computes the scan record for a single grid point.
pub fn scan_point(config: &ScanConfig, params: &LucasParams, k: u64, m: u64) -> Result<DivRecord> {
    let s_cap = config.s_cap_for(m);
    // Grid scans always minimize over n; PerN is an exploration mode of the
    // single-point CLI command.
    let found = min_s_over_n(params, k, m, s_cap)?;
    let (s_min, n_witness) = match found {
        MinS::Found { s, n } => (Some(s), Some(n)),
        MinS::NoneCertified => (None, None),
        MinS::CapExhausted => {
            return Err(Error::CapExceeded(format!(
                "s search hit cap {s_cap} at (a={}, b={}, k={k}, m={m})",
                params.a(),
                params.b()
            )));
        }
    };
    let structural = matches!(s_min, Some(1) | Some(2) | Some(4));
    let bound_ok = match s_min {
        Some(s) => structural || bound_holds(m, s, k),
        None => true,
    };
    Ok(DivRecord {
        a: params.a(),
        b: params.b(),
        k,
        m,
        s_min,
        n_witness,
        structural,
        bound_ok,
    })
}

/// Runs the scan over the full grid, invoking `sink` once per record in
/// deterministic `(a, b, k, m)` order. Parallel internally; ordering is
/// restored before emission. Aborts with `BoundViolation` on any record
/// with `bound_ok = false`.
pub fn verify_theorem<F>(config: &ScanConfig, mut sink: F) -> Result<u64>
where
    F: FnMut(&DivRecord) -> Result<()>,
{
    verify_theorem_from(config, None, &mut sink)
}

/// As [`verify_theorem`], but skipping every grid point up to and including
/// `resume_after` (used by checkpoint resume).
pub fn verify_theorem_from<F>(
    config: &ScanConfig,
    resume_after: Option<(i64, i64, u64, u64)>,
    sink: &mut F,
) -> Result<u64>
where
    F: FnMut(&DivRecord) -> Result<()>,
{
    use rayon::prelude::*;
    config.validate()?;
    let grid = config.grid();
    let start = match resume_after {
        None => 0,
        Some(coord) => {
            match grid
                .iter()
                .position(|(p, k, m)| (p.a(), p.b(), *k, *m) == coord)
            {
                Some(idx) => idx + 1,
                None => {
                    return Err(Error::CheckpointMismatch(format!(
                        "coordinate {coord:?} not on the grid"
                    )))
                }
            }
        }
    };
    let mut emitted = 0u64;
    for chunk in grid[start..].chunks(1024) {
        let records: Vec<Result<DivRecord>> = chunk
            .par_iter()
            .map(|(params, k, m)| scan_point(config, params, *k, *m))
            .collect();
        for rec in records {
            let rec = rec?;
            if !rec.bound_ok {
                return Err(Error::BoundViolation {
                    a: rec.a,
                    b: rec.b,
                    k: rec.k,
                    m: rec.m,
                });
            }
            sink(&rec)?;
            emitted += 1;
        }
    }
    Ok(emitted)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(a: i64, b: i64) -> LucasParams {
        LucasParams::new(a, b).unwrap()
    }

    #[test]
    fn min_s_examples() {
        let fib = p(1, 1);
        // m=7 (U_7=13), n=3: s=4
        assert_eq!(min_s_at_n(&fib, 1, 7, 3, 64).unwrap(), Some(4));
        // n=8: F_9 - F_8 = F_7
        assert_eq!(min_s_at_n(&fib, 1, 7, 8, 64).unwrap(), Some(1));
        assert!(min_s_at_n(&fib, 1, 1, 1, 4).is_err());
    }

    #[test]
    fn min_s_over_n_examples() {
        let fib = p(1, 1);
        match min_s_over_n(&fib, 1, 7, 64).unwrap() {
            MinS::Found { s, n } => {
                assert_eq!(s, 1);
                assert_eq!(n, 8);
            }
            other => panic!("unexpected {other:?}"),
        }
        // unit modulus
        match min_s_over_n(&fib, 1, 2, 64).unwrap() {
            MinS::Found { s, n } => {
                assert_eq!((s, n), (1, 1));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rank_two_none_cases() {
        // (4,-1), k=1, even m: difference is always odd, U_m even
        let c = p(4, -1);
        assert_eq!(min_s_over_n(&c, 1, 4, 64).unwrap(), MinS::NoneCertified);
        // odd prime divisor of a: 3 | U_2 = 3 for (3,-1), k odd, m even
        assert_eq!(min_s_over_n(&p(3, -1), 1, 2, 64).unwrap(), MinS::NoneCertified);
        // odd m must still resolve
        match min_s_over_n(&c, 1, 5, 200).unwrap() {
            MinS::Found { .. } => {}
            other => panic!("unexpected {other:?}"),
        }
        // |a| = 1 is exempt (no prime divides a)
        match min_s_over_n(&p(1, 1), 1, 4, 64).unwrap() {
            MinS::Found { .. } => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn structural_examples() {
        let fib = p(1, 1);
        assert_eq!(structural_s(&fib, 2, 10), Some((1, 9)));
        assert_eq!(structural_s(&fib, 1, 9), Some((4, 4)));
        assert_eq!(structural_s(&fib, 1, 2), None);
        // b=-1, even k: s=2 form
        assert_eq!(structural_s(&p(3, -1), 2, 5), Some((2, 4)));
        // b=-1, odd k: no structural form
        assert_eq!(structural_s(&p(3, -1), 1, 5), None);
    }

    #[test]
    fn structural_confirmed_by_search() {
        for &(a, b) in &[(1i64, 1i64), (2, 1), (3, -1), (4, -1)] {
            let params = p(a, b);
            for k in 1..=3u64 {
                for m in 2..=30u64 {
                    if let Some((s, n)) = structural_s(&params, k, m) {
                        let found = min_s_at_n(&params, k, m, n, 4 * m).unwrap();
                        assert!(
                            found.map(|f| f <= s).unwrap_or(false),
                            "({a},{b}) k={k} m={m}: structural {s} at n={n}, search {found:?}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn klt_bound() {
        assert!(verify_klt_bound(100, 3).unwrap());
        assert!(!verify_klt_bound(4500, 3).unwrap());
        assert!(verify_klt_bound(499, 1).is_err());
    }

    #[test]
    fn small_scan_no_violations() {
        let config = ScanConfig {
            a_min: 1,
            a_max: 1,
            b_values: vec![1],
            k_max: 1,
            m_max: 100,
            s_cap: Some(64),
            n_mode: NMode::MinOverN,
        };
        let mut rows = Vec::new();
        let n = verify_theorem(&config, |r| {
            rows.push(r.clone());
            Ok(())
        })
        .unwrap();
        assert_eq!(n, 99);
        assert!(rows.iter().all(|r| r.bound_ok));
    }

    #[test]
    fn empty_scan() {
        let config = ScanConfig {
            a_min: 1,
            a_max: 1,
            b_values: vec![1],
            k_max: 1,
            m_max: 1,
            s_cap: Some(4),
            n_mode: NMode::MinOverN,
        };
        let n = verify_theorem(&config, |_| Ok(())).unwrap();
        assert_eq!(n, 0);
    }

    #[test]
    fn periodicity_consistency() {
        let fib = p(1, 1);
        for m in [3u64, 5, 8] {
            for n in [1u64, 2, 7] {
                let s1 = min_s_at_n(&fib, 1, m, n, 64).unwrap();
                let s2 = min_s_at_n(&fib, 1, m, n + 4 * m, 64).unwrap();
                assert_eq!(s1, s2, "m={m} n={n}");
            }
        }
    }
}
