//! Lucas sequence arithmetic and desk-scale verification of a divisibility
//! bound for `U_m | U_{n+k}^s - U_n^s`.
//!
//! The crate is organised around six areas:
//!
//! * [`lucas`] — exact and modular evaluation of the pair `(U_n, V_n)` and
//!   the closed-form identities relating them;
//! * [`numtheory`] — cyclotomic polynomials, arithmetic functions, resultants
//!   and the short-vector lemma;
//! * [`valuation`] — rank of appearance, the `ν_p(U_m)` case table and
//!   S-parts;
//! * [`solver`] — minimal-exponent search for the divisibility relation and
//!   the exhaustive grid scan against the `m < 20000 (sk)^2` bound;
//! * [`algebraic`] — exact quadratic and cyclotomic-field arithmetic,
//!   multiplicative-dependence witnesses and norm identities;
//! * [`report`] — scan configuration, CSV/JSON rows and checkpointing for
//!   the CLI.

pub mod algebraic;
pub mod error;
pub mod lucas;
pub mod numtheory;
pub mod real;
pub mod report;
pub mod solver;
pub mod valuation;

pub use error::Error;
pub use lucas::{LucasPair, LucasParams};

/// Default working precision in bits for real and complex arithmetic.
///
/// Overridable through the `LUCASDIV_PRECISION` environment variable.
pub const DEFAULT_PRECISION: u32 = 128;

/// Working precision in bits, honouring `LUCASDIV_PRECISION` when set.
pub fn default_precision() -> u32 {
    std::env::var("LUCASDIV_PRECISION")
        .ok()
        .and_then(|s| s.parse().ok())
        .filter(|&p| p >= 16)
        .unwrap_or(DEFAULT_PRECISION)
}
