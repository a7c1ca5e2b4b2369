//! Exact arithmetic: Laurent polynomials in `u` over the rationals, the
//! cyclotomic integers `Z[zeta_e]`, and the two specializations
//! `u -> zeta_e` and `u -> q mod ell`.

mod cyclotomic;
mod laurent;
pub mod modular;

pub use cyclotomic::{cyclotomic_polynomial, specialize_cyclotomic, totient, CyclotomicInt};
pub use laurent::LaurentPoly;
pub use modular::specialize_mod_prime;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("zero polynomial has no valuation")]
    ZeroPolynomial,
    #[error("polynomial has non-integer coefficients")]
    NonIntegerCoefficients,
    #[error("the prime {ell} divides q = {q}")]
    PrimeDividesQ { q: u64, ell: u64 },
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("root of unity order must be positive")]
    InvalidOrder,
    #[error("parse error: {0}")]
    Parse(String),
}
