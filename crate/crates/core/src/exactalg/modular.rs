//! Word-size modular arithmetic over small primes.

use super::{ExactError, LaurentPoly};
use num_bigint::BigInt;
use num_traits::ToPrimitive;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let m128 = m as u128;
    let mut b = (base % m) as u128;
    let mut acc = 1u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m128;
        }
        b = b * b % m128;
        exp >>= 1;
    }
    acc as u64
}

/// Multiplicative order of `q` modulo the prime `ell`; `q` must be a unit.
pub fn multiplicative_order(q: u64, ell: u64) -> u64 {
    let q = q % ell;
    debug_assert!(q != 0);
    let mut x = q;
    let mut k = 1;
    while x != 1 {
        x = (x as u128 * q as u128 % ell as u128) as u64;
        k += 1;
    }
    k
}

/// Inverse of `q` modulo the prime `ell`.
pub fn inverse_mod_prime(q: u64, ell: u64) -> u64 {
    pow_mod(q, ell - 2, ell)
}

fn reduce_bigint(c: &BigInt, ell: u64) -> u64 {
    let m = BigInt::from(ell);
    let r = ((c % &m) + &m) % &m;
    r.to_u64().expect("residue fits in u64")
}

/// Image of `p` under `u -> q` in `F_ell`.
pub fn specialize_mod_prime(p: &LaurentPoly, q: u64, ell: u64) -> Result<u64, ExactError> {
    if !is_prime(ell) {
        return Err(ExactError::NotPrime(ell));
    }
    if q % ell == 0 {
        return Err(ExactError::PrimeDividesQ { q, ell });
    }
    let q_inv = inverse_mod_prime(q % ell, ell);
    let mut acc = 0u64;
    for (k, c) in p.integer_terms()? {
        let base = if k >= 0 { pow_mod(q, k as u64, ell) } else { pow_mod(q_inv, k.unsigned_abs(), ell) };
        let term = (reduce_bigint(&c, ell) as u128 * base as u128 % ell as u128) as u64;
        acc = (acc + term) % ell;
    }
    Ok(acc)
}
