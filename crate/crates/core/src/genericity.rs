//! The integers `e`, `e'` attached to `(q, ell)` and the periodic sets
//! `A = {j : q^b + q^(aj) = 0 in F_ell}` and
//! `A0 = {j : zeta_e^b + zeta_e^(aj) = 0}`.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactalg::modular::{is_prime, multiplicative_order, pow_mod};
use crate::exactalg::{CyclotomicInt, ExactError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenericityError {
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(Hypothesis),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

/// The hypotheses under which `A = A0` is claimed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Hypothesis {
    /// `q ≢ 1 (mod ell)`, so that `e` is the order of `q`.
    QNotOne,
    /// `q^a ≢ 1 (mod ell)`.
    QPowerNotOne,
}

impl fmt::Display for Hypothesis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::QNotOne => f.write_str("q must not be 1 modulo ell"),
            Self::QPowerNotOne => f.write_str("q^a must not be 1 modulo ell"),
        }
    }
}

/// A subset of `Z` closed under translation by `modulus`, stored by its
/// residues. The modulus is always the least period; the empty set is
/// `(1, {})` and `Z` is `(1, {0})`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ResidueSet {
    modulus: u64,
    residues: BTreeSet<u64>,
}

impl ResidueSet {
    pub fn new(modulus: u64, residues: impl IntoIterator<Item = u64>) -> Result<Self, GenericityError> {
        if modulus == 0 {
            return Err(GenericityError::InvalidArgument("modulus must be positive".into()));
        }
        let residues: BTreeSet<u64> = residues.into_iter().map(|r| r % modulus).collect();
        Ok(Self::canonical(modulus, residues))
    }

    pub fn empty() -> Self {
        Self {
            modulus: 1,
            residues: BTreeSet::new(),
        }
    }

    fn canonical(modulus: u64, residues: BTreeSet<u64>) -> Self {
        if residues.is_empty() {
            return Self::empty();
        }
        for d in (1..=modulus).filter(|d| modulus % d == 0) {
            if residues.iter().all(|r| residues.contains(&((r + d) % modulus))) {
                return Self {
                    modulus: d,
                    residues: residues.into_iter().filter(|&r| r < d).collect(),
                };
            }
        }
        unreachable!("the modulus itself is a period")
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn residues(&self) -> &BTreeSet<u64> {
        &self.residues
    }

    pub fn is_empty(&self) -> bool {
        self.residues.is_empty()
    }

    pub fn contains(&self, j: i64) -> bool {
        self.residues.contains(&(j.rem_euclid(self.modulus as i64) as u64))
    }

    /// The same set written with modulus `m`, a multiple of the current one.
    pub fn residues_mod(&self, m: u64) -> Vec<u64> {
        assert_eq!(m % self.modulus, 0, "{m} is not a multiple of {}", self.modulus);
        (0..m).filter(|r| self.residues.contains(&(r % self.modulus))).collect()
    }

    /// Equality as subsets of `Z`, checked over a common modulus.
    pub fn same_subset(&self, other: &Self) -> bool {
        let m = self.modulus.lcm(&other.modulus);
        self.residues_mod(m) == other.residues_mod(m)
    }
}

impl fmt::Display for ResidueSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.residues.is_empty() {
            return f.write_str("{}");
        }
        let r: Vec<String> = self.residues.iter().map(u64::to_string).collect();
        write!(f, "{{j ≡ {} mod {}}}", r.join(", "), self.modulus)
    }
}

fn check_field(q: u64, ell: u64) -> Result<(), GenericityError> {
    if !is_prime(ell) {
        return Err(ExactError::NotPrime(ell).into());
    }
    if q % ell == 0 {
        return Err(ExactError::PrimeDividesQ { q, ell }.into());
    }
    Ok(())
}

/// Least `i >= 2` with `1 + x + ... + x^(i-1) ≡ 0 (mod ell)`, for `x` a unit.
fn least_vanishing_sum(x: u64, ell: u64) -> u64 {
    if x % ell == 1 {
        ell
    } else {
        multiplicative_order(x, ell)
    }
}

/// `e = min{i >= 2 : 1 + q + ... + q^(i-1) ≡ 0 (mod ell)}`.
pub fn compute_e(q: u64, ell: u64) -> Result<u64, GenericityError> {
    check_field(q, ell)?;
    Ok(least_vanishing_sum(q, ell))
}

/// `e' = min{j >= 2 : 1 + q^a + ... + q^(a(j-1)) ≡ 0 (mod ell)}`.
pub fn compute_e_prime(q: u64, a: u64, ell: u64) -> Result<u64, GenericityError> {
    check_field(q, ell)?;
    if a == 0 {
        return Err(GenericityError::InvalidArgument("a must be positive".into()));
    }
    let qa = pow_mod(q, a, ell);
    let e_prime = least_vanishing_sum(qa, ell);
    if qa != 1 {
        let e = least_vanishing_sum(q, ell);
        assert_eq!(e_prime, e / e.gcd(&a), "e' must be e/gcd(a, e) for q={q}, a={a}, ell={ell}");
    }
    Ok(e_prime)
}

/// `A`, with period the multiplicative order of `q^a`.
pub fn set_a(q: u64, a: u64, b: u64, ell: u64) -> Result<ResidueSet, GenericityError> {
    check_field(q, ell)?;
    let qa = pow_mod(q, a, ell);
    let period = multiplicative_order(qa, ell);
    let target = (ell - pow_mod(q, b, ell)) % ell;
    let sols = (0..period).filter(|&j| pow_mod(qa, j, ell) == target);
    ResidueSet::new(period, sols)
}

/// `A0`, decided by exact arithmetic in `Z[zeta_e]`.
pub fn set_a0(e: u64, a: u64, b: u64) -> Result<ResidueSet, GenericityError> {
    if e < 2 {
        return Err(GenericityError::InvalidArgument(format!("e must be at least 2, got {e}")));
    }
    let order = u32::try_from(e).map_err(|_| GenericityError::InvalidArgument(format!("e = {e} is too large")))?;
    let zb = CyclotomicInt::zeta_pow(order, b as i64);
    let sols = (0..e).filter(|&j| {
        let za = CyclotomicInt::zeta_pow(order, ((a * j) % e) as i64);
        (&za + &zb).is_zero()
    });
    ResidueSet::new(e, sols)
}

/// `A0` as the solutions of `aj ≡ b + e/2 (mod e)`, empty for odd `e`.
pub fn set_a0_by_congruence(e: u64, a: u64, b: u64) -> Result<ResidueSet, GenericityError> {
    if e < 2 {
        return Err(GenericityError::InvalidArgument(format!("e must be at least 2, got {e}")));
    }
    if e % 2 == 1 {
        return Ok(ResidueSet::empty());
    }
    let target = (b + e / 2) % e;
    ResidueSet::new(e, (0..e).filter(|&j| (a * j) % e == target))
}

/// `{e, ePrime, A, A0, equal}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct GenericityReport {
    pub e: u64,
    pub e_prime: u64,
    #[serde(rename = "A")]
    pub a_set: ResidueSet,
    #[serde(rename = "A0")]
    pub a0_set: ResidueSet,
    pub equal: bool,
}

/// Computes `A` and `A0` and compares them, refusing inputs outside the
/// hypotheses `q ≢ 1` and `q^a ≢ 1 (mod ell)`.
pub fn verify_a_equals_a0(q: u64, a: u64, b: u64, ell: u64) -> Result<GenericityReport, GenericityError> {
    check_field(q, ell)?;
    if q % ell == 1 {
        return Err(GenericityError::HypothesisViolated(Hypothesis::QNotOne));
    }
    if pow_mod(q, a, ell) == 1 {
        return Err(GenericityError::HypothesisViolated(Hypothesis::QPowerNotOne));
    }
    let e = compute_e(q, ell)?;
    let e_prime = compute_e_prime(q, a, ell)?;
    let a_set = set_a(q, a, b, ell)?;
    let a0_set = set_a0(e, a, b)?;
    let equal = a_set.same_subset(&a0_set);
    Ok(GenericityReport {
        e,
        e_prime,
        a_set,
        a0_set,
        equal,
    })
}

/// One failed case of [`sweep`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepFailure {
    pub q: u64,
    pub a: u64,
    pub b: u64,
    pub ell: u64,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub cases: usize,
    pub skipped: usize,
    pub failures: Vec<SweepFailure>,
}

/// Runs [`verify_a_equals_a0`] and the `e'`/`e` relation on every prime
/// `ell <= max_ell`, `2 <= q <= max_q`, `a` in `a_values`, `b <= max_b`.
/// Tuples outside the hypotheses are counted as skipped.
pub fn sweep(max_ell: u64, max_q: u64, a_values: &[u64], max_b: u64) -> SweepReport {
    let mut report = SweepReport {
        cases: 0,
        skipped: 0,
        failures: Vec::new(),
    };
    for ell in (2..=max_ell).filter(|&l| is_prime(l)) {
        for q in 2..=max_q {
            for &a in a_values {
                for b in 0..=max_b {
                    let fail = |reason: String| SweepFailure { q, a, b, ell, reason };
                    match verify_a_equals_a0(q, a, b, ell) {
                        Err(GenericityError::HypothesisViolated(_)) | Err(GenericityError::Exact(ExactError::PrimeDividesQ { .. })) => {
                            report.skipped += 1;
                        }
                        Err(e) => report.failures.push(fail(e.to_string())),
                        Ok(r) => {
                            report.cases += 1;
                            if !r.equal {
                                report.failures.push(fail(format!("A = {} but A0 = {}", r.a_set, r.a0_set)));
                            }
                            let expected = if a == 2 && r.e % 2 == 0 { r.e / 2 } else { r.e };
                            if a <= 2 && r.e_prime != expected {
                                report.failures.push(fail(format!("e = {}, e' = {}", r.e, r.e_prime)));
                            }
                            if set_a0_by_congruence(r.e, a, b).map(|c| c != r.a0_set).unwrap_or(true) {
                                report.failures.push(fail("congruence form of A0 disagrees".into()));
                            }
                        }
                    }
                }
            }
        }
    }
    report
}
