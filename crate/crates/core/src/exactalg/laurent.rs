use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::ExactError;

/// A Laurent polynomial in `u` with exact rational coefficients.
///
/// Zero coefficients are never stored, so two polynomials are equal exactly
/// when their term maps are equal.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigRational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(BigRational::one(), 0)
    }

    /// The indeterminate `u`.
    pub fn u() -> Self {
        Self::u_pow(1)
    }

    /// `u^k` for any integer `k`.
    pub fn u_pow(k: i64) -> Self {
        Self::monomial(BigRational::one(), k)
    }

    pub fn monomial(coeff: BigRational, exp: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exp, coeff);
        }
        Self { terms }
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(BigRational::from_integer(BigInt::from(c)), 0)
    }

    /// Builds a polynomial from `(coefficient, exponent)` pairs; repeated
    /// exponents are summed.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, i64)>,
    {
        let mut p = Self::zero();
        for (c, k) in terms {
            p.add_term(k, BigRational::from_integer(BigInt::from(c)));
        }
        p
    }

    /// Integer coefficients in ascending exponent order starting at `u^0`.
    pub fn from_coeffs(coeffs: &[i64]) -> Self {
        Self::from_terms(coeffs.iter().enumerate().map(|(k, &c)| (c, k as i64)))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigRational)> {
        self.terms.iter().map(|(&k, c)| (k, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exp: i64) -> BigRational {
        self.terms.get(&exp).cloned().unwrap_or_else(BigRational::zero)
    }

    fn add_term(&mut self, exp: i64, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(exp).or_insert_with(BigRational::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&exp);
        }
    }

    /// Smallest exponent carrying a nonzero coefficient.
    pub fn u_valuation(&self) -> Result<i64, ExactError> {
        self.terms
            .keys()
            .next()
            .copied()
            .ok_or(ExactError::ZeroPolynomial)
    }

    /// Coefficient at [`Self::u_valuation`].
    pub fn leading_coefficient_at_valuation(&self) -> Result<&BigRational, ExactError> {
        self.terms
            .values()
            .next()
            .ok_or(ExactError::ZeroPolynomial)
    }

    pub fn degree(&self) -> Result<i64, ExactError> {
        self.terms
            .keys()
            .next_back()
            .copied()
            .ok_or(ExactError::ZeroPolynomial)
    }

    pub fn has_integer_coefficients(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// Integer coefficients as `(exponent, coefficient)` pairs.
    pub fn integer_terms(&self) -> Result<Vec<(i64, BigInt)>, ExactError> {
        self.terms
            .iter()
            .map(|(&k, c)| {
                if c.is_integer() {
                    Ok((k, c.to_integer()))
                } else {
                    Err(ExactError::NonIntegerCoefficients)
                }
            })
            .collect()
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(&k, v)| (k, v * c)).collect(),
        }
    }

    /// Multiplies by `u^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(&e, v)| (e + k, v.clone())).collect(),
        }
    }

    /// Exact value at a rational point; `None` when `u = 0` meets a
    /// negative exponent.
    pub fn evaluate(&self, at: &BigRational) -> Option<BigRational> {
        if at.is_zero() && self.terms.keys().any(|&k| k < 0) {
            return None;
        }
        let mut acc = BigRational::zero();
        for (&k, c) in &self.terms {
            let pow = if k >= 0 {
                num_traits::pow(at.clone(), k as usize)
            } else {
                num_traits::pow(at.recip(), (-k) as usize)
            };
            acc += c * pow;
        }
        Some(acc)
    }

    /// Exact division by a polynomial, if the quotient is again a Laurent
    /// polynomial.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let dv = divisor.u_valuation().ok()?;
        let ddeg = divisor.degree().ok()?;
        let lead = divisor.coeff(ddeg);
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while !rem.is_zero() {
            let rdeg = rem.degree().ok()?;
            let rval = rem.u_valuation().ok()?;
            if rdeg - rval < ddeg - dv {
                return None;
            }
            let k = rdeg - ddeg;
            let c = rem.coeff(rdeg) / &lead;
            let step = Self::monomial(c, k);
            rem = &rem - &(&step * divisor);
            quot += &step;
        }
        Some(quot)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str("+")?;
            }
            write!(f, "{}*u^{}", c, k)?;
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({})", self)
    }
}

impl FromStr for LaurentPoly {
    type Err = ExactError;

    /// Parses the canonical rendering produced by `Display`. Anything that
    /// would not render back to the identical string is rejected.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |why: &str| ExactError::Parse(format!("{why} in `{s}`"));
        if s == "0" {
            return Ok(Self::zero());
        }
        let mut p = Self::zero();
        for term in s.split('+') {
            let (c, k) = term.split_once("*u^").ok_or_else(|| bad("missing `*u^`"))?;
            let c: BigRational = c.parse().map_err(|_| bad("bad coefficient"))?;
            let k: i64 = k.parse().map_err(|_| bad("bad exponent"))?;
            p.add_term(k, c);
        }
        if p.to_string() != s {
            return Err(bad("non-canonical polynomial"));
        }
        Ok(p)
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (&k, c) in &rhs.terms {
            self.add_term(k, c.clone());
        }
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(&k, c)| (k, -c)).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self -= &rhs;
        self
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        for (&k, c) in &rhs.terms {
            self.add_term(k, -c.clone());
        }
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&i, a) in &self.terms {
            for (&j, b) in &rhs.terms {
                out.add_term(i + j, a * b);
            }
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl std::iter::Sum for LaurentPoly {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |acc, p| acc + p)
    }
}
