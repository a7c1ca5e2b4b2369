//! The generic Iwahori-Hecke algebra in its standard basis `T_w`.
//!
//! The defining relations, with `L` the weight function of the datum, are
//! `T_s T_w = T_{sw}` when `l(sw) > l(w)` and
//! `T_s^2 = u^{L(s)} T_1 + (u^{L(s)} - 1) T_s`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Sub};
use std::sync::Arc;

use thiserror::Error;

use crate::coxeter::{CoxeterDatum, GroupElement};
use crate::exactalg::LaurentPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HeckeError {
    #[error("Hecke elements belong to different Coxeter data")]
    DatumMismatch,
    #[error("parse error: {0}")]
    Parse(String),
}

/// A finite `LaurentPoly`-combination of basis elements `T_w`.
#[derive(Clone)]
pub struct HeckeElement {
    datum: Arc<CoxeterDatum>,
    support: BTreeMap<GroupElement, LaurentPoly>,
}

impl PartialEq for HeckeElement {
    fn eq(&self, other: &Self) -> bool {
        same_datum(&self.datum, &other.datum) && self.support == other.support
    }
}

impl Eq for HeckeElement {}

fn same_datum(a: &Arc<CoxeterDatum>, b: &Arc<CoxeterDatum>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl HeckeElement {
    pub fn zero(datum: &Arc<CoxeterDatum>) -> Self {
        Self {
            datum: datum.clone(),
            support: BTreeMap::new(),
        }
    }

    /// `T_1`, the identity.
    pub fn one(datum: &Arc<CoxeterDatum>) -> Self {
        Self::basis(datum, datum.identity())
    }

    /// `T_w`
    pub fn basis(datum: &Arc<CoxeterDatum>, w: GroupElement) -> Self {
        Self::monomial(datum, w, LaurentPoly::one())
    }

    /// `c T_w`
    pub fn monomial(datum: &Arc<CoxeterDatum>, w: GroupElement, c: LaurentPoly) -> Self {
        let mut h = Self::zero(datum);
        h.add_term(w, &c);
        h
    }

    pub fn datum(&self) -> &Arc<CoxeterDatum> {
        &self.datum
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    pub fn coeff(&self, w: GroupElement) -> LaurentPoly {
        self.support.get(&w).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (GroupElement, &LaurentPoly)> {
        self.support.iter().map(|(&w, c)| (w, c))
    }

    fn add_term(&mut self, w: GroupElement, c: &LaurentPoly) {
        if c.is_zero() {
            return;
        }
        let slot = self.support.entry(w).or_default();
        *slot += c;
        if slot.is_zero() {
            self.support.remove(&w);
        }
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        let mut out = Self::zero(&self.datum);
        for (&w, v) in &self.support {
            out.add_term(w, &(v * c));
        }
        out
    }

    /// `T_s * self`
    pub fn left_mul_generator(&self, s: usize) -> Self {
        let d = &self.datum;
        let q = LaurentPoly::u_pow(d.weights()[s] as i64);
        let q_minus_one = &q - &LaurentPoly::one();
        let mut out = Self::zero(d);
        for (&w, c) in &self.support {
            let sw = d.left_mul_generator(s, w);
            if d.length(sw) > d.length(w) {
                out.add_term(sw, c);
            } else {
                out.add_term(sw, &(c * &q));
                out.add_term(w, &(c * &q_minus_one));
            }
        }
        out
    }

    /// Product in the algebra. Each `T_x` of the left factor is applied to
    /// the right factor one generator at a time along the normal word of `x`.
    pub fn multiply(&self, rhs: &Self) -> Result<Self, HeckeError> {
        if !same_datum(&self.datum, &rhs.datum) {
            return Err(HeckeError::DatumMismatch);
        }
        let mut out = Self::zero(&self.datum);
        for (&x, c) in &self.support {
            let mut acc = rhs.clone();
            for &s in self.datum.reduced_word(x).iter().rev() {
                acc = acc.left_mul_generator(s);
            }
            for (&w, v) in &acc.support {
                out.add_term(w, &(v * c));
            }
        }
        Ok(out)
    }

    /// The symmetrizing trace: the coefficient of `T_1`.
    pub fn tau(&self) -> LaurentPoly {
        self.coeff(self.datum.identity())
    }

    /// Renders as `(poly)*T[word]` summands joined by ` + `, in ShortLex
    /// order of the basis elements; the zero element is `0`.
    pub fn render(&self) -> String {
        if self.support.is_empty() {
            return "0".to_string();
        }
        self.support
            .iter()
            .map(|(&w, c)| {
                let word = self.datum.render(w);
                let word = if word == "1" { String::new() } else { word };
                format!("({c})*T[{word}]")
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// Parses the output of [`Self::render`].
    pub fn parse(datum: &Arc<CoxeterDatum>, text: &str) -> Result<Self, HeckeError> {
        let bad = |why: String| HeckeError::Parse(why);
        let mut out = Self::zero(datum);
        if text.trim() == "0" {
            return Ok(out);
        }
        for summand in text.split(" + ") {
            let rest = summand
                .strip_prefix('(')
                .ok_or_else(|| bad(format!("expected `(` in `{summand}`")))?;
            let (poly, rest) = rest
                .split_once(")*T[")
                .ok_or_else(|| bad(format!("expected `)*T[` in `{summand}`")))?;
            let word = rest
                .strip_suffix(']')
                .ok_or_else(|| bad(format!("expected `]` in `{summand}`")))?;
            let c: LaurentPoly = poly.parse().map_err(|e| bad(format!("{e}")))?;
            let w = datum.parse_element(word).map_err(|e| bad(format!("{e}")))?;
            out.add_term(w, &c);
        }
        Ok(out)
    }
}

impl fmt::Debug for HeckeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HeckeElement({})", self.render())
    }
}

impl fmt::Display for HeckeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl Add<&HeckeElement> for &HeckeElement {
    type Output = HeckeElement;
    fn add(self, rhs: &HeckeElement) -> HeckeElement {
        assert!(same_datum(&self.datum, &rhs.datum), "datum mismatch");
        let mut out = self.clone();
        for (&w, c) in &rhs.support {
            out.add_term(w, c);
        }
        out
    }
}

impl Sub<&HeckeElement> for &HeckeElement {
    type Output = HeckeElement;
    fn sub(self, rhs: &HeckeElement) -> HeckeElement {
        assert!(same_datum(&self.datum, &rhs.datum), "datum mismatch");
        let mut out = self.clone();
        for (&w, c) in &rhs.support {
            out.add_term(w, &-c);
        }
        out
    }
}

/// `T_s T_w` for a generator `s`.
pub fn generator_times_basis(datum: &Arc<CoxeterDatum>, s: usize, w: GroupElement) -> HeckeElement {
    HeckeElement::basis(datum, w).left_mul_generator(s)
}

/// `tau(T_w T_w')`, by explicit multiplication.
pub fn tau_bilinear(datum: &Arc<CoxeterDatum>, w: GroupElement, w_prime: GroupElement) -> LaurentPoly {
    HeckeElement::basis(datum, w)
        .multiply(&HeckeElement::basis(datum, w_prime))
        .expect("same datum")
        .tau()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::{build_datum, CoxeterType};

    fn g2() -> Arc<CoxeterDatum> {
        Arc::new(build_datum(CoxeterType::G2, 2, &[3, 1]).unwrap())
    }

    fn poly(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().copied())
    }

    #[test]
    fn generator_relations() {
        let d = g2();
        let (a, b) = (d.generator(0), d.generator(1));
        // T_a T_a = u^3 T_1 + (u^3 - 1) T_a
        let expected = &HeckeElement::monomial(&d, d.identity(), LaurentPoly::u_pow(3))
            + &HeckeElement::monomial(&d, a, poly(&[(1, 3), (-1, 0)]));
        assert_eq!(generator_times_basis(&d, 0, a), expected);
        assert_eq!(
            generator_times_basis(&d, 0, b),
            HeckeElement::basis(&d, d.multiply(a, b))
        );
        assert_eq!(generator_times_basis(&d, 1, d.identity()), HeckeElement::basis(&d, b));
    }

    #[test]
    fn multiply_examples() {
        let d = g2();
        let (a, b) = (d.generator(0), d.generator(1));
        let ta = HeckeElement::basis(&d, a);
        let tb = HeckeElement::basis(&d, b);
        let one = HeckeElement::one(&d);
        let sum = &ta + &one;
        assert_eq!(sum.multiply(&one).unwrap(), sum);

        let expected = &HeckeElement::monomial(&d, d.identity(), LaurentPoly::u())
            + &HeckeElement::monomial(&d, b, poly(&[(1, 1), (-1, 0)]));
        assert_eq!(tb.multiply(&tb).unwrap(), expected);

        let left = ta.multiply(&tb).unwrap().multiply(&ta).unwrap();
        let right = ta.multiply(&tb.multiply(&ta).unwrap()).unwrap();
        assert_eq!(left, right);
        assert_eq!(left, HeckeElement::basis(&d, d.parse_element("s1.s2.s1").unwrap()));
    }

    #[test]
    fn tau_examples() {
        let d = g2();
        assert!(HeckeElement::one(&d).tau().is_one());
        for w in d.elements().skip(1) {
            assert!(HeckeElement::basis(&d, w).tau().is_zero());
        }
        let ta = HeckeElement::basis(&d, d.generator(0));
        assert_eq!(ta.multiply(&ta).unwrap().tau(), LaurentPoly::u_pow(3));
        assert!(tau_bilinear(&d, d.identity(), d.identity()).is_one());
    }

    #[test]
    fn datum_mismatch() {
        let d = g2();
        let other = Arc::new(build_datum(CoxeterType::B, 2, &[1, 1]).unwrap());
        let x = HeckeElement::one(&d);
        let y = HeckeElement::one(&other);
        assert_eq!(x.multiply(&y), Err(HeckeError::DatumMismatch));
        // structurally equal data built separately are compatible
        let twin = g2();
        assert!(x.multiply(&HeckeElement::one(&twin)).is_ok());
    }

    #[test]
    fn render_parse_round_trip() {
        let d = g2();
        let ta = HeckeElement::basis(&d, d.generator(0));
        let h = &ta.multiply(&ta).unwrap() + &HeckeElement::monomial(&d, d.longest_element(), poly(&[(2, -1)]));
        let text = h.render();
        assert_eq!(
            text,
            "(1*u^3)*T[] + (-1*u^0+1*u^3)*T[s1] + (2*u^-1)*T[s1.s2.s1.s2.s1.s2]"
        );
        assert_eq!(HeckeElement::parse(&d, &text).unwrap(), h);
        assert_eq!(HeckeElement::zero(&d).render(), "0");
        assert!(HeckeElement::parse(&d, "(1*u^0)*T[s9]").is_err());
    }
}
