//! Matrix representations of the generic Hecke algebra, their characters,
//! Schur elements and a-invariants.
//!
//! Schur elements come from the dual-basis sum
//! `c = (1/dim) sum_w u^{-L(w)} trace(T_w) trace(T_{w^-1})`, which uses that
//! `u^{-L(w)} T_{w^-1}` is the basis dual to `T_w` under `tau`.

use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coxeter::{build_datum, CoxeterDatum, CoxeterType, DatumSpec, GroupElement};
use crate::exactalg::{ExactError, LaurentPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CharError {
    #[error("representation `{name}` violates a defining relation: {violation}")]
    NotARepresentation { name: String, violation: RelationViolation },
    #[error("Schur element of `{0}` has non-integer coefficients")]
    NonIntegralSchurElement(String),
    #[error("Schur element has positive valuation, so the a-invariant would be negative")]
    NegativeAInvariant,
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error("malformed representation: {0}")]
    Shape(String),
    #[error("representations live on different Coxeter data")]
    DatumMismatch,
}

/// The first defining relation a set of generator matrices fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RelationViolation {
    Quadratic { generator: usize },
    Braid { s: usize, t: usize, m: u32 },
}

impl fmt::Display for RelationViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Quadratic { generator } => {
                write!(f, "quadratic relation for s{}", generator + 1)
            }
            Self::Braid { s, t, m } => {
                write!(f, "braid relation of length {m} between s{} and s{}", s + 1, t + 1)
            }
        }
    }
}

/// Dense square matrix over [`LaurentPoly`], row-major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyMatrix {
    n: usize,
    data: Vec<LaurentPoly>,
}

impl PolyMatrix {
    pub fn identity(n: usize) -> Self {
        let mut data = vec![LaurentPoly::zero(); n * n];
        for i in 0..n {
            data[i * n + i] = LaurentPoly::one();
        }
        Self { n, data }
    }

    pub fn scalar(n: usize, c: &LaurentPoly) -> Self {
        let mut m = Self::identity(n);
        for i in 0..n {
            m.data[i * n + i] = c.clone();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<LaurentPoly>>) -> Result<Self, CharError> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(CharError::Shape("matrix is not square".into()));
        }
        Ok(Self {
            n,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: LaurentPoly) {
        self.data[i * self.n + j] = value;
    }

    pub fn trace(&self) -> LaurentPoly {
        (0..self.n).map(|i| self.get(i, i).clone()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(LaurentPoly::is_zero)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let n = self.n;
        let mut data = vec![LaurentPoly::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = &self.data[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &rhs.data[k * n + j];
                    if !b.is_zero() {
                        data[i * n + j] += &(a * b);
                    }
                }
            }
        }
        Self { n, data }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Self {
            n: self.n,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        Self {
            n: self.n,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

/// Images of the generators `T_s` under a representation.
pub struct MatrixRep {
    name: String,
    datum: Arc<CoxeterDatum>,
    dim: usize,
    generators: Vec<PolyMatrix>,
    characters: OnceLock<Result<Vec<LaurentPoly>, CharError>>,
}

impl fmt::Debug for MatrixRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MatrixRep")
            .field("name", &self.name)
            .field("dim", &self.dim)
            .field("generators", &self.generators)
            .finish()
    }
}

impl Clone for MatrixRep {
    fn clone(&self) -> Self {
        Self {
            name: self.name.clone(),
            datum: self.datum.clone(),
            dim: self.dim,
            generators: self.generators.clone(),
            characters: OnceLock::new(),
        }
    }
}

impl MatrixRep {
    pub fn new(
        name: impl Into<String>,
        datum: &Arc<CoxeterDatum>,
        generators: Vec<PolyMatrix>,
    ) -> Result<Self, CharError> {
        if generators.len() != datum.rank() {
            return Err(CharError::Shape(format!(
                "{} generator images for rank {}",
                generators.len(),
                datum.rank()
            )));
        }
        let dim = generators.first().map_or(0, PolyMatrix::size);
        if dim == 0 || generators.iter().any(|g| g.size() != dim) {
            return Err(CharError::Shape("generator images of unequal or zero size".into()));
        }
        Ok(Self {
            name: name.into(),
            datum: datum.clone(),
            dim,
            generators,
            characters: OnceLock::new(),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn datum(&self) -> &Arc<CoxeterDatum> {
        &self.datum
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generator_image(&self, s: usize) -> &PolyMatrix {
        &self.generators[s]
    }

    /// Checks every quadratic relation `(M - u^{L(s)})(M + 1) = 0` and every
    /// braid relation, reporting the first failure.
    pub fn check_representation(&self) -> Result<(), RelationViolation> {
        let n = self.dim;
        let one = PolyMatrix::identity(n);
        for (s, m) in self.generators.iter().enumerate() {
            let q = PolyMatrix::scalar(n, &LaurentPoly::u_pow(self.datum.weights()[s] as i64));
            if !m.sub(&q).mul(&m.add(&one)).is_zero() {
                return Err(RelationViolation::Quadratic { generator: s });
            }
        }
        let matrix = self.datum.coxeter_matrix();
        for s in 0..self.datum.rank() {
            for t in s + 1..self.datum.rank() {
                let m = matrix[s][t];
                let alternate = |first: usize, second: usize| {
                    (0..m).fold(PolyMatrix::identity(n), |acc, i| {
                        acc.mul(&self.generators[if i % 2 == 0 { first } else { second }])
                    })
                };
                if alternate(s, t) != alternate(t, s) {
                    return Err(RelationViolation::Braid { s, t, m });
                }
            }
        }
        Ok(())
    }

    /// `trace(T_w)` for every element, in ShortLex order. Computed once.
    pub fn characters(&self) -> Result<&[LaurentPoly], CharError> {
        self.characters
            .get_or_init(|| self.sweep())
            .as_ref()
            .map(Vec::as_slice)
            .map_err(Clone::clone)
    }

    fn sweep(&self) -> Result<Vec<LaurentPoly>, CharError> {
        self.check_representation()
            .map_err(|violation| CharError::NotARepresentation {
                name: self.name.clone(),
                violation,
            })?;
        let d = &self.datum;
        let mut mats: Vec<PolyMatrix> = Vec::with_capacity(d.order());
        mats.push(PolyMatrix::identity(self.dim));
        for w in d.elements().skip(1) {
            // w = s * tail with tail earlier in ShortLex order
            let s = d.reduced_word(w)[0];
            let tail = d.left_mul_generator(s, w);
            mats.push(self.generators[s].mul(&mats[tail.index()]));
        }
        Ok(mats.iter().map(PolyMatrix::trace).collect())
    }

    pub fn rep_trace(&self, w: GroupElement) -> Result<LaurentPoly, CharError> {
        Ok(self.characters()?[w.index()].clone())
    }

    /// The Schur element; must have integer coefficients.
    pub fn schur_element(&self) -> Result<LaurentPoly, CharError> {
        let sum = pairing_sum(self, self)?;
        let c = sum.scale(&BigRational::new(BigInt::from(1), BigInt::from(self.dim)));
        if !c.has_integer_coefficients() {
            return Err(CharError::NonIntegralSchurElement(self.name.clone()));
        }
        Ok(c)
    }
}

/// `sum_w u^{-L(w)} trace(T_w, r1) trace(T_{w^-1}, r2)`; zero for
/// non-isomorphic irreducibles and `dim * c` on the diagonal.
pub fn pairing_sum(r1: &MatrixRep, r2: &MatrixRep) -> Result<LaurentPoly, CharError> {
    if **r1.datum() != **r2.datum() {
        return Err(CharError::DatumMismatch);
    }
    let d = r1.datum();
    let (x1, x2) = (r1.characters()?, r2.characters()?);
    let mut sum = LaurentPoly::zero();
    for w in d.elements() {
        let a = &x1[w.index()];
        let b = &x2[d.inverse(w).index()];
        if a.is_zero() || b.is_zero() {
            continue;
        }
        sum += &(a * b).shift(-(d.weight(w) as i64));
    }
    Ok(sum)
}

/// `(a, f)` with `c = f u^{-a} + higher powers of u`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AInvariant {
    pub a: u64,
    pub f: BigInt,
}

pub fn a_invariant(c: &LaurentPoly) -> Result<AInvariant, CharError> {
    let val = c.u_valuation()?;
    if !c.has_integer_coefficients() {
        return Err(ExactError::NonIntegerCoefficients.into());
    }
    if val > 0 {
        return Err(CharError::NegativeAInvariant);
    }
    Ok(AInvariant {
        a: (-val) as u64,
        f: c.leading_coefficient_at_valuation()?.to_integer(),
    })
}

fn one_by_one(c: LaurentPoly) -> PolyMatrix {
    PolyMatrix::scalar(1, &c)
}

/// The index representation `T_s -> u^{L(s)}` and the sign representation
/// `T_s -> -1`.
pub fn one_dim_reps(datum: &Arc<CoxeterDatum>) -> Vec<MatrixRep> {
    let index = datum
        .weights()
        .iter()
        .map(|&l| one_by_one(LaurentPoly::u_pow(l as i64)))
        .collect();
    let sign = (0..datum.rank())
        .map(|_| one_by_one(LaurentPoly::constant(-1)))
        .collect();
    vec![
        MatrixRep::new("ind", datum, index).expect("well-formed"),
        MatrixRep::new("sgn", datum, sign).expect("well-formed"),
    ]
}

/// The datum `G2` with `L(s1) = 3`, `L(s2) = 1`.
pub fn g2_datum() -> Arc<CoxeterDatum> {
    Arc::new(build_datum(CoxeterType::G2, 2, &[3, 1]).expect("G2(3,1) is valid"))
}

/// The six irreducible representations of the generic algebra of type
/// `G2` with parameters `(u^3, u)`: `ind, eps, eps1, eps2` of dimension one
/// and `rho+`, `rho-` of dimension two.
pub fn builtin_g2_reps() -> Vec<MatrixRep> {
    let d = g2_datum();
    let p = |c: &[i64]| LaurentPoly::from_coeffs(c);
    let one_dim = |name: &str, a: LaurentPoly, b: LaurentPoly| {
        MatrixRep::new(name, &d, vec![one_by_one(a), one_by_one(b)]).expect("well-formed")
    };
    let u3 = LaurentPoly::u_pow(3);
    let u = LaurentPoly::u();
    let minus_one = LaurentPoly::constant(-1);
    let mut reps = vec![
        one_dim("ind", u3.clone(), u.clone()),
        one_dim("eps", minus_one.clone(), minus_one.clone()),
        one_dim("eps1", u3.clone(), minus_one.clone()),
        one_dim("eps2", minus_one.clone(), u.clone()),
    ];
    for (name, delta) in [("rho+", 1), ("rho-", -1)] {
        let t_alpha = PolyMatrix::from_rows(vec![
            vec![minus_one.clone(), LaurentPoly::zero()],
            vec![p(&[1, delta, 1]), u3.clone()],
        ])
        .expect("square");
        let t_beta = PolyMatrix::from_rows(vec![
            vec![u.clone(), u.clone()],
            vec![LaurentPoly::zero(), minus_one.clone()],
        ])
        .expect("square");
        reps.push(MatrixRep::new(name, &d, vec![t_alpha, t_beta]).expect("well-formed"));
    }
    reps
}

/// Checks `tau(T_w) = sum_lambda trace(T_w, E^lambda) / c_lambda` for every
/// `w`, after multiplying through by the product of all Schur elements.
/// Returns the first element where the identity fails.
pub fn verify_trace_identity(reps: &[MatrixRep]) -> Result<Option<GroupElement>, CharError> {
    let Some(first) = reps.first() else {
        return Ok(None);
    };
    let d = first.datum().clone();
    let schur: Vec<LaurentPoly> = reps.iter().map(MatrixRep::schur_element).collect::<Result<_, _>>()?;
    let total: LaurentPoly = schur.iter().fold(LaurentPoly::one(), |acc, c| &acc * c);
    let cofactors: Vec<LaurentPoly> = (0..reps.len())
        .map(|i| {
            schur
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .fold(LaurentPoly::one(), |acc, (_, c)| &acc * c)
        })
        .collect();
    for w in d.elements() {
        let lhs = if w == d.identity() { total.clone() } else { LaurentPoly::zero() };
        let mut rhs = LaurentPoly::zero();
        for (rep, cof) in reps.iter().zip(&cofactors) {
            rhs += &(&rep.rep_trace(w)? * cof);
        }
        if lhs != rhs {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// One row of an exported Schur-element table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SchurEntry {
    pub name: String,
    pub dim: usize,
    pub schur: LaurentPoly,
    pub a_invariant: u64,
    pub f_lambda: i64,
}

/// `{datum, reps: [{name, dim, schur, aInvariant, fLambda}]}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchurTable {
    pub datum: DatumSpec,
    pub reps: Vec<SchurEntry>,
}

pub fn schur_table(reps: &[MatrixRep]) -> Result<SchurTable, CharError> {
    let datum = reps
        .first()
        .ok_or_else(|| CharError::Shape("no representations".into()))?
        .datum()
        .clone();
    let mut rows = Vec::with_capacity(reps.len());
    for rep in reps {
        if **rep.datum() != *datum {
            return Err(CharError::DatumMismatch);
        }
        let schur = rep.schur_element()?;
        let inv = a_invariant(&schur)?;
        rows.push(SchurEntry {
            name: rep.name().to_string(),
            dim: rep.dim(),
            schur,
            a_invariant: inv.a,
            f_lambda: inv.f.to_i64().ok_or_else(|| CharError::Shape("f_lambda overflows i64".into()))?,
        });
    }
    Ok(SchurTable {
        datum: datum.spec(),
        reps: rows,
    })
}
