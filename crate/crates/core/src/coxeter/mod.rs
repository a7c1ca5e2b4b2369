//! Finite Coxeter groups carrying a weight function.
//!
//! A [`CoxeterDatum`] enumerates its group once at construction. Elements
//! are numbered in ShortLex order of their normal words (length first, then
//! lexicographic), so a [`GroupElement`] is just that index and every table
//! derived from a datum is reproducible.

mod models;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactalg::LaurentPoly;
use models::{explore, Dihedral, Hyperoctahedral, Reflection, Symmetric, Tables};

pub const DEFAULT_GROUP_ORDER_CAP: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoxeterError {
    #[error("invalid weights: {0}")]
    InvalidWeights(String),
    #[error("unsupported Coxeter type: {0}")]
    UnsupportedType(String),
    #[error("invalid Coxeter matrix: {0}")]
    InvalidMatrix(String),
    #[error("group order exceeds the cap of {cap} elements")]
    GroupTooLarge { cap: usize },
    #[error("bad word `{0}`")]
    BadWord(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CoxeterType {
    A,
    B,
    G2,
    #[serde(rename = "custom")]
    Custom,
}

impl FromStr for CoxeterType {
    type Err = CoxeterError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "a" => Ok(Self::A),
            "b" => Ok(Self::B),
            "g2" => Ok(Self::G2),
            "custom" => Ok(Self::Custom),
            other => Err(CoxeterError::UnsupportedType(other.to_string())),
        }
    }
}

impl fmt::Display for CoxeterType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::A => "A",
            Self::B => "B",
            Self::G2 => "G2",
            Self::Custom => "custom",
        })
    }
}

/// Serialized form of a datum: `{type, rank, weights, coxeterMatrix}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DatumSpec {
    #[serde(rename = "type")]
    pub kind: CoxeterType,
    pub rank: usize,
    pub weights: Vec<u32>,
    pub coxeter_matrix: Vec<Vec<u32>>,
}

/// An element of the group of some datum, as its ShortLex index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupElement(u32);

impl GroupElement {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Weights `(2s+1, 2, ..., 2)` of rank `m`.
pub fn unitary_weights(m: usize, s: u32) -> Vec<u32> {
    let mut w = vec![2; m];
    if m > 0 {
        w[0] = 2 * s + 1;
    }
    w
}

pub struct CoxeterDatum {
    kind: CoxeterType,
    rank: usize,
    matrix: Vec<Vec<u32>>,
    weights: Vec<u32>,
    tables: Tables,
    weight_of: Vec<u64>,
    longest: u32,
}

impl PartialEq for CoxeterDatum {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind && self.matrix == other.matrix && self.weights == other.weights
    }
}

impl Eq for CoxeterDatum {}

impl fmt::Debug for CoxeterDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CoxeterDatum")
            .field("type", &self.kind)
            .field("rank", &self.rank)
            .field("weights", &self.weights)
            .field("order", &self.order())
            .finish()
    }
}

fn standard_matrix(kind: CoxeterType, rank: usize) -> Result<Vec<Vec<u32>>, CoxeterError> {
    let mut m = vec![vec![2u32; rank]; rank];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1;
    }
    match kind {
        CoxeterType::A => {
            for i in 1..rank {
                m[i - 1][i] = 3;
                m[i][i - 1] = 3;
            }
        }
        CoxeterType::B => {
            for i in 1..rank {
                let bond = if i == 1 { 4 } else { 3 };
                m[i - 1][i] = bond;
                m[i][i - 1] = bond;
            }
        }
        CoxeterType::G2 => {
            if rank != 2 {
                return Err(CoxeterError::UnsupportedType(format!("G2 has rank 2, not {rank}")));
            }
            m[0][1] = 6;
            m[1][0] = 6;
        }
        CoxeterType::Custom => {
            return Err(CoxeterError::UnsupportedType(
                "custom data need an explicit Coxeter matrix".into(),
            ))
        }
    }
    Ok(m)
}

fn validate_matrix(matrix: &[Vec<u32>]) -> Result<(), CoxeterError> {
    let n = matrix.len();
    for (i, row) in matrix.iter().enumerate() {
        if row.len() != n {
            return Err(CoxeterError::InvalidMatrix("matrix is not square".into()));
        }
        for (j, &m) in row.iter().enumerate() {
            if i == j && m != 1 {
                return Err(CoxeterError::InvalidMatrix(format!("m({i},{i}) = {m}, expected 1")));
            }
            if i != j && m < 2 {
                return Err(CoxeterError::InvalidMatrix(format!("m({i},{j}) = {m} < 2")));
            }
            if matrix[j][i] != m {
                return Err(CoxeterError::InvalidMatrix(format!("m({i},{j}) != m({j},{i})")));
            }
        }
    }
    Ok(())
}

fn validate_weights(matrix: &[Vec<u32>], weights: &[u32]) -> Result<(), CoxeterError> {
    if weights.len() != matrix.len() {
        return Err(CoxeterError::InvalidWeights(format!(
            "{} weights for rank {}",
            weights.len(),
            matrix.len()
        )));
    }
    for (i, row) in matrix.iter().enumerate() {
        for (j, &m) in row.iter().enumerate() {
            if i != j && m % 2 == 1 && weights[i] != weights[j] {
                return Err(CoxeterError::InvalidWeights(format!(
                    "m(s{},s{}) = {m} is odd but L(s{}) = {} != L(s{}) = {}",
                    i + 1,
                    j + 1,
                    i + 1,
                    weights[i],
                    j + 1,
                    weights[j]
                )));
            }
        }
    }
    Ok(())
}

/// Builds and enumerates a datum of standard type with the default cap.
///
/// For type `B` of rank `m`, a two-entry weight list `(b, a)` is expanded to
/// `(b, a, ..., a)`; generator 0 is the node on the double bond. For `G2`
/// generator 0 is the first node (weight 3 in the `(3, 1)` case).
pub fn build_datum(kind: CoxeterType, rank: usize, weights: &[u32]) -> Result<CoxeterDatum, CoxeterError> {
    build_datum_with_cap(kind, rank, weights, DEFAULT_GROUP_ORDER_CAP)
}

pub fn build_datum_with_cap(
    kind: CoxeterType,
    rank: usize,
    weights: &[u32],
    cap: usize,
) -> Result<CoxeterDatum, CoxeterError> {
    if rank == 0 {
        return Err(CoxeterError::UnsupportedType("rank must be positive".into()));
    }
    let matrix = standard_matrix(kind, rank)?;
    let weights = if kind == CoxeterType::B && weights.len() == 2 && rank != 2 {
        let mut w = vec![weights[1]; rank];
        w[0] = weights[0];
        w
    } else {
        weights.to_vec()
    };
    validate_weights(&matrix, &weights)?;
    let tables = match kind {
        CoxeterType::A => explore(&Symmetric { n: rank + 1 }, rank, cap)?,
        CoxeterType::B => explore(&Hyperoctahedral { m: rank }, rank, cap)?,
        CoxeterType::G2 => explore(&Dihedral { m: 6 }, rank, cap)?,
        CoxeterType::Custom => unreachable!("rejected by standard_matrix"),
    };
    Ok(CoxeterDatum::assemble(kind, matrix, weights, tables))
}

/// Builds a datum from an arbitrary Coxeter matrix through its reflection
/// representation. Infinite groups run into the cap.
pub fn build_custom(matrix: Vec<Vec<u32>>, weights: &[u32], cap: usize) -> Result<CoxeterDatum, CoxeterError> {
    if matrix.is_empty() {
        return Err(CoxeterError::InvalidMatrix("empty matrix".into()));
    }
    validate_matrix(&matrix)?;
    validate_weights(&matrix, weights)?;
    let rank = matrix.len();
    let tables = explore(&Reflection::new(&matrix), rank, cap)?;
    Ok(CoxeterDatum::assemble(CoxeterType::Custom, matrix, weights.to_vec(), tables))
}

impl CoxeterDatum {
    fn assemble(kind: CoxeterType, matrix: Vec<Vec<u32>>, weights: Vec<u32>, tables: Tables) -> Self {
        let rank = matrix.len();
        let n = tables.length.len();
        let mut weight_of = vec![0u64; n];
        for w in 1..n {
            let s = tables.first[w] as usize;
            let tail = tables.left[w * rank + s] as usize;
            weight_of[w] = weight_of[tail] + weights[s] as u64;
        }
        // The longest element is the unique one of maximal length and the
        // last one in ShortLex order.
        let longest = (n - 1) as u32;
        Self {
            kind,
            rank,
            matrix,
            weights,
            tables,
            weight_of,
            longest,
        }
    }

    pub fn from_spec(spec: &DatumSpec, cap: usize) -> Result<Self, CoxeterError> {
        let datum = match spec.kind {
            CoxeterType::Custom => build_custom(spec.coxeter_matrix.clone(), &spec.weights, cap)?,
            kind => build_datum_with_cap(kind, spec.rank, &spec.weights, cap)?,
        };
        if datum.matrix != spec.coxeter_matrix || datum.rank != spec.rank {
            return Err(CoxeterError::InvalidMatrix(
                "Coxeter matrix does not match the declared type".into(),
            ));
        }
        Ok(datum)
    }

    pub fn spec(&self) -> DatumSpec {
        DatumSpec {
            kind: self.kind,
            rank: self.rank,
            weights: self.weights.clone(),
            coxeter_matrix: self.matrix.clone(),
        }
    }

    pub fn kind(&self) -> CoxeterType {
        self.kind
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn coxeter_matrix(&self) -> &[Vec<u32>] {
        &self.matrix
    }

    pub fn order(&self) -> usize {
        self.tables.length.len()
    }

    /// All elements, in ShortLex order.
    pub fn elements(&self) -> impl ExactSizeIterator<Item = GroupElement> {
        (0..self.order() as u32).map(GroupElement)
    }

    pub fn element(&self, index: usize) -> Option<GroupElement> {
        (index < self.order()).then_some(GroupElement(index as u32))
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement(0)
    }

    pub fn generator(&self, s: usize) -> GroupElement {
        assert!(s < self.rank, "generator index {s} out of range");
        GroupElement(self.tables.right[s])
    }

    /// `s * w`
    pub fn left_mul_generator(&self, s: usize, w: GroupElement) -> GroupElement {
        GroupElement(self.tables.left[w.index() * self.rank + s])
    }

    /// `w * s`
    pub fn right_mul_generator(&self, w: GroupElement, s: usize) -> GroupElement {
        GroupElement(self.tables.right[w.index() * self.rank + s])
    }

    pub fn multiply(&self, x: GroupElement, y: GroupElement) -> GroupElement {
        self.reduced_word(y)
            .into_iter()
            .fold(x, |acc, s| self.right_mul_generator(acc, s))
    }

    pub fn inverse(&self, x: GroupElement) -> GroupElement {
        GroupElement(self.tables.inverse[x.index()])
    }

    pub fn length(&self, x: GroupElement) -> u32 {
        self.tables.length[x.index()]
    }

    /// `L(x)`: the sum of generator weights along any reduced word.
    pub fn weight(&self, x: GroupElement) -> u64 {
        self.weight_of[x.index()]
    }

    /// The ShortLex normal word of `x` (lexicographically least reduced word).
    pub fn reduced_word(&self, x: GroupElement) -> Vec<usize> {
        let mut word = Vec::with_capacity(self.length(x) as usize);
        let mut cur = x;
        while cur.0 != 0 {
            let s = self.tables.first[cur.index()] as usize;
            word.push(s);
            cur = self.left_mul_generator(s, cur);
        }
        word
    }

    pub fn longest_element(&self) -> GroupElement {
        GroupElement(self.longest)
    }

    /// Evaluates an arbitrary (not necessarily reduced) word.
    pub fn evaluate_word(&self, word: &[usize]) -> GroupElement {
        word.iter()
            .fold(self.identity(), |acc, &s| self.right_mul_generator(acc, s))
    }

    /// Renders `x` as its normal word, e.g. `s1.s2.s1`; the identity is `1`.
    pub fn render(&self, x: GroupElement) -> String {
        let word = self.reduced_word(x);
        if word.is_empty() {
            return "1".to_string();
        }
        word.iter()
            .map(|s| format!("s{}", s + 1))
            .collect::<Vec<_>>()
            .join(".")
    }

    /// Inverse of [`Self::render`]; any word in the generators is accepted.
    pub fn parse_element(&self, text: &str) -> Result<GroupElement, CoxeterError> {
        let text = text.trim();
        if text == "1" || text.is_empty() {
            return Ok(self.identity());
        }
        let mut word = Vec::new();
        for letter in text.split('.') {
            let idx: usize = letter
                .strip_prefix('s')
                .and_then(|n| n.parse().ok())
                .filter(|&n: &usize| n >= 1 && n <= self.rank)
                .ok_or_else(|| CoxeterError::BadWord(text.to_string()))?;
            word.push(idx - 1);
        }
        Ok(self.evaluate_word(&word))
    }

    /// `sum_w u^{L(w)}`
    pub fn poincare_polynomial(&self) -> LaurentPoly {
        let mut counts = std::collections::BTreeMap::<u64, i64>::new();
        for w in self.elements() {
            *counts.entry(self.weight(w)).or_default() += 1;
        }
        LaurentPoly::from_terms(counts.into_iter().map(|(k, c)| (c, k as i64)))
    }
}
