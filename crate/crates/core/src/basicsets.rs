//! Labeled decomposition matrices, canonical basic sets, the factorization
//! through a root-of-unity specialization, and triangularity checks.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::combinat::{dominates, is_e_regular, list_bipartitions, list_partitions, n_invariant, CombinatError, Partition};
use crate::coxeter::{unitary_weights, CoxeterType};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BasicSetError {
    #[error("invalid decomposition matrix: {0}")]
    InvalidMatrix(String),
    #[error("no canonical basic set: column `{column}` fails ({reason})")]
    NoCanonicalSet { column: String, reason: NoCanonicalReason },
    #[error("product check failed at row `{row}`, column `{column}`: expected {expected}, got {actual}")]
    ProductMismatch { row: String, column: String, expected: u64, actual: u64 },
    #[error("column `{column}` has {candidates} candidates for beta instead of one")]
    BetaNotUnique { column: String, candidates: usize },
    #[error("basic sets differ at column `{column}`: `{full}` versus `{root}`")]
    BasicSetsDiffer { column: String, full: String, root: String },
    #[error("column counts differ: {full} versus {root}")]
    ColumnCountMismatch { full: usize, root: usize },
    #[error("row labels or a-invariants differ between the two matrices")]
    RowMismatch,
    #[error(transparent)]
    Combinat(#[from] CombinatError),
}

/// The clause of the canonical-set definition that failed for a column.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", tag = "kind")]
pub enum NoCanonicalReason {
    /// Several rows attain the minimal a-invariant.
    Tie { rows: Vec<String> },
    /// The unique minimizing row has multiplicity other than one.
    MultiplicityNotOne { row: String, multiplicity: u64 },
    /// A nonzero entry sits in a row with a-invariant not above the
    /// column's, other than the chosen row.
    SecondConditionViolated { row: String },
    /// Two columns are sent to the same row.
    NotInjective { row: String, other_column: String },
}

impl fmt::Display for NoCanonicalReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Tie { rows } => write!(f, "tie between rows {}", rows.join(", ")),
            Self::MultiplicityNotOne { row, multiplicity } => {
                write!(f, "row `{row}` has multiplicity {multiplicity}")
            }
            Self::SecondConditionViolated { row } => {
                write!(f, "nonzero entry in row `{row}` with a-invariant not above the column's")
            }
            Self::NotInjective { row, other_column } => {
                write!(f, "row `{row}` is also chosen by column `{other_column}`")
            }
        }
    }
}

/// Row metadata: the label, its a-invariant and, optionally, the label of
/// its unipotent class and that class's d-invariant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowLabel {
    pub label: String,
    pub a: u64,
    #[serde(rename = "class", default, skip_serializing_if = "Option::is_none")]
    pub class: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<u64>,
}

impl RowLabel {
    pub fn new(label: impl Into<String>, a: u64) -> Self {
        Self {
            label: label.into(),
            a,
            class: None,
            d: None,
        }
    }
}

#[derive(Deserialize)]
struct RawMatrix {
    rows: Vec<RowLabel>,
    cols: Vec<String>,
    entries: Vec<Vec<u64>>,
}

impl TryFrom<RawMatrix> for LabeledDecompMatrix {
    type Error = BasicSetError;

    fn try_from(raw: RawMatrix) -> Result<Self, Self::Error> {
        Self::new(raw.rows, raw.cols, raw.entries)
    }
}

/// A decomposition matrix with labeled rows and columns.
///
/// JSON form: `{rows: [{label, a, class?, d?}], cols: [label], entries: [[int]]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawMatrix")]
pub struct LabeledDecompMatrix {
    rows: Vec<RowLabel>,
    cols: Vec<String>,
    entries: Vec<Vec<u64>>,
}

fn check_unique<'a>(labels: impl Iterator<Item = &'a str>, what: &str) -> Result<(), BasicSetError> {
    let mut seen = BTreeSet::new();
    for l in labels {
        if !seen.insert(l) {
            return Err(BasicSetError::InvalidMatrix(format!("duplicate {what} label `{l}`")));
        }
    }
    Ok(())
}

impl LabeledDecompMatrix {
    pub fn new(rows: Vec<RowLabel>, cols: Vec<String>, entries: Vec<Vec<u64>>) -> Result<Self, BasicSetError> {
        if entries.len() != rows.len() {
            return Err(BasicSetError::InvalidMatrix(format!(
                "{} rows of entries for {} row labels",
                entries.len(),
                rows.len()
            )));
        }
        if let Some((i, _)) = entries.iter().enumerate().find(|(_, r)| r.len() != cols.len()) {
            return Err(BasicSetError::InvalidMatrix(format!(
                "row `{}` has {} entries for {} columns",
                rows[i].label,
                entries[i].len(),
                cols.len()
            )));
        }
        check_unique(rows.iter().map(|r| r.label.as_str()), "row")?;
        check_unique(cols.iter().map(String::as_str), "column")?;
        for (j, c) in cols.iter().enumerate() {
            if entries.iter().all(|r| r[j] == 0) {
                return Err(BasicSetError::InvalidMatrix(format!("column `{c}` is zero")));
            }
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn rows(&self) -> &[RowLabel] {
        &self.rows
    }

    pub fn cols(&self) -> &[String] {
        &self.cols
    }

    pub fn entries(&self) -> &[Vec<u64>] {
        &self.entries
    }

    pub fn entry(&self, i: usize, j: usize) -> u64 {
        self.entries[i][j]
    }

    pub fn row_index(&self, label: &str) -> Option<usize> {
        self.rows.iter().position(|r| r.label == label)
    }

    /// Parses the JSON ingestion format.
    pub fn from_json(text: &str) -> Result<Self, BasicSetError> {
        serde_json::from_str(text).map_err(|e| BasicSetError::InvalidMatrix(e.to_string()))
    }

    /// The canonical JSON layout: one row label or entry row per line.
    /// Files written this way read back and re-render byte for byte.
    pub fn to_canonical_json(&self) -> String {
        let mut out = String::from("{\n  \"rows\": [\n");
        for (i, r) in self.rows.iter().enumerate() {
            let mut line = format!("    {{\"label\": {}, \"a\": {}", js(&r.label), r.a);
            if let Some(c) = &r.class {
                let _ = write!(line, ", \"class\": {}", js(c));
            }
            if let Some(d) = r.d {
                let _ = write!(line, ", \"d\": {d}");
            }
            line.push('}');
            out.push_str(&line);
            out.push_str(if i + 1 < self.rows.len() { ",\n" } else { "\n" });
        }
        let cols: Vec<String> = self.cols.iter().map(|c| js(c)).collect();
        let _ = write!(out, "  ],\n  \"cols\": [{}],\n  \"entries\": [\n", cols.join(", "));
        for (i, r) in self.entries.iter().enumerate() {
            let cells: Vec<String> = r.iter().map(u64::to_string).collect();
            let _ = write!(out, "    [{}]", cells.join(", "));
            out.push_str(if i + 1 < self.entries.len() { ",\n" } else { "\n" });
        }
        out.push_str("  ]\n}\n");
        out
    }
}

fn js(s: &str) -> String {
    serde_json::to_string(s).expect("strings serialize")
}

/// One column of a basic set: the column, its chosen row and that row's
/// a-invariant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct IotaEntry {
    pub column: String,
    pub row: String,
    pub row_index: usize,
    pub a: u64,
}

/// The injection `iota` from columns to rows.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasicSet {
    pub iota: Vec<IotaEntry>,
}

impl BasicSet {
    /// The image of `iota`, in row order.
    pub fn labels(&self) -> Vec<&str> {
        let mut v: Vec<&IotaEntry> = self.iota.iter().collect();
        v.sort_by_key(|e| e.row_index);
        v.into_iter().map(|e| e.row.as_str()).collect()
    }

    pub fn label_set(&self) -> BTreeSet<&str> {
        self.iota.iter().map(|e| e.row.as_str()).collect()
    }

    pub fn row_indices(&self) -> Vec<usize> {
        self.iota.iter().map(|e| e.row_index).collect()
    }
}

fn no_set(d: &LabeledDecompMatrix, j: usize, reason: NoCanonicalReason) -> BasicSetError {
    BasicSetError::NoCanonicalSet {
        column: d.cols[j].clone(),
        reason,
    }
}

/// For each column `μ`, `a'(μ)` is the least a-invariant of a row with a
/// nonzero entry in `μ`; `iota(μ)` is the unique such row, which must carry
/// multiplicity one. Every other nonzero entry must lie strictly above
/// `a'(μ)`, and `iota` must be injective.
pub fn canonical_basic_set(d: &LabeledDecompMatrix) -> Result<BasicSet, BasicSetError> {
    let mut iota = Vec::with_capacity(d.cols.len());
    for j in 0..d.cols.len() {
        let support: Vec<usize> = (0..d.rows.len()).filter(|&i| d.entry(i, j) != 0).collect();
        let a_min = support.iter().map(|&i| d.rows[i].a).min().expect("columns are nonzero");
        let minimizers: Vec<usize> = support.iter().copied().filter(|&i| d.rows[i].a == a_min).collect();
        if minimizers.len() > 1 {
            let rows = minimizers.iter().map(|&i| d.rows[i].label.clone()).collect();
            return Err(no_set(d, j, NoCanonicalReason::Tie { rows }));
        }
        let i = minimizers[0];
        if d.entry(i, j) != 1 {
            return Err(no_set(
                d,
                j,
                NoCanonicalReason::MultiplicityNotOne {
                    row: d.rows[i].label.clone(),
                    multiplicity: d.entry(i, j),
                },
            ));
        }
        iota.push(i);
    }
    verify_basic_set(d, &iota)
}

/// Checks a proposed `iota` (one row index per column) against both
/// defining conditions and injectivity.
pub fn verify_basic_set(d: &LabeledDecompMatrix, iota: &[usize]) -> Result<BasicSet, BasicSetError> {
    if iota.len() != d.cols.len() || iota.iter().any(|&i| i >= d.rows.len()) {
        return Err(BasicSetError::InvalidMatrix("iota does not match the matrix shape".into()));
    }
    let mut owner: BTreeMap<usize, usize> = BTreeMap::new();
    for (j, &chosen) in iota.iter().enumerate() {
        if d.entry(chosen, j) != 1 {
            return Err(no_set(
                d,
                j,
                NoCanonicalReason::MultiplicityNotOne {
                    row: d.rows[chosen].label.clone(),
                    multiplicity: d.entry(chosen, j),
                },
            ));
        }
        let a_col = d.rows[chosen].a;
        if let Some(i) = (0..d.rows.len()).find(|&i| i != chosen && d.entry(i, j) != 0 && d.rows[i].a <= a_col) {
            return Err(no_set(
                d,
                j,
                NoCanonicalReason::SecondConditionViolated {
                    row: d.rows[i].label.clone(),
                },
            ));
        }
        if let Some(&k) = owner.get(&chosen) {
            return Err(no_set(
                d,
                j,
                NoCanonicalReason::NotInjective {
                    row: d.rows[chosen].label.clone(),
                    other_column: d.cols[k].clone(),
                },
            ));
        }
        owner.insert(chosen, j);
    }
    let iota = iota
        .iter()
        .enumerate()
        .map(|(j, &i)| IotaEntry {
            column: d.cols[j].clone(),
            row: d.rows[i].label.clone(),
            row_index: i,
            a: d.rows[i].a,
        })
        .collect();
    Ok(BasicSet { iota })
}

/// Row labels of the `G2` table, in table order, with their a-invariants.
pub const G2_ROWS: [(&str, u64); 6] = [
    ("ind", 0),
    ("eps1", 1),
    ("rho+", 3),
    ("rho-", 3),
    ("eps2", 7),
    ("eps", 12),
];

/// The decomposition matrix of the `G2(u^3, u)` algebra at `u` a primitive
/// `e`-th root of unity. Columns are labelled `1..k` positionally.
pub fn g2_decomposition_table(e: u32) -> LabeledDecompMatrix {
    let table: &[&str; 6] = match e {
        2 => &["100", "100", "010", "001", "100", "100"],
        3 => &["1000", "0100", "0110", "1001", "0010", "0001"],
        6 => &["100", "010", "001", "110", "100", "010"],
        12 => &["10000", "01000", "10100", "00010", "00001", "00100"],
        _ => &["100000", "010000", "001000", "000100", "000010", "000001"],
    };
    let entries: Vec<Vec<u64>> = table
        .iter()
        .map(|r| r.bytes().map(|b| u64::from(b - b'0')).collect())
        .collect();
    let rows = G2_ROWS.iter().map(|&(l, a)| RowLabel::new(l, a)).collect();
    let cols = (1..=entries[0].len()).map(|j| j.to_string()).collect();
    LabeledDecompMatrix::new(rows, cols, entries).expect("built-in table is valid")
}

/// Outcome of [`beta_factorization`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct FactorReport {
    pub iota: BasicSet,
    pub iota_root: BasicSet,
    /// `(column of the full matrix, column of the root-of-unity matrix)`
    pub beta: Vec<(String, String)>,
    pub sets_equal: bool,
}

/// Checks `full = root * dprime`, extracts both canonical basic sets,
/// builds `beta` and confirms `iota = iota_root ∘ beta`.
pub fn beta_factorization(
    full: &LabeledDecompMatrix,
    root: &LabeledDecompMatrix,
    dprime: &[Vec<u64>],
) -> Result<FactorReport, BasicSetError> {
    if full.rows != root.rows {
        return Err(BasicSetError::RowMismatch);
    }
    let (nf, nr) = (full.cols.len(), root.cols.len());
    if nf != nr {
        return Err(BasicSetError::ColumnCountMismatch { full: nf, root: nr });
    }
    if dprime.len() != nr || dprime.iter().any(|r| r.len() != nf) {
        return Err(BasicSetError::InvalidMatrix(format!("d' must be {nr}x{nf}")));
    }
    for i in 0..full.rows.len() {
        for j in 0..nf {
            let product: u64 = (0..nr).map(|k| root.entry(i, k) * dprime[k][j]).sum();
            if product != full.entry(i, j) {
                return Err(BasicSetError::ProductMismatch {
                    row: full.rows[i].label.clone(),
                    column: full.cols[j].clone(),
                    expected: full.entry(i, j),
                    actual: product,
                });
            }
        }
    }
    let iota = canonical_basic_set(full)?;
    let iota_root = canonical_basic_set(root)?;
    let mut beta = Vec::with_capacity(nf);
    for (mu, entry) in iota.iota.iter().enumerate() {
        let candidates: Vec<usize> = (0..nr)
            .filter(|&nu| root.entry(entry.row_index, nu) != 0 && dprime[nu][mu] != 0)
            .collect();
        if candidates.len() != 1 {
            return Err(BasicSetError::BetaNotUnique {
                column: full.cols[mu].clone(),
                candidates: candidates.len(),
            });
        }
        let nu = candidates[0];
        let via_root = &iota_root.iota[nu];
        if via_root.row_index != entry.row_index {
            return Err(BasicSetError::BasicSetsDiffer {
                column: full.cols[mu].clone(),
                full: entry.row.clone(),
                root: via_root.row.clone(),
            });
        }
        beta.push((full.cols[mu].clone(), root.cols[nu].clone()));
    }
    let sets_equal = iota.label_set() == iota_root.label_set();
    Ok(FactorReport {
        iota,
        iota_root,
        beta,
        sets_equal,
    })
}

/// Which branch of the catalog answered a query.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum CatalogFamily {
    G2Printed,
    G2Generic,
    TypeAEqual,
    TypeBUnitary,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", tag = "status")]
pub enum CatalogEntry {
    Catalogued { family: CatalogFamily, labels: Vec<String> },
    NotCatalogued { reference: String },
}

fn not_catalogued(reference: &str) -> CatalogEntry {
    CatalogEntry::NotCatalogued {
        reference: reference.to_string(),
    }
}

/// Known canonical basic sets. `rank` is the Coxeter rank; `weights` may
/// be given in full or, for type `B`, as the pair `[L(s1), L(s2)]`.
pub fn basic_set_catalog(kind: CoxeterType, rank: usize, weights: &[u32], e: u32) -> Result<CatalogEntry, BasicSetError> {
    if e < 2 {
        return Err(BasicSetError::InvalidMatrix(format!("e must be at least 2, got {e}")));
    }
    match kind {
        CoxeterType::G2 if weights == [3, 1] => {
            let d = g2_decomposition_table(e);
            let set = canonical_basic_set(&d)?;
            let family = if matches!(e, 2 | 3 | 6 | 12) {
                CatalogFamily::G2Printed
            } else {
                CatalogFamily::G2Generic
            };
            Ok(CatalogEntry::Catalogued {
                family,
                labels: set.labels().into_iter().map(str::to_string).collect(),
            })
        }
        CoxeterType::A if weights.len() == rank && weights.iter().all(|&w| w == 1) => {
            let labels = list_partitions(rank as u32 + 1)?
                .into_iter()
                .filter(|l| is_e_regular(l, e))
                .map(|l| l.to_string())
                .collect();
            Ok(CatalogEntry::Catalogued {
                family: CatalogFamily::TypeAEqual,
                labels,
            })
        }
        CoxeterType::B => {
            let m = rank as u32;
            let full: Vec<u32> = match weights {
                [b, a] if rank != 2 => std::iter::once(*b).chain(std::iter::repeat(*a).take(rank - 1)).collect(),
                _ => weights.to_vec(),
            };
            if !(0..2).any(|s| full == unitary_weights(m as usize, s)) {
                return Ok(not_catalogued("non-unitary weights for type B"));
            }
            if e == 2 || e % 4 == 2 {
                return Ok(not_catalogued(
                    "e = 2 or twice an odd number: see Geck-Jacon, Thm 3.4, and the FLOTW bipartitions",
                ));
            }
            let labels = list_bipartitions(m)?
                .into_iter()
                .filter(|b| is_e_regular(&b.first, e) && is_e_regular(&b.second, e))
                .map(|b| b.to_string())
                .collect();
            Ok(CatalogEntry::Catalogued {
                family: CatalogFamily::TypeBUnitary,
                labels,
            })
        }
        _ => Ok(not_catalogued("no catalogued family for this datum")),
    }
}

/// A nonzero entry that a triangularity rule forbids, or a diagonal entry
/// that should be one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Violation {
    pub row: usize,
    pub col: usize,
    pub row_label: String,
    pub col_label: String,
    pub value: u64,
}

fn violation(d: &LabeledDecompMatrix, i: usize, j: usize) -> Violation {
    Violation {
        row: i,
        col: j,
        row_label: d.rows[i].label.clone(),
        col_label: d.cols[j].clone(),
        value: d.entry(i, j),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct UnitriangularReport {
    /// Violations of: diagonal one, off-diagonal nonzero only if row ⊴ column.
    pub dominance_violations: Vec<Violation>,
    /// Violations of: diagonal one, off-diagonal nonzero only if
    /// `n(column) < n(row)`.
    pub n_violations: Vec<Violation>,
    /// The dominance form implies the n-form on this matrix.
    pub consistent: bool,
    pub pass: bool,
}

/// Checks a square matrix whose rows and columns carry the same list of
/// partition labels.
pub fn verify_unitriangular(d: &LabeledDecompMatrix) -> Result<UnitriangularReport, BasicSetError> {
    let n = d.rows.len();
    if d.cols.len() != n || d.rows.iter().zip(&d.cols).any(|(r, c)| &r.label != c) {
        return Err(BasicSetError::InvalidMatrix(
            "rows and columns must carry the same labels in the same order".into(),
        ));
    }
    let parts: Vec<Partition> = d.cols.iter().map(|c| c.parse()).collect::<Result<_, _>>()?;
    let nvals: Vec<u64> = parts.iter().map(n_invariant).collect();
    let mut dominance_violations = Vec::new();
    let mut n_violations = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let v = d.entry(i, j);
            if i == j {
                if v != 1 {
                    dominance_violations.push(violation(d, i, j));
                    n_violations.push(violation(d, i, j));
                }
                continue;
            }
            if v == 0 {
                continue;
            }
            if !dominates(&parts[i], &parts[j])? {
                dominance_violations.push(violation(d, i, j));
            }
            if nvals[j] >= nvals[i] {
                n_violations.push(violation(d, i, j));
            }
        }
    }
    let consistent = !dominance_violations.is_empty() || n_violations.is_empty();
    let pass = dominance_violations.is_empty() && n_violations.is_empty();
    Ok(UnitriangularReport {
        dominance_violations,
        n_violations,
        consistent,
        pass,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ShapeBlock {
    pub class: String,
    pub d: u64,
    pub rows: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ShapeReport {
    /// Blocks in increasing order of d-invariant.
    pub blocks: Vec<ShapeBlock>,
    /// Diagonal blocks that are not identity matrices.
    pub diagonal_violations: Vec<Violation>,
    /// Nonzero entries outside the allowed lower block triangle.
    pub off_diagonal_violations: Vec<Violation>,
    pub pass: bool,
}

/// Groups rows by class label, orders the groups by d-invariant and checks
/// that diagonal blocks are identities and that an off-diagonal entry is
/// nonzero only when the column's d-invariant is below the row's. Columns
/// correspond positionally to rows.
pub fn verify_conjecture_shape(d: &LabeledDecompMatrix) -> Result<ShapeReport, BasicSetError> {
    let n = d.rows.len();
    if d.cols.len() != n {
        return Err(BasicSetError::InvalidMatrix("matrix must be square".into()));
    }
    let mut meta = Vec::with_capacity(n);
    for r in &d.rows {
        match (&r.class, r.d) {
            (Some(c), Some(dv)) => meta.push((dv, c.clone())),
            _ => {
                return Err(BasicSetError::InvalidMatrix(format!(
                    "row `{}` lacks class or d",
                    r.label
                )))
            }
        }
    }
    let mut by_class: BTreeMap<(u64, String), Vec<usize>> = BTreeMap::new();
    for (i, key) in meta.iter().enumerate() {
        by_class.entry(key.clone()).or_default().push(i);
    }
    let class_d: BTreeMap<&str, u64> = meta.iter().map(|(dv, c)| (c.as_str(), *dv)).collect();
    if class_d.len() != by_class.len() {
        return Err(BasicSetError::InvalidMatrix("a class carries two d-invariants".into()));
    }
    let blocks = by_class
        .iter()
        .map(|((dv, c), rows)| ShapeBlock {
            class: c.clone(),
            d: *dv,
            rows: rows.iter().map(|&i| d.rows[i].label.clone()).collect(),
        })
        .collect();
    let mut diagonal_violations = Vec::new();
    let mut off_diagonal_violations = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let v = d.entry(i, j);
            if meta[i].1 == meta[j].1 {
                if v != u64::from(i == j) {
                    diagonal_violations.push(violation(d, i, j));
                }
            } else if v != 0 && meta[j].0 >= meta[i].0 {
                off_diagonal_violations.push(violation(d, i, j));
            }
        }
    }
    let pass = diagonal_violations.is_empty() && off_diagonal_violations.is_empty();
    Ok(ShapeReport {
        blocks,
        diagonal_violations,
        off_diagonal_violations,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn matrix(a: &[u64], entries: Vec<Vec<u64>>) -> LabeledDecompMatrix {
        let rows = a.iter().enumerate().map(|(i, &a)| RowLabel::new(format!("r{i}"), a)).collect();
        let cols = (0..entries[0].len()).map(|j| format!("c{j}")).collect();
        LabeledDecompMatrix::new(rows, cols, entries).unwrap()
    }

    fn set(labels: &[&str]) -> BTreeSet<String> {
        labels.iter().map(|s| s.to_string()).collect()
    }

    fn owned(b: &BasicSet) -> BTreeSet<String> {
        b.label_set().into_iter().map(str::to_string).collect()
    }

    #[test]
    fn g2_printed_sets() {
        let expected: [(u32, &[&str]); 4] = [
            (2, &["ind", "rho+", "rho-"]),
            (3, &["ind", "eps1", "rho+", "rho-"]),
            (6, &["ind", "eps1", "rho+"]),
            (12, &["ind", "eps1", "rho+", "rho-", "eps2"]),
        ];
        for (e, labels) in expected {
            let b = canonical_basic_set(&g2_decomposition_table(e)).unwrap();
            assert_eq!(owned(&b), set(labels), "e = {e}");
            assert_eq!(b.iota.len(), labels.len());
        }
        for e in [5, 7, 13] {
            let b = canonical_basic_set(&g2_decomposition_table(e)).unwrap();
            assert_eq!(b.labels(), ["ind", "eps1", "rho+", "rho-", "eps2", "eps"]);
        }
    }

    #[test]
    fn g2_table_rows() {
        let t = g2_decomposition_table(3);
        assert_eq!(t.entries()[t.row_index("rho-").unwrap()], vec![1, 0, 0, 1]);
        let t = g2_decomposition_table(12);
        assert_eq!(t.entries()[t.row_index("rho+").unwrap()], vec![1, 0, 1, 0, 0]);
        assert_eq!(g2_decomposition_table(7).cols().len(), 6);
        assert_eq!(g2_decomposition_table(6).cols().len(), 3);
    }

    #[test]
    fn failure_reasons() {
        let tie = matrix(&[0, 0], vec![vec![1], vec![1]]);
        assert!(matches!(
            canonical_basic_set(&tie),
            Err(BasicSetError::NoCanonicalSet { reason: NoCanonicalReason::Tie { .. }, .. })
        ));
        let mult = matrix(&[0, 1], vec![vec![2], vec![1]]);
        assert!(matches!(
            canonical_basic_set(&mult),
            Err(BasicSetError::NoCanonicalSet { reason: NoCanonicalReason::MultiplicityNotOne { multiplicity: 2, .. }, .. })
        ));
        let shared = matrix(&[0, 1], vec![vec![1, 1], vec![0, 1]]);
        assert!(matches!(
            canonical_basic_set(&shared),
            Err(BasicSetError::NoCanonicalSet { reason: NoCanonicalReason::NotInjective { .. }, .. })
        ));
        // a supplied iota choosing the higher row leaves a lower nonzero entry
        let m = matrix(&[0, 1], vec![vec![1, 0], vec![1, 1]]);
        assert!(matches!(
            verify_basic_set(&m, &[1, 1]),
            Err(BasicSetError::NoCanonicalSet { reason: NoCanonicalReason::SecondConditionViolated { .. }, .. })
        ));
        assert_eq!(
            canonical_basic_set(&m).unwrap().row_indices(),
            vec![0, 1]
        );
    }

    #[test]
    fn identity_gives_everything() {
        let m = matrix(&[2, 0, 1], vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        let b = canonical_basic_set(&m).unwrap();
        assert_eq!(b.row_indices(), vec![0, 1, 2]);
    }

    #[test]
    fn matrix_validation() {
        let rows = vec![RowLabel::new("x", 0)];
        assert!(LabeledDecompMatrix::new(rows.clone(), vec!["c".into()], vec![vec![0]]).is_err());
        assert!(LabeledDecompMatrix::new(rows.clone(), vec!["c".into()], vec![vec![1, 1]]).is_err());
        assert!(LabeledDecompMatrix::new(rows, vec!["c".into(), "c".into()], vec![vec![1, 1]]).is_err());
        assert!(LabeledDecompMatrix::from_json(r#"{"rows":[{"label":"x","a":0}],"cols":["c"],"entries":[[0]]}"#).is_err());
    }

    #[test]
    fn canonical_json_round_trip() {
        let mut t = g2_decomposition_table(6);
        t.rows[0].class = Some("1".into());
        t.rows[0].d = Some(0);
        let text = t.to_canonical_json();
        let back = LabeledDecompMatrix::from_json(&text).unwrap();
        assert_eq!(back, t);
        assert_eq!(back.to_canonical_json(), text);
        assert!(text.starts_with("{\n  \"rows\": [\n    {\"label\": \"ind\", \"a\": 0, \"class\": \"1\", \"d\": 0},\n"));
    }

    #[test]
    fn factorization_examples() {
        let full = g2_decomposition_table(6);
        let id3 = vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]];
        let r = beta_factorization(&full, &full, &id3).unwrap();
        assert!(r.sets_equal);
        assert_eq!(r.beta[2], ("3".to_string(), "3".to_string()));

        // identity-shaped root matrix, d' = the full matrix
        let rows = vec![RowLabel::new("x", 0), RowLabel::new("y", 1)];
        let cols = vec!["p".to_string(), "q".to_string()];
        let root = LabeledDecompMatrix::new(rows.clone(), cols.clone(), vec![vec![1, 0], vec![0, 1]]).unwrap();
        let full = LabeledDecompMatrix::new(rows, cols, vec![vec![1, 0], vec![1, 1]]).unwrap();
        let r = beta_factorization(&full, &root, full.entries()).unwrap();
        assert!(r.sets_equal);

        let bad = vec![vec![1, 0], vec![0, 1]];
        assert!(matches!(
            beta_factorization(&full, &root, &bad),
            Err(BasicSetError::ProductMismatch { .. })
        ));
        let g = g2_decomposition_table(2);
        assert!(matches!(
            beta_factorization(&g, &g2_decomposition_table(6), &id3),
            Err(BasicSetError::ProductMismatch { .. })
        ));
        assert!(matches!(
            beta_factorization(&g2_decomposition_table(3), &g2_decomposition_table(6), &id3),
            Err(BasicSetError::ColumnCountMismatch { full: 4, root: 3 })
        ));
    }

    #[test]
    fn catalog_examples() {
        let labels = |c: CatalogEntry| match c {
            CatalogEntry::Catalogued { labels, .. } => labels,
            other => panic!("{other:?}"),
        };
        assert_eq!(
            labels(basic_set_catalog(CoxeterType::G2, 2, &[3, 1], 2).unwrap()),
            ["ind", "rho+", "rho-"]
        );
        assert_eq!(labels(basic_set_catalog(CoxeterType::A, 3, &[1, 1, 1], 2).unwrap()), ["4", "3,1"]);
        assert!(matches!(
            basic_set_catalog(CoxeterType::B, 2, &[1, 2], 6).unwrap(),
            CatalogEntry::NotCatalogued { .. }
        ));
        assert!(matches!(
            basic_set_catalog(CoxeterType::B, 3, &[3, 2], 2).unwrap(),
            CatalogEntry::NotCatalogued { .. }
        ));
        assert_eq!(labels(basic_set_catalog(CoxeterType::B, 1, &[1], 3).unwrap()), ["1|", "|1"]);
        assert_eq!(labels(basic_set_catalog(CoxeterType::B, 2, &[3, 2], 4).unwrap()).len(), 5);
        assert!(matches!(
            basic_set_catalog(CoxeterType::B, 2, &[1, 1], 4).unwrap(),
            CatalogEntry::NotCatalogued { .. }
        ));
        assert!(basic_set_catalog(CoxeterType::A, 2, &[1, 1], 1).is_err());
    }

    fn partition_matrix(n: u32, entries: impl Fn(&Partition, &Partition) -> u64) -> LabeledDecompMatrix {
        let parts = list_partitions(n).unwrap();
        let rows = parts
            .iter()
            .map(|p| RowLabel {
                label: p.to_string(),
                a: n_invariant(p),
                class: Some(p.to_string()),
                d: Some(n_invariant(p)),
            })
            .collect();
        let cols = parts.iter().map(|p| p.to_string()).collect();
        let e = parts.iter().map(|l| parts.iter().map(|m| entries(l, m)).collect()).collect();
        LabeledDecompMatrix::new(rows, cols, e).unwrap()
    }

    #[test]
    fn unitriangular_examples() {
        let id = partition_matrix(4, |l, m| u64::from(l == m));
        let r = verify_unitriangular(&id).unwrap();
        assert!(r.pass && r.consistent);

        let n = 4;
        let bad = partition_matrix(n, |l, m| u64::from(l == m || (l == &Partition::row(n) && m == &Partition::column(n))));
        let r = verify_unitriangular(&bad).unwrap();
        assert!(!r.pass);
        assert_eq!(r.dominance_violations.len(), 1);
        assert_eq!((r.dominance_violations[0].row, r.dominance_violations[0].col), (0, 4));

        let lower = partition_matrix(n, |l, m| u64::from(l == m) + 2 * u64::from(l != m && dominates(l, m).unwrap()));
        assert!(verify_unitriangular(&lower).unwrap().pass);
        assert!(verify_conjecture_shape(&lower).unwrap().pass);
    }

    #[test]
    fn shape_examples() {
        let mut rows = vec![RowLabel::new("x", 0), RowLabel::new("y", 0), RowLabel::new("z", 2)];
        for (r, (c, d)) in rows.iter_mut().zip([("A", 0), ("A", 0), ("B", 2)]) {
            r.class = Some(c.into());
            r.d = Some(d);
        }
        let cols: Vec<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
        let ok = LabeledDecompMatrix::new(rows.clone(), cols.clone(), vec![vec![1, 0, 0], vec![0, 1, 0], vec![3, 1, 1]]).unwrap();
        let r = verify_conjecture_shape(&ok).unwrap();
        assert!(r.pass);
        assert_eq!(r.blocks.len(), 2);
        assert_eq!(r.blocks[0].rows, ["x", "y"]);

        let above = LabeledDecompMatrix::new(rows.clone(), cols.clone(), vec![vec![1, 0, 1], vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
        let r = verify_conjecture_shape(&above).unwrap();
        assert!(!r.pass);
        assert_eq!((r.off_diagonal_violations[0].row, r.off_diagonal_violations[0].col), (0, 2));

        let not_identity = LabeledDecompMatrix::new(rows.clone(), cols.clone(), vec![vec![1, 1, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
        let r = verify_conjecture_shape(&not_identity).unwrap();
        assert_eq!(r.diagonal_violations.len(), 1);

        let mut bare = rows;
        bare[1].d = None;
        let m = LabeledDecompMatrix::new(bare, cols, vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
        assert!(verify_conjecture_shape(&m).is_err());
    }
}
