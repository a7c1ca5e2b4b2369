//! Random instance generators shared by the property suites and the
//! acceptance runner.
#![allow(dead_code)]

use std::sync::Arc;

use hecke_core::basicsets::{LabeledDecompMatrix, RowLabel};
use hecke_core::combinat::{dominates, list_partitions, n_invariant, Partition};
use hecke_core::coxeter::CoxeterDatum;
use hecke_core::exactalg::LaurentPoly;
use hecke_core::hecke::HeckeElement;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::Rng;

pub fn random_poly(rng: &mut StdRng) -> LaurentPoly {
    let terms = rng.gen_range(1..=3);
    LaurentPoly::from_terms((0..terms).map(|_| (rng.gen_range(-3..=3), rng.gen_range(-2..=4))))
}

pub fn random_hecke(rng: &mut StdRng, d: &Arc<CoxeterDatum>) -> HeckeElement {
    let terms = rng.gen_range(1..=3);
    let mut h = HeckeElement::zero(d);
    for _ in 0..terms {
        let w = d.element(rng.gen_range(0..d.order())).unwrap();
        h = &h + &HeckeElement::monomial(d, w, random_poly(rng));
    }
    h
}

/// A factorization instance `full = root * dprime` whose canonical
/// structure is built in: every column of `root` has a unique row of least
/// a-invariant with entry one, other entries sit strictly above it, and
/// `dprime` is unitriangular for the a-invariants of the chosen rows. The
/// columns of `root` are shuffled so that `beta` is not the identity.
pub struct FactorInstance {
    pub full: LabeledDecompMatrix,
    pub root: LabeledDecompMatrix,
    pub dprime: Vec<Vec<u64>>,
    /// `basic[nu]` is the chosen row of the unshuffled column `nu`.
    pub basic: Vec<usize>,
    /// Root column holding unshuffled column `nu`.
    pub shuffle: Vec<usize>,
}

pub fn factor_instance(rng: &mut StdRng) -> FactorInstance {
    let r = rng.gen_range(2..=8);
    let a: Vec<u64> = (0..r).map(|_| rng.gen_range(0..6)).collect();
    let k = rng.gen_range(1..=r);
    let mut order: Vec<usize> = (0..r).collect();
    order.shuffle(rng);
    let basic: Vec<usize> = order[..k].to_vec();

    let mut de = vec![vec![0u64; k]; r];
    for (nu, &b) in basic.iter().enumerate() {
        de[b][nu] = 1;
        for lambda in 0..r {
            if a[lambda] > a[b] && rng.gen_bool(0.4) {
                de[lambda][nu] = rng.gen_range(1..=2);
            }
        }
    }
    let mut dp = vec![vec![0u64; k]; k];
    for nu in 0..k {
        dp[nu][nu] = 1;
        for mu in 0..k {
            if a[basic[nu]] > a[basic[mu]] && rng.gen_bool(0.4) {
                dp[nu][mu] = rng.gen_range(1..=2);
            }
        }
    }
    let full: Vec<Vec<u64>> = (0..r)
        .map(|i| (0..k).map(|mu| (0..k).map(|nu| de[i][nu] * dp[nu][mu]).sum()).collect())
        .collect();

    let mut shuffle: Vec<usize> = (0..k).collect();
    shuffle.shuffle(rng);
    let mut root = vec![vec![0u64; k]; r];
    let mut dprime = vec![vec![0u64; k]; k];
    for nu in 0..k {
        for i in 0..r {
            root[i][shuffle[nu]] = de[i][nu];
        }
        dprime[shuffle[nu]] = dp[nu].clone();
    }

    let rows: Vec<RowLabel> = a.iter().enumerate().map(|(i, &a)| RowLabel::new(format!("r{i}"), a)).collect();
    let labels = |p: &str| (0..k).map(|j| format!("{p}{j}")).collect::<Vec<_>>();
    FactorInstance {
        full: LabeledDecompMatrix::new(rows.clone(), labels("c"), full).unwrap(),
        root: LabeledDecompMatrix::new(rows, labels("e"), root).unwrap(),
        dprime,
        basic,
        shuffle,
    }
}

/// Rows and columns labelled by the partitions of `n`; `class` groups rows
/// by `n(λ)` and `d = n(λ)`.
pub fn partition_rows(n: u32) -> (Vec<Partition>, Vec<RowLabel>) {
    let parts = list_partitions(n).unwrap();
    let rows = parts
        .iter()
        .map(|p| RowLabel {
            label: p.to_string(),
            a: n_invariant(p),
            class: Some(format!("n={}", n_invariant(p))),
            d: Some(n_invariant(p)),
        })
        .collect();
    (parts, rows)
}

fn build(rows: &[RowLabel], entries: Vec<Vec<u64>>) -> LabeledDecompMatrix {
    let cols = rows.iter().map(|r| r.label.clone()).collect();
    LabeledDecompMatrix::new(rows.to_vec(), cols, entries).unwrap()
}

/// A matrix with ones on the diagonal and random entries only where the
/// row partition is dominated by the column partition.
pub fn unitriangular_instance(rng: &mut StdRng, n: u32) -> LabeledDecompMatrix {
    let (parts, rows) = partition_rows(n);
    let entries = parts
        .iter()
        .map(|l| {
            parts
                .iter()
                .map(|m| {
                    if l == m {
                        1
                    } else if dominates(l, m).unwrap() && rng.gen_bool(0.3) {
                        rng.gen_range(1..=3)
                    } else {
                        0
                    }
                })
                .collect()
        })
        .collect();
    build(&rows, entries)
}

/// Plants a nonzero entry at a position `(i, j)` with the row partition not
/// dominated by the column partition. Returns the matrix and `(i, j)`.
pub fn seed_violation(rng: &mut StdRng, d: &LabeledDecompMatrix) -> (LabeledDecompMatrix, usize, usize) {
    let parts: Vec<Partition> = d.cols().iter().map(|c| c.parse().unwrap()).collect();
    let bad: Vec<(usize, usize)> = (0..parts.len())
        .flat_map(|i| (0..parts.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| i != j && !dominates(&parts[i], &parts[j]).unwrap())
        .collect();
    let &(i, j) = bad.choose(rng).expect("n >= 2 has non-dominated pairs");
    let mut entries = d.entries().to_vec();
    entries[i][j] = rng.gen_range(1..=3);
    (build(d.rows(), entries), i, j)
}
