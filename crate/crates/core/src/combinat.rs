//! Partitions, bipartitions, dominance, e-regularity and the 2-runner abacus.
//!
//! ## 2-quotient convention
//!
//! A partition `λ` of `n` is written as a beta-set with `N` beads, where `N`
//! is the least integer with `N >= len(λ)` and `N ≡ n (mod 2)`. Beads at odd
//! positions form the first runner and beads at even positions the second.
//! The 2-quotient is `(first runner, second runner)`. Under this convention
//! `((m), ∅)` embeds as `(n)` and `(∅, (1^m))` as `(1^n)` for both core sizes.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Largest size accepted by the enumeration routines.
pub const MAX_SIZE: u32 = 60;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CombinatError {
    #[error("partitions of different sizes: {0} and {1}")]
    SizeMismatch(u32, u32),
    #[error("size {0} exceeds the enumeration cap {MAX_SIZE}")]
    SizeTooLarge(u32),
    #[error("invalid partition `{0}`")]
    InvalidPartition(String),
    #[error("s must be 0 or 1, got {0}")]
    InvalidCoreSize(u32),
    #[error("2-core of {partition} is not the staircase of size {s}")]
    WrongCore { partition: String, s: u32 },
}

/// A weakly decreasing sequence of positive integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Result<Self, CombinatError> {
        // trailing zeros are harmless
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) || parts.contains(&0) {
            return Err(CombinatError::InvalidPartition(format!("{parts:?}")));
        }
        Ok(Self { parts })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    /// `(n)`
    pub fn row(n: u32) -> Self {
        if n == 0 {
            Self::empty()
        } else {
            Self { parts: vec![n] }
        }
    }

    /// `(1^n)`
    pub fn column(n: u32) -> Self {
        Self { parts: vec![1; n as usize] }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// Beta-numbers with `beads` beads, largest first.
    fn beta_set(&self, beads: usize) -> Vec<u32> {
        debug_assert!(beads >= self.len());
        (0..beads)
            .map(|i| self.parts.get(i).copied().unwrap_or(0) + (beads - 1 - i) as u32)
            .collect()
    }

    /// Inverse of [`Self::beta_set`] for a strictly decreasing bead list.
    fn from_beta_set(beta: &[u32]) -> Self {
        let n = beta.len();
        let parts = beta
            .iter()
            .enumerate()
            .map(|(i, &b)| b - (n - 1 - i) as u32)
            .filter(|&p| p > 0)
            .collect();
        Self { parts }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(u32::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for Partition {
    type Err = CombinatError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Self::empty());
        }
        let parts = s
            .split(',')
            .map(|p| p.trim().parse::<u32>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| CombinatError::InvalidPartition(s.to_string()))?;
        if parts.windows(2).any(|w| w[0] < w[1]) || parts.contains(&0) {
            return Err(CombinatError::InvalidPartition(s.to_string()));
        }
        Ok(Self { parts })
    }
}

/// A pair of partitions.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Bipartition {
    pub first: Partition,
    pub second: Partition,
}

impl Bipartition {
    pub fn new(first: Partition, second: Partition) -> Self {
        Self { first, second }
    }

    pub fn size(&self) -> u32 {
        self.first.size() + self.second.size()
    }

    /// The label of the index character of `B_m`: `((m), ∅)`.
    pub fn index_label(m: u32) -> Self {
        Self::new(Partition::row(m), Partition::empty())
    }

    /// The label of the sign character of `B_m`: `(∅, (1^m))`.
    pub fn sign_label(m: u32) -> Self {
        Self::new(Partition::empty(), Partition::column(m))
    }
}

impl fmt::Display for Bipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|{}", self.first, self.second)
    }
}

impl FromStr for Bipartition {
    type Err = CombinatError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (a, b) = s
            .split_once('|')
            .ok_or_else(|| CombinatError::InvalidPartition(s.to_string()))?;
        Ok(Self::new(a.parse()?, b.parse()?))
    }
}

macro_rules! string_serde {
    ($t:ty) => {
        impl Serialize for $t {
            fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
                serializer.collect_str(self)
            }
        }

        impl<'de> Deserialize<'de> for $t {
            fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
                let s = String::deserialize(deserializer)?;
                s.parse().map_err(serde::de::Error::custom)
            }
        }
    };
}

string_serde!(Partition);
string_serde!(Bipartition);

/// `n(λ) = Σ (i-1) λ_i`
pub fn n_invariant(lambda: &Partition) -> u64 {
    lambda
        .parts
        .iter()
        .enumerate()
        .map(|(i, &p)| i as u64 * p as u64)
        .sum()
}

/// Whether `lambda ⊴ mu` in the dominance order.
pub fn dominates(lambda: &Partition, mu: &Partition) -> Result<bool, CombinatError> {
    if lambda.size() != mu.size() {
        return Err(CombinatError::SizeMismatch(lambda.size(), mu.size()));
    }
    let (mut a, mut b) = (0u32, 0u32);
    for i in 0..lambda.len().max(mu.len()) {
        a += lambda.parts.get(i).copied().unwrap_or(0);
        b += mu.parts.get(i).copied().unwrap_or(0);
        if a > b {
            return Ok(false);
        }
    }
    Ok(true)
}

/// No part value occurs `e` or more times.
pub fn is_e_regular(lambda: &Partition, e: u32) -> bool {
    let parts = &lambda.parts;
    let mut i = 0;
    while i < parts.len() {
        let j = parts[i..].iter().take_while(|&&p| p == parts[i]).count();
        if j as u32 >= e {
            return false;
        }
        i += j;
    }
    true
}

/// All partitions of `n` in reverse lexicographic order.
pub fn list_partitions(n: u32) -> Result<Vec<Partition>, CombinatError> {
    if n > MAX_SIZE {
        return Err(CombinatError::SizeTooLarge(n));
    }
    fn go(rest: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition { parts: prefix.clone() });
            return;
        }
        for p in (1..=max.min(rest)).rev() {
            prefix.push(p);
            go(rest - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    Ok(out)
}

/// All bipartitions of total size `m`: by decreasing size of the first
/// component, then reverse lexicographically in each component.
pub fn list_bipartitions(m: u32) -> Result<Vec<Bipartition>, CombinatError> {
    if m > MAX_SIZE {
        return Err(CombinatError::SizeTooLarge(m));
    }
    let mut out = Vec::new();
    for k in (0..=m).rev() {
        let firsts = list_partitions(k)?;
        let seconds = list_partitions(m - k)?;
        for a in &firsts {
            for b in &seconds {
                out.push(Bipartition::new(a.clone(), b.clone()));
            }
        }
    }
    Ok(out)
}

fn bead_count(lambda: &Partition) -> usize {
    let len = lambda.len();
    if (len as u32 + lambda.size()) % 2 == 0 {
        len
    } else {
        len + 1
    }
}

/// Splits the beta-set into (odd runner, even runner) bead positions,
/// each largest first.
fn runners(lambda: &Partition) -> (Vec<u32>, Vec<u32>) {
    let beta = lambda.beta_set(bead_count(lambda));
    let odd = beta.iter().filter(|&&b| b % 2 == 1).map(|b| b / 2).collect();
    let even = beta.iter().filter(|&&b| b % 2 == 0).map(|b| b / 2).collect();
    (odd, even)
}

pub fn two_core(lambda: &Partition) -> Partition {
    let (odd, even) = runners(lambda);
    let mut beta: Vec<u32> = (0..odd.len() as u32)
        .map(|i| 2 * i + 1)
        .chain((0..even.len() as u32).map(|i| 2 * i))
        .collect();
    beta.sort_unstable_by(|a, b| b.cmp(a));
    Partition::from_beta_set(&beta)
}

pub fn two_quotient(lambda: &Partition) -> Bipartition {
    let (odd, even) = runners(lambda);
    Bipartition::new(Partition::from_beta_set(&odd), Partition::from_beta_set(&even))
}

/// The partition of `2m + s` with 2-core of size `s` and 2-quotient `b`.
pub fn embed_bipartition(b: &Bipartition, s: u32) -> Result<Partition, CombinatError> {
    if s > 1 {
        return Err(CombinatError::InvalidCoreSize(s));
    }
    let k = b.first.len().max(b.second.len());
    let odd = b.first.beta_set(k + s as usize);
    let even = b.second.beta_set(k);
    let mut beta: Vec<u32> = odd
        .iter()
        .map(|p| 2 * p + 1)
        .chain(even.iter().map(|p| 2 * p))
        .collect();
    beta.sort_unstable_by(|a, b| b.cmp(a));
    Ok(Partition::from_beta_set(&beta))
}

/// Inverse of [`embed_bipartition`].
pub fn extract_bipartition(lambda: &Partition, s: u32) -> Result<Bipartition, CombinatError> {
    if s > 1 {
        return Err(CombinatError::InvalidCoreSize(s));
    }
    if two_core(lambda).size() != s {
        return Err(CombinatError::WrongCore {
            partition: lambda.to_string(),
            s,
        });
    }
    Ok(two_quotient(lambda))
}

/// The a-invariant for the unitary weights `(2s+1; 2, ..., 2)` on `B_m`,
/// read off as `n` of the embedded partition.
pub fn a_invariant_unitary(b: &Bipartition, s: u32) -> Result<u64, CombinatError> {
    Ok(n_invariant(&embed_bipartition(b, s)?))
}
