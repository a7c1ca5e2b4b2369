//! Faithful realizations used to enumerate a Coxeter group, plus the
//! breadth-first exploration that turns any of them into ShortLex tables.

use std::collections::HashMap;
use std::hash::Hash;

use num_integer::Integer;

use super::CoxeterError;
use crate::exactalg::CyclotomicInt;

/// A faithful right action of the free monoid on the generators.
pub(crate) trait Model {
    type State: Clone + Eq + Hash;
    fn identity(&self) -> Self::State;
    /// State of `x * s` given the state of `x`.
    fn act(&self, x: &Self::State, s: usize) -> Self::State;
}

/// `S_n` in one-line notation; generator `s` swaps positions `s, s+1`.
pub(crate) struct Symmetric {
    pub n: usize,
}

impl Model for Symmetric {
    type State = Vec<u8>;
    fn identity(&self) -> Vec<u8> {
        (0..self.n as u8).collect()
    }
    fn act(&self, x: &Vec<u8>, s: usize) -> Vec<u8> {
        let mut y = x.clone();
        y.swap(s, s + 1);
        y
    }
}

/// Signed permutations of `1..=m`; generator 0 negates the first entry,
/// generator `s >= 1` swaps positions `s-1, s`.
pub(crate) struct Hyperoctahedral {
    pub m: usize,
}

impl Model for Hyperoctahedral {
    type State = Vec<i8>;
    fn identity(&self) -> Vec<i8> {
        (1..=self.m as i8).collect()
    }
    fn act(&self, x: &Vec<i8>, s: usize) -> Vec<i8> {
        let mut y = x.clone();
        if s == 0 {
            y[0] = -y[0];
        } else {
            y.swap(s - 1, s);
        }
        y
    }
}

/// Dihedral group of order `2m` as rotations `R_k` and reflections
/// `F_k = R_k F_0`; generators are `F_0` and `F_1`.
pub(crate) struct Dihedral {
    pub m: u32,
}

impl Model for Dihedral {
    /// `(is_reflection, k)`
    type State = (bool, u32);
    fn identity(&self) -> (bool, u32) {
        (false, 0)
    }
    fn act(&self, &(refl, k): &(bool, u32), s: usize) -> (bool, u32) {
        let j = s as u32;
        if refl {
            // F_k F_j = R_{k-j}
            (false, (k + self.m - j) % self.m)
        } else {
            // R_k F_j = F_{k+j}
            (true, (k + j) % self.m)
        }
    }
}

/// Tits reflection representation with entries in `Z[zeta_N]`, where
/// `2 cos(pi/m) = zeta_{2m} + zeta_{2m}^{-1}`.
pub(crate) struct Reflection {
    rank: usize,
    order: u32,
    gens: Vec<Vec<CyclotomicInt>>,
}

impl Reflection {
    pub fn new(matrix: &[Vec<u32>]) -> Self {
        let rank = matrix.len();
        let mut order = 2u32;
        for row in matrix {
            for &m in row {
                order = order.lcm(&(2 * m));
            }
        }
        let two_cos = |m: u32| {
            let step = (order / (2 * m)) as i64;
            &CyclotomicInt::zeta_pow(order, step) + &CyclotomicInt::zeta_pow(order, -step)
        };
        let mut gens = Vec::with_capacity(rank);
        for s in 0..rank {
            // sigma_s(alpha_t) = alpha_t + 2cos(pi/m_st) alpha_s; column t is
            // the image of alpha_t.
            let mut mat = vec![CyclotomicInt::zero(order); rank * rank];
            for t in 0..rank {
                mat[t * rank + t] = CyclotomicInt::one(order);
            }
            for t in 0..rank {
                let coeff = if t == s {
                    CyclotomicInt::from_integer(order, (-2).into())
                } else {
                    two_cos(matrix[s][t])
                };
                let cur = mat[s * rank + t].clone();
                mat[s * rank + t] = &cur + &coeff;
            }
            gens.push(mat);
        }
        Self { rank, order, gens }
    }
}

impl Model for Reflection {
    type State = Vec<CyclotomicInt>;
    fn identity(&self) -> Self::State {
        let n = self.rank;
        (0..n * n)
            .map(|i| {
                if i / n == i % n {
                    CyclotomicInt::one(self.order)
                } else {
                    CyclotomicInt::zero(self.order)
                }
            })
            .collect()
    }
    fn act(&self, x: &Self::State, s: usize) -> Self::State {
        let n = self.rank;
        let g = &self.gens[s];
        let mut out = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = CyclotomicInt::zero(self.order);
                for k in 0..n {
                    let a = &x[i * n + k];
                    let b = &g[k * n + j];
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    acc = &acc + &(a * b);
                }
                out.push(acc);
            }
        }
        out
    }
}

/// Tables describing a finite Coxeter group with elements numbered in
/// ShortLex order of their normal words.
pub(crate) struct Tables {
    pub length: Vec<u32>,
    /// First letter of the ShortLex normal word; unused for the identity.
    pub first: Vec<u8>,
    /// `right[w * rank + s] = w s`
    pub right: Vec<u32>,
    /// `left[w * rank + s] = s w`
    pub left: Vec<u32>,
    pub inverse: Vec<u32>,
}

pub(crate) fn explore<M: Model>(model: &M, rank: usize, cap: usize) -> Result<Tables, CoxeterError> {
    let mut states = vec![model.identity()];
    let mut index: HashMap<M::State, u32> = HashMap::new();
    index.insert(states[0].clone(), 0);
    let mut length = vec![0u32];
    let mut parent: Vec<(u32, u8)> = vec![(0, 0)];
    let mut right: Vec<u32> = Vec::new();

    let mut cursor = 0;
    while cursor < states.len() {
        for s in 0..rank {
            let next = model.act(&states[cursor], s);
            let id = match index.get(&next) {
                Some(&id) => id,
                None => {
                    let id = states.len() as u32;
                    if states.len() >= cap {
                        return Err(CoxeterError::GroupTooLarge { cap });
                    }
                    index.insert(next.clone(), id);
                    states.push(next);
                    length.push(length[cursor] + 1);
                    parent.push((cursor as u32, s as u8));
                    id
                }
            };
            right.push(id);
        }
        cursor += 1;
    }
    drop(index);
    drop(states);
    let n = length.len();

    // s * w, built along BFS parents: s (p t) = (s p) t.
    let mut left = vec![0u32; n * rank];
    for s in 0..rank {
        left[s] = right[s];
    }
    for w in 1..n {
        let (p, t) = parent[w];
        for s in 0..rank {
            let sp = left[p as usize * rank + s] as usize;
            left[w * rank + s] = right[sp * rank + t as usize];
        }
    }

    // ShortLex first letter: smallest left descent.
    let mut first = vec![u8::MAX; n];
    for w in 1..n {
        first[w] = (0..rank)
            .find(|&s| length[left[w * rank + s] as usize] < length[w])
            .expect("nonidentity element has a left descent") as u8;
    }

    // Rank layer by layer: compare first letters, then the tails s*w.
    let max_len = *length.iter().max().unwrap_or(&0) as usize;
    let mut layers: Vec<Vec<usize>> = vec![Vec::new(); max_len + 1];
    for w in 0..n {
        layers[length[w] as usize].push(w);
    }
    let mut new_index = vec![0u32; n];
    let mut next = 0u32;
    for layer in &mut layers {
        layer.sort_by_key(|&w| {
            if w == 0 {
                (0u8, 0u32)
            } else {
                let tail = left[w * rank + first[w] as usize] as usize;
                (first[w], new_index[tail])
            }
        });
        for &w in layer.iter() {
            new_index[w] = next;
            next += 1;
        }
    }

    let mut old_of = vec![0usize; n];
    for (old, &new) in new_index.iter().enumerate() {
        old_of[new as usize] = old;
    }
    let remap = |table: &[u32]| -> Vec<u32> {
        let mut out = vec![0u32; n * rank];
        for new in 0..n {
            let old = old_of[new];
            for s in 0..rank {
                out[new * rank + s] = new_index[table[old * rank + s] as usize];
            }
        }
        out
    };
    let right = remap(&right);
    let left = remap(&left);
    let length: Vec<u32> = old_of.iter().map(|&o| length[o]).collect();
    let first: Vec<u8> = old_of.iter().map(|&o| first[o]).collect();

    // (s w')^{-1} = w'^{-1} s, tails always precede their element.
    let mut inverse = vec![0u32; n];
    for w in 1..n {
        let s = first[w] as usize;
        let tail = left[w * rank + s] as usize;
        inverse[w] = right[inverse[tail] as usize * rank + s];
    }

    Ok(Tables {
        length,
        first,
        right,
        left,
        inverse,
    })
}
