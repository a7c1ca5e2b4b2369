use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{ExactError, LaurentPoly};

type Dense = Arc<Vec<BigInt>>;

fn cache() -> &'static Mutex<HashMap<u32, Dense>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Dense>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Dense coefficients of the `e`-th cyclotomic polynomial, constant term
/// first. Computed as `(u^e - 1) / prod_{d | e, d < e} Phi_d`.
pub(crate) fn cyclotomic_dense(e: u32) -> Dense {
    assert!(e >= 1, "cyclotomic polynomial needs e >= 1");
    if let Some(hit) = cache().lock().unwrap().get(&e) {
        return hit.clone();
    }
    let mut num = vec![BigInt::zero(); e as usize + 1];
    num[0] = -BigInt::one();
    num[e as usize] = BigInt::one();
    for d in 1..e {
        if e % d == 0 {
            num = divide_monic(&num, &cyclotomic_dense(d));
        }
    }
    let out = Arc::new(num);
    cache().lock().unwrap().insert(e, out.clone());
    out
}

/// Exact quotient of `num` by the monic `den`; the remainder must vanish.
fn divide_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dd = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![BigInt::zero(); num.len() - dd];
    for i in (dd..num.len()).rev() {
        let c = rem[i].clone();
        if c.is_zero() {
            continue;
        }
        quot[i - dd] = c.clone();
        for (j, dj) in den.iter().enumerate() {
            rem[i - dd + j] -= &c * dj;
        }
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    quot
}

/// Euler's totient.
pub fn totient(e: u32) -> u32 {
    (1..=e).filter(|&k| k.gcd(&e) == 1).count() as u32
}

/// The `e`-th cyclotomic polynomial as a [`LaurentPoly`].
pub fn cyclotomic_polynomial(e: u32) -> LaurentPoly {
    let dense = cyclotomic_dense(e);
    let mut p = LaurentPoly::zero();
    for (k, c) in dense.iter().enumerate() {
        p = p + LaurentPoly::monomial(c.clone().into(), k as i64);
    }
    p
}

/// An element of `Z[zeta_e]`, stored as its remainder modulo `Phi_e`.
#[derive(Clone)]
pub struct CyclotomicInt {
    order: u32,
    coeffs: Vec<BigInt>,
    modulus: Dense,
}

impl CyclotomicInt {
    pub fn zero(order: u32) -> Self {
        let modulus = cyclotomic_dense(order);
        let deg = modulus.len() - 1;
        Self {
            order,
            coeffs: vec![BigInt::zero(); deg],
            modulus,
        }
    }

    pub fn from_integer(order: u32, c: BigInt) -> Self {
        let mut z = Self::zero(order);
        z.coeffs[0] = c;
        z
    }

    pub fn one(order: u32) -> Self {
        Self::from_integer(order, BigInt::one())
    }

    /// `zeta_e^k` for any integer `k`.
    pub fn zeta_pow(order: u32, k: i64) -> Self {
        let mut dense = vec![BigInt::zero(); order as usize];
        dense[k.rem_euclid(order as i64) as usize] = BigInt::one();
        Self::from_dense(order, dense)
    }

    fn from_dense(order: u32, mut dense: Vec<BigInt>) -> Self {
        let modulus = cyclotomic_dense(order);
        let deg = modulus.len() - 1;
        for i in (deg..dense.len()).rev() {
            let c = std::mem::take(&mut dense[i]);
            if c.is_zero() {
                continue;
            }
            for (j, mj) in modulus.iter().enumerate().take(deg) {
                dense[i - deg + j] -= &c * mj;
            }
        }
        dense.resize(deg, BigInt::zero());
        Self {
            order,
            coeffs: dense,
            modulus,
        }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Coefficients on `1, zeta, ..., zeta^(phi(e)-1)`.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    fn check_order(&self, other: &Self) {
        assert_eq!(
            self.order, other.order,
            "cyclotomic integers of different orders"
        );
    }
}

impl PartialEq for CyclotomicInt {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.coeffs == other.coeffs
    }
}

impl Eq for CyclotomicInt {}

impl Hash for CyclotomicInt {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.order.hash(state);
        self.coeffs.hash(state);
    }
}

impl fmt::Debug for CyclotomicInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CyclotomicInt[{}]{:?}", self.order, self.coeffs)
    }
}

impl Add<&CyclotomicInt> for &CyclotomicInt {
    type Output = CyclotomicInt;
    fn add(self, rhs: &CyclotomicInt) -> CyclotomicInt {
        self.check_order(rhs);
        CyclotomicInt {
            order: self.order,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
            modulus: self.modulus.clone(),
        }
    }
}

impl Sub<&CyclotomicInt> for &CyclotomicInt {
    type Output = CyclotomicInt;
    fn sub(self, rhs: &CyclotomicInt) -> CyclotomicInt {
        self.check_order(rhs);
        CyclotomicInt {
            order: self.order,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
            modulus: self.modulus.clone(),
        }
    }
}

impl Neg for &CyclotomicInt {
    type Output = CyclotomicInt;
    fn neg(self) -> CyclotomicInt {
        CyclotomicInt {
            order: self.order,
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
            modulus: self.modulus.clone(),
        }
    }
}

impl Mul<&CyclotomicInt> for &CyclotomicInt {
    type Output = CyclotomicInt;
    fn mul(self, rhs: &CyclotomicInt) -> CyclotomicInt {
        self.check_order(rhs);
        let n = self.coeffs.len();
        let mut dense = vec![BigInt::zero(); (2 * n).saturating_sub(1).max(1)];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    dense[i + j] += a * b;
                }
            }
        }
        CyclotomicInt::from_dense(self.order, dense)
    }
}

/// Image of `p` under `u -> zeta_e`.
pub fn specialize_cyclotomic(p: &LaurentPoly, e: u32) -> Result<CyclotomicInt, ExactError> {
    if e == 0 {
        return Err(ExactError::InvalidOrder);
    }
    let mut dense = vec![BigInt::zero(); e as usize];
    for (k, c) in p.integer_terms()? {
        dense[k.rem_euclid(e as i64) as usize] += c;
    }
    Ok(CyclotomicInt::from_dense(e, dense))
}
