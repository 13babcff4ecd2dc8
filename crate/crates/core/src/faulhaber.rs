//! Power-sum rows: rational `c_{k,0..k}` with
//! `1^k + 2^k + … + n^k = c_{k,0} n + c_{k,1} n^2 + … + c_{k,k} n^{k+1}`.
//!
//! Each row is computed twice, once by solving a truncated interpolation
//! system against brute-force sums and once from the Bernoulli-number closed
//! form, and the two must agree exactly.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_traits::{One, Zero};
use thiserror::Error;

use crate::exactnum::{binomial, solve_exact_linear, BigInt, ExactMatrix, LinearSolution, Rational};
use crate::oracle::power_sum;
use crate::poly::UniPoly;

/// Number of extra points each system-derived row is checked on.
const EXTRA_CHECKS: u64 = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FaulhaberError {
    #[error("power-sum rows are defined for k >= 1")]
    ZeroExponent,
    #[error("truncated power-sum system for k={0} is not uniquely solvable")]
    NotUnique(u32),
    #[error("power-sum row k={k} disagrees with the brute-force sum at n={n}")]
    VerificationFailed { k: u32, n: u64 },
    #[error("system and Bernoulli rows differ for k={0}")]
    MethodMismatch(u32),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaulhaberRow {
    k: u32,
    coeffs: Vec<Rational>,
}

impl FaulhaberRow {
    pub fn k(&self) -> u32 {
        self.k
    }

    /// `c_{k,0}, …, c_{k,k}`; entry `j` multiplies `n^{j+1}`.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn poly(&self) -> UniPoly {
        UniPoly::from_coeffs(std::iter::once(Rational::zero()).chain(self.coeffs.iter().cloned()))
    }

    pub fn eval(&self, n: u64) -> Rational {
        self.poly().eval_int(&BigInt::from(n))
    }
}

/// Bernoulli numbers `B_0..=B_m` with `B_1 = -1/2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BernoulliTable {
    values: Vec<Rational>,
}

impl BernoulliTable {
    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn get(&self, i: usize) -> &Rational {
        &self.values[i]
    }
}

/// Runs `sum_{j=0..i} C(i+1, j) B_j = 0` upward from `B_0 = 1`.
pub fn bernoulli(m: usize) -> BernoulliTable {
    let mut values = Vec::with_capacity(m + 1);
    values.push(Rational::one());
    for i in 1..=m {
        let acc: Rational = values
            .iter()
            .enumerate()
            .map(|(j, b)| b * Rational::from_integer(binomial(i as u64 + 1, j as u64)))
            .sum();
        values.push(-acc / Rational::from_integer(BigInt::from(i + 1)));
    }
    BernoulliTable { values }
}

pub fn faulhaber_row_system(k: u32) -> Result<FaulhaberRow, FaulhaberError> {
    if k == 0 {
        return Err(FaulhaberError::ZeroExponent);
    }
    let size = k as usize + 1;
    let mut a = ExactMatrix::zeros(size, size);
    let mut b = Vec::with_capacity(size);
    for row in 0..size {
        let n = BigInt::from(row + 1);
        let mut pow = n.clone();
        for col in 0..size {
            a[(row, col)] = Rational::from_integer(pow.clone());
            pow *= &n;
        }
        b.push(Rational::from_integer(power_sum(k, row as u64 + 1)));
    }
    let coeffs = match solve_exact_linear(&a, &b) {
        Ok(LinearSolution::Unique(x)) => x,
        _ => return Err(FaulhaberError::NotUnique(k)),
    };
    let row = FaulhaberRow { k, coeffs };
    let first = k as u64 + 2;
    for n in first..first + EXTRA_CHECKS {
        if row.eval(n) != Rational::from_integer(power_sum(k, n)) {
            return Err(FaulhaberError::VerificationFailed { k, n });
        }
    }
    Ok(row)
}

pub fn faulhaber_row_bernoulli(k: u32) -> Result<FaulhaberRow, FaulhaberError> {
    if k == 0 {
        return Err(FaulhaberError::ZeroExponent);
    }
    let table = bernoulli(k as usize);
    let k1 = k as u64 + 1;
    let scale = Rational::from_integer(BigInt::from(k1)).recip();
    // Coefficient of n^{k+1-j} is (-1)^j C(k+1, j) B_j / (k+1); the sign
    // factor converts B_1 = -1/2 to the ascending-sum convention.
    let coeffs = (0..=k as u64)
        .map(|m| {
            let j = k as u64 - m;
            let c = Rational::from_integer(binomial(k1, j)) * table.get(j as usize) * &scale;
            if j % 2 == 1 {
                -c
            } else {
                c
            }
        })
        .collect();
    Ok(FaulhaberRow { k, coeffs })
}

fn cache() -> &'static RwLock<HashMap<u32, Arc<FaulhaberRow>>> {
    static ROWS: OnceLock<RwLock<HashMap<u32, Arc<FaulhaberRow>>>> = OnceLock::new();
    ROWS.get_or_init(Default::default)
}

/// Cross-checked row for exponent `k`, memoized for the life of the process.
pub fn faulhaber_row(k: u32) -> Result<Arc<FaulhaberRow>, FaulhaberError> {
    if let Some(row) = cache().read().expect("row cache poisoned").get(&k) {
        return Ok(Arc::clone(row));
    }
    let by_system = faulhaber_row_system(k)?;
    let by_bernoulli = faulhaber_row_bernoulli(k)?;
    if by_system != by_bernoulli {
        return Err(FaulhaberError::MethodMismatch(k));
    }
    let mut rows = cache().write().expect("row cache poisoned");
    // First writer wins; later racers get the already-published row.
    Ok(Arc::clone(rows.entry(k).or_insert_with(|| Arc::new(by_system))))
}
