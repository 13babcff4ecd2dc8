//! Exact integers and rationals, plus rational Gaussian elimination.
//!
//! Integers and rationals are the `num` crate's arbitrary-precision types;
//! this module adds the handful of fallible constructors the engine needs
//! and the exact linear solver in [`linsolve`].

pub mod linsolve;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use linsolve::{solve_exact_linear, ExactMatrix, InconsistencyCertificate, LinearSolution};

/// Arbitrary-precision signed integer.
pub type BigInt = num_bigint::BigInt;

/// Reduced fraction of two [`BigInt`]s with positive denominator.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("invalid rational: zero denominator")]
    ZeroDenominator,
    #[error("division by zero")]
    DivisionByZero,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}

/// Builds the canonical representative of `num / den`.
pub fn rat_normalize(num: BigInt, den: BigInt) -> Result<Rational, ExactError> {
    if den.is_zero() {
        return Err(ExactError::ZeroDenominator);
    }
    // `Ratio::new` reduces and moves the sign to the numerator.
    Ok(Rational::new(num, den))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RatOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn rat_arith(a: &Rational, b: &Rational, op: RatOp) -> Result<Rational, ExactError> {
    Ok(match op {
        RatOp::Add => a + b,
        RatOp::Sub => a - b,
        RatOp::Mul => a * b,
        RatOp::Div => {
            if b.is_zero() {
                return Err(ExactError::DivisionByZero);
            }
            a / b
        }
    })
}

pub fn int_factorial(n: u64) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// Binomial coefficient C(n, k), zero when k > n.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        // Each prefix product is itself a binomial coefficient, so the
        // division is exact.
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

pub fn rat_int(v: impl Into<BigInt>) -> Rational {
    Rational::from_integer(v.into())
}

/// Shorthand for `num/den` with machine integers; panics on a zero denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    rat_normalize(num.into(), den.into()).expect("nonzero denominator")
}

/// `|num| * den`, used as a size measure when picking pivots.
pub(crate) fn height(r: &Rational) -> BigInt {
    r.numer().abs() * r.denom()
}
