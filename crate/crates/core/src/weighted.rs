//! Weighted sums `α_1 f(1) + α_2 f(2) + … + α_n f(n)` for constant,
//! polynomial and periodic integer weights.

use num_traits::One;
use thiserror::Error;

use crate::exactnum::{BigInt, Rational};
use crate::faulhaber::FaulhaberError;
use crate::oracle::FactorialWalk;
use crate::poly::{BiPoly, UniPoly};
use crate::polysum::synth_poly_sum;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeightError {
    #[error("periodic weight pattern must be nonempty")]
    EmptyPattern,
    #[error("polynomial weight must have integer coefficients")]
    NonIntegralWeight,
    #[error("closed form for residue {residue} disagrees with direct summation at n={n}")]
    VerificationFailed { residue: u64, n: u64 },
    #[error(transparent)]
    Faulhaber(#[from] FaulhaberError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WeightSpec {
    Constant(BigInt),
    Polynomial(UniPoly),
    Periodic(Vec<BigInt>),
}

impl WeightSpec {
    pub fn constant(c: impl Into<BigInt>) -> Self {
        WeightSpec::Constant(c.into())
    }

    pub fn polynomial(w: UniPoly) -> Result<Self, WeightError> {
        if !w.is_integral() {
            return Err(WeightError::NonIntegralWeight);
        }
        Ok(WeightSpec::Polynomial(w))
    }

    pub fn periodic<I, T>(pattern: I) -> Result<Self, WeightError>
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        let pattern: Vec<BigInt> = pattern.into_iter().map(Into::into).collect();
        if pattern.is_empty() {
            return Err(WeightError::EmptyPattern);
        }
        Ok(WeightSpec::Periodic(pattern))
    }

    /// `α_i` for `i ≥ 1`.
    pub fn weight(&self, i: u64) -> Rational {
        match self {
            WeightSpec::Constant(c) => Rational::from_integer(c.clone()),
            WeightSpec::Polynomial(w) => w.eval_int(&BigInt::from(i)),
            WeightSpec::Periodic(pattern) => {
                let idx = ((i - 1) % pattern.len() as u64) as usize;
                Rational::from_integer(pattern[idx].clone())
            }
        }
    }
}

/// Per-residue closed forms: `forms[r - 1]` is valid for `n ≡ r (mod period)`,
/// with `r = period` covering multiples of the period.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueClosedForms {
    pub period: u64,
    pub forms: Vec<UniPoly>,
}

impl ResidueClosedForms {
    pub fn residue_of(&self, n: u64) -> u64 {
        (n - 1) % self.period + 1
    }

    pub fn form_for(&self, n: u64) -> &UniPoly {
        &self.forms[(self.residue_of(n) - 1) as usize]
    }

    pub fn eval(&self, n: u64) -> Rational {
        self.form_for(n).eval_int(&BigInt::from(n))
    }

    /// The common form when every residue class has the same polynomial.
    pub fn uniform(&self) -> Option<&UniPoly> {
        let first = &self.forms[0];
        self.forms.iter().all(|g| g == first).then_some(first)
    }
}

/// Direct summation of `α_i · p(i, i!)` for `i = 1..=n`.
pub fn weighted_sum_oracle(p: &BiPoly, alpha: &WeightSpec, n: u64) -> Rational {
    FactorialWalk::new()
        .take(n as usize)
        .map(|(i, fact)| alpha.weight(i) * p.eval_with_factorial(i, &fact))
        .sum()
}

/// Closed form for `Σ w(i) f(i)`, which is the plain sum of `w·f`.
pub fn synth_weighted_polynomial(f: &UniPoly, w: &UniPoly) -> Result<UniPoly, WeightError> {
    if !w.is_integral() {
        return Err(WeightError::NonIntegralWeight);
    }
    Ok(synth_poly_sum(&(w * f))?)
}

/// Closed forms for a weight pattern repeating with period `pattern.len()`.
///
/// With `n = p·m + r`, the sum splits into `m` full blocks and a partial
/// block of length `r`. Block `j` contributes `h(j) = Σ_t α_t f(p·j + t)`, a
/// polynomial in `j`, so the full blocks sum to `h(0) + H(m − 1)` where `H` is
/// the running-sum polynomial of `h`. Substituting `m = (n − r)/p` gives a
/// polynomial in `n` for each residue.
pub fn synth_weighted_periodic(
    f: &UniPoly,
    pattern: &[BigInt],
) -> Result<ResidueClosedForms, WeightError> {
    if pattern.is_empty() {
        return Err(WeightError::EmptyPattern);
    }
    let period = pattern.len() as u64;
    let p_rat = Rational::from_integer(BigInt::from(period));

    // α_t f(p·j + t) as polynomials in j.
    let block_terms: Vec<UniPoly> = pattern
        .iter()
        .enumerate()
        .map(|(idx, alpha)| {
            let t = Rational::from_integer(BigInt::from(idx + 1));
            f.compose_linear(&p_rat, &t)
                .scale(&Rational::from_integer(alpha.clone()))
        })
        .collect();
    let block = block_terms.iter().fold(UniPoly::zero(), |acc, t| &acc + t);
    let block_sum = synth_poly_sum(&block)?;
    let full_blocks = &UniPoly::constant(block.coeff(0))
        + &block_sum.compose_linear(&Rational::one(), &-Rational::one());

    let mut forms = Vec::with_capacity(pattern.len());
    let mut partial = UniPoly::zero();
    for (idx, term) in block_terms.iter().enumerate() {
        partial = &partial + term;
        let r = Rational::from_integer(BigInt::from(idx + 1));
        let in_m = &full_blocks + &partial;
        forms.push(in_m.compose_linear(&p_rat.recip(), &(-r / &p_rat)));
    }

    let out = ResidueClosedForms { period, forms };
    verify_residues(f, &WeightSpec::Periodic(pattern.to_vec()), &out, 5 * period)?;
    Ok(out)
}

/// Closed forms for any supported weight family; constant and polynomial
/// weights yield a single residue class.
pub fn synth_weighted(f: &UniPoly, alpha: &WeightSpec) -> Result<ResidueClosedForms, WeightError> {
    let single = |g: UniPoly| ResidueClosedForms {
        period: 1,
        forms: vec![g],
    };
    match alpha {
        WeightSpec::Constant(c) => Ok(single(
            synth_poly_sum(f)?.scale(&Rational::from_integer(c.clone())),
        )),
        WeightSpec::Polynomial(w) => Ok(single(synth_weighted_polynomial(f, w)?)),
        WeightSpec::Periodic(pattern) => synth_weighted_periodic(f, pattern),
    }
}

/// Checks every residue form against [`weighted_sum_oracle`] for `n ≤ extra + period`.
fn verify_residues(
    f: &UniPoly,
    alpha: &WeightSpec,
    forms: &ResidueClosedForms,
    extra: u64,
) -> Result<(), WeightError> {
    let p = f.to_bi();
    for n in 1..=extra + forms.period {
        if forms.eval(n) != weighted_sum_oracle(&p, alpha, n) {
            return Err(WeightError::VerificationFailed {
                residue: forms.residue_of(n),
                n,
            });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;
    use crate::exactnum::{rat, rat_int};
    use crate::oracle::sum_oracle;
    use proptest::prelude::*;

    fn up(c: &[(i64, i64)]) -> UniPoly {
        UniPoly::from_coeffs(c.iter().map(|&(n, d)| rat(n, d)))
    }

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn oracle_examples() {
        let alt = WeightSpec::periodic([1, -1]).unwrap();
        assert_eq!(weighted_sum_oracle(&BiPoly::one(), &alt, 5), rat_int(1));
        let alt2 = WeightSpec::periodic([-1, 1]).unwrap();
        // -1 + 2 - 3 + 4
        assert_eq!(weighted_sum_oracle(&BiPoly::x(), &alt2, 4), rat_int(2));
        assert_eq!(
            weighted_sum_oracle(&BiPoly::x(), &WeightSpec::constant(1), 100),
            rat_int(5050)
        );
    }

    #[test]
    fn polynomial_weight_examples() {
        let x = UniPoly::x();
        assert_eq!(
            synth_weighted_polynomial(&UniPoly::one(), &x).unwrap(),
            up(&[(0, 1), (1, 2), (1, 2)])
        );
        assert_eq!(
            synth_weighted_polynomial(&x, &x).unwrap(),
            up(&[(0, 1), (1, 6), (1, 2), (1, 3)])
        );
        let sq = UniPoly::from_ints(&[0, 0, 1]);
        assert_eq!(
            synth_weighted_polynomial(&sq, &UniPoly::one()).unwrap(),
            synth_poly_sum(&sq).unwrap()
        );
        assert_eq!(
            synth_weighted_polynomial(&sq, &up(&[(1, 2)])),
            Err(WeightError::NonIntegralWeight)
        );
    }

    #[test]
    fn periodic_examples() {
        let r = synth_weighted_periodic(&UniPoly::one(), &big(&[1, -1])).unwrap();
        assert_eq!(r.forms, vec![UniPoly::one(), UniPoly::zero()]);

        let r = synth_weighted_periodic(&UniPoly::x(), &big(&[-1, 1])).unwrap();
        assert_eq!(r.forms[1], up(&[(0, 1), (1, 2)]));
        assert_eq!(r.forms[0], up(&[(-1, 2), (-1, 2)]));
        for n in 1..=20u64 {
            let brute: i64 = (1..=n as i64).map(|i| if i % 2 == 1 { -i } else { i }).sum();
            assert_eq!(r.eval(n), rat_int(brute));
        }

        let r = synth_weighted_periodic(&UniPoly::x(), &big(&[1])).unwrap();
        assert_eq!(r.forms, vec![up(&[(0, 1), (1, 2), (1, 2)])]);
    }

    #[test]
    fn uniform_detection() {
        let r = synth_weighted_periodic(&UniPoly::x(), &big(&[2, 2, 2])).unwrap();
        assert_eq!(r.uniform(), Some(&up(&[(0, 1), (1, 1), (1, 1)])));
        let r = synth_weighted_periodic(&UniPoly::x(), &big(&[1, 0])).unwrap();
        assert_eq!(r.uniform(), None);
    }

    #[test]
    fn invalid_weights() {
        assert_eq!(
            WeightSpec::periodic(Vec::<i64>::new()),
            Err(WeightError::EmptyPattern)
        );
        assert_eq!(synth_weighted_periodic(&UniPoly::x(), &[]), Err(WeightError::EmptyPattern));
        assert_eq!(WeightSpec::polynomial(up(&[(1, 3)])), Err(WeightError::NonIntegralWeight));
    }

    #[test]
    fn oracle_recurrence_and_unit_weight() {
        let p = crate::poly::parse_poly("n^2 - 3*n! + 2").unwrap();
        let specs = [
            WeightSpec::constant(-4),
            WeightSpec::polynomial(UniPoly::from_ints(&[1, -2, 1])).unwrap(),
            WeightSpec::periodic([3, 0, -1]).unwrap(),
        ];
        for alpha in &specs {
            for n in 2..=60u64 {
                let step = weighted_sum_oracle(&p, alpha, n) - weighted_sum_oracle(&p, alpha, n - 1);
                assert_eq!(step, alpha.weight(n) * p.eval_fact(n));
            }
        }
        let one = WeightSpec::constant(1);
        for n in 1..=40u64 {
            assert_eq!(weighted_sum_oracle(&p, &one, n), sum_oracle(&p, n));
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn periodic_matches_oracle(
            f in proptest::collection::vec(-20i64..=20, 0..=5),
            pattern in proptest::collection::vec(-3i64..=3, 1..=5),
        ) {
            let f = UniPoly::from_ints(&f);
            let r = synth_weighted_periodic(&f, &big(&pattern)).unwrap();
            let alpha = WeightSpec::periodic(pattern.iter().copied()).unwrap();
            let mut running = Rational::zero();
            for n in 1..=100u64 {
                running += alpha.weight(n) * f.eval_int(&BigInt::from(n));
                prop_assert_eq!(r.eval(n), running.clone());
            }
            let bound = f.degree().map_or(1, |d| d + 1);
            for g in &r.forms {
                prop_assert!(g.degree().is_none_or(|d| d <= bound));
            }
        }

        #[test]
        fn polynomial_weight_matches_oracle(
            f in proptest::collection::vec(-20i64..=20, 0..=5),
            w in proptest::collection::vec(-20i64..=20, 0..=5),
        ) {
            let (f, w) = (UniPoly::from_ints(&f), UniPoly::from_ints(&w));
            let g = synth_weighted_polynomial(&f, &w).unwrap();
            let alpha = WeightSpec::polynomial(w).unwrap();
            let mut running = Rational::zero();
            for n in 1..=100u64 {
                running += alpha.weight(n) * f.eval_int(&BigInt::from(n));
                prop_assert_eq!(g.eval_int(&BigInt::from(n)), running.clone());
            }
        }
    }
}
