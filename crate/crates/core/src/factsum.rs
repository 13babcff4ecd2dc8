//! Sums of terms `p(n, n!)`: find `q` with `q(n, n!) = p(1, 1!) + … + p(n, n!)`
//! inside a box of monomials `x^a y^b`, `a ≤ A`, `b ≤ B`, or prove that the
//! box contains none.
//!
//! The search is a formal one. Writing `q` with unknown coefficients, the
//! one-step identity `q(n) − q(n−1) = p(n)` is turned into a polynomial in
//! `x, y` by the factorial shift, and every coefficient of that polynomial
//! must vanish. Because the functions `n^a (n!)^b` are linearly independent,
//! this is equivalent to the pointwise identity, so an inconsistent system
//! is a proof of nonexistence within the box.

use std::collections::BTreeSet;

use num_traits::One;
use thiserror::Error;

use crate::exactnum::{
    solve_exact_linear, BigInt, ExactError, ExactMatrix, InconsistencyCertificate, LinearSolution,
    Rational,
};
use crate::oracle::{verify_closed_form, FactorialWalk, VerificationStatus, DEFAULT_N_MAX_FACT};
use crate::poly::{BiPoly, Exponents};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DegreeBounds {
    pub deg_x: u32,
    pub deg_y: u32,
}

impl DegreeBounds {
    pub fn new(deg_x: u32, deg_y: u32) -> Self {
        Self { deg_x, deg_y }
    }

    /// `A = deg_x(p) + 2`, `B = deg_y(p) + 1`. A heuristic that covers the
    /// classical identities with room to spare.
    pub fn default_for(p: &BiPoly) -> Self {
        Self {
            deg_x: p.deg_x().unwrap_or(0) + 2,
            deg_y: p.deg_y().unwrap_or(0) + 1,
        }
    }

    /// Ansatz monomials in column order: `b` outer, `a` inner.
    pub fn monomials(&self) -> Vec<Exponents> {
        (0..=self.deg_y)
            .flat_map(|b| (0..=self.deg_x).map(move |a| (a, b)))
            .collect()
    }

    pub fn size(&self) -> usize {
        (self.deg_x as usize + 1) * (self.deg_y as usize + 1)
    }

    pub fn contains(&self, other: &DegreeBounds) -> bool {
        self.deg_x >= other.deg_x && self.deg_y >= other.deg_y
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FactSumError {
    #[error("closed form failed independent verification at n={0}")]
    VerificationFailed(u64),
    #[error("ansatz system has a {0}-dimensional solution space")]
    NonUnique(usize),
    #[error(transparent)]
    Solver(#[from] ExactError),
}

/// Linear system over the ansatz coefficients, one column per monomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnsatzSystem {
    pub unknowns: Vec<Exponents>,
    pub matrix: ExactMatrix,
    pub rhs: Vec<Rational>,
}

impl AnsatzSystem {
    pub fn solve(&self) -> Result<LinearSolution, ExactError> {
        solve_exact_linear(&self.matrix, &self.rhs)
    }

    /// Assembles the candidate `q` from a coefficient vector.
    pub fn assemble(&self, coeffs: &[Rational]) -> BiPoly {
        BiPoly::from_terms(self.unknowns.iter().copied().zip(coeffs.iter().cloned()))
    }
}

/// Proof that no `q` inside `bounds` sums `p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NoSolutionCertificate {
    pub system: AnsatzSystem,
    pub inconsistency: InconsistencyCertificate,
}

impl NoSolutionCertificate {
    /// Re-checks the row combination against the stored system.
    pub fn check(&self) -> bool {
        self.inconsistency.check(&self.system.matrix, &self.system.rhs)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SynthesisResult {
    ClosedForm {
        q: BiPoly,
        verified_upto: u64,
    },
    NoSolutionWithinBounds {
        bounds: DegreeBounds,
        certificate: Box<NoSolutionCertificate>,
    },
}

impl SynthesisResult {
    pub fn closed_form(&self) -> Option<&BiPoly> {
        match self {
            SynthesisResult::ClosedForm { q, .. } => Some(q),
            SynthesisResult::NoSolutionWithinBounds { .. } => None,
        }
    }
}

/// `x^B q − fact_shift(q) − x^B p` with `B = deg_y(q)`.
///
/// At `(n, n!)` this is `n^B (q(n) − q(n−1) − p(n))` for every `n ≥ 2`.
pub fn telescope_residual(q: &BiPoly, p: &BiPoly) -> BiPoly {
    residual_with_bound(q, p, q.deg_y().unwrap_or(0))
}

fn residual_with_bound(q: &BiPoly, p: &BiPoly, bound: u32) -> BiPoly {
    &(&q.shift_monomials(bound, 0) - &q.fact_shift_with(bound)) - &p.shift_monomials(bound, 0)
}

/// The formal system: one row per monomial of the residual plus the base
/// case `q(1, 1) = p(1, 1)` as the last row.
pub fn ansatz_system(p: &BiPoly, bounds: DegreeBounds) -> AnsatzSystem {
    let unknowns = bounds.monomials();
    let lift = bounds.deg_y;
    // Residual contribution of each unknown monomial.
    let columns: Vec<BiPoly> = unknowns
        .iter()
        .map(|&(a, b)| {
            let m = BiPoly::monomial(a, b, Rational::one());
            &m.shift_monomials(lift, 0) - &m.fact_shift_with(lift)
        })
        .collect();
    let target = p.shift_monomials(lift, 0);

    let rows: BTreeSet<Exponents> = columns
        .iter()
        .chain(std::iter::once(&target))
        .flat_map(|c| c.terms().map(|(e, _)| e))
        .collect();

    let mut matrix = ExactMatrix::zeros(rows.len() + 1, unknowns.len());
    let mut rhs = Vec::with_capacity(rows.len() + 1);
    for (r, &(a, b)) in rows.iter().enumerate() {
        for (c, col) in columns.iter().enumerate() {
            matrix[(r, c)] = col.coeff(a, b);
        }
        rhs.push(target.coeff(a, b));
    }
    let base = rows.len();
    for c in 0..unknowns.len() {
        matrix[(base, c)] = Rational::one();
    }
    rhs.push(p.eval_fact(1));

    AnsatzSystem {
        unknowns,
        matrix,
        rhs,
    }
}

/// Pointwise version of [`ansatz_system`]: the base case at `n = 1`, then
/// `q(n) − q(n−1) = p(n)` for each `n` in `2..=last_n`, using numbers only.
pub fn sampled_system(p: &BiPoly, bounds: DegreeBounds, last_n: u64) -> AnsatzSystem {
    let unknowns = bounds.monomials();
    let values = |n: u64, fact: &BigInt| -> Vec<Rational> {
        unknowns
            .iter()
            .map(|&(a, b)| Rational::from_integer(BigInt::from(n).pow(a) * fact.pow(b)))
            .collect()
    };

    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    let mut prev: Option<Vec<Rational>> = None;
    for (n, fact) in FactorialWalk::new().take(last_n.max(1) as usize) {
        let cur = values(n, &fact);
        match &prev {
            None => rows.push(cur.clone()),
            Some(before) => rows.push(cur.iter().zip(before).map(|(c, b)| c - b).collect()),
        }
        rhs.push(p.eval_with_factorial(n, &fact));
        prev = Some(cur);
    }
    AnsatzSystem {
        unknowns,
        matrix: ExactMatrix::from_rows(rows).expect("rows share the ansatz width"),
        rhs,
    }
}

pub fn synth_fact_sum(p: &BiPoly, bounds: DegreeBounds) -> Result<SynthesisResult, FactSumError> {
    let system = ansatz_system(p, bounds);
    match system.solve()? {
        LinearSolution::Unique(coeffs) => {
            let q = system.assemble(&coeffs);
            let report = verify_closed_form(p, &q, DEFAULT_N_MAX_FACT);
            if let VerificationStatus::FirstMismatch { n, .. } = report.status {
                return Err(FactSumError::VerificationFailed(n));
            }
            Ok(SynthesisResult::ClosedForm {
                q,
                verified_upto: report.checked_upto,
            })
        }
        LinearSolution::Inconsistent(inconsistency) => Ok(SynthesisResult::NoSolutionWithinBounds {
            bounds,
            certificate: Box::new(NoSolutionCertificate {
                system,
                inconsistency,
            }),
        }),
        // n^a (n!)^b are independent, so a consistent system never has a
        // kernel; reaching this arm means the construction is broken.
        LinearSolution::Underdetermined { kernel, .. } => Err(FactSumError::NonUnique(kernel.len())),
    }
}

/// True when every coefficient of `p` is an integer, i.e. `p ∈ Z[n, n!]`.
pub fn is_integral_input(p: &BiPoly) -> bool {
    p.has_integer_coeffs()
}
