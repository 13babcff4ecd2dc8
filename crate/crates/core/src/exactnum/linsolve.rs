use num_traits::{One, Zero};

use super::{height, ExactError, Rational};

/// Dense row-major matrix of rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, ExactError> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().position(|r| r.len() != cols) {
            return Err(ExactError::DimensionMismatch(format!(
                "row {bad} has {} entries, expected {cols}",
                rows[bad].len()
            )));
        }
        let n = rows.len();
        Ok(Self {
            rows: n,
            cols,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn mul_vec(&self, x: &[Rational]) -> Vec<Rational> {
        assert_eq!(x.len(), self.cols, "vector length must match column count");
        (0..self.rows)
            .map(|r| dot(self.row(r), x))
            .collect()
    }

    /// `yᵀ · A` for a vector indexed by rows.
    pub fn left_mul_vec(&self, y: &[Rational]) -> Vec<Rational> {
        assert_eq!(y.len(), self.rows, "vector length must match row count");
        let mut out = vec![Rational::zero(); self.cols];
        for (r, coef) in y.iter().enumerate() {
            if coef.is_zero() {
                continue;
            }
            for (o, a) in out.iter_mut().zip(self.row(r)) {
                *o += coef * a;
            }
        }
        out
    }
}

impl std::ops::Index<(usize, usize)> for ExactMatrix {
    type Output = Rational;

    fn index(&self, (r, c): (usize, usize)) -> &Rational {
        assert!(r < self.rows && c < self.cols, "index out of bounds");
        &self.entries[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ExactMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Rational {
        assert!(r < self.rows && c < self.cols, "index out of bounds");
        &mut self.entries[r * self.cols + c]
    }
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .map(|(x, y)| x * y)
        .sum()
}

/// Row combination proving `A·x = b` has no solution: `multipliersᵀ·A = 0`
/// while `multipliersᵀ·b = rhs ≠ 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InconsistencyCertificate {
    pub multipliers: Vec<Rational>,
    pub rhs: Rational,
}

impl InconsistencyCertificate {
    /// Re-checks the certificate against the original system.
    pub fn check(&self, a: &ExactMatrix, b: &[Rational]) -> bool {
        if self.multipliers.len() != a.rows() || b.len() != a.rows() {
            return false;
        }
        a.left_mul_vec(&self.multipliers).iter().all(Zero::is_zero)
            && !self.rhs.is_zero()
            && dot(&self.multipliers, b) == self.rhs
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinearSolution {
    Unique(Vec<Rational>),
    Inconsistent(InconsistencyCertificate),
    Underdetermined {
        particular: Vec<Rational>,
        kernel: Vec<Vec<Rational>>,
    },
}

impl LinearSolution {
    pub fn rank_deficiency(&self) -> usize {
        match self {
            LinearSolution::Underdetermined { kernel, .. } => kernel.len(),
            _ => 0,
        }
    }
}

/// Solves `A·x = b` by exact Gauss-Jordan elimination.
///
/// Row operations are mirrored on an identity block so that a zero row with a
/// nonzero right side comes with the combination of original rows that
/// produced it.
pub fn solve_exact_linear(a: &ExactMatrix, b: &[Rational]) -> Result<LinearSolution, ExactError> {
    if a.rows() == 0 || a.cols() == 0 {
        return Err(ExactError::DimensionMismatch("empty matrix".into()));
    }
    if b.len() != a.rows() {
        return Err(ExactError::DimensionMismatch(format!(
            "right side has {} entries, matrix has {} rows",
            b.len(),
            a.rows()
        )));
    }

    let (m, n) = (a.rows(), a.cols());
    // Working rows: [A | b | I].
    let width = n + 1 + m;
    let mut work: Vec<Vec<Rational>> = (0..m)
        .map(|r| {
            let mut row = Vec::with_capacity(width);
            row.extend_from_slice(a.row(r));
            row.push(b[r].clone());
            row.extend((0..m).map(|c| if c == r { Rational::one() } else { Rational::zero() }));
            row
        })
        .collect();

    let mut pivot_cols = Vec::new();
    let mut rank = 0;
    for col in 0..n {
        if rank == m {
            break;
        }
        // Smallest-height pivot keeps intermediate fractions short.
        let Some(pivot_row) = (rank..m)
            .filter(|&r| !work[r][col].is_zero())
            .min_by_key(|&r| height(&work[r][col]))
        else {
            continue;
        };
        work.swap(rank, pivot_row);

        let inv = work[rank][col].recip();
        for v in work[rank].iter_mut() {
            if !v.is_zero() {
                *v *= &inv;
            }
        }
        let pivot = work[rank].clone();
        for (r, row) in work.iter_mut().enumerate() {
            if r == rank || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (v, p) in row.iter_mut().zip(&pivot) {
                if !p.is_zero() {
                    *v -= &factor * p;
                }
            }
        }
        pivot_cols.push(col);
        rank += 1;
    }

    if let Some(bad) = (rank..m).find(|&r| !work[r][n].is_zero()) {
        return Ok(LinearSolution::Inconsistent(InconsistencyCertificate {
            multipliers: work[bad][n + 1..].to_vec(),
            rhs: work[bad][n].clone(),
        }));
    }

    let mut particular = vec![Rational::zero(); n];
    for (r, &c) in pivot_cols.iter().enumerate() {
        particular[c] = work[r][n].clone();
    }
    if rank == n {
        return Ok(LinearSolution::Unique(particular));
    }

    let free: Vec<usize> = (0..n).filter(|c| !pivot_cols.contains(c)).collect();
    let kernel = free
        .iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); n];
            v[f] = Rational::one();
            for (r, &c) in pivot_cols.iter().enumerate() {
                v[c] = -work[r][f].clone();
            }
            v
        })
        .collect();
    Ok(LinearSolution::Underdetermined { particular, kernel })
}
