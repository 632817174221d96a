//! Exact linear algebra over the rationals.
//!
//! Everything here is bit-exact: there are no tolerances, so "singular" and
//! "full rank" are decided exactly. Elimination always takes the first nonzero
//! entry in a column as pivot.

mod matrix;
pub mod poly;
pub mod rational;

pub use matrix::Matrix;
pub use rational::Rational;

use num_traits::Zero;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("matrix is singular")]
    Singular,
    #[error("columns are linearly dependent")]
    DegenerateColumns,
    #[error("flattened blocks are linearly dependent")]
    DegenerateBlocks,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("rows have different lengths")]
    Ragged,
}

pub fn rank(m: &Matrix) -> usize {
    let mut work = m.clone();
    work.rref_in_place().len()
}

/// Solves `m x = b` for square, nonsingular `m`.
pub fn solve(m: &Matrix, b: &[Rational]) -> Result<Vec<Rational>, LinalgError> {
    let n = m.rows();
    if !m.is_square() {
        return Err(LinalgError::DimensionMismatch {
            expected: m.rows(),
            found: m.cols(),
        });
    }
    if b.len() != n {
        return Err(LinalgError::DimensionMismatch {
            expected: n,
            found: b.len(),
        });
    }
    let mut aug = Matrix::from_fn(n, n + 1, |i, j| {
        if j < n {
            m[(i, j)].clone()
        } else {
            b[i].clone()
        }
    });
    let pivots = aug.rref_in_place();
    if pivots.len() < n || pivots.last() == Some(&n) {
        return Err(LinalgError::Singular);
    }
    Ok((0..n).map(|i| aug[(i, n)].clone()).collect())
}

pub fn inverse(m: &Matrix) -> Result<Matrix, LinalgError> {
    let n = m.rows();
    if !m.is_square() {
        return Err(LinalgError::DimensionMismatch {
            expected: m.rows(),
            found: m.cols(),
        });
    }
    let mut aug = Matrix::from_fn(n, 2 * n, |i, j| {
        if j < n {
            m[(i, j)].clone()
        } else if j - n == i {
            rational::one()
        } else {
            rational::zero()
        }
    });
    let pivots = aug.rref_in_place();
    if pivots.len() < n || pivots[n - 1] >= n {
        return Err(LinalgError::Singular);
    }
    Ok(Matrix::from_fn(n, n, |i, j| aug[(i, n + j)].clone()))
}

/// Exact solution of the normal equations `AᵀA x = Aᵀb`.
pub fn least_squares(a: &Matrix, b: &[Rational]) -> Result<Vec<Rational>, LinalgError> {
    if b.len() != a.rows() {
        return Err(LinalgError::DimensionMismatch {
            expected: a.rows(),
            found: b.len(),
        });
    }
    let at = a.transpose();
    let ata = at.mul(a)?;
    let atb = at.mul_vec(b)?;
    solve(&ata, &atb).map_err(|e| match e {
        LinalgError::Singular => LinalgError::DegenerateColumns,
        other => other,
    })
}

/// Result of [`solve_matrix_system`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixSystemSolution {
    pub coefficients: Vec<Rational>,
    /// True iff `Σ coefficients[k]·blocks[k] == target` holds exactly.
    pub consistent: bool,
}

/// Finds `δ` with `Σ_k δ_k·blocks[k] = target`.
///
/// The blocks are flattened into the columns of an `n²×n` system. When the
/// system is inconsistent the least-squares solution is returned with
/// `consistent == false`.
pub fn solve_matrix_system(
    blocks: &[Matrix],
    target: &Matrix,
) -> Result<MatrixSystemSolution, LinalgError> {
    let n = blocks.len();
    if n == 0 {
        return Err(LinalgError::DegenerateBlocks);
    }
    let (r, c) = (target.rows(), target.cols());
    if let Some(bad) = blocks.iter().find(|b| b.rows() != r || b.cols() != c) {
        return Err(LinalgError::DimensionMismatch {
            expected: r * c,
            found: bad.rows() * bad.cols(),
        });
    }
    let flat = Matrix::from_fn(r * c, n, |row, k| blocks[k].as_slice()[row].clone());
    if rank(&flat) < n {
        return Err(LinalgError::DegenerateBlocks);
    }
    let coefficients = least_squares(&flat, target.as_slice()).map_err(|e| match e {
        LinalgError::DegenerateColumns => LinalgError::DegenerateBlocks,
        other => other,
    })?;
    let recombined = linear_combination(blocks, &coefficients)?;
    Ok(MatrixSystemSolution {
        consistent: &recombined == target,
        coefficients,
    })
}

/// `Σ_k coeffs[k]·mats[k]`.
pub fn linear_combination(mats: &[Matrix], coeffs: &[Rational]) -> Result<Matrix, LinalgError> {
    let first = mats.first().ok_or(LinalgError::DegenerateBlocks)?;
    if coeffs.len() != mats.len() {
        return Err(LinalgError::DimensionMismatch {
            expected: mats.len(),
            found: coeffs.len(),
        });
    }
    let mut acc = Matrix::zeros(first.rows(), first.cols());
    for (m, c) in mats.iter().zip(coeffs) {
        if !c.is_zero() {
            acc = acc.add(&m.scale(c))?;
        }
    }
    Ok(acc)
}
