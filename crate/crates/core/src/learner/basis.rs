//! Structure constants of the learned algebra and its idempotent basis.

use num_integer::binomial;
use num_traits::One;

use super::ConnectionSubmatrix;
use crate::linalg::poly::spectral_projections;
use crate::linalg::rational::{self, Rational};
use crate::linalg::{self, inverse, linear_combination, solve_matrix_system, LinalgError, Matrix};

/// Everything computed from `M` and the triple-gluing values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisRepresentation {
    /// `gamma[i][j]` solves `M·γ = b` with `b(k) = f(B_i B_j B_k)`.
    pub gamma: Vec<Vec<Vec<Rational>>>,
    /// `blocks[i] = A_{B_i}` with `(A_{B_i})_{k,j} = gamma[i][j][k]`.
    pub blocks: Vec<Matrix>,
    /// Spectral projections of a generic element of the span of the blocks,
    /// the right-hand sides of the idempotent systems. Empty if no rational
    /// split was found.
    pub projections: Vec<Matrix>,
    /// `delta[i]` is the coefficient vector of `p_i` over `B_1..B_n`.
    pub delta: Vec<Vec<Rational>>,
    /// `A_{p_i} = Σ_k delta[i][k]·A_{B_k}`.
    pub idempotent_blocks: Vec<Matrix>,
    /// Every idempotent system was solved exactly.
    pub consistent: bool,
}

impl BasisRepresentation {
    pub fn n(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_split(&self) -> bool {
        !self.delta.is_empty()
    }

    /// `A_x` for `x = Σ a_i B_i`: `(A_x)_{ℓ,m} = Σ_i a_i γ^{i,m}(ℓ)`.
    pub fn multiplication_matrix(&self, a: &[Rational]) -> Matrix {
        let n = self.n();
        Matrix::from_fn(n, n, |l, m| {
            a.iter()
                .zip(&self.gamma)
                .map(|(ai, g)| ai * &g[m][l])
                .sum()
        })
    }

    /// The matrices `A_{p_i}` written in the basis `p_1..p_n`, i.e.
    /// `D⁻¹ A_{p_i} D` where `D` has the vectors `delta[j]` as columns.
    pub fn idempotent_coordinates(&self) -> Result<Vec<Matrix>, LinalgError> {
        let n = self.n();
        let d = Matrix::from_fn(n, n, |k, j| self.delta[j][k].clone());
        let d_inv = inverse(&d)?;
        self.idempotent_blocks
            .iter()
            .map(|a| d_inv.mul(a)?.mul(&d))
            .collect()
    }
}

/// Builds the blocks from precomputed triple values `triple[i][j][k] = f(B_i B_j B_k)`
/// and splits the algebra they span.
pub fn represent(
    m: &ConnectionSubmatrix,
    triple: &[Vec<Vec<Rational>>],
) -> Result<BasisRepresentation, LinalgError> {
    let n = m.len();
    let m_inv = inverse(&m.values).map_err(|_| LinalgError::Singular)?;
    let gamma: Vec<Vec<Vec<Rational>>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| m_inv.mul_vec(&triple[i][j]))
                .collect::<Result<_, _>>()
        })
        .collect::<Result<_, _>>()?;
    let blocks: Vec<Matrix> = (0..n)
        .map(|i| Matrix::from_fn(n, n, |k, j| gamma[i][j][k].clone()))
        .collect();
    if linalg::rank(&Matrix::from_fn(n * n, n, |r, k| blocks[k].as_slice()[r].clone())) < n {
        return Err(LinalgError::DegenerateBlocks);
    }
    let mut rep = BasisRepresentation {
        gamma,
        blocks,
        projections: Vec::new(),
        delta: Vec::new(),
        idempotent_blocks: Vec::new(),
        consistent: false,
    };
    let Some(projections) = split(&rep.blocks)? else {
        return Ok(rep);
    };
    let mut consistent = true;
    for p in &projections {
        let sol = solve_matrix_system(&rep.blocks, p)?;
        consistent &= sol.consistent;
        rep.idempotent_blocks.push(linear_combination(&rep.blocks, &sol.coefficients)?);
        rep.delta.push(sol.coefficients);
    }
    rep.projections = projections;
    rep.consistent = consistent;
    Ok(rep)
}

/// Projections of `x_t = Σ_k t^k A_{B_k}` for the first `t = 1, 2, …` whose
/// spectrum is `n` distinct rationals. When the blocks span a split
/// commutative algebra, eigenvalue collisions are roots of nonzero
/// polynomials of degree `< n`, so `C(n,2)(n-1) + 1` tries suffice.
fn split(blocks: &[Matrix]) -> Result<Option<Vec<Matrix>>, LinalgError> {
    let n = blocks.len();
    let tries = binomial(n, 2) * n.saturating_sub(1) + 1;
    for t in 1..=tries {
        let t = rational::rat(t as i64);
        let mut power = Rational::one();
        let mut coeffs = Vec::with_capacity(n);
        for _ in 0..n {
            coeffs.push(power.clone());
            power *= &t;
        }
        let x = linear_combination(blocks, &coeffs)?;
        if let Some(spectrum) = spectral_projections(&x)? {
            return Ok(Some(spectrum.into_iter().map(|(_, p)| p).collect()));
        }
    }
    Ok(None)
}
