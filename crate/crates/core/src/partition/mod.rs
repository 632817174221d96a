//! Weighted graphs `H(α, β)` and their partition functions.

mod hom;
mod symmetry;

pub use hom::{hom, hom_brute_force, hom_quantum};
pub use symmetry::{automorphisms, is_rigid, is_twin_free, make_twin_free, weighted_iso};

use serde::{Deserialize, Serialize};

use crate::linalg::rational::{self, Rational};
use crate::linalg::Matrix;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WeightedGraphError {
    #[error("a weighted graph needs at least one vertex")]
    Empty,
    #[error("alpha has {alpha} entries but beta is {rows}x{cols}")]
    Shape { alpha: usize, rows: usize, cols: usize },
    #[error("beta is not symmetric at ({0}, {1})")]
    Asymmetric(usize, usize),
}

/// Vertex weights `alpha` and a symmetric edge-weight matrix `beta`
/// (`beta[i][j] == 0` means no edge).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedGraph {
    alpha: Vec<Rational>,
    beta: Matrix,
}

impl WeightedGraph {
    pub fn new(alpha: Vec<Rational>, beta: Matrix) -> Result<Self, WeightedGraphError> {
        let q = alpha.len();
        if q == 0 {
            return Err(WeightedGraphError::Empty);
        }
        if beta.rows() != q || beta.cols() != q {
            return Err(WeightedGraphError::Shape {
                alpha: q,
                rows: beta.rows(),
                cols: beta.cols(),
            });
        }
        for i in 0..q {
            for j in 0..i {
                if beta[(i, j)] != beta[(j, i)] {
                    return Err(WeightedGraphError::Asymmetric(i, j));
                }
            }
        }
        Ok(WeightedGraph { alpha, beta })
    }

    /// Small-integer constructor for tests and examples.
    pub fn from_i64(alpha: &[i64], beta: &[&[i64]]) -> Result<Self, WeightedGraphError> {
        Self::new(alpha.iter().map(|&a| rational::rat(a)).collect(), Matrix::from_i64(beta))
    }

    /// `K_m` with unit weights; `hom(G, K_m)` counts proper m-colorings.
    pub fn complete(m: usize) -> Self {
        let beta = Matrix::from_fn(m, m, |i, j| rational::rat((i != j) as i64));
        Self::new(vec![rational::one(); m], beta).expect("complete graph is valid")
    }

    /// The two-vertex graph whose partition function is the independence
    /// polynomial evaluated at `x`: `α = (1, x)`, a loop of weight 1 on the
    /// first vertex and an edge of weight 1 between the two.
    pub fn independence(x: Rational) -> Self {
        Self::new(vec![rational::one(), x], Matrix::from_i64(&[&[1, 1], &[1, 0]]))
            .expect("independence graph is valid")
    }

    /// Unit vertex weights with a 0/1 adjacency matrix.
    pub fn unit_weighted(adjacency: &[Vec<bool>]) -> Result<Self, WeightedGraphError> {
        let n = adjacency.len();
        let beta = Matrix::from_fn(n, n, |i, j| {
            rational::rat(adjacency[i].get(j).copied().unwrap_or(false) as i64)
        });
        Self::new(vec![rational::one(); n], beta)
    }

    pub fn q(&self) -> usize {
        self.alpha.len()
    }

    pub fn alpha(&self) -> &[Rational] {
        &self.alpha
    }

    pub fn beta(&self) -> &Matrix {
        &self.beta
    }

    /// Relabels vertices: vertex `i` of the result is vertex `perm[i]` of `self`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let alpha = perm.iter().map(|&p| self.alpha[p].clone()).collect();
        let beta = Matrix::from_fn(self.q(), self.q(), |i, j| self.beta[(perm[i], perm[j])].clone());
        WeightedGraph { alpha, beta }
    }
}

/// `{"alpha": ["1","2"], "beta": [["1","1"],["1","0"]]}`
#[derive(Serialize, Deserialize)]
pub struct WeightedGraphJson {
    #[serde(with = "rational::serde_vec")]
    pub alpha: Vec<Rational>,
    #[serde(with = "rational::serde_rows")]
    pub beta: Vec<Vec<Rational>>,
}

impl Serialize for WeightedGraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        WeightedGraphJson {
            alpha: self.alpha.clone(),
            beta: self.beta.to_rows(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for WeightedGraph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = WeightedGraphJson::deserialize(d)?;
        let beta = Matrix::from_rows(j.beta).map_err(serde::de::Error::custom)?;
        WeightedGraph::new(j.alpha, beta).map_err(serde::de::Error::custom)
    }
}
