//! Random targets and the rank and rigidity experiments.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::graph::LabeledMultigraph;
use crate::linalg::rational::{frac, Rational};
use crate::linalg::{rank, Matrix};
use crate::partition::{hom, is_rigid, is_twin_free, WeightedGraph};

/// Rejection-sampling attempts before [`gen_target`] gives up.
pub const SAMPLING_CAP: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExperimentError {
    #[error("no rigid twin-free target after {0} samples")]
    SamplingCapExceeded(usize),
    #[error("q must be at least 1")]
    EmptyTarget,
    #[error("k must be 1 or 2, got {0}")]
    UnsupportedArity(usize),
}

fn edge_weight(rng: &mut impl Rng, d: i64) -> Rational {
    frac(rng.gen_range(0..=d), rng.gen_range(1..=d))
}

/// A rigid twin-free target on `q` vertices. Vertex weights are `a/b` with
/// `a ∈ [−d, d] \ {0}`, edge weights `a/b` with `a ∈ [0, d]`, and `b ∈ [1, d]`.
pub fn gen_target(q: usize, d: u32, seed: u64) -> Result<WeightedGraph, ExperimentError> {
    if q == 0 {
        return Err(ExperimentError::EmptyTarget);
    }
    let d = i64::from(d.max(1));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..SAMPLING_CAP {
        let alpha: Vec<Rational> = (0..q)
            .map(|_| {
                let sign = if rng.gen_bool(0.5) { -1 } else { 1 };
                frac(sign * rng.gen_range(1..=d), rng.gen_range(1..=d))
            })
            .collect();
        let mut beta = Matrix::zeros(q, q);
        for i in 0..q {
            for j in i..q {
                let w = edge_weight(&mut rng, d);
                beta[(i, j)] = w.clone();
                beta[(j, i)] = w;
            }
        }
        let h = WeightedGraph::new(alpha, beta).expect("symmetric by construction");
        if is_twin_free(&h) && is_rigid(&h) {
            return Ok(h);
        }
    }
    Err(ExperimentError::SamplingCapExceeded(SAMPLING_CAP))
}

/// A random multigraph with `k` labels on distinct vertices: between `k` and
/// `k + 3` vertices and up to `n + 2` edges, loops and parallels allowed.
pub fn random_labeled_multigraph(rng: &mut impl Rng, k: usize) -> LabeledMultigraph {
    let n = rng.gen_range(k.max(1)..=k + 3);
    let m = rng.gen_range(0..=n + 2);
    let edges: Vec<(usize, usize)> = (0..m).map(|_| (rng.gen_range(0..n), rng.gen_range(0..n))).collect();
    let labels = sample(rng, n, k).into_iter().map(Some).collect();
    LabeledMultigraph::new(n, edges, labels).expect("valid by construction")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RankReport {
    pub q: usize,
    pub k: usize,
    pub samples: usize,
    pub rank: usize,
    pub bound: usize,
    pub within_bound: bool,
    /// For rigid targets at `k = 1` with at least `3q` samples: rank equals `q`.
    pub reached_q: Option<bool>,
}

/// Rank of the sampled connection submatrix `f(G_a G_b)` over `samples`
/// random `k`-labeled graphs.
pub fn rank_experiment(
    target: &WeightedGraph,
    k: usize,
    samples: usize,
    seed: u64,
) -> Result<RankReport, ExperimentError> {
    if !(1..=2).contains(&k) {
        return Err(ExperimentError::UnsupportedArity(k));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let graphs: Vec<LabeledMultigraph> = (0..samples).map(|_| random_labeled_multigraph(&mut rng, k)).collect();
    let mut m = Matrix::zeros(samples, samples);
    for a in 0..samples {
        for b in a..samples {
            let v = hom(&graphs[a].glue(&graphs[b]).expect("same arity"), target);
            m[(a, b)] = v.clone();
            m[(b, a)] = v;
        }
    }
    let q = target.q();
    let r = rank(&m);
    let bound = q.pow(k as u32);
    let reached_q = (k == 1 && samples >= 3 * q && is_rigid(target)).then_some(r == q);
    Ok(RankReport {
        q,
        k,
        samples,
        rank: r,
        bound,
        within_bound: r <= bound,
        reached_q,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RigidityRow {
    pub n: usize,
    pub samples: usize,
    pub rigid: usize,
    pub fraction: f64,
}

/// A uniform random simple graph on `n` vertices (each edge with probability 1/2).
#[allow(clippy::needless_range_loop)]
pub fn random_simple_graph(rng: &mut impl Rng, n: usize) -> Vec<Vec<bool>> {
    let mut adj = vec![vec![false; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let e = rng.gen_bool(0.5);
            adj[i][j] = e;
            adj[j][i] = e;
        }
    }
    adj
}

/// Fraction of uniform random simple graphs with unit weights and no
/// nontrivial automorphism, per `n`.
pub fn rigidity_stats(ns: impl IntoIterator<Item = usize>, samples: usize, seed: u64) -> Vec<RigidityRow> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    ns.into_iter()
        .map(|n| {
            let rigid = (0..samples)
                .filter(|_| {
                    let adj = random_simple_graph(&mut rng, n);
                    is_rigid(&WeightedGraph::unit_weighted(&adj).expect("symmetric"))
                })
                .count();
            RigidityRow {
                n,
                samples,
                rigid,
                fraction: if samples == 0 { 0.0 } else { rigid as f64 / samples as f64 },
            }
        })
        .collect()
}
