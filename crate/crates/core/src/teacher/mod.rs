//! The simulated teacher: it holds the hidden target, answers value queries
//! exactly and answers equivalence queries with YES or the first
//! counterexample in catalog order.

mod catalog;

pub use catalog::{enumerate_graphs, GraphCatalog};

use std::sync::atomic::{AtomicUsize, Ordering};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::graph::{LabeledMultigraph, QuantumGraph};
use crate::linalg::Rational;
use crate::partition::{hom, hom_quantum, make_twin_free, weighted_iso, WeightedGraph};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TeacherConfig {
    pub max_vertices: usize,
    pub max_edges: usize,
    /// Extra random connected multigraphs tried after the enumeration, with up
    /// to three more vertices than `max_vertices`.
    pub sample_budget: usize,
    pub seed: u64,
}

impl Default for TeacherConfig {
    fn default() -> Self {
        TeacherConfig {
            max_vertices: 6,
            max_edges: 8,
            sample_budget: 0,
            seed: 0,
        }
    }
}

impl TeacherConfig {
    /// Counterexample size that always suffices for a target on `q` vertices:
    /// `2(1 + q²)q⁶`. Far above what the enumeration can reach.
    pub fn sound_size_bound(q: usize) -> usize {
        2 * (1 + q * q) * q.pow(6)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct QueryCounts {
    pub value: usize,
    pub equivalence: usize,
}

#[derive(Debug, Default)]
pub struct QueryCounters {
    value: AtomicUsize,
    equivalence: AtomicUsize,
}

impl QueryCounters {
    pub fn snapshot(&self) -> QueryCounts {
        QueryCounts {
            value: self.value.load(Ordering::Relaxed),
            equivalence: self.equivalence.load(Ordering::Relaxed),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Equivalence {
    Yes,
    Counterexample(LabeledMultigraph),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TeacherError {
    #[error(
        "no counterexample with at most {max_vertices} vertices and {max_edges} edges, \
         but the hypothesis is not isomorphic to the target; raise the bounds"
    )]
    BoundExhausted { max_vertices: usize, max_edges: usize },
}

/// The two queries of the exact-learning protocol.
pub trait Teacher {
    fn value(&self, g: &LabeledMultigraph) -> Rational;

    /// Value of a quantum graph, counted as a single query.
    fn value_quantum(&self, x: &QuantumGraph) -> Rational;

    fn equivalent(&self, h: &WeightedGraph) -> Result<Equivalence, TeacherError>;

    fn counts(&self) -> QueryCounts;
}

#[derive(Debug)]
pub struct SimulatedTeacher {
    target: WeightedGraph,
    config: TeacherConfig,
    counters: QueryCounters,
    catalog: GraphCatalog,
}

impl SimulatedTeacher {
    pub fn new(target: WeightedGraph, config: TeacherConfig) -> Self {
        SimulatedTeacher {
            target,
            config,
            counters: QueryCounters::default(),
            catalog: GraphCatalog::new(),
        }
    }

    pub fn target(&self) -> &WeightedGraph {
        &self.target
    }

    pub fn config(&self) -> &TeacherConfig {
        &self.config
    }

    fn find_counterexample(&self, h: &WeightedGraph) -> Option<LabeledMultigraph> {
        let cfg = &self.config;
        if let Some(g) = self
            .catalog
            .iter(cfg.max_vertices, cfg.max_edges)
            .find(|g| hom(g, h) != hom(g, &self.target))
        {
            return Some(g);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        (0..cfg.sample_budget)
            .map(|_| {
                let n = rng.gen_range(cfg.max_vertices + 1..=cfg.max_vertices + 3);
                random_connected_multigraph(&mut rng, n, cfg.max_edges + 2)
            })
            .find(|g| hom(g, h) != hom(g, &self.target))
    }
}

impl Teacher for SimulatedTeacher {
    fn value(&self, g: &LabeledMultigraph) -> Rational {
        self.counters.value.fetch_add(1, Ordering::Relaxed);
        hom(g, &self.target)
    }

    fn value_quantum(&self, x: &QuantumGraph) -> Rational {
        self.counters.value.fetch_add(1, Ordering::Relaxed);
        hom_quantum(x, &self.target)
    }

    fn equivalent(&self, h: &WeightedGraph) -> Result<Equivalence, TeacherError> {
        self.counters.equivalence.fetch_add(1, Ordering::Relaxed);
        if weighted_iso(&make_twin_free(h), &self.target).is_some() {
            return Ok(Equivalence::Yes);
        }
        match self.find_counterexample(h) {
            Some(g) => Ok(Equivalence::Counterexample(g)),
            None => Err(TeacherError::BoundExhausted {
                max_vertices: self.config.max_vertices,
                max_edges: self.config.max_edges,
            }),
        }
    }

    fn counts(&self) -> QueryCounts {
        self.counters.snapshot()
    }
}

/// A random spanning tree plus extra random edges (loops and parallels allowed).
pub fn random_connected_multigraph(rng: &mut impl Rng, n: usize, max_edges: usize) -> LabeledMultigraph {
    let mut edges: Vec<(usize, usize)> = (1..n).map(|v| (rng.gen_range(0..v), v)).collect();
    let extra = rng.gen_range(0..=max_edges.saturating_sub(edges.len()));
    for _ in 0..extra {
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        edges.push((a, b));
    }
    LabeledMultigraph::unlabeled(n, edges).expect("endpoints in range")
}
