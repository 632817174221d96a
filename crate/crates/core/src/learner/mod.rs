//! The learner: grows a non-singular submatrix `M` of the connection matrix,
//! splits the algebra spanned by its basis graphs into idempotents and reads
//! a weighted graph off them, until the teacher accepts.

mod basis;

pub use basis::{represent, BasisRepresentation};

use std::collections::{HashMap, HashSet};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::graph::{assign_label_one, CanonicalCode, GraphError, LabeledMultigraph, QuantumGraph};
use crate::linalg::rational::{self, Rational};
use crate::linalg::{self, LinalgError, Matrix};
use crate::partition::{make_twin_free, WeightedGraph};
use crate::teacher::{enumerate_graphs, Equivalence, Teacher, TeacherError};
use crate::transcript::{Answer, Event, SessionTranscript};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LearnerConfig {
    /// Maximum number of equivalence rounds.
    pub iteration_cap: usize,
    /// Bounds of the small graphs tried when no counterexample variant
    /// increases the rank.
    pub pool_max_vertices: usize,
    pub pool_max_edges: usize,
}

impl Default for LearnerConfig {
    fn default() -> Self {
        LearnerConfig {
            iteration_cap: 16,
            pool_max_vertices: 3,
            pool_max_edges: 4,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LearnError {
    #[error("no candidate graph increases the rank of M beyond {rank}")]
    PoolExhausted { rank: usize },
    #[error("no YES within {cap} equivalence rounds")]
    IterationCapExceeded { cap: usize },
    #[error(transparent)]
    Teacher(#[from] TeacherError),
    #[error("linear algebra: {0}")]
    Linalg(#[from] LinalgError),
    #[error("graph: {0}")]
    Graph(#[from] GraphError),
}

/// Basis graphs `B_1..B_n` and the values `f(B_i B_j)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ConnectionSubmatrix {
    pub basis: Vec<LabeledMultigraph>,
    pub values: Matrix,
}

impl ConnectionSubmatrix {
    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn rank(&self) -> usize {
        linalg::rank(&self.values)
    }

    /// Appends `c` given `row[i] = f(c B_i)` and `diag = f(c c)`.
    pub fn extended(&self, c: LabeledMultigraph, row: &[Rational], diag: Rational) -> Self {
        let n = self.len();
        let values = Matrix::from_fn(n + 1, n + 1, |i, j| match (i == n, j == n) {
            (false, false) => self.values[(i, j)].clone(),
            (true, false) => row[j].clone(),
            (false, true) => row[i].clone(),
            (true, true) => diag.clone(),
        });
        let mut basis = self.basis.clone();
        basis.push(c);
        ConnectionSubmatrix { basis, values }
    }
}

/// A hypothesis together with how it was obtained.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypothesis {
    pub graph: WeightedGraph,
    pub consistent: bool,
    pub fallback: bool,
    /// `N_ij = f(p_ij p_ij)` before twin merging; empty for the fallback.
    pub norms: Matrix,
}

#[derive(Debug, Clone)]
pub struct LearnOutcome {
    pub hypothesis: WeightedGraph,
    pub transcript: SessionTranscript,
    pub rounds: usize,
    pub matrix: ConnectionSubmatrix,
    pub representation: Option<BasisRepresentation>,
}

#[derive(Debug, Clone)]
pub struct LearnFailure {
    pub error: LearnError,
    pub transcript: SessionTranscript,
}

/// Learner state for one session. Value queries go through a cache keyed by
/// the isomorphism class of the underlying graph, so only new questions reach
/// the teacher and the transcript.
pub struct Learner<'t, T: Teacher + ?Sized> {
    teacher: &'t T,
    config: LearnerConfig,
    matrix: ConnectionSubmatrix,
    counterexamples: Vec<LabeledMultigraph>,
    round: usize,
    cache: HashMap<CanonicalCode, Rational>,
    transcript: SessionTranscript,
}

impl<'t, T: Teacher + ?Sized> Learner<'t, T> {
    pub fn new(teacher: &'t T, config: LearnerConfig) -> Self {
        Learner {
            teacher,
            config,
            matrix: ConnectionSubmatrix::default(),
            counterexamples: Vec::new(),
            round: 0,
            cache: HashMap::new(),
            transcript: SessionTranscript::new(),
        }
    }

    pub fn matrix(&self) -> &ConnectionSubmatrix {
        &self.matrix
    }

    pub fn transcript(&self) -> &SessionTranscript {
        &self.transcript
    }

    pub fn round(&self) -> usize {
        self.round
    }

    pub fn value(&mut self, g: &LabeledMultigraph) -> Rational {
        let key = g.forget_labels().canonical_code();
        if let Some(v) = self.cache.get(&key) {
            return v.clone();
        }
        let v = self.teacher.value(g);
        self.transcript.push(Event::ValueQuery {
            round: self.round,
            graph: Some(g.clone()),
            quantum: None,
            value: v.clone(),
        });
        self.cache.insert(key, v.clone());
        v
    }

    pub fn value_quantum(&mut self, x: &QuantumGraph) -> Rational {
        let mut terms = x.terms();
        if let (Some((g, c)), None) = (terms.next(), terms.next()) {
            if *c == rational::one() {
                return self.value(g);
            }
        }
        let v = self.teacher.value_quantum(x);
        self.transcript.push(Event::ValueQuery {
            round: self.round,
            graph: None,
            quantum: Some(x.clone()),
            value: v.clone(),
        });
        v
    }

    /// Adds a basis graph derived from `x`: the labeled counterexample if it
    /// raises the rank, else the first pool candidate that does.
    pub fn augment(&mut self, x: &LabeledMultigraph) -> Result<(), LearnError> {
        self.counterexamples.push(x.forget_labels());
        let n = self.matrix.len();
        let mut seen: HashSet<CanonicalCode> =
            self.matrix.basis.iter().map(|b| b.canonical_code()).collect();
        for c in self.candidates()? {
            if !seen.insert(c.canonical_code()) {
                continue;
            }
            if self.try_candidate(c)? {
                return Ok(());
            }
        }
        let pool: Vec<LabeledMultigraph> =
            enumerate_graphs(self.config.pool_max_vertices, self.config.pool_max_edges)
                .iter()
                .flat_map(|g| (0..g.num_vertices()).map(move |v| g.with_label_one_at(v)))
                .collect::<Result<_, _>>()?;
        for c in pool {
            if !seen.insert(c.canonical_code()) {
                continue;
            }
            if self.try_candidate(c)? {
                log::debug!("round {}: basis grown from the small-graph pool", self.round);
                return Ok(());
            }
        }
        Err(LearnError::PoolExhausted { rank: n })
    }

    /// Variants of the received counterexamples, newest first: label 1 on the
    /// canonical first vertex, then on every other vertex, then 1-connections
    /// of the canonical labeling with each basis graph.
    fn candidates(&self) -> Result<Vec<LabeledMultigraph>, LearnError> {
        let mut out = Vec::new();
        for x in self.counterexamples.iter().rev() {
            let first = assign_label_one(x)?;
            out.push(first.clone());
            for v in x.canonical_form().order.iter().skip(1) {
                out.push(x.with_label_one_at(*v)?);
            }
            for b in &self.matrix.basis {
                out.push(first.glue(b)?);
            }
        }
        Ok(out)
    }

    fn try_candidate(&mut self, c: LabeledMultigraph) -> Result<bool, LearnError> {
        let n = self.matrix.len();
        let basis = self.matrix.basis.clone();
        let row: Vec<Rational> = basis
            .iter()
            .map(|b| c.glue(b).map(|g| self.value(&g)))
            .collect::<Result<_, _>>()?;
        let diag = self.value(&c.glue(&c)?);
        let next = self.matrix.extended(c, &row, diag);
        let rank = next.rank();
        if rank != n + 1 {
            return Ok(false);
        }
        self.matrix = next;
        self.transcript.push(Event::Rank {
            round: self.round,
            basis_size: n + 1,
            rank,
        });
        Ok(true)
    }

    /// Queries `f(B_i B_j B_k)` and splits the algebra spanned by the `A_{B_i}`.
    pub fn find_basis(&mut self) -> Result<BasisRepresentation, LearnError> {
        let basis = self.matrix.basis.clone();
        let mut triple = Vec::with_capacity(basis.len());
        for bi in &basis {
            let mut per_j = Vec::with_capacity(basis.len());
            for bj in &basis {
                let bij = bi.glue(bj)?;
                let b: Vec<Rational> = basis
                    .iter()
                    .map(|bk| bij.glue(bk).map(|g| self.value(&g)))
                    .collect::<Result<_, _>>()?;
                per_j.push(b);
            }
            triple.push(per_j);
        }
        Ok(represent(&self.matrix, &triple)?)
    }

    /// Reads vertex weights `f(p_i)` and edge weights `f(K_2 p_ij) / f(p_ij p_ij)`
    /// off the idempotents, then merges twins. Falls back to a single vertex
    /// when there are no idempotents or some `f(p_ij p_ij)` vanishes.
    pub fn generate_hypothesis(&mut self, rep: Option<&BasisRepresentation>) -> Result<Hypothesis, LearnError> {
        let Some(rep) = rep.filter(|r| r.is_split()) else {
            return Ok(self.fallback_hypothesis());
        };
        let n = rep.n();
        let p: Vec<QuantumGraph> = rep
            .delta
            .iter()
            .map(|d| QuantumGraph::from_terms(1, d.iter().cloned().zip(self.matrix.basis.iter().cloned())))
            .collect::<Result<_, _>>()?;
        let alpha: Vec<Rational> = p.iter().map(|pi| self.value_quantum(pi)).collect();
        let edge = QuantumGraph::from_graph(LabeledMultigraph::k2_labeled());
        let mut norms = Matrix::zeros(n, n);
        let mut beta = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let pij = QuantumGraph::tensor2(&p[i], &p[j])?;
                let nij = self.value_quantum(&pij.glue(&pij)?);
                if nij.is_zero() {
                    log::debug!("round {}: f(p_ij p_ij) = 0 at ({i},{j})", self.round);
                    return Ok(self.fallback_hypothesis());
                }
                let bij = self.value_quantum(&edge.glue(&pij)?);
                beta[(i, j)] = bij / &nij;
                norms[(i, j)] = nij;
            }
        }
        let Ok(graph) = WeightedGraph::new(alpha, beta) else {
            return Ok(self.fallback_hypothesis());
        };
        Ok(Hypothesis {
            graph: make_twin_free(&graph),
            consistent: rep.consistent,
            fallback: false,
            norms,
        })
    }

    fn fallback_hypothesis(&mut self) -> Hypothesis {
        let a = self.value(&LabeledMultigraph::k1(0));
        let e = self.value(&LabeledMultigraph::path(2));
        let b = if a.is_zero() { Rational::zero() } else { e / (&a * &a) };
        Hypothesis {
            graph: WeightedGraph::new(vec![a], Matrix::from_rows(vec![vec![b]]).expect("1x1"))
                .expect("1x1 is symmetric"),
            consistent: false,
            fallback: true,
            norms: Matrix::zeros(0, 0),
        }
    }

    /// One round: augment with `x`, split, hypothesize.
    fn step(&mut self, x: &LabeledMultigraph) -> Result<(Hypothesis, Option<BasisRepresentation>), LearnError> {
        self.augment(x)?;
        let rep = match self.find_basis() {
            Ok(r) => Some(r),
            Err(LearnError::Linalg(LinalgError::DegenerateBlocks)) => None,
            Err(e) => return Err(e),
        };
        let h = self.generate_hypothesis(rep.as_ref())?;
        self.transcript.push(Event::Hypothesis {
            round: self.round,
            alpha: h.graph.alpha().to_vec(),
            beta: h.graph.beta().to_rows(),
            consistent: h.consistent,
            fallback: h.fallback,
        });
        Ok((h, rep))
    }

    /// Runs rounds until the teacher says YES.
    pub fn run(mut self, header: serde_json::Value) -> Result<LearnOutcome, LearnFailure> {
        self.transcript.push(Event::Header { config: header });
        match self.run_rounds() {
            Ok((hypothesis, representation)) => Ok(LearnOutcome {
                hypothesis,
                rounds: self.round,
                matrix: self.matrix,
                representation,
                transcript: self.transcript,
            }),
            Err(error) => {
                log::warn!("learning failed in round {}: {error}", self.round);
                Err(LearnFailure {
                    error,
                    transcript: self.transcript,
                })
            }
        }
    }

    fn run_rounds(&mut self) -> Result<(WeightedGraph, Option<BasisRepresentation>), LearnError> {
        let mut x = LabeledMultigraph::k1(0);
        loop {
            if self.round >= self.config.iteration_cap {
                return Err(LearnError::IterationCapExceeded {
                    cap: self.config.iteration_cap,
                });
            }
            self.round += 1;
            let (h, rep) = self.step(&x)?;
            log::info!(
                "round {}: basis {}, hypothesis on {} vertices",
                self.round,
                self.matrix.len(),
                h.graph.q()
            );
            match self.teacher.equivalent(&h.graph)? {
                Equivalence::Yes => {
                    self.transcript.push(Event::EquivalenceQuery {
                        round: self.round,
                        answer: Answer::Yes,
                    });
                    return Ok((h.graph, rep));
                }
                Equivalence::Counterexample(g) => {
                    self.transcript.push(Event::EquivalenceQuery {
                        round: self.round,
                        answer: Answer::No,
                    });
                    self.transcript.push(Event::Counterexample {
                        round: self.round,
                        graph: g.clone(),
                    });
                    x = g;
                }
            }
        }
    }
}

/// Learns the teacher's target; the transcript header records `config`.
pub fn learn<T: Teacher + ?Sized>(teacher: &T, config: &LearnerConfig) -> Result<LearnOutcome, LearnFailure> {
    let header = serde_json::to_value(config).expect("config serializes");
    learn_with_header(teacher, config, header)
}

pub fn learn_with_header<T: Teacher + ?Sized>(
    teacher: &T,
    config: &LearnerConfig,
    header: serde_json::Value,
) -> Result<LearnOutcome, LearnFailure> {
    Learner::new(teacher, config.clone()).run(header)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rational::{frac, rat};
    use crate::partition::weighted_iso;
    use crate::teacher::{SimulatedTeacher, TeacherConfig};

    fn h_star() -> WeightedGraph {
        WeightedGraph::independence(rat(2))
    }

    #[test]
    fn fixture_trace() {
        let t = SimulatedTeacher::new(h_star(), TeacherConfig::default());
        let out = learn(&t, &LearnerConfig::default()).unwrap();
        assert_eq!(out.rounds, 2);
        assert!(weighted_iso(&out.hypothesis, &h_star()).is_some());
        let hs = out.transcript.hypotheses();
        match hs[0] {
            Event::Hypothesis { alpha, beta, .. } => {
                assert_eq!(alpha, &vec![rat(3)]);
                assert_eq!(beta, &vec![vec![frac(5, 9)]]);
            }
            _ => unreachable!(),
        }
        assert_eq!(out.transcript.counterexamples(), vec![&LabeledMultigraph::bouquet(1)]);
        assert_eq!(out.matrix.values, Matrix::from_i64(&[&[3, 1], &[1, 1]]));
        assert_eq!(out.transcript.ranks(), vec![(1, 1), (2, 2)]);
    }

    #[test]
    fn one_vertex_target() {
        let target = WeightedGraph::from_i64(&[2], &[&[3]]).unwrap();
        let t = SimulatedTeacher::new(target.clone(), TeacherConfig::default());
        let out = learn(&t, &LearnerConfig::default()).unwrap();
        assert_eq!(out.rounds, 1);
        assert_eq!(out.hypothesis, target);
    }

    #[test]
    fn first_round_representation() {
        let t = SimulatedTeacher::new(h_star(), TeacherConfig::default());
        let mut l = Learner::new(&t, LearnerConfig::default());
        l.round = 1;
        l.augment(&LabeledMultigraph::k1(0)).unwrap();
        assert_eq!(l.matrix().values, Matrix::from_i64(&[&[3]]));
        let rep = l.find_basis().unwrap();
        assert_eq!(rep.blocks, vec![Matrix::from_i64(&[&[1]])]);
        assert_eq!(rep.delta, vec![vec![rat(1)]]);
        let h = l.generate_hypothesis(Some(&rep)).unwrap();
        assert_eq!(h.norms, Matrix::from_i64(&[&[9]]));
        assert!(!h.fallback);
    }

    #[test]
    fn non_rigid_target_gets_stuck() {
        let t = SimulatedTeacher::new(WeightedGraph::complete(2), TeacherConfig::default());
        let err = learn(&t, &LearnerConfig::default()).unwrap_err();
        assert_eq!(err.error, LearnError::PoolExhausted { rank: 1 });
    }
}
