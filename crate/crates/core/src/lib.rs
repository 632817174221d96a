//! Exact learning of rigid partition functions.
//!
//! A hidden weighted graph `H(α, β)` is reconstructed from two kinds of
//! queries to its partition function `hom(−, H)`: value queries on graphs of
//! the learner's choice and equivalence queries on hypotheses, which a
//! simulated teacher answers with YES or a counterexample graph.
//!
//! All arithmetic is exact over the rationals.

pub mod graph;
pub mod linalg;
pub mod partition;
pub mod teacher;
pub mod transcript;
pub mod learner;
pub mod experiments;
pub mod cli;
