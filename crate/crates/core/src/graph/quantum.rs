//! Quantum graphs: finite rational combinations of k-labeled multigraphs.
//!
//! Terms are keyed by canonical code, so isomorphic graphs merge and zero
//! coefficients are never stored.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{CanonicalCode, GraphError, LabeledMultigraph};
use crate::linalg::rational::{self, Rational};

#[derive(Debug, Clone)]
pub struct QuantumGraph {
    arity: usize,
    terms: BTreeMap<CanonicalCode, (LabeledMultigraph, Rational)>,
}

// Equal up to the choice of representative for each isomorphism class.
impl PartialEq for QuantumGraph {
    fn eq(&self, other: &Self) -> bool {
        self.arity == other.arity
            && self.terms.len() == other.terms.len()
            && self.terms.iter().zip(&other.terms).all(|((a, (_, x)), (b, (_, y)))| a == b && x == y)
    }
}

impl Eq for QuantumGraph {}

impl QuantumGraph {
    pub fn zero(arity: usize) -> Self {
        QuantumGraph {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_graph(g: LabeledMultigraph) -> Self {
        let mut x = QuantumGraph::zero(g.arity());
        x.push(rational::one(), g);
        x
    }

    /// `Σ coef·graph`; all graphs must have arity `arity`.
    pub fn from_terms(
        arity: usize,
        terms: impl IntoIterator<Item = (Rational, LabeledMultigraph)>,
    ) -> Result<Self, GraphError> {
        let mut x = QuantumGraph::zero(arity);
        for (c, g) in terms {
            if g.arity() != arity {
                return Err(GraphError::ArityMismatch(arity, g.arity()));
            }
            x.push(c, g);
        }
        Ok(x)
    }

    fn push(&mut self, c: Rational, g: LabeledMultigraph) {
        if c.is_zero() {
            return;
        }
        let key = g.canonical_code();
        match self.terms.get_mut(&key) {
            Some((_, coef)) => {
                *coef += c;
                if coef.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, (g, c));
            }
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical-code order.
    pub fn terms(&self) -> impl Iterator<Item = (&LabeledMultigraph, &Rational)> {
        self.terms.values().map(|(g, c)| (g, c))
    }

    /// Coefficient of the isomorphism class of `g` (zero if absent).
    pub fn coefficient(&self, g: &LabeledMultigraph) -> Rational {
        self.terms
            .get(&g.canonical_code())
            .map_or_else(Rational::zero, |(_, c)| c.clone())
    }

    fn check_arity(&self, other: &Self) -> Result<(), GraphError> {
        if self.arity != other.arity {
            return Err(GraphError::ArityMismatch(self.arity, other.arity));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, GraphError> {
        self.check_arity(other)?;
        let mut out = self.clone();
        for (g, c) in other.terms() {
            out.push(c.clone(), g.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return QuantumGraph::zero(self.arity);
        }
        QuantumGraph {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .map(|(k, (g, a))| (k.clone(), (g.clone(), a * c)))
                .collect(),
        }
    }

    /// Bilinear extension of the k-connection.
    pub fn glue(&self, other: &Self) -> Result<Self, GraphError> {
        self.check_arity(other)?;
        let mut out = QuantumGraph::zero(self.arity);
        for (f, a) in self.terms() {
            for (g, b) in other.terms() {
                out.push(a * b, f.glue(g)?);
            }
        }
        Ok(out)
    }

    /// Turns two 1-labeled quantum graphs into a 2-labeled one: `p` keeps
    /// label 1, `q` has its label renamed to 2, and terms are joined by
    /// disjoint union.
    pub fn tensor2(p: &Self, q: &Self) -> Result<Self, GraphError> {
        for x in [p, q] {
            if x.arity != 1 {
                return Err(GraphError::ArityMismatch(1, x.arity));
            }
        }
        let mut out = QuantumGraph::zero(2);
        let right: Vec<(LabeledMultigraph, &Rational)> = q
            .terms()
            .map(|(g, b)| Ok((g.relabel(2, |_| 2)?, b)))
            .collect::<Result<_, GraphError>>()?;
        for (f, a) in p.terms() {
            let left = f.with_arity(2)?;
            for (g, b) in &right {
                out.push(a * *b, left.disjoint_union(g)?);
            }
        }
        Ok(out)
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    #[serde(with = "rational::serde_str")]
    coef: Rational,
    graph: LabeledMultigraph,
}

#[derive(Serialize, Deserialize)]
struct QuantumJson {
    arity: usize,
    terms: Vec<TermJson>,
}

impl Serialize for QuantumGraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        QuantumJson {
            arity: self.arity,
            terms: self
                .terms()
                .map(|(g, c)| TermJson {
                    coef: c.clone(),
                    graph: g.clone(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for QuantumGraph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = QuantumJson::deserialize(d)?;
        QuantumGraph::from_terms(j.arity, j.terms.into_iter().map(|t| (t.coef, t.graph)))
            .map_err(serde::de::Error::custom)
    }
}
