//! `{"n": 3, "edges": [[0,1],[1,1]], "labels": {"1": 0}}`
//!
//! Vertices are 0-based, labels 1-based. Loops are `[v, v]` and parallel
//! edges are repeated. The optional `"k"` records an arity larger than the
//! largest assigned label.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{GraphError, LabeledMultigraph};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub labels: BTreeMap<String, usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
}

#[derive(Debug, thiserror::Error)]
pub enum GraphJsonError {
    #[error("label key {0:?} is not a positive integer")]
    BadLabel(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

impl From<&LabeledMultigraph> for GraphJson {
    fn from(g: &LabeledMultigraph) -> Self {
        let labels: BTreeMap<String, usize> = g
            .labels()
            .iter()
            .enumerate()
            .filter_map(|(i, v)| v.map(|v| ((i + 1).to_string(), v)))
            .collect();
        let max_label = g
            .labels()
            .iter()
            .rposition(Option::is_some)
            .map_or(0, |i| i + 1);
        GraphJson {
            n: g.num_vertices(),
            edges: g.edges().iter().map(|&(a, b)| [a, b]).collect(),
            labels,
            k: (g.arity() != max_label).then_some(g.arity()),
        }
    }
}

impl TryFrom<GraphJson> for LabeledMultigraph {
    type Error = GraphJsonError;

    fn try_from(j: GraphJson) -> Result<Self, Self::Error> {
        let mut pairs = Vec::with_capacity(j.labels.len());
        for (key, v) in &j.labels {
            let l: usize = key
                .parse()
                .ok()
                .filter(|&l| l >= 1)
                .ok_or_else(|| GraphJsonError::BadLabel(key.clone()))?;
            pairs.push((l, *v));
        }
        let max_label = pairs.iter().map(|p| p.0).max().unwrap_or(0);
        let k = j.k.unwrap_or(max_label);
        if max_label > k {
            return Err(GraphError::LabelExceedsArity { label: max_label, arity: k }.into());
        }
        let mut labels = vec![None; k];
        for (l, v) in pairs {
            labels[l - 1] = Some(v);
        }
        Ok(LabeledMultigraph::new(
            j.n,
            j.edges.iter().map(|e| (e[0], e[1])),
            labels,
        )?)
    }
}

impl LabeledMultigraph {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(GraphJson::from(self)).expect("graph json is serializable")
    }

    pub fn from_json_str(s: &str) -> Result<Self, Box<dyn std::error::Error + Send + Sync>> {
        let j: GraphJson = serde_json::from_str(s)?;
        Ok(LabeledMultigraph::try_from(j)?)
    }
}

impl Serialize for LabeledMultigraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        GraphJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for LabeledMultigraph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = GraphJson::deserialize(d)?;
        LabeledMultigraph::try_from(j).map_err(serde::de::Error::custom)
    }
}
