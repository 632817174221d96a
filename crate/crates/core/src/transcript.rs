//! Session transcripts: one JSON object per line, tagged by `"event"`.

use std::io::{self, BufRead, Write};

use serde::{Deserialize, Serialize};

use crate::graph::{LabeledMultigraph, QuantumGraph};
use crate::linalg::rational::{self, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "event", rename_all = "snake_case")]
pub enum Event {
    /// Run configuration, written first.
    Header { config: serde_json::Value },
    ValueQuery {
        round: usize,
        #[serde(skip_serializing_if = "Option::is_none", default)]
        graph: Option<LabeledMultigraph>,
        #[serde(skip_serializing_if = "Option::is_none", default)]
        quantum: Option<QuantumGraph>,
        #[serde(with = "rational::serde_str")]
        value: Rational,
    },
    Rank {
        round: usize,
        basis_size: usize,
        rank: usize,
    },
    Hypothesis {
        round: usize,
        #[serde(with = "rational::serde_vec")]
        alpha: Vec<Rational>,
        #[serde(with = "rational::serde_rows")]
        beta: Vec<Vec<Rational>>,
        /// Every idempotent system was solved exactly.
        consistent: bool,
        /// The single-vertex fallback was used.
        fallback: bool,
    },
    EquivalenceQuery { round: usize, answer: Answer },
    Counterexample { round: usize, graph: LabeledMultigraph },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Answer {
    Yes,
    No,
}

impl Event {
    pub fn round(&self) -> Option<usize> {
        match self {
            Event::Header { .. } => None,
            Event::ValueQuery { round, .. }
            | Event::Rank { round, .. }
            | Event::Hypothesis { round, .. }
            | Event::EquivalenceQuery { round, .. }
            | Event::Counterexample { round, .. } => Some(*round),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SessionTranscript {
    events: Vec<Event>,
}

impl SessionTranscript {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, e: Event) {
        log::trace!("{e:?}");
        self.events.push(e);
    }

    pub fn events(&self) -> &[Event] {
        &self.events
    }

    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for e in &self.events {
            out.push_str(&serde_json::to_string(e).expect("events serialize"));
            out.push('\n');
        }
        out
    }

    pub fn write_jsonl(&self, mut w: impl Write) -> io::Result<()> {
        for e in &self.events {
            serde_json::to_writer(&mut w, e)?;
            w.write_all(b"\n")?;
        }
        Ok(())
    }

    pub fn read_jsonl(r: impl BufRead) -> io::Result<Self> {
        let mut events = Vec::new();
        for line in r.lines() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            events.push(serde_json::from_str(&line)?);
        }
        Ok(SessionTranscript { events })
    }

    /// `(basis_size, rank)` per logged rank event.
    pub fn ranks(&self) -> Vec<(usize, usize)> {
        self.events
            .iter()
            .filter_map(|e| match e {
                Event::Rank { basis_size, rank, .. } => Some((*basis_size, *rank)),
                _ => None,
            })
            .collect()
    }

    pub fn equivalence_queries(&self) -> usize {
        self.events
            .iter()
            .filter(|e| matches!(e, Event::EquivalenceQuery { .. }))
            .count()
    }

    /// Number of value queries issued in each round, indexed from round 1.
    pub fn value_queries_per_round(&self) -> Vec<usize> {
        let rounds = self.events.iter().filter_map(Event::round).max().unwrap_or(0);
        let mut counts = vec![0; rounds];
        for e in &self.events {
            if let Event::ValueQuery { round, .. } = e {
                counts[round - 1] += 1;
            }
        }
        counts
    }

    pub fn counterexamples(&self) -> Vec<&LabeledMultigraph> {
        self.events
            .iter()
            .filter_map(|e| match e {
                Event::Counterexample { graph, .. } => Some(graph),
                _ => None,
            })
            .collect()
    }

    pub fn hypotheses(&self) -> Vec<&Event> {
        self.events
            .iter()
            .filter(|e| matches!(e, Event::Hypothesis { .. }))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rational::{frac, rat};

    #[test]
    fn jsonl_round_trip() {
        let mut t = SessionTranscript::new();
        t.push(Event::Header { config: serde_json::json!({"max_vertices": 6}) });
        t.push(Event::ValueQuery {
            round: 1,
            graph: Some(LabeledMultigraph::k1(1)),
            quantum: None,
            value: rat(3),
        });
        t.push(Event::Rank { round: 1, basis_size: 1, rank: 1 });
        t.push(Event::Hypothesis {
            round: 1,
            alpha: vec![rat(3)],
            beta: vec![vec![frac(5, 9)]],
            consistent: true,
            fallback: false,
        });
        t.push(Event::EquivalenceQuery { round: 1, answer: Answer::No });
        t.push(Event::Counterexample { round: 1, graph: LabeledMultigraph::bouquet(1) });
        let text = t.to_jsonl();
        assert!(text.lines().nth(3).unwrap().contains(r#""beta":[["5/9"]]"#));
        assert!(text.lines().nth(1).unwrap().starts_with(r#"{"event":"value_query""#));
        let back = SessionTranscript::read_jsonl(text.as_bytes()).unwrap();
        assert_eq!(back, t);
        assert_eq!(back.value_queries_per_round(), vec![1]);
        assert_eq!(back.ranks(), vec![(1, 1)]);
        assert_eq!(back.equivalence_queries(), 1);
    }
}
