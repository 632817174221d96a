//! Connected multigraphs with loops, one per isomorphism class, ordered by
//! (vertex count, edge count, canonical code).
//!
//! A cell `(v, e)` is built from smaller cells: every connected graph either
//! has an edge whose removal keeps it connected (a loop, a parallel edge or a
//! cycle edge), or it is a tree with a leaf. So each class appears as "cell
//! `(v, e-1)` plus one edge" or "cell `(v-1, e-1)` plus a pendant vertex".

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use crate::graph::LabeledMultigraph;

type Cells = HashMap<(usize, usize), Arc<Vec<LabeledMultigraph>>>;

/// Memoized cells, shareable across threads.
#[derive(Debug, Default)]
pub struct GraphCatalog {
    cells: Mutex<Cells>,
}

impl GraphCatalog {
    pub fn new() -> Self {
        Self::default()
    }

    /// All classes with exactly `v` vertices and `e` edges, sorted by code.
    pub fn cell(&self, v: usize, e: usize) -> Arc<Vec<LabeledMultigraph>> {
        if let Some(c) = self.cells.lock().unwrap().get(&(v, e)) {
            return c.clone();
        }
        let built = Arc::new(self.build(v, e));
        self.cells
            .lock()
            .unwrap()
            .entry((v, e))
            .or_insert(built)
            .clone()
    }

    fn build(&self, v: usize, e: usize) -> Vec<LabeledMultigraph> {
        if v == 0 || e + 1 < v {
            return Vec::new();
        }
        if v == 1 && e == 0 {
            return vec![LabeledMultigraph::unlabeled(1, []).unwrap()];
        }
        let mut found = BTreeMap::new();
        if e >= v {
            for g in self.cell(v, e - 1).iter() {
                for a in 0..v {
                    for b in a..v {
                        let mut edges = g.edges().to_vec();
                        edges.push((a, b));
                        let h = LabeledMultigraph::unlabeled(v, edges).unwrap();
                        found.entry(h.canonical_code()).or_insert(h);
                    }
                }
            }
        }
        if v >= 2 {
            for g in self.cell(v - 1, e - 1).iter() {
                for a in 0..v - 1 {
                    let mut edges = g.edges().to_vec();
                    edges.push((a, v - 1));
                    let h = LabeledMultigraph::unlabeled(v, edges).unwrap();
                    found.entry(h.canonical_code()).or_insert(h);
                }
            }
        }
        found.into_values().collect()
    }

    /// Lazy stream over every cell within the bounds, in order.
    pub fn iter(&self, max_vertices: usize, max_edges: usize) -> impl Iterator<Item = LabeledMultigraph> + '_ {
        (1..=max_vertices)
            .flat_map(move |v| (v - 1..=max_edges).map(move |e| (v, e)))
            .flat_map(move |(v, e)| {
                let cell = self.cell(v, e);
                (0..cell.len()).map(move |i| cell[i].clone())
            })
    }
}

/// Stream of connected multigraphs (loops and parallel edges allowed) with at
/// most `max_vertices` vertices and `max_edges` edges, each class exactly once.
pub fn enumerate_graphs(max_vertices: usize, max_edges: usize) -> Vec<LabeledMultigraph> {
    GraphCatalog::new().iter(max_vertices, max_edges).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn first_items() {
        let items: Vec<_> = GraphCatalog::new().iter(3, 3).take(3).collect();
        assert_eq!(items[0], LabeledMultigraph::unlabeled(1, []).unwrap());
        assert_eq!(items[1], LabeledMultigraph::bouquet(1));
        assert_eq!(items[2], LabeledMultigraph::bouquet(2));
    }

    #[test]
    fn small_cells_have_known_sizes() {
        let cat = GraphCatalog::new();
        // Two vertices, two edges: double edge, edge + loop.
        assert_eq!(cat.cell(2, 2).len(), 2);
        // Three vertices, two edges: only the path.
        assert_eq!(cat.cell(3, 2).len(), 1);
        // Two vertices, three edges: triple edge, double edge + loop,
        // edge + two loops on one end, edge + a loop at each end.
        assert_eq!(cat.cell(2, 3).len(), 4);
    }

    #[test]
    fn everything_is_connected_and_unique() {
        let all = enumerate_graphs(4, 5);
        let codes: HashSet<_> = all.iter().map(|g| g.canonical_code()).collect();
        assert_eq!(codes.len(), all.len());
        assert!(all.iter().all(|g| g.is_connected()));
    }
}
