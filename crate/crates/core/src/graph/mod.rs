//! Finite multigraphs with loops, partial k-labelings and k-connections.

mod canon;
mod json;
pub mod quantum;

pub use canon::{CanonicalCode, CanonicalForm};
pub use json::GraphJson;
pub use quantum::QuantumGraph;

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("arity mismatch: {0} vs {1}")]
    ArityMismatch(usize, usize),
    #[error("edge endpoint {vertex} out of range for {n} vertices")]
    EdgeOutOfRange { vertex: usize, n: usize },
    #[error("label {label} points at vertex {vertex}, but there are only {n} vertices")]
    LabelOutOfRange { label: usize, vertex: usize, n: usize },
    #[error("vertex {0} carries more than one label")]
    DuplicateLabel(usize),
    #[error("label {label} exceeds arity {arity}")]
    LabelExceedsArity { label: usize, arity: usize },
    #[error("graph has no vertices")]
    Empty,
}

/// A finite undirected multigraph with loops, some of whose vertices carry
/// distinct labels from `1..=k`.
///
/// Edges are stored normalized (`u <= v`) and sorted, so two graphs built from
/// the same edge multiset compare equal. Loops are `(v, v)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LabeledMultigraph {
    n: usize,
    edges: Vec<(usize, usize)>,
    /// `labels[l - 1]` is the vertex carrying label `l`, if any. Its length is the arity.
    labels: Vec<Option<usize>>,
}

impl LabeledMultigraph {
    /// Builds a graph with arity `labels.len()`.
    pub fn new(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
        labels: Vec<Option<usize>>,
    ) -> Result<Self, GraphError> {
        let mut es = Vec::new();
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::EdgeOutOfRange { vertex: w, n });
                }
            }
            es.push((u.min(v), u.max(v)));
        }
        es.sort_unstable();
        let mut seen = vec![false; n];
        for (i, l) in labels.iter().enumerate() {
            if let Some(v) = *l {
                if v >= n {
                    return Err(GraphError::LabelOutOfRange {
                        label: i + 1,
                        vertex: v,
                        n,
                    });
                }
                if std::mem::replace(&mut seen[v], true) {
                    return Err(GraphError::DuplicateLabel(v));
                }
            }
        }
        Ok(LabeledMultigraph { n, edges: es, labels })
    }

    pub fn unlabeled(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, GraphError> {
        Self::new(n, edges, Vec::new())
    }

    /// The single vertex, carrying label 1 when `k >= 1`.
    pub fn k1(k: usize) -> Self {
        let mut labels = vec![None; k];
        if k >= 1 {
            labels[0] = Some(0);
        }
        LabeledMultigraph { n: 1, edges: Vec::new(), labels }
    }

    /// A vertex with `loops` loops.
    pub fn bouquet(loops: usize) -> Self {
        LabeledMultigraph {
            n: 1,
            edges: vec![(0, 0); loops],
            labels: Vec::new(),
        }
    }

    /// The single edge with both endpoints labeled (labels 1 and 2).
    pub fn k2_labeled() -> Self {
        LabeledMultigraph {
            n: 2,
            edges: vec![(0, 1)],
            labels: vec![Some(0), Some(1)],
        }
    }

    /// Edgeless graph on `k` vertices, vertex `i` labeled `i + 1`; the unit of k-connection.
    pub fn unit(k: usize) -> Self {
        LabeledMultigraph {
            n: k,
            edges: Vec::new(),
            labels: (0..k).map(Some).collect(),
        }
    }

    pub fn path(n: usize) -> Self {
        Self::unlabeled(n, (1..n).map(|i| (i - 1, i))).expect("valid path")
    }

    pub fn cycle(n: usize) -> Self {
        Self::unlabeled(n, (0..n).map(|i| (i, (i + 1) % n))).expect("valid cycle")
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)));
        Self::unlabeled(n, edges).expect("valid complete graph")
    }

    pub fn num_vertices(&self) -> usize {
        self.n
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn arity(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[Option<usize>] {
        &self.labels
    }

    /// Vertex carrying label `l` (1-based).
    pub fn labeled_vertex(&self, l: usize) -> Option<usize> {
        self.labels.get(l.checked_sub(1)?).copied().flatten()
    }

    /// Label of vertex `v`, if any (1-based).
    pub fn label_of(&self, v: usize) -> Option<usize> {
        self.labels.iter().position(|&x| x == Some(v)).map(|i| i + 1)
    }

    pub fn num_labeled(&self) -> usize {
        self.labels.iter().flatten().count()
    }

    pub fn loops_at(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v && b == v).count()
    }

    pub fn is_simple(&self) -> bool {
        self.edges.iter().all(|&(a, b)| a != b) && self.edges.windows(2).all(|w| w[0] != w[1])
    }

    /// Same graph with labels dropped (arity 0).
    pub fn forget_labels(&self) -> Self {
        LabeledMultigraph {
            n: self.n,
            edges: self.edges.clone(),
            labels: Vec::new(),
        }
    }

    /// Reinterprets the graph with arity `k`, keeping existing labels.
    pub fn with_arity(&self, k: usize) -> Result<Self, GraphError> {
        if let Some(l) = (k..self.labels.len()).find(|&i| self.labels[i].is_some()) {
            return Err(GraphError::LabelExceedsArity { label: l + 1, arity: k });
        }
        let mut labels = self.labels.clone();
        labels.resize(k, None);
        Ok(LabeledMultigraph { labels, ..self.clone() })
    }

    /// Moves every label `l` to `map(l)`, producing arity `k`.
    pub fn relabel(&self, k: usize, map: impl Fn(usize) -> usize) -> Result<Self, GraphError> {
        let mut labels = vec![None; k];
        for (i, v) in self.labels.iter().enumerate() {
            if let Some(v) = *v {
                let target = map(i + 1);
                if target == 0 || target > k {
                    return Err(GraphError::LabelExceedsArity { label: target, arity: k });
                }
                if labels[target - 1].replace(v).is_some() {
                    return Err(GraphError::DuplicateLabel(v));
                }
            }
        }
        Ok(LabeledMultigraph { labels, ..self.clone() })
    }

    /// Places label 1 on vertex `v` of an (otherwise unlabeled) graph, arity 1.
    pub fn with_label_one_at(&self, v: usize) -> Result<Self, GraphError> {
        Self::new(self.n, self.edges.iter().copied(), vec![Some(v)])
    }

    /// Image of the graph under the vertex bijection `perm` (old vertex `v` becomes `perm[v]`).
    pub fn permute(&self, perm: &[usize]) -> Self {
        let edges = self.edges.iter().map(|&(a, b)| (perm[a], perm[b]));
        let labels = self.labels.iter().map(|l| l.map(|v| perm[v])).collect();
        Self::new(self.n, edges, labels).expect("permutation preserves validity")
    }

    /// Multiplicity of the edge `{u, v}`.
    pub fn multiplicity(&self, u: usize, v: usize) -> usize {
        let key = (u.min(v), u.max(v));
        self.edges.iter().filter(|&&e| e == key).count()
    }

    pub fn adjacency_multiplicities(&self) -> Vec<Vec<u32>> {
        let mut adj = vec![vec![0u32; self.n]; self.n];
        for &(a, b) in &self.edges {
            adj[a][b] += 1;
            if a != b {
                adj[b][a] += 1;
            }
        }
        adj
    }

    /// Connected components as sorted vertex lists, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut c = x;
            while p[c] != r {
                let next = p[c];
                p[c] = r;
                c = next;
            }
            r
        }
        for &(a, b) in &self.edges {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
        let mut comps: Vec<Vec<usize>> = Vec::new();
        let mut index = vec![usize::MAX; self.n];
        for v in 0..self.n {
            let r = find(&mut parent, v);
            if index[r] == usize::MAX {
                index[r] = comps.len();
                comps.push(Vec::new());
            }
            comps[index[r]].push(v);
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.n > 0 && self.components().len() == 1
    }

    /// The k-connection `self · other`: disjoint union, then vertices carrying
    /// the same label are identified. Multiplicities add up.
    pub fn glue(&self, other: &Self) -> Result<Self, GraphError> {
        if self.arity() != other.arity() {
            return Err(GraphError::ArityMismatch(self.arity(), other.arity()));
        }
        let mut map = vec![usize::MAX; other.n];
        let mut labels = self.labels.clone();
        for (i, l) in other.labels.iter().enumerate() {
            if let (Some(v), Some(w)) = (*l, self.labels[i]) {
                map[v] = w;
            }
        }
        let mut n = self.n;
        for slot in map.iter_mut() {
            if *slot == usize::MAX {
                *slot = n;
                n += 1;
            }
        }
        for (i, l) in other.labels.iter().enumerate() {
            if let Some(v) = *l {
                labels[i] = Some(map[v]);
            }
        }
        let edges = self
            .edges
            .iter()
            .copied()
            .chain(other.edges.iter().map(|&(a, b)| (map[a], map[b])));
        Ok(Self::new(n, edges, labels).expect("gluing preserves validity"))
    }

    /// Plain disjoint union; labels of `other` must not collide with labels of `self`.
    pub fn disjoint_union(&self, other: &Self) -> Result<Self, GraphError> {
        let k = self.arity().max(other.arity());
        let mut labels = self.labels.clone();
        labels.resize(k, None);
        for (i, l) in other.labels.iter().enumerate() {
            if let Some(v) = *l {
                if labels[i].is_some() {
                    return Err(GraphError::DuplicateLabel(v + self.n));
                }
                labels[i] = Some(v + self.n);
            }
        }
        let edges = self
            .edges
            .iter()
            .copied()
            .chain(other.edges.iter().map(|&(a, b)| (a + self.n, b + self.n)));
        Self::new(self.n + other.n, edges, labels)
    }

    pub fn canonical_form(&self) -> CanonicalForm {
        canon::canonical_form(self)
    }

    pub fn canonical_code(&self) -> CanonicalCode {
        canon::canonical_form(self).code
    }
}

/// Label 1 goes on the vertex listed first in canonical order; arity becomes 1.
pub fn assign_label_one(g: &LabeledMultigraph) -> Result<LabeledMultigraph, GraphError> {
    if g.num_vertices() == 0 {
        return Err(GraphError::Empty);
    }
    let plain = g.forget_labels();
    let first = plain.canonical_form().order[0];
    plain.with_label_one_at(first)
}

impl fmt::Debug for LabeledMultigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "G(n={}, E={:?}", self.n, self.edges)?;
        if !self.labels.is_empty() {
            write!(f, ", labels={:?}", self.labels)?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labeled_edge(label_first: bool) -> LabeledMultigraph {
        let l = if label_first { Some(0) } else { Some(1) };
        LabeledMultigraph::new(2, [(0, 1)], vec![l]).unwrap()
    }

    #[test]
    fn glue_single_vertices() {
        let k1 = LabeledMultigraph::k1(1);
        let g = k1.glue(&k1).unwrap();
        assert_eq!(g.num_vertices(), 1);
        assert_eq!(g.num_edges(), 0);
        assert_eq!(g.labeled_vertex(1), Some(0));
    }

    #[test]
    fn glue_two_edges_gives_path_centered_on_label() {
        let a = labeled_edge(true);
        let b = labeled_edge(true);
        let g = a.glue(&b).unwrap();
        assert_eq!((g.num_vertices(), g.num_edges()), (3, 2));
        let center = g.labeled_vertex(1).unwrap();
        let deg = g.edges().iter().filter(|&&(x, y)| x == center || y == center).count();
        assert_eq!(deg, 2);
        let expected = LabeledMultigraph::new(3, [(0, 1), (1, 2)], vec![Some(1)]).unwrap();
        assert_eq!(g.canonical_code(), expected.canonical_code());
    }

    #[test]
    fn glue_fully_labeled_edges_doubles_the_edge() {
        let k2 = LabeledMultigraph::k2_labeled();
        let g = k2.glue(&k2).unwrap();
        assert_eq!(g.num_vertices(), 2);
        assert_eq!(g.multiplicity(0, 1), 2);
        assert_eq!(g.num_labeled(), 2);
    }

    #[test]
    fn glue_rejects_arity_mismatch() {
        assert_eq!(
            LabeledMultigraph::k1(1).glue(&LabeledMultigraph::k1(2)),
            Err(GraphError::ArityMismatch(1, 2))
        );
    }

    #[test]
    fn constructor_checks_invariants() {
        assert!(matches!(
            LabeledMultigraph::new(2, [(0, 2)], vec![]),
            Err(GraphError::EdgeOutOfRange { .. })
        ));
        assert!(matches!(
            LabeledMultigraph::new(2, [], vec![Some(0), Some(0)]),
            Err(GraphError::DuplicateLabel(0))
        ));
        assert!(matches!(
            LabeledMultigraph::new(1, [], vec![Some(3)]),
            Err(GraphError::LabelOutOfRange { .. })
        ));
    }

    #[test]
    fn assign_label_one_examples() {
        let k1 = LabeledMultigraph::unlabeled(1, []).unwrap();
        assert_eq!(assign_label_one(&k1).unwrap(), LabeledMultigraph::k1(1));
        let lp = LabeledMultigraph::bouquet(1);
        let l = assign_label_one(&lp).unwrap();
        assert_eq!((l.arity(), l.labeled_vertex(1), l.num_edges()), (1, Some(0), 1));
        let p3 = assign_label_one(&LabeledMultigraph::path(3)).unwrap();
        assert_eq!(p3.num_labeled(), 1);
        assert_eq!(p3.arity(), 1);
        assert_eq!(
            assign_label_one(&LabeledMultigraph::unlabeled(0, []).unwrap()),
            Err(GraphError::Empty)
        );
    }

    #[test]
    fn assign_label_one_is_isomorphism_invariant() {
        let a = LabeledMultigraph::unlabeled(3, [(0, 1), (1, 2), (2, 2)]).unwrap();
        let b = a.permute(&[2, 0, 1]);
        assert_eq!(
            assign_label_one(&a).unwrap().canonical_code(),
            assign_label_one(&b).unwrap().canonical_code()
        );
    }

    #[test]
    fn components_and_connectivity() {
        let g = LabeledMultigraph::unlabeled(5, [(0, 1), (3, 4), (2, 2)]).unwrap();
        assert_eq!(g.components(), vec![vec![0, 1], vec![2], vec![3, 4]]);
        assert!(!g.is_connected());
        assert!(LabeledMultigraph::cycle(4).is_connected());
    }

    #[test]
    fn relabel_and_union() {
        let k1 = LabeledMultigraph::k1(1);
        let moved = k1.relabel(2, |_| 2).unwrap();
        assert_eq!(moved.labels(), &[None, Some(0)]);
        let both = k1.with_arity(2).unwrap().disjoint_union(&moved).unwrap();
        assert_eq!(both.num_vertices(), 2);
        assert_eq!(both.labels(), &[Some(0), Some(1)]);
        assert!(k1.with_arity(2).unwrap().disjoint_union(&k1.with_arity(2).unwrap()).is_err());
    }
}
