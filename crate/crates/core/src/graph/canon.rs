//! Canonical codes for labeled multigraphs.
//!
//! Each connected component is canonized separately: colors are refined from
//! (label, loop count) by neighbor multisets until stable, and then every
//! vertex ordering consistent with the color classes is tried, keeping the
//! lexicographically least serialization (branch and bound on prefixes). The
//! search is exponential in the size of the largest color class, which is the
//! scaling limit of this module. Component codes are then sorted.

use std::cmp::Ordering;
use std::fmt;

use super::LabeledMultigraph;

/// Byte string identifying a labeled multigraph up to label-preserving isomorphism.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalCode(Vec<u8>);

impl CanonicalCode {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }
}

impl fmt::Debug for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalCode(")?;
        for b in &self.0 {
            write!(f, "{b:02x}")?;
        }
        write!(f, ")")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalForm {
    pub code: CanonicalCode,
    /// `order[i]` is the original vertex placed at canonical position `i`.
    pub order: Vec<usize>,
}

pub(super) fn canonical_form(g: &LabeledMultigraph) -> CanonicalForm {
    let adj = g.adjacency_multiplicities();
    let mut vertex_label = vec![0u32; g.num_vertices()];
    for (i, l) in g.labels().iter().enumerate() {
        if let Some(v) = *l {
            vertex_label[v] = i as u32 + 1;
        }
    }
    let mut parts: Vec<(Vec<u32>, Vec<usize>)> = g
        .components()
        .into_iter()
        .map(|comp| canonize_component(&comp, &adj, &vertex_label))
        .collect();
    parts.sort_by(|a, b| a.0.cmp(&b.0));

    let mut words = vec![g.num_vertices() as u32, g.arity() as u32, parts.len() as u32];
    let mut order = Vec::with_capacity(g.num_vertices());
    for (code, ord) in parts {
        words.push(code.len() as u32);
        words.extend(code);
        order.extend(ord);
    }
    let bytes = words.iter().flat_map(|w| w.to_be_bytes()).collect();
    CanonicalForm {
        code: CanonicalCode(bytes),
        order,
    }
}

fn refine_colors(comp: &[usize], adj: &[Vec<u32>], vertex_label: &[u32]) -> Vec<u32> {
    // Colors indexed by position within `comp`.
    let initial: Vec<(u32, u32)> = comp
        .iter()
        .map(|&v| (vertex_label[v], adj[v][v]))
        .collect();
    let mut colors = rank(&initial);
    loop {
        let sigs: Vec<(u32, Vec<(u32, u32)>)> = comp
            .iter()
            .enumerate()
            .map(|(i, &v)| {
                let mut nb: Vec<(u32, u32)> = comp
                    .iter()
                    .enumerate()
                    .filter(|&(j, &w)| j != i && adj[v][w] > 0)
                    .map(|(j, &w)| (colors[j], adj[v][w]))
                    .collect();
                nb.sort_unstable();
                (colors[i], nb)
            })
            .collect();
        let next = rank(&sigs);
        let classes = |c: &[u32]| c.iter().max().map_or(0, |m| m + 1);
        if classes(&next) == classes(&colors) {
            return next;
        }
        colors = next;
    }
}

/// Replaces each item by the rank of its value among the distinct values.
fn rank<T: Ord + Clone>(items: &[T]) -> Vec<u32> {
    let mut distinct: Vec<T> = items.to_vec();
    distinct.sort();
    distinct.dedup();
    items
        .iter()
        .map(|x| distinct.binary_search(x).expect("present") as u32)
        .collect()
}

struct Search<'a> {
    comp: &'a [usize],
    adj: &'a [Vec<u32>],
    vertex_label: &'a [u32],
    /// Color required at each canonical position.
    slot_colors: Vec<u32>,
    colors: Vec<u32>,
    used: Vec<bool>,
    current: Vec<usize>,
    words: Vec<u32>,
    best: Option<(Vec<u32>, Vec<usize>)>,
    updates: usize,
}

impl Search<'_> {
    /// Words contributed by the vertex (by position in `comp`) placed at the next slot.
    fn segment(&self, local: usize) -> Vec<u32> {
        let v = self.comp[local];
        let mut seg = Vec::with_capacity(self.current.len() + 2);
        seg.push(self.vertex_label[v]);
        seg.push(self.adj[v][v]);
        for &prev in &self.current {
            seg.push(self.adj[v][self.comp[prev]]);
        }
        seg
    }

    /// `tight` means the current prefix equals the best code's prefix; otherwise
    /// it is strictly smaller (or there is no best yet).
    fn run(&mut self, mut tight: bool) {
        let depth = self.current.len();
        if depth == self.comp.len() {
            if tight && self.best.is_some() {
                return;
            }
            let ord = self.current.iter().map(|&i| self.comp[i]).collect();
            self.best = Some((self.words.clone(), ord));
            self.updates += 1;
            return;
        }
        let want = self.slot_colors[depth];
        for local in 0..self.comp.len() {
            if self.used[local] || self.colors[local] != want {
                continue;
            }
            let seg = self.segment(local);
            let start = self.words.len();
            let mut next_tight = false;
            if tight {
                if let Some((best, _)) = &self.best {
                    match seg.as_slice().cmp(&best[start..start + seg.len()]) {
                        Ordering::Greater => continue,
                        Ordering::Equal => next_tight = true,
                        Ordering::Less => {}
                    }
                }
            }
            self.used[local] = true;
            self.current.push(local);
            self.words.extend_from_slice(&seg);
            let before = self.updates;
            self.run(next_tight);
            if self.updates != before {
                // The new best extends the current prefix.
                tight = true;
            }
            self.words.truncate(start);
            self.current.pop();
            self.used[local] = false;
        }
    }
}

fn canonize_component(comp: &[usize], adj: &[Vec<u32>], vertex_label: &[u32]) -> (Vec<u32>, Vec<usize>) {
    let colors = refine_colors(comp, adj, vertex_label);
    let mut slot_colors = colors.clone();
    slot_colors.sort_unstable();
    let mut search = Search {
        comp,
        adj,
        vertex_label,
        slot_colors,
        colors,
        used: vec![false; comp.len()],
        current: Vec::with_capacity(comp.len()),
        words: Vec::new(),
        best: None,
        updates: 0,
    };
    search.run(true);
    let (mut words, order) = search.best.expect("nonempty component");
    let mut code = vec![comp.len() as u32];
    code.append(&mut words);
    (code, order)
}
