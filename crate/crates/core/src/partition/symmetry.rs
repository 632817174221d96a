//! Twins, automorphisms and weighted isomorphism.

use super::WeightedGraph;
use crate::linalg::rational::Rational;
use crate::linalg::Matrix;

/// No two distinct rows of `beta` are entrywise equal.
pub fn is_twin_free(h: &WeightedGraph) -> bool {
    let q = h.q();
    (0..q).all(|i| (0..i).all(|j| h.beta().row(i) != h.beta().row(j)))
}

/// Merges every class of identical `beta` rows into one vertex whose weight
/// is the sum of the class weights. The partition function is unchanged.
pub fn make_twin_free(h: &WeightedGraph) -> WeightedGraph {
    let mut current = h.clone();
    loop {
        let q = current.q();
        // representative (first occurrence) for each vertex
        let mut rep: Vec<usize> = (0..q).collect();
        for i in 0..q {
            if let Some(j) = (0..i).find(|&j| rep[j] == j && current.beta().row(i) == current.beta().row(j)) {
                rep[i] = j;
            }
        }
        let keep: Vec<usize> = (0..q).filter(|&i| rep[i] == i).collect();
        if keep.len() == q {
            return current;
        }
        let alpha: Vec<Rational> = keep
            .iter()
            .map(|&r| {
                (0..q)
                    .filter(|&i| rep[i] == r)
                    .map(|i| current.alpha()[i].clone())
                    .sum()
            })
            .collect();
        let beta = Matrix::from_fn(keep.len(), keep.len(), |a, b| {
            current.beta()[(keep[a], keep[b])].clone()
        });
        current = WeightedGraph::new(alpha, beta).expect("submatrix of symmetric matrix");
    }
}

/// Backtracking search for weight-preserving bijections `V(a) → V(b)`.
/// `visit` receives each complete map and returns `false` to stop.
fn search_isomorphisms(a: &WeightedGraph, b: &WeightedGraph, visit: &mut dyn FnMut(&[usize]) -> bool) {
    if a.q() != b.q() {
        return;
    }
    let q = a.q();
    let mut map = Vec::with_capacity(q);
    let mut used = vec![false; q];
    fn go(
        a: &WeightedGraph,
        b: &WeightedGraph,
        map: &mut Vec<usize>,
        used: &mut [bool],
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        let v = map.len();
        if v == a.q() {
            return visit(map);
        }
        for w in 0..b.q() {
            if used[w]
                || a.alpha()[v] != b.alpha()[w]
                || a.beta()[(v, v)] != b.beta()[(w, w)]
                || map
                    .iter()
                    .enumerate()
                    .any(|(u, &mu)| a.beta()[(v, u)] != b.beta()[(w, mu)])
            {
                continue;
            }
            used[w] = true;
            map.push(w);
            let go_on = go(a, b, map, used, visit);
            map.pop();
            used[w] = false;
            if !go_on {
                return false;
            }
        }
        true
    }
    go(a, b, &mut map, &mut used, visit);
}

/// All permutations `σ` with `α(σ(i)) = α(i)` and `β(σ(i), σ(j)) = β(i, j)`.
pub fn automorphisms(h: &WeightedGraph) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    search_isomorphisms(h, h, &mut |m| {
        out.push(m.to_vec());
        true
    });
    out
}

/// Only the identity preserves the weights.
pub fn is_rigid(h: &WeightedGraph) -> bool {
    let mut proper = false;
    search_isomorphisms(h, h, &mut |m| {
        if m.iter().enumerate().any(|(i, &j)| i != j) {
            proper = true;
            return false;
        }
        true
    });
    !proper
}

/// A bijection `σ` from the vertices of `a` to those of `b` matching all
/// weights exactly, if one exists.
pub fn weighted_iso(a: &WeightedGraph, b: &WeightedGraph) -> Option<Vec<usize>> {
    let mut found = None;
    search_isomorphisms(a, b, &mut |m| {
        found = Some(m.to_vec());
        false
    });
    found
}
