//! `hom(G, H) = Σ_{t: V(G) → V(H)} Π_v α(t(v)) · Π_{{u,v} ∈ E(G)} β(t(u), t(v))`,
//! the product over edges running over the edge multiset (a loop at `v`
//! contributes `β(t(v), t(v))` once per loop).
//!
//! [`hom`] sums out one vertex at a time (variable elimination, greedily
//! choosing the vertex with the smallest resulting scope). It is exact and
//! agrees with [`hom_brute_force`], which enumerates all `q^|V|` maps.
//! Labels are ignored.

use std::collections::HashMap;

use num_traits::{One, Zero};

use super::WeightedGraph;
use crate::graph::{LabeledMultigraph, QuantumGraph};
use crate::linalg::rational::Rational;

struct Factor {
    /// Sorted vertex ids; the first is the most significant digit of the index.
    scope: Vec<usize>,
    table: Vec<Rational>,
}

fn pow_cache<'a>(
    cache: &'a mut HashMap<usize, Vec<Rational>>,
    h: &WeightedGraph,
    m: usize,
) -> &'a [Rational] {
    cache.entry(m).or_insert_with(|| {
        let q = h.q();
        let mut out = Vec::with_capacity(q * q);
        for a in 0..q {
            for b in 0..q {
                out.push(crate::linalg::rational::pow(&h.beta()[(a, b)], m));
            }
        }
        out
    })
}

pub fn hom(g: &LabeledMultigraph, h: &WeightedGraph) -> Rational {
    let q = h.q();
    let n = g.num_vertices();
    let adj = g.adjacency_multiplicities();
    let mut cache = HashMap::new();

    let mut factors: Vec<Factor> = Vec::new();
    for (v, row) in adj.iter().enumerate() {
        let loops = row[v] as usize;
        let diag = pow_cache(&mut cache, h, loops);
        let table = (0..q).map(|c| &h.alpha()[c] * &diag[c * q + c]).collect();
        factors.push(Factor { scope: vec![v], table });
    }
    for (u, row) in adj.iter().enumerate() {
        for (v, &m) in row.iter().enumerate().skip(u + 1) {
            if m > 0 {
                let table = pow_cache(&mut cache, h, m as usize).to_vec();
                factors.push(Factor { scope: vec![u, v], table });
            }
        }
    }

    let mut remaining: Vec<bool> = vec![true; n];
    for _ in 0..n {
        // Greedy min-scope elimination order.
        let v = (0..n)
            .filter(|&v| remaining[v])
            .min_by_key(|&v| {
                let mut s: Vec<usize> = factors
                    .iter()
                    .filter(|f| f.scope.contains(&v))
                    .flat_map(|f| f.scope.iter().copied())
                    .collect();
                s.sort_unstable();
                s.dedup();
                (s.len(), v)
            })
            .expect("vertex left to eliminate");
        remaining[v] = false;
        let (touching, rest): (Vec<Factor>, Vec<Factor>) =
            factors.into_iter().partition(|f| f.scope.contains(&v));
        factors = rest;
        factors.push(eliminate(v, &touching, q));
    }
    factors
        .iter()
        .map(|f| f.table[0].clone())
        .fold(Rational::one(), |acc, x| acc * x)
}

fn eliminate(v: usize, touching: &[Factor], q: usize) -> Factor {
    let mut union: Vec<usize> = touching.iter().flat_map(|f| f.scope.iter().copied()).collect();
    union.sort_unstable();
    union.dedup();
    let out_scope: Vec<usize> = union.iter().copied().filter(|&w| w != v).collect();
    let out_len = q.pow(out_scope.len() as u32);
    let mut table = vec![Rational::zero(); out_len];
    // Position of each factor's variables inside `union`.
    let positions: Vec<Vec<usize>> = touching
        .iter()
        .map(|f| {
            f.scope
                .iter()
                .map(|w| union.iter().position(|u| u == w).unwrap())
                .collect()
        })
        .collect();
    let v_pos = union.iter().position(|&u| u == v).unwrap();
    let mut assign = vec![0usize; union.len()];
    let total = q.pow(union.len() as u32);
    for _ in 0..total {
        let mut prod = Rational::one();
        for (f, pos) in touching.iter().zip(&positions) {
            let idx = pos.iter().fold(0, |acc, &p| acc * q + assign[p]);
            let val = &f.table[idx];
            if val.is_zero() {
                prod = Rational::zero();
                break;
            }
            prod *= val;
        }
        if !prod.is_zero() {
            let out_idx = assign
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != v_pos)
                .fold(0, |acc, (_, &a)| acc * q + a);
            table[out_idx] += prod;
        }
        // Odometer increment, last digit fastest.
        for d in (0..assign.len()).rev() {
            assign[d] += 1;
            if assign[d] < q {
                break;
            }
            assign[d] = 0;
        }
    }
    Factor {
        scope: out_scope,
        table,
    }
}

/// Reference implementation: enumerate every map `V(G) → V(H)`.
pub fn hom_brute_force(g: &LabeledMultigraph, h: &WeightedGraph) -> Rational {
    let q = h.q();
    let n = g.num_vertices();
    let mut t = vec![0usize; n];
    let mut total = Rational::zero();
    loop {
        let mut w: Rational = t.iter().map(|&c| h.alpha()[c].clone()).product();
        for &(a, b) in g.edges() {
            if w.is_zero() {
                break;
            }
            w *= &h.beta()[(t[a], t[b])];
        }
        total += w;
        let mut d = 0;
        loop {
            if d == n {
                return total;
            }
            t[d] += 1;
            if t[d] < q {
                break;
            }
            t[d] = 0;
            d += 1;
        }
    }
}

/// Linear extension to quantum graphs.
pub fn hom_quantum(x: &QuantumGraph, h: &WeightedGraph) -> Rational {
    x.terms().map(|(g, c)| c * hom(g, h)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rational::{frac, rat};

    fn h_star() -> WeightedGraph {
        WeightedGraph::independence(rat(2))
    }

    #[test]
    fn values_on_the_fixture() {
        let h = h_star();
        let k1 = LabeledMultigraph::unlabeled(1, []).unwrap();
        assert_eq!(hom(&k1, &h), rat(3));
        assert_eq!(hom(&LabeledMultigraph::complete(2), &h), rat(5));
        assert_eq!(hom(&LabeledMultigraph::path(3), &h), rat(11));
        assert_eq!(hom(&LabeledMultigraph::bouquet(1), &h), rat(1));
        let double = LabeledMultigraph::unlabeled(2, [(0, 1), (0, 1)]).unwrap();
        assert_eq!(hom(&double, &h), rat(5));
    }

    #[test]
    fn triangle_colorings() {
        assert_eq!(hom(&LabeledMultigraph::complete(3), &WeightedGraph::complete(3)), rat(6));
    }

    #[test]
    fn empty_graph_is_one() {
        let g = LabeledMultigraph::unlabeled(0, []).unwrap();
        assert_eq!(hom(&g, &h_star()), rat(1));
        assert_eq!(hom_brute_force(&g, &h_star()), rat(1));
    }

    #[test]
    fn quantum_values() {
        let h = h_star();
        assert_eq!(hom_quantum(&QuantumGraph::zero(0), &h), rat(0));
        let k1 = LabeledMultigraph::unlabeled(1, []).unwrap();
        assert_eq!(hom_quantum(&QuantumGraph::from_graph(k1).scale(&rat(2)), &h), rat(6));
        let x = QuantumGraph::from_terms(
            0,
            [(rat(1), LabeledMultigraph::complete(2)), (rat(-1), LabeledMultigraph::path(3))],
        )
        .unwrap();
        assert_eq!(hom_quantum(&x, &h), rat(-6));
    }

    #[test]
    fn elimination_matches_brute_force_on_mixed_graph() {
        let h = WeightedGraph::new(
            vec![frac(1, 2), rat(-3), rat(2)],
            crate::linalg::Matrix::from_rows(vec![
                vec![rat(1), frac(2, 3), rat(0)],
                vec![frac(2, 3), rat(2), rat(1)],
                vec![rat(0), rat(1), frac(-1, 2)],
            ])
            .unwrap(),
        )
        .unwrap();
        let g = LabeledMultigraph::unlabeled(
            6,
            [(0, 1), (1, 2), (2, 0), (2, 3), (3, 3), (3, 4), (3, 4), (5, 5)],
        )
        .unwrap();
        assert_eq!(hom(&g, &h), hom_brute_force(&g, &h));
    }
}
