//! Gluing labeled graphs and quantum graphs, and evaluating them.
//!
//! cargo run --example quantum_algebra

use parlearn::graph::{LabeledMultigraph, QuantumGraph};
use parlearn::linalg::rational::{frac, rat, to_string};
use parlearn::partition::{hom, hom_quantum, WeightedGraph};

fn main() {
    let h = WeightedGraph::independence(rat(2));
    let k1 = LabeledMultigraph::k1(1);
    let rooted_loop = LabeledMultigraph::bouquet(1).with_label_one_at(0).unwrap();
    let rooted_edge = LabeledMultigraph::path(2).with_label_one_at(0).unwrap();

    // Gluing at the label adds up loops and shares the root.
    let glued = rooted_loop.glue(&rooted_edge).unwrap();
    println!("loop . edge = {glued:?}, hom = {}", to_string(&hom(&glued, &h)));

    // The two idempotents of H*: K1 - loop and the loop itself.
    let p1 = QuantumGraph::from_terms(1, [(rat(1), k1.clone()), (rat(-1), rooted_loop.clone())]).unwrap();
    let p2 = QuantumGraph::from_graph(rooted_loop.clone());
    for (name, p) in [("p1", &p1), ("p2", &p2)] {
        let sq = p.glue(p).unwrap();
        println!(
            "{name}: f(p) = {}, f(p p) = {}",
            to_string(&hom_quantum(p, &h)),
            to_string(&hom_quantum(&sq, &h))
        );
    }
    let cross = p1.glue(&p2).unwrap();
    println!("f(p1 p2) = {}", to_string(&hom_quantum(&cross, &h)));

    // Two-labeled tensor and the edge weight read off it.
    let p12 = QuantumGraph::tensor2(&p1, &p2).unwrap();
    let norm = hom_quantum(&p12.glue(&p12).unwrap(), &h);
    let edge = QuantumGraph::from_graph(LabeledMultigraph::k2_labeled());
    let b = hom_quantum(&edge.glue(&p12).unwrap(), &h);
    println!("beta(1,2) = {} / {} = {}", to_string(&b), to_string(&norm), to_string(&(&b / &norm)));

    let half = p1.scale(&frac(1, 2)).add(&p2).unwrap();
    println!("p1/2 + p2 has {} terms", half.len());
}
