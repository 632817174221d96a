//! Partition functions of small graphs: proper colourings, independent sets
//! and a weighted target with loops.
//!
//! cargo run --example partition_function

use parlearn::graph::LabeledMultigraph;
use parlearn::linalg::rational::{rat, to_string};
use parlearn::partition::{hom, hom_brute_force, WeightedGraph};

fn main() {
    let graphs = [
        ("K3", LabeledMultigraph::complete(3)),
        ("C4", LabeledMultigraph::cycle(4)),
        ("P4", LabeledMultigraph::path(4)),
        ("K4", LabeledMultigraph::complete(4)),
        ("loop", LabeledMultigraph::bouquet(1)),
    ];
    let targets = [
        ("3-colourings", WeightedGraph::complete(3)),
        ("independent sets, x=1", WeightedGraph::independence(rat(1))),
        ("independence, x=2", WeightedGraph::independence(rat(2))),
    ];
    for (tname, h) in &targets {
        println!("{tname}");
        for (gname, g) in &graphs {
            let v = hom(g, h);
            assert_eq!(v, hom_brute_force(g, h));
            println!("  hom({gname}) = {}", to_string(&v));
        }
    }
}
