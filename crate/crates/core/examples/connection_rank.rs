//! Rank of sampled connection submatrices against the q^k bound.
//!
//! cargo run --release --example connection_rank

use parlearn::experiments::{gen_target, rank_experiment};
use parlearn::linalg::rational::rat;
use parlearn::partition::WeightedGraph;

fn main() {
    let mut targets = vec![
        ("independence x=2".to_string(), WeightedGraph::independence(rat(2))),
        ("unit K3".to_string(), WeightedGraph::complete(3)),
    ];
    for seed in 0..3 {
        targets.push((format!("random q=3 seed {seed}"), gen_target(3, 3, seed).unwrap()));
    }
    println!("target,k,samples,rank,bound,reached_q");
    for (name, h) in &targets {
        for k in [1, 2] {
            let r = rank_experiment(h, k, 25, 7).unwrap();
            println!("{name},{k},{},{},{},{:?}", r.samples, r.rank, r.bound, r.reached_q);
        }
    }
}
