//! Fraction of rigid random graphs as the vertex count grows, and the
//! automorphism group of a few weighted graphs.
//!
//! cargo run --release --example rigidity

use parlearn::experiments::rigidity_stats;
use parlearn::linalg::rational::{rat, to_string};
use parlearn::partition::{automorphisms, is_rigid, make_twin_free, WeightedGraph};

fn main() {
    for row in rigidity_stats(1..=9, 200, 0) {
        println!("n={} rigid {}/{} ({:.3})", row.n, row.rigid, row.samples, row.fraction);
    }

    let star = WeightedGraph::independence(rat(2));
    println!("independence graph rigid: {}", is_rigid(&star));
    println!("|Aut(unit K4)| = {}", automorphisms(&WeightedGraph::complete(4)).len());

    let twins = WeightedGraph::from_i64(&[1, 2, 3], &[&[0, 1, 0], &[1, 0, 1], &[0, 1, 0]]).unwrap();
    let merged = make_twin_free(&twins);
    let alpha: Vec<String> = merged.alpha().iter().map(to_string).collect();
    println!("path with twin ends merges to alpha={alpha:?}");
}
