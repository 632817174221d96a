//! The teacher's search order, and the first counterexamples it finds for
//! a few wrong hypotheses.
//!
//! cargo run --example counterexample_stream

use parlearn::linalg::rational::{rat, to_string};
use parlearn::partition::WeightedGraph;
use parlearn::teacher::{enumerate_graphs, Equivalence, SimulatedTeacher, Teacher, TeacherConfig};

fn main() {
    let all = enumerate_graphs(4, 4);
    println!("{} connected multigraphs with at most 4 vertices and 4 edges", all.len());
    for g in all.iter().take(8) {
        println!("  {g:?}");
    }

    let teacher = SimulatedTeacher::new(WeightedGraph::independence(rat(2)), TeacherConfig::default());
    let wrong = [
        WeightedGraph::from_i64(&[3], &[&[1]]).unwrap(),
        WeightedGraph::independence(rat(3)),
        WeightedGraph::complete(2),
        WeightedGraph::from_i64(&[2, 1], &[&[0, 1], &[1, 1]]).unwrap(),
    ];
    for h in &wrong {
        let alpha: Vec<String> = h.alpha().iter().map(to_string).collect();
        match teacher.equivalent(h) {
            Ok(Equivalence::Yes) => println!("alpha {alpha:?}: YES"),
            Ok(Equivalence::Counterexample(g)) => println!("alpha {alpha:?}: {g:?}"),
            Err(e) => println!("alpha {alpha:?}: {e}"),
        }
    }
}
