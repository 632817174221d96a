//! Learns the independence-polynomial graph with activity 2 and prints each
//! round of the session.
//!
//! cargo run --example learn_independence

use parlearn::learner::{learn, LearnerConfig};
use parlearn::linalg::rational::{rat, to_string};
use parlearn::partition::{weighted_iso, WeightedGraph};
use parlearn::teacher::{SimulatedTeacher, Teacher, TeacherConfig};
use parlearn::transcript::Event;

fn main() {
    let target = WeightedGraph::independence(rat(2));
    let teacher = SimulatedTeacher::new(target.clone(), TeacherConfig::default());
    let out = learn(&teacher, &LearnerConfig::default()).expect("rigid twin-free target");

    for e in out.transcript.events() {
        match e {
            Event::Rank { round, basis_size, rank } => {
                println!("round {round}: basis {basis_size}, rank {rank}")
            }
            Event::Hypothesis { round, alpha, beta, .. } => {
                let a: Vec<String> = alpha.iter().map(to_string).collect();
                let b: Vec<Vec<String>> = beta.iter().map(|r| r.iter().map(to_string).collect()).collect();
                println!("round {round}: hypothesis alpha={a:?} beta={b:?}");
            }
            Event::Counterexample { round, graph } => println!("round {round}: counterexample {graph:?}"),
            _ => {}
        }
    }
    let counts = teacher.counts();
    println!(
        "{} rounds, {} value queries, isomorphic to target: {}",
        out.rounds,
        counts.value,
        weighted_iso(&out.hypothesis, &target).is_some()
    );
}
