//! Learns seeded random targets and prints rounds and query counts.
//!
//! cargo run --release --example random_targets -- [q] [count]

use std::time::Instant;

use parlearn::experiments::gen_target;
use parlearn::learner::{learn, LearnerConfig};
use parlearn::partition::weighted_iso;
use parlearn::teacher::{SimulatedTeacher, Teacher, TeacherConfig};

fn main() {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<usize>().expect("integer argument"));
    let q = args.next().unwrap_or(3);
    let count = args.next().unwrap_or(10);
    println!("seed,q,rounds,value_queries,max_per_round,ok,ms");
    for seed in 0..count as u64 {
        let target = gen_target(q, 3, seed).expect("target");
        let teacher = SimulatedTeacher::new(target.clone(), TeacherConfig::default());
        let start = Instant::now();
        let result = learn(&teacher, &LearnerConfig::default());
        let ms = start.elapsed().as_millis();
        match result {
            Ok(out) => {
                let per_round = out.transcript.value_queries_per_round();
                println!(
                    "{seed},{q},{},{},{},{},{ms}",
                    out.rounds,
                    teacher.counts().value,
                    per_round.iter().max().unwrap_or(&0),
                    weighted_iso(&out.hypothesis, &target).is_some()
                );
            }
            Err(fail) => println!("{seed},{q},,,,{},{ms}", fail.error),
        }
    }
}
