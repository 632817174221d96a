//! Command-line entry points. Each `cmd_*` returns the process exit code.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_traits::Zero;
use serde::Serialize;

use crate::experiments::{gen_target, rank_experiment, rigidity_stats};
use crate::graph::LabeledMultigraph;
use crate::learner::{learn_with_header, LearnError, LearnerConfig};
use crate::linalg::rational;
use crate::partition::{hom, is_rigid, is_twin_free, WeightedGraph};
use crate::teacher::{SimulatedTeacher, Teacher, TeacherConfig, TeacherError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_BOUND_EXHAUSTED: i32 = 2;
pub const EXIT_INVALID: i32 = 3;
pub const EXIT_ITERATION_CAP: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "parlearn", version, about = "Exact learning of rigid partition functions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Learn the target behind a simulated teacher.
    Learn(LearnArgs),
    /// Sample a rigid twin-free target.
    GenTarget(GenTargetArgs),
    /// Print hom(graph, target).
    Eval(EvalArgs),
    /// Rank of a sampled connection submatrix, as CSV.
    RankExperiment(RankArgs),
    /// Rigid fraction of random simple graphs per vertex count, as CSV.
    RigidityStats(RigidityArgs),
}

#[derive(Debug, Clone, Args)]
pub struct LearnArgs {
    #[arg(long)]
    pub target: PathBuf,
    /// Transcript (JSONL); the hypothesis goes next to it as `<stem>.hypothesis.json`.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, default_value_t = 6)]
    pub max_vertices: usize,
    #[arg(long, default_value_t = 8)]
    pub max_edges: usize,
    #[arg(long, default_value_t = 16)]
    pub iteration_cap: usize,
    /// Random graphs the teacher tries after its enumeration.
    #[arg(long, default_value_t = 0)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Args)]
pub struct GenTargetArgs {
    #[arg(long)]
    pub q: usize,
    /// Bound on numerators and denominators of the weights.
    #[arg(long, default_value_t = 3)]
    pub denominator_bound: u32,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct EvalArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub target: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct RankArgs {
    #[arg(long)]
    pub target: PathBuf,
    #[arg(long, default_value_t = 1)]
    pub k: usize,
    #[arg(long, default_value_t = 25)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct RigidityArgs {
    #[arg(long, default_value_t = 4)]
    pub n_min: usize,
    #[arg(long, default_value_t = 8)]
    pub n_max: usize,
    #[arg(long, default_value_t = 200)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("{path}: {message}")]
    Parse { path: PathBuf, message: String },
    #[error("target is not rigid")]
    NotRigid,
    #[error("target has twins")]
    NotTwinFree,
    #[error("target vertex {0} has weight zero")]
    ZeroVertexWeight(usize),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

/// Parameters of a learning run, written as the transcript header.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RunConfig {
    pub target: PathBuf,
    pub teacher: TeacherConfig,
    pub learner: LearnerConfig,
}

impl RunConfig {
    pub fn from_args(a: &LearnArgs) -> Result<Self, CliError> {
        let cfg = RunConfig {
            target: a.target.clone(),
            teacher: TeacherConfig {
                max_vertices: a.max_vertices,
                max_edges: a.max_edges,
                sample_budget: a.samples,
                seed: a.seed,
            },
            learner: LearnerConfig {
                iteration_cap: a.iteration_cap,
                ..LearnerConfig::default()
            },
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.teacher.max_vertices == 0 || self.teacher.max_edges == 0 {
            return Err(CliError::InvalidConfig("teacher bounds must be at least 1".into()));
        }
        if self.learner.iteration_cap == 0 {
            return Err(CliError::InvalidConfig("iteration cap must be at least 1".into()));
        }
        Ok(())
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })
}

pub fn load_target(path: &Path) -> Result<WeightedGraph, CliError> {
    serde_json::from_str(&read(path)?).map_err(|e| CliError::Parse {
        path: path.to_owned(),
        message: e.to_string(),
    })
}

pub fn load_graph(path: &Path) -> Result<LabeledMultigraph, CliError> {
    LabeledMultigraph::from_json_str(&read(path)?).map_err(|e| CliError::Parse {
        path: path.to_owned(),
        message: e.to_string(),
    })
}

/// Refuses targets the learner is not guaranteed to handle.
pub fn validate_target(h: &WeightedGraph) -> Result<(), CliError> {
    if let Some(i) = h.alpha().iter().position(|a| a.is_zero()) {
        return Err(CliError::ZeroVertexWeight(i));
    }
    if !is_twin_free(h) {
        return Err(CliError::NotTwinFree);
    }
    if !is_rigid(h) {
        return Err(CliError::NotRigid);
    }
    Ok(())
}

fn write_file(path: &Path, contents: &[u8]) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })
}

fn emit(out: Option<&Path>, stdout: &mut dyn Write, contents: &[u8]) -> Result<(), CliError> {
    match out {
        Some(p) => write_file(p, contents),
        None => stdout.write_all(contents).map_err(|source| CliError::Io {
            path: PathBuf::from("<stdout>"),
            source,
        }),
    }
}

fn csv_bytes<R: Serialize>(rows: impl IntoIterator<Item = R>) -> Vec<u8> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).expect("rows serialize");
    }
    w.into_inner().expect("in-memory writer")
}

/// Where the final hypothesis of a run writing its transcript to `out` goes.
pub fn hypothesis_path(out: &Path) -> PathBuf {
    out.with_extension("hypothesis.json")
}

fn invalid(e: CliError) -> i32 {
    eprintln!("error: {e}");
    EXIT_INVALID
}

fn failed(e: impl std::fmt::Display) -> i32 {
    eprintln!("error: {e}");
    EXIT_FAILURE
}

pub fn cmd_learn(args: &LearnArgs, stdout: &mut dyn Write) -> i32 {
    let cfg = match RunConfig::from_args(args) {
        Ok(c) => c,
        Err(e) => return invalid(e),
    };
    let target = match load_target(&cfg.target).and_then(|t| validate_target(&t).map(|_| t)) {
        Ok(t) => t,
        Err(e) => return invalid(e),
    };
    let teacher = SimulatedTeacher::new(target, cfg.teacher.clone());
    let header = serde_json::to_value(&cfg).expect("run config serializes");
    let result = learn_with_header(&teacher, &cfg.learner, header);
    let transcript = match &result {
        Ok(o) => &o.transcript,
        Err(f) => &f.transcript,
    };
    if let Some(out) = &args.out {
        if let Err(e) = write_file(out, transcript.to_jsonl().as_bytes()) {
            return failed(e);
        }
    }
    let counts = teacher.counts();
    match result {
        Ok(o) => {
            let json = serde_json::to_string_pretty(&o.hypothesis).expect("hypothesis serializes");
            if let Some(out) = &args.out {
                if let Err(e) = write_file(&hypothesis_path(out), json.as_bytes()) {
                    return failed(e);
                }
            }
            let _ = writeln!(stdout, "{json}");
            log::info!(
                "learned in {} rounds with {} value and {} equivalence queries",
                o.rounds,
                counts.value,
                counts.equivalence
            );
            EXIT_OK
        }
        Err(f) => {
            eprintln!("error: {}", f.error);
            match f.error {
                LearnError::Teacher(TeacherError::BoundExhausted { .. }) => EXIT_BOUND_EXHAUSTED,
                LearnError::IterationCapExceeded { .. } => EXIT_ITERATION_CAP,
                _ => EXIT_FAILURE,
            }
        }
    }
}

pub fn cmd_gen_target(args: &GenTargetArgs, stdout: &mut dyn Write) -> i32 {
    let h = match gen_target(args.q, args.denominator_bound, args.seed) {
        Ok(h) => h,
        Err(e) => return failed(e),
    };
    let mut json = serde_json::to_string_pretty(&h).expect("target serializes");
    json.push('\n');
    match emit(args.out.as_deref(), stdout, json.as_bytes()) {
        Ok(()) => EXIT_OK,
        Err(e) => failed(e),
    }
}

pub fn cmd_eval(args: &EvalArgs, stdout: &mut dyn Write) -> i32 {
    let loaded = load_graph(&args.graph).and_then(|g| Ok((g, load_target(&args.target)?)));
    match loaded {
        Ok((g, h)) => {
            let _ = writeln!(stdout, "{}", rational::to_string(&hom(&g, &h)));
            EXIT_OK
        }
        Err(e) => invalid(e),
    }
}

pub fn cmd_rank_experiment(args: &RankArgs, stdout: &mut dyn Write) -> i32 {
    let target = match load_target(&args.target) {
        Ok(t) => t,
        Err(e) => return invalid(e),
    };
    let report = match rank_experiment(&target, args.k, args.samples, args.seed) {
        Ok(r) => r,
        Err(e) => return invalid(CliError::InvalidConfig(e.to_string())),
    };
    if !report.within_bound {
        log::error!("rank {} exceeds q^k = {}", report.rank, report.bound);
    }
    match emit(args.out.as_deref(), stdout, &csv_bytes([report])) {
        Ok(()) => EXIT_OK,
        Err(e) => failed(e),
    }
}

pub fn cmd_rigidity_stats(args: &RigidityArgs, stdout: &mut dyn Write) -> i32 {
    if args.n_min == 0 || args.n_max > 10 || args.n_min > args.n_max {
        return invalid(CliError::InvalidConfig("vertex range must lie within 1..=10".into()));
    }
    let rows = rigidity_stats(args.n_min..=args.n_max, args.samples, args.seed);
    match emit(args.out.as_deref(), stdout, &csv_bytes(rows)) {
        Ok(()) => EXIT_OK,
        Err(e) => failed(e),
    }
}

pub fn run(cli: &Cli, stdout: &mut dyn Write) -> i32 {
    match &cli.command {
        Command::Learn(a) => cmd_learn(a, stdout),
        Command::GenTarget(a) => cmd_gen_target(a, stdout),
        Command::Eval(a) => cmd_eval(a, stdout),
        Command::RankExperiment(a) => cmd_rank_experiment(a, stdout),
        Command::RigidityStats(a) => cmd_rigidity_stats(a, stdout),
    }
}
