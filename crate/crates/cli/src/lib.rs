//! Pipeline commands behind the `qhelix` binary.
//!
//! Each command returns plain data; `main.rs` handles argument parsing,
//! printing and exit codes. Output documents are deterministic: no
//! timestamps, no absolute paths, and JSON floats use shortest round-trip
//! formatting.

use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use qhelix_core::dss::{DEFAULT_SCALE, DEFAULT_STEPS, DEFAULT_T_MAX};
use qhelix_core::simulator::bitstring;
use qhelix_core::{
    angles_from_dominance, build_ewl_circuit, build_hamiltonian, compute_dominance, count_ops,
    export_qasm, load_participants, marginal_scores, play_game, sample, trajectory, CircuitStats,
    DssState, Error, IngestOptions, OutcomeDistribution, PerActor, RecommenderScores, Result,
    ShotCounts, StrategyAngles, Trajectory, TrajectoryMode,
};
use serde::Serialize;

/// Shot count used when none is given.
pub const DEFAULT_SHOTS: u64 = 8192;

pub const BIT_ORDER: &str =
    "qubit i is bit i of the outcome index (qubit 0 least significant); bitstrings list qubit n-1 first";

#[derive(Debug, Clone)]
pub struct PipelineConfig {
    pub input_path: PathBuf,
    pub project_id: String,
    pub shots: u64,
    pub seed: u64,
    pub scale: f64,
    pub t_max: f64,
    pub steps: usize,
    pub mode: TrajectoryMode,
    pub output_dir: PathBuf,
    pub ingest: IngestOptions,
}

impl PipelineConfig {
    pub fn new(input_path: impl Into<PathBuf>, project_id: &str, output_dir: impl Into<PathBuf>) -> Self {
        Self {
            input_path: input_path.into(),
            project_id: project_id.to_string(),
            shots: DEFAULT_SHOTS,
            seed: 0,
            scale: DEFAULT_SCALE,
            t_max: DEFAULT_T_MAX,
            steps: DEFAULT_STEPS,
            mode: TrajectoryMode::default(),
            output_dir: output_dir.into(),
            ingest: IngestOptions::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.shots == 0 {
            return Err(Error::InvalidArgument("shots must be at least 1".into()));
        }
        if !self.scale.is_finite() || self.scale <= 0.0 {
            return Err(Error::InvalidArgument(format!("scale {} must be positive", self.scale)));
        }
        if !self.t_max.is_finite() || self.t_max <= 0.0 {
            return Err(Error::InvalidArgument(format!("t_max {} must be positive", self.t_max)));
        }
        if self.steps < 2 {
            return Err(Error::InvalidArgument(format!("steps {} must be >= 2", self.steps)));
        }
        Ok(())
    }
}

/// Parses a comma-separated list of finite reals, e.g. `"0.1, 0.2,0.3"`.
pub fn parse_real_list(text: &str, what: &str) -> Result<Vec<f64>> {
    let values = text
        .split(',')
        .map(|tok| {
            let tok = tok.trim();
            tok.parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .ok_or_else(|| Error::InvalidArgument(format!("malformed {what} entry {tok:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    if values.is_empty() {
        return Err(Error::InvalidArgument(format!("empty {what} list")));
    }
    Ok(values)
}

#[derive(Debug, Clone, Serialize)]
pub struct WeightsDocument {
    pub project_id: String,
    pub p: PerActor<f64>,
    pub theta: PerActor<f64>,
}

pub fn cmd_weights(input: &Path, project_id: &str, ingest: &IngestOptions) -> Result<WeightsDocument> {
    let records = load_participants(input, ingest)?;
    weights_from_records(&records, project_id)
}

fn weights_from_records(
    records: &[qhelix_core::ParticipantRecord],
    project_id: &str,
) -> Result<WeightsDocument> {
    let weights = compute_dominance(records, project_id)?;
    let theta = angles_from_dominance(&weights);
    Ok(WeightsDocument {
        project_id: project_id.trim().to_string(),
        p: PerActor(weights.as_array()),
        theta: PerActor(theta.as_slice().try_into().expect("four helix angles")),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct GameDocument {
    pub n_qubits: usize,
    pub thetas: Vec<f64>,
    pub bit_order: &'static str,
    pub probabilities: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shots: Option<ShotCounts>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub scores: RecommenderScores,
    pub stats: CircuitStats,
}

/// Plays the game for `thetas`. With `shots = None` only the exact
/// distribution is reported.
pub fn cmd_game(thetas: &[f64], shots: Option<u64>, seed: u64) -> Result<GameDocument> {
    let angles = StrategyAngles::new(thetas.to_vec())?;
    let circuit = build_ewl_circuit(&angles)?;
    let stats = count_ops(&circuit);
    let dist = play_game(&angles)?;
    let scores = marginal_scores(&dist)?;
    let shots = shots.map(|n| sample(&dist, n, seed)).transpose()?;
    Ok(GameDocument {
        n_qubits: angles.len(),
        thetas: thetas.to_vec(),
        bit_order: BIT_ORDER,
        probabilities: dist.probabilities().to_vec(),
        seed: shots.as_ref().map(|_| seed),
        shots,
        scores,
        stats,
    })
}

pub fn cmd_evolve(
    scores: &[f64],
    scale: f64,
    t_max: f64,
    steps: usize,
    mode: TrajectoryMode,
) -> Result<Trajectory> {
    let scores = RecommenderScores::from_marginals(scores.to_vec())?;
    let h = build_hamiltonian(&scores, scale)?;
    trajectory(&h, &DssState::uniform(), t_max, steps, mode)
}

/// `index,bitstring,probability,count` rows in index order.
pub fn distribution_csv(dist: &OutcomeDistribution, counts: Option<&ShotCounts>) -> String {
    let n = dist.n_qubits();
    let mut out = String::from("index,bitstring,probability,count\n");
    for (k, p) in dist.probabilities().iter().enumerate() {
        let bits = bitstring(k, n);
        let count = counts.map(|c| c.counts.get(&bits).copied().unwrap_or(0));
        let _ = match count {
            Some(c) => writeln!(out, "{k},{bits},{p},{c}"),
            None => writeln!(out, "{k},{bits},{p},"),
        };
    }
    out
}

#[derive(Debug, Clone, Serialize)]
struct ScoresDocument {
    bit_order: &'static str,
    q: PerActor<f64>,
    omega: PerActor<f64>,
    scale: f64,
    frequencies: PerActor<f64>,
}

#[derive(Debug, Clone, Serialize)]
struct StatsDocument<'a> {
    #[serde(flatten)]
    stats: &'a CircuitStats,
    n_qubits: usize,
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable document");
    s.push('\n');
    s
}

fn write_artifact(dir: &Path, name: &str, contents: &str) -> Result<()> {
    let path = dir.join(name);
    fs::write(&path, contents).map_err(|source| Error::Io { path, source })
}

pub const PIPELINE_ARTIFACTS: [&str; 6] = [
    "weights.json",
    "circuit.qasm",
    "stats.json",
    "distribution.csv",
    "scores.json",
    "trajectory.csv",
];

/// Runs ingest → weights → game → scores → Hamiltonian → trajectory, writing
/// each stage's artifact as soon as it completes and one summary line per
/// stage to `log`.
pub fn cmd_pipeline(config: &PipelineConfig, log: &mut dyn Write) -> Result<()> {
    config.validate()?;
    let mut say = |line: String| {
        let _ = writeln!(log, "{line}");
    };
    let dir = &config.output_dir;
    fs::create_dir_all(dir).map_err(|source| Error::Io {
        path: dir.clone(),
        source,
    })?;

    let records = load_participants(&config.input_path, &config.ingest)?;
    say(format!("[ingest] {} participant records", records.len()));

    let weights = weights_from_records(&records, &config.project_id)?;
    write_artifact(dir, "weights.json", &to_json(&weights))?;
    say(format!(
        "[weights] project {}: p = {:?}",
        weights.project_id,
        weights.p.0.map(|x| (x * 1e4).round() / 1e4)
    ));

    let angles = StrategyAngles::new(weights.theta.0.to_vec())?;
    let circuit = build_ewl_circuit(&angles)?;
    let stats = count_ops(&circuit);
    write_artifact(dir, "circuit.qasm", &export_qasm(&circuit))?;
    write_artifact(
        dir,
        "stats.json",
        &to_json(&StatsDocument {
            stats: &stats,
            n_qubits: circuit.n_qubits(),
        }),
    )?;
    say(format!(
        "[circuit] {} unitary gates, depth {}",
        stats.total_unitary_gates, stats.depth
    ));

    let dist = play_game(&angles)?;
    let counts = sample(&dist, config.shots, config.seed)?;
    write_artifact(dir, "distribution.csv", &distribution_csv(&dist, Some(&counts)))?;
    say(format!(
        "[game] exact distribution over {} outcomes, {} shots (seed {})",
        dist.probabilities().len(),
        config.shots,
        config.seed
    ));

    let scores = marginal_scores(&dist)?;
    let h = build_hamiltonian(&scores, config.scale)?;
    let four = |v: &[f64]| PerActor(<[f64; 4]>::try_from(v).expect("four actors"));
    write_artifact(
        dir,
        "scores.json",
        &to_json(&ScoresDocument {
            bit_order: BIT_ORDER,
            q: four(&scores.q),
            omega: four(&scores.omega),
            scale: h.scale(),
            frequencies: PerActor(h.omega()),
        }),
    )?;
    say(format!(
        "[scores] q = {:?}",
        scores.q.iter().map(|x| (x * 1e4).round() / 1e4).collect::<Vec<_>>()
    ));

    let tr = trajectory(&h, &DssState::uniform(), config.t_max, config.steps, config.mode)?;
    write_artifact(dir, "trajectory.csv", &tr.to_csv())?;
    let (lo, hi) = tr
        .p_disruptive
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &p| (lo.min(p), hi.max(p)));
    say(format!(
        "[trajectory] {} mode, {} points on [0, {}], p in [{lo:.4}, {hi:.4}]",
        config.mode, config.steps, config.t_max
    ));
    Ok(())
}
