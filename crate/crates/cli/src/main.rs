use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qhelix_core::dss::{DEFAULT_SCALE, DEFAULT_STEPS, DEFAULT_T_MAX};
use qhelix_core::{Error, IngestOptions, Result, TrajectoryMode};
use qhelix_cli::{
    cmd_evolve, cmd_game, cmd_pipeline, cmd_weights, parse_real_list, to_json, PipelineConfig,
    DEFAULT_SHOTS,
};

#[derive(Parser)]
#[command(name = "qhelix", version, about = "Quadruple-helix EWL game and capital trajectory pipeline")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Funding dominance weights and strategy angles for one project.
    Weights {
        #[command(flatten)]
        input: InputArgs,
        /// Write weights.json here instead of printing to stdout.
        #[arg(long)]
        output_dir: Option<PathBuf>,
    },
    /// Play the EWL game for explicit strategy angles.
    Game {
        /// Comma-separated angles in radians, qubit 0 first.
        #[arg(long, allow_hyphen_values = true)]
        thetas: String,
        /// Expected number of players; defaults to the number of angles.
        #[arg(long)]
        qubits: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_SHOTS)]
        shots: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Report only the exact distribution (no sampling).
        #[arg(long)]
        exact: bool,
        /// Write game.json here instead of printing to stdout.
        #[arg(long)]
        output_dir: Option<PathBuf>,
    },
    /// Capital trajectory from four recommender scores.
    Evolve {
        /// Comma-separated marginals q, Academia first.
        #[arg(long, allow_hyphen_values = true)]
        scores: String,
        #[command(flatten)]
        dynamics: DynamicsArgs,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// Write trajectory.csv / trajectory.json here instead of stdout.
        #[arg(long)]
        output_dir: Option<PathBuf>,
    },
    /// Full run from participant table to trajectory.
    Pipeline {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = DEFAULT_SHOTS)]
        shots: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        dynamics: DynamicsArgs,
        #[arg(long)]
        output_dir: PathBuf,
    },
}

#[derive(Args)]
struct InputArgs {
    /// Participant table (comma- or semicolon-delimited, with header row).
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    project: String,
    #[arg(long, default_value = "projectID")]
    project_column: String,
    #[arg(long, default_value = "activityType")]
    activity_column: String,
    #[arg(long, default_value = "ecContribution")]
    contribution_column: String,
}

impl InputArgs {
    fn ingest_options(&self) -> IngestOptions {
        IngestOptions {
            project_column: self.project_column.clone(),
            activity_column: self.activity_column.clone(),
            contribution_column: self.contribution_column.clone(),
            ..IngestOptions::default()
        }
    }
}

#[derive(Args)]
struct DynamicsArgs {
    /// Frequency scale Ω applied to the normalized scores.
    #[arg(long, default_value_t = DEFAULT_SCALE)]
    scale: f64,
    #[arg(long, default_value_t = DEFAULT_T_MAX)]
    t_max: f64,
    #[arg(long, default_value_t = DEFAULT_STEPS)]
    steps: usize,
    #[arg(long, value_parser = parse_mode, default_value = "survival")]
    mode: TrajectoryMode,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

fn parse_mode(s: &str) -> std::result::Result<TrajectoryMode, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn emit(output_dir: Option<&Path>, name: &str, contents: &str) -> Result<()> {
    match output_dir {
        Some(dir) => {
            fs::create_dir_all(dir).map_err(|source| Error::Io {
                path: dir.to_path_buf(),
                source,
            })?;
            let path = dir.join(name);
            fs::write(&path, contents).map_err(|source| Error::Io { path: path.clone(), source })?;
            println!("wrote {}", path.display());
        }
        None => {
            let _ = io::stdout().write_all(contents.as_bytes());
        }
    }
    Ok(())
}

fn execute(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Weights { input, output_dir } => {
            let doc = cmd_weights(&input.input, &input.project, &input.ingest_options())?;
            emit(output_dir.as_deref(), "weights.json", &to_json(&doc))
        }
        Command::Game {
            thetas,
            qubits,
            shots,
            seed,
            exact,
            output_dir,
        } => {
            let thetas = parse_real_list(&thetas, "theta")?;
            if let Some(n) = qubits {
                if n != thetas.len() {
                    return Err(Error::InvalidArgument(format!(
                        "--qubits {n} but {} angles given",
                        thetas.len()
                    )));
                }
            }
            let doc = cmd_game(&thetas, (!exact).then_some(shots), seed)?;
            emit(output_dir.as_deref(), "game.json", &to_json(&doc))
        }
        Command::Evolve {
            scores,
            dynamics,
            format,
            output_dir,
        } => {
            let scores = parse_real_list(&scores, "score")?;
            let tr = cmd_evolve(&scores, dynamics.scale, dynamics.t_max, dynamics.steps, dynamics.mode)?;
            match format {
                Format::Csv => emit(output_dir.as_deref(), "trajectory.csv", &tr.to_csv()),
                Format::Json => emit(output_dir.as_deref(), "trajectory.json", &to_json(&tr)),
            }
        }
        Command::Pipeline {
            input,
            shots,
            seed,
            dynamics,
            output_dir,
        } => {
            let config = PipelineConfig {
                ingest: input.ingest_options(),
                input_path: input.input,
                project_id: input.project,
                shots,
                seed,
                scale: dynamics.scale,
                t_max: dynamics.t_max,
                steps: dynamics.steps,
                mode: dynamics.mode,
                output_dir,
            };
            cmd_pipeline(&config, &mut io::stdout())
        }
    }
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error[{}]: {e}", e.code());
            ExitCode::FAILURE
        }
    }
}
