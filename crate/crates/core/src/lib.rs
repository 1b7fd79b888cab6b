//! Quadruple-helix EWL quantum game pipeline.
//!
//! Funding tables are reduced to per-actor dominance weights ([`cordis`]),
//! encoded as `Ry` strategy angles in a parameterized EWL game circuit
//! ([`ewl`], [`circuit`]), simulated exactly ([`simulator`]), and the
//! resulting per-actor marginals drive a diagonal four-level Hamiltonian
//! whose time evolution gives the capital trajectory ([`dss`]).

pub mod circuit;
pub mod cordis;
pub mod dss;
mod error;
pub mod ewl;
pub mod simulator;

pub use circuit::{count_ops, depth, export_qasm, parse_qasm, Circuit, CircuitStats, GateKind, Instruction};
pub use cordis::{
    compute_dominance, load_participants, map_activity_type, DominanceWeights, IngestOptions,
    ParticipantRecord,
};
pub use dss::{build_hamiltonian, evolve, trajectory, DssHamiltonian, DssState, Trajectory, TrajectoryMode};
pub use error::{Error, Result};
pub use ewl::{
    angles_from_dominance, build_ewl_circuit, marginal_scores, play_game, HelixActor, PerActor,
    RecommenderScores, StrategyAngles,
};
pub use simulator::{
    apply_gate, probabilities, run, sample, uniform_superposition, OutcomeDistribution, ShotCounts,
    StateVector,
};
