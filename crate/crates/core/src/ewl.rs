//! Parameterized n-player EWL game.
//!
//! The game circuit is, in time order:
//!
//! 1. `H` on every qubit (uniform strategy superposition);
//! 2. entangler `J`: `S` on every qubit, then `CX(0,1)`, `CX(1,2)`, …, `CX(n-2,n-1)`;
//! 3. local strategies `Ry(θ_i)` on qubit `i`;
//! 4. `J†`: `CX(n-2,n-1)`, …, `CX(0,1)`, then `S†` on every qubit;
//! 5. measurement of every qubit.
//!
//! For four players this is 22 unitary gates at depth 11 (measurements
//! included in the depth). In general the unitary count is `6n - 2` and the
//! depth `2n + 3`.
//!
//! Each strategy angle encodes a dominance weight as `θ = 2·asin(√p)`, so that
//! `Ry(θ)|0⟩` has probability `p` on `|1⟩`. A player's recommender score is the
//! post-game marginal probability that its qubit reads 1.

use std::fmt;
use std::ops::{Index, IndexMut};

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::circuit::Circuit;
use crate::cordis::DominanceWeights;
use crate::error::{Error, Result};
use crate::simulator::{self, OutcomeDistribution};

/// Quadruple-helix actors with their fixed qubit assignment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum HelixActor {
    Academia,
    Industry,
    Government,
    CivilSociety,
}

impl HelixActor {
    pub const ALL: [HelixActor; 4] = [
        HelixActor::Academia,
        HelixActor::Industry,
        HelixActor::Government,
        HelixActor::CivilSociety,
    ];

    pub fn qubit(self) -> usize {
        self as usize
    }

    pub fn from_qubit(q: usize) -> Option<Self> {
        Self::ALL.get(q).copied()
    }

    /// snake_case key used in serialized output.
    pub fn key(self) -> &'static str {
        match self {
            HelixActor::Academia => "academia",
            HelixActor::Industry => "industry",
            HelixActor::Government => "government",
            HelixActor::CivilSociety => "civil_society",
        }
    }
}

impl fmt::Display for HelixActor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            HelixActor::Academia => "Academia",
            HelixActor::Industry => "Industry",
            HelixActor::Government => "Government",
            HelixActor::CivilSociety => "Civil Society",
        })
    }
}

/// One value per helix actor, stored in qubit order. Serializes as a map
/// keyed by [`HelixActor::key`].
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PerActor<T>(pub [T; 4]);

impl<T> Index<HelixActor> for PerActor<T> {
    type Output = T;
    fn index(&self, actor: HelixActor) -> &T {
        &self.0[actor.qubit()]
    }
}

impl<T> IndexMut<HelixActor> for PerActor<T> {
    fn index_mut(&mut self, actor: HelixActor) -> &mut T {
        &mut self.0[actor.qubit()]
    }
}

impl<T: Serialize> Serialize for PerActor<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(4))?;
        for actor in HelixActor::ALL {
            map.serialize_entry(actor.key(), &self[actor])?;
        }
        map.end()
    }
}

/// Rotation angles in radians, one per player (qubit order).
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct StrategyAngles(Vec<f64>);

impl StrategyAngles {
    pub fn new(theta: Vec<f64>) -> Result<Self> {
        if theta.is_empty() {
            return Err(Error::invalid("at least one strategy angle is required"));
        }
        if let Some(t) = theta.iter().find(|t| !t.is_finite()) {
            return Err(Error::invalid(format!("strategy angle {t} is not finite")));
        }
        Ok(Self(theta))
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// `θ = 2·asin(√p)` for each weight; every weight must lie in `[0, 1]`.
pub fn angles_from_weights(p: &[f64]) -> Result<StrategyAngles> {
    let theta = p
        .iter()
        .map(|&pi| {
            if (0.0..=1.0).contains(&pi) {
                Ok(2.0 * pi.sqrt().asin())
            } else {
                Err(Error::invalid(format!("weight {pi} outside [0, 1]")))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    StrategyAngles::new(theta)
}

pub fn angles_from_dominance(p: &DominanceWeights) -> StrategyAngles {
    angles_from_weights(&p.as_array()).expect("dominance weights lie in [0, 1]")
}

pub fn build_ewl_circuit(theta: &StrategyAngles) -> Result<Circuit> {
    let n = theta.len();
    if n < 2 {
        return Err(Error::invalid(format!(
            "the entangler needs at least 2 players, got {n}"
        )));
    }
    let mut c = Circuit::new(n)?;
    for q in 0..n {
        c.h(q)?;
    }
    for q in 0..n {
        c.s(q)?;
    }
    for q in 0..n - 1 {
        c.cx(q, q + 1)?;
    }
    for (q, &t) in theta.as_slice().iter().enumerate() {
        c.ry(q, t)?;
    }
    for q in (0..n - 1).rev() {
        c.cx(q, q + 1)?;
    }
    for q in 0..n {
        c.sdg(q)?;
    }
    for q in 0..n {
        c.measure(q)?;
    }
    Ok(c)
}

/// Builds and exactly simulates the game, returning the outcome distribution.
pub fn play_game(theta: &StrategyAngles) -> Result<OutcomeDistribution> {
    let circuit = build_ewl_circuit(theta)?;
    let state = simulator::run(&circuit)?;
    Ok(simulator::probabilities(&state))
}

/// Per-player marginals `q_i = P(qubit i = 1)` and their normalization `omega`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RecommenderScores {
    pub q: Vec<f64>,
    pub omega: Vec<f64>,
}

impl RecommenderScores {
    /// Normalizes raw marginals. Each must be in `[0, 1]`; the sum must be positive.
    pub fn from_marginals(q: Vec<f64>) -> Result<Self> {
        if q.is_empty() {
            return Err(Error::invalid("scores must not be empty"));
        }
        if let Some(x) = q.iter().find(|x| !(0.0..=1.0).contains(*x)) {
            return Err(Error::invalid(format!("marginal {x} outside [0, 1]")));
        }
        let total: f64 = q.iter().sum();
        if total <= 0.0 {
            return Err(Error::DegenerateScores);
        }
        let omega = q.iter().map(|x| x / total).collect();
        Ok(Self { q, omega })
    }
}

pub fn marginal_scores(dist: &OutcomeDistribution) -> Result<RecommenderScores> {
    let n = dist.n_qubits();
    let mut q = vec![0.0; n];
    for (k, &p) in dist.probabilities().iter().enumerate() {
        for (i, qi) in q.iter_mut().enumerate() {
            if k >> i & 1 == 1 {
                *qi += p;
            }
        }
    }
    // Summation can overshoot 1 by an ulp.
    for qi in &mut q {
        *qi = qi.clamp(0.0, 1.0);
    }
    RecommenderScores::from_marginals(q)
}
