//! Diagonal four-level Hamiltonian driven by recommender scores.
//!
//! `H = Σ ω_i |i⟩⟨i|` with `ω_i = Ω · q_i / Σ_j q_j`. Because `H` is diagonal
//! the propagator is exact: each amplitude picks up the phase `e^{-i ω_i t}`.
//!
//! Two read-outs are offered for the disruptive-capital probability:
//!
//! * [`TrajectoryMode::Population`]: `|⟨0|ψ(t)⟩|²`, the Academia level
//!   population. Diagonal evolution never changes populations, so this series
//!   is constant.
//! * [`TrajectoryMode::Survival`] (default): `|⟨ψ₀|ψ(t)⟩|²`, which depends on
//!   the relative phases and oscillates whenever the spectrum is non-degenerate.

use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ewl::RecommenderScores;

pub const LEVELS: usize = 4;
pub const DEFAULT_SCALE: f64 = TAU;
pub const DEFAULT_T_MAX: f64 = 50.0;
pub const DEFAULT_STEPS: usize = 500;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DssHamiltonian {
    omega: [f64; LEVELS],
    scale: f64,
}

impl DssHamiltonian {
    /// Diagonal frequencies, `scale · q_i / Σ q`.
    pub fn omega(&self) -> [f64; LEVELS] {
        self.omega
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// Adds `shift` to every frequency. Observables are unchanged (global phase).
    pub fn shifted(&self, shift: f64) -> Self {
        Self {
            omega: self.omega.map(|w| w + shift),
            scale: self.scale,
        }
    }
}

pub fn build_hamiltonian(scores: &RecommenderScores, scale: f64) -> Result<DssHamiltonian> {
    if !scale.is_finite() || scale <= 0.0 {
        return Err(Error::invalid(format!("scale {scale} must be positive and finite")));
    }
    let q: [f64; LEVELS] = scores.q.as_slice().try_into().map_err(|_| {
        Error::invalid(format!("expected {LEVELS} scores, got {}", scores.q.len()))
    })?;
    if q.iter().any(|x| !x.is_finite() || *x < 0.0) {
        return Err(Error::invalid("scores must be non-negative and finite"));
    }
    let total: f64 = q.iter().sum();
    if total <= 0.0 {
        return Err(Error::DegenerateScores);
    }
    Ok(DssHamiltonian {
        omega: q.map(|x| scale * x / total),
        scale,
    })
}

/// State over the four helix levels (index 0 = Academia).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DssState([Complex64; LEVELS]);

impl DssState {
    pub fn new(amplitudes: [Complex64; LEVELS]) -> Result<Self> {
        let norm: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if (norm - 1.0).abs() > 1e-12 {
            return Err(Error::invalid(format!("state norm² {norm} is not 1")));
        }
        Ok(Self(amplitudes))
    }

    /// `(½, ½, ½, ½)`.
    pub fn uniform() -> Self {
        Self([Complex64::new(0.5, 0.0); LEVELS])
    }

    pub fn amplitudes(&self) -> &[Complex64; LEVELS] {
        &self.0
    }

    pub fn norm_sqr(&self) -> f64 {
        self.0.iter().map(|a| a.norm_sqr()).sum()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &DssState) -> Complex64 {
        self.0.iter().zip(other.0.iter()).map(|(a, b)| a.conj() * b).sum()
    }
}

/// `e^{-iHt}|ψ₀⟩` in closed form.
pub fn evolve(h: &DssHamiltonian, psi0: &DssState, t: f64) -> DssState {
    let mut out = psi0.0;
    for (amp, w) in out.iter_mut().zip(h.omega) {
        *amp *= Complex64::from_polar(1.0, -w * t);
    }
    DssState(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TrajectoryMode {
    #[default]
    Survival,
    Population,
}

impl fmt::Display for TrajectoryMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TrajectoryMode::Survival => "survival",
            TrajectoryMode::Population => "population",
        })
    }
}

impl FromStr for TrajectoryMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "survival" => Ok(TrajectoryMode::Survival),
            "population" => Ok(TrajectoryMode::Population),
            other => Err(Error::invalid(format!(
                "unknown mode {other:?} (expected survival or population)"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub p_disruptive: Vec<f64>,
    pub mode: TrajectoryMode,
}

impl Trajectory {
    /// `t,p_disruptive` CSV with a header row.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,p_disruptive\n");
        for (t, p) in self.times.iter().zip(&self.p_disruptive) {
            out.push_str(&format!("{t},{p}\n"));
        }
        out
    }
}

/// Evaluates the chosen read-out on `linspace(0, t_max, steps)`.
pub fn trajectory(
    h: &DssHamiltonian,
    psi0: &DssState,
    t_max: f64,
    steps: usize,
    mode: TrajectoryMode,
) -> Result<Trajectory> {
    if steps < 2 {
        return Err(Error::invalid(format!("steps must be >= 2, got {steps}")));
    }
    if !t_max.is_finite() || t_max <= 0.0 {
        return Err(Error::invalid(format!("t_max {t_max} must be positive and finite")));
    }
    let last = (steps - 1) as f64;
    let times: Vec<f64> = (0..steps).map(|k| t_max * k as f64 / last).collect();
    // Dividing by ⟨ψ₀|ψ₀⟩² pins the t = 0 survival value at exactly 1.
    let norm2 = psi0.norm_sqr() * psi0.norm_sqr();
    let p_disruptive = times
        .iter()
        .map(|&t| {
            let psi = evolve(h, psi0, t);
            let p = match mode {
                TrajectoryMode::Population => psi.0[0].norm_sqr(),
                TrajectoryMode::Survival => psi0.inner(&psi).norm_sqr() / norm2,
            };
            p.clamp(0.0, 1.0)
        })
        .collect();
    Ok(Trajectory {
        times,
        p_disruptive,
        mode,
    })
}
