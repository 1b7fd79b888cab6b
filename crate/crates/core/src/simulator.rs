//! Dense statevector simulation.
//!
//! Basis index `k` encodes qubit `i` in bit `i` (qubit 0 is the least
//! significant bit). Bitstrings are rendered most-significant-first, so for
//! four qubits the leftmost character is qubit 3.
//!
//! Shot sampling uses ChaCha8 (`rand_chacha::ChaCha8Rng::seed_from_u64`) and
//! an inverse-CDF draw per shot, which makes counts reproducible across
//! platforms for a given `(distribution, shots, seed)`.

use std::collections::BTreeMap;
use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::circuit::{Circuit, GateKind, Instruction};
use crate::error::{Error, Result};

pub const MAX_QUBITS: usize = 12;

const NORM_TOL: f64 = 1e-12;

pub type Matrix2 = [[Complex64; 2]; 2];

fn check_qubit_count(n: usize) -> Result<()> {
    if n == 0 || n > MAX_QUBITS {
        return Err(Error::invalid(format!(
            "qubit count {n} outside supported range 1..={MAX_QUBITS}"
        )));
    }
    Ok(())
}

/// Renders basis index `index` as an `n`-character bitstring, qubit `n-1` first.
pub fn bitstring(index: usize, n: usize) -> String {
    format!("{index:0n$b}")
}

/// The 2x2 unitary of a single-qubit gate, or `None` for `CX` / `Measure`.
pub fn single_qubit_matrix(kind: GateKind) -> Option<Matrix2> {
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let r = |x: f64| Complex64::new(x, 0.0);
    match kind {
        GateKind::H => Some([
            [r(FRAC_1_SQRT_2), r(FRAC_1_SQRT_2)],
            [r(FRAC_1_SQRT_2), r(-FRAC_1_SQRT_2)],
        ]),
        GateKind::S => Some([[one, zero], [zero, Complex64::i()]]),
        GateKind::Sdg => Some([[one, zero], [zero, -Complex64::i()]]),
        GateKind::Ry(theta) => {
            let (s, c) = (theta / 2.0).sin_cos();
            Some([[r(c), r(-s)], [r(s), r(c)]])
        }
        GateKind::CX | GateKind::Measure => None,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    /// `|0…0⟩` on `n` qubits.
    pub fn zero(n: usize) -> Result<Self> {
        check_qubit_count(n)?;
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); 1 << n];
        amplitudes[0] = Complex64::new(1.0, 0.0);
        Ok(Self {
            n_qubits: n,
            amplitudes,
        })
    }

    /// Wraps raw amplitudes; the length must be `2^n` and the norm 1 within 1e-12.
    pub fn from_amplitudes(amplitudes: Vec<Complex64>) -> Result<Self> {
        let len = amplitudes.len();
        if !len.is_power_of_two() || len < 2 {
            return Err(Error::invalid(format!(
                "amplitude count {len} is not a power of two >= 2"
            )));
        }
        let n = len.trailing_zeros() as usize;
        check_qubit_count(n)?;
        let state = Self {
            n_qubits: n,
            amplitudes,
        };
        let norm = state.norm_sqr();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::invalid(format!("state norm² {norm} is not 1")));
        }
        Ok(state)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Applies a unitary instruction in place.
    pub fn apply(&mut self, instr: &Instruction) -> Result<()> {
        instr.validate(self.n_qubits)?;
        match instr.kind {
            GateKind::Measure => Err(Error::invalid(
                "measure is not a unitary; use probabilities() or sample()",
            )),
            GateKind::CX => {
                self.apply_cx(instr.qubits[0], instr.qubits[1]);
                Ok(())
            }
            kind => {
                let m = single_qubit_matrix(kind).expect("single-qubit kind");
                self.apply_single(&m, instr.qubits[0]);
                Ok(())
            }
        }
    }

    fn apply_single(&mut self, m: &Matrix2, target: usize) {
        let stride = 1usize << target;
        for base in (0..self.amplitudes.len()).step_by(stride << 1) {
            for i0 in base..base + stride {
                let i1 = i0 | stride;
                let a0 = self.amplitudes[i0];
                let a1 = self.amplitudes[i1];
                self.amplitudes[i0] = m[0][0] * a0 + m[0][1] * a1;
                self.amplitudes[i1] = m[1][0] * a0 + m[1][1] * a1;
            }
        }
    }

    fn apply_cx(&mut self, control: usize, target: usize) {
        let cbit = 1usize << control;
        let tbit = 1usize << target;
        for i in 0..self.amplitudes.len() {
            // Visit each swapped pair once, from its target-0 member.
            if i & cbit != 0 && i & tbit == 0 {
                self.amplitudes.swap(i, i | tbit);
            }
        }
    }
}

/// `|+⟩^⊗n`: every amplitude equals `2^(-n/2)`.
pub fn uniform_superposition(n: usize) -> Result<StateVector> {
    check_qubit_count(n)?;
    let amp = Complex64::new((-(n as f64) / 2.0).exp2(), 0.0);
    Ok(StateVector {
        n_qubits: n,
        amplitudes: vec![amp; 1 << n],
    })
}

/// Returns `instr` applied to a copy of `state`.
pub fn apply_gate(state: &StateVector, instr: &Instruction) -> Result<StateVector> {
    let mut next = state.clone();
    next.apply(instr)?;
    Ok(next)
}

/// Evolves `|0…0⟩` through the circuit's unitaries and returns the
/// pre-measurement state. Measurements are allowed only as a trailing block.
pub fn run(circuit: &Circuit) -> Result<StateVector> {
    let mut state = StateVector::zero(circuit.n_qubits())?;
    let mut measured = false;
    for (pos, instr) in circuit.instructions().iter().enumerate() {
        if instr.kind == GateKind::Measure {
            measured = true;
            continue;
        }
        if measured {
            return Err(Error::invalid(format!(
                "instruction {pos} ({}) follows a measurement; mid-circuit measurement is unsupported",
                instr.kind.name()
            )));
        }
        state.apply(instr)?;
    }
    Ok(state)
}

/// Exact computational-basis outcome distribution, indexed like [`StateVector`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OutcomeDistribution {
    n_qubits: usize,
    probabilities: Vec<f64>,
}

impl OutcomeDistribution {
    /// Validates length `2^n`, non-negativity and unit total (within 1e-10).
    pub fn new(probabilities: Vec<f64>) -> Result<Self> {
        let len = probabilities.len();
        if !len.is_power_of_two() || len < 2 {
            return Err(Error::invalid(format!(
                "distribution length {len} is not a power of two >= 2"
            )));
        }
        if let Some(p) = probabilities.iter().find(|p| !p.is_finite() || **p < 0.0) {
            return Err(Error::invalid(format!("invalid probability {p}")));
        }
        let total: f64 = probabilities.iter().sum();
        if (total - 1.0).abs() > 1e-10 {
            return Err(Error::invalid(format!("probabilities sum to {total}")));
        }
        Ok(Self {
            n_qubits: len.trailing_zeros() as usize,
            probabilities,
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probabilities
    }
}

pub fn probabilities(state: &StateVector) -> OutcomeDistribution {
    OutcomeDistribution {
        n_qubits: state.n_qubits,
        probabilities: state.amplitudes.iter().map(|a| a.norm_sqr()).collect(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShotCounts {
    pub shots: u64,
    /// Observed bitstrings only; keys are most-significant-qubit first.
    pub counts: BTreeMap<String, u64>,
}

/// Draws `shots` outcomes from `dist` with a ChaCha8 stream seeded by `seed`.
pub fn sample(dist: &OutcomeDistribution, shots: u64, seed: u64) -> Result<ShotCounts> {
    if shots == 0 {
        return Err(Error::invalid("shots must be at least 1"));
    }
    let probs = dist.probabilities();
    let cdf: Vec<f64> = probs
        .iter()
        .scan(0.0, |acc, p| {
            *acc += p;
            Some(*acc)
        })
        .collect();
    // Rounding can leave cdf.last() slightly below 1; such draws fall on the
    // last outcome with non-zero mass.
    let fallback = probs.iter().rposition(|&p| p > 0.0).unwrap_or(probs.len() - 1);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tally = vec![0u64; probs.len()];
    for _ in 0..shots {
        let u: f64 = rng.random();
        let k = cdf.partition_point(|&c| c <= u);
        tally[if k < probs.len() { k } else { fallback }] += 1;
    }

    let n = dist.n_qubits();
    let counts = tally
        .into_iter()
        .enumerate()
        .filter(|&(_, c)| c > 0)
        .map(|(k, c)| (bitstring(k, n), c))
        .collect();
    Ok(ShotCounts { shots, counts })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn uniform_amplitudes() {
        let s1 = uniform_superposition(1).unwrap();
        for a in s1.amplitudes() {
            assert!((a - c(FRAC_1_SQRT_2, 0.0)).norm() < 1e-15);
        }
        let s4 = uniform_superposition(4).unwrap();
        assert_eq!(s4.amplitudes().len(), 16);
        assert!(s4.amplitudes().iter().all(|a| *a == c(0.25, 0.0)));
        let p2 = probabilities(&uniform_superposition(2).unwrap());
        assert!(p2.probabilities().iter().all(|p| (p - 0.25).abs() < 1e-15));
        let p4 = probabilities(&s4);
        assert!(p4.probabilities().iter().all(|&p| p == 0.0625));
    }

    #[test]
    fn qubit_range_enforced() {
        assert!(uniform_superposition(0).is_err());
        assert!(uniform_superposition(13).is_err());
        assert!(uniform_superposition(12).is_ok());
    }

    #[test]
    fn ry_pi_flips_zero() {
        let s = StateVector::zero(1).unwrap();
        let out = apply_gate(&s, &Instruction::new(GateKind::Ry(PI), &[0])).unwrap();
        assert!((out.amplitudes()[0]).norm() < 1e-15);
        assert!((out.amplitudes()[1] - c(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn s_on_plus() {
        let plus = uniform_superposition(1).unwrap();
        let out = apply_gate(&plus, &Instruction::new(GateKind::S, &[0])).unwrap();
        assert!((out.amplitudes()[0] - c(FRAC_1_SQRT_2, 0.0)).norm() < 1e-15);
        assert!((out.amplitudes()[1] - c(0.0, FRAC_1_SQRT_2)).norm() < 1e-15);
        let dist = probabilities(&out);
        assert!((dist.probabilities()[0] - 0.5).abs() < 1e-15);
        assert!((dist.probabilities()[1] - 0.5).abs() < 1e-15);
    }

    #[test]
    fn cx_flips_target_when_control_set() {
        // |q1 q0⟩ = |01⟩, control q0, target q1 -> |11⟩
        let mut amps = vec![c(0.0, 0.0); 4];
        amps[0b01] = c(1.0, 0.0);
        let mut s = StateVector::from_amplitudes(amps).unwrap();
        s.apply(&Instruction::new(GateKind::CX, &[0, 1])).unwrap();
        assert_eq!(s.amplitudes()[0b11], c(1.0, 0.0));
        // control q1 now set, target q0 -> |10⟩
        s.apply(&Instruction::new(GateKind::CX, &[1, 0])).unwrap();
        assert_eq!(s.amplitudes()[0b10], c(1.0, 0.0));
    }

    #[test]
    fn measure_is_not_applicable() {
        let s = StateVector::zero(1).unwrap();
        let err = apply_gate(&s, &Instruction::new(GateKind::Measure, &[0])).unwrap_err();
        assert_eq!(err.code(), "E_INVALID_ARGUMENT");
    }

    #[test]
    fn run_single_h() {
        let mut circ = Circuit::new(1).unwrap();
        circ.h(0).unwrap();
        let s = run(&circ).unwrap();
        assert!(s.amplitudes().iter().all(|a| (a - c(FRAC_1_SQRT_2, 0.0)).norm() < 1e-15));
    }

    #[test]
    fn run_rejects_mid_circuit_measurement() {
        let mut circ = Circuit::new(1).unwrap();
        circ.measure(0).unwrap();
        circ.h(0).unwrap();
        assert!(run(&circ).is_err());
    }

    #[test]
    fn probabilities_drop_phases() {
        let s = StateVector::from_amplitudes(vec![c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        assert_eq!(probabilities(&s).probabilities(), &[1.0, 0.0]);
        let s = StateVector::from_amplitudes(vec![c(FRAC_1_SQRT_2, 0.0), c(0.0, FRAC_1_SQRT_2)])
            .unwrap();
        let p = probabilities(&s);
        assert!((p.probabilities()[0] - 0.5).abs() < 1e-15);
        assert!((p.probabilities()[1] - 0.5).abs() < 1e-15);
    }

    #[test]
    fn from_amplitudes_validates() {
        assert!(StateVector::from_amplitudes(vec![c(1.0, 0.0); 3]).is_err());
        assert!(StateVector::from_amplitudes(vec![c(1.0, 0.0), c(1.0, 0.0)]).is_err());
    }

    #[test]
    fn gate_matrices_are_unitary() {
        let kinds = [GateKind::H, GateKind::S, GateKind::Sdg, GateKind::Ry(0.7), GateKind::Ry(-2.9)];
        for kind in kinds {
            let m = single_qubit_matrix(kind).unwrap();
            for i in 0..2 {
                for j in 0..2 {
                    let dot: Complex64 = (0..2).map(|k| m[k][i].conj() * m[k][j]).sum();
                    let expect = if i == j { 1.0 } else { 0.0 };
                    assert!((dot - c(expect, 0.0)).norm() < 1e-12, "{kind:?}");
                }
            }
        }
    }

    #[test]
    fn point_mass_sampling() {
        let dist = OutcomeDistribution::new(vec![1.0, 0.0]).unwrap();
        let counts = sample(&dist, 100, 7).unwrap();
        assert_eq!(counts.counts.len(), 1);
        assert_eq!(counts.counts["0"], 100);
        assert!(sample(&dist, 0, 7).is_err());
    }

    #[test]
    fn sampling_is_deterministic() {
        let dist = probabilities(&uniform_superposition(4).unwrap());
        let a = sample(&dist, 8192, 42).unwrap();
        let b = sample(&dist, 8192, 42).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, sample(&dist, 8192, 43).unwrap());
        assert!(a.counts.keys().all(|k| k.len() == 4));
    }

    #[test]
    fn bitstring_is_msb_first() {
        assert_eq!(bitstring(1, 4), "0001");
        assert_eq!(bitstring(8, 4), "1000");
    }

    #[test]
    fn distribution_validation() {
        assert!(OutcomeDistribution::new(vec![0.5, 0.6]).is_err());
        assert!(OutcomeDistribution::new(vec![-0.1, 1.1]).is_err());
        assert!(OutcomeDistribution::new(vec![1.0, 0.0, 0.0]).is_err());
    }

    fn arb_state(n: usize) -> impl Strategy<Value = StateVector> {
        prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 1 << n).prop_filter_map(
            "non-zero",
            |v| {
                let norm: f64 = v.iter().map(|(a, b)| a * a + b * b).sum::<f64>().sqrt();
                (norm > 1e-3).then(|| {
                    StateVector::from_amplitudes(
                        v.into_iter().map(|(a, b)| c(a / norm, b / norm)).collect(),
                    )
                    .unwrap()
                })
            },
        )
    }

    fn arb_gate(n: usize) -> impl Strategy<Value = Instruction> {
        prop_oneof![
            (0..n).prop_map(|q| Instruction::new(GateKind::H, &[q])),
            (0..n).prop_map(|q| Instruction::new(GateKind::S, &[q])),
            (0..n).prop_map(|q| Instruction::new(GateKind::Sdg, &[q])),
            (0..n, -7.0..7.0f64).prop_map(|(q, t)| Instruction::new(GateKind::Ry(t), &[q])),
            (0..n, 1..n).prop_map(move |(a, d)| Instruction::new(GateKind::CX, &[a, (a + d) % n])),
        ]
    }

    proptest! {
        #[test]
        fn norm_conserved(s in arb_state(4), gates in prop::collection::vec(arb_gate(4), 1..20)) {
            let mut s = s;
            for g in &gates {
                s.apply(g).unwrap();
                prop_assert!((s.norm_sqr() - 1.0).abs() < 1e-12);
            }
            let p = probabilities(&s);
            prop_assert!(p.probabilities().iter().all(|&x| x >= 0.0));
            prop_assert!((p.probabilities().iter().sum::<f64>() - 1.0).abs() < 1e-12);
        }

        #[test]
        fn ry_probability_law(theta in -10.0..10.0f64) {
            let s = apply_gate(&StateVector::zero(1).unwrap(), &Instruction::new(GateKind::Ry(theta), &[0])).unwrap();
            let p1 = probabilities(&s).probabilities()[1];
            prop_assert!((p1 - (theta / 2.0).sin().powi(2)).abs() < 1e-12);
        }

        #[test]
        fn sample_counts_sum_to_shots(s in arb_state(3), shots in 1u64..2000, seed in any::<u64>()) {
            let counts = sample(&probabilities(&s), shots, seed).unwrap();
            prop_assert_eq!(counts.counts.values().sum::<u64>(), shots);
            prop_assert!(counts.counts.keys().all(|k| k.len() == 3));
        }
    }
}
