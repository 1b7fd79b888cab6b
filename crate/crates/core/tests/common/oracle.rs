//! Brute-force reference implementations used only by tests.
//!
//! Nothing here calls into the simulator's gate kernels or the depth
//! accounting; gates are rebuilt as explicit matrices and composed with
//! Kronecker products, depth is a longest path over an explicit dependency
//! graph, and the matrix exponential is a scaled-and-squared Taylor series.
#![allow(dead_code)]

use num_complex::Complex64;
use qhelix_core::{Circuit, GateKind, Instruction};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Mat = Vec<Vec<Complex64>>;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn identity(d: usize) -> Mat {
    (0..d)
        .map(|i| (0..d).map(|j| if i == j { c(1.0, 0.0) } else { c(0.0, 0.0) }).collect())
        .collect()
}

pub fn kron(a: &Mat, b: &Mat) -> Mat {
    let (ra, rb) = (a.len(), b.len());
    let mut out = vec![vec![c(0.0, 0.0); ra * rb]; ra * rb];
    for i in 0..ra {
        for j in 0..ra {
            for k in 0..rb {
                for l in 0..rb {
                    out[i * rb + k][j * rb + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    out
}

pub fn matmul(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    let mut out = vec![vec![c(0.0, 0.0); n]; n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i][k];
            for j in 0..n {
                out[i][j] += aik * b[k][j];
            }
        }
    }
    out
}

pub fn matvec(a: &Mat, v: &[Complex64]) -> Vec<Complex64> {
    a.iter().map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum()).collect()
}

fn add(a: &Mat, b: &Mat) -> Mat {
    a.iter()
        .zip(b)
        .map(|(r, s)| r.iter().zip(s).map(|(x, y)| x + y).collect())
        .collect()
}

fn gate2(kind: GateKind) -> Mat {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    match kind {
        GateKind::H => vec![vec![c(h, 0.0), c(h, 0.0)], vec![c(h, 0.0), c(-h, 0.0)]],
        GateKind::S => vec![vec![c(1.0, 0.0), c(0.0, 0.0)], vec![c(0.0, 0.0), c(0.0, 1.0)]],
        GateKind::Sdg => vec![vec![c(1.0, 0.0), c(0.0, 0.0)], vec![c(0.0, 0.0), c(0.0, -1.0)]],
        GateKind::Ry(t) => {
            let (co, si) = ((t / 2.0).cos(), (t / 2.0).sin());
            vec![vec![c(co, 0.0), c(-si, 0.0)], vec![c(si, 0.0), c(co, 0.0)]]
        }
        other => panic!("{other:?} has no 2x2 matrix"),
    }
}

/// Tensor product with `ops[q]` on qubit `q` (identity where `None`).
/// Qubit `n-1` is the leftmost factor so that qubit 0 is the least significant bit.
fn embed(ops: &[Option<Mat>]) -> Mat {
    let mut full = identity(1);
    for op in ops.iter().rev() {
        full = kron(&full, op.as_ref().unwrap_or(&identity(2)));
    }
    full
}

/// The full `2^n × 2^n` unitary of one instruction.
pub fn instruction_unitary(instr: &Instruction, n: usize) -> Mat {
    match instr.kind {
        GateKind::CX => {
            let (ctrl, tgt) = (instr.qubits[0], instr.qubits[1]);
            let p0 = vec![vec![c(1.0, 0.0), c(0.0, 0.0)], vec![c(0.0, 0.0), c(0.0, 0.0)]];
            let p1 = vec![vec![c(0.0, 0.0), c(0.0, 0.0)], vec![c(0.0, 0.0), c(1.0, 0.0)]];
            let x = vec![vec![c(0.0, 0.0), c(1.0, 0.0)], vec![c(1.0, 0.0), c(0.0, 0.0)]];
            let mut a = vec![None; n];
            a[ctrl] = Some(p0);
            let mut b = vec![None; n];
            b[ctrl] = Some(p1);
            b[tgt] = Some(x);
            add(&embed(&a), &embed(&b))
        }
        GateKind::Measure => panic!("measure is not unitary"),
        kind => {
            let mut ops = vec![None; n];
            ops[instr.qubits[0]] = Some(gate2(kind));
            embed(&ops)
        }
    }
}

/// Product of all unitary instructions (later gates multiply on the left).
pub fn circuit_unitary(circuit: &Circuit) -> Mat {
    let n = circuit.n_qubits();
    circuit
        .instructions()
        .iter()
        .filter(|i| i.kind != GateKind::Measure)
        .fold(identity(1 << n), |acc, i| matmul(&instruction_unitary(i, n), &acc))
}

/// `U|0…0⟩` for the circuit's full unitary.
pub fn run_oracle(circuit: &Circuit) -> Vec<Complex64> {
    let u = circuit_unitary(circuit);
    u.iter().map(|row| row[0]).collect()
}

pub fn max_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// Depth as the number of nodes on the longest path of the dependency graph
/// where instruction `j` depends on every earlier instruction sharing a qubit.
pub fn dag_depth(circuit: &Circuit) -> usize {
    let instrs = circuit.instructions();
    let mut longest = vec![0usize; instrs.len()];
    for j in 0..instrs.len() {
        let mut best = 0;
        for i in 0..j {
            if instrs[i].qubits.iter().any(|q| instrs[j].qubits.contains(q)) {
                best = best.max(longest[i]);
            }
        }
        longest[j] = best + 1;
    }
    longest.into_iter().max().unwrap_or(0)
}

/// Hand-counted EWL census for `n` players: n H, n S, 2(n-1) CX, n Ry, n Sdg.
pub fn ewl_unitary_count(n: usize) -> usize {
    n + n + 2 * (n - 1) + n + n
}

pub fn random_state(rng: &mut ChaCha8Rng, n: usize) -> Vec<Complex64> {
    let v: Vec<Complex64> = (0..1 << n)
        .map(|_| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect();
    let norm = v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    v.into_iter().map(|a| a / norm).collect()
}

pub fn random_single_qubit_gate(rng: &mut ChaCha8Rng, q: usize) -> Instruction {
    let kind = match rng.random_range(0..4) {
        0 => GateKind::H,
        1 => GateKind::S,
        2 => GateKind::Sdg,
        _ => GateKind::Ry(rng.random_range(-7.0..7.0)),
    };
    Instruction::new(kind, &[q])
}

/// A random gate from the alphabet (CX with probability 1/5 when `n >= 2`).
pub fn random_instruction(rng: &mut ChaCha8Rng, n: usize) -> Instruction {
    let q = rng.random_range(0..n);
    if n >= 2 && rng.random_range(0..5) == 0 {
        let t = (q + rng.random_range(1..n)) % n;
        Instruction::new(GateKind::CX, &[q, t])
    } else {
        random_single_qubit_gate(rng, q)
    }
}

pub fn random_circuit(rng: &mut ChaCha8Rng, n: usize, max_gates: usize) -> Circuit {
    let mut circ = Circuit::new(n).unwrap();
    for _ in 0..rng.random_range(1..=max_gates) {
        circ.push(random_instruction(rng, n)).unwrap();
    }
    circ
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `exp(A)` for a square complex matrix by scaling and squaring a Taylor series.
pub fn expm(a: &Mat) -> Mat {
    let n = a.len();
    let norm = a
        .iter()
        .map(|r| r.iter().map(|x| x.norm()).sum::<f64>())
        .fold(0.0, f64::max);
    let squarings = if norm > 0.5 { (norm / 0.5).log2().ceil() as u32 } else { 0 };
    let scale = 0.5f64.powi(squarings as i32);
    let scaled: Mat = a.iter().map(|r| r.iter().map(|x| x * scale).collect()).collect();

    let mut result = identity(n);
    let mut term = identity(n);
    for k in 1..=30 {
        term = matmul(&term, &scaled);
        term = term.iter().map(|r| r.iter().map(|x| x / k as f64).collect()).collect();
        result = add(&result, &term);
    }
    for _ in 0..squarings {
        result = matmul(&result, &result);
    }
    result
}

/// `exp(-i·diag(omega)·t)` via [`expm`] on the explicit matrix.
pub fn diagonal_propagator(omega: &[f64], t: f64) -> Mat {
    let n = omega.len();
    let mut gen = vec![vec![c(0.0, 0.0); n]; n];
    for i in 0..n {
        gen[i][i] = c(0.0, -omega[i] * t);
    }
    expm(&gen)
}

/// Closed-form survival `|Σ |c_i|² e^{-i ω_i t}|²`.
pub fn survival_closed_form(weights: &[f64], omega: &[f64], t: f64) -> f64 {
    let (re, im) = weights
        .iter()
        .zip(omega)
        .fold((0.0, 0.0), |(re, im), (w, om)| (re + w * (om * t).cos(), im - w * (om * t).sin()));
    re * re + im * im
}
