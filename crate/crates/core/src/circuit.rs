//! Gate-level circuit representation.
//!
//! A [`Circuit`] is an ordered list of [`Instruction`]s over a fixed register
//! of qubits. Instruction order is the physical time order. The module also
//! provides gate census / ASAP depth accounting ([`count_ops`], [`depth`]) and
//! an OpenQASM 2.0 writer and reader for the gate alphabet used here.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The gate alphabet. `Ry` carries its rotation angle in radians.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum GateKind {
    H,
    S,
    Sdg,
    Ry(f64),
    CX,
    Measure,
}

impl GateKind {
    /// OpenQASM / census name of the gate (`h`, `s`, `sdg`, `ry`, `cx`, `measure`).
    pub fn name(&self) -> &'static str {
        match self {
            GateKind::H => "h",
            GateKind::S => "s",
            GateKind::Sdg => "sdg",
            GateKind::Ry(_) => "ry",
            GateKind::CX => "cx",
            GateKind::Measure => "measure",
        }
    }

    pub fn arity(&self) -> usize {
        match self {
            GateKind::CX => 2,
            _ => 1,
        }
    }

    pub fn is_unitary(&self) -> bool {
        !matches!(self, GateKind::Measure)
    }
}

/// A gate applied to specific qubits. For `CX` the qubits are `[control, target]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Instruction {
    pub kind: GateKind,
    pub qubits: Vec<usize>,
}

impl Instruction {
    pub fn new(kind: GateKind, qubits: &[usize]) -> Self {
        Self {
            kind,
            qubits: qubits.to_vec(),
        }
    }

    /// Checks arity, index range and distinctness against a register of `n_qubits`.
    pub fn validate(&self, n_qubits: usize) -> Result<()> {
        if self.qubits.len() != self.kind.arity() {
            return Err(Error::invalid(format!(
                "{} expects {} qubit(s), got {}",
                self.kind.name(),
                self.kind.arity(),
                self.qubits.len()
            )));
        }
        if let Some(&q) = self.qubits.iter().find(|&&q| q >= n_qubits) {
            return Err(Error::invalid(format!(
                "qubit index {q} out of range for {n_qubits}-qubit register"
            )));
        }
        if self.qubits.len() == 2 && self.qubits[0] == self.qubits[1] {
            return Err(Error::invalid(format!(
                "{} control and target coincide (qubit {})",
                self.kind.name(),
                self.qubits[0]
            )));
        }
        if let GateKind::Ry(theta) = self.kind {
            if !theta.is_finite() {
                return Err(Error::invalid(format!("ry angle {theta} is not finite")));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Circuit {
    n_qubits: usize,
    instructions: Vec<Instruction>,
}

impl Circuit {
    pub fn new(n_qubits: usize) -> Result<Self> {
        if n_qubits == 0 {
            return Err(Error::invalid("circuit needs at least one qubit"));
        }
        Ok(Self {
            n_qubits,
            instructions: Vec::new(),
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn instructions(&self) -> &[Instruction] {
        &self.instructions
    }

    pub fn len(&self) -> usize {
        self.instructions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.instructions.is_empty()
    }

    /// Appends a validated instruction.
    pub fn push(&mut self, instr: Instruction) -> Result<()> {
        instr.validate(self.n_qubits)?;
        self.instructions.push(instr);
        Ok(())
    }

    pub fn h(&mut self, q: usize) -> Result<()> {
        self.push(Instruction::new(GateKind::H, &[q]))
    }

    pub fn s(&mut self, q: usize) -> Result<()> {
        self.push(Instruction::new(GateKind::S, &[q]))
    }

    pub fn sdg(&mut self, q: usize) -> Result<()> {
        self.push(Instruction::new(GateKind::Sdg, &[q]))
    }

    pub fn ry(&mut self, q: usize, theta: f64) -> Result<()> {
        self.push(Instruction::new(GateKind::Ry(theta), &[q]))
    }

    pub fn cx(&mut self, control: usize, target: usize) -> Result<()> {
        self.push(Instruction::new(GateKind::CX, &[control, target]))
    }

    pub fn measure(&mut self, q: usize) -> Result<()> {
        self.push(Instruction::new(GateKind::Measure, &[q]))
    }
}

/// Gate census and depth of a circuit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CircuitStats {
    /// Gate name to occurrence count, including `measure`.
    pub counts: BTreeMap<String, usize>,
    /// Number of instructions other than measurements.
    pub total_unitary_gates: usize,
    pub depth: usize,
}

pub fn count_ops(circuit: &Circuit) -> CircuitStats {
    let mut counts = BTreeMap::new();
    let mut total_unitary_gates = 0;
    for instr in circuit.instructions() {
        *counts.entry(instr.kind.name().to_string()).or_insert(0) += 1;
        if instr.kind.is_unitary() {
            total_unitary_gates += 1;
        }
    }
    CircuitStats {
        counts,
        total_unitary_gates,
        depth: depth(circuit),
    }
}

/// ASAP layering depth. Measurements occupy a layer on their qubit.
pub fn depth(circuit: &Circuit) -> usize {
    let mut frontier = vec![0usize; circuit.n_qubits()];
    let mut deepest = 0;
    for instr in circuit.instructions() {
        let layer = 1 + instr.qubits.iter().map(|&q| frontier[q]).max().unwrap_or(0);
        for &q in &instr.qubits {
            frontier[q] = layer;
        }
        deepest = deepest.max(layer);
    }
    deepest
}

/// Formats an angle with 17 significant digits, which round-trips any `f64`.
fn format_angle(theta: f64) -> String {
    if theta == 0.0 {
        return "0.0".to_string();
    }
    let exponent = theta.abs().log10().floor() as i32;
    if (-4..=15).contains(&exponent) {
        let decimals = (16 - exponent).max(1) as usize;
        format!("{theta:.decimals$}")
    } else {
        format!("{theta:.16e}")
    }
}

/// Renders the circuit as OpenQASM 2.0 using `qelib1.inc` gate names.
pub fn export_qasm(circuit: &Circuit) -> String {
    let n = circuit.n_qubits();
    let mut out = String::new();
    out.push_str("OPENQASM 2.0;\n");
    out.push_str("include \"qelib1.inc\";\n");
    let _ = writeln!(out, "qreg q[{n}];");
    let _ = writeln!(out, "creg c[{n}];");
    for instr in circuit.instructions() {
        let q = &instr.qubits;
        let _ = match instr.kind {
            GateKind::Ry(theta) => writeln!(out, "ry({}) q[{}];", format_angle(theta), q[0]),
            GateKind::CX => writeln!(out, "cx q[{}],q[{}];", q[0], q[1]),
            GateKind::Measure => writeln!(out, "measure q[{}] -> c[{}];", q[0], q[0]),
            kind => writeln!(out, "{} q[{}];", kind.name(), q[0]),
        };
    }
    out
}

fn parse_qubit(arg: &str, reg: &str, line: usize) -> Result<usize> {
    let arg = arg.trim();
    arg.strip_prefix(reg)
        .and_then(|s| s.strip_prefix('['))
        .and_then(|s| s.strip_suffix(']'))
        .and_then(|s| s.trim().parse().ok())
        .ok_or_else(|| Error::Parse {
            row: line,
            message: format!("expected {reg}[<index>], found {arg:?}"),
        })
}

/// Reads back the OpenQASM 2.0 subset written by [`export_qasm`].
///
/// Only a single `qreg q` / `creg c` pair and the gates `h`, `s`, `sdg`,
/// `ry(θ)`, `cx` and `measure` are understood.
pub fn parse_qasm(text: &str) -> Result<Circuit> {
    let mut circuit: Option<Circuit> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split("//").next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let stmt = line.strip_suffix(';').ok_or_else(|| Error::Parse {
            row: line_no,
            message: "missing ';'".into(),
        })?;
        if stmt.starts_with("OPENQASM") || stmt.starts_with("include") || stmt.starts_with("creg")
        {
            continue;
        }
        if let Some(rest) = stmt.strip_prefix("qreg") {
            let n = parse_qubit(rest, "q", line_no)?;
            circuit = Some(Circuit::new(n)?);
            continue;
        }
        let circ = circuit.as_mut().ok_or_else(|| Error::Parse {
            row: line_no,
            message: "gate before qreg declaration".into(),
        })?;

        let split_at = if stmt.contains('(') {
            stmt.find(')').map(|p| p + 1)
        } else {
            stmt.find(char::is_whitespace)
        }
        .ok_or_else(|| Error::Parse {
            row: line_no,
            message: format!("cannot parse statement {stmt:?}"),
        })?;
        let (head, args) = (stmt[..split_at].trim(), stmt[split_at..].trim());

        let ry_param = head
            .strip_prefix("ry")
            .map(str::trim_start)
            .and_then(|s| s.strip_prefix('('))
            .and_then(|s| s.strip_suffix(')'));
        let kind = if let Some(param) = ry_param {
            let theta: f64 = param.trim().parse().map_err(|_| Error::Parse {
                row: line_no,
                message: format!("bad angle {param:?}"),
            })?;
            GateKind::Ry(theta)
        } else {
            match head {
                "h" => GateKind::H,
                "s" => GateKind::S,
                "sdg" => GateKind::Sdg,
                "cx" => GateKind::CX,
                "measure" => GateKind::Measure,
                other => {
                    return Err(Error::Parse {
                        row: line_no,
                        message: format!("unsupported gate {other:?}"),
                    })
                }
            }
        };

        let qubits = match kind {
            GateKind::Measure => {
                let (q, _c) = args.split_once("->").ok_or_else(|| Error::Parse {
                    row: line_no,
                    message: "measure without '->'".into(),
                })?;
                vec![parse_qubit(q, "q", line_no)?]
            }
            _ => args
                .split(',')
                .map(|a| parse_qubit(a, "q", line_no))
                .collect::<Result<Vec<_>>>()?,
        };
        circ.push(Instruction { kind, qubits }).map_err(|e| Error::Parse {
            row: line_no,
            message: e.to_string(),
        })?;
    }
    circuit.ok_or_else(|| Error::Parse {
        row: 0,
        message: "no qreg declaration".into(),
    })
}
