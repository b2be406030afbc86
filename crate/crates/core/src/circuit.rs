//! Gate-list circuit representation and gate-count/depth metrics.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// The gate alphabet understood by the compiler.
///
/// Single-qubit kinds take one operand. `Cnot` takes an ordered
/// (control, target) pair; `Swap` takes an unordered pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GateKind {
    H,
    T,
    Tdg,
    S,
    Sdg,
    X,
    Z,
    Cnot,
    Swap,
}

impl GateKind {
    pub fn arity(self) -> usize {
        match self {
            GateKind::Cnot | GateKind::Swap => 2,
            _ => 1,
        }
    }

    /// Statement name in the OpenQASM 2.0 subset.
    pub fn qasm_name(self) -> &'static str {
        match self {
            GateKind::H => "h",
            GateKind::T => "t",
            GateKind::Tdg => "tdg",
            GateKind::S => "s",
            GateKind::Sdg => "sdg",
            GateKind::X => "x",
            GateKind::Z => "z",
            GateKind::Cnot => "cx",
            GateKind::Swap => "swap",
        }
    }

    pub fn from_qasm_name(name: &str) -> Option<Self> {
        Some(match name {
            "h" => GateKind::H,
            "t" => GateKind::T,
            "tdg" => GateKind::Tdg,
            "s" => GateKind::S,
            "sdg" => GateKind::Sdg,
            "x" => GateKind::X,
            "z" => GateKind::Z,
            "cx" => GateKind::Cnot,
            "swap" => GateKind::Swap,
            _ => return None,
        })
    }

    pub const ALL: [GateKind; 9] = [
        GateKind::H,
        GateKind::T,
        GateKind::Tdg,
        GateKind::S,
        GateKind::Sdg,
        GateKind::X,
        GateKind::Z,
        GateKind::Cnot,
        GateKind::Swap,
    ];
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CircuitError {
    #[error("{kind:?} takes {expected} operand(s), got {got}")]
    Arity {
        kind: GateKind,
        expected: usize,
        got: usize,
    },
    #[error("operands of a two-qubit gate must be distinct, got {0}")]
    DuplicateOperand(usize),
    #[error("operand {operand} out of range for {num_qubits} qubit(s)")]
    OperandOutOfRange { operand: usize, num_qubits: usize },
}

/// One gate application. Operand order is (control, target) for CNOT.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Gate {
    pub kind: GateKind,
    qubits: Vec<usize>,
}

impl Gate {
    pub fn new(kind: GateKind, qubits: Vec<usize>) -> Result<Self, CircuitError> {
        if qubits.len() != kind.arity() {
            return Err(CircuitError::Arity {
                kind,
                expected: kind.arity(),
                got: qubits.len(),
            });
        }
        if qubits.len() == 2 && qubits[0] == qubits[1] {
            return Err(CircuitError::DuplicateOperand(qubits[0]));
        }
        Ok(Gate { kind, qubits })
    }

    pub fn single(kind: GateKind, wire: usize) -> Self {
        debug_assert_eq!(kind.arity(), 1);
        Gate {
            kind,
            qubits: vec![wire],
        }
    }

    pub fn h(wire: usize) -> Self {
        Gate::single(GateKind::H, wire)
    }

    pub fn cnot(control: usize, target: usize) -> Self {
        assert_ne!(control, target, "CNOT operands must be distinct");
        Gate {
            kind: GateKind::Cnot,
            qubits: vec![control, target],
        }
    }

    pub fn swap(a: usize, b: usize) -> Self {
        assert_ne!(a, b, "SWAP operands must be distinct");
        Gate {
            kind: GateKind::Swap,
            qubits: vec![a, b],
        }
    }

    pub fn qubits(&self) -> &[usize] {
        &self.qubits
    }

    /// Control wire of a CNOT (first operand of any two-qubit gate).
    pub fn control(&self) -> usize {
        self.qubits[0]
    }

    /// Target wire of a CNOT (second operand of any two-qubit gate).
    pub fn target(&self) -> usize {
        debug_assert_eq!(self.qubits.len(), 2);
        self.qubits[1]
    }

    pub fn is_cnot(&self) -> bool {
        self.kind == GateKind::Cnot
    }

    /// The same gate with every operand sent through `f`.
    pub fn map_qubits(&self, mut f: impl FnMut(usize) -> usize) -> Gate {
        Gate {
            kind: self.kind,
            qubits: self.qubits.iter().map(|&q| f(q)).collect(),
        }
    }
}

/// An ordered gate list over `num_qubits` wires. Gate order is program order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Circuit {
    num_qubits: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(num_qubits: usize, gates: Vec<Gate>) -> Result<Self, CircuitError> {
        for gate in &gates {
            for &q in gate.qubits() {
                if q >= num_qubits {
                    return Err(CircuitError::OperandOutOfRange {
                        operand: q,
                        num_qubits,
                    });
                }
            }
        }
        Ok(Circuit { num_qubits, gates })
    }

    pub fn empty(num_qubits: usize) -> Self {
        Circuit {
            num_qubits,
            gates: Vec::new(),
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// Gate indices of the CNOTs, in program order.
    pub fn cnot_indices(&self) -> Vec<usize> {
        self.gates
            .iter()
            .enumerate()
            .filter(|(_, g)| g.is_cnot())
            .map(|(i, _)| i)
            .collect()
    }

    pub fn num_cnots(&self) -> usize {
        self.gates.iter().filter(|g| g.is_cnot()).count()
    }

    /// The same gate list declared over `num_qubits` wires (idle padding).
    /// Fails if an existing operand would fall out of range.
    pub fn with_qubits(&self, num_qubits: usize) -> Result<Circuit, CircuitError> {
        Circuit::new(num_qubits, self.gates.clone())
    }
}

/// Gate counts keyed by kind, in a fixed field order so serialized output
/// is stable.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GateCounts {
    pub h: usize,
    pub t: usize,
    pub tdg: usize,
    pub s: usize,
    pub sdg: usize,
    pub x: usize,
    pub z: usize,
    pub cnot: usize,
    pub swap: usize,
}

impl GateCounts {
    pub fn of(circuit: &Circuit) -> Self {
        let mut counts = GateCounts::default();
        for gate in circuit.gates() {
            *counts.get_mut(gate.kind) += 1;
        }
        counts
    }

    pub fn get(&self, kind: GateKind) -> usize {
        match kind {
            GateKind::H => self.h,
            GateKind::T => self.t,
            GateKind::Tdg => self.tdg,
            GateKind::S => self.s,
            GateKind::Sdg => self.sdg,
            GateKind::X => self.x,
            GateKind::Z => self.z,
            GateKind::Cnot => self.cnot,
            GateKind::Swap => self.swap,
        }
    }

    fn get_mut(&mut self, kind: GateKind) -> &mut usize {
        match kind {
            GateKind::H => &mut self.h,
            GateKind::T => &mut self.t,
            GateKind::Tdg => &mut self.tdg,
            GateKind::S => &mut self.s,
            GateKind::Sdg => &mut self.sdg,
            GateKind::X => &mut self.x,
            GateKind::Z => &mut self.z,
            GateKind::Cnot => &mut self.cnot,
            GateKind::Swap => &mut self.swap,
        }
    }

    pub fn total(&self) -> usize {
        GateKind::ALL.iter().map(|&k| self.get(k)).sum()
    }
}

/// Gate counts plus circuit depth.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Metrics {
    pub counts: GateCounts,
    pub total: usize,
    pub depth: usize,
}

/// Gate counts and depth, each gate counting 1. With `expand_swap`, each
/// SWAP instead counts as its 3-CNOT decomposition: 3 towards the CNOT
/// count and 3 layers of depth.
pub fn metrics(circuit: &Circuit, expand_swap: bool) -> Metrics {
    let mut counts = GateCounts::default();
    let mut wire_depth = vec![0usize; circuit.num_qubits()];
    for gate in circuit.gates() {
        let units = if expand_swap && gate.kind == GateKind::Swap {
            counts.cnot += 3;
            3
        } else {
            *counts.get_mut(gate.kind) += 1;
            1
        };
        let level = gate
            .qubits()
            .iter()
            .map(|&q| wire_depth[q])
            .max()
            .unwrap_or(0)
            + units;
        for &q in gate.qubits() {
            wire_depth[q] = level;
        }
    }
    Metrics {
        counts,
        total: counts.total(),
        depth: wire_depth.into_iter().max().unwrap_or(0),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gate_arity_is_checked() {
        assert!(Gate::new(GateKind::Cnot, vec![0]).is_err());
        assert!(Gate::new(GateKind::H, vec![0, 1]).is_err());
        assert!(Gate::new(GateKind::Cnot, vec![0, 1]).is_ok());
    }

    #[test]
    fn duplicate_operands_rejected() {
        assert_eq!(
            Gate::new(GateKind::Swap, vec![2, 2]),
            Err(CircuitError::DuplicateOperand(2))
        );
    }

    #[test]
    fn circuit_rejects_out_of_range_operand() {
        let err = Circuit::new(2, vec![Gate::cnot(0, 2)]).unwrap_err();
        assert_eq!(
            err,
            CircuitError::OperandOutOfRange {
                operand: 2,
                num_qubits: 2
            }
        );
    }

    #[test]
    fn parallel_gates_share_a_depth_level() {
        let c = Circuit::new(2, vec![Gate::h(0), Gate::h(1)]).unwrap();
        let m = metrics(&c, false);
        assert_eq!(m.total, 2);
        assert_eq!(m.depth, 1);
    }

    #[test]
    fn serial_wire_dependency_stacks_depth() {
        let c = Circuit::new(2, vec![Gate::h(0), Gate::cnot(0, 1), Gate::h(1)]).unwrap();
        let m = metrics(&c, false);
        assert_eq!(m.total, 3);
        assert_eq!(m.depth, 3);
    }

    #[test]
    fn swap_expansion_counts_three_cnots() {
        let c = Circuit::new(2, vec![Gate::swap(0, 1)]).unwrap();
        let m = metrics(&c, true);
        assert_eq!(m.total, 3);
        assert_eq!(m.depth, 3);
        assert_eq!(m.counts.cnot, 3);
        assert_eq!(m.counts.swap, 0);
        // Default view: one SWAP is one gate.
        let m = metrics(&c, false);
        assert_eq!((m.total, m.depth), (1, 1));
    }

    #[test]
    fn depth_is_at_least_max_wire_load() {
        let c = Circuit::new(
            3,
            vec![
                Gate::h(0),
                Gate::cnot(0, 1),
                Gate::single(GateKind::T, 1),
                Gate::cnot(1, 2),
                Gate::h(1),
            ],
        )
        .unwrap();
        let m = metrics(&c, false);
        let mut load = vec![0usize; 3];
        for g in c.gates() {
            for &q in g.qubits() {
                load[q] += 1;
            }
        }
        assert!(m.depth >= load.into_iter().max().unwrap());
    }
}
