//! Independent validation of compiled circuits: structural conformance
//! against the coupling graph and semantic equivalence via a dense
//! statevector oracle.

use num_complex::Complex;
use serde::Serialize;
use thiserror::Error;

use crate::circuit::{Circuit, GateKind};
use crate::coupling::{CouplingGraph, Support};
use crate::mapping::Configuration;
use crate::Scalar;

/// Dense simulation is capped here; beyond this the oracle is the wrong
/// tool (2^q amplitudes per state, 4^q work per equivalence check).
pub const MAX_SIM_QUBITS: usize = 12;

const NORM_TOLERANCE: f64 = 1e-10;
const EQUIVALENCE_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum SimError {
    #[error("{0} qubits exceed the simulation cap of {MAX_SIM_QUBITS}")]
    TooManyQubits(usize),
    #[error("amplitude count {0} is not a power of two")]
    BadAmplitudeCount(usize),
    #[error("state vector norm {0} is not 1 within {NORM_TOLERANCE}")]
    NotNormalized(f64),
    #[error("circuit has {circuit} qubits but the state has {state}")]
    QubitMismatch { circuit: usize, state: usize },
    #[error("configuration size {config} does not match circuit size {circuit}")]
    ConfigMismatch { config: usize, circuit: usize },
}

/// State of `q` qubits as 2^q complex amplitudes. Basis index bit `w`
/// holds wire `w`'s value (little-endian wire order).
#[derive(Debug, Clone)]
pub struct StateVector<T> {
    num_qubits: usize,
    amplitudes: Vec<Complex<T>>,
}

impl<T: Scalar> StateVector<T> {
    /// Computational basis state `|index>`.
    pub fn basis(num_qubits: usize, index: usize) -> Result<Self, SimError> {
        if num_qubits > MAX_SIM_QUBITS {
            return Err(SimError::TooManyQubits(num_qubits));
        }
        assert!(index < 1 << num_qubits, "basis index out of range");
        let mut amplitudes = vec![Complex::new(T::zero(), T::zero()); 1 << num_qubits];
        amplitudes[index] = Complex::new(T::one(), T::zero());
        Ok(StateVector {
            num_qubits,
            amplitudes,
        })
    }

    pub fn zero(num_qubits: usize) -> Result<Self, SimError> {
        Self::basis(num_qubits, 0)
    }

    /// Wrap raw amplitudes, checking length and normalization.
    pub fn new(amplitudes: Vec<Complex<T>>) -> Result<Self, SimError> {
        let len = amplitudes.len();
        if !len.is_power_of_two() {
            return Err(SimError::BadAmplitudeCount(len));
        }
        let num_qubits = len.trailing_zeros() as usize;
        if num_qubits > MAX_SIM_QUBITS {
            return Err(SimError::TooManyQubits(num_qubits));
        }
        let state = StateVector {
            num_qubits,
            amplitudes,
        };
        let norm = state.norm().to_f64().unwrap_or(f64::NAN);
        if (norm - 1.0).abs() > NORM_TOLERANCE {
            return Err(SimError::NotNormalized(norm));
        }
        Ok(state)
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amplitudes
    }

    pub fn norm(&self) -> T {
        self.amplitudes
            .iter()
            .map(|a| a.norm_sqr())
            .fold(T::zero(), |acc, x| acc + x)
            .sqrt()
    }
}

fn single_qubit_unitary<T: Scalar>(kind: GateKind) -> [[Complex<T>; 2]; 2] {
    let zero = Complex::new(T::zero(), T::zero());
    let one = Complex::new(T::one(), T::zero());
    let inv_sqrt2 = T::from_f64_lossy(std::f64::consts::FRAC_1_SQRT_2);
    match kind {
        GateKind::H => [
            [Complex::new(inv_sqrt2, T::zero()), Complex::new(inv_sqrt2, T::zero())],
            [Complex::new(inv_sqrt2, T::zero()), Complex::new(-inv_sqrt2, T::zero())],
        ],
        GateKind::T => [[one, zero], [zero, Complex::new(inv_sqrt2, inv_sqrt2)]],
        GateKind::Tdg => [[one, zero], [zero, Complex::new(inv_sqrt2, -inv_sqrt2)]],
        GateKind::S => [[one, zero], [zero, Complex::new(T::zero(), T::one())]],
        GateKind::Sdg => [[one, zero], [zero, Complex::new(T::zero(), -T::one())]],
        GateKind::X => [[zero, one], [one, zero]],
        GateKind::Z => [[one, zero], [zero, -one]],
        GateKind::Cnot | GateKind::Swap => unreachable!("two-qubit kind"),
    }
}

/// Apply the circuit's gates in program order to `input`.
pub fn simulate<T: Scalar>(
    circuit: &Circuit,
    input: &StateVector<T>,
) -> Result<StateVector<T>, SimError> {
    if circuit.num_qubits() > MAX_SIM_QUBITS {
        return Err(SimError::TooManyQubits(circuit.num_qubits()));
    }
    if circuit.num_qubits() != input.num_qubits {
        return Err(SimError::QubitMismatch {
            circuit: circuit.num_qubits(),
            state: input.num_qubits,
        });
    }
    let mut amps = input.amplitudes.clone();
    let dim = amps.len();
    for gate in circuit.gates() {
        match gate.kind {
            GateKind::Cnot => {
                let c = 1 << gate.qubits()[0];
                let t = 1 << gate.qubits()[1];
                for i in 0..dim {
                    if i & c != 0 && i & t == 0 {
                        amps.swap(i, i | t);
                    }
                }
            }
            GateKind::Swap => {
                let a = 1 << gate.qubits()[0];
                let b = 1 << gate.qubits()[1];
                for i in 0..dim {
                    if i & a != 0 && i & b == 0 {
                        amps.swap(i, i ^ a ^ b);
                    }
                }
            }
            kind => {
                let u = single_qubit_unitary::<T>(kind);
                let w = 1 << gate.qubits()[0];
                for i in 0..dim {
                    if i & w == 0 {
                        let s0 = amps[i];
                        let s1 = amps[i | w];
                        amps[i] = u[0][0] * s0 + u[0][1] * s1;
                        amps[i | w] = u[1][0] * s0 + u[1][1] * s1;
                    }
                }
            }
        }
    }
    Ok(StateVector {
        num_qubits: circuit.num_qubits(),
        amplitudes: amps,
    })
}

/// One structural rule violation, anchored to the offending gate.
#[derive(Debug, Clone, Serialize)]
pub struct Violation {
    pub gate_index: usize,
    pub description: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct StructuralReport {
    pub pass: bool,
    pub violations: Vec<Violation>,
}

/// Check every CNOT runs along a coupling edge in its exact direction and
/// every SWAP joins coupled vertices (either direction).
pub fn structural_check<T: Scalar>(
    compiled: &Circuit,
    graph: &CouplingGraph<T>,
) -> StructuralReport {
    let mut violations = Vec::new();
    for (index, gate) in compiled.gates().iter().enumerate() {
        if let Some(&wire) = gate.qubits().iter().find(|&&w| w >= graph.num_qubits()) {
            violations.push(Violation {
                gate_index: index,
                description: format!("wire {wire} is outside the device"),
            });
            continue;
        }
        match gate.kind {
            GateKind::Cnot => {
                let (c, t) = (gate.qubits()[0], gate.qubits()[1]);
                match graph.supports(c, t) {
                    Support::Direct => {}
                    Support::Reversed => violations.push(Violation {
                        gate_index: index,
                        description: format!(
                            "CNOT({c}, {t}) runs against the native edge ({t}, {c})"
                        ),
                    }),
                    Support::None => violations.push(Violation {
                        gate_index: index,
                        description: format!("remote CNOT between {c} and {t}"),
                    }),
                }
            }
            GateKind::Swap => {
                let (a, b) = (gate.qubits()[0], gate.qubits()[1]);
                if graph.supports(a, b) == Support::None {
                    violations.push(Violation {
                        gate_index: index,
                        description: format!("SWAP between non-adjacent {a} and {b}"),
                    });
                }
            }
            _ => {}
        }
    }
    StructuralReport {
        pass: violations.is_empty(),
        violations,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SemanticReport {
    pub pass: bool,
    pub max_amplitude_error: f64,
}

/// Map a basis index over circuit qubits to the hardware basis index
/// where each qubit `j`'s bit lands on wire `config.location(j)`.
fn relocate_index(index: usize, config: &Configuration) -> usize {
    let mut out = 0;
    for qubit in 0..config.num_qubits() {
        if index & (1 << qubit) != 0 {
            out |= 1 << config.location(qubit);
        }
    }
    out
}

/// Equivalence of `compiled` (hardware wires) against `original` (circuit
/// wires) over every computational basis input: each qubit enters on its
/// `initial` wire and is read back from its `final_config` wire. Inserted
/// H pairs and SWAPs compose to an exact wire permutation, so agreement
/// is amplitude-wise with no global-phase allowance.
pub fn semantic_check<T: Scalar>(
    original: &Circuit,
    compiled: &Circuit,
    initial: &Configuration,
    final_config: &Configuration,
) -> Result<SemanticReport, SimError> {
    let n = compiled.num_qubits();
    if n > MAX_SIM_QUBITS {
        return Err(SimError::TooManyQubits(n));
    }
    if original.num_qubits() > n {
        return Err(SimError::QubitMismatch {
            circuit: original.num_qubits(),
            state: n,
        });
    }
    if initial.num_qubits() != n || final_config.num_qubits() != n {
        return Err(SimError::ConfigMismatch {
            config: initial.num_qubits().min(final_config.num_qubits()),
            circuit: n,
        });
    }
    let padded = original
        .with_qubits(n)
        .expect("padding to a wider register cannot fail");
    let mut max_error = 0.0f64;
    for input in 0..1usize << n {
        let reference = simulate(&padded, &StateVector::<T>::basis(n, input)?)?;
        let hw_input = relocate_index(input, initial);
        let routed = simulate(compiled, &StateVector::<T>::basis(n, hw_input)?)?;
        for (z, &amp) in routed.amplitudes().iter().enumerate() {
            let mut circuit_index = 0;
            for qubit in 0..n {
                if z & (1 << final_config.location(qubit)) != 0 {
                    circuit_index |= 1 << qubit;
                }
            }
            let err = (amp - reference.amplitudes()[circuit_index])
                .norm()
                .to_f64()
                .unwrap_or(f64::NAN);
            if !(err <= max_error) {
                max_error = err;
            }
        }
    }
    Ok(SemanticReport {
        pass: max_error <= EQUIVALENCE_TOLERANCE,
        max_amplitude_error: max_error,
    })
}

/// Combined report in the shape emitted by the CLI.
#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub structural: StructuralReport,
    pub semantic: SemanticReport,
}

impl VerificationReport {
    pub fn pass(&self) -> bool {
        self.structural.pass && self.semantic.pass
    }
}
