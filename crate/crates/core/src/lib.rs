//! Qubit routing compiler for coupling-constrained quantum architectures.
//!
//! An input circuit (a small OpenQASM 2.0 subset) is transformed into a
//! functionally equivalent circuit that conforms to a device coupling graph,
//! by inserting SWAP gates (to make interacting qubits adjacent) and Hadamard
//! gates (to repair CNOT direction). Two compilation strategies are provided:
//!
//! * [`search::compile_greedy`]: a single pass over the circuit that picks,
//!   for each two-qubit gate, the cheapest coupling edge by summed
//!   shortest-path distance and routes with move-interact (MI) swaps.
//! * [`search::compile_exact`]: a backtracking search over initial qubit
//!   placements, per-CNOT edge choices and CNOT orders, with a best-so-far
//!   cost bound.
//!
//! Compiled results are validated independently by [`verify`]: a structural
//! check against the coupling graph and a semantic check against a dense
//! statevector simulation.
//!
//! Distance and amplitude arithmetic is generic over the scalar type through
//! the [`Scalar`] trait; the crate root exports `f64`-backed aliases which
//! are what the CLI and most tests use.

pub mod chain;
pub mod circuit;
pub mod coupling;
pub mod dag;
pub mod diagram;
pub mod mapping;
pub mod qasm;
pub mod search;
pub mod verify;

use std::fmt::{Debug, Display};

use num_traits::{Float, FromPrimitive};

/// Scalar used for edge weights, distances and state amplitudes: `f32` or `f64`.
pub trait Scalar: Float + FromPrimitive + Debug + Display + Send + Sync + 'static {
    /// Lossless-enough conversion from `f64` literals (tolerances, defaults).
    fn from_f64_lossy(v: f64) -> Self {
        Self::from_f64(v).expect("scalar conversion from f64")
    }
}

impl<T> Scalar for T where T: Float + FromPrimitive + Debug + Display + Send + Sync + 'static {}

/// Coupling graph with `f64` edge weights, the default throughout the CLI.
pub type CouplingGraph = coupling::CouplingGraph<f64>;
/// All-pairs shortest-path matrix over `f64` distances.
pub type DistanceMatrix = coupling::DistanceMatrix<f64>;
/// Dense statevector with `f64` amplitudes.
pub type StateVector = verify::StateVector<f64>;

pub use circuit::{Circuit, Gate, GateKind};
pub use mapping::Configuration;
pub use search::Solution;
