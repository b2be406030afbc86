//! Linear CNOT-chain abstraction of a circuit's CNOT sequence.
//!
//! The chain is a walk on the circuit's wires: for each CNOT, visit its
//! control wire and then its target wire. Consecutive CNOTs are bridged by
//! a weight-0 edge unless the next control is the wire just visited.

use thiserror::Error;

use crate::dag::CircuitDag;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ChainError {
    #[error("order is not a valid topological sort of the CNOT sub-DAG")]
    InvalidOrder,
}

/// A vertex sequence over wire indices with binary edge weights: weight 1
/// for a control-to-target (CNOT) edge, weight 0 for a bridge between
/// consecutive CNOTs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnotChain {
    /// Wire index of each chain vertex, in walk order.
    pub vertices: Vec<usize>,
    /// One weight per consecutive vertex pair, each 0 or 1.
    pub weights: Vec<u8>,
    /// For the k-th weight-1 edge, the gate index of the originating CNOT.
    pub cnot_index: Vec<usize>,
}

impl CnotChain {
    pub fn num_cnot_edges(&self) -> usize {
        self.weights.iter().filter(|&&w| w == 1).count()
    }

    pub fn weight_sum(&self) -> usize {
        self.weights.iter().map(|&w| w as usize).sum()
    }
}

/// Build the chain for the CNOTs of `dag` taken in `order` (gate indices).
///
/// Per CNOT: a control vertex is appended unless the control wire equals the
/// previous CNOT's target wire; the target vertex is always appended with a
/// weight-1 edge from the control vertex; when a control vertex was
/// appended after a previous CNOT, a weight-0 edge bridges the previous
/// target to it.
pub fn build_cnot_chain(dag: &CircuitDag, order: &[usize]) -> Result<CnotChain, ChainError> {
    if !dag.is_valid_cnot_order(order) {
        return Err(ChainError::InvalidOrder);
    }
    let mut vertices = Vec::with_capacity(2 * order.len());
    let mut weights = Vec::new();
    let mut cnot_index = Vec::with_capacity(order.len());
    let mut prev_target: Option<usize> = None;
    for &g in order {
        let gate = dag.gate(g);
        let (control, target) = (gate.control(), gate.target());
        match prev_target {
            Some(pt) if pt == control => {
                // reuse the previous target vertex as this control
            }
            Some(_) => {
                vertices.push(control);
                weights.push(0);
            }
            None => vertices.push(control),
        }
        vertices.push(target);
        weights.push(1);
        cnot_index.push(g);
        prev_target = Some(target);
    }
    Ok(CnotChain {
        vertices,
        weights,
        cnot_index,
    })
}
