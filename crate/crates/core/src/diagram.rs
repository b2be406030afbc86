//! DOT rendering of the exact search space: one concentric ring of
//! configuration nodes per CNOT-chain vertex, radial edges between
//! consecutive rings labeled by the chain edge weight. A search walks
//! from the innermost ring outward.

use std::fmt::Write;

use itertools::Itertools;
use thiserror::Error;

use crate::chain::{build_cnot_chain, ChainError};
use crate::circuit::Circuit;
use crate::coupling::CouplingGraph;
use crate::dag::build_dag;
use crate::Scalar;

#[derive(Debug, Error)]
pub enum DiagramError {
    #[error("diagram over {qubits} qubits has {qubits}! nodes per ring, limit is {limit} qubits")]
    TooManyQubits { qubits: usize, limit: usize },
    #[error("circuit uses {circuit} qubits but the device has only {device}")]
    DeviceTooSmall { circuit: usize, device: usize },
    #[error(transparent)]
    Chain(#[from] ChainError),
}

/// Render the search space for `circuit` compiled onto `graph` with its
/// CNOTs taken in `order` (original gate indices).
///
/// Each CNOT-chain vertex contributes a ring of q! configuration nodes
/// (q = device width), innermost ring first; node `r_p` is the p-th
/// placement in lexicographic order. Radial edges connect a placement to
/// itself on the next ring and carry the chain weight: 1 over a CNOT
/// edge, 0 over a bridge. The node count grows as q!, so `q_limit` caps
/// the device width.
pub fn export_search_diagram<T: Scalar>(
    circuit: &Circuit,
    graph: &CouplingGraph<T>,
    order: &[usize],
    q_limit: usize,
) -> Result<String, DiagramError> {
    let q = graph.num_qubits();
    if circuit.num_qubits() > q {
        return Err(DiagramError::DeviceTooSmall {
            circuit: circuit.num_qubits(),
            device: q,
        });
    }
    if q > q_limit {
        return Err(DiagramError::TooManyQubits {
            qubits: q,
            limit: q_limit,
        });
    }
    let chain = build_cnot_chain(&build_dag(circuit), order)?;
    let labels: Vec<String> = (0..q)
        .permutations(q)
        .map(|perm| format!("[{}]", perm.iter().join(",")))
        .collect();
    let ring_size = labels.len();
    let rings = chain.vertices.len();

    let mut out = String::new();
    let w = &mut out;
    writeln!(w, "digraph search_space {{").unwrap();
    writeln!(
        w,
        "  // device: {} vertices, {} coupling edges",
        q,
        graph.edges().len()
    )
    .unwrap();
    writeln!(
        w,
        "  // {} rings of {} configurations; ring 0 (the start) is innermost",
        rings, ring_size
    )
    .unwrap();
    writeln!(w, "  layout=twopi;").unwrap();
    writeln!(w, "  ranksep=2;").unwrap();
    writeln!(w, "  node [shape=box, fontsize=10];").unwrap();
    for (r, &wire) in chain.vertices.iter().enumerate() {
        writeln!(w, "  // ring {}: chain vertex on wire {}", r, wire).unwrap();
        for (p, label) in labels.iter().enumerate() {
            writeln!(w, "  r{}_p{} [label=\"{}\"];", r, p, label).unwrap();
        }
        // Neighbouring placements on a ring differ by re-placement, not
        // by compiled gates; draw the ring closed and undirected.
        if ring_size == 2 {
            writeln!(w, "  r{r}_p0 -> r{r}_p1 [style=dashed, arrowhead=none];").unwrap();
        } else if ring_size > 2 {
            for p in 0..ring_size {
                writeln!(
                    w,
                    "  r{}_p{} -> r{}_p{} [style=dashed, arrowhead=none];",
                    r,
                    p,
                    r,
                    (p + 1) % ring_size
                )
                .unwrap();
            }
        }
    }
    for (e, &weight) in chain.weights.iter().enumerate() {
        for p in 0..ring_size {
            writeln!(
                w,
                "  r{}_p{} -> r{}_p{} [label=\"{}\"];",
                e,
                p,
                e + 1,
                p,
                weight
            )
            .unwrap();
        }
    }
    writeln!(w, "}}").unwrap();
    Ok(out)
}
