//! Device coupling graph: directed CNOT support between physical qubits,
//! all-pairs shortest paths, and Hadamard-based direction repair.

use serde::Deserialize;
use thiserror::Error;

use crate::circuit::Gate;
use crate::Scalar;

#[derive(Debug, Error)]
pub enum CouplingError {
    #[error("invalid coupling JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("edge ({0}, {1}) references a vertex >= num_qubits {2}")]
    VertexOutOfRange(usize, usize, usize),
    #[error("duplicate directed edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("weights length {got} does not match edge count {expected}")]
    WeightsLengthMismatch { got: usize, expected: usize },
    #[error("edge weight must be positive, got {0}")]
    NonPositiveWeight(f64),
    #[error("no coupling edge between {0} and {1} in either direction")]
    NoEdge(usize, usize),
}

/// Whether the device natively supports a CNOT in the requested direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Support {
    /// `(control, target)` is an edge of the graph.
    Direct,
    /// Only `(target, control)` is an edge; four Hadamards fix the direction.
    Reversed,
    /// The two vertices are not coupled at all.
    None,
}

/// Directed coupling graph over the device's physical qubits.
///
/// Edge list order is preserved exactly as constructed: cost ties during
/// edge selection are broken by position in this list.
#[derive(Debug, Clone)]
pub struct CouplingGraph<T> {
    num_qubits: usize,
    edges: Vec<(usize, usize)>,
    weights: Vec<T>,
}

impl<T: Scalar> CouplingGraph<T> {
    /// Unit-weight graph. Edge order is kept as given.
    pub fn new(num_qubits: usize, edges: Vec<(usize, usize)>) -> Result<Self, CouplingError> {
        let weights = vec![T::one(); edges.len()];
        Self::with_weights(num_qubits, edges, weights)
    }

    pub fn with_weights(
        num_qubits: usize,
        edges: Vec<(usize, usize)>,
        weights: Vec<T>,
    ) -> Result<Self, CouplingError> {
        if weights.len() != edges.len() {
            return Err(CouplingError::WeightsLengthMismatch {
                got: weights.len(),
                expected: edges.len(),
            });
        }
        for (i, &(a, b)) in edges.iter().enumerate() {
            if a == b {
                return Err(CouplingError::SelfLoop(a));
            }
            if a >= num_qubits || b >= num_qubits {
                return Err(CouplingError::VertexOutOfRange(a, b, num_qubits));
            }
            if edges[..i].contains(&(a, b)) {
                return Err(CouplingError::DuplicateEdge(a, b));
            }
        }
        for &w in &weights {
            if w <= T::zero() {
                return Err(CouplingError::NonPositiveWeight(
                    w.to_f64().unwrap_or(f64::NAN),
                ));
            }
        }
        Ok(CouplingGraph {
            num_qubits,
            edges,
            weights,
        })
    }

    /// A linear nearest-neighbour line `0 -> 1 -> ... -> n-1`.
    pub fn line(num_qubits: usize) -> Self {
        let edges = (0..num_qubits.saturating_sub(1))
            .map(|i| (i, i + 1))
            .collect();
        CouplingGraph::new(num_qubits, edges).expect("line graph is always valid")
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    pub fn has_edge(&self, control: usize, target: usize) -> bool {
        self.edges.contains(&(control, target))
    }

    /// Native support for `CNOT(control, target)`.
    pub fn supports(&self, control: usize, target: usize) -> Support {
        if self.has_edge(control, target) {
            Support::Direct
        } else if self.has_edge(target, control) {
            Support::Reversed
        } else {
            Support::None
        }
    }
}

/// Hardware gate sequence implementing `CNOT(control, target)` on adjacent
/// vertices. A direction mismatch is repaired by sandwiching the native
/// CNOT between Hadamards on both qubits.
pub fn expand_cnot<T: Scalar>(
    graph: &CouplingGraph<T>,
    control: usize,
    target: usize,
) -> Result<Vec<Gate>, CouplingError> {
    match graph.supports(control, target) {
        Support::Direct => Ok(vec![Gate::cnot(control, target)]),
        Support::Reversed => Ok(vec![
            Gate::h(control),
            Gate::h(target),
            Gate::cnot(target, control),
            Gate::h(control),
            Gate::h(target),
        ]),
        Support::None => Err(CouplingError::NoEdge(control, target)),
    }
}

#[derive(Deserialize)]
struct CouplingFile {
    num_qubits: usize,
    edges: Vec<(usize, usize)>,
    #[serde(default)]
    weights: Option<Vec<f64>>,
}

/// Parse the JSON coupling format:
/// `{"num_qubits": N, "edges": [[c,t], ...], "weights": [w, ...]}` with
/// `weights` optional (1.0 each when absent). Edge order is file order.
pub fn parse_coupling<T: Scalar>(text: &str) -> Result<CouplingGraph<T>, CouplingError> {
    let file: CouplingFile = serde_json::from_str(text)?;
    let weights = match file.weights {
        Some(ws) => ws.into_iter().map(T::from_f64_lossy).collect(),
        None => vec![T::one(); file.edges.len()],
    };
    CouplingGraph::with_weights(file.num_qubits, file.edges, weights)
}

/// Whether shortest paths follow edge directions or ignore them.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DistanceMode {
    Directed,
    Undirected,
}

/// All-pairs shortest-path distances with next-hop matrices for path
/// reconstruction. Unreachable pairs hold `T::infinity()`.
#[derive(Debug, Clone)]
pub struct DistanceMatrix<T> {
    n: usize,
    dist: Vec<T>,
    next_hop: Vec<Option<usize>>,
    mode: DistanceMode,
}

/// Floyd-Warshall over the graph's edge weights. In undirected mode each
/// edge is relaxed in both directions with the same weight before the run.
pub fn all_pairs_shortest_paths<T: Scalar>(
    graph: &CouplingGraph<T>,
    mode: DistanceMode,
) -> DistanceMatrix<T> {
    let n = graph.num_qubits();
    let mut dist = vec![T::infinity(); n * n];
    let mut next_hop: Vec<Option<usize>> = vec![None; n * n];
    for v in 0..n {
        dist[v * n + v] = T::zero();
        next_hop[v * n + v] = Some(v);
    }
    let relax = |a: usize, b: usize, w: T, dist: &mut Vec<T>, next: &mut Vec<Option<usize>>| {
        if w < dist[a * n + b] {
            dist[a * n + b] = w;
            next[a * n + b] = Some(b);
        }
    };
    for (&(a, b), &w) in graph.edges().iter().zip(graph.weights()) {
        relax(a, b, w, &mut dist, &mut next_hop);
        if mode == DistanceMode::Undirected {
            relax(b, a, w, &mut dist, &mut next_hop);
        }
    }
    for k in 0..n {
        for i in 0..n {
            let dik = dist[i * n + k];
            if dik.is_infinite() {
                continue;
            }
            for j in 0..n {
                let through = dik + dist[k * n + j];
                if through < dist[i * n + j] {
                    dist[i * n + j] = through;
                    next_hop[i * n + j] = next_hop[i * n + k];
                }
            }
        }
    }
    DistanceMatrix {
        n,
        dist,
        next_hop,
        mode,
    }
}

impl<T: Scalar> DistanceMatrix<T> {
    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn mode(&self) -> DistanceMode {
        self.mode
    }

    pub fn dist(&self, from: usize, to: usize) -> T {
        self.dist[from * self.n + to]
    }

    pub fn is_reachable(&self, from: usize, to: usize) -> bool {
        self.dist(from, to).is_finite()
    }

    /// Vertex sequence of a shortest path, endpoints included, or `None`
    /// when unreachable.
    pub fn path(&self, from: usize, to: usize) -> Option<Vec<usize>> {
        if !self.is_reachable(from, to) {
            return None;
        }
        let mut path = vec![from];
        let mut at = from;
        while at != to {
            at = self.next_hop[at * self.n + to]?;
            path.push(at);
        }
        Some(path)
    }
}
