//! Circuit-to-hardware configurations, remote-CNOT detection, and the
//! MI / MIM swap routing strategies.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coupling::{CouplingGraph, DistanceMatrix, Support};
use crate::Scalar;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("configuration {0:?} is not a permutation of 0..{1}")]
    NotAPermutation(Vec<usize>, usize),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RouteError {
    #[error("({0}, {1}) is not a coupling edge in either direction")]
    NoEdge(usize, usize),
    #[error("no swap path from vertex {from} to vertex {to}")]
    NoPath { from: usize, to: usize },
    #[error("no coupling edge is reachable from the operand locations")]
    AllUnreachable,
}

/// Bijection between circuit qubits and hardware vertices.
///
/// `to_hw[qubit]` is the hardware vertex holding that qubit's state;
/// `wire_to_qubit` is the inverse view (which qubit sits on each wire),
/// kept for display since device diagrams usually read that way.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "Vec<usize>", try_from = "Vec<usize>")]
pub struct Configuration {
    to_hw: Vec<usize>,
    to_circ: Vec<usize>,
}

impl Configuration {
    pub fn identity(num_qubits: usize) -> Self {
        let ident: Vec<usize> = (0..num_qubits).collect();
        Configuration {
            to_hw: ident.clone(),
            to_circ: ident,
        }
    }

    pub fn from_to_hw(to_hw: Vec<usize>) -> Result<Self, ConfigError> {
        let q = to_hw.len();
        let mut to_circ = vec![usize::MAX; q];
        for (qubit, &vertex) in to_hw.iter().enumerate() {
            if vertex >= q || to_circ[vertex] != usize::MAX {
                return Err(ConfigError::NotAPermutation(to_hw.clone(), q));
            }
            to_circ[vertex] = qubit;
        }
        Ok(Configuration { to_hw, to_circ })
    }

    pub fn num_qubits(&self) -> usize {
        self.to_hw.len()
    }

    pub fn to_hw(&self) -> &[usize] {
        &self.to_hw
    }

    /// Hardware vertex currently holding `qubit`'s state.
    pub fn location(&self, qubit: usize) -> usize {
        self.to_hw[qubit]
    }

    /// Circuit qubit currently sitting on hardware vertex `vertex`.
    pub fn qubit_at(&self, vertex: usize) -> usize {
        self.to_circ[vertex]
    }

    /// Inverse view: element `w` is the circuit qubit on wire `w`.
    pub fn wire_to_qubit(&self) -> &[usize] {
        &self.to_circ
    }

    pub fn is_identity(&self) -> bool {
        self.to_hw.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// The configuration with qubit and vertex roles exchanged.
    pub fn inverse(&self) -> Configuration {
        Configuration {
            to_hw: self.to_circ.clone(),
            to_circ: self.to_hw.clone(),
        }
    }

    /// Exchange the circuit qubits residing on two hardware vertices.
    pub fn apply_swap(&self, hw_a: usize, hw_b: usize) -> Configuration {
        assert_ne!(hw_a, hw_b, "swap endpoints must differ");
        let mut next = self.clone();
        let qa = next.to_circ[hw_a];
        let qb = next.to_circ[hw_b];
        next.to_hw[qa] = hw_b;
        next.to_hw[qb] = hw_a;
        next.to_circ[hw_a] = qb;
        next.to_circ[hw_b] = qa;
        next
    }
}

impl TryFrom<Vec<usize>> for Configuration {
    type Error = ConfigError;
    fn try_from(to_hw: Vec<usize>) -> Result<Self, Self::Error> {
        Configuration::from_to_hw(to_hw)
    }
}

impl From<Configuration> for Vec<usize> {
    fn from(config: Configuration) -> Vec<usize> {
        config.to_hw
    }
}

/// Whether the interaction runs with the coupling edge or against it
/// (the latter costs four Hadamards).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Direction {
    Direct,
    Reversed,
}

/// Swap schedule produced by a routing strategy.
#[derive(Debug, Clone, PartialEq)]
pub struct RoutePlan {
    /// Hardware-vertex pairs, in application order.
    pub swaps: Vec<(usize, usize)>,
    /// 4 when the interaction runs against the edge direction, else 0.
    pub added_hadamards: usize,
    /// The coupling edge used, in its native direction.
    pub final_edge: (usize, usize),
    pub direction: Direction,
    /// Configuration after all swaps in `swaps` are applied.
    pub resulting_config: Configuration,
}

impl RoutePlan {
    pub fn num_swaps(&self) -> usize {
        self.swaps.len()
    }
}

/// True when the CNOT's operands sit on non-adjacent vertices. Adjacency
/// ignores edge direction: a direction mismatch alone is repaired with
/// Hadamards, not swaps.
pub fn is_remote<T: Scalar>(
    config: &Configuration,
    control: usize,
    target: usize,
    graph: &CouplingGraph<T>,
) -> bool {
    assert_ne!(control, target, "CNOT operands must differ");
    graph.supports(config.location(control), config.location(target)) == Support::None
}

/// Move-interact: bring `control`'s state to vertex `a` along a shortest
/// path, then `target`'s (possibly displaced) state to `b` along a
/// shortest path that avoids `a`. One SWAP per path edge; the
/// configuration evolves and is not restored.
///
/// `edge` is read as `(control destination, target destination)`; the
/// pair must be coupled in at least one direction.
pub fn route_mi<T: Scalar>(
    config: &Configuration,
    control: usize,
    target: usize,
    edge: (usize, usize),
    graph: &CouplingGraph<T>,
    dm: &DistanceMatrix<T>,
) -> Result<RoutePlan, RouteError> {
    let (a, b) = edge;
    let direction = match graph.supports(a, b) {
        Support::Direct => Direction::Direct,
        Support::Reversed => Direction::Reversed,
        Support::None => return Err(RouteError::NoEdge(a, b)),
    };
    let mut current = config.clone();
    let mut swaps = Vec::new();

    let control_loc = current.location(control);
    let control_path = dm
        .path(control_loc, a)
        .ok_or(RouteError::NoPath { from: control_loc, to: a })?;
    for step in control_path.windows(2) {
        swaps.push((step[0], step[1]));
        current = current.apply_swap(step[0], step[1]);
    }

    let target_loc = current.location(target);
    if target_loc != b {
        let target_path = shortest_path_avoiding(graph, target_loc, b, a)
            .ok_or(RouteError::NoPath { from: target_loc, to: b })?;
        for step in target_path.windows(2) {
            swaps.push((step[0], step[1]));
            current = current.apply_swap(step[0], step[1]);
        }
    }

    Ok(RoutePlan {
        swaps,
        added_hadamards: if direction == Direction::Reversed { 4 } else { 0 },
        final_edge: if direction == Direction::Direct { (a, b) } else { (b, a) },
        direction,
        resulting_config: current,
    })
}

/// Move-interact-move: the MI swaps followed by the same swaps in reverse
/// order, so `resulting_config` equals the input configuration. The
/// interaction sits between the two halves: the first `swaps.len() / 2`
/// entries precede it, the rest undo the movement.
pub fn route_mim<T: Scalar>(
    config: &Configuration,
    control: usize,
    target: usize,
    edge: (usize, usize),
    graph: &CouplingGraph<T>,
    dm: &DistanceMatrix<T>,
) -> Result<RoutePlan, RouteError> {
    let mi = route_mi(config, control, target, edge, graph, dm)?;
    let mut swaps = mi.swaps.clone();
    swaps.extend(mi.swaps.iter().rev().copied());
    Ok(RoutePlan {
        swaps,
        added_hadamards: mi.added_hadamards,
        final_edge: mi.final_edge,
        direction: mi.direction,
        resulting_config: config.clone(),
    })
}

/// Dijkstra from `from` to `to` on the undirected view of the graph with
/// vertex `avoid` deleted. Ties broken by scanning vertices in index
/// order, so the result is deterministic.
fn shortest_path_avoiding<T: Scalar>(
    graph: &CouplingGraph<T>,
    from: usize,
    to: usize,
    avoid: usize,
) -> Option<Vec<usize>> {
    if from == avoid || to == avoid {
        return None;
    }
    let n = graph.num_qubits();
    let mut dist = vec![T::infinity(); n];
    let mut prev = vec![usize::MAX; n];
    let mut done = vec![false; n];
    dist[from] = T::zero();
    loop {
        let mut u = usize::MAX;
        for v in 0..n {
            if !done[v] && dist[v].is_finite() && (u == usize::MAX || dist[v] < dist[u]) {
                u = v;
            }
        }
        if u == usize::MAX {
            return None;
        }
        if u == to {
            break;
        }
        done[u] = true;
        for (&(x, y), &w) in graph.edges().iter().zip(graph.weights()) {
            for (s, t) in [(x, y), (y, x)] {
                if s == u && t != avoid && !done[t] && dist[u] + w < dist[t] {
                    dist[t] = dist[u] + w;
                    prev[t] = u;
                }
            }
        }
    }
    let mut path = vec![to];
    let mut at = to;
    while at != from {
        at = prev[at];
        path.push(at);
    }
    path.reverse();
    Some(path)
}

/// The coupling edge chosen to host an interaction, with the endpoint
/// assignment that produced the winning cost.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeChoice<T> {
    /// Position of the edge in the graph's edge list.
    pub edge_index: usize,
    /// The edge exactly as stored (native direction).
    pub edge: (usize, usize),
    /// Vertex the control's state should move to.
    pub control_dest: usize,
    /// Vertex the target's state should move to.
    pub target_dest: usize,
    /// Summed shortest-path distance of the winning assignment.
    pub cost: T,
}

/// Score every coupling edge by the summed distance from the operands'
/// current locations to its endpoints, trying both endpoint assignments,
/// and return the cheapest. Ties between edges keep the LAST edge in list
/// order; ties between the two assignments of one edge keep the forward
/// one (control on the edge source), which avoids Hadamard repair.
pub fn select_best_edge<T: Scalar>(
    config: &Configuration,
    control: usize,
    target: usize,
    graph: &CouplingGraph<T>,
    dm: &DistanceMatrix<T>,
) -> Result<EdgeChoice<T>, RouteError> {
    let lc = config.location(control);
    let lt = config.location(target);
    let mut best: Option<EdgeChoice<T>> = None;
    for (index, &(a, b)) in graph.edges().iter().enumerate() {
        let forward = dm.dist(lc, a) + dm.dist(lt, b);
        let backward = dm.dist(lc, b) + dm.dist(lt, a);
        let (cost, control_dest, target_dest) = if forward <= backward {
            (forward, a, b)
        } else {
            (backward, b, a)
        };
        if !cost.is_finite() {
            continue;
        }
        if best.as_ref().is_none_or(|c| cost <= c.cost) {
            best = Some(EdgeChoice {
                edge_index: index,
                edge: (a, b),
                control_dest,
                target_dest,
                cost,
            });
        }
    }
    best.ok_or(RouteError::AllUnreachable)
}
