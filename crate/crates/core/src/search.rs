//! The compilers: a greedy best-edge single pass, an exact backtracking
//! search over initial configurations, CNOT orders, and per-CNOT edge
//! choices, and the search-space size formula.

use std::time::{Duration, Instant};

use itertools::Itertools;
use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::circuit::{metrics, Circuit, Gate, GateCounts, GateKind};
use crate::coupling::{
    all_pairs_shortest_paths, expand_cnot, CouplingGraph, DistanceMatrix, DistanceMode,
};
use crate::dag::{build_dag, enumerate_cnot_orders, CircuitDag};
use crate::mapping::{route_mi, select_best_edge, Configuration, RouteError};
use crate::qasm::{parse_qasm, serialize_qasm, ParseError};
use crate::Scalar;

#[derive(Debug, Error)]
pub enum CompileError {
    #[error("circuit uses {circuit} qubits but the device has only {device}")]
    DeviceTooSmall { circuit: usize, device: usize },
    #[error("initial configuration covers {config} qubits, the device has {device}")]
    ConfigSize { config: usize, device: usize },
    #[error("search budget limits must be positive")]
    InvalidBudget,
    #[error(transparent)]
    Route(#[from] RouteError),
    #[error("search budget exhausted before any complete solution was found")]
    NoSolution,
}

/// A compiled circuit plus the bookkeeping that makes it checkable: the
/// placements at both ends, the inserted-gate counts, and the CNOT order
/// that was used.
#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    /// Hardware-addressed gate list.
    pub compiled: Circuit,
    pub added_swaps: usize,
    pub added_hadamards: usize,
    /// Depth of `compiled` with SWAP counted as one gate.
    pub depth: usize,
    pub initial_config: Configuration,
    pub final_config: Configuration,
    /// Original-circuit gate indices of the CNOTs, in compile order.
    pub cnot_order: Vec<usize>,
    /// True when a budget limit cut the search short of exhaustiveness.
    pub incomplete: bool,
}

/// Wire format of a Solution. The compiled circuit travels as QASM text.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionReport {
    pub added_swaps: usize,
    pub added_hadamards: usize,
    pub depth: usize,
    pub initial_config: Configuration,
    pub final_config: Configuration,
    pub compiled_qasm: String,
    pub incomplete: bool,
}

impl Solution {
    pub fn report(&self) -> SolutionReport {
        SolutionReport {
            added_swaps: self.added_swaps,
            added_hadamards: self.added_hadamards,
            depth: self.depth,
            initial_config: self.initial_config.clone(),
            final_config: self.final_config.clone(),
            compiled_qasm: serialize_qasm(&self.compiled),
            incomplete: self.incomplete,
        }
    }
}

impl SolutionReport {
    pub fn compiled_circuit(&self) -> Result<Circuit, ParseError> {
        Ok(parse_qasm(&self.compiled_qasm)?.circuit)
    }
}

/// Caps on the exact search's axes. `None` means unlimited; the full
/// space is `2 n q! |V|^n n!`, so real runs set at least one cap.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SearchBudget {
    pub max_initial_configs: Option<usize>,
    pub max_cnot_orders: Option<usize>,
    /// Counts per-CNOT routing attempts (edge and orientation choices).
    pub max_nodes: Option<u64>,
    pub time_limit: Option<Duration>,
}

impl SearchBudget {
    pub fn unlimited() -> Self {
        SearchBudget::default()
    }

    fn validate(&self) -> Result<(), CompileError> {
        let positive = self.max_initial_configs.is_none_or(|v| v >= 1)
            && self.max_cnot_orders.is_none_or(|v| v >= 1)
            && self.max_nodes.is_none_or(|v| v >= 1)
            && self.time_limit.is_none_or(|v| v > Duration::ZERO);
        if positive {
            Ok(())
        } else {
            Err(CompileError::InvalidBudget)
        }
    }
}

/// Lexicographic objective: weighted inserted-gate cost first, then
/// depth. A SWAP defaults to 3 Hadamard units (its 3-CNOT decomposition).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Objective {
    pub swap_weight: f64,
}

impl Default for Objective {
    fn default() -> Self {
        Objective { swap_weight: 3.0 }
    }
}

impl Objective {
    pub fn gate_cost(&self, added_swaps: usize, added_hadamards: usize) -> f64 {
        added_swaps as f64 * self.swap_weight + added_hadamards as f64
    }

    pub fn solution_key(&self, solution: &Solution) -> (f64, usize) {
        (
            self.gate_cost(solution.added_swaps, solution.added_hadamards),
            solution.depth,
        )
    }

    fn better(&self, candidate: (f64, usize), incumbent: (f64, usize)) -> bool {
        candidate.0 < incumbent.0 || (candidate.0 == incumbent.0 && candidate.1 < incumbent.1)
    }
}

/// How the exact search picks starting placements.
#[derive(Debug, Clone, PartialEq)]
pub enum InitialChoice {
    /// Try all q! placements in lexicographic order (budget permitting).
    Enumerate,
    /// Compile under exactly this placement.
    Fixed(Configuration),
}

/// Exact count of leaves in the naive search space: 2 n q! v^n n! for a
/// q-qubit circuit with n CNOTs on a v-vertex device.
pub fn search_space_size(q: usize, n: usize, v: usize) -> BigUint {
    assert!(q >= 1 && v >= 1, "need at least one qubit and one vertex");
    BigUint::from(2usize)
        * BigUint::from(n)
        * factorial(q)
        * BigUint::from(v).pow(n as u32)
        * factorial(n)
}

fn factorial(k: usize) -> BigUint {
    (1..=k).fold(BigUint::from(1usize), |acc, i| acc * i)
}

fn check_device<T: Scalar>(
    circuit: &Circuit,
    graph: &CouplingGraph<T>,
) -> Result<Circuit, CompileError> {
    let n = graph.num_qubits();
    if circuit.num_qubits() > n {
        return Err(CompileError::DeviceTooSmall {
            circuit: circuit.num_qubits(),
            device: n,
        });
    }
    Ok(circuit
        .with_qubits(n)
        .expect("padding to device width cannot fail"))
}

fn finish_solution(
    original_padded: &Circuit,
    compiled: Circuit,
    initial: Configuration,
    final_config: Configuration,
    cnot_order: Vec<usize>,
    incomplete: bool,
) -> Solution {
    let before = GateCounts::of(original_padded);
    let after = GateCounts::of(&compiled);
    let depth = metrics(&compiled, false).depth;
    Solution {
        added_swaps: after.swap - before.swap,
        added_hadamards: after.h - before.h,
        depth,
        compiled,
        initial_config: initial,
        final_config,
        cnot_order,
        incomplete,
    }
}

/// Single deterministic pass: every gate is emitted at the operands'
/// current hardware locations; each CNOT (and each original SWAP) is
/// first routed to the cheapest edge with MI swaps. The configuration
/// evolves; no placement or ordering search happens.
pub fn compile_greedy<T: Scalar>(
    circuit: &Circuit,
    graph: &CouplingGraph<T>,
    initial: &Configuration,
) -> Result<Solution, CompileError> {
    let padded = check_device(circuit, graph)?;
    let n = graph.num_qubits();
    if initial.num_qubits() != n {
        return Err(CompileError::ConfigSize {
            config: initial.num_qubits(),
            device: n,
        });
    }
    let dm = all_pairs_shortest_paths(graph, DistanceMode::Undirected);
    let mut current = initial.clone();
    let mut gates: Vec<Gate> = Vec::new();
    for gate in padded.gates() {
        match gate.kind {
            GateKind::Cnot => {
                let (c, t) = (gate.control(), gate.target());
                let choice = select_best_edge(&current, c, t, graph, &dm)?;
                let plan = route_mi(
                    &current,
                    c,
                    t,
                    (choice.control_dest, choice.target_dest),
                    graph,
                    &dm,
                )?;
                for &(x, y) in &plan.swaps {
                    gates.push(Gate::swap(x, y));
                }
                current = plan.resulting_config;
                gates.extend(
                    expand_cnot(graph, choice.control_dest, choice.target_dest)
                        .expect("edge chosen from the coupling graph"),
                );
            }
            GateKind::Swap => {
                let (a, b) = (gate.qubits()[0], gate.qubits()[1]);
                let choice = select_best_edge(&current, a, b, graph, &dm)?;
                let plan = route_mi(
                    &current,
                    a,
                    b,
                    (choice.control_dest, choice.target_dest),
                    graph,
                    &dm,
                )?;
                for &(x, y) in &plan.swaps {
                    gates.push(Gate::swap(x, y));
                }
                current = plan.resulting_config;
                // The payload SWAP exchanges the two states in place, so
                // the qubit-to-wire map is unchanged by it.
                gates.push(Gate::swap(choice.control_dest, choice.target_dest));
            }
            _ => gates.push(gate.map_qubits(|w| current.location(w))),
        }
    }
    let compiled = Circuit::new(n, gates).expect("compiled gates address device wires");
    let order = padded.cnot_indices();
    Ok(finish_solution(
        &padded,
        compiled,
        initial.clone(),
        current,
        order,
        false,
    ))
}

/// One scheduled action while replaying a circuit under a chosen CNOT
/// order: pass a gate through re-addressed, or route a two-qubit gate.
#[derive(Debug, Clone, Copy)]
enum Step {
    Emit(usize),
    RouteSwap(usize),
    RouteCnot(usize),
}

/// Interleave the non-CNOT gates with the chosen CNOT order: every gate
/// is emitted just before the first ordered CNOT that depends on it
/// (ascending gate index within a batch), the rest after the last CNOT.
fn build_schedule(dag: &CircuitDag, order: &[usize], reach: &[Option<Vec<bool>>]) -> Vec<Step> {
    let num = dag.len();
    let mut emitted = vec![false; num];
    let mut steps = Vec::with_capacity(num);
    let step_for = |g: usize| match dag.gate(g).kind {
        GateKind::Swap => Step::RouteSwap(g),
        _ => Step::Emit(g),
    };
    for &k in order {
        for g in 0..num {
            if !emitted[g] && !dag.gate(g).is_cnot() && reach[g].as_ref().is_some_and(|r| r[k]) {
                emitted[g] = true;
                steps.push(step_for(g));
            }
        }
        emitted[k] = true;
        steps.push(Step::RouteCnot(k));
    }
    for g in 0..num {
        if !emitted[g] && !dag.gate(g).is_cnot() {
            steps.push(step_for(g));
        }
    }
    steps
}

struct ExactSearch<'a, T: Scalar> {
    graph: &'a CouplingGraph<T>,
    dm: &'a DistanceMatrix<T>,
    padded: &'a Circuit,
    objective: Objective,
    max_nodes: u64,
    deadline: Option<Instant>,
    nodes: u64,
    exhausted: bool,
    buffer: Vec<Gate>,
    initial: Configuration,
    order: Vec<usize>,
    best: Option<Solution>,
    best_key: (f64, usize),
}

impl<T: Scalar> ExactSearch<'_, T> {
    fn charge_node(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            self.exhausted = true;
            return false;
        }
        if self.nodes % 256 == 0 {
            if let Some(deadline) = self.deadline {
                if Instant::now() >= deadline {
                    self.exhausted = true;
                    return false;
                }
            }
        }
        true
    }

    fn prune(&self, cost: f64) -> bool {
        // Strict: equal-cost branches stay alive for the depth tie-break.
        self.best.is_some() && cost > self.best_key.0
    }

    fn dfs(
        &mut self,
        schedule: &[Step],
        pos: usize,
        config: &Configuration,
        cost: f64,
        added_swaps: usize,
        added_hadamards: usize,
    ) {
        if self.exhausted {
            return;
        }
        if pos == schedule.len() {
            let compiled = Circuit::new(self.graph.num_qubits(), self.buffer.clone())
                .expect("buffer gates address device wires");
            let depth = metrics(&compiled, false).depth;
            let key = (cost, depth);
            if self.best.is_none() || self.objective.better(key, self.best_key) {
                self.best_key = key;
                self.best = Some(Solution {
                    compiled,
                    added_swaps,
                    added_hadamards,
                    depth,
                    initial_config: self.initial.clone(),
                    final_config: config.clone(),
                    cnot_order: self.order.clone(),
                    incomplete: false,
                });
            }
            return;
        }
        match schedule[pos] {
            Step::Emit(g) => {
                let gate = self.padded.gates()[g].map_qubits(|w| config.location(w));
                self.buffer.push(gate);
                self.dfs(schedule, pos + 1, config, cost, added_swaps, added_hadamards);
                self.buffer.pop();
            }
            Step::RouteSwap(g) => {
                // Original SWAP gates are routed greedily; they are not a
                // search axis.
                let gate = &self.padded.gates()[g];
                let (a, b) = (gate.qubits()[0], gate.qubits()[1]);
                let Ok(choice) = select_best_edge(config, a, b, self.graph, self.dm) else {
                    return;
                };
                let Ok(plan) = route_mi(
                    config,
                    a,
                    b,
                    (choice.control_dest, choice.target_dest),
                    self.graph,
                    self.dm,
                ) else {
                    return;
                };
                let cost = cost + self.objective.gate_cost(plan.num_swaps(), 0);
                if self.prune(cost) {
                    return;
                }
                let saved = self.buffer.len();
                for &(x, y) in &plan.swaps {
                    self.buffer.push(Gate::swap(x, y));
                }
                self.buffer
                    .push(Gate::swap(choice.control_dest, choice.target_dest));
                self.dfs(
                    schedule,
                    pos + 1,
                    &plan.resulting_config,
                    cost,
                    added_swaps + plan.num_swaps(),
                    added_hadamards,
                );
                self.buffer.truncate(saved);
            }
            Step::RouteCnot(g) => {
                let gate = &self.padded.gates()[g];
                let (c, t) = (gate.control(), gate.target());
                for &(a, b) in self.graph.edges() {
                    for (control_dest, target_dest) in [(a, b), (b, a)] {
                        if !self.charge_node() {
                            return;
                        }
                        let Ok(plan) = route_mi(
                            config,
                            c,
                            t,
                            (control_dest, target_dest),
                            self.graph,
                            self.dm,
                        ) else {
                            continue;
                        };
                        let cost =
                            cost + self.objective.gate_cost(plan.num_swaps(), plan.added_hadamards);
                        if self.prune(cost) {
                            continue;
                        }
                        let saved = self.buffer.len();
                        for &(x, y) in &plan.swaps {
                            self.buffer.push(Gate::swap(x, y));
                        }
                        self.buffer.extend(
                            expand_cnot(self.graph, control_dest, target_dest)
                                .expect("edge taken from the coupling graph"),
                        );
                        self.dfs(
                            schedule,
                            pos + 1,
                            &plan.resulting_config,
                            cost,
                            added_swaps + plan.num_swaps(),
                            added_hadamards + plan.added_hadamards,
                        );
                        self.buffer.truncate(saved);
                        if self.exhausted {
                            return;
                        }
                    }
                }
            }
        }
    }
}

/// Backtracking over three nested choices: the CNOT order (all valid
/// topological orders of the CNOT sub-DAG), the initial placement, and
/// the coupling edge plus orientation for every CNOT. Keeps the best
/// solution under the objective; with no budget caps the result is
/// optimal for the MI-per-CNOT model. Deterministic: ties keep the
/// first solution found in enumeration order.
pub fn compile_exact<T: Scalar>(
    circuit: &Circuit,
    graph: &CouplingGraph<T>,
    initial: &InitialChoice,
    budget: &SearchBudget,
    objective: Objective,
) -> Result<Solution, CompileError> {
    budget.validate()?;
    let padded = check_device(circuit, graph)?;
    let n = graph.num_qubits();
    if let InitialChoice::Fixed(config) = initial {
        if config.num_qubits() != n {
            return Err(CompileError::ConfigSize {
                config: config.num_qubits(),
                device: n,
            });
        }
    }
    let dm = all_pairs_shortest_paths(graph, DistanceMode::Undirected);
    let dag = build_dag(&padded);
    let orders = enumerate_cnot_orders(&dag, budget.max_cnot_orders.unwrap_or(usize::MAX));

    // Reachability is only consulted for non-CNOT gates.
    let reach: Vec<Option<Vec<bool>>> = (0..dag.len())
        .map(|g| (!dag.gate(g).is_cnot()).then(|| dag.reachable_from(g)))
        .collect();

    let mut search = ExactSearch {
        graph,
        dm: &dm,
        padded: &padded,
        objective,
        max_nodes: budget.max_nodes.unwrap_or(u64::MAX),
        deadline: budget.time_limit.map(|limit| Instant::now() + limit),
        nodes: 0,
        exhausted: false,
        buffer: Vec::new(),
        initial: Configuration::identity(n),
        order: Vec::new(),
        best: None,
        best_key: (f64::INFINITY, usize::MAX),
    };

    let config_cap = budget.max_initial_configs.unwrap_or(usize::MAX);
    let mut configs_truncated = false;

    'orders: for order in &orders.orders {
        let schedule = build_schedule(&dag, order, &reach);
        search.order = order.clone();
        match initial {
            InitialChoice::Fixed(config) => {
                search.initial = config.clone();
                search.dfs(&schedule, 0, config, 0.0, 0, 0);
                if search.exhausted {
                    break 'orders;
                }
            }
            InitialChoice::Enumerate => {
                for (index, perm) in placements(n).enumerate() {
                    if index == config_cap {
                        configs_truncated = true;
                        break;
                    }
                    let config =
                        Configuration::from_to_hw(perm).expect("permutation is a bijection");
                    search.initial = config.clone();
                    search.dfs(&schedule, 0, &config, 0.0, 0, 0);
                    if search.exhausted {
                        break 'orders;
                    }
                }
            }
        }
    }

    let incomplete = search.exhausted || orders.truncated || configs_truncated;
    match search.best {
        Some(mut solution) => {
            solution.incomplete = incomplete;
            Ok(solution)
        }
        None if incomplete => Err(CompileError::NoSolution),
        None => Err(CompileError::Route(RouteError::AllUnreachable)),
    }
}

/// Candidate initial placements, lexicographic. Enumeration order is a
/// contract: determinism and tie-breaks depend on it.
fn placements(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..n).permutations(n)
}
