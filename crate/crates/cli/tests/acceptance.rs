//! Acceptance gate for the routing compiler. Each test checks one release
//! criterion and prints a single pass line; a failed assertion marks the
//! criterion failed. Run with `cargo test --test acceptance -- --nocapture`.

use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use itertools::Itertools;
use num_bigint::BigUint;
use qroute::circuit::{metrics, Circuit, Gate, GateKind};
use qroute::coupling::{all_pairs_shortest_paths, expand_cnot, CouplingGraph, DistanceMode};
use qroute::diagram::export_search_diagram;
use qroute::mapping::{route_mi, route_mim, Configuration};
use qroute::search::{
    compile_exact, compile_greedy, search_space_size, InitialChoice, Objective, SearchBudget,
    Solution,
};
use qroute::verify::{semantic_check, simulate, structural_check, StateVector};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

type Graph = CouplingGraph<f64>;

fn key_le(a: (f64, usize), b: (f64, usize)) -> bool {
    a.0 < b.0 || (a.0 == b.0 && a.1 <= b.1)
}

fn key_lt(a: (f64, usize), b: (f64, usize)) -> bool {
    a.0 < b.0 || (a.0 == b.0 && a.1 < b.1)
}

/// Every circuit of exactly `0..=max_cnots` CNOT gates over `q` qubits,
/// enumerated over all ordered operand pairs.
fn cnot_only_circuits(q: usize, max_cnots: usize) -> Vec<Circuit> {
    let pairs: Vec<(usize, usize)> = (0..q)
        .flat_map(|c| (0..q).filter(move |&t| t != c).map(move |t| (c, t)))
        .collect();
    let mut out = vec![Circuit::empty(q)];
    let mut layer: Vec<Vec<(usize, usize)>> = vec![Vec::new()];
    for _ in 0..max_cnots {
        let mut next = Vec::new();
        for prefix in &layer {
            for &pair in &pairs {
                let mut seq = prefix.clone();
                seq.push(pair);
                next.push(seq);
            }
        }
        for seq in &next {
            let gates = seq.iter().map(|&(c, t)| Gate::cnot(c, t)).collect();
            out.push(Circuit::new(q, gates).unwrap());
        }
        layer = next;
    }
    out
}

/// True when gates that touch a common wire keep their program order.
fn order_keeps_wire_sharing(cnots: &[(usize, usize)], order: &[usize]) -> bool {
    let mut pos = vec![0usize; order.len()];
    for (p, &g) in order.iter().enumerate() {
        pos[g] = p;
    }
    for i in 0..cnots.len() {
        for j in (i + 1)..cnots.len() {
            let (c1, t1) = cnots[i];
            let (c2, t2) = cnots[j];
            let share = c1 == c2 || c1 == t2 || t1 == c2 || t1 == t2;
            if share && pos[i] > pos[j] {
                return false;
            }
        }
    }
    true
}

/// Unpruned reference optimiser for CNOT-only circuits: enumerate every
/// placement, every wire-compatible compile order, and every destination
/// edge and orientation per CNOT, then take the best (cost, depth) pair.
fn brute_force_key(circuit: &Circuit, graph: &Graph, objective: Objective) -> Option<(f64, usize)> {
    let n_dev = graph.num_qubits();
    let dm = all_pairs_shortest_paths(graph, DistanceMode::Undirected);
    let cnots: Vec<(usize, usize)> = circuit
        .gates()
        .iter()
        .filter(|g| g.is_cnot())
        .map(|g| (g.control(), g.target()))
        .collect();
    let n = cnots.len();
    let edges = graph.edges();
    let choices = 2 * edges.len();
    let mut best: Option<(f64, usize)> = None;
    for order in (0..n).permutations(n) {
        if !order_keeps_wire_sharing(&cnots, &order) {
            continue;
        }
        for placement in (0..n_dev).permutations(n_dev) {
            let base = Configuration::from_to_hw(placement).unwrap();
            'combo: for combo in 0..choices.pow(n as u32).max(1) {
                let mut code = combo;
                let mut config = base.clone();
                let mut gates: Vec<Gate> = Vec::new();
                let mut swaps = 0usize;
                let mut hadamards = 0usize;
                for &k in &order {
                    let (c, t) = cnots[k];
                    let pick = code % choices;
                    code /= choices;
                    let (a, b) = edges[pick / 2];
                    let (ea, eb) = if pick % 2 == 0 { (a, b) } else { (b, a) };
                    let Ok(plan) = route_mi(&config, c, t, (ea, eb), graph, &dm) else {
                        continue 'combo;
                    };
                    for &(x, y) in &plan.swaps {
                        gates.push(Gate::swap(x, y));
                    }
                    gates.extend(expand_cnot(graph, ea, eb).unwrap());
                    swaps += plan.num_swaps();
                    hadamards += plan.added_hadamards;
                    config = plan.resulting_config;
                }
                let compiled = Circuit::new(n_dev, gates).unwrap();
                let key = (
                    objective.gate_cost(swaps, hadamards),
                    metrics(&compiled, false).depth,
                );
                best = match best {
                    Some(current) if !key_lt(key, current) => Some(current),
                    _ => Some(key),
                };
            }
        }
    }
    best
}

fn random_connected_graph(n: usize, rng: &mut ChaCha8Rng) -> Graph {
    let mut vertices: Vec<usize> = (0..n).collect();
    vertices.shuffle(rng);
    let mut edges = Vec::new();
    for i in 1..n {
        let j = rng.random_range(0..i);
        let (a, b) = (vertices[j], vertices[i]);
        if rng.random_bool(0.5) {
            edges.push((a, b));
        } else {
            edges.push((b, a));
        }
    }
    let extras = rng.random_range(0..=n);
    for _ in 0..extras {
        let a = rng.random_range(0..n);
        let b = rng.random_range(0..n);
        if a == b || edges.contains(&(a, b)) || edges.contains(&(b, a)) {
            continue;
        }
        edges.push((a, b));
    }
    Graph::new(n, edges).unwrap()
}

/// Random circuit of up to `max_cnots` CNOTs with single-qubit gates
/// interleaved. Always contains at least one CNOT.
fn random_mixed_circuit(q: usize, max_cnots: usize, rng: &mut ChaCha8Rng) -> Circuit {
    let singles = [
        GateKind::H,
        GateKind::T,
        GateKind::Tdg,
        GateKind::S,
        GateKind::Sdg,
        GateKind::X,
        GateKind::Z,
    ];
    let mut gates = Vec::new();
    let mut cnots = 0;
    for _ in 0..rng.random_range(1..=3 * max_cnots) {
        if rng.random_bool(0.5) && cnots < max_cnots {
            let c = rng.random_range(0..q);
            let mut t = rng.random_range(0..q);
            while t == c {
                t = rng.random_range(0..q);
            }
            gates.push(Gate::cnot(c, t));
            cnots += 1;
        } else {
            let kind = singles[rng.random_range(0..singles.len())];
            gates.push(Gate::single(kind, rng.random_range(0..q)));
        }
    }
    if cnots == 0 {
        let c = rng.random_range(0..q);
        let t = (c + 1) % q;
        gates.push(Gate::cnot(c, t));
    }
    Circuit::new(q, gates).unwrap()
}

fn unlimited_with_nodes(max_nodes: u64) -> SearchBudget {
    SearchBudget {
        max_initial_configs: None,
        max_cnot_orders: None,
        max_nodes: Some(max_nodes),
        time_limit: None,
    }
}

/// Criterion 1: on a line device, moving one interaction partner distance d
/// costs exactly d swaps, and the move-and-return variant costs 2d swaps
/// and restores the configuration.
#[test]
fn criterion_01_swap_counts_on_lines() {
    for d in 1..=6usize {
        let q = d + 2;
        let graph = Graph::line(q);
        let dm = all_pairs_shortest_paths(&graph, DistanceMode::Undirected);
        let id = Configuration::identity(q);
        let edge = (q - 2, q - 1);

        let mi = route_mi(&id, 0, q - 1, edge, &graph, &dm).unwrap();
        assert_eq!(mi.num_swaps(), d, "MI swap count on {q}-qubit line");
        assert_eq!(mi.added_hadamards, 0);

        let mim = route_mim(&id, 0, q - 1, edge, &graph, &dm).unwrap();
        assert_eq!(mim.num_swaps(), 2 * d, "MIM swap count on {q}-qubit line");
        assert_eq!(
            mim.resulting_config, id,
            "MIM must restore the configuration"
        );
    }
    println!("criterion 01 (MI uses d swaps, MIM uses 2d and restores): pass");
}

/// Criterion 2: moving qubit 0 three vertices along a five-qubit line
/// leaves the wires reading [1, 2, 3, 0, 4].
#[test]
fn criterion_02_line_move_reaches_expected_configuration() {
    let graph = Graph::line(5);
    let dm = all_pairs_shortest_paths(&graph, DistanceMode::Undirected);
    let id = Configuration::identity(5);
    let plan = route_mi(&id, 0, 4, (3, 4), &graph, &dm).unwrap();
    assert_eq!(plan.resulting_config.wire_to_qubit(), &[1, 2, 3, 0, 4]);
    println!("criterion 02 (distance-3 move yields wire order [1,2,3,0,4]): pass");
}

/// Criterion 3: the four-Hadamard direction repair is numerically identical
/// to the opposite-direction CNOT on every basis state.
#[test]
fn criterion_03_direction_repair_matches_ideal_cnot() {
    let graph = Graph::new(2, vec![(1, 0)]).unwrap();
    let recipe = expand_cnot(&graph, 0, 1).unwrap();
    assert_eq!(recipe.len(), 5, "reversed edge must use the 5-gate recipe");
    let repaired = Circuit::new(2, recipe).unwrap();
    let ideal = Circuit::new(2, vec![Gate::cnot(0, 1)]).unwrap();

    let mut max_err: f64 = 0.0;
    for basis in 0..4 {
        let input = StateVector::<f64>::basis(2, basis).unwrap();
        let a = simulate(&repaired, &input).unwrap();
        let b = simulate(&ideal, &input).unwrap();
        for (x, y) in a.amplitudes().iter().zip(b.amplitudes()) {
            max_err = max_err.max((x - y).norm());
        }
    }
    assert!(max_err < 1e-12, "max amplitude error {max_err:e}");
    println!("criterion 03 (Hadamard repair equals reversed CNOT, err {max_err:.2e} < 1e-12): pass");
}

/// Criterion 4: on every 3-qubit circuit with at most two CNOTs, the exact
/// compiler's objective equals an unpruned brute-force enumeration.
#[test]
fn criterion_04_exact_matches_unpruned_brute_force() {
    let started = Instant::now();
    let graph = Graph::line(3);
    let objective = Objective::default();
    let instances = cnot_only_circuits(3, 2);
    assert_eq!(instances.len(), 43);

    for (index, circuit) in instances.iter().enumerate() {
        let expected = brute_force_key(circuit, &graph, objective)
            .unwrap_or_else(|| panic!("instance {index} infeasible under brute force"));
        let solution = compile_exact(
            circuit,
            &graph,
            &InitialChoice::Enumerate,
            &SearchBudget::unlimited(),
            objective,
        )
        .unwrap();
        assert!(!solution.incomplete, "instance {index} must search fully");
        let found = objective.solution_key(&solution);
        assert_eq!(
            found, expected,
            "instance {index}: exact {found:?} vs brute force {expected:?}"
        );
    }

    let elapsed = started.elapsed();
    assert!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
    println!(
        "criterion 04 (exact equals brute force on {} instances in {elapsed:?}): pass",
        instances.len()
    );
}

/// Criterion 5: the exact compiler never produces a worse objective than the
/// greedy compiler, and strictly improves on at least one instance.
#[test]
fn criterion_05_exact_never_loses_to_greedy() {
    let started = Instant::now();
    let objective = Objective::default();
    let mut total = 0usize;
    let mut strict = 0usize;

    let line3 = Graph::line(3);
    for circuit in cnot_only_circuits(3, 3) {
        let greedy = compile_greedy(&circuit, &line3, &Configuration::identity(3)).unwrap();
        let exact = compile_exact(
            &circuit,
            &line3,
            &InitialChoice::Enumerate,
            &SearchBudget::unlimited(),
            objective,
        )
        .unwrap();
        assert!(!exact.incomplete);
        let (gk, ek) = (objective.solution_key(&greedy), objective.solution_key(&exact));
        assert!(key_le(ek, gk), "exact {ek:?} worse than greedy {gk:?}");
        if key_lt(ek, gk) {
            strict += 1;
        }
        total += 1;
    }

    let line4 = Graph::line(4);
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE_0005);
    for _ in 0..200 {
        let circuit = random_mixed_circuit(4, 4, &mut rng);
        let greedy = compile_greedy(&circuit, &line4, &Configuration::identity(4)).unwrap();
        let exact = compile_exact(
            &circuit,
            &line4,
            &InitialChoice::Enumerate,
            &unlimited_with_nodes(2_000_000),
            objective,
        )
        .unwrap();
        assert!(!exact.incomplete, "node cap must cover the full 4-qubit tree");
        let (gk, ek) = (objective.solution_key(&greedy), objective.solution_key(&exact));
        assert!(key_le(ek, gk), "exact {ek:?} worse than greedy {gk:?}");
        if key_lt(ek, gk) {
            strict += 1;
        }
        total += 1;
    }

    assert!(strict >= 1, "expected at least one strict improvement");
    let elapsed = started.elapsed();
    assert!(elapsed < Duration::from_secs(600), "took {elapsed:?}");
    println!(
        "criterion 05 (exact <= greedy on {total} instances, {strict} strictly better, {elapsed:?}): pass"
    );
}

/// Criterion 6: both compilers produce circuits that pass the structural
/// check and simulate to the original unitary within 1e-9 on 200 seeded
/// random instances, budget-truncated exact runs included.
#[test]
fn criterion_06_compiled_circuits_verify_on_random_instances() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE_0006);
    let budget = SearchBudget {
        max_initial_configs: Some(8),
        max_cnot_orders: Some(4),
        max_nodes: Some(20_000),
        time_limit: None,
    };

    let mut checked = 0usize;
    for index in 0..200 {
        let q = rng.random_range(2..=5);
        let graph = random_connected_graph(q, &mut rng);
        let circuit = random_mixed_circuit(q, 8, &mut rng);

        let greedy = compile_greedy(&circuit, &graph, &Configuration::identity(q)).unwrap();
        let exact = compile_exact(
            &circuit,
            &graph,
            &InitialChoice::Enumerate,
            &budget,
            Objective::default(),
        )
        .unwrap();

        for (name, solution) in [("greedy", &greedy), ("exact", &exact)] {
            let structural = structural_check(&solution.compiled, &graph);
            assert!(
                structural.pass,
                "instance {index} {name}: violations {:?}",
                structural.violations
            );
            let semantic = semantic_check::<f64>(
                &circuit,
                &solution.compiled,
                &solution.initial_config,
                &solution.final_config,
            )
            .unwrap();
            assert!(
                semantic.max_amplitude_error < 1e-9,
                "instance {index} {name}: error {:e}",
                semantic.max_amplitude_error
            );
            checked += 1;
        }
    }

    let elapsed = started.elapsed();
    assert!(elapsed < Duration::from_secs(300), "took {elapsed:?}");
    println!(
        "criterion 06 ({checked} compiled circuits verified structurally and semantically, {elapsed:?}): pass"
    );
}

/// Criterion 7: the search-space size formula gives 432 for (q, n, v) =
/// (3, 2, 3) and matches an independent arbitrary-precision product on
/// random triples.
#[test]
fn criterion_07_search_space_size_formula() {
    let started = Instant::now();
    assert_eq!(search_space_size(3, 2, 3), BigUint::from(432u32));

    fn oracle(q: usize, n: usize, v: usize) -> BigUint {
        let mut acc = BigUint::from(2u32) * BigUint::from(n);
        for i in 1..=q {
            acc *= i;
        }
        for _ in 0..n {
            acc *= v;
        }
        for i in 1..=n {
            acc *= i;
        }
        acc
    }

    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE_0007);
    for _ in 0..50 {
        let q = rng.random_range(1..=10);
        let n = rng.random_range(0..=10);
        let v = rng.random_range(1..=10);
        assert_eq!(
            search_space_size(q, n, v),
            oracle(q, n, v),
            "mismatch at (q, n, v) = ({q}, {n}, {v})"
        );
    }

    let elapsed = started.elapsed();
    assert!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    println!("criterion 07 (search-space size 432 at (3,2,3), 50 triples match oracle): pass");
}

/// Criterion 8: the search diagram for a 3-qubit device and a two-CNOT
/// chain contains exactly 18 configuration nodes (3 rings of 3! labels).
#[test]
fn criterion_08_diagram_node_count() {
    let started = Instant::now();
    let circuit = Circuit::new(3, vec![Gate::cnot(0, 1), Gate::cnot(1, 2)]).unwrap();
    let graph = Graph::line(3);
    let dot = export_search_diagram(&circuit, &graph, &[0, 1], 4).unwrap();
    let nodes = dot
        .lines()
        .filter(|line| line.contains("label=\"[") && !line.contains("->"))
        .count();
    assert_eq!(nodes, 18, "configuration node count");
    let elapsed = started.elapsed();
    assert!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    println!("criterion 08 (diagram holds 18 configuration nodes): pass");
}

/// Criterion 9: corrupting a solution, by deleting one inserted gate or by
/// flipping a CNOT's operand pair, is always caught by the structural or
/// the semantic check.
#[test]
fn criterion_09_verification_catches_injected_faults() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE_0009);
    let budget = SearchBudget {
        max_initial_configs: Some(6),
        max_cnot_orders: Some(2),
        max_nodes: Some(10_000),
        time_limit: None,
    };
    // Originals avoid H and SWAP so every such gate in a compiled circuit
    // is compiler-inserted.
    let original_kinds = [GateKind::T, GateKind::S, GateKind::X, GateKind::Z];

    let mut caught = 0usize;
    let mut deletions = 0usize;
    let mut flips = 0usize;
    let mut instance = 0usize;
    while caught < 100 {
        instance += 1;
        let q = rng.random_range(2..=4);
        let graph = Graph::line(q);
        let mut gates = vec![Gate::cnot(rng.random_range(1..q), 0)];
        for _ in 0..rng.random_range(1..=5) {
            if rng.random_bool(0.5) {
                let c = rng.random_range(0..q);
                let mut t = rng.random_range(0..q);
                while t == c {
                    t = rng.random_range(0..q);
                }
                gates.push(Gate::cnot(c, t));
            } else {
                let kind = original_kinds[rng.random_range(0..original_kinds.len())];
                gates.push(Gate::single(kind, rng.random_range(0..q)));
            }
        }
        let circuit = Circuit::new(q, gates).unwrap();

        let solution: Solution = if instance % 2 == 0 {
            compile_greedy(&circuit, &graph, &Configuration::identity(q)).unwrap()
        } else {
            compile_exact(
                &circuit,
                &graph,
                &InitialChoice::Enumerate,
                &budget,
                Objective::default(),
            )
            .unwrap()
        };

        let compiled = solution.compiled.gates().to_vec();
        let inserted: Vec<usize> = compiled
            .iter()
            .enumerate()
            .filter(|(_, g)| matches!(g.kind, GateKind::Swap | GateKind::H))
            .map(|(i, _)| i)
            .collect();
        let cnot_sites: Vec<usize> = solution.compiled.cnot_indices();

        let mut mutated = compiled.clone();
        if !inserted.is_empty() && rng.random_bool(0.5) {
            mutated.remove(inserted[rng.random_range(0..inserted.len())]);
            deletions += 1;
        } else {
            let site = cnot_sites[rng.random_range(0..cnot_sites.len())];
            let gate = &mutated[site];
            mutated[site] = Gate::cnot(gate.target(), gate.control());
            flips += 1;
        }
        let mutant = Circuit::new(q, mutated).unwrap();

        let structural = structural_check(&mutant, &graph);
        let semantic = semantic_check::<f64>(
            &circuit,
            &mutant,
            &solution.initial_config,
            &solution.final_config,
        )
        .unwrap();
        assert!(
            !structural.pass || !semantic.pass,
            "instance {instance}: mutation escaped both checks"
        );
        caught += 1;
    }

    assert_eq!(caught, 100);
    let elapsed = started.elapsed();
    assert!(elapsed < Duration::from_secs(120), "took {elapsed:?}");
    println!(
        "criterion 09 (100/100 faults caught: {deletions} deletions, {flips} operand flips, {elapsed:?}): pass"
    );
}

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
        .to_str()
        .unwrap()
        .to_owned()
}

fn run_cli(args: &[&str]) -> (i32, Vec<u8>) {
    let output = Command::new(env!("CARGO_BIN_EXE_qroute"))
        .args(args)
        .output()
        .expect("binary runs");
    (output.status.code().unwrap_or(-1), output.stdout)
}

/// Run the full command corpus once, returning every observable byte:
/// stdouts plus the solution artifacts written by `--out`.
fn corpus_round(round: usize) -> Vec<(String, Vec<u8>)> {
    let dir = std::env::temp_dir().join(format!(
        "qroute-acceptance-{}-round{round}",
        std::process::id()
    ));
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("solution.json").to_str().unwrap().to_owned();
    let out_qasm = dir.join("solution.qasm");

    let conformant = fixture("conformant.qasm");
    let remote5 = fixture("remote5.qasm");
    let mixed4 = fixture("mixed4.qasm");
    let line3 = fixture("line3.json");
    let line4 = fixture("line4.json");
    let line5 = fixture("line5.json");

    let commands: Vec<(&str, Vec<String>)> = vec![
        (
            "compile greedy conformant",
            vec![
                "compile".into(), "--circuit".into(), conformant.clone(),
                "--coupling".into(), line3.clone(),
            ],
        ),
        (
            "compile exact remote",
            vec![
                "compile".into(), "--circuit".into(), remote5.clone(),
                "--coupling".into(), line5.clone(),
                "--strategy".into(), "exact".into(),
                "--max-nodes".into(), "50000".into(),
            ],
        ),
        (
            "compile greedy mixed",
            vec![
                "compile".into(), "--circuit".into(), mixed4.clone(),
                "--coupling".into(), line4.clone(),
            ],
        ),
        (
            "compile exact with artifacts",
            vec![
                "compile".into(), "--circuit".into(), remote5.clone(),
                "--coupling".into(), line5.clone(),
                "--strategy".into(), "exact".into(),
                "--max-nodes".into(), "50000".into(),
                "--out".into(), out.clone(),
            ],
        ),
        (
            "verify written solution",
            vec![
                "verify".into(), "--circuit".into(), remote5.clone(),
                "--coupling".into(), line5.clone(),
                "--solution".into(), out.clone(),
            ],
        ),
        (
            "stats conformant",
            vec![
                "stats".into(), "--circuit".into(), conformant.clone(),
                "--coupling".into(), line3.clone(),
            ],
        ),
        (
            "stats mixed expanded",
            vec![
                "stats".into(), "--circuit".into(), mixed4.clone(),
                "--coupling".into(), line4.clone(),
                "--expand-swap".into(),
            ],
        ),
        (
            "diagram conformant",
            vec![
                "diagram".into(), "--circuit".into(), conformant.clone(),
                "--coupling".into(), line3.clone(),
            ],
        ),
    ];

    let mut observed = Vec::new();
    for (label, args) in &commands {
        let argv: Vec<&str> = args.iter().map(String::as_str).collect();
        let (code, stdout) = run_cli(&argv);
        assert_eq!(code, 0, "{label} exited {code}");
        observed.push((format!("stdout: {label}"), stdout));
    }
    observed.push((
        "artifact: solution.json".into(),
        std::fs::read(&out).unwrap(),
    ));
    observed.push((
        "artifact: solution.qasm".into(),
        std::fs::read(&out_qasm).unwrap(),
    ));
    observed
}

/// Criterion 10: repeated CLI runs over the same inputs are byte-identical,
/// stdout and written artifacts both.
#[test]
fn criterion_10_cli_runs_are_reproducible() {
    let started = Instant::now();
    let first = corpus_round(1);
    let second = corpus_round(2);
    assert_eq!(first.len(), second.len());
    for ((label, a), (_, b)) in first.iter().zip(&second) {
        assert_eq!(a, b, "{label} differs between runs");
    }
    let elapsed = started.elapsed();
    assert!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
    println!(
        "criterion 10 ({} command outputs byte-identical across runs, {elapsed:?}): pass",
        first.len()
    );
}
