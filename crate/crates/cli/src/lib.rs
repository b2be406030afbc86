//! Batch front end: `compile`, `verify`, `stats`, `diagram`.
//!
//! Every command reads files named on the command line, writes its
//! artifacts to `--out` (or stdout) and exits with a stable code so
//! benchmark scripts can dispatch on outcomes:
//!
//! * 0: success
//! * 1: unreadable or unparsable input, invalid flags
//! * 2: routing infeasible on the given device
//! * 3: verification failure
//! * 4: search budget exhausted (`--strict`, or no solution at all)

use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use qroute::circuit::{metrics, Circuit, GateCounts};
use qroute::coupling::parse_coupling;
use qroute::diagram::export_search_diagram;
use qroute::mapping::Configuration;
use qroute::qasm::parse_qasm;
use qroute::search::{
    compile_exact, compile_greedy, search_space_size, CompileError, InitialChoice, Objective,
    SearchBudget, SolutionReport,
};
use qroute::verify::{semantic_check, structural_check, VerificationReport};
use qroute::CouplingGraph;

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 1;
pub const EXIT_ROUTING: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;
pub const EXIT_BUDGET: i32 = 4;

#[derive(Parser, Debug)]
#[command(
    name = "qroute",
    version,
    about = "Compile quantum circuits onto coupling-constrained devices"
)]
pub struct RunConfig {
    /// Seed reserved for randomized fixture generation; the normal
    /// commands are deterministic and do not consume it.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Compile a circuit onto a device coupling graph
    Compile(CompileArgs),
    /// Check a compiled solution against the original circuit
    Verify(VerifyArgs),
    /// Print instance metrics and the exact-search space size
    Stats(StatsArgs),
    /// Export the exact-search configuration diagram as DOT
    Diagram(DiagramArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Strategy {
    /// Single pass, cheapest edge per two-qubit gate
    Greedy,
    /// Backtracking over placements, CNOT orders and edge choices
    Exact,
}

/// Starting placement: `identity`, `enumerate`, or a comma-separated
/// qubit-to-vertex permutation such as `2,0,1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InitialSpec {
    Identity,
    Enumerate,
    Explicit(Vec<usize>),
}

impl FromStr for InitialSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "identity" => Ok(InitialSpec::Identity),
            "enumerate" => Ok(InitialSpec::Enumerate),
            other => other
                .split(',')
                .map(|token| token.trim().parse::<usize>())
                .collect::<Result<Vec<usize>, _>>()
                .map(InitialSpec::Explicit)
                .map_err(|_| {
                    "expected 'identity', 'enumerate', or a comma-separated permutation".to_string()
                }),
        }
    }
}

#[derive(Args, Debug)]
pub struct CompileArgs {
    /// OpenQASM 2.0 circuit file
    #[arg(long)]
    pub circuit: PathBuf,
    /// Coupling graph JSON file
    #[arg(long)]
    pub coupling: PathBuf,
    #[arg(long, value_enum, default_value_t = Strategy::Greedy)]
    pub strategy: Strategy,
    /// Starting placement (default: identity for greedy, enumerate for exact)
    #[arg(long)]
    pub initial: Option<InitialSpec>,
    /// Cap on initial placements explored (exact strategy)
    #[arg(long = "max-configs")]
    pub max_configs: Option<usize>,
    /// Cap on CNOT orders explored (exact strategy)
    #[arg(long = "max-orders")]
    pub max_orders: Option<usize>,
    /// Cap on per-CNOT routing attempts explored (exact strategy)
    #[arg(long = "max-nodes")]
    pub max_nodes: Option<u64>,
    /// Wall-clock cap in seconds (exact strategy)
    #[arg(long = "time-limit")]
    pub time_limit: Option<f64>,
    /// Cost of one inserted SWAP relative to one Hadamard
    #[arg(long = "swap-weight", default_value_t = 3.0)]
    pub swap_weight: f64,
    /// Write the solution JSON here and the compiled QASM alongside
    /// (same path with a .qasm extension); default prints JSON to stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Exit 4 when any budget axis was cut short
    #[arg(long)]
    pub strict: bool,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Original OpenQASM 2.0 circuit file
    #[arg(long)]
    pub circuit: PathBuf,
    /// Coupling graph JSON file
    #[arg(long)]
    pub coupling: PathBuf,
    /// Solution JSON produced by `compile`
    #[arg(long)]
    pub solution: PathBuf,
    /// Write the verification report here; default prints to stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct StatsArgs {
    /// OpenQASM 2.0 circuit file
    #[arg(long)]
    pub circuit: PathBuf,
    /// Coupling graph JSON file
    #[arg(long)]
    pub coupling: PathBuf,
    /// Count each SWAP as its three-CNOT decomposition
    #[arg(long = "expand-swap")]
    pub expand_swap: bool,
}

#[derive(Args, Debug)]
pub struct DiagramArgs {
    /// OpenQASM 2.0 circuit file
    #[arg(long)]
    pub circuit: PathBuf,
    /// Coupling graph JSON file
    #[arg(long)]
    pub coupling: PathBuf,
    /// CNOT order as original gate indices (default: program order)
    #[arg(long, value_delimiter = ',')]
    pub order: Option<Vec<usize>>,
    /// Refuse diagrams wider than this many qubits (rings hold q! nodes)
    #[arg(long = "q-limit", default_value_t = 4)]
    pub q_limit: usize,
    /// Write the DOT document here; default prints to stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
}

struct Failure {
    code: i32,
    message: String,
}

fn parse_failure(message: impl ToString) -> Failure {
    Failure {
        code: EXIT_PARSE,
        message: message.to_string(),
    }
}

fn compile_failure(err: CompileError) -> Failure {
    let code = match &err {
        CompileError::Route(_) | CompileError::DeviceTooSmall { .. } => EXIT_ROUTING,
        CompileError::NoSolution => EXIT_BUDGET,
        CompileError::ConfigSize { .. } | CompileError::InvalidBudget => EXIT_PARSE,
    };
    Failure {
        code,
        message: err.to_string(),
    }
}

pub fn run(config: RunConfig) -> i32 {
    let result = match config.command {
        Command::Compile(args) => run_compile(args),
        Command::Verify(args) => run_verify(args),
        Command::Stats(args) => run_stats(args),
        Command::Diagram(args) => run_diagram(args),
    };
    match result {
        Ok(code) => code,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            failure.code
        }
    }
}

fn run_compile(args: CompileArgs) -> Result<i32, Failure> {
    if !(args.swap_weight.is_finite() && args.swap_weight > 0.0) {
        return Err(parse_failure("swap weight must be a positive finite number"));
    }
    let time_limit = match args.time_limit {
        Some(secs) if secs.is_finite() && secs > 0.0 => Some(Duration::from_secs_f64(secs)),
        Some(_) => {
            return Err(parse_failure(
                "time limit must be a positive finite number of seconds",
            ))
        }
        None => None,
    };
    let circuit = load_circuit(&args.circuit)?;
    let graph = load_graph(&args.coupling)?;
    let budget = SearchBudget {
        max_initial_configs: args.max_configs,
        max_cnot_orders: args.max_orders,
        max_nodes: args.max_nodes,
        time_limit,
    };
    let objective = Objective {
        swap_weight: args.swap_weight,
    };
    let n = graph.num_qubits();
    let solution = match args.strategy {
        Strategy::Greedy => {
            let initial = match args.initial.clone().unwrap_or(InitialSpec::Identity) {
                InitialSpec::Identity => Configuration::identity(n),
                InitialSpec::Explicit(perm) => explicit_config(perm, n)?,
                InitialSpec::Enumerate => {
                    return Err(parse_failure(
                        "the greedy strategy needs a concrete --initial \
                         (identity or a permutation)",
                    ));
                }
            };
            compile_greedy(&circuit, &graph, &initial).map_err(compile_failure)?
        }
        Strategy::Exact => {
            let initial = match args.initial.clone().unwrap_or(InitialSpec::Enumerate) {
                InitialSpec::Enumerate => InitialChoice::Enumerate,
                InitialSpec::Identity => InitialChoice::Fixed(Configuration::identity(n)),
                InitialSpec::Explicit(perm) => InitialChoice::Fixed(explicit_config(perm, n)?),
            };
            compile_exact(&circuit, &graph, &initial, &budget, objective)
                .map_err(compile_failure)?
        }
    };
    let report = solution.report();
    let json = to_pretty_json(&report);
    match &args.out {
        Some(path) => {
            let qasm_path = path.with_extension("qasm");
            if qasm_path == *path {
                return Err(parse_failure(
                    "--out must not end in .qasm; the compiled QASM is written alongside",
                ));
            }
            write_file(path, &json)?;
            write_file(&qasm_path, &report.compiled_qasm)?;
        }
        None => print!("{json}"),
    }
    if args.strict && solution.incomplete {
        eprintln!("error: search budget exhausted before the space was covered");
        return Ok(EXIT_BUDGET);
    }
    Ok(EXIT_OK)
}

fn run_verify(args: VerifyArgs) -> Result<i32, Failure> {
    let original = load_circuit(&args.circuit)?;
    let graph = load_graph(&args.coupling)?;
    let text = read_file(&args.solution)?;
    let report: SolutionReport = serde_json::from_str(&text)
        .map_err(|err| parse_failure(format!("{}: {err}", args.solution.display())))?;
    let compiled = report
        .compiled_circuit()
        .map_err(|err| parse_failure(format!("{}: {err}", args.solution.display())))?;
    let structural = structural_check(&compiled, &graph);
    let semantic = semantic_check::<f64>(
        &original,
        &compiled,
        &report.initial_config,
        &report.final_config,
    )
    .map_err(parse_failure)?;
    let verification = VerificationReport {
        structural,
        semantic,
    };
    let json = to_pretty_json(&verification);
    match &args.out {
        Some(path) => write_file(path, &json)?,
        None => print!("{json}"),
    }
    Ok(if verification.pass() {
        EXIT_OK
    } else {
        EXIT_VERIFY
    })
}

#[derive(Serialize)]
struct StatsReport {
    circuit_qubits: usize,
    device_qubits: usize,
    counts: GateCounts,
    total_gates: usize,
    depth: usize,
    cnots: usize,
    /// Decimal string: the value overflows machine integers quickly.
    search_space_size: String,
}

fn run_stats(args: StatsArgs) -> Result<i32, Failure> {
    let circuit = load_circuit(&args.circuit)?;
    let graph = load_graph(&args.coupling)?;
    let m = metrics(&circuit, args.expand_swap);
    let q = circuit.num_qubits();
    let v = graph.num_qubits();
    let n = circuit.num_cnots();
    let size = if q >= 1 && v >= 1 {
        search_space_size(q, n, v).to_string()
    } else {
        "0".to_string()
    };
    let report = StatsReport {
        circuit_qubits: q,
        device_qubits: v,
        counts: m.counts,
        total_gates: m.total,
        depth: m.depth,
        cnots: n,
        search_space_size: size,
    };
    print!("{}", to_pretty_json(&report));
    Ok(EXIT_OK)
}

fn run_diagram(args: DiagramArgs) -> Result<i32, Failure> {
    let circuit = load_circuit(&args.circuit)?;
    let graph = load_graph(&args.coupling)?;
    let order = args.order.unwrap_or_else(|| circuit.cnot_indices());
    let dot = export_search_diagram(&circuit, &graph, &order, args.q_limit)
        .map_err(parse_failure)?;
    match &args.out {
        Some(path) => write_file(path, &dot)?,
        None => print!("{dot}"),
    }
    Ok(EXIT_OK)
}

fn explicit_config(perm: Vec<usize>, device: usize) -> Result<Configuration, Failure> {
    if perm.len() != device {
        return Err(parse_failure(format!(
            "--initial lists {} entries but the device has {} vertices",
            perm.len(),
            device
        )));
    }
    Configuration::from_to_hw(perm).map_err(parse_failure)
}

fn read_file(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|err| parse_failure(format!("{}: {err}", path.display())))
}

fn write_file(path: &Path, content: &str) -> Result<(), Failure> {
    std::fs::write(path, content)
        .map_err(|err| parse_failure(format!("{}: {err}", path.display())))
}

fn load_circuit(path: &Path) -> Result<Circuit, Failure> {
    let parsed = parse_qasm(&read_file(path)?)
        .map_err(|err| parse_failure(format!("{}: {err}", path.display())))?;
    for warning in &parsed.warnings {
        eprintln!("warning: {}: {}", path.display(), warning.message);
    }
    Ok(parsed.circuit)
}

fn load_graph(path: &Path) -> Result<CouplingGraph, Failure> {
    parse_coupling(&read_file(path)?)
        .map_err(|err| parse_failure(format!("{}: {err}", path.display())))
}

fn to_pretty_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("reports serialize");
    text.push('\n');
    text
}
