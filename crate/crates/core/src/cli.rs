//! `ucdtqw` command line.
//!
//! Exit status: 0 on success, 1 when a computation or validation fails, 2 for
//! usage errors. Output format follows the `--out` extension unless `--format`
//! is given; without `--out` results go to standard output.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::circuit::{export_qasm, synthesize_complement_circuit};
use crate::complement::{
    build_complement_operator_with_shift, closed_form_distribution, cross_validate,
    run_complement_dense, run_complement_statevector, ComplementResult, ComplementSpec,
    MAX_DENSE_QUBITS, MAX_STATEVECTOR_QUBITS,
};
use crate::error::Error;
use crate::graphs::{complete_adjacency, complete_shift, decompose, verify_kraus, ShiftModel};
use crate::linalg::{unitarity_deviation, ComplexMatrix, DEFAULT_TOL};
use crate::probability::{collapse_multigraph, probability_matrix, DEFAULT_PRUNE_EPSILON};
use crate::sampling::{report, sample};

pub const LOG_ENV: &str = "WALK_LOG";

#[derive(Debug, Parser)]
#[command(name = "ucdtqw", version, about = "Coined quantum walks on complete graphs and the search complement")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Node distribution after one complement step.
    Simulate(SimulateArgs),
    /// Probability matrix of the complement operator as CSV.
    Probmatrix(MatrixArgs),
    /// Collapsed multigraph as Graphviz DOT.
    Collapse(CollapseArgs),
    /// OpenQASM 2.0 for the complement circuit.
    Qasm(QasmArgs),
    /// Shot counts drawn from the complement distribution.
    Sample(SampleArgs),
    /// Cross-validates all computation routes and the shift operators.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct WalkArgs {
    /// Qubits per register; the graph has 2^n nodes.
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub target: usize,
    #[arg(long, default_value_t = 0)]
    pub coin_init: usize,
    #[arg(long, default_value_t = 0)]
    pub pos_init: usize,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Dot,
    Qasm,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Statevector,
    Dense,
    ClosedForm,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModelArg {
    Cnot,
    Swap,
}

impl From<ModelArg> for ShiftModel {
    fn from(m: ModelArg) -> Self {
        match m {
            ModelArg::Cnot => ShiftModel::Cnot,
            ModelArg::Swap => ShiftModel::Swap,
        }
    }
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub walk: WalkArgs,
    #[arg(long, value_enum, default_value_t = MethodArg::Statevector)]
    pub method: MethodArg,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct MatrixArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub target: usize,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub steps: u64,
    #[arg(long, value_enum, default_value_t = ModelArg::Cnot)]
    pub model: ModelArg,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct CollapseArgs {
    #[command(flatten)]
    pub matrix: MatrixArgs,
    /// Arcs lighter than this are dropped.
    #[arg(long, default_value_t = DEFAULT_PRUNE_EPSILON)]
    pub epsilon: f64,
}

#[derive(Debug, Args)]
pub struct QasmArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub target: usize,
    /// Lower the oracle to CNOT and controlled-sqrt(H) gates (n = 2 only).
    #[arg(long)]
    pub decompose: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    #[command(flatten)]
    pub walk: WalkArgs,
    #[arg(long, default_value_t = 8192, value_parser = clap::value_parser!(u64).range(1..))]
    pub shots: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = MethodArg::Statevector)]
    pub method: MethodArg,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 2)]
    pub n_max: usize,
    /// Also check a dense operator CSV for unitarity.
    #[arg(long)]
    pub operator: Option<PathBuf>,
}

enum Failure {
    Usage(String),
    Compute(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Compute(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Compute(e.to_string())
    }
}

type CmdResult = std::result::Result<(), Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

/// Parses `args` (including the program name) and runs the subcommand.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                stdout.write_all(text.as_bytes())
            } else {
                stderr.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let result = match &cli.command {
        Command::Simulate(a) => cmd_simulate(a, stdout),
        Command::Probmatrix(a) => cmd_probmatrix(a, stdout),
        Command::Collapse(a) => cmd_collapse(a, stdout),
        Command::Qasm(a) => cmd_qasm(a, stdout),
        Command::Sample(a) => cmd_sample(a, stdout),
        Command::Verify(a) => cmd_verify(a, stdout),
    };
    match result {
        Ok(()) => 0,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            2
        }
        Err(Failure::Compute(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            1
        }
    }
}

/// Entry point for the binary: process arguments, standard streams, `WALK_LOG`.
pub fn main() -> i32 {
    let _ = env_logger::Builder::from_env(env_logger::Env::new().filter(LOG_ENV)).try_init();
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

fn check_walk(n: usize, target: usize, coin_init: usize, pos_init: usize, max_n: usize) -> CmdResult {
    if !(1..=max_n).contains(&n) {
        return Err(usage(format!("--n must be in 1..={max_n}, got {n}")));
    }
    let nodes = 1usize << n;
    for (flag, v) in [("--target", target), ("--coin-init", coin_init), ("--pos-init", pos_init)] {
        if v >= nodes {
            return Err(usage(format!("{flag} must be < 2^n = {nodes}, got {v}")));
        }
    }
    Ok(())
}

fn resolve_format(output: &OutputArgs, default: Format, allowed: &[Format]) -> std::result::Result<Format, Failure> {
    let inferred = output
        .out
        .as_deref()
        .and_then(Path::extension)
        .and_then(|e| e.to_str())
        .and_then(|e| Format::from_str(e, true).ok());
    let format = output.format.or(inferred).unwrap_or(default);
    if !allowed.contains(&format) {
        return Err(usage(format!("format {format:?} is not available for this command")));
    }
    Ok(format)
}

fn emit(output: &OutputArgs, text: &str, stdout: &mut dyn Write) -> CmdResult {
    match &output.out {
        Some(path) => {
            std::fs::write(path, text)?;
            log::info!("wrote {}", path.display());
        }
        None => stdout.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn complement_result(walk: &WalkArgs, method: MethodArg) -> std::result::Result<ComplementResult, Failure> {
    let max_n = if method == MethodArg::Dense { MAX_DENSE_QUBITS } else { MAX_STATEVECTOR_QUBITS };
    check_walk(walk.n, walk.target, walk.coin_init, walk.pos_init, max_n)?;
    let spec = ComplementSpec::new(walk.n, walk.target, walk.coin_init, walk.pos_init)?;
    Ok(match method {
        MethodArg::Statevector => run_complement_statevector(&spec)?,
        MethodArg::Dense => run_complement_dense(&spec)?,
        MethodArg::ClosedForm => closed_form_distribution(&spec),
    })
}

fn cmd_simulate(a: &SimulateArgs, stdout: &mut dyn Write) -> CmdResult {
    resolve_format(&a.output, Format::Json, &[Format::Json])?;
    let result = complement_result(&a.walk, a.method)?;
    let mut json = serde_json::to_string_pretty(&result.to_json()).map_err(Error::from)?;
    json.push('\n');
    emit(&a.output, &json, stdout)?;
    if a.output.out.is_some() {
        let low = result.suppressed_probability();
        let high = result.other_probability();
        writeln!(
            stdout,
            "suppressed node {}: p = {low}; other nodes: p = {high}; ratio = {}",
            result.suppressed_node,
            high / low
        )?;
    }
    Ok(())
}

fn check_matrix_args(a: &MatrixArgs) -> CmdResult {
    check_walk(a.n, a.target, 0, 0, MAX_STATEVECTOR_QUBITS)?;
    if a.n > MAX_DENSE_QUBITS {
        return Err(Failure::Compute(format!(
            "n = {} exceeds the dense-operator limit of {MAX_DENSE_QUBITS}",
            a.n
        )));
    }
    Ok(())
}

fn sidecar_path(csv: &Path) -> PathBuf {
    csv.with_extension("meta.json")
}

fn cmd_probmatrix(a: &MatrixArgs, stdout: &mut dyn Write) -> CmdResult {
    let format = resolve_format(&a.output, Format::Csv, &[Format::Csv, Format::Json])?;
    check_matrix_args(a)?;
    let u = build_complement_operator_with_shift(a.n, a.target, a.model.into())?;
    let mp = probability_matrix(&u, a.steps as usize)?;
    match format {
        Format::Csv => {
            emit(&a.output, &mp.to_csv(), stdout)?;
            if let Some(path) = &a.output.out {
                let meta = serde_json::to_string_pretty(&mp.sidecar()).map_err(Error::from)?;
                std::fs::write(sidecar_path(path), meta + "\n")?;
            }
        }
        _ => {
            let rows: Vec<Vec<f64>> = (0..mp.n_nodes())
                .map(|r| (0..mp.n_cols()).map(|c| mp.get(r, c)).collect())
                .collect();
            let v = serde_json::json!({ "matrix": rows, "layout": mp.sidecar() });
            let text = serde_json::to_string_pretty(&v).map_err(Error::from)? + "\n";
            emit(&a.output, &text, stdout)?;
        }
    }
    Ok(())
}

fn cmd_collapse(a: &CollapseArgs, stdout: &mut dyn Write) -> CmdResult {
    let m = &a.matrix;
    let format = resolve_format(&m.output, Format::Dot, &[Format::Dot, Format::Json])?;
    check_matrix_args(m)?;
    if a.epsilon.is_nan() || a.epsilon < 0.0 {
        return Err(usage("--epsilon must be non-negative"));
    }
    let u = build_complement_operator_with_shift(m.n, m.target, m.model.into())?;
    let graph = collapse_multigraph(&u, m.steps as usize, a.epsilon)?;
    let text = match format {
        Format::Dot => graph.to_dot(),
        _ => serde_json::to_string_pretty(&graph).map_err(Error::from)? + "\n",
    };
    emit(&m.output, &text, stdout)
}

fn cmd_qasm(a: &QasmArgs, stdout: &mut dyn Write) -> CmdResult {
    let format = resolve_format(&a.output, Format::Qasm, &[Format::Qasm, Format::Json])?;
    check_walk(a.n, a.target, 0, 0, crate::circuit::MAX_UNITARY_QUBITS)?;
    let circuit = synthesize_complement_circuit(a.n, a.target, a.decompose)?;
    let text = match format {
        Format::Qasm => export_qasm(&circuit)?,
        _ => serde_json::to_string_pretty(&circuit.to_json()).map_err(Error::from)? + "\n",
    };
    emit(&a.output, &text, stdout)
}

fn cmd_sample(a: &SampleArgs, stdout: &mut dyn Write) -> CmdResult {
    resolve_format(&a.output, Format::Json, &[Format::Json])?;
    let result = complement_result(&a.walk, a.method)?;
    let counts = sample(&result.distribution, a.shots, a.seed)?;
    let rep = report(&counts, &result.distribution)?;
    let text = serde_json::to_string_pretty(&rep).map_err(Error::from)? + "\n";
    emit(&a.output, &text, stdout)?;
    if a.output.out.is_some() {
        writeln!(stdout, "l1 vs theory = {}", rep.l1_vs_theory)?;
    }
    Ok(())
}

fn cmd_verify(a: &VerifyArgs, stdout: &mut dyn Write) -> CmdResult {
    if !(1..=MAX_DENSE_QUBITS).contains(&a.n_max) {
        return Err(usage(format!("--n-max must be in 1..={MAX_DENSE_QUBITS}")));
    }
    let report = cross_validate(a.n_max)?;
    writeln!(
        stdout,
        "cross-validation: {} cases up to n = {}, max deviation {:e}",
        report.cases, report.n_max, report.max_deviation
    )?;
    for n in 1..=a.n_max {
        let adj = complete_adjacency(n)?;
        for model in [ShiftModel::Cnot, ShiftModel::Swap] {
            let s = complete_shift(n, model)?;
            if !verify_kraus(&s, DEFAULT_TOL) {
                return Err(Failure::Compute(format!("{model} shift for n = {n} violates the Kraus conditions")));
            }
            if decompose(&adj, model)?.block_sum() != adj {
                return Err(Failure::Compute(format!("{model} blocks for n = {n} do not sum to the adjacency")));
            }
        }
    }
    writeln!(stdout, "shift operators: cnot and swap valid up to n = {}", a.n_max)?;
    if let Some(path) = &a.operator {
        let text = std::fs::read_to_string(path)?;
        let m = ComplexMatrix::from_csv(&text)?;
        if !m.is_square() {
            return Err(Failure::Compute(format!("{} is not a square matrix", path.display())));
        }
        let dev = unitarity_deviation(&m)?;
        if dev > DEFAULT_TOL {
            return Err(Error::NotUnitary { deviation: dev }.into());
        }
        writeln!(stdout, "{}: unitary (deviation {dev:e})", path.display())?;
    }
    Ok(())
}
