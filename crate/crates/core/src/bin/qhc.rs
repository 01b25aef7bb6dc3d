//! `qhc` command-line front end.
//!
//! Every subcommand prints one JSON document on stdout. Diagnostics go to
//! stderr. Exit codes: 0 success, 1 verification (or synthesis) failure,
//! 2 input error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use qhc::gates::{cross_validate, GateLabel};
use qhc::io::{emit_matrix, parse_truth_table, resource_report, MatrixDocument, MatrixFormat};
use qhc::sim::{evaluate_continuous_with, DEFAULT_DECODE_TOLERANCE};
use qhc::synth::{full_adder_table, half_adder_table, synthesize, verify, QhcGate, TruthTable};
use qhc::Error;

#[derive(Parser)]
#[command(
    name = "qhc",
    version,
    about = "Synthesize and check Quantum Hamiltonian Computing gates"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Synthesize a gate from a truth-table file and verify it against the table.
    Synth {
        #[arg(long)]
        table: PathBuf,
        /// Write the Hermitian generator H to this file.
        #[arg(long)]
        emit_h: Option<PathBuf>,
        /// Include U(SUM) in the output.
        #[arg(long, value_name = "SUM", allow_negative_numbers = true)]
        emit_u: Option<f64>,
        /// Format for emitted matrices.
        #[arg(long, default_value = "json")]
        emit: MatrixFormat,
        #[arg(long, default_value_t = 1e-9)]
        tolerance: f64,
    },
    /// Evaluate a gate on (possibly real-valued) inputs from |0...0>.
    Simulate {
        /// half-adder, full-adder, or a truth-table file.
        #[arg(long)]
        gate: String,
        /// Comma-separated inputs, e.g. 1,0,1 or 0.5,0.5.
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        inputs: Vec<f64>,
        #[arg(long, default_value_t = DEFAULT_DECODE_TOLERANCE)]
        tolerance: f64,
    },
    /// Cross-check a built-in gate's closed form against its synthesized exponential.
    Verify {
        #[arg(long)]
        gate: GateLabel,
        #[arg(long, default_value_t = 101)]
        grid: usize,
        #[arg(long, default_value_t = 1e-9)]
        tolerance: f64,
    },
    /// Qubit and gate counts for the QHC gate and known baselines.
    Report {
        #[arg(long)]
        table: PathBuf,
    },
}

/// Failure that maps onto an exit code.
enum Failure {
    Input(String),
    Negative(Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Outcome = Result<(Value, bool), Failure>;

fn load_table(path: &Path) -> Result<TruthTable, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
    parse_truth_table(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn matrix_value(m: &qhc::ComplexMatrix) -> Value {
    serde_json::to_value(MatrixDocument::from(m)).expect("finite matrix")
}

fn gate_summary(gate: &QhcGate) -> Value {
    json!({
        "input_count": gate.input_count(),
        "output_qubits": gate.output_qubits(),
        "cycle_length": gate.cycle().len(),
        "orbit": gate.cycle().orbit(),
        "eigenangles": gate.spectrum().eigenangles(),
    })
}

fn run_synth(
    table: &Path,
    emit_h: Option<&Path>,
    emit_u: Option<f64>,
    format: MatrixFormat,
    tolerance: f64,
) -> Outcome {
    let table = load_table(table)?;
    let gate = match synthesize(&table) {
        Ok(gate) => gate,
        Err(
            e @ (Error::NotSymmetric { .. }
            | Error::InitialStateMismatch { .. }
            | Error::NonEmbeddable(_)),
        ) => {
            eprintln!("qhc: table is not synthesizable: {e}");
            return Err(Failure::Negative(json!({
                "synthesizable": false,
                "reason": e.to_string(),
            })));
        }
        Err(e) => return Err(e.into()),
    };
    let report = verify(&gate, &table, tolerance)?;

    let mut out = json!({
        "synthesizable": true,
        "gate": gate_summary(&gate),
        "verification": report,
    });
    if let Some(path) = emit_h {
        fs::write(path, emit_matrix(&gate.generator(), format))
            .map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display())))?;
        out["h_file"] = json!(path.display().to_string());
    }
    if let Some(sum) = emit_u {
        let u = gate.unitary(sum)?;
        out["u"] = match format {
            MatrixFormat::Json => json!({ "sum": sum, "matrix": matrix_value(&u) }),
            MatrixFormat::Csv => json!({ "sum": sum, "csv": emit_matrix(&u, MatrixFormat::Csv) }),
        };
    }
    Ok((out, report.pass))
}

fn run_simulate(gate: &str, inputs: &[f64], tolerance: f64) -> Outcome {
    let (name, qhc_gate) = match gate.parse::<GateLabel>() {
        Ok(GateLabel::HalfAdder) => (gate.to_owned(), synthesize(&half_adder_table())?),
        Ok(GateLabel::FullAdder) => (gate.to_owned(), synthesize(&full_adder_table())?),
        Err(_) => {
            let table = load_table(Path::new(gate))?;
            (gate.to_owned(), synthesize(&table)?)
        }
    };
    let outcome = evaluate_continuous_with(&qhc_gate, inputs, tolerance)?;
    Ok((
        json!({
            "gate": name,
            "inputs": inputs,
            "sum": inputs.iter().sum::<f64>(),
            "outcome": outcome,
        }),
        true,
    ))
}

fn run_verify(label: GateLabel, grid: usize, tolerance: f64) -> Outcome {
    let cross = cross_validate(label, grid)?;
    let table = match label {
        GateLabel::HalfAdder => half_adder_table(),
        GateLabel::FullAdder => full_adder_table(),
    };
    let report = verify(&synthesize(&table)?, &table, tolerance)?;
    let max_deviation = cross.max(report.max_deviation);
    let pass = report.pass && cross <= tolerance;
    Ok((
        json!({
            "gate": label,
            "grid": grid,
            "tolerance": tolerance,
            "cross_validation_max_deviation": cross,
            "truth_table": report,
            "max_deviation": max_deviation,
            "pass": pass,
        }),
        pass,
    ))
}

fn run_report(table: &Path) -> Outcome {
    let table = load_table(table)?;
    Ok((json!(resource_report(&table)), true))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };

    let result = match &cli.command {
        Command::Synth {
            table,
            emit_h,
            emit_u,
            emit,
            tolerance,
        } => run_synth(table, emit_h.as_deref(), *emit_u, *emit, *tolerance),
        Command::Simulate {
            gate,
            inputs,
            tolerance,
        } => run_simulate(gate, inputs, *tolerance),
        Command::Verify {
            gate,
            grid,
            tolerance,
        } => run_verify(*gate, *grid, *tolerance),
        Command::Report { table } => run_report(table),
    };

    match result {
        Ok((value, pass)) => {
            println!("{value}");
            if pass {
                ExitCode::SUCCESS
            } else {
                eprintln!("qhc: verification failed");
                ExitCode::from(1)
            }
        }
        Err(Failure::Negative(value)) => {
            println!("{value}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("qhc: error: {msg}");
            ExitCode::from(2)
        }
    }
}
