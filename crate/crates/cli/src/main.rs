use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use weyrkit_cli::{
    cmd_basis, cmd_centralizer, cmd_compare, cmd_form, cmd_invariants, cmd_kernel_dims, cmd_structure, CliError,
    Coords, Options, Report,
};

/// Exact Weyr structures and kernels of powers of the Sylvester operator
/// X ↦ AX − XB.
///
/// Matrices are JSON files {"rows": m, "cols": n, "entries": [["1", "2/3"], …]}.
#[derive(Parser)]
#[command(name = "weyrkit", version)]
struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Cross-check closed forms against brute-force nullities.
    #[arg(long, global = true)]
    oracle: bool,
    /// Declared eigen-structure file for the next matrix operand; repeat once
    /// per operand in order, using "-" to compute that operand's structure.
    #[arg(long, global = true, value_name = "PATH")]
    declared: Vec<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Eigenvalues, nullity chains and Weyr characteristics of a matrix.
    Structure { matrix: PathBuf },
    /// Weyr canonical form with the similarity transform.
    Form { matrix: PathBuf },
    /// dim ker φ^k for k = 1..K, per eigenvalue pair and in total.
    KernelDims {
        a: PathBuf,
        b: PathBuf,
        /// Largest power (default: the index of 0 as an operator eigenvalue).
        #[arg(long)]
        k: Option<usize>,
    },
    /// Explicit basis of ker φ^k, checked against the operator.
    Basis {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, value_enum, default_value_t = CoordsArg::Weyr)]
        coords: CoordsArg,
    },
    /// Complete similarity invariant of φ: eigenvalue ↦ Weyr characteristic.
    Invariants { a: PathBuf, b: PathBuf },
    /// Decide whether φ_AB and φ_CD are similar.
    Compare {
        a: PathBuf,
        b: PathBuf,
        c: PathBuf,
        d: PathBuf,
    },
    /// Dimension of the centralizer of a matrix.
    Centralizer { matrix: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum CoordsArg {
    Weyr,
    Original,
}

fn emit<R: Report>(report: Result<R, CliError>, json: bool) -> Result<i32, CliError> {
    let report = report?;
    let text = if json {
        format!("{}\n", serde_json::to_string_pretty(&report).expect("reports serialize"))
    } else {
        report.to_string()
    };
    let mut out = std::io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|()| out.flush()) {
        // a closed pipe (e.g. `| head`) is not an error
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
            Err(CliError::Internal(format!("writing output: {e}")))
        }
        _ => Ok(report.exit_code()),
    }
}

fn run(cli: Cli) -> Result<i32, CliError> {
    let opts = Options {
        oracle: cli.oracle,
        declared: cli
            .declared
            .iter()
            .map(|p| (p != "-").then(|| PathBuf::from(p)))
            .collect(),
    };
    let json = cli.json;
    match cli.command {
        Command::Structure { matrix } => emit(cmd_structure(&opts, &matrix), json),
        Command::Form { matrix } => emit(cmd_form(&opts, &matrix), json),
        Command::KernelDims { a, b, k } => emit(cmd_kernel_dims(&opts, &a, &b, k), json),
        Command::Basis { a, b, k, coords } => {
            let coords = match coords {
                CoordsArg::Weyr => Coords::Weyr,
                CoordsArg::Original => Coords::Original,
            };
            emit(cmd_basis(&opts, &a, &b, k, coords), json)
        }
        Command::Invariants { a, b } => emit(cmd_invariants(&opts, &a, &b), json),
        Command::Compare { a, b, c, d } => emit(cmd_compare(&opts, &a, &b, &c, &d), json),
        Command::Centralizer { matrix } => emit(cmd_centralizer(&opts, &matrix), json),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("weyrkit: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
