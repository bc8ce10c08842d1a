//! `pickcara`: check, solve, generate and verify matrix Caratheodory interpolation
//! problems stored as JSON.
//!
//! Exit codes: 0 success, 1 input or usage error, 2 infeasible data, 3 verification failure.

mod commands;
mod points;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::points::{parse_point, parse_real};

#[derive(Parser, Debug)]
#[command(name = "pickcara", version, about = "Matrix Nevanlinna-Pick interpolation in the Caratheodory class")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Feasibility, rank and determinacy report for a problem file.
    Check(CheckArgs),
    /// Evaluate a solution at the nodes and at requested points.
    Solve(SolveArgs),
    /// Write a problem file from a measure and print the reference values.
    Generate(GenerateArgs),
    /// Check interpolation residuals and positivity of a solution.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    pub problem: PathBuf,
    /// Absolute PSD slack, replacing `1e-10 * (1 + max |p_jl|)`.
    #[arg(long, value_parser = parse_real)]
    pub psd_tol: Option<f64>,
    /// Eigenvalue cutoff relative to the largest Pick eigenvalue.
    #[arg(long, value_parser = parse_real)]
    pub rank_tol: Option<f64>,
    /// Include the Gram coordinate vectors in the report.
    #[arg(long)]
    pub dump_model: bool,
}

#[derive(Args, Debug)]
pub struct SolveArgs {
    pub problem: PathBuf,
    /// Parameter file; the zero parameter when omitted.
    #[arg(long)]
    pub param: Option<PathBuf>,
    /// Number of points on a deterministic spiral covering `|z| <= 0.9`.
    #[arg(long, conflicts_with = "at")]
    pub grid: Option<usize>,
    /// Evaluation points as `re,im`.
    #[arg(long, num_args = 1.., value_parser = parse_point)]
    pub at: Vec<[f64; 2]>,
}

#[derive(Args, Debug)]
pub struct GenerateArgs {
    /// Measure file.
    #[arg(long, required_unless_present = "random", conflicts_with = "random")]
    pub measure: Option<PathBuf>,
    /// Seeded random measure: matrix size, atom count, seed.
    #[arg(long, num_args = 3, value_names = ["N", "ATOMS", "SEED"])]
    pub random: Option<Vec<u64>>,
    /// Interpolation nodes as `re,im`.
    #[arg(long, num_args = 1.., required = true, value_parser = parse_point)]
    pub nodes: Vec<[f64; 2]>,
    /// Output problem file.
    #[arg(short, long)]
    pub out: PathBuf,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    pub problem: PathBuf,
    #[arg(long)]
    pub param: Option<PathBuf>,
    /// Number of random disk points for the positivity check.
    #[arg(long, default_value_t = 200)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse_from(points::protect_negative_values(std::env::args_os())) {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests are not errors.
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match &cli.command {
        Command::Check(a) => commands::check(a),
        Command::Solve(a) => commands::solve(a),
        Command::Generate(a) => commands::generate(a),
        Command::Verify(a) => commands::verify(a),
    };
    match result {
        Ok(outcome) => {
            // A closed pipe downstream is not worth a panic.
            let _ = writeln!(std::io::stdout().lock(), "{}", outcome.stdout);
            ExitCode::from(outcome.code)
        }
        Err(e) => {
            eprintln!("pickcara: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
