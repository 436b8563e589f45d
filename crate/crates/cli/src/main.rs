//! `minusord`: order decisions, generalized inverses, preserver analysis and
//! the finite-ring oracle, driven by plain-text matrix files.
//!
//! Exit status is 0 when the relation holds or the operation succeeds, 1 when
//! it fails or is refuted, and 2 on usage or input errors. Timing goes to
//! stderr so that reports are reproducible byte for byte.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use minusord::field::DEFAULT_TOLERANCE;
use minusord::preservers::DEFAULT_TRIALS;

use crate::report::RunReport;

#[derive(Parser, Debug)]
#[command(name = "minusord", version, about = "Generalized inverses and the minus partial order")]
struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Relative tolerance for complex inputs.
    #[arg(long, global = true, default_value_t = DEFAULT_TOLERANCE)]
    tol: f64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide a relation between two square matrices.
    Order {
        #[command(subcommand)]
        action: OrderAction,
    },
    /// Construct generalized inverses.
    Geninv {
        kind: InverseKind,
        matrix: PathBuf,
    },
    /// Inverse of c1·A + c2·B for A below an invertible B.
    ComboInverse {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        c1: String,
        #[arg(long, allow_hyphen_values = true)]
        c2: String,
    },
    /// A rank-one matrix below A in the minus order.
    MinimalBelow { matrix: PathBuf },
    /// Whether A is maximal in the minus order.
    Maximal { matrix: PathBuf },
    /// Analyze a linear map on square matrices.
    Preserver {
        action: PreserverAction,
        map: PathBuf,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Exhaustive checks on a small finite ring.
    Oracle {
        #[command(subcommand)]
        action: OracleAction,
    },
}

#[derive(Subcommand, Debug)]
enum OrderAction {
    Check {
        #[arg(long, value_parser = ["minus", "space", "star"])]
        relation: String,
        a: PathBuf,
        b: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum OracleAction {
    Run {
        /// Ring spec: m<k>gf<p>, ut<k>gf<p>, z<n>, or a `+`-joined sum.
        #[arg(long)]
        ring: String,
        /// Proposition id, or `all`.
        #[arg(long, default_value = "all")]
        prop: String,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum InverseKind {
    Mp,
    Inner,
    Reflexive,
    Family,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum PreserverAction {
    Check,
    Decompose,
}

#[derive(Args, Debug, Clone, Copy)]
struct Sampling {
    #[arg(long, default_value_t = DEFAULT_TRIALS)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let echo = std::env::args().skip(1).collect::<Vec<_>>().join(" ");
    let mut report = RunReport::new(echo);
    let started = Instant::now();
    match commands::run(&cli, &mut report) {
        Ok(code) => {
            report.exit_status = code;
            if cli.json {
                print!("{}", report.to_json());
            } else {
                print!("{}", report.to_text());
            }
            eprintln!("elapsed: {:.3}s", started.elapsed().as_secs_f64());
            ExitCode::from(code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
