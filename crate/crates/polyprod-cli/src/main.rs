use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use polyprod::exactlin::Field;
use polyprod_cli::commands::{
    run_adcheck, run_betti, run_dual, run_ring, run_verify, AdOpts, BettiOpts, DualOpts,
    RingOpts, VerifyOpts,
};
use polyprod_cli::{input, CliError, CmdOutcome};

/// Exact homology of polyhedral products Z_K(X, A).
///
/// Instances are JSON files naming a field, a simplicial complex K, and one
/// pair (X_i, A_i) per vertex. Exit status: 0 on success, 1 on unreadable or
/// invalid input, 2 when a requested check ran and found a mismatch.
#[derive(Parser)]
#[command(name = "polyprod", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Betti numbers, total and split by index pair (sigma, omega)
    Betti {
        path: PathBuf,
        /// Emit a JSON report instead of text
        #[arg(long)]
        json: bool,
        /// Also run the minimal-model, cover and brute-force pipelines and
        /// compare (exit 2 on disagreement)
        #[arg(long)]
        crosscheck: bool,
        /// Override the field from the file: "rationals", "prime:p", or a
        /// bare prime
        #[arg(long)]
        field: Option<String>,
    },
    /// Basis of the homology and its product or coproduct structure
    Ring {
        path: PathBuf,
        #[arg(long)]
        json: bool,
        /// List homology coproducts instead of cohomology products
        #[arg(long)]
        coalgebra: bool,
        #[arg(long)]
        field: Option<String>,
    },
    /// Pair an all-spheres instance against its Alexander complement
    Dual {
        path: PathBuf,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        field: Option<String>,
    },
    /// Sweep the shifted link duality over many complexes
    AdCheck {
        /// Check every complex on up to N vertices (N <= 4; default 3)
        #[arg(long)]
        exhaustive: Option<usize>,
        /// Also check COUNT random complexes (default 50)
        #[arg(long, value_name = "COUNT")]
        random: Option<usize>,
        /// Largest ground set for random complexes
        #[arg(long, default_value_t = 6)]
        max_vertices: usize,
        /// Seed for the random sweep
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        field: Option<String>,
    },
    /// Run every pipeline on one instance and compare all of them
    Verify {
        path: PathBuf,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        field: Option<String>,
    },
}

fn parse_field(flag: Option<String>) -> Result<Option<Field>, CliError> {
    flag.map(|s| input::parse_field_flag(&s)).transpose()
}

fn run(cli: Cli) -> Result<CmdOutcome, CliError> {
    match cli.cmd {
        Cmd::Betti { path, json, crosscheck, field } => {
            let text = input::load(&path)?;
            run_betti(&text, &BettiOpts { json, crosscheck, field: parse_field(field)? })
        }
        Cmd::Ring { path, json, coalgebra, field } => {
            let text = input::load(&path)?;
            run_ring(&text, &RingOpts { json, coalgebra, field: parse_field(field)? })
        }
        Cmd::Dual { path, json, field } => {
            let text = input::load(&path)?;
            run_dual(&text, &DualOpts { json, field: parse_field(field)? })
        }
        Cmd::AdCheck { exhaustive, random, max_vertices, seed, json, field } => {
            run_adcheck(&AdOpts {
                exhaustive,
                random,
                max_vertices,
                seed,
                json,
                field: parse_field(field)?,
            })
        }
        Cmd::Verify { path, json, field } => {
            let text = input::load(&path)?;
            run_verify(&text, &VerifyOpts { json, field: parse_field(field)? })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Keep exit statuses to the documented contract: bad usage is an
            // input problem (1), while --help and --version are successes.
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(out) => {
            print!("{}", out.stdout);
            ExitCode::from(out.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
