//! `ehrenfest`: zonal tables, Fourier coefficients, exact distributions,
//! mixing curves, cutoff estimates and oracle checks for multi-urn Ehrenfest
//! shuffles.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ehrenfest::{Limits, ShuffleKind};

#[derive(Debug, Parser)]
#[command(
    name = "ehrenfest",
    version,
    about = "Spectral analysis of multi-urn Ehrenfest shuffles"
)]
struct Cli {
    /// Largest r^n accepted by the brute-force oracle and simulator.
    #[arg(long, global = true, env = "EHRENFEST_MAX_STATES", default_value_t = Limits::default().max_states)]
    max_states: usize,

    /// Largest number of compositions C(n+r-1, r-1) accepted for tables.
    #[arg(long, global = true, env = "EHRENFEST_MAX_TYPES", default_value_t = Limits::default().max_types)]
    max_types: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Zonal spherical function table as CSV.
    Table(Common),
    /// Fourier coefficients f_k per composition as CSV.
    Fk {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum)]
        shuffle: Shuffle,
    },
    /// Distribution after N shuffles, per type.
    Evolve {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum)]
        shuffle: Shuffle,
        /// Number of shuffles N.
        #[arg(long)]
        steps: u64,
    },
    /// Total variation mixing curve over a range of N.
    Tvd {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum)]
        shuffle: Shuffle,
        #[arg(long, default_value_t = 0)]
        n_min: u64,
        #[arg(long)]
        n_max: u64,
    },
    /// Cutoff threshold N(c) and the guaranteed bound, with the exact distance there.
    Cutoff {
        #[command(flatten)]
        common: Common,
        /// Offset c in N(c) = (n(r-1)/2r)(n log r + c).
        #[arg(short = 'c', allow_negative_numbers = true)]
        c: f64,
        /// Do not evaluate the exact distance at ceil(N(c)).
        #[arg(long)]
        skip_exact: bool,
    },
    /// Compare the spectral formulas against brute-force kernel powering (JSON report).
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum)]
        shuffle: Shuffle,
        /// Check every N from 0 to this value.
        #[arg(long)]
        n_steps: u64,
    },
    /// Monte Carlo run compared with the exact distribution.
    Simulate {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum)]
        shuffle: Shuffle,
        #[arg(long)]
        steps: u64,
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Args)]
struct Common {
    /// Number of urns.
    #[arg(short = 'r')]
    r: usize,
    /// Number of balls.
    #[arg(short = 'n')]
    n: usize,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Shuffle {
    AnyOther,
    CyclicLeft,
    CyclicBidir,
}

impl From<Shuffle> for ShuffleKind {
    fn from(s: Shuffle) -> Self {
        match s {
            Shuffle::AnyOther => ShuffleKind::AnyOther,
            Shuffle::CyclicLeft => ShuffleKind::CyclicLeft,
            Shuffle::CyclicBidir => ShuffleKind::CyclicBidirectional,
        }
    }
}

/// Exit status when a verification or acceptance check fails.
const EXIT_CHECK_FAILED: u8 = 1;
/// Exit status for rejected arguments (clap uses the same code).
const EXIT_INVALID: u8 = 2;
/// Exit status when a resource cap is exceeded.
const EXIT_CAP: u8 = 3;
/// Exit status for numerical or I/O failures.
const EXIT_RUNTIME: u8 = 4;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let limits = Limits {
        max_types: cli.max_types,
        max_states: cli.max_states,
    };
    match commands::run(cli.command, &limits) {
        Ok(commands::Outcome::Success) => ExitCode::SUCCESS,
        Ok(commands::Outcome::CheckFailed) => ExitCode::from(EXIT_CHECK_FAILED),
        Err(err) => {
            eprintln!("error: {err:#}");
            if let Some(ehrenfest::Error::CapExceeded { what, .. }) = err.downcast_ref() {
                let flag = if *what == "composition" {
                    "--max-types or EHRENFEST_MAX_TYPES"
                } else {
                    "--max-states or EHRENFEST_MAX_STATES"
                };
                eprintln!("hint: raise the cap with {flag}");
            }
            let code = match err.downcast_ref::<ehrenfest::Error>() {
                Some(ehrenfest::Error::CapExceeded { .. }) => EXIT_CAP,
                Some(ehrenfest::Error::InvalidArgument(_))
                | Some(ehrenfest::Error::DimensionMismatch { .. }) => EXIT_INVALID,
                _ => EXIT_RUNTIME,
            };
            ExitCode::from(code)
        }
    }
}
