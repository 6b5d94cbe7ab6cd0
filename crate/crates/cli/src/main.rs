//! Command-line front end for the pure-loss channel trade-off calculator.
//!
//! Exit codes: 0 success, 1 runtime or I/O failure, 2 usage error,
//! 3 infeasible target, 4 oracle verification failure.

mod commands;
mod emit;

use std::path::PathBuf;
use std::process::ExitCode;

use bosonic_tradeoff::{ChannelSpec, EpsilonGap, PowerBudget, ShareParam};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "bosonic-tradeoff",
    version,
    about = "Capacity and trade-off regions of the pure-loss bosonic channel"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    /// Write to this file instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct ChannelArgs {
    /// Transmissivity in (0, 1].
    #[arg(long, value_parser = parse_eta)]
    pub eta: ChannelSpec,

    /// Mean input photon number per channel use.
    #[arg(long, value_parser = parse_ns)]
    pub ns: PowerBudget,
}

#[derive(Debug, Args)]
pub struct GridArgs {
    /// Number of log-spaced sharing fractions (plus lambda = 0).
    #[arg(long, default_value_t = 512, value_parser = clap::value_parser!(u32).range(2..=1_000_000))]
    pub grid: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SliceArg {
    /// Classical versus quantum rate, no entanglement.
    Cq,
    /// Classical rate versus entanglement consumption, no quantum rate.
    Ce,
    /// Public versus private rate, no secret key.
    Rp,
    /// Raw face bounds for every grid point.
    Bounds,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RegionArg {
    Cqe,
    Rps,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CompareSlice {
    Cq,
    Ce,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Baseline {
    /// Time-sharing between corner protocols, each at the full photon budget.
    FullBudget,
    /// Time-sharing where the photon budget is also split between the two
    /// protocols (cq only).
    Reallocating,
    /// The entanglement-assisted corner itself (ce only).
    EaCorner,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classical, quantum and entanglement-assisted capacities.
    Capacities(ChannelArgs),
    /// Trace a frontier over the photon-sharing fraction.
    Frontier {
        #[command(flatten)]
        channel: ChannelArgs,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long, value_enum, default_value_t = SliceArg::Cq)]
        slice: SliceArg,
        /// Region for `--slice bounds`.
        #[arg(long, value_enum, default_value_t = RegionArg::Cqe)]
        region: RegionArg,
    },
    /// Best trade-off rate at a target versus a time-sharing baseline.
    Compare {
        #[command(flatten)]
        channel: ChannelArgs,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long, value_enum, default_value_t = CompareSlice::Cq)]
        slice: CompareSlice,
        /// Quantum rate (cq) or entanglement consumption (ce) to hold fixed.
        #[arg(long)]
        target: f64,
        #[arg(long, value_enum, default_value_t = Baseline::FullBudget)]
        baseline: Baseline,
    },
    /// Photon fraction needed to get within epsilon of the quantum capacity limit.
    RuleOfThumb {
        #[command(flatten)]
        channel: ChannelArgs,
        /// Tolerated shortfall in qubits per channel use.
        #[arg(long, value_parser = parse_epsilon)]
        epsilon: EpsilonGap,
    },
    /// Cross-check the closed-form entropies in a truncated Fock basis.
    Verify {
        #[command(flatten)]
        channel: ChannelArgs,
        /// Photon-sharing fraction; the squeezed state has mean lambda * ns.
        #[arg(long, value_parser = parse_lambda, default_value = "1")]
        lambda: ShareParam,
        /// Largest photon number kept per mode.
        #[arg(long, default_value_t = 60, value_parser = clap::value_parser!(u32).range(1..=400))]
        cutoff: u32,
        /// Largest allowed absolute deviation in bits.
        #[arg(long, default_value_t = 1e-8)]
        tolerance: f64,
    },
    /// Rates and region bounds of a finite-dimensional channel and ensemble.
    FdEval {
        /// JSON instance file.
        #[arg(long)]
        input: PathBuf,
    },
    /// Minkowski sum of two frontiers previously written with `--format json`.
    Minkowski {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
    },
}

fn parse_eta(s: &str) -> Result<ChannelSpec, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    ChannelSpec::new(v).map_err(|e| e.to_string())
}

fn parse_ns(s: &str) -> Result<PowerBudget, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    PowerBudget::new(v).map_err(|e| e.to_string())
}

fn parse_epsilon(s: &str) -> Result<EpsilonGap, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    EpsilonGap::new(v).map_err(|e| e.to_string())
}

fn parse_lambda(s: &str) -> Result<ShareParam, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    ShareParam::new(v).map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(e.exit_code())
        }
    }
}
