//! `tgclaims`: batch front-end for scenario files.
//!
//! Exit status is 0 when everything checked holds, 2 when a hypothesis or
//! ordering fails, and 1 on input or I/O errors.

mod commands;
mod output;
mod scenario;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use tgclaims::OrderKind;

use commands::TheoremSelector;

#[derive(Parser)]
#[command(
    name = "tgclaims",
    version,
    about = "Extreme claim orderings for transmuted-G portfolios"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Scenario file (JSON); repeatable.
    #[arg(long = "scenario", required = true)]
    scenarios: Vec<PathBuf>,
    /// Output directory, created if missing.
    #[arg(long, default_value = ".")]
    out: PathBuf,
    /// Override the scenario's grid resolution.
    #[arg(long)]
    grid_points: Option<usize>,
    /// Parse and validate the scenarios, then stop.
    #[arg(long)]
    validate_only: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Check theorem hypotheses and confirm the implied ordering numerically.
    Check {
        #[command(flatten)]
        common: Common,
        /// Result to check; repeatable. Defaults from the scenario's extreme.
        #[arg(long = "theorem", value_enum)]
        theorems: Vec<TheoremSelector>,
    },
    /// Run one numeric order check, portfolio_b against portfolio_a.
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "st", value_parser = parse_order)]
        order: OrderKind,
    },
    /// Write survival curves of both extremes as CSV.
    Curves {
        #[command(flatten)]
        common: Common,
    },
    /// Compare Monte Carlo samples with the analytic distributions.
    Simulate {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 100_000)]
        count: usize,
        /// Overrides the scenario's seed.
        #[arg(long)]
        seed: Option<u64>,
    },
}

fn parse_order(s: &str) -> Result<OrderKind, String> {
    s.parse::<OrderKind>().map_err(|e| e.to_string())
}

fn run(cli: Cli) -> Result<bool> {
    let common = match &cli.command {
        Command::Check { common, .. }
        | Command::Verify { common, .. }
        | Command::Curves { common }
        | Command::Simulate { common, .. } => common,
    };
    let loaded = common
        .scenarios
        .iter()
        .map(|p| scenario::load(p, common.grid_points))
        .collect::<Result<Vec<_>>>()?;
    if common.validate_only {
        for sc in &loaded {
            println!("{}: ok", sc.path.display());
        }
        return Ok(true);
    }
    std::fs::create_dir_all(&common.out)
        .with_context(|| format!("creating {}", common.out.display()))?;
    let mut ok = true;
    for sc in &loaded {
        ok &= match &cli.command {
            Command::Check { theorems, .. } => commands::check(sc, theorems, &common.out)?,
            Command::Verify { order, .. } => commands::verify(sc, *order, &common.out)?,
            Command::Curves { .. } => commands::curves(sc, common.grid_points, &common.out)?,
            Command::Simulate { count, seed, .. } => {
                commands::simulate(sc, *count, *seed, &common.out)?
            }
        };
    }
    Ok(ok)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
