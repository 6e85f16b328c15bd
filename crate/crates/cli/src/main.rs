//! `swlab`: runs the shallow-water finite-element experiments and writes
//! their data as CSV. Exit status: 0 when every check of the subcommand
//! passes, 1 when a check fails or the run errors, 2 on usage errors.

mod common;
mod config;
mod converge;
mod dispersion;
mod fields;
mod oracle;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Parser, Subcommand};

use common::{Ctx, UsageError};
use config::Config;

#[derive(Parser, Debug)]
#[command(name = "swlab", version, about = "P1DG-P2 shallow-water wave laboratory")]
struct Cli {
    /// File of `key = value` lines overriding the built-in defaults.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Random seed [default: $SWE_SEED, else 0].
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Write the primary output here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Plane-wave free-surface error against mesh size for both initialisations.
    Converge(converge::ConvergeArgs),
    /// Bloch dispersion branches over the first Brillouin zone.
    Dispersion(dispersion::DispersionArgs),
    /// Same as `dispersion --kind rossby`.
    Rossby(dispersion::SweepArgs),
    /// Energies of the discrete Helmholtz components of a velocity field.
    Helmholtz(fields::HelmholtzArgs),
    /// Implicit-midpoint run writing an energy trajectory.
    Simulate(fields::SimulateArgs),
    /// Assembled reduced Bloch matrices against their closed forms.
    Oracle(oracle::OracleArgs),
    /// Writes the assembled operators in coordinate format.
    DumpMatrices(oracle::DumpArgs),
}

fn run(cli: &Cli) -> Result<bool> {
    let config = match &cli.config {
        Some(path) => Config::load(path).map_err(|e| UsageError(format!("{e:#}")))?,
        None => Config::default(),
    };
    let env_seed = match std::env::var("SWE_SEED") {
        Ok(v) => Some(v.trim().parse::<u64>().map_err(|e| UsageError(format!("SWE_SEED: {e}")))?),
        Err(_) => None,
    };
    let seed = match cli.seed {
        Some(s) => s,
        None => config.get("seed")?.or(env_seed).unwrap_or(0),
    };
    let output = config.pick_opt(cli.output.clone(), "output")?;
    let ctx = Ctx { config, seed, output };
    match &cli.command {
        Command::Converge(a) => converge::run(&ctx, a),
        Command::Dispersion(a) => dispersion::run(&ctx, a),
        Command::Rossby(a) => dispersion::sweep(&ctx, dispersion::Kind::Rossby, a),
        Command::Helmholtz(a) => fields::run_helmholtz(&ctx, a),
        Command::Simulate(a) => fields::run_simulate(&ctx, a),
        Command::Oracle(a) => oracle::run_oracle_cmd(&ctx, a),
        Command::DumpMatrices(a) => oracle::run_dump(&ctx, a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) if e.downcast_ref::<UsageError>().is_some() => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
