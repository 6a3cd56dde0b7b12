//! `emitpair`: curves, parameter scans, Gaussian scenes and the oracle
//! campaign from the command line.

mod commands;
mod config;
mod error;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use emitpair_core::MixtureExchange;

use config::{apply, load, Fig2Config, OracleConfig, ScanConfig, SceneConfig, VectorArg};
use error::CliResult;

#[derive(Parser)]
#[command(name = "emitpair", version, about = "Two-atom emission patterns after single-photon absorption")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emission curves for the one-parameter reference table.
    #[command(allow_negative_numbers = true)]
    Fig2(Fig2Args),
    /// Rates on a grid of the overlap parameter s.
    #[command(allow_negative_numbers = true)]
    Scan(ScanArgs),
    /// Overlap table and curves from two Gaussian wavepackets.
    #[command(allow_negative_numbers = true)]
    Scene(SceneArgs),
    /// Closed-form versus brute-force campaign on random tables.
    #[command(allow_negative_numbers = true)]
    Oracle(OracleArgs),
}

#[derive(Args)]
struct Common {
    /// TOML file of `key = value` settings; flags override it.
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct Fig2Args {
    #[command(flatten)]
    common: Common,
    #[arg(long)]
    s: Option<f64>,
    #[arg(long)]
    gamma0: Option<f64>,
    #[arg(long)]
    t_max: Option<f64>,
    #[arg(long)]
    steps: Option<usize>,
    #[arg(long, value_name = "on|off")]
    mixture_exchange: Option<MixtureExchange>,
    #[arg(long, default_value = "curves.csv")]
    out: PathBuf,
}

#[derive(Args)]
struct ScanArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long)]
    s_from: Option<f64>,
    #[arg(long)]
    s_to: Option<f64>,
    #[arg(long)]
    points: Option<usize>,
    #[arg(long)]
    gamma0: Option<f64>,
    #[arg(long, value_name = "on|off")]
    mixture_exchange: Option<MixtureExchange>,
    #[arg(long, default_value = "scan.csv")]
    out: PathBuf,
}

#[derive(Args)]
struct SceneArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long)]
    dim: Option<usize>,
    /// Distance between the packet centers along the first axis.
    #[arg(long)]
    separation: Option<f64>,
    #[arg(long)]
    sigma: Option<f64>,
    /// Photon wavenumber.
    #[arg(long)]
    k: Option<f64>,
    /// Emission direction, comma separated (default: last axis).
    #[arg(long, value_name = "X,Y,..")]
    omega: Option<VectorArg>,
    /// Absorption beam direction (default: first axis).
    #[arg(long, value_name = "X,Y,..")]
    beam: Option<VectorArg>,
    #[arg(long)]
    mass: Option<f64>,
    #[arg(long)]
    delay: Option<f64>,
    #[arg(long)]
    gamma0: Option<f64>,
    #[arg(long)]
    t_max: Option<f64>,
    #[arg(long)]
    steps: Option<usize>,
    #[arg(long, value_name = "on|off")]
    mixture_exchange: Option<MixtureExchange>,
    #[arg(long, default_value = "scene.csv")]
    out: PathBuf,
}

#[derive(Args)]
struct OracleArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long)]
    seeds: Option<u64>,
    #[arg(long)]
    first_seed: Option<u64>,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    coherence: Option<f64>,
    #[arg(long)]
    ambient_dim: Option<usize>,
    #[arg(long, default_value = "oracle_report.json")]
    out: PathBuf,
}

fn run(command: Command) -> CliResult<()> {
    match command {
        Command::Fig2(a) => {
            let mut c: Fig2Config = load(a.common.config.as_deref())?;
            apply(&mut c.s, a.s);
            apply(&mut c.gamma0, a.gamma0);
            apply(&mut c.t_max, a.t_max);
            apply(&mut c.steps, a.steps);
            apply(&mut c.mixture_exchange, a.mixture_exchange);
            commands::fig2(&c, &a.out)
        }
        Command::Scan(a) => {
            let mut c: ScanConfig = load(a.common.config.as_deref())?;
            apply(&mut c.s_from, a.s_from);
            apply(&mut c.s_to, a.s_to);
            apply(&mut c.points, a.points);
            apply(&mut c.gamma0, a.gamma0);
            apply(&mut c.mixture_exchange, a.mixture_exchange);
            commands::scan_cmd(&c, &a.out)
        }
        Command::Scene(a) => {
            let mut c: SceneConfig = load(a.common.config.as_deref())?;
            apply(&mut c.dim, a.dim);
            apply(&mut c.separation, a.separation);
            apply(&mut c.sigma, a.sigma);
            apply(&mut c.k, a.k);
            apply(&mut c.omega, a.omega.map(|v| Some(v.0)));
            apply(&mut c.beam, a.beam.map(|v| Some(v.0)));
            apply(&mut c.mass, a.mass);
            apply(&mut c.delay, a.delay);
            apply(&mut c.gamma0, a.gamma0);
            apply(&mut c.t_max, a.t_max);
            apply(&mut c.steps, a.steps);
            apply(&mut c.mixture_exchange, a.mixture_exchange);
            c.resolve_directions()?;
            commands::scene(&c, &a.out)
        }
        Command::Oracle(a) => {
            let mut c: OracleConfig = load(a.common.config.as_deref())?;
            apply(&mut c.seeds, a.seeds);
            apply(&mut c.first_seed, a.first_seed);
            apply(&mut c.tol, a.tol);
            apply(&mut c.coherence, a.coherence);
            apply(&mut c.ambient_dim, a.ambient_dim);
            commands::oracle(&c, &a.out)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
