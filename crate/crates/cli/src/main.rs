//! Command-line front end: runs any machine scenario or sweep, compares
//! Monte Carlo frequencies against the analytic laws, and emits aligned
//! text, CSV, or JSON.
//!
//! Exit codes: 0 on success, 1 on internal/output errors, 2 on flag or
//! parameter errors.

mod render;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use aerts_machines_core::bell::Scenario;
use clap::{Args, Parser, Subcommand};

use report::{ConfigEcho, RunOutput};

const DEFAULT_SEED: u64 = 42;
const SEED_ENV: &str = "AERTS_MACHINES_SEED";

#[derive(Parser)]
#[command(
    name = "aerts-machines",
    version,
    about = "Spin quantum-machine and elastic-band Bell simulators",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Spin quantum-machine: uniform breakable elastic on the unit sphere
    Sqm(SweepArgs),
    /// ε-machine: elastic breakable only in a central segment of half-width ε
    Epsilon(EpsilonArgs),
    /// CHSH scenarios: elastic-band entities and the quantum singlet
    Bell(BellArgs),
    /// Exhaustive deterministic local-strategy enumeration (classical bound)
    Lhv(OutputArgs),
    /// Exact spin-1/2 oracle: Born probabilities and projective sampling
    Quantum(SweepArgs),
}

#[derive(Args)]
struct SweepArgs {
    /// Angle γ in radians, or a start:stop:steps sweep
    #[arg(long)]
    gamma: String,
    #[command(flatten)]
    run: RunArgs,
}

#[derive(Args)]
struct EpsilonArgs {
    /// Angle γ in radians, or a start:stop:steps sweep
    #[arg(long)]
    gamma: String,
    /// Breakable half-width ε in [0, 1]
    #[arg(long)]
    epsilon: f64,
    #[command(flatten)]
    run: RunArgs,
}

#[derive(Args)]
struct BellArgs {
    /// uniform-band | fixed-break-band | pre-broken-band | quantum-singlet
    #[arg(long)]
    scenario: String,
    #[command(flatten)]
    run: RunArgs,
}

#[derive(Args)]
struct RunArgs {
    /// Monte Carlo trials per point or expectation (0 = analytic only)
    #[arg(long, default_value_t = 100_000)]
    trials: u64,
    /// Master seed; overrides the AERTS_MACHINES_SEED environment variable
    #[arg(long)]
    seed: Option<u64>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct OutputArgs {
    /// table | csv | json
    #[arg(long, default_value = "table")]
    format: String,
    /// Write the rendered output to this file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Errors that map to exit code 2: bad flags or parameters.
#[derive(Debug)]
struct UsageError(String);

fn parse_gamma_spec(spec: &str) -> Result<Vec<f64>, UsageError> {
    if let Ok(single) = spec.parse::<f64>() {
        if !single.is_finite() {
            return Err(UsageError(format!("gamma '{spec}' is not finite")));
        }
        return Ok(vec![single]);
    }
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        return Err(UsageError(format!(
            "gamma '{spec}' is neither a number nor a start:stop:steps sweep"
        )));
    }
    let start: f64 = parts[0]
        .parse()
        .map_err(|_| UsageError(format!("bad sweep start '{}'", parts[0])))?;
    let stop: f64 = parts[1]
        .parse()
        .map_err(|_| UsageError(format!("bad sweep stop '{}'", parts[1])))?;
    let steps: usize = parts[2]
        .parse()
        .map_err(|_| UsageError(format!("bad sweep step count '{}'", parts[2])))?;
    if !start.is_finite() || !stop.is_finite() {
        return Err(UsageError(format!("sweep bounds in '{spec}' must be finite")));
    }
    if steps == 0 {
        return Err(UsageError("sweep needs at least one step".into()));
    }
    if steps == 1 {
        return Ok(vec![start]);
    }
    let width = (stop - start) / (steps - 1) as f64;
    Ok((0..steps).map(|k| start + width * k as f64).collect())
}

fn resolve_seed(flag: Option<u64>) -> Result<u64, UsageError> {
    if let Some(seed) = flag {
        return Ok(seed);
    }
    match std::env::var(SEED_ENV) {
        Ok(raw) => raw
            .trim()
            .parse::<u64>()
            .map_err(|_| UsageError(format!("{SEED_ENV}='{raw}' is not a valid seed"))),
        Err(_) => Ok(DEFAULT_SEED),
    }
}

fn check_format(format: &str) -> Result<(), UsageError> {
    match format {
        "table" | "csv" | "json" => Ok(()),
        other => Err(UsageError(format!(
            "unknown format '{other}' (expected table, csv or json)"
        ))),
    }
}

fn build(cli: &Cli) -> Result<(ConfigEcho, RunOutput), UsageError> {
    match &cli.command {
        Command::Sqm(args) => {
            check_format(&args.run.output.format)?;
            let gammas = parse_gamma_spec(&args.gamma)?;
            let seed = resolve_seed(args.run.seed)?;
            let output = report::run_sqm(&gammas, args.run.trials, seed)
                .map_err(|e| UsageError(e.to_string()))?;
            Ok((echo("sqm", Some(&args.gamma), None, None, &args.run, seed), output))
        }
        Command::Epsilon(args) => {
            check_format(&args.run.output.format)?;
            let gammas = parse_gamma_spec(&args.gamma)?;
            if !(0.0..=1.0).contains(&args.epsilon) || !args.epsilon.is_finite() {
                return Err(UsageError(format!(
                    "epsilon {} outside [0, 1]",
                    args.epsilon
                )));
            }
            let seed = resolve_seed(args.run.seed)?;
            let output = report::run_epsilon(&gammas, args.epsilon, args.run.trials, seed)
                .map_err(|e| UsageError(e.to_string()))?;
            Ok((
                echo(
                    "epsilon",
                    Some(&args.gamma),
                    Some(args.epsilon),
                    None,
                    &args.run,
                    seed,
                ),
                output,
            ))
        }
        Command::Bell(args) => {
            check_format(&args.run.output.format)?;
            let scenario =
                Scenario::from_name(&args.scenario).map_err(|e| UsageError(e.to_string()))?;
            let seed = resolve_seed(args.run.seed)?;
            let output = report::run_bell(&scenario, args.run.trials, seed)
                .map_err(|e| UsageError(e.to_string()))?;
            Ok((
                echo("bell", None, None, Some(&args.scenario), &args.run, seed),
                output,
            ))
        }
        Command::Lhv(output_args) => {
            check_format(&output_args.format)?;
            let config = ConfigEcho {
                command: "lhv",
                gamma: None,
                epsilon: None,
                scenario: None,
                trials: 0,
                seed: 0,
                format: output_args.format.clone(),
                out: output_args.out.as_ref().map(|p| p.display().to_string()),
            };
            Ok((config, report::run_lhv()))
        }
        Command::Quantum(args) => {
            check_format(&args.run.output.format)?;
            let gammas = parse_gamma_spec(&args.gamma)?;
            let seed = resolve_seed(args.run.seed)?;
            let output = report::run_quantum(&gammas, args.run.trials, seed)
                .map_err(|e| UsageError(e.to_string()))?;
            Ok((
                echo("quantum", Some(&args.gamma), None, None, &args.run, seed),
                output,
            ))
        }
    }
}

fn echo(
    command: &'static str,
    gamma: Option<&str>,
    epsilon: Option<f64>,
    scenario: Option<&str>,
    run: &RunArgs,
    seed: u64,
) -> ConfigEcho {
    ConfigEcho {
        command,
        gamma: gamma.map(str::to_string),
        epsilon,
        scenario: scenario.map(str::to_string),
        trials: run.trials,
        seed,
        format: run.output.format.clone(),
        out: run.output.out.as_ref().map(|p| p.display().to_string()),
    }
}

fn emit(config: &ConfigEcho, output: &RunOutput) -> Result<(), String> {
    let rendered = match config.format.as_str() {
        "csv" => render::render_csv(config, output),
        "json" => render::render_json(config, output),
        _ => render::render_table(config, output),
    };
    match &config.out {
        Some(path) => {
            let mut file = std::fs::File::create(path)
                .map_err(|e| format!("cannot write '{path}': {e}"))?;
            file.write_all(rendered.as_bytes())
                .map_err(|e| format!("cannot write '{path}': {e}"))
        }
        None => {
            print!("{rendered}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (config, output) = match build(&cli) {
        Ok(pair) => pair,
        Err(UsageError(message)) => {
            eprintln!("error: {message}");
            return ExitCode::from(2);
        }
    };
    match emit(&config, &output) {
        Ok(()) => ExitCode::SUCCESS,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}
