use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use sunbose::commands::{run, Command};
use sunbose::config::{parse_label, parse_tolerance, PartialConfig, RunConfig};
use sunbose::ConfigError;

/// Verification front-end for the Schwinger-boson SU(N) library.
///
/// Prints a JSON report on stdout. Exit code 0 when every check passes,
/// 1 when a check fails, 2 for usage or configuration errors.
#[derive(Parser)]
#[command(name = "sunbose", version)]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand)]
enum Sub {
    /// Generators, structure constants and wedge representations.
    Algebra(Flags),
    /// Sector operators, Casimirs and the Young-symmetrizer rank.
    Irrep(Flags),
    /// Frames, wedge coordinates and coherent-state covariance.
    Coherent(Flags),
    /// Monte Carlo resolution of identity.
    Identity(Flags),
}

#[derive(Args)]
struct Flags {
    /// Group rank parameter N.
    #[arg(long)]
    n: Option<usize>,
    /// Casimir label C_1,..,C_{N-1}.
    #[arg(long, allow_hyphen_values = true)]
    c: Option<String>,
    /// RNG seed for frames and Monte Carlo samples (default 0)
    #[arg(long)]
    seed: Option<u64>,
    /// Monte Carlo samples (identity) or random frames (coherent).
    #[arg(long)]
    samples: Option<usize>,
    /// Override a tolerance, e.g. `--tol closure=1e-10`.
    #[arg(long = "tol", value_parser = parse_tolerance)]
    tolerances: Vec<(String, f64)>,
    /// Refuse sectors with more states than this
    #[arg(long)]
    sector_cap: Option<usize>,
    /// JSON config file; flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Also write the report to this file.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn resolve(flags: &Flags) -> Result<RunConfig, ConfigError> {
    let file = match &flags.config {
        Some(path) => PartialConfig::from_file(path)?,
        None => PartialConfig::default(),
    };
    let cli = PartialConfig {
        n: flags.n,
        c: flags.c.as_deref().map(parse_label).transpose().map_err(ConfigError::Invalid)?,
        seed: flags.seed,
        samples: flags.samples,
        tolerances: flags.tolerances.iter().cloned().collect(),
        sector_cap: flags.sector_cap,
    };
    RunConfig::resolve(file.overridden_by(cli))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, flags) = match &cli.command {
        Sub::Algebra(f) => (Command::Algebra, f),
        Sub::Irrep(f) => (Command::Irrep, f),
        Sub::Coherent(f) => (Command::Coherent, f),
        Sub::Identity(f) => (Command::Identity, f),
    };
    let report = match resolve(flags).and_then(|cfg| run(command, &cfg)) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let text = report.to_json_string(true);
    println!("{text}");
    if let Some(path) = &flags.out {
        if let Err(e) = std::fs::write(path, format!("{text}\n")) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    for c in report.failures() {
        eprintln!(
            "FAIL {}: measured {}, required {} {} ({})",
            c.name,
            c.measured,
            c.relation,
            c.bound,
            c.tolerance.as_deref().unwrap_or("fixed bound")
        );
    }
    ExitCode::from(report.exit_code() as u8)
}
