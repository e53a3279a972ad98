//! CLI entry point. Exit codes: 0 all checks passed, 1 at least one
//! violation was recorded, 2 configuration or usage error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Result};
use clap::{Parser, Subcommand};

use minbasis_harness::config::{self, SandwichConfig, SliceConfig};
use minbasis_harness::report::{print_summary, write_outputs, SuiteOutcome};
use minbasis_harness::suites;

#[derive(Parser)]
#[command(
    name = "minbasis-harness",
    about = "Verification suites for minimal bases, scale vectors, and polydisc sandwiches of invariant balls",
    version
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Experiment configuration (JSON). Suites with a domain require it;
    /// the domain-free suites fall back to built-in defaults.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Override the configured RNG seed.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output directory for report.json, violations.csv, and grid.csv.
    #[arg(long, global = true, default_value = "out")]
    out: PathBuf,
    /// Override the configured per-experiment sample count.
    #[arg(long, global = true)]
    samples: Option<usize>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Invariant sweep of the basis construction over random domains.
    MinimalBasis,
    /// Inner/outer polydisc sandwich of invariant balls.
    Sandwich,
    /// Sharpness of the boundary-distance lower bounds.
    Sharpness,
    /// Distance axioms of the multiplicative metric on the punctured plane.
    MetricProps,
    /// Last-scale decay along a boundary-approaching sequence.
    TauDecay,
    /// Planar-projection estimate of the scales after normalization.
    Projection,
    /// Plot-ready classification grid of a planar slice.
    Slice,
}

fn required_config<T: for<'de> serde::Deserialize<'de>>(path: &Option<PathBuf>) -> Result<T> {
    match path {
        Some(p) => config::load(p),
        None => bail!("this suite needs --config <path>"),
    }
}

fn optional_config<T: for<'de> serde::Deserialize<'de> + Default>(
    path: &Option<PathBuf>,
) -> Result<T> {
    match path {
        Some(p) => config::load(p),
        None => Ok(T::default()),
    }
}

fn run(cli: &Cli) -> Result<SuiteOutcome> {
    match cli.cmd {
        Cmd::MinimalBasis => {
            let mut cfg: config::MinimalBasisConfig = optional_config(&cli.config)?;
            if let Some(s) = cli.seed {
                cfg.seed = s;
            }
            if let Some(n) = cli.samples {
                cfg.samples = n;
            }
            suites::minimal_basis::run(&cfg)
        }
        Cmd::Sandwich => {
            let mut cfg: SandwichConfig = required_config(&cli.config)?;
            if let Some(s) = cli.seed {
                cfg.seed = s;
            }
            if let Some(n) = cli.samples {
                cfg.samples = n;
            }
            suites::sandwich::run(&cfg)
        }
        Cmd::Sharpness => {
            let mut cfg: config::SharpnessConfig = optional_config(&cli.config)?;
            if let Some(s) = cli.seed {
                cfg.seed = s;
            }
            if let Some(n) = cli.samples {
                cfg.pair_samples = n;
            }
            suites::sharpness::run(&cfg)
        }
        Cmd::MetricProps => {
            let mut cfg: config::MetricConfig = optional_config(&cli.config)?;
            if let Some(s) = cli.seed {
                cfg.seed = s;
            }
            if let Some(n) = cli.samples {
                cfg.triples = n;
            }
            suites::metric::run(&cfg)
        }
        Cmd::TauDecay => {
            let cfg: config::TauDecayConfig = required_config(&cli.config)?;
            suites::tau_decay::run(&cfg)
        }
        Cmd::Projection => {
            let cfg: config::ProjectionConfig = required_config(&cli.config)?;
            suites::projection::run(&cfg)
        }
        Cmd::Slice => {
            let mut cfg: SliceConfig = required_config(&cli.config)?;
            if let Some(s) = cli.seed {
                cfg.seed = s;
            }
            if let Some(n) = cli.samples {
                cfg.n_support = n;
            }
            suites::slice::run(&cfg)
        }
    }
}

fn write_and_summarize(out: &Path, outcome: &SuiteOutcome, started: Instant) -> Result<()> {
    write_outputs(out, outcome)?;
    print_summary(outcome, started.elapsed());
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    match run(&cli) {
        Ok(outcome) => {
            if let Err(e) = write_and_summarize(&cli.out, &outcome, started) {
                eprintln!("error: {e:#}");
                return ExitCode::from(2);
            }
            if outcome.report.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
