//! Command-line front end: run or validate TOML scenario files.
//!
//! `jamsec run <scenario.toml>` executes the scenario (analytic sweeps,
//! simulations, comparisons, or placement optimization) and writes the
//! result CSV plus a fully resolved manifest next to it; re-running the
//! manifest reproduces the CSV byte for byte. `jamsec validate` only
//! checks the file against the domain invariants.

use anyhow::{bail, Context};
use clap::{Parser, Subcommand};
use jamsec::scenario::{load_scenario, run_scenario, validate_config, RunOverrides};
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "jamsec",
    version,
    about = "Secrecy-probability scenarios for UAV-jammer networks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Execute a scenario file and write the result table and manifest.
    Run {
        /// Scenario file (TOML).
        scenario: PathBuf,
        /// Override the scenario's random seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Override the output CSV path.
        #[arg(long)]
        output: Option<PathBuf>,
        /// Worker threads (defaults to the number of cores).
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Check a scenario file against every domain invariant.
    Validate {
        /// Scenario file (TOML).
        scenario: PathBuf,
    },
}

fn main() -> anyhow::Result<()> {
    match Cli::parse().command {
        Command::Run {
            scenario,
            seed,
            output,
            threads,
        } => {
            if let Some(n) = threads {
                rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build_global()
                    .context("thread pool setup failed")?;
            }
            let file = load_scenario(&scenario)
                .with_context(|| format!("cannot load {}", scenario.display()))?;
            // Default output: the scenario file's stem next to the cwd.
            let output = output.or_else(|| {
                file.output.clone().or_else(|| {
                    scenario
                        .file_stem()
                        .map(|stem| PathBuf::from(stem).with_extension("csv"))
                })
            });
            let report = run_scenario(&file, &RunOverrides { seed, output })?;
            eprintln!(
                "wrote {} ({} rows, {} failed) and {}",
                report.output_path.display(),
                report.rows.len(),
                report.row_failures,
                report.manifest_path.display()
            );
            if report.row_failures > 0 {
                bail!(
                    "{} row(s) failed; see the status column",
                    report.row_failures
                );
            }
            Ok(())
        }
        Command::Validate { scenario } => {
            let file = load_scenario(&scenario)
                .with_context(|| format!("cannot load {}", scenario.display()))?;
            let report = validate_config(&file);
            if report.is_empty() {
                eprintln!("{}: ok", scenario.display());
                Ok(())
            } else {
                for violation in &report {
                    println!("{violation}");
                }
                bail!("{} invariant violation(s)", report.len());
            }
        }
    }
}
