use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};

use se23_mef::harness::{
    run_monte_carlo, run_trial, write_aggregate_csv, write_trace_csv, ErrorTrace, RunConfig,
};

#[derive(Parser)]
#[command(
    name = "se23-mef",
    about = "Minimum-energy filter simulations on SE2(3)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Simulate one or more trials and write the error history as CSV.
    Run {
        #[arg(long)]
        config: PathBuf,
        /// Overrides the config seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Overrides the config trial count.
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long, default_value = "errors.csv")]
        out: PathBuf,
    },
    /// Parse and check a config without running anything.
    Validate {
        #[arg(long)]
        config: PathBuf,
    },
}

fn summarize(label: &str, trace: &ErrorTrace) {
    if let Some(s) = trace.converged_mean() {
        println!(
            "{label}: converged mean translation {:.4} m, rotation {:.5} rad, velocity {:.4} m/s",
            s.translation, s.rotation, s.velocity
        );
    }
}

fn run(
    config: PathBuf,
    seed: Option<u64>,
    trials: Option<usize>,
    out: PathBuf,
) -> Result<ExitCode> {
    let mut cfg = RunConfig::load(&config)?;
    if let Some(seed) = seed {
        cfg.sensors.seed = seed;
    }
    if let Some(trials) = trials {
        anyhow::ensure!(trials >= 1, "--trials must be at least 1");
        cfg.trials = trials;
    }

    if cfg.trials == 1 {
        let trace = match run_trial(&cfg, cfg.sensors.seed) {
            Ok(trace) => trace,
            Err(e) => {
                eprintln!("error: {e}");
                return Ok(ExitCode::from(2));
            }
        };
        write_trace_csv(&trace, &out)?;
        summarize(&format!("seed {}", cfg.sensors.seed), &trace);
        println!("wrote {}", out.display());
        return Ok(ExitCode::SUCCESS);
    }

    let result = run_monte_carlo(&cfg, cfg.trials);
    for report in &result.reports {
        summarize(&format!("seed {}", report.seed), &report.trace);
    }
    for flagged in &result.flagged {
        eprintln!("flagged: {flagged}");
    }
    if !result.aggregate.is_empty() {
        write_aggregate_csv(&result.aggregate, &out)?;
        println!(
            "wrote {} ({} of {} trials)",
            out.display(),
            result.reports.len(),
            cfg.trials
        );
    }
    Ok(if result.flagged.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Run {
            config,
            seed,
            trials,
            out,
        } => run(config, seed, trials, out),
        Command::Validate { config } => RunConfig::load(&config)
            .with_context(|| format!("invalid config {}", config.display()))
            .map(|_| {
                println!("{}: ok", config.display());
                ExitCode::SUCCESS
            }),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
