use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use wtoric_core::pipeline::{self, JobConfig, RunOptions, SelftestOptions};

/// Exact checks for Weyl-symmetric polytopes and their polytopal algebras.
#[derive(Parser)]
#[command(name = "wtoric", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a job described by a JSON config.
    Run {
        config: PathBuf,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Include wall-clock timings (the report is then not reproducible).
        #[arg(long)]
        timings: bool,
    },
    /// Run a canned example and compare it with its golden expectation.
    Example {
        /// a2-hexagon or i25-pentagon
        name: String,
        /// Print the full JSON report instead of the golden lines.
        #[arg(long)]
        json: bool,
    },
    /// Sweep the supported types up to a rank and print a pass/fail matrix.
    Selftest {
        #[arg(long)]
        rank_cap: Option<usize>,
        #[arg(long)]
        json: bool,
    },
}

const EXIT_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_FAILED),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn dispatch(cmd: Command) -> Result<bool> {
    match cmd {
        Command::Run { config, out, timings } => {
            let text = std::fs::read_to_string(&config).with_context(|| format!("reading {}", config.display()))?;
            let job = JobConfig::from_json(&text)?;
            let report = pipeline::run(&job, &RunOptions { timings })?;
            let body = report.to_pretty();
            match out {
                Some(path) => {
                    std::fs::write(&path, body).with_context(|| format!("writing {}", path.display()))?;
                    for (check, ok) in &report.checks {
                        println!("{:<10} {}", check.name(), if *ok { "pass" } else { "FAIL" });
                    }
                }
                None => print!("{body}"),
            }
            for (stage, msg) in &report.errors {
                eprintln!("{stage}: {msg}");
            }
            Ok(report.passed())
        }
        Command::Example { name, json } => {
            let outcome = pipeline::example(&name)?;
            if json {
                print!("{}", pipeline::report::pretty(&outcome.json()));
            } else {
                print!("{}", outcome.actual);
            }
            if outcome.matches() {
                eprintln!("golden: match");
            } else {
                eprintln!("golden: MISMATCH\n{}", outcome.diff());
            }
            Ok(outcome.matches() && outcome.report.passed())
        }
        Command::Selftest { rank_cap, json } => {
            let cap = match rank_cap {
                Some(c) => c,
                None => pipeline::env_rank_cap()?.min(3),
            };
            let summary = pipeline::selftest(&SelftestOptions { rank_cap: cap, ..Default::default() })?;
            if json {
                print!("{}", pipeline::report::pretty(&summary.to_json()));
            } else {
                print!("{}", summary.matrix());
                println!("elapsed {:.1}s", summary.elapsed.as_secs_f64());
            }
            Ok(summary.passed())
        }
    }
}
