mod commands;
mod env;
mod problem;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::{Report, RunConfig, EXIT_ERROR};
use env::{parse_env, Env};
use problem::{parse_problem, Problem};

/// Exact order-of-magnitude calculus.
#[derive(Parser)]
#[command(name = "oomcalc", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Bindings for formula names: `name = (σ,n)` lines or a JSON object.
    #[arg(long, global = true, value_name = "FILE")]
    env: Option<PathBuf>,

    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Interpretations sampled per soundness check.
    #[arg(long, global = true, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
    samples: u64,

    /// Candidates examined per witness search.
    #[arg(long, global = true, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(1..))]
    budget: u64,

    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    machine: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a formula over order-of-magnitude values.
    Eval { expr: String },
    /// Compare two formulas in the partial order.
    Compare { lhs: String, rhs: String },
    /// Expected utility of each option in a problem, with pairwise preferences.
    Expect { problem: PathBuf },
    /// Pearl's kappa decision values next to the order-of-magnitude expectation.
    Pearl { problem: PathBuf },
    /// Check a claim `EXPR1 > EXPR2`, or a problem file's comparisons, against
    /// exact interpretations.
    Verify { target: String },
}

fn read(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_env(path: Option<&Path>) -> Result<Env, String> {
    match path {
        Some(p) => parse_env(&read(p)?).map_err(|e| format!("{}: {e}", p.display())),
        None => Ok(Env::new()),
    }
}

fn load_problem(path: &Path) -> Result<Problem, String> {
    parse_problem(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn run(cli: &Cli) -> Result<Report, String> {
    let config = RunConfig {
        seed: cli.seed,
        samples: cli.samples as usize,
        budget: cli.budget as usize,
    };
    match &cli.command {
        Command::Eval { expr } => commands::eval(expr, &load_env(cli.env.as_deref())?),
        Command::Compare { lhs, rhs } => commands::compare(lhs, rhs, &load_env(cli.env.as_deref())?),
        Command::Expect { problem } => Ok(commands::expect(&load_problem(problem)?)),
        Command::Pearl { problem } => commands::pearl(&load_problem(problem)?),
        Command::Verify { target } if target.contains('>') => {
            commands::verify_claim(target, &load_env(cli.env.as_deref())?, &config)
        }
        Command::Verify { target } => commands::verify_problem(&load_problem(Path::new(target))?, &config),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_ERROR as u8 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(report) => {
            if cli.machine {
                println!("{}", serde_json::to_string_pretty(&report.machine).expect("serializable report"));
            } else {
                print!("{}", report.text);
            }
            ExitCode::from(report.code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_ERROR as u8)
        }
    }
}
