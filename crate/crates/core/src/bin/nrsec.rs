use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use nrsec::scenario::{emit_results, load_scenario, run_scenario};

#[derive(Parser)]
#[command(name = "nrsec", version, about = "Run secrecy scenarios and write CSV results")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario file.
    Run {
        scenario: PathBuf,
        /// Output CSV path; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        trials: Option<u64>,
    },
}

fn main() -> ExitCode {
    let Command::Run { scenario, out, seed, trials } = Cli::parse().command;
    let mut cfg = match load_scenario(&scenario) {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    if let Some(seed) = seed {
        cfg.monte_carlo.seed = seed;
    }
    if let Some(trials) = trials {
        if trials == 0 {
            eprintln!("error: --trials must be >= 1");
            return ExitCode::from(1);
        }
        cfg.monte_carlo.trials = trials;
    }
    let written = run_scenario(&cfg).and_then(|table| match &out {
        Some(path) => emit_results(&table, std::fs::File::create(path)?),
        None => emit_results(&table, std::io::stdout().lock()),
    });
    match written {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
