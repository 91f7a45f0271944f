//! Loads a scenario file, runs it and prints the CSV table.
//!
//!     cargo run --example run_scenario -- scenarios/udn_density.toml

use nrsec::scenario::{emit_results, load_scenario, run_scenario};

fn main() -> nrsec::Result<()> {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/scenarios/hd_fd_sweep.toml").to_owned());
    let cfg = load_scenario(&path)?;
    let table = run_scenario(&cfg)?;
    eprintln!("{} rows from {path}", table.rows.len());
    emit_results(&table, std::io::stdout().lock())
}
