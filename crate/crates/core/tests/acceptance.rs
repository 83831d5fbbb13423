//! Runs every acceptance criterion and prints one line per criterion.
//! Uses its own harness so the report is shown on every `cargo test` run.

use std::process::ExitCode;

use vacuum_kinetics::acceptance;

fn main() -> ExitCode {
    let outcomes = acceptance::run_all();
    for o in &outcomes {
        println!("{o}");
    }
    let failed: Vec<u8> = outcomes.iter().filter(|o| !o.passed).map(|o| o.id).collect();
    println!("{} of {} criteria passed", outcomes.len() - failed.len(), outcomes.len());
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        eprintln!("failed criteria: {failed:?}");
        ExitCode::FAILURE
    }
}
