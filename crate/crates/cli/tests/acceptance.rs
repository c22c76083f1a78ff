//! The acceptance suite. Every criterion prints one PASS/FAIL line with the
//! worst error, the tolerance and the wall time against its budget, and the
//! process fails if any criterion does.
//!
//! This target has its own `main` so the lines appear on every run, and the
//! criteria run one after another so each timing budget measures one
//! criterion alone.

use std::process::ExitCode;

use fock_oplab::config::DEFAULT_SEED;
use fock_oplab::verify::{criterion, CRITERIA};

fn main() -> ExitCode {
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    println!("\nrunning {CRITERIA} acceptance criteria (seed {DEFAULT_SEED})");
    let mut failed = Vec::new();
    for id in 1..=CRITERIA {
        let tag = format!("criterion_{id:02}");
        if !filter.is_empty() && !filter.iter().any(|f| tag.contains(f.as_str())) {
            continue;
        }
        let outcome = criterion(id, DEFAULT_SEED);
        println!("{}", outcome.line());
        for note in outcome.notes.iter().skip(1).take(9) {
            println!("    {note}");
        }
        if !outcome.passed {
            failed.push(id);
        }
    }
    if failed.is_empty() {
        println!("acceptance result: ok");
        ExitCode::SUCCESS
    } else {
        println!("acceptance result: FAILED criteria {failed:?}");
        ExitCode::FAILURE
    }
}
