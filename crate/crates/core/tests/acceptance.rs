//! Runs without the libtest harness so the checklist is always printed.

use coxeter_pd::reproduce::{run, DEFAULT_SEED};

fn main() {
    let mut failed = Vec::new();
    for id in 1..=10 {
        let started = std::time::Instant::now();
        let report = run(id, DEFAULT_SEED).expect("known criterion");
        println!("{}  [{:.1}s]", report.summary_line(), started.elapsed().as_secs_f64());
        for c in report.failures() {
            println!("    FAIL {}: {}", c.name, c.detail);
        }
        if !report.pass {
            failed.push(id);
        }
    }
    if !failed.is_empty() {
        eprintln!("failing criteria: {failed:?}");
        std::process::exit(1);
    }
}
