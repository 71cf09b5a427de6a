//! Prints one PASS/FAIL line per acceptance criterion and exits nonzero if
//! any criterion fails. `NILGRADE_SEED` and `NILGRADE_TOL` override the defaults.

use std::process::ExitCode;

use nilgrade_core::acceptance::{run_one, AcceptanceConfig, TITLES};

fn main() -> ExitCode {
    let mut cfg = AcceptanceConfig::default();
    if let Some(seed) = std::env::var("NILGRADE_SEED").ok().and_then(|s| s.parse().ok()) {
        cfg.seed = seed;
    }
    if let Some(tol) = std::env::var("NILGRADE_TOL").ok().and_then(|s| s.parse().ok()) {
        cfg.tol = tol;
    }
    println!("acceptance suite: seed {}, tolerance {:e}", cfg.seed, cfg.tol);
    let mut failed = 0;
    for id in 1..=TITLES.len() {
        let outcome = run_one(&cfg, id);
        failed += usize::from(!outcome.passed);
        println!("{outcome}");
    }
    println!("{} of {} criteria passed", TITLES.len() - failed, TITLES.len());
    if failed == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}
