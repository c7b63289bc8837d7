//! Acceptance criteria 1-9, one line each. Runs without the libtest harness
//! so the lines come out in order; exits nonzero if any criterion fails.

use orbitstrata::selftest;
use orbitstrata::RunConfig;

fn main() {
    let only: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let results = selftest::run(&RunConfig::default(), &only, |r| println!("{r}"));
    let failed = results.iter().filter(|r| !r.passed).count();
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
