//! One line per acceptance criterion; exits non-zero if any fails.

use std::process::ExitCode;

use arctic::verify::{run_criterion, VerifyOptions};

fn main() -> ExitCode {
    let opts = VerifyOptions::default();
    let mut failed = Vec::new();
    for id in 1..=9 {
        let c = run_criterion(id, &opts);
        println!("{} {} {}: {} ({:.2} s)", if c.passed { "PASS" } else { "FAIL" }, c.id, c.name, c.detail, c.seconds);
        if !c.passed {
            failed.push(c.id);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all 9 criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failing criteria {failed:?}");
        ExitCode::FAILURE
    }
}
