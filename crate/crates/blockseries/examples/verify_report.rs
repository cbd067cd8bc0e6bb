//! Running the verification suite from library code.
//!
//! The same checks behind `blockseries verify` are callable directly: pick
//! a suite, set the term budget and tolerance scale, and inspect the
//! records. Budgets below the default 1e6 rescale the pinned term counts
//! proportionally; tolerances scale the same way so a quick smoke run
//! still distinguishes real breakage from a deliberately small budget.

use blockseries::verify::{run_suite, Suite, VerifyConfig};

fn main() {
    let cfg = VerifyConfig {
        terms: 50_000,
        tolerance_scale: 100.0,
        ..VerifyConfig::default()
    };

    for suite in [Suite::Digits, Suite::Special, Suite::Base] {
        let report = run_suite(suite, &cfg);
        println!(
            "suite {suite}: {} passed, {} failed in {:.2}s",
            report.passed, report.failed, report.elapsed_seconds
        );
        for record in report.records.iter().filter(|r| !r.pass) {
            println!("  FAIL {}: |{} - {}| > {:.1e}", record.id, record.lhs, record.rhs, record.tolerance);
        }
    }

    // Full run at default budget, summarized.
    let report = run_suite(Suite::All, &VerifyConfig::default());
    println!(
        "\nfull suite: {}/{} checks passed in {:.1}s",
        report.passed,
        report.records.len(),
        report.elapsed_seconds
    );
}
