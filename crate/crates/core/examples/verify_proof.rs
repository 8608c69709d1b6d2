//! Checks the shipped scheme and certificate library end to end and prints
//! the summary the `verify` command would print.

use signcert::data;
use signcert::scheme::{classify_pairs, verify_all, verify_leg_data};

fn main() -> signcert::Result<()> {
    let scheme = data::table1()?;
    let certs = data::certificates()?;
    let classification = classify_pairs(scheme.n)?;

    let report = verify_all(&scheme, &certs, &classification);
    let leg_failures = verify_leg_data(&classification, &data::leg_certificates()?, &data::witnesses()?);
    let cases: usize = report.tuples.iter().map(|t| t.cases.len()).sum();

    println!("verdict: {}", if report.passed() && leg_failures.is_empty() { "PASS" } else { "FAIL" });
    println!("{} tuples and twin pairs, {cases} cases, {} certificates", report.tuples.len(), certs.len());
    for f in report.failures.iter().chain(&leg_failures) {
        println!("  [{}] {}", f.check, f.detail);
    }
    Ok(())
}
