//! Runs every property-check suite at a reduced horizon and prints the reports.

use hct_core::harness::verify::{verify, Suite, VerifyOptions};

fn main() -> hct_core::Result<()> {
    let opts = VerifyOptions { horizon: 20_000, seeds: vec![0, 1, 2], ..VerifyOptions::default() };
    let mut all = true;
    for suite in Suite::ALL {
        let report = verify(suite, &opts)?;
        all &= report.passed();
        println!("{report}\n");
    }
    println!("{}", if all { "all suites passed" } else { "some checks failed" });
    Ok(())
}
