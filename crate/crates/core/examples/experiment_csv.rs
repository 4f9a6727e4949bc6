//! Seeded replicas aggregated into the CSV schema used for plotting.
//!
//! cargo run --release --example experiment_csv -- out.csv

use hct_core::harness::csv::HEADER;
use hct_core::harness::{run_experiment, Algorithm, EnvKind, ExperimentConfig, Preset};

fn main() -> hct_core::Result<()> {
    let out = std::env::args().nth(1).unwrap_or_else(|| "hct_iid.csv".into());
    let mut cfg = ExperimentConfig::new(Algorithm::HctIid, EnvKind::GarlandIid, 100_000, (0..10).collect())
        .with_preset(Preset::Tuned);
    cfg.timing = true;
    cfg.out = Some(out.clone().into());

    let result = run_experiment(&cfg)?;
    println!("{HEADER}");
    for row in &result.rows {
        println!("{}", row.to_line());
    }
    println!("wrote {out}");
    Ok(())
}
