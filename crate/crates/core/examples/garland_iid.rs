//! Optimise the garland function from noisy Bernoulli feedback with HCT-iid.
//!
//! cargo run --release --example garland_iid -- [horizon] [seed]

use hct_core::environments::{garland, GarlandIid};
use hct_core::harness::{TUNED_C, TUNED_NU1};
use hct_core::hct::{self, HctConfig};
use hct_core::partition::Cell;

fn main() -> hct_core::Result<()> {
    let mut args = std::env::args().skip(1);
    let horizon = args.next().and_then(|a| a.parse().ok()).unwrap_or(100_000);
    let seed = args.next().and_then(|a| a.parse().ok()).unwrap_or(0);

    let mut cfg = HctConfig::iid(horizon);
    cfg.geometry.nu1 = TUNED_NU1;
    cfg.geometry.nu2 = TUNED_NU1;
    cfg.c = Some(TUNED_C);

    let mut env = GarlandIid::new();
    let run = hct::run(&cfg, &mut env, seed)?;
    let m = &run.metrics;

    println!("{:>8}  {:>10}  {:>6}  {:>5}", "t", "R_t / t", "nodes", "depth");
    for (k, t) in m.checkpoints.iter().enumerate() {
        println!("{t:>8}  {:>10.5}  {:>6}  {:>5}", m.regret_series[k], m.node_count_series[k], m.depth_series[k]);
    }

    // the most pulled node is where the algorithm settled
    let (best, stats) = run.tree.iter().max_by_key(|(_, s)| s.count).unwrap();
    let x = Cell::from_index(*best).representative();
    println!("most pulled cell {best}: x = {x:.6}, f(x) = {:.6}, pulls = {}", garland(x), stats.count);
    println!("switches: {}, refreshes: {}", m.switch_count, run.refreshes.len());
    Ok(())
}
