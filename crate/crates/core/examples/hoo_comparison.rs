//! HCT against plain HOO on both environments: per-step regret, tree size,
//! and how often the played arm changes.

use hct_core::harness::{run_experiment, Algorithm, EnvKind, ExperimentConfig, Preset};

fn main() -> hct_core::Result<()> {
    let horizon = 100_000;
    let seeds: Vec<u64> = (0..5).collect();
    println!("{:<12} {:<12} {:>10} {:>10} {:>10}", "env", "algorithm", "R_n / n", "nodes", "switches");
    for env in EnvKind::ALL {
        let hct = if env == EnvKind::GarlandIid { Algorithm::HctIid } else { Algorithm::HctGamma };
        for algorithm in [hct, Algorithm::Hoo] {
            let cfg = ExperimentConfig::new(algorithm, env, horizon, seeds.clone())
                .with_preset(Preset::Tuned)
                .with_estimated_gamma();
            let out = run_experiment(&cfg)?;
            let last = out.rows.last().unwrap();
            println!(
                "{:<12} {:<12} {:>10.5} {:>10.0} {:>10.0}",
                env.label(),
                algorithm.label(),
                last.per_step_regret_mean,
                last.nodes_mean,
                last.switches_mean
            );
        }
    }
    Ok(())
}
