//! Policy search on the garland MDP: the arm is a policy parameter, and each
//! pull moves the state towards it. HCT-Γ keeps a policy for whole episodes,
//! so the state has time to settle before its reward is trusted.

use hct_core::environments::{estimate_gamma, GarlandMdp};
use hct_core::harness::{TUNED_C, TUNED_NU1};
use hct_core::hct::{self, EpisodeEnd, HctConfig};
use hct_core::partition::Cell;
use hct_core::seeding::run_rng;

fn main() -> hct_core::Result<()> {
    let env = GarlandMdp::new(0.2);
    let gamma = estimate_gamma(&env, &mut run_rng(99));
    println!("estimated mixing constant: {gamma:.3}");
    println!("average reward of theta = 0.25: {:.4}", env.average_reward(0.25));

    let mut cfg = HctConfig::gamma(100_000, gamma);
    cfg.geometry.nu1 = TUNED_NU1;
    cfg.geometry.nu2 = TUNED_NU1;
    cfg.c = Some(TUNED_C);

    let run = hct::run(&cfg, &mut env.clone(), 1)?;
    let completed = run.episodes.iter().filter(|e| e.end == EpisodeEnd::Completed).count();
    let interrupted = run.episodes.iter().filter(|e| e.end == EpisodeEnd::Interrupted).count();
    println!("episodes: {} ({completed} completed, {interrupted} interrupted)", run.episodes.len());
    println!("switches: {} over {} pulls", run.metrics.switch_count, run.metrics.horizon);
    println!("final per-step regret: {:.5}", run.metrics.final_per_step_regret());

    let (best, _) = run.tree.iter().max_by_key(|(_, s)| s.count).unwrap();
    let theta = Cell::from_index(*best).representative();
    println!("most played policy: theta = {theta:.6}, average reward {:.6}", env.average_reward(theta));
    Ok(())
}
