//! Estimates the mixing constant `Γ` of the garland MDP for a few speeds of
//! state movement, and shows the exact deviation sums it is built from.

use hct_core::environments::{estimate_gamma, mixing_diagnostic, GarlandIid, GarlandMdp};
use hct_core::seeding::run_rng;

fn main() {
    let mut rng = run_rng(0);
    println!("iid at x = 0.4: {:.3}", mixing_diagnostic(&GarlandIid::new(), 0.4, 100, 2_000, 4, &mut rng));
    for beta in [0.05, 0.2, 0.5, 1.0] {
        let env = GarlandMdp::new(beta);
        let worst_exact = [0.0, 1.0]
            .iter()
            .map(|&s0| env.clone().with_state(s0).mean_gap_sum(0.25, 1_000).abs())
            .fold(0.0, f64::max);
        println!("beta = {beta:<4}: estimated gamma {:.3}, exact gap sum at x = 0.25 from an end state {worst_exact:.3}",
            estimate_gamma(&env, &mut rng));
    }
}
