//! Plugging in a reward process of your own: a two-peak function with
//! Bernoulli noise, optimised with HCT-iid.

use hct_core::environments::{scan_optimum, Environment, Optimum};
use hct_core::hct::{self, HctConfig};
use hct_core::partition::GeometryParams;
use rand::{Rng, RngCore};

struct TwoPeaks;

fn two_peaks(x: f64) -> f64 {
    let a = 0.9 * (-((x - 0.2) / 0.1).powi(2)).exp();
    let b = 0.7 * (-((x - 0.75) / 0.2).powi(2)).exp();
    a.max(b)
}

impl Environment for TwoPeaks {
    fn pull(&mut self, arm: f64, rng: &mut dyn RngCore) -> f64 {
        if rng.gen::<f64>() < two_peaks(arm) {
            1.0
        } else {
            0.0
        }
    }

    fn mean_reward(&self, arm: f64) -> f64 {
        two_peaks(arm)
    }

    fn reset(&mut self, _rng: &mut dyn RngCore) {}

    fn optimum(&self) -> Optimum {
        scan_optimum(two_peaks, 100_000)
    }

    fn name(&self) -> &'static str {
        "two-peaks"
    }
}

fn main() -> hct_core::Result<()> {
    let mut cfg = HctConfig::iid(50_000);
    // smooth peaks: a Lipschitz dissimilarity, halving per level
    cfg.geometry = GeometryParams { nu1: 2.0, rho: 0.5, nu2: 2.0, smoothness_exponent: 1.0 };
    cfg.c = Some(0.3);

    let opt = TwoPeaks.optimum();
    let run = hct::run(&cfg, &mut TwoPeaks, 5)?;
    println!("optimum: f({:.4}) = {:.4}", opt.x_star, opt.f_star);
    println!("per-step regret: {:.5}, nodes: {}", run.metrics.final_per_step_regret(), run.tree.len());
    Ok(())
}
