//! Reward processes on the arm space `[0, 1]`.
//!
//! Every reward is a Bernoulli draw, so rewards lie in `{0, 1}` and their
//! mean is exactly the function value. [`GarlandIid`] draws independently
//! at the pulled arm; [`GarlandMdp`] keeps a state that drifts towards the
//! pulled arm and pays out at the state instead.

use std::f64::consts::PI;
use std::sync::OnceLock;

use rand::{Rng, RngCore};

/// A reward-generating process. `mean_reward` is oracle access for regret
/// accounting and is never shown to a learner.
pub trait Environment {
    fn pull(&mut self, arm: f64, rng: &mut dyn RngCore) -> f64;

    /// Long-run mean reward of persistently pulling `arm`.
    fn mean_reward(&self, arm: f64) -> f64;

    /// Resets internal state, drawing any random initial condition from `rng`.
    fn reset(&mut self, rng: &mut dyn RngCore);

    fn optimum(&self) -> Optimum;

    fn name(&self) -> &'static str;
}

/// `f(x) = x(1 − x)(4 − √|sin 60x|)`, with many local maxima on `[0, 1]`.
pub fn garland(x: f64) -> f64 {
    x * (1.0 - x) * (4.0 - abs_sin_60(x).sqrt())
}

/// `|sin 60x|` with the argument reduced against a two-word `π`, so that it
/// stays accurate near the zeros where the square root magnifies error.
fn abs_sin_60(x: f64) -> f64 {
    const PI_LO: f64 = 1.224_646_799_147_353_2e-16;
    let p = 60.0 * x;
    let p_err = 60f64.mul_add(x, -p);
    let k = (p / PI).round();
    let kpi = k * PI;
    let kpi_err = k.mul_add(PI, -kpi);
    let r = (p - kpi) + (p_err - kpi_err - k * PI_LO);
    r.sin().abs()
}

fn bernoulli(p: f64, rng: &mut dyn RngCore) -> f64 {
    if rng.gen::<f64>() < p {
        1.0
    } else {
        0.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Optimum {
    pub x_star: f64,
    pub f_star: f64,
}

/// Maximises `f` on `[0, 1]`: a uniform scan over `grid_points + 1` points,
/// then ternary shrinking of the bracket around the best grid point until it
/// is narrower than `1e-12`.
pub fn scan_optimum<F: Fn(f64) -> f64>(f: F, grid_points: usize) -> Optimum {
    let step = 1.0 / grid_points as f64;
    let mut best = (0.0, f(0.0));
    for k in 1..=grid_points {
        let x = k as f64 * step;
        let y = f(x);
        if y > best.1 {
            best = (x, y);
        }
    }
    let (mut lo, mut hi) = ((best.0 - step).max(0.0), (best.0 + step).min(1.0));
    while hi - lo >= 1e-12 {
        let m1 = lo + (hi - lo) / 3.0;
        let m2 = hi - (hi - lo) / 3.0;
        if f(m1) < f(m2) {
            lo = m1;
        } else {
            hi = m2;
        }
    }
    let mid = 0.5 * (lo + hi);
    let candidate = Optimum { x_star: mid, f_star: f(mid) };
    if candidate.f_star >= best.1 {
        candidate
    } else {
        Optimum { x_star: best.0, f_star: best.1 }
    }
}

/// Maximiser of [`garland`], computed once from a 10⁶-point scan.
///
/// The maximum sits on a zero of `sin 60x`, where the square root makes `f`
/// so steep that no `f64` input gets within `1e-8` of the peak. The scan
/// result is therefore snapped to that zero and `f*` is the supremum
/// `4x*(1 − x*)`.
pub fn optimum_oracle() -> Optimum {
    static CACHE: OnceLock<Optimum> = OnceLock::new();
    *CACHE.get_or_init(|| {
        let scanned = scan_optimum(garland, 1_000_000);
        let k = (60.0 * scanned.x_star / PI).round();
        let x = k * PI / 60.0;
        Optimum { x_star: x, f_star: (4.0 * x * (1.0 - x)).max(scanned.f_star) }
    })
}

/// Iid Bernoulli rewards with mean `garland(x)`.
#[derive(Debug, Clone, Default)]
pub struct GarlandIid;

impl GarlandIid {
    pub fn new() -> Self {
        Self
    }
}

impl Environment for GarlandIid {
    fn pull(&mut self, arm: f64, rng: &mut dyn RngCore) -> f64 {
        bernoulli(garland(arm), rng)
    }

    fn mean_reward(&self, arm: f64) -> f64 {
        garland(arm)
    }

    fn reset(&mut self, _rng: &mut dyn RngCore) {}

    fn optimum(&self) -> Optimum {
        optimum_oracle()
    }

    fn name(&self) -> &'static str {
        "garland-iid"
    }
}

/// Continuous-state process whose state moves towards the chosen action:
/// `s ← (1 − β)s + βx`, after which the reward is Bernoulli(`garland(s)`).
///
/// Viewed as policy search, the arm is the policy parameter `θ` and the
/// average reward of running `θ` forever is `garland(θ)`; see
/// [`GarlandMdp::average_reward`].
#[derive(Debug, Clone)]
pub struct GarlandMdp {
    state: f64,
    beta: f64,
}

impl Default for GarlandMdp {
    fn default() -> Self {
        Self::new(0.2)
    }
}

impl GarlandMdp {
    pub fn new(beta: f64) -> Self {
        assert!(beta > 0.0 && beta <= 1.0, "beta must lie in (0, 1]");
        Self { state: 0.5, beta }
    }

    pub fn with_state(mut self, state: f64) -> Self {
        assert!((0.0..=1.0).contains(&state));
        self.state = state;
        self
    }

    pub fn state(&self) -> f64 {
        self.state
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn transition(&mut self, action: f64) {
        self.state = (1.0 - self.beta) * self.state + self.beta * action;
    }

    /// `μ(θ)`: the time-average reward of running policy `θ` forever.
    pub fn average_reward(&self, theta: f64) -> f64 {
        self.mean_reward(theta)
    }

    /// `Σ_{t=1}^{horizon} (garland(s_t) − garland(x))` along the deterministic
    /// state path obtained by holding `x` from the current state. This is the
    /// exact expected cumulative deviation of the rewards.
    pub fn mean_gap_sum(&self, x: f64, horizon: usize) -> f64 {
        let mut env = self.clone();
        let fx = garland(x);
        (0..horizon)
            .map(|_| {
                env.transition(x);
                garland(env.state) - fx
            })
            .sum()
    }
}

impl Environment for GarlandMdp {
    fn pull(&mut self, arm: f64, rng: &mut dyn RngCore) -> f64 {
        self.transition(arm);
        bernoulli(garland(self.state), rng)
    }

    fn mean_reward(&self, arm: f64) -> f64 {
        garland(arm)
    }

    fn reset(&mut self, rng: &mut dyn RngCore) {
        self.state = rng.gen::<f64>();
    }

    fn optimum(&self) -> Optimum {
        optimum_oracle()
    }

    fn name(&self) -> &'static str {
        "garland-mdp"
    }
}

/// Monte Carlo estimate of the mixing constant `Γ` at arm `x`: for each of
/// `starts` freshly reset copies of `env`, the mean over `reps` replays of
/// `Σ_{s=1}^{horizon} (r_s − f(x))` while pulling `x`; returns the largest
/// absolute mean.
pub fn mixing_diagnostic<E: Environment + Clone>(
    env: &E,
    x: f64,
    horizon: usize,
    reps: usize,
    starts: usize,
    rng: &mut dyn RngCore,
) -> f64 {
    let fx = env.mean_reward(x);
    let mut worst = 0.0f64;
    for _ in 0..starts.max(1) {
        let mut start = env.clone();
        start.reset(rng);
        let mut total = 0.0;
        for _ in 0..reps.max(1) {
            let mut e = start.clone();
            total += (0..horizon).map(|_| e.pull(x, rng) - fx).sum::<f64>();
        }
        worst = worst.max((total / reps.max(1) as f64).abs());
    }
    worst
}

/// Setup-time estimate of `Γ`: the largest [`mixing_diagnostic`] over the
/// arms `0, 0.1, …, 1`.
pub fn estimate_gamma<E: Environment + Clone>(env: &E, rng: &mut dyn RngCore) -> f64 {
    (0..=10)
        .map(|k| mixing_diagnostic(env, k as f64 / 10.0, 100, 200, 8, rng))
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seeding::run_rng;
    use approx::assert_relative_eq;

    #[test]
    #[allow(clippy::excessive_precision)]
    fn garland_values() {
        assert_eq!(garland(0.0), 0.0);
        assert_eq!(garland(1.0), 0.0);
        // 40-digit evaluations of the formula at the same binary64 inputs
        let frozen = [
            (0.5, 0.751_500_550_290_742_37),
            (PI / 6.0, 0.997_772_376_520_003_55),
            (0.3, 0.658_015_007_259_854_14),
            (0.123456, 0.330_088_106_287_154_12),
            (0.9, 0.292_723_025_516_168_55),
            (0.25, 0.598_799_200_132_659_22),
        ];
        for (x, y) in frozen {
            assert_relative_eq!(garland(x), y, max_relative = 1e-9);
        }
        let x = PI / 6.0;
        assert_relative_eq!(garland(x), 4.0 * x * (1.0 - x), max_relative = 1e-7);
    }

    #[test]
    fn reduced_sine_agrees_with_naive_away_from_zeros() {
        for k in 0..1000 {
            let x = (k as f64 + 0.5) / 1000.0;
            let naive = x * (1.0 - x) * (4.0 - (60.0 * x).sin().abs().sqrt());
            if (60.0 * x).sin().abs() > 1e-3 {
                assert_relative_eq!(garland(x), naive, max_relative = 1e-12);
            }
        }
    }

    #[test]
    fn garland_stays_in_unit_interval() {
        for k in 0..=100_000 {
            let y = garland(k as f64 / 100_000.0);
            assert!((0.0..=1.0).contains(&y));
        }
    }

    #[test]
    fn optimum_is_the_sine_zero_near_one_half() {
        let opt = optimum_oracle();
        let x = PI / 6.0;
        assert!((opt.x_star - x).abs() < 1e-9, "x* = {}", opt.x_star);
        assert_relative_eq!(opt.f_star, 4.0 * x * (1.0 - x), max_relative = 1e-9);
        for k in 0..=1_000_000 {
            let x = k as f64 / 1_000_000.0;
            assert!(garland(x) <= opt.f_star);
        }
    }

    #[test]
    fn zero_mean_arm_never_pays() {
        let mut env = GarlandIid::new();
        let mut rng = run_rng(1);
        assert!((0..1000).all(|_| env.pull(0.0, &mut rng) == 0.0));
    }

    #[test]
    fn iid_sample_mean_concentrates() {
        let mut env = GarlandIid::new();
        let mut rng = run_rng(2);
        let n = 100_000;
        let mean = (0..n).map(|_| env.pull(0.5, &mut rng)).sum::<f64>() / n as f64;
        assert!((mean - garland(0.5)).abs() < 0.005, "mean {mean}");
    }

    #[test]
    fn iid_variance_is_bernoulli() {
        let mut env = GarlandIid::new();
        let mut rng = run_rng(3);
        let n = 200_000;
        let xs: Vec<f64> = (0..n).map(|_| env.pull(0.3, &mut rng)).collect();
        let m = xs.iter().sum::<f64>() / n as f64;
        let var = xs.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / (n - 1) as f64;
        let p = garland(0.3);
        assert!((var - p * (1.0 - p)).abs() < 0.005, "var {var}");
    }

    #[test]
    fn hoeffding_frequency_check() {
        let (n, reps, delta) = (200usize, 1000usize, 0.1f64);
        let eps = ((2.0 / delta).ln() / (2.0 * n as f64)).sqrt();
        let mut env = GarlandIid::new();
        let mut rng = run_rng(4);
        let x = 0.37;
        let violations = (0..reps)
            .filter(|_| {
                let m = (0..n).map(|_| env.pull(x, &mut rng)).sum::<f64>() / n as f64;
                (m - garland(x)).abs() > eps
            })
            .count();
        assert!(violations as f64 / reps as f64 <= delta, "{violations} violations");
    }

    #[test]
    fn mdp_transition() {
        let mut env = GarlandMdp::new(0.2).with_state(0.5);
        env.transition(1.0);
        assert_relative_eq!(env.state(), 0.6, max_relative = 1e-12);

        let mut env = GarlandMdp::new(0.2).with_state(0.1);
        for t in 1..=60 {
            env.transition(0.7);
            let expected = 0.8f64.powi(t) * 0.6;
            assert_relative_eq!((env.state() - 0.7).abs(), expected, max_relative = 1e-9, epsilon = 1e-15);
        }
    }

    #[test]
    fn mdp_pull_uses_post_transition_state() {
        let mut env = GarlandMdp::new(1.0).with_state(0.9);
        let mut rng = run_rng(5);
        // β = 1 jumps straight to the arm, so arm 0 always yields the zero-mean state
        assert!((0..200).all(|_| env.pull(0.0, &mut rng) == 0.0));
    }

    #[test]
    fn mdp_time_average_forgets_start_state() {
        // shared uniforms across start states isolate the transient
        let horizon = 10_000;
        for k in 0..10 {
            let x = 0.05 + 0.1 * k as f64;
            let averages: Vec<f64> = [0.0, 0.25, 0.5, 0.75, 1.0]
                .iter()
                .map(|&s0| {
                    let mut env = GarlandMdp::new(0.2).with_state(s0);
                    let mut rng = run_rng(100 + k);
                    (0..horizon).map(|_| env.pull(x, &mut rng)).sum::<f64>() / horizon as f64
                })
                .collect();
            let spread = averages.iter().cloned().fold(f64::MIN, f64::max)
                - averages.iter().cloned().fold(f64::MAX, f64::min);
            assert!(spread <= 0.02, "arm {x}: {averages:?}");
        }
    }

    #[test]
    fn mdp_mean_gap_is_bounded() {
        // at the cusp x* the partial sums still converge, only more slowly
        let x = optimum_oracle().x_star;
        for &s0 in &[0.0, 0.3, 1.0] {
            let env = GarlandMdp::new(0.2).with_state(s0);
            let sums: Vec<f64> = [100, 1_000, 100_000].iter().map(|&h| env.mean_gap_sum(x, h)).collect();
            assert!(sums.iter().all(|s| s.abs() < 20.0), "s0 = {s0}: {sums:?}");
            // the state settles within an ulp of x*, and the cusp turns that ulp
            // into a per-step gap near 1e-8
            assert!((sums[1] - sums[2]).abs() < 5e-3, "s0 = {s0}: {sums:?}");
        }
        // away from the cusp the tail beyond 50 steps is negligible
        for &s0 in &[0.0, 0.6, 1.0] {
            let env = GarlandMdp::new(0.2).with_state(s0);
            let (short, long) = (env.mean_gap_sum(0.25, 50), env.mean_gap_sum(0.25, 100_000));
            assert!((short - long).abs() < 1e-3, "s0 = {s0}: {short} vs {long}");
        }
    }

    #[test]
    fn iid_mixing_estimate_vanishes() {
        let mut rng = run_rng(6);
        let coarse = mixing_diagnostic(&GarlandIid::new(), 0.4, 50, 100, 3, &mut rng);
        let fine = mixing_diagnostic(&GarlandIid::new(), 0.4, 50, 10_000, 3, &mut rng);
        assert!(fine < 0.1, "fine = {fine}");
        assert!(fine < coarse + 0.05);
    }

    #[test]
    fn mdp_mixing_estimate_matches_exact_gap() {
        let mut rng = run_rng(7);
        let env = GarlandMdp::new(0.2).with_state(0.0);
        // a reset draws the start state, so compare against the worst exact gap
        let est = mixing_diagnostic(&env, 0.25, 80, 2000, 20, &mut rng);
        let worst = (0..=200)
            .map(|k| GarlandMdp::new(0.2).with_state(k as f64 / 200.0).mean_gap_sum(0.25, 80).abs())
            .fold(0.0, f64::max);
        assert!(est <= worst + 0.5, "est {est} worst {worst}");
        assert!(est > 0.0);
    }
}
