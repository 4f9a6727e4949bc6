//! The HCT run loop.
//!
//! Each outer iteration refreshes all bounds when `t` reaches the doubling
//! time `t⁺`, walks the optimistic path, pulls the selected arm, updates the
//! node's statistics and `U`, propagates `B` back up the path and expands the
//! node once it has been pulled `τ_h(t)` times.
//!
//! [`Variant::Iid`] pulls once per iteration. [`Variant::Gamma`] keeps pulling
//! the same arm for an episode that doubles the node's pull count, cut short
//! only when `t` reaches `t⁺`. A node that has never been pulled gets a
//! one-pull episode.

use std::collections::BTreeMap;
use std::time::Instant;

use rand::RngCore;

use crate::cover_tree::{self, tau, u_value, BoundParams, CoverTree};
use crate::environments::Environment;
use crate::error::{Error, Result};
use crate::harness::metrics::{checkpoints, full_series, MetricsRecorder, RunMetrics};
use crate::partition::{Cell, CellIndex, GeometryParams};
use crate::seeding::run_rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    /// One pull per selection; for independent rewards.
    Iid,
    /// Doubling episodes; for correlated rewards with mixing constant `Γ`.
    Gamma,
}

impl Variant {
    pub fn label(self) -> &'static str {
        match self {
            Variant::Iid => "hct-iid",
            Variant::Gamma => "hct-gamma",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HctConfig {
    pub variant: Variant,
    pub geometry: GeometryParams,
    /// Global confidence `δ ∈ (0, 1)`.
    pub delta: f64,
    /// Mixing constant `Γ ≥ 0`; required by the `Gamma` variant.
    pub gamma_mix: Option<f64>,
    /// Overrides the variant's default confidence multiplier `c`.
    pub c: Option<f64>,
    /// Overrides the variant's default `c₁`.
    pub c1: Option<f64>,
    pub bound_scale: f64,
    pub horizon: u64,
    /// Keep a [`StepRecord`] for every pull.
    pub record_steps: bool,
    /// Sample the metrics at every step instead of at log-spaced checkpoints.
    pub full_series: bool,
    /// Fail the run on a depth-bound violation instead of only recording it.
    pub strict_depth_guard: bool,
}

impl HctConfig {
    pub fn iid(horizon: u64) -> Self {
        Self {
            variant: Variant::Iid,
            geometry: GeometryParams::default(),
            delta: 0.05,
            gamma_mix: None,
            c: None,
            c1: None,
            bound_scale: 1.0,
            horizon,
            record_steps: false,
            full_series: false,
            strict_depth_guard: cfg!(debug_assertions),
        }
    }

    pub fn gamma(horizon: u64, gamma_mix: f64) -> Self {
        Self { variant: Variant::Gamma, gamma_mix: Some(gamma_mix), ..Self::iid(horizon) }
    }

    pub fn validate(&self) -> Result<()> {
        self.geometry.validate()?;
        if !(self.delta > 0.0 && self.delta < 1.0) {
            return Err(Error::Config(format!("delta = {} not in (0, 1)", self.delta)));
        }
        if !(self.bound_scale > 0.0 && self.bound_scale.is_finite()) {
            return Err(Error::Config(format!("bound scale = {} must be positive", self.bound_scale)));
        }
        if self.horizon == 0 {
            return Err(Error::Config("horizon must be at least 1".into()));
        }
        if self.variant == Variant::Gamma && self.gamma_mix.is_none() {
            return Err(Error::Config("hct-gamma needs the mixing constant gamma".into()));
        }
        for (name, v) in [("c", self.c), ("c1", self.c1)] {
            if let Some(v) = v {
                if !(v > 0.0 && v.is_finite()) {
                    return Err(Error::Config(format!("{name} = {v} must be positive")));
                }
            }
        }
        Ok(())
    }

    /// `(c, c₁)` after applying overrides.
    pub fn constants(&self) -> Result<(f64, f64)> {
        let (c, c1) = default_constants(self.variant, &self.geometry, self.gamma_mix.unwrap_or(0.0))?;
        Ok((self.c.unwrap_or(c), self.c1.unwrap_or(c1)))
    }

    pub fn bound_params(&self) -> Result<BoundParams> {
        self.validate()?;
        let (c, c1) = self.constants()?;
        Ok(BoundParams {
            nu1: self.geometry.nu1,
            rho: self.geometry.rho,
            c,
            c1,
            delta: self.delta,
            bound_scale: self.bound_scale,
        })
    }
}

/// Default `(c, c₁)`:
/// iid uses `c = 2√(1/(1−ρ))`, `c₁ = (ρ/(3ν₁))^{1/8}`;
/// `Γ` uses `c = 3(3Γ+1)√(1/(1−ρ))`, `c₁ = (ρ/(4ν₁))^{1/9}`.
pub fn default_constants(variant: Variant, geometry: &GeometryParams, gamma_mix: f64) -> Result<(f64, f64)> {
    let GeometryParams { nu1, rho, .. } = *geometry;
    if !(rho > 0.0 && rho < 1.0) {
        return Err(Error::Domain(format!("rho = {rho} not in (0, 1)")));
    }
    if nu1.is_nan() || nu1 <= 0.0 {
        return Err(Error::Domain(format!("nu1 = {nu1} must be positive")));
    }
    let root = (1.0 / (1.0 - rho)).sqrt();
    match variant {
        Variant::Iid => Ok((2.0 * root, (rho / (3.0 * nu1)).powf(1.0 / 8.0))),
        Variant::Gamma => {
            if !(gamma_mix >= 0.0 && gamma_mix.is_finite()) {
                return Err(Error::Domain(format!("gamma = {gamma_mix} must be non-negative")));
            }
            Ok((3.0 * (3.0 * gamma_mix + 1.0) * root, (rho / (4.0 * nu1)).powf(1.0 / 9.0)))
        }
    }
}

/// Depth bound `H_max(t) = log(t·ν₁² / (2(cρ)²)) / (1 − ρ)`, clamped below at 1
/// (the initial tree already has depth 1).
pub fn h_max(t: u64, params: &BoundParams) -> f64 {
    let cr = params.c * params.rho;
    let raw = (t as f64 * params.nu1 * params.nu1 / (2.0 * cr * cr)).ln() / (1.0 - params.rho);
    raw.max(1.0)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DepthCheck {
    /// Number of pulls made when the check ran.
    pub t: u64,
    pub depth: u32,
    pub h_max: f64,
}

impl DepthCheck {
    pub fn margin(&self) -> f64 {
        self.h_max - self.depth as f64
    }

    pub fn holds(&self) -> bool {
        self.depth as f64 <= self.h_max
    }
}

pub fn depth_guard(tree: &CoverTree, t: u64, params: &BoundParams) -> DepthCheck {
    DepthCheck { t, depth: tree.depth(), h_max: h_max(t, params) }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepRecord {
    pub t: u64,
    pub node: CellIndex,
    pub reward: f64,
    pub episode_id: u64,
    /// First pull after a refresh phase.
    pub refreshed: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EpisodeEnd {
    /// The pull count doubled (or, on a fresh node, reached one).
    Completed,
    /// Cut short because `t` reached `t⁺`.
    Interrupted,
    /// Cut short because the pull budget ran out.
    Truncated,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Episode {
    pub id: u64,
    pub node: CellIndex,
    /// Time step of the first pull.
    pub start_t: u64,
    pub start_count: u64,
    pub end_count: u64,
    pub end: EpisodeEnd,
}

#[derive(Debug, Clone)]
pub struct HctRun {
    pub metrics: RunMetrics,
    pub tree: CoverTree,
    pub episodes: Vec<Episode>,
    /// Empty unless `record_steps` was set.
    pub steps: Vec<StepRecord>,
    /// One entry per expansion.
    pub depth_checks: Vec<DepthCheck>,
    /// Time steps at which a refresh ran.
    pub refreshes: Vec<u64>,
}

impl HctRun {
    pub fn depth_violations(&self) -> impl Iterator<Item = &DepthCheck> {
        self.depth_checks.iter().filter(|c| !c.holds())
    }
}

pub(crate) fn checked_reward(arm: f64, reward: f64) -> Result<f64> {
    if (0.0..=1.0).contains(&reward) {
        Ok(reward)
    } else {
        Err(Error::RewardOutOfRange { arm, reward })
    }
}

/// Runs HCT for `cfg.horizon` pulls using the seed's own random stream.
pub fn run<E: Environment + ?Sized>(cfg: &HctConfig, env: &mut E, seed: u64) -> Result<HctRun> {
    let mut rng = run_rng(seed);
    run_with_rng(cfg, env, seed, &mut rng)
}

pub fn run_with_rng<E: Environment + ?Sized>(
    cfg: &HctConfig,
    env: &mut E,
    seed: u64,
    rng: &mut dyn RngCore,
) -> Result<HctRun> {
    let params = cfg.bound_params()?;
    let n = cfg.horizon;
    env.reset(rng);
    let f_star = env.optimum().f_star;

    let started = Instant::now();
    let mut tree = CoverTree::new();
    let mut recorder = MetricsRecorder::new(f_star, if cfg.full_series { full_series(n) } else { checkpoints(n) });
    let mut episodes = Vec::new();
    let mut episode_counts: BTreeMap<CellIndex, u64> = BTreeMap::new();
    let mut steps = Vec::new();
    let mut depth_checks = Vec::new();
    let mut refreshes = Vec::new();

    // `t` is the index of the next pull; `next_refresh` holds t⁺ for the current phase.
    let mut t: u64 = 1;
    let mut next_refresh: u64 = 1;

    while t <= n {
        let mut refreshed = false;
        if t == next_refresh {
            tree.refresh(t, &params);
            next_refresh = cover_tree::t_plus(t)?;
            refreshes.push(t);
            refreshed = true;
        }

        let (node, path) = tree.opt_traverse(t, &params);
        let arm = Cell::from_index(node).representative();
        let start_count = tree.get(node).map_or(0, |s| s.count);
        let episode_id = episodes.len() as u64;
        let start_t = t;

        let end = loop {
            let reward = checked_reward(arm, env.pull(arm, rng))?;
            tree.record_pull(node, reward)?;
            recorder.on_pull(node, reward, tree.len(), tree.depth());
            if cfg.record_steps {
                steps.push(StepRecord { t, node, reward, episode_id, refreshed });
                refreshed = false;
            }
            t += 1;

            let count = tree.get(node).map_or(0, |s| s.count);
            let doubled = count >= 2 * start_count;
            if cfg.variant == Variant::Iid {
                break EpisodeEnd::Completed;
            }
            if doubled {
                break EpisodeEnd::Completed;
            }
            if t > n {
                break EpisodeEnd::Truncated;
            }
            if t >= next_refresh {
                break EpisodeEnd::Interrupted;
            }
        };

        let stats = tree.get(node).expect("selected node is in the tree").clone();
        episodes.push(Episode { id: episode_id, node, start_t, start_count, end_count: stats.count, end });
        *episode_counts.entry(node).or_default() += 1;

        tree.set_upper(node, u_value(&stats, node.depth, t, &params))?;
        tree.update_b(&path, node)?;

        if stats.is_leaf && stats.count as f64 >= tau(node.depth, t, &params) {
            tree.expand(node, t, &params)?;
            let check = depth_guard(&tree, t - 1, &params);
            if !check.holds() && cfg.strict_depth_guard {
                return Err(Error::DepthBound { t: check.t, depth: check.depth, h_max: check.h_max });
            }
            depth_checks.push(check);
        }
    }
    let wall_time = started.elapsed().as_secs_f64();

    debug_assert_eq!(tree.pull_total(), n);
    let metrics = recorder.finish(cfg.variant.label(), env.name(), seed, episode_counts, wall_time);
    Ok(HctRun { metrics, tree, episodes, steps, depth_checks, refreshes })
}
