//! Plain HOO on the same covering tree, reported as "HOO (plain)".
//!
//! Every step walks the max-`B` path down to a leaf, pulls its representative
//! once and expands it straight away. Each node on the path folds the reward
//! into its statistics and gets
//! `U = μ̂ + √(scale·2·ln t / T) + ν₁ρ^h`, after which `B` is recomputed
//! bottom-up along the path. Leaves are always unpulled, so after `n` steps
//! the tree holds `n + 2` leaves and `2n + 3` nodes in total, unless a leaf
//! reaches the resolution of `f64` and can no longer be split.

use std::collections::BTreeMap;
use std::time::Instant;

use crate::cover_tree::CoverTree;
use crate::environments::Environment;
use crate::error::{Error, Result};
use crate::harness::metrics::{checkpoints, full_series, MetricsRecorder, RunMetrics};
use crate::hct::checked_reward;
use crate::partition::{Cell, GeometryParams};
use crate::seeding::run_rng;

pub const HOO_LABEL: &str = "hoo";
pub const HOO_DISPLAY_NAME: &str = "HOO (plain)";

#[derive(Debug, Clone, PartialEq)]
pub struct HooConfig {
    pub geometry: GeometryParams,
    pub horizon: u64,
    pub bound_scale: f64,
    pub full_series: bool,
}

impl HooConfig {
    pub fn new(horizon: u64) -> Self {
        Self { geometry: GeometryParams::default(), horizon, bound_scale: 1.0, full_series: false }
    }

    pub fn validate(&self) -> Result<()> {
        self.geometry.validate()?;
        if self.horizon == 0 {
            return Err(Error::Config("horizon must be at least 1".into()));
        }
        if !(self.bound_scale > 0.0 && self.bound_scale.is_finite()) {
            return Err(Error::Config(format!("bound scale = {} must be positive", self.bound_scale)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct HooRun {
    pub metrics: RunMetrics,
    pub tree: CoverTree,
}

pub fn run_hoo<E: Environment + ?Sized>(cfg: &HooConfig, env: &mut E, seed: u64) -> Result<HooRun> {
    cfg.validate()?;
    let mut rng = run_rng(seed);
    env.reset(&mut rng);
    let f_star = env.optimum().f_star;
    let GeometryParams { nu1, rho, .. } = cfg.geometry;

    let started = Instant::now();
    let mut tree = CoverTree::new();
    let mut recorder = MetricsRecorder::new(
        f_star,
        if cfg.full_series { full_series(cfg.horizon) } else { checkpoints(cfg.horizon) },
    );
    let mut episode_counts = BTreeMap::new();

    for t in 1..=cfg.horizon {
        let (leaf, path) = tree.descend(|_, _| true);
        let arm = Cell::from_index(leaf).representative();
        let reward = checked_reward(arm, env.pull(arm, &mut rng))?;
        tree.record_path_reward(&path, reward)?;
        match tree.grow(leaf, t) {
            // at floating point resolution the leaf stays a leaf and is simply re-pulled
            Ok(()) | Err(Error::DegenerateCell(_)) => {}
            Err(e) => return Err(e),
        }
        recorder.on_pull(leaf, reward, tree.len(), tree.depth());
        *episode_counts.entry(leaf).or_insert(0u64) += 1;

        let log_t = (t as f64).ln();
        for &idx in &path {
            let s = tree.get(idx).expect("path nodes are in the tree");
            let radius = (cfg.bound_scale * 2.0 * log_t / s.count as f64).sqrt();
            let upper = s.mean + radius + nu1 * rho.powi(idx.depth as i32);
            tree.set_upper(idx, upper)?;
        }
        tree.update_b(&path, leaf)?;
    }
    let wall_time = started.elapsed().as_secs_f64();

    let metrics = recorder.finish(HOO_LABEL, env.name(), seed, episode_counts, wall_time);
    Ok(HooRun { metrics, tree })
}
