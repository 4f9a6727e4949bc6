//! Experiment runner: seeded replicas of one algorithm on one environment,
//! aggregated per checkpoint and written as CSV.
//!
//! Replicas run in parallel, but results are merged in ascending seed order,
//! so the output depends only on the configuration and the seed set.

pub mod csv;
pub mod metrics;
pub mod sweep;
pub mod verify;

use std::fmt;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::str::FromStr;

use rayon::prelude::*;

use crate::baselines::{run_hoo, HooConfig};
use crate::environments::{estimate_gamma, Environment, GarlandIid, GarlandMdp};
use crate::error::{Error, Result};
use crate::hct::{self, HctConfig, Variant};
use crate::partition::GeometryParams;
use crate::seeding::run_rng;

use self::csv::CsvRow;
use self::metrics::RunMetrics;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    HctIid,
    HctGamma,
    Hoo,
}

impl Algorithm {
    pub const ALL: [Algorithm; 3] = [Algorithm::HctIid, Algorithm::HctGamma, Algorithm::Hoo];

    pub fn label(self) -> &'static str {
        match self {
            Algorithm::HctIid => "hct-iid",
            Algorithm::HctGamma => "hct-gamma",
            Algorithm::Hoo => "hoo",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.label() == s)
            .ok_or_else(|| Error::Config(format!("unknown algorithm '{s}' (hct-iid, hct-gamma, hoo)")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EnvKind {
    GarlandIid,
    GarlandMdp,
}

impl EnvKind {
    pub const ALL: [EnvKind; 2] = [EnvKind::GarlandIid, EnvKind::GarlandMdp];

    pub fn label(self) -> &'static str {
        match self {
            EnvKind::GarlandIid => "garland-iid",
            EnvKind::GarlandMdp => "garland-mdp",
        }
    }

    pub fn build(self, mdp_beta: f64) -> Box<dyn Environment + Send> {
        match self {
            EnvKind::GarlandIid => Box::new(GarlandIid::new()),
            EnvKind::GarlandMdp => Box::new(GarlandMdp::new(mdp_beta)),
        }
    }

    /// Mixing constant estimated by simulation; exactly 0 for iid rewards.
    pub fn estimate_gamma(self, mdp_beta: f64) -> f64 {
        match self {
            EnvKind::GarlandIid => 0.0,
            EnvKind::GarlandMdp => estimate_gamma(&GarlandMdp::new(mdp_beta), &mut run_rng(u64::MAX)),
        }
    }
}

impl fmt::Display for EnvKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for EnvKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        EnvKind::ALL
            .into_iter()
            .find(|e| e.label() == s)
            .ok_or_else(|| Error::Config(format!("unknown environment '{s}' (garland-iid, garland-mdp)")))
    }
}

/// Parameter set used when none is given explicitly.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    /// The constants the analysis prescribes. Very conservative: the tree
    /// barely grows within 10⁵ steps.
    Theory,
    /// Hand-tuned on garland with the sweep: `ν₁ = 1`, `ρ = 2^{-1/2}`, `c = 0.3`.
    Tuned,
}

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "theory" => Ok(Preset::Theory),
            "tuned" => Ok(Preset::Tuned),
            _ => Err(Error::Config(format!("unknown preset '{s}' (theory, tuned)"))),
        }
    }
}

pub const TUNED_NU1: f64 = 1.0;
pub const TUNED_C: f64 = 0.3;

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub algorithm: Algorithm,
    pub environment: EnvKind,
    pub horizon: u64,
    pub seeds: Vec<u64>,
    pub geometry: GeometryParams,
    pub delta: f64,
    pub gamma_mix: Option<f64>,
    pub c: Option<f64>,
    pub c1: Option<f64>,
    pub bound_scale: f64,
    pub mdp_beta: f64,
    pub full_series: bool,
    /// Record wall time; without it the time column is `nan` and the CSV is
    /// byte-for-byte reproducible.
    pub timing: bool,
    pub out: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn new(algorithm: Algorithm, environment: EnvKind, horizon: u64, seeds: Vec<u64>) -> Self {
        Self {
            algorithm,
            environment,
            horizon,
            seeds,
            geometry: GeometryParams::default(),
            delta: 0.05,
            gamma_mix: None,
            c: None,
            c1: None,
            bound_scale: 1.0,
            mdp_beta: 0.2,
            full_series: false,
            timing: false,
            out: None,
        }
    }

    pub fn with_preset(mut self, preset: Preset) -> Self {
        if preset == Preset::Tuned {
            self.geometry.nu1 = TUNED_NU1;
            self.geometry.nu2 = TUNED_NU1;
            if self.algorithm != Algorithm::Hoo {
                self.c = Some(TUNED_C);
            }
        }
        self
    }

    /// Fills in `Γ` from [`EnvKind::estimate_gamma`] if it is missing.
    pub fn with_estimated_gamma(mut self) -> Self {
        if self.gamma_mix.is_none() {
            self.gamma_mix = Some(self.environment.estimate_gamma(self.mdp_beta));
        }
        self
    }

    pub fn hct_config(&self) -> HctConfig {
        let variant = if self.algorithm == Algorithm::HctGamma { Variant::Gamma } else { Variant::Iid };
        HctConfig {
            variant,
            geometry: self.geometry,
            delta: self.delta,
            gamma_mix: self.gamma_mix,
            c: self.c,
            c1: self.c1,
            bound_scale: self.bound_scale,
            horizon: self.horizon,
            record_steps: false,
            full_series: self.full_series,
            strict_depth_guard: false,
        }
    }

    pub fn hoo_config(&self) -> HooConfig {
        HooConfig {
            geometry: self.geometry,
            horizon: self.horizon,
            bound_scale: self.bound_scale,
            full_series: self.full_series,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.seeds.is_empty() {
            return Err(Error::Config("at least one seed is required".into()));
        }
        if !(self.mdp_beta > 0.0 && self.mdp_beta <= 1.0) {
            return Err(Error::Config(format!("mdp beta = {} not in (0, 1]", self.mdp_beta)));
        }
        match self.algorithm {
            Algorithm::Hoo => self.hoo_config().validate(),
            _ => self.hct_config().validate(),
        }
    }
}

/// One replica.
pub fn run_single(cfg: &ExperimentConfig, seed: u64) -> Result<RunMetrics> {
    let mut env = cfg.environment.build(cfg.mdp_beta);
    match cfg.algorithm {
        Algorithm::Hoo => Ok(run_hoo(&cfg.hoo_config(), env.as_mut(), seed)?.metrics),
        _ => Ok(hct::run(&cfg.hct_config(), env.as_mut(), seed)?.metrics),
    }
}

#[derive(Debug, Clone)]
pub struct ExperimentOutput {
    /// Per-seed metrics in ascending seed order.
    pub runs: Vec<RunMetrics>,
    pub rows: Vec<CsvRow>,
}

impl ExperimentOutput {
    pub fn final_regret_mean(&self) -> f64 {
        self.rows.last().map_or(f64::NAN, |r| r.per_step_regret_mean)
    }

    pub fn final_regret_std(&self) -> f64 {
        self.rows.last().map_or(f64::NAN, |r| r.per_step_regret_std)
    }

    pub fn final_nodes_mean(&self) -> f64 {
        self.rows.last().map_or(f64::NAN, |r| r.nodes_mean)
    }
}

/// Runs every seed (duplicates dropped), aggregates, and writes the CSV if
/// `cfg.out` is set.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentOutput> {
    cfg.validate()?;
    let mut seeds = cfg.seeds.clone();
    seeds.sort_unstable();
    seeds.dedup();

    let runs = seeds.par_iter().map(|&s| run_single(cfg, s)).collect::<Result<Vec<_>>>()?;
    let rows = aggregate(&runs, cfg.timing);
    if let Some(path) = &cfg.out {
        let write = || -> std::io::Result<()> {
            let mut w = BufWriter::new(File::create(path)?);
            csv::write_rows(&mut w, &rows)?;
            w.flush()
        };
        write().map_err(|e| std::io::Error::new(e.kind(), format!("{}: {e}", path.display())))?;
    }
    Ok(ExperimentOutput { runs, rows })
}

fn mean_std(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

/// Per-checkpoint mean and sample standard deviation over runs, taken in the
/// order given. All runs must share the checkpoint grid.
pub fn aggregate(runs: &[RunMetrics], timing: bool) -> Vec<CsvRow> {
    let Some(first) = runs.first() else { return Vec::new() };
    let n = runs.len() as f64;
    first
        .checkpoints
        .iter()
        .enumerate()
        .map(|(k, &t)| {
            let regrets: Vec<f64> = runs.iter().map(|r| r.regret_series[k]).collect();
            let (mean, std) = mean_std(&regrets);
            CsvRow {
                checkpoint_t: t,
                per_step_regret_mean: mean,
                per_step_regret_std: std,
                nodes_mean: runs.iter().map(|r| r.node_count_series[k] as f64).sum::<f64>() / n,
                depth_max: runs.iter().map(|r| r.depth_series[k]).max().unwrap_or(0),
                switches_mean: runs.iter().map(|r| r.switch_series[k] as f64).sum::<f64>() / n,
                wall_time_mean_s: if timing {
                    runs.iter().map(|r| r.time_series[k]).sum::<f64>() / n
                } else {
                    f64::NAN
                },
            }
        })
        .collect()
}
