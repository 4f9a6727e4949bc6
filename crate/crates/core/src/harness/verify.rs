//! Property-check suites run at desk scale. Each check reports the measured
//! value next to the bound it is held against; failures are report entries,
//! never panics.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rayon::prelude::*;

use crate::baselines::{run_hoo, HooConfig};
use crate::cover_tree::{confidence_log, BoundParams};
use crate::error::{Error, Result};
use crate::harness::metrics::checkpoints;
use crate::harness::{Algorithm, EnvKind, ExperimentConfig, Preset};
use crate::hct::{self, EpisodeEnd, HctRun};
use crate::partition::{Cell, CellIndex, GeometryParams};
use crate::seeding::run_rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Depth,
    Episodes,
    Concentration,
    Space,
    Partition,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Depth, Suite::Episodes, Suite::Concentration, Suite::Space, Suite::Partition];

    pub fn label(self) -> &'static str {
        match self {
            Suite::Depth => "depth",
            Suite::Episodes => "episodes",
            Suite::Concentration => "concentration",
            Suite::Space => "space",
            Suite::Partition => "partition",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.label() == s)
            .ok_or_else(|| Error::Config(format!("unknown suite '{s}'")))
    }
}

/// `measured` is compared against `bound`; `passed` says whether it held.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub measured: f64,
    pub bound: f64,
    pub passed: bool,
}

impl Check {
    /// Passes when `measured <= bound`.
    pub fn at_most(name: impl Into<String>, measured: f64, bound: f64) -> Self {
        Self { name: name.into(), measured, bound, passed: measured <= bound }
    }

    pub fn at_least(name: impl Into<String>, measured: f64, bound: f64) -> Self {
        Self { name: name.into(), measured, bound, passed: measured >= bound }
    }

    pub fn equal(name: impl Into<String>, measured: f64, expected: f64) -> Self {
        Self { name: name.into(), measured, bound: expected, passed: measured == expected }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{tag} {}: measured {} vs bound {}", self.name, self.measured, self.bound)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub suite: Suite,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "suite {}", self.suite.label())?;
        for c in &self.checks {
            writeln!(f, "  {c}")?;
        }
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{verdict} {} ({} checks)", self.suite.label(), self.checks.len())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyOptions {
    pub horizon: u64,
    pub seeds: Vec<u64>,
    pub concentration_reps: usize,
    pub concentration_horizon: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self { horizon: 100_000, seeds: (0..5).collect(), concentration_reps: 1000, concentration_horizon: 10_000 }
    }
}

pub fn verify(suite: Suite, opts: &VerifyOptions) -> Result<Report> {
    if opts.horizon == 0 || opts.seeds.is_empty() {
        return Err(Error::Config("verify needs a positive horizon and at least one seed".into()));
    }
    let checks = match suite {
        Suite::Depth => depth_suite(opts)?,
        Suite::Episodes => episode_suite(opts)?,
        Suite::Concentration => concentration_suite(opts)?,
        Suite::Space => space_suite(opts)?,
        Suite::Partition => partition_suite(opts)?,
    };
    Ok(Report { suite, checks })
}

const PRESETS: [(Preset, &str); 2] = [(Preset::Theory, "theory"), (Preset::Tuned, "tuned")];

fn hct_runs(algorithm: Algorithm, env: EnvKind, preset: Preset, opts: &VerifyOptions) -> Result<Vec<HctRun>> {
    Ok(hct_runs_with_params(algorithm, env, preset, opts)?.0)
}

fn hct_runs_with_params(
    algorithm: Algorithm,
    env: EnvKind,
    preset: Preset,
    opts: &VerifyOptions,
) -> Result<(Vec<HctRun>, BoundParams)> {
    let cfg = ExperimentConfig::new(algorithm, env, opts.horizon, opts.seeds.clone())
        .with_preset(preset)
        .with_estimated_gamma();
    cfg.validate()?;
    let hct_cfg = cfg.hct_config();
    let runs = opts
        .seeds
        .par_iter()
        .map(|&s| hct::run(&hct_cfg, cfg.environment.build(cfg.mdp_beta).as_mut(), s))
        .collect::<Result<_>>()?;
    Ok((runs, hct_cfg.bound_params()?))
}

/// Tree depth after every expansion against `H_max(t)`.
fn depth_suite(opts: &VerifyOptions) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for (preset, pname) in PRESETS {
        for algorithm in [Algorithm::HctIid, Algorithm::HctGamma] {
            for env in EnvKind::ALL {
                let (runs, params) = hct_runs_with_params(algorithm, env, preset, opts)?;
                let mut worst: Option<hct::DepthCheck> = None;
                let mut expansions = 0;
                for run in &runs {
                    for c in &run.depth_checks {
                        expansions += 1;
                        if worst.is_none_or(|w| c.margin() < w.margin()) {
                            worst = Some(*c);
                        }
                    }
                }
                let name = format!("{pname} {algorithm} on {env}: tightest of {expansions} expansions");
                out.push(match worst {
                    Some(w) => Check::at_most(format!("{name} (t = {})", w.t), w.depth as f64, w.h_max),
                    None => Check::at_most(name, 1.0, 1.0),
                });
                let deepest = runs.iter().map(|r| r.tree.depth()).max().unwrap_or(1);
                out.push(Check::at_most(
                    format!("{pname} {algorithm} on {env}: final depth vs H_max(n)"),
                    deepest as f64,
                    hct::h_max(opts.horizon, &params),
                ));
            }
        }
    }
    Ok(out)
}

/// Episode counts, doubling, and interruptions of the `Γ` variant on the MDP.
fn episode_suite(opts: &VerifyOptions) -> Result<Vec<Check>> {
    let n = opts.horizon;
    let log_n = (n as f64).log2();
    let mut out = Vec::new();
    for (preset, pname) in PRESETS {
        let runs = hct_runs(Algorithm::HctGamma, EnvKind::GarlandMdp, preset, opts)?;

        // the node whose count sits closest to its bound
        let mut worst = (f64::NEG_INFINITY, 0.0, 0.0);
        for run in &runs {
            for (&idx, &k) in &run.metrics.episode_counts {
                let t_count = run.tree.get(idx).map_or(0, |s| s.count);
                let bound = (4.0 * t_count as f64).log2() + log_n;
                if k as f64 - bound > worst.0 {
                    worst = (k as f64 - bound, k as f64, bound);
                }
            }
        }
        out.push(Check::at_most(
            format!("{pname} hct-gamma: K ≤ log2(4T) + log2(n) at the tightest node"),
            worst.1,
            worst.2,
        ));

        let mut not_doubled = 0u64;
        let mut completed = 0u64;
        let mut max_interrupted = 0u64;
        for run in &runs {
            let mut interrupted = 0;
            for ep in &run.episodes {
                match ep.end {
                    EpisodeEnd::Completed => {
                        completed += 1;
                        if ep.end_count != (2 * ep.start_count).max(1) {
                            not_doubled += 1;
                        }
                    }
                    EpisodeEnd::Interrupted => interrupted += 1,
                    EpisodeEnd::Truncated => {}
                }
            }
            max_interrupted = max_interrupted.max(interrupted);
        }
        out.push(Check::equal(
            format!("{pname} hct-gamma: completed episodes ({completed}) that did not exactly double"),
            not_doubled as f64,
            0.0,
        ));
        out.push(Check::at_most(
            format!("{pname} hct-gamma: interrupted episodes per run"),
            max_interrupted as f64,
            log_n + 1.0,
        ));
    }
    Ok(out)
}

/// One arm with Bernoulli(0.7) rewards pulled at every step, so `T = t`.
/// Returns the fraction of (repetition, checkpoint) pairs outside the
/// radius `c·√(log(1/δ̃(t⁺)) / T)` and the fraction of repetitions with at
/// least one such checkpoint.
pub fn concentration_violations(c: f64, c1: f64, delta: f64, reps: usize, horizon: u64) -> (f64, f64) {
    const MEAN: f64 = 0.7;
    let params = BoundParams { nu1: 1.0, rho: 0.5, c, c1, delta, bound_scale: 1.0 };
    let cps = checkpoints(horizon);
    let per_rep: Vec<usize> = (0..reps as u64)
        .into_par_iter()
        .map(|rep| {
            let mut rng = run_rng(rep);
            let mut sum = 0.0;
            let mut bad = 0;
            let mut next = 0;
            for t in 1..=horizon {
                sum += if rng.gen::<f64>() < MEAN { 1.0 } else { 0.0 };
                if cps[next] == t {
                    let radius = c * (confidence_log(t, &params) / t as f64).sqrt();
                    if (sum / t as f64 - MEAN).abs() > radius {
                        bad += 1;
                    }
                    next += 1;
                }
            }
            bad
        })
        .collect();
    let pairs = (reps * cps.len()) as f64;
    let frac_pairs = per_rep.iter().sum::<usize>() as f64 / pairs;
    let frac_reps = per_rep.iter().filter(|&&b| b > 0).count() as f64 / reps as f64;
    (frac_pairs, frac_reps)
}

/// Only the analysed constants promise coverage; the tuned `c` does not.
fn concentration_suite(opts: &VerifyOptions) -> Result<Vec<Check>> {
    let cfg = ExperimentConfig::new(Algorithm::HctIid, EnvKind::GarlandIid, 1, vec![0]);
    let (c, c1) = cfg.hct_config().constants()?;
    let (pairs, reps) = concentration_violations(c, c1, cfg.delta, opts.concentration_reps, opts.concentration_horizon);
    Ok(vec![
        Check::at_most(format!("c = {c:.4}: violating checkpoint fraction"), pairs, 0.10),
        Check::at_most(format!("c = {c:.4}: repetitions with any violation"), reps, 0.10),
    ])
}

/// Tree size of tuned HCT-iid against plain HOO on garland-iid.
fn space_suite(opts: &VerifyOptions) -> Result<Vec<Check>> {
    let n = opts.horizon;
    let runs = hct_runs(Algorithm::HctIid, EnvKind::GarlandIid, Preset::Tuned, opts)?;
    let k = runs.len() as f64;
    let nodes_n = runs.iter().map(|r| r.tree.len() as f64).sum::<f64>() / k;
    let cps = &runs[0].metrics.checkpoints;
    let earlier = cps.iter().rev().copied().find(|&t| t * 10 <= n).unwrap_or(cps[0]);
    let nodes_early = runs.iter().map(|r| r.metrics.nodes_at(earlier).unwrap_or(0) as f64).sum::<f64>() / k;

    let mut out = vec![
        Check::at_most(format!("tuned hct-iid: mean nodes at n = {n}"), nodes_n, 1000.0),
        Check::at_most(format!("tuned hct-iid: nodes({n}) / nodes({earlier})"), nodes_n / nodes_early, 3.0),
    ];

    let hoo_cfg = HooConfig::new(n);
    let hoo: Vec<(usize, usize)> = opts
        .seeds
        .par_iter()
        .map(|&s| {
            run_hoo(&hoo_cfg, EnvKind::GarlandIid.build(0.2).as_mut(), s).map(|r| (r.tree.leaf_count(), r.tree.len()))
        })
        .collect::<Result<_>>()?;
    let worst_leaf_gap = hoo.iter().map(|&(l, _)| (l as f64 - (n + 2) as f64).abs()).fold(0.0, f64::max);
    let worst_total_gap = hoo.iter().map(|&(_, t)| (t as f64 - (2 * n + 3) as f64).abs()).fold(0.0, f64::max);
    let hoo_mean = hoo.iter().map(|&(_, t)| t as f64).sum::<f64>() / hoo.len() as f64;
    out.push(Check::equal("hoo: largest |leaves - (n + 2)| over seeds", worst_leaf_gap, 0.0));
    out.push(Check::equal("hoo: largest |nodes - (2n + 3)| over seeds", worst_total_gap, 0.0));
    out.push(Check::at_least("hoo nodes / tuned hct-iid nodes", hoo_mean / nodes_n, 10.0));
    Ok(out)
}

/// Dyadic tiling, children covering parents, and the diameter bound.
fn partition_suite(opts: &VerifyOptions) -> Result<Vec<Check>> {
    const LEVELS: u32 = 16;
    let mut tiling_errors = 0u64;
    for h in 0..=LEVELS {
        let mut prev = 0.0;
        for i in 1..=(1u64 << h) {
            let c = Cell::from_index(CellIndex::new(h, i)?);
            if c.lo != prev || c.lo >= c.hi || !c.contains(c.representative()) {
                tiling_errors += 1;
            }
            prev = c.hi;
        }
        if prev != 1.0 {
            tiling_errors += 1;
        }
    }

    let mut worst_ratio = 0.0f64;
    for geometry in [GeometryParams::default(), GeometryParams { nu1: 1.0, nu2: 1.0, ..GeometryParams::default() }] {
        for h in 0..=40 {
            let c = Cell::from_index(CellIndex::new(h, 1)?);
            worst_ratio = worst_ratio.max(geometry.cell_diameter(&c) / geometry.diameter_bound(h));
        }
    }

    let runs = hct_runs(
        Algorithm::HctIid,
        EnvKind::GarlandIid,
        Preset::Tuned,
        &VerifyOptions { horizon: opts.horizon.min(20_000), ..opts.clone() },
    )?;
    let mut cover_errors = 0u64;
    for run in &runs {
        for (&idx, s) in run.tree.iter() {
            if s.is_leaf {
                continue;
            }
            let (l, r) = idx.children();
            let (p, lc, rc) = (Cell::from_index(idx), Cell::from_index(l), Cell::from_index(r));
            let present = run.tree.get(l).is_some() && run.tree.get(r).is_some();
            if !present || lc.lo != p.lo || lc.hi != rc.lo || rc.hi != p.hi {
                cover_errors += 1;
            }
        }
    }

    Ok(vec![
        Check::equal(format!("tiling errors for depths 0..={LEVELS}"), tiling_errors as f64, 0.0),
        Check::at_most("largest cell diameter / ν₁ρ^h", worst_ratio, 1.0 + 1e-12),
        Check::equal("internal nodes whose children do not tile them", cover_errors as f64, 0.0),
    ])
}
