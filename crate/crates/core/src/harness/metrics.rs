//! Per-run time series sampled at logarithmic checkpoints.

use std::collections::BTreeMap;
use std::time::Instant;

use crate::partition::CellIndex;

/// `{10^k, 3·10^k} ∩ [1, horizon]` plus the horizon itself, ascending.
pub fn checkpoints(horizon: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 1u64;
    while p <= horizon {
        out.push(p);
        if let Some(q) = p.checked_mul(3).filter(|&q| q <= horizon) {
            out.push(q);
        }
        match p.checked_mul(10) {
            Some(next) => p = next,
            None => break,
        }
    }
    out.push(horizon);
    out.sort_unstable();
    out.dedup();
    out
}

/// Every step from 1 to `horizon`.
pub fn full_series(horizon: u64) -> Vec<u64> {
    (1..=horizon).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunMetrics {
    pub algorithm: String,
    pub environment: String,
    pub seed: u64,
    pub horizon: u64,
    pub checkpoints: Vec<u64>,
    /// Per-step regret `R_t / t` at each checkpoint.
    pub regret_series: Vec<f64>,
    pub node_count_series: Vec<usize>,
    pub depth_series: Vec<u32>,
    pub switch_series: Vec<u64>,
    /// Seconds since the recorder was created, at each checkpoint.
    pub time_series: Vec<f64>,
    pub max_depth: u32,
    pub switch_count: u64,
    /// Number of episodes in which each node was selected.
    pub episode_counts: BTreeMap<CellIndex, u64>,
    /// Seconds spent in the learning loop.
    pub wall_time: f64,
    /// `R_n = n·f* − Σ r_t`.
    pub final_regret: f64,
}

impl RunMetrics {
    pub fn final_per_step_regret(&self) -> f64 {
        self.final_regret / self.horizon as f64
    }

    /// Per-step regret at checkpoint `t`, if `t` is one.
    pub fn regret_at(&self, t: u64) -> Option<f64> {
        let k = self.checkpoints.binary_search(&t).ok()?;
        Some(self.regret_series[k])
    }

    pub fn nodes_at(&self, t: u64) -> Option<usize> {
        let k = self.checkpoints.binary_search(&t).ok()?;
        Some(self.node_count_series[k])
    }

    pub fn final_node_count(&self) -> usize {
        self.node_count_series.last().copied().unwrap_or(0)
    }
}

/// Accumulates rewards and tree size pull by pull.
#[derive(Debug, Clone)]
pub struct MetricsRecorder {
    f_star: f64,
    checkpoints: Vec<u64>,
    next: usize,
    t: u64,
    reward_sum: f64,
    last_node: Option<CellIndex>,
    switches: u64,
    max_depth: u32,
    regret_series: Vec<f64>,
    node_count_series: Vec<usize>,
    depth_series: Vec<u32>,
    switch_series: Vec<u64>,
    time_series: Vec<f64>,
    started: Instant,
}

impl MetricsRecorder {
    pub fn new(f_star: f64, checkpoints: Vec<u64>) -> Self {
        let n = checkpoints.len();
        Self {
            f_star,
            checkpoints,
            next: 0,
            t: 0,
            reward_sum: 0.0,
            last_node: None,
            switches: 0,
            max_depth: 0,
            regret_series: Vec::with_capacity(n),
            node_count_series: Vec::with_capacity(n),
            depth_series: Vec::with_capacity(n),
            switch_series: Vec::with_capacity(n),
            time_series: Vec::with_capacity(n),
            started: Instant::now(),
        }
    }

    pub fn pulls(&self) -> u64 {
        self.t
    }

    pub fn cumulative_regret(&self) -> f64 {
        self.t as f64 * self.f_star - self.reward_sum
    }

    /// Nodes have distinct representatives, so a change of node is a change of arm.
    pub fn on_pull(&mut self, node: CellIndex, reward: f64, nodes: usize, depth: u32) {
        self.t += 1;
        self.reward_sum += reward;
        if self.last_node.is_some_and(|prev| prev != node) {
            self.switches += 1;
        }
        self.last_node = Some(node);
        self.max_depth = self.max_depth.max(depth);
        if self.checkpoints.get(self.next) == Some(&self.t) {
            self.regret_series.push(self.cumulative_regret() / self.t as f64);
            self.node_count_series.push(nodes);
            self.depth_series.push(depth);
            self.switch_series.push(self.switches);
            self.time_series.push(self.started.elapsed().as_secs_f64());
            self.next += 1;
        }
    }

    pub fn finish(
        self,
        algorithm: &str,
        environment: &str,
        seed: u64,
        episode_counts: BTreeMap<CellIndex, u64>,
        wall_time: f64,
    ) -> RunMetrics {
        let final_regret = self.cumulative_regret();
        let mut checkpoints = self.checkpoints;
        checkpoints.truncate(self.regret_series.len());
        RunMetrics {
            algorithm: algorithm.to_string(),
            environment: environment.to_string(),
            seed,
            horizon: self.t,
            checkpoints,
            regret_series: self.regret_series,
            node_count_series: self.node_count_series,
            depth_series: self.depth_series,
            switch_series: self.switch_series,
            time_series: self.time_series,
            max_depth: self.max_depth,
            switch_count: self.switches,
            episode_counts,
            wall_time,
            final_regret,
        }
    }
}
