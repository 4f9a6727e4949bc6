//! Incremental covering tree with the `U`/`B` bounds used by HCT and HOO.
//!
//! Nodes live in a flat map keyed by [`CellIndex`]; children and parents are
//! found by index arithmetic. `U` is the optimistic bound computed from a
//! node's own samples, `B` tightens it with the children:
//! `B = U` on leaves and `B = min(U, max(B_left, B_right))` otherwise.

use std::collections::BTreeMap;
use std::io::{self, Write};

use crate::error::{Error, Result};
use crate::harness::csv::format_float;
use crate::partition::{Cell, CellIndex};

/// Constants entering the confidence bounds and the expansion threshold.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundParams {
    pub nu1: f64,
    pub rho: f64,
    /// Confidence multiplier `c`.
    pub c: f64,
    /// Numerator constant `c₁` of `δ̃`.
    pub c1: f64,
    pub delta: f64,
    /// Multiplies the confidence radius only (not `ν₁ρ^h`, not `τ_h`).
    pub bound_scale: f64,
}

/// `δ̃(t) = min(c₁·δ / t, 1)`.
pub fn delta_tilde(t: u64, c1: f64, delta: f64) -> Result<f64> {
    if t == 0 {
        return Err(Error::Domain("delta_tilde is undefined at t = 0".into()));
    }
    Ok((c1 * delta / t as f64).min(1.0))
}

/// Next refresh time `t⁺ = 2^{⌊log₂ t⌋ + 1}`.
pub fn t_plus(t: u64) -> Result<u64> {
    if t == 0 {
        return Err(Error::Domain("t_plus is undefined at t = 0".into()));
    }
    let exp = 64 - t.leading_zeros();
    1u64.checked_shl(exp)
        .ok_or_else(|| Error::Domain(format!("t_plus({t}) overflows u64")))
}

/// `log(1/δ̃(t⁺))`, the confidence level in force at time `t`.
pub fn confidence_log(t: u64, params: &BoundParams) -> f64 {
    let tp = t_plus(t.max(1)).expect("t_plus overflow");
    let dt = delta_tilde(tp, params.c1, params.delta).expect("t_plus >= 2");
    -dt.ln()
}

/// Pull-count threshold `τ_h(t) = c²·log(1/δ̃(t⁺))·ρ^{-2h} / ν₁²`. Pinned to 1
/// at the root, which is never pulled.
pub fn tau(depth: u32, t: u64, params: &BoundParams) -> f64 {
    if depth == 0 {
        return 1.0;
    }
    params.c * params.c * confidence_log(t, params) * params.rho.powi(-2 * depth as i32)
        / (params.nu1 * params.nu1)
}

/// `U = μ̂ + ν₁ρ^h + scale·√(c²·log(1/δ̃(t⁺)) / T)`, `+∞` when unvisited.
pub fn u_value(stats: &NodeStats, depth: u32, t: u64, params: &BoundParams) -> f64 {
    if stats.count == 0 {
        return f64::INFINITY;
    }
    let radius = (params.c * params.c * confidence_log(t, params) / stats.count as f64).sqrt();
    stats.mean + params.nu1 * params.rho.powi(depth as i32) + params.bound_scale * radius
}

#[derive(Debug, Clone, PartialEq)]
pub struct NodeStats {
    /// Number of rewards folded into `mean`.
    pub count: u64,
    /// Running average; meaningless while `count == 0`.
    pub mean: f64,
    pub upper: f64,
    pub b_value: f64,
    pub is_leaf: bool,
    /// Time step at which the node was expanded.
    pub expanded_at: Option<u64>,
}

impl NodeStats {
    pub fn fresh() -> Self {
        Self {
            count: 0,
            mean: 0.0,
            upper: f64::INFINITY,
            b_value: f64::INFINITY,
            is_leaf: true,
            expanded_at: None,
        }
    }

    pub fn mean(&self) -> Option<f64> {
        (self.count > 0).then_some(self.mean)
    }

    /// Incremental form of the running average.
    pub fn empirical_update(&mut self, reward: f64) {
        self.count += 1;
        self.mean += (reward - self.mean) / self.count as f64;
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoverTree {
    nodes: BTreeMap<CellIndex, NodeStats>,
    depth: u32,
    pull_total: u64,
}

impl Default for CoverTree {
    fn default() -> Self {
        Self::new()
    }
}

impl CoverTree {
    /// `{(0,1), (1,1), (1,2)}` with infinite bounds on both children.
    pub fn new() -> Self {
        let mut nodes = BTreeMap::new();
        let root = NodeStats { is_leaf: false, expanded_at: Some(0), ..NodeStats::fresh() };
        nodes.insert(CellIndex::ROOT, root);
        let (l, r) = CellIndex::ROOT.children();
        nodes.insert(l, NodeStats::fresh());
        nodes.insert(r, NodeStats::fresh());
        Self { nodes, depth: 1, pull_total: 0 }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    pub fn pull_total(&self) -> u64 {
        self.pull_total
    }

    pub fn leaf_count(&self) -> usize {
        self.nodes.values().filter(|s| s.is_leaf).count()
    }

    pub fn get(&self, idx: CellIndex) -> Option<&NodeStats> {
        self.nodes.get(&idx)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&CellIndex, &NodeStats)> {
        self.nodes.iter()
    }

    fn stats(&self, idx: CellIndex) -> Result<&NodeStats> {
        self.nodes.get(&idx).ok_or_else(|| Error::Contract(format!("node {idx} not in tree")))
    }

    fn stats_mut(&mut self, idx: CellIndex) -> Result<&mut NodeStats> {
        self.nodes.get_mut(&idx).ok_or_else(|| Error::Contract(format!("node {idx} not in tree")))
    }

    /// Folds one environment reward into `idx` and counts it as a pull.
    pub fn record_pull(&mut self, idx: CellIndex, reward: f64) -> Result<()> {
        self.stats_mut(idx)?.empirical_update(reward);
        self.pull_total += 1;
        Ok(())
    }

    /// Folds a reward into `path` nodes' statistics (HOO-style subtree
    /// averages) and counts a single pull.
    pub(crate) fn record_path_reward(&mut self, path: &[CellIndex], reward: f64) -> Result<()> {
        for &idx in path {
            self.stats_mut(idx)?.empirical_update(reward);
        }
        self.pull_total += 1;
        Ok(())
    }

    pub fn set_upper(&mut self, idx: CellIndex, upper: f64) -> Result<()> {
        self.stats_mut(idx)?.upper = upper;
        Ok(())
    }

    /// `B` of a node from its own `U` and its children's current `B`.
    fn b_rule(&self, idx: CellIndex) -> Result<f64> {
        let s = self.stats(idx)?;
        if s.is_leaf {
            return Ok(s.upper);
        }
        let (l, r) = idx.children();
        let best_child = self.stats(l)?.b_value.max(self.stats(r)?.b_value);
        Ok(s.upper.min(best_child))
    }

    /// Sets `B` on `selected` and then on every ancestor in `path`, deepest first.
    pub fn update_b(&mut self, path: &[CellIndex], selected: CellIndex) -> Result<()> {
        self.check_path(path, selected)?;
        for &idx in path.iter().rev() {
            let b = self.b_rule(idx)?;
            self.stats_mut(idx)?.b_value = b;
        }
        Ok(())
    }

    fn check_path(&self, path: &[CellIndex], selected: CellIndex) -> Result<()> {
        let bad = |why: &str| Err(Error::Contract(format!("path to {selected}: {why}")));
        match (path.first(), path.last()) {
            (Some(&first), Some(&last)) if first == CellIndex::ROOT && last == selected => {}
            _ => return bad("must run from the root to the selected node"),
        }
        for w in path.windows(2) {
            if w[1].parent() != Some(w[0]) {
                return bad("consecutive entries are not parent and child");
            }
        }
        for &idx in path {
            self.stats(idx)?;
        }
        Ok(())
    }

    /// Recomputes every `U` at time `t`, then every `B` bottom-up.
    pub fn refresh(&mut self, t: u64, params: &BoundParams) {
        for (idx, s) in self.nodes.iter_mut() {
            s.upper = u_value(s, idx.depth, t, params);
        }
        self.refresh_b();
    }

    /// One backward sweep over depths `H(t), …, 0` applying the `B` rule.
    pub fn refresh_b(&mut self) {
        let keys: Vec<CellIndex> = self.nodes.keys().rev().copied().collect();
        for idx in keys {
            let b = self.b_rule(idx).expect("children of internal nodes are present");
            self.nodes.get_mut(&idx).expect("key from map").b_value = b;
        }
    }

    /// Walks down from the root towards the child with larger `B` (left on
    /// ties) while `keep_going` accepts the current internal node. Returns the
    /// stopping node and the full path including it.
    pub fn descend<F>(&self, mut keep_going: F) -> (CellIndex, Vec<CellIndex>)
    where
        F: FnMut(CellIndex, &NodeStats) -> bool,
    {
        let mut cur = CellIndex::ROOT;
        let mut path = vec![cur];
        loop {
            let s = &self.nodes[&cur];
            if s.is_leaf || !keep_going(cur, s) {
                break;
            }
            let (l, r) = cur.children();
            cur = if self.nodes[&l].b_value >= self.nodes[&r].b_value { l } else { r };
            path.push(cur);
        }
        (cur, path)
    }

    /// Optimistic traversal: descend while the node is internal and has
    /// `T ≥ τ_h(t)`. The root always passes, so it is never selected.
    pub fn opt_traverse(&self, t: u64, params: &BoundParams) -> (CellIndex, Vec<CellIndex>) {
        self.descend(|idx, s| idx.is_root() || s.count as f64 >= tau(idx.depth, t, params))
    }

    /// Adds both children of a leaf that has reached its threshold `τ_h(t)`.
    pub fn expand(&mut self, idx: CellIndex, t: u64, params: &BoundParams) -> Result<()> {
        let s = self.stats(idx)?;
        let threshold = tau(idx.depth, t, params);
        if s.count == 0 || (s.count as f64) < threshold {
            return Err(Error::Contract(format!(
                "cannot expand {idx}: T = {} below threshold {threshold:.3}",
                s.count
            )));
        }
        self.grow(idx, t)
    }

    /// Adds both children of a leaf unconditionally.
    pub(crate) fn grow(&mut self, idx: CellIndex, t: u64) -> Result<()> {
        if !self.stats(idx)?.is_leaf {
            return Err(Error::Contract(format!("cannot expand internal node {idx}")));
        }
        let (l, r) = Cell::from_index(idx).split()?;
        self.nodes.insert(l.index, NodeStats::fresh());
        self.nodes.insert(r.index, NodeStats::fresh());
        let s = self.stats_mut(idx)?;
        s.is_leaf = false;
        s.expanded_at = Some(t);
        self.depth = self.depth.max(idx.depth + 1);
        Ok(())
    }

    /// Checks the `B` rule on every node exactly (no tolerance).
    pub fn check_b_consistency(&self) -> Result<()> {
        for &idx in self.nodes.keys() {
            let expected = self.b_rule(idx)?;
            let stored = self.nodes[&idx].b_value;
            if stored != expected && !(stored.is_nan() && expected.is_nan()) {
                return Err(Error::Contract(format!("B of {idx} is {stored}, rule gives {expected}")));
            }
        }
        Ok(())
    }

    /// Writes `h,i,lo,hi,T,mu_hat,U,B,is_leaf` per node, preceded by a header.
    /// `+∞` is written as `inf`; `mu_hat` of an unvisited node as `nan`.
    pub fn write_snapshot<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "h,i,lo,hi,T,mu_hat,U,B,is_leaf")?;
        for (&idx, s) in &self.nodes {
            let cell = Cell::from_index(idx);
            writeln!(
                w,
                "{},{},{},{},{},{},{},{},{}",
                idx.depth,
                idx.index,
                format_float(cell.lo),
                format_float(cell.hi),
                s.count,
                format_float(s.mean().unwrap_or(f64::NAN)),
                format_float(s.upper),
                format_float(s.b_value),
                s.is_leaf,
            )?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    const SQRT8: f64 = 2.0 * std::f64::consts::SQRT_2;

    fn params(c1: f64, delta: f64) -> BoundParams {
        BoundParams { nu1: 1.0, rho: 0.5, c: SQRT8, c1, delta, bound_scale: 1.0 }
    }

    /// Chooses `c1·δ` so that `δ̃(t⁺) = target` for any `t` in `[2^k, 2^{k+1})`.
    fn params_with_delta_tilde(t: u64, target: f64) -> BoundParams {
        let tp = t_plus(t).unwrap() as f64;
        params(1.0, target * tp)
    }

    fn idx(h: u32, i: u64) -> CellIndex {
        CellIndex::new(h, i).unwrap()
    }

    #[test]
    fn delta_tilde_values() {
        assert_eq!(delta_tilde(3, 1.0, 0.9).unwrap(), 0.3);
        assert_eq!(delta_tilde(2, 4.0, 0.9).unwrap(), 1.0);
        assert_relative_eq!(delta_tilde(8, 0.8, 0.05).unwrap(), 0.005, max_relative = 1e-9);
        assert_relative_eq!(delta_tilde(100_000, 0.8, 0.05).unwrap(), 4e-7, max_relative = 1e-9);
        assert!(delta_tilde(0, 0.8, 0.05).is_err());
    }

    #[test]
    fn t_plus_values() {
        assert_eq!(t_plus(1).unwrap(), 2);
        assert_eq!(t_plus(5).unwrap(), 8);
        assert_eq!(t_plus(8).unwrap(), 16);
        assert!(t_plus(0).is_err());
        for t in 1..5000u64 {
            let tp = t_plus(t).unwrap();
            assert!(t < tp && tp <= 2 * t, "t = {t}");
            assert!(tp.is_power_of_two());
        }
    }

    #[test]
    fn tau_values() {
        let p = params_with_delta_tilde(8, 1.0);
        assert_eq!(tau(3, 8, &p), 0.0);

        let p = params_with_delta_tilde(8, 0.01);
        let oracle = 8.0 * 100f64.ln() * 16.0;
        assert_relative_eq!(tau(2, 8, &p), oracle, max_relative = 1e-9);
        assert_relative_eq!(tau(2, 8, &p), 589.45, max_relative = 1e-4);
        // the depth-0 formula value; the exported tau pins the root at 1
        let h0 = p.c * p.c * confidence_log(8, &p) / (p.nu1 * p.nu1);
        assert_relative_eq!(h0, 8.0 * 100f64.ln(), max_relative = 1e-9);
        assert_eq!(tau(0, 8, &p), 1.0);
    }

    #[test]
    fn u_value_values() {
        let fresh = NodeStats::fresh();
        assert_eq!(u_value(&fresh, 1, 10, &params(0.8, 0.05)), f64::INFINITY);

        let s = NodeStats { count: 100, mean: 0.5, ..NodeStats::fresh() };
        let p = params_with_delta_tilde(100, 0.005);
        let oracle = 0.5 + 0.5 + (8.0 * 200f64.ln() / 100.0).sqrt();
        assert_relative_eq!(u_value(&s, 1, 100, &p), oracle, max_relative = 1e-9);
        assert_relative_eq!(u_value(&s, 1, 100, &p), 1.6513, max_relative = 1e-3);

        let s = NodeStats { count: 7, mean: 0.7, ..NodeStats::fresh() };
        let p = params_with_delta_tilde(100, 1.0);
        assert_relative_eq!(u_value(&s, 2, 100, &p), 0.95, max_relative = 1e-9);
    }

    #[test]
    fn bound_scale_only_touches_the_radius() {
        let s = NodeStats { count: 10, mean: 0.4, ..NodeStats::fresh() };
        let p = params(0.8, 0.05);
        let half = BoundParams { bound_scale: 0.5, ..p };
        let radius = u_value(&s, 2, 50, &p) - 0.4 - 0.25;
        assert_relative_eq!(u_value(&s, 2, 50, &half), 0.4 + 0.25 + 0.5 * radius, max_relative = 1e-12);
        assert_eq!(tau(2, 50, &p), tau(2, 50, &half));
    }

    #[test]
    fn empirical_update_matches_running_average() {
        let mut s = NodeStats::fresh();
        s.empirical_update(0.7);
        assert_eq!((s.count, s.mean), (1, 0.7));

        let mut s = NodeStats { count: 4, mean: 0.5, ..NodeStats::fresh() };
        s.empirical_update(1.0);
        assert_eq!(s.count, 5);
        assert_relative_eq!(s.mean, 0.6, max_relative = 1e-12);

        let mut s = NodeStats::fresh();
        for _ in 0..50 {
            s.empirical_update(0.3);
            assert_relative_eq!(s.mean, 0.3, max_relative = 1e-12);
        }
    }

    #[test]
    fn initial_tree_and_first_traversal() {
        let tree = CoverTree::new();
        assert_eq!(tree.len(), 3);
        assert_eq!(tree.depth(), 1);
        assert_eq!(tree.get(idx(1, 1)).unwrap().upper, f64::INFINITY);
        let (sel, path) = tree.opt_traverse(1, &params(0.8, 0.05));
        assert_eq!(sel, idx(1, 1));
        assert_eq!(path, vec![CellIndex::ROOT, idx(1, 1)]);
    }

    #[test]
    fn traversal_follows_larger_b() {
        let mut tree = CoverTree::new();
        tree.nodes.get_mut(&idx(1, 1)).unwrap().b_value = 0.4;
        tree.nodes.get_mut(&idx(1, 2)).unwrap().b_value = 0.9;
        let (sel, path) = tree.opt_traverse(5, &params(0.8, 0.05));
        assert_eq!(sel, idx(1, 2));
        assert_eq!(path.len(), 2);
    }

    #[test]
    fn traversal_stops_at_underpulled_internal_node() {
        let p = params(0.8, 0.05);
        let mut tree = CoverTree::new();
        tree.record_pull(idx(1, 1), 0.5).unwrap();
        tree.grow(idx(1, 1), 2).unwrap();
        tree.refresh(2, &p);
        assert!(tree.get(idx(1, 1)).unwrap().count < tau(1, 2, &p) as u64);
        tree.nodes.get_mut(&idx(1, 2)).unwrap().b_value = -1.0;
        let (sel, _) = tree.opt_traverse(2, &p);
        assert_eq!(sel, idx(1, 1));

        // once pulled past the threshold the walk continues into the children
        let need = tau(1, 2, &p).ceil() as u64;
        for _ in 0..need {
            tree.record_pull(idx(1, 1), 0.5).unwrap();
        }
        let (sel, path) = tree.opt_traverse(2, &p);
        assert_eq!(sel, idx(2, 1));
        assert_eq!(path, vec![CellIndex::ROOT, idx(1, 1), idx(2, 1)]);
    }

    #[test]
    fn update_b_cases() {
        let mut tree = CoverTree::new();
        let path = [CellIndex::ROOT, idx(1, 1)];
        tree.set_upper(idx(1, 1), 0.9).unwrap();
        tree.update_b(&path, idx(1, 1)).unwrap();
        assert_eq!(tree.get(idx(1, 1)).unwrap().b_value, 0.9);

        tree.grow(idx(1, 1), 1).unwrap();
        tree.set_upper(idx(1, 1), 0.8).unwrap();
        tree.nodes.get_mut(&idx(2, 1)).unwrap().b_value = 0.7;
        tree.nodes.get_mut(&idx(2, 2)).unwrap().b_value = 0.95;
        tree.update_b(&path, idx(1, 1)).unwrap();
        assert_eq!(tree.get(idx(1, 1)).unwrap().b_value, 0.8);

        tree.set_upper(idx(1, 1), f64::INFINITY).unwrap();
        tree.nodes.get_mut(&idx(2, 1)).unwrap().b_value = 0.6;
        tree.nodes.get_mut(&idx(2, 2)).unwrap().b_value = 0.5;
        tree.update_b(&path, idx(1, 1)).unwrap();
        assert_eq!(tree.get(idx(1, 1)).unwrap().b_value, 0.6);
    }

    #[test]
    fn update_b_rejects_bad_paths() {
        let mut tree = CoverTree::new();
        assert!(tree.update_b(&[idx(1, 1)], idx(1, 1)).is_err());
        assert!(tree.update_b(&[CellIndex::ROOT, idx(1, 2)], idx(1, 1)).is_err());
        assert!(tree.update_b(&[CellIndex::ROOT, idx(2, 1)], idx(2, 1)).is_err());
    }

    #[test]
    fn update_b_leaves_off_path_nodes_alone() {
        let mut tree = CoverTree::new();
        tree.nodes.get_mut(&idx(1, 2)).unwrap().b_value = 0.123;
        tree.set_upper(idx(1, 1), 0.5).unwrap();
        tree.update_b(&[CellIndex::ROOT, idx(1, 1)], idx(1, 1)).unwrap();
        assert_eq!(tree.get(idx(1, 2)).unwrap().b_value, 0.123);
        assert_eq!(tree.get(CellIndex::ROOT).unwrap().b_value, 0.5);
    }

    #[test]
    fn refresh_on_fresh_tree_is_all_infinite() {
        let mut tree = CoverTree::new();
        tree.refresh(1, &params(0.8, 0.05));
        for (_, s) in tree.iter() {
            assert_eq!(s.upper, f64::INFINITY);
            assert_eq!(s.b_value, f64::INFINITY);
        }
    }

    #[test]
    fn refresh_matches_recomputation_and_is_idempotent() {
        let p = params(0.8, 0.05);
        let mut tree = CoverTree::new();
        for k in 0..40 {
            tree.record_pull(idx(1, 1), if k % 3 == 0 { 1.0 } else { 0.0 }).unwrap();
        }
        tree.grow(idx(1, 1), 40).unwrap();
        for _ in 0..5 {
            tree.record_pull(idx(2, 2), 0.9).unwrap();
        }
        tree.record_pull(idx(1, 2), 0.2).unwrap();
        tree.refresh(64, &p);

        // independent recomputation of U straight from (T, μ̂)
        let log_term = -(p.c1 * p.delta / 128.0f64).ln();
        for (idx, s) in tree.iter() {
            let expected = if s.count == 0 {
                f64::INFINITY
            } else {
                s.mean + p.rho.powi(idx.depth as i32) + (p.c * p.c * log_term / s.count as f64).sqrt()
            };
            assert_relative_eq!(s.upper, expected, max_relative = 1e-12);
        }
        tree.check_b_consistency().unwrap();
        assert_eq!(tree.get(idx(1, 2)).unwrap().b_value, tree.get(idx(1, 2)).unwrap().upper);

        let once = tree.clone();
        tree.refresh(64, &p);
        assert_eq!(tree, once);
    }

    #[test]
    fn expand_contract() {
        let p = params(0.8, 0.05);
        let mut tree = CoverTree::new();
        assert!(tree.expand(idx(1, 1), 1, &p).is_err());

        // τ₁ with ν₁ = 1, ρ = 0.5, c = 2√2 and δ̃(t⁺) = 0.01 is 8·ln(100)·4 ≈ 147.4
        let q = params_with_delta_tilde(64, 0.01);
        for _ in 0..147 {
            tree.record_pull(idx(1, 1), 0.5).unwrap();
        }
        assert!(tree.expand(idx(1, 1), 64, &q).is_err());
        tree.record_pull(idx(1, 1), 0.5).unwrap();
        tree.expand(idx(1, 1), 64, &q).unwrap();
        assert_eq!(tree.len(), 5);
        assert_eq!(tree.depth(), 2);
        let node = tree.get(idx(1, 1)).unwrap();
        assert!(!node.is_leaf);
        assert_eq!(node.expanded_at, Some(64));
        assert_eq!(tree.get(idx(2, 1)).unwrap().upper, f64::INFINITY);
        assert!(tree.expand(idx(1, 1), 64, &q).is_err());
    }

    #[test]
    fn snapshot_format() {
        let mut tree = CoverTree::new();
        tree.record_pull(idx(1, 2), 1.0).unwrap();
        tree.set_upper(idx(1, 2), 1.5).unwrap();
        let mut buf = Vec::new();
        tree.write_snapshot(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "h,i,lo,hi,T,mu_hat,U,B,is_leaf");
        assert_eq!(lines[1], "0,1,0,1,0,nan,inf,inf,false");
        assert_eq!(lines[2], "1,1,0,0.5,0,nan,inf,inf,true");
        assert_eq!(lines[3], "1,2,0.5,1,1,1,1.5,inf,true");
    }
}
