//! Grid sweep over run parameters, reporting the final per-step regret and
//! tree size of each grid point.

use std::io::{self, Write};

use crate::error::{Error, Result};
use crate::harness::csv::format_float;
use crate::harness::{run_experiment, ExperimentConfig};

pub const KEYS: [&str; 6] = ["rho", "bound-scale", "nu1", "c", "delta", "gamma"];

/// Parses `rho=0.5,0.7,bound-scale=0.1,1`: a token containing `=` starts a
/// new key and bare tokens extend the current one. Several specs may be given;
/// their axes are concatenated.
pub fn parse_grid<S: AsRef<str>>(specs: &[S]) -> Result<Vec<(String, Vec<f64>)>> {
    let mut axes: Vec<(String, Vec<f64>)> = Vec::new();
    for spec in specs {
        let mut current: Option<usize> = None;
        for token in spec.as_ref().split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let value = match token.split_once('=') {
                Some((key, value)) => {
                    if !KEYS.contains(&key) {
                        return Err(Error::Config(format!("unknown sweep key '{key}' ({})", KEYS.join(", "))));
                    }
                    if axes.iter().any(|(k, _)| k == key) {
                        return Err(Error::Config(format!("sweep key '{key}' given twice")));
                    }
                    axes.push((key.to_string(), Vec::new()));
                    current = Some(axes.len() - 1);
                    value
                }
                None => token,
            };
            let Some(k) = current else {
                return Err(Error::Config(format!("sweep value '{token}' has no key")));
            };
            let v: f64 = value.parse().map_err(|_| Error::Config(format!("bad sweep value '{value}'")))?;
            axes[k].1.push(v);
        }
    }
    if let Some((key, _)) = axes.iter().find(|(_, v)| v.is_empty()) {
        return Err(Error::Config(format!("sweep key '{key}' has no values")));
    }
    if axes.is_empty() {
        return Err(Error::Config("empty sweep grid".into()));
    }
    Ok(axes)
}

/// Every combination, the first axis varying slowest.
pub fn grid_points(axes: &[(String, Vec<f64>)]) -> Vec<Vec<(String, f64)>> {
    let mut points = vec![Vec::new()];
    for (key, values) in axes {
        points = points
            .into_iter()
            .flat_map(|p| {
                values.iter().map(move |&v| {
                    let mut q = p.clone();
                    q.push((key.clone(), v));
                    q
                })
            })
            .collect();
    }
    points
}

pub fn apply(base: &ExperimentConfig, point: &[(String, f64)]) -> ExperimentConfig {
    let mut cfg = base.clone();
    for (key, v) in point {
        match key.as_str() {
            "rho" => cfg.geometry.rho = *v,
            "bound-scale" => cfg.bound_scale = *v,
            "nu1" => {
                cfg.geometry.nu1 = *v;
                cfg.geometry.nu2 = cfg.geometry.nu2.min(*v);
            }
            "c" => cfg.c = Some(*v),
            "delta" => cfg.delta = *v,
            "gamma" => cfg.gamma_mix = Some(*v),
            _ => unreachable!("keys are checked while parsing"),
        }
    }
    cfg
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepPoint {
    pub params: Vec<(String, f64)>,
    pub final_regret_mean: f64,
    pub final_regret_std: f64,
    pub nodes_mean: f64,
}

/// Runs the base configuration at every grid point. Output paths in `base`
/// are ignored.
pub fn sweep(base: &ExperimentConfig, axes: &[(String, Vec<f64>)]) -> Result<Vec<SweepPoint>> {
    let points = grid_points(axes);
    let configs: Vec<ExperimentConfig> = points
        .iter()
        .map(|p| ExperimentConfig { out: None, ..apply(base, p) })
        .collect();
    for cfg in &configs {
        cfg.validate()?;
    }
    points
        .into_iter()
        .zip(&configs)
        .map(|(params, cfg)| {
            let out = run_experiment(cfg)?;
            Ok(SweepPoint {
                params,
                final_regret_mean: out.final_regret_mean(),
                final_regret_std: out.final_regret_std(),
                nodes_mean: out.final_nodes_mean(),
            })
        })
        .collect()
}

pub fn write_sweep<W: Write>(mut w: W, points: &[SweepPoint]) -> io::Result<()> {
    let Some(first) = points.first() else { return Ok(()) };
    let keys: Vec<String> = first.params.iter().map(|(k, _)| k.replace('-', "_")).collect();
    writeln!(w, "{},final_regret_mean,final_regret_std,nodes_mean", keys.join(","))?;
    for p in points {
        let mut fields: Vec<String> = p.params.iter().map(|(_, v)| format_float(*v)).collect();
        fields.extend([p.final_regret_mean, p.final_regret_std, p.nodes_mean].map(format_float));
        writeln!(w, "{}", fields.join(","))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::{Algorithm, EnvKind};

    #[test]
    fn grid_parsing() {
        let axes = parse_grid(&["rho=0.5,0.7,bound-scale=0.1,1,2"]).unwrap();
        assert_eq!(axes, vec![("rho".into(), vec![0.5, 0.7]), ("bound-scale".into(), vec![0.1, 1.0, 2.0])]);
        let split = parse_grid(&["rho=0.5,0.7", "c=0.3"]).unwrap();
        assert_eq!(split.len(), 2);
        assert!(parse_grid(&["0.5"]).is_err());
        assert!(parse_grid(&["speed=1"]).is_err());
        assert!(parse_grid(&["rho="]).is_err());
        assert!(parse_grid(&["rho=0.5,rho=0.6"]).is_err());
        assert!(parse_grid(&["rho=x"]).is_err());
    }

    #[test]
    fn cartesian_product_order() {
        let axes = parse_grid(&["rho=0.5,0.7,c=1,2"]).unwrap();
        let pts = grid_points(&axes);
        assert_eq!(pts.len(), 4);
        assert_eq!(pts[1], vec![("rho".to_string(), 0.5), ("c".to_string(), 2.0)]);
    }

    #[test]
    fn small_sweep_writes_one_line_per_point() {
        let base = ExperimentConfig::new(Algorithm::HctIid, EnvKind::GarlandIid, 200, vec![0, 1]);
        let axes = parse_grid(&["rho=0.5,0.7,bound-scale=1"]).unwrap();
        let pts = sweep(&base, &axes).unwrap();
        let mut buf = Vec::new();
        write_sweep(&mut buf, &pts).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "rho,bound_scale,final_regret_mean,final_regret_std,nodes_mean");
        assert_eq!(lines.len(), 3);
        assert!(lines[1].starts_with("0.5,1,"));
    }

    #[test]
    fn invalid_point_fails_before_running() {
        let base = ExperimentConfig::new(Algorithm::HctIid, EnvKind::GarlandIid, 10, vec![0]);
        let axes = parse_grid(&["rho=0.5,1.5"]).unwrap();
        assert!(sweep(&base, &axes).is_err());
    }
}
