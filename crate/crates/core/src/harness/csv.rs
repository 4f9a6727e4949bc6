//! Aggregated CSV output.
//!
//! Floats carry 9 significant digits in shortest `%g`-like form; infinities
//! are `inf`/`-inf`, missing values `nan`. Lines end in `\n`.

use std::io::{self, Write};

use crate::error::{Error, Result};

pub const SCHEMA_VERSION: u32 = 1;

pub const HEADER: &str = "checkpoint_t,per_step_regret_mean,per_step_regret_std,nodes_mean,depth_max,switches_mean,wall_time_mean_s";

pub fn format_float(v: f64) -> String {
    if v.is_nan() {
        return "nan".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if v == 0.0 {
        return "0".into();
    }
    let sci = format!("{v:.8e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..9).contains(&exp) {
        let decimals = (8 - exp).max(0) as usize;
        trim_zeros(&format!("{v:.decimals$}")).to_string()
    } else {
        format!("{}e{exp}", trim_zeros(mantissa))
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

pub fn parse_float(s: &str) -> Result<f64> {
    match s {
        "inf" => Ok(f64::INFINITY),
        "-inf" => Ok(f64::NEG_INFINITY),
        "nan" => Ok(f64::NAN),
        _ => s.parse().map_err(|_| Error::Config(format!("not a number: {s:?}"))),
    }
}

/// One aggregated checkpoint.
#[derive(Debug, Clone, PartialEq)]
pub struct CsvRow {
    pub checkpoint_t: u64,
    pub per_step_regret_mean: f64,
    pub per_step_regret_std: f64,
    pub nodes_mean: f64,
    pub depth_max: u32,
    pub switches_mean: f64,
    /// `NaN` when timing was not requested.
    pub wall_time_mean_s: f64,
}

impl CsvRow {
    pub fn to_line(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            self.checkpoint_t,
            format_float(self.per_step_regret_mean),
            format_float(self.per_step_regret_std),
            format_float(self.nodes_mean),
            self.depth_max,
            format_float(self.switches_mean),
            format_float(self.wall_time_mean_s),
        )
    }

    pub fn parse_line(line: &str) -> Result<Self> {
        let f: Vec<&str> = line.split(',').collect();
        if f.len() != 7 {
            return Err(Error::Config(format!("expected 7 fields, got {}: {line:?}", f.len())));
        }
        let int = |s: &str| s.parse::<u64>().map_err(|_| Error::Config(format!("not an integer: {s:?}")));
        Ok(Self {
            checkpoint_t: int(f[0])?,
            per_step_regret_mean: parse_float(f[1])?,
            per_step_regret_std: parse_float(f[2])?,
            nodes_mean: parse_float(f[3])?,
            depth_max: int(f[4])? as u32,
            switches_mean: parse_float(f[5])?,
            wall_time_mean_s: parse_float(f[6])?,
        })
    }
}

pub fn write_rows<W: Write>(mut w: W, rows: &[CsvRow]) -> io::Result<()> {
    writeln!(w, "{HEADER}")?;
    for row in rows {
        writeln!(w, "{}", row.to_line())?;
    }
    Ok(())
}

pub fn read_rows(text: &str) -> Result<Vec<CsvRow>> {
    let mut lines = text.lines();
    match lines.next() {
        Some(HEADER) => {}
        other => return Err(Error::Config(format!("unexpected header {other:?}"))),
    }
    lines.map(CsvRow::parse_line).collect()
}
