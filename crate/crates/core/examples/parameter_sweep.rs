//! Grid sweep over `ρ` and the confidence multiplier `c` for HCT-iid.

use std::io;

use hct_core::harness::sweep::{parse_grid, sweep, write_sweep};
use hct_core::harness::{Algorithm, EnvKind, ExperimentConfig};

fn main() -> hct_core::Result<()> {
    let mut base = ExperimentConfig::new(Algorithm::HctIid, EnvKind::GarlandIid, 30_000, (0..4).collect());
    base.geometry.nu1 = 1.0;
    base.geometry.nu2 = 1.0;
    let axes = parse_grid(&["rho=0.5,0.6,0.7071,0.8", "c=0.2,0.3,0.7,1.5"])?;
    let points = sweep(&base, &axes)?;
    write_sweep(io::stdout().lock(), &points)?;
    Ok(())
}
