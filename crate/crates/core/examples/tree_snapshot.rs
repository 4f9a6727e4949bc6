//! Dumps the covering tree after a short run as CSV, one row per node.
//!
//! cargo run --example tree_snapshot > tree.csv

use std::io::{self, Write};

use hct_core::environments::GarlandIid;
use hct_core::hct::{self, HctConfig};

fn main() -> hct_core::Result<()> {
    let mut cfg = HctConfig::iid(5_000);
    cfg.c = Some(0.3);
    let run = hct::run(&cfg, &mut GarlandIid::new(), 3)?;
    run.tree.check_b_consistency()?;

    let stdout = io::stdout();
    let mut out = stdout.lock();
    run.tree.write_snapshot(&mut out)?;
    out.flush()?;
    eprintln!("{} nodes, {} leaves, depth {}", run.tree.len(), run.tree.leaf_count(), run.tree.depth());
    Ok(())
}
