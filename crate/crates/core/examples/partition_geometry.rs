//! The dyadic partition: cells, representatives, and how the cell diameter
//! under `ℓ(x, y) = ν₁|x − y|^{1/2}` compares with `ν₁ρ^h`.

use hct_core::partition::{Cell, CellIndex, GeometryParams};

fn main() -> hct_core::Result<()> {
    let g = GeometryParams::default();
    println!("nu1 = {}, rho = {:.6}", g.nu1, g.rho);

    let mut cell = Cell::root();
    for _ in 0..4 {
        let (left, right) = cell.split()?;
        println!("{} [{}, {}] -> {} and {}", cell.index, cell.lo, cell.hi, left.index, right.index);
        cell = right;
    }

    println!("{:>3} {:>14} {:>14}", "h", "diameter", "nu1 rho^h");
    for h in [0, 1, 2, 5, 10, 20] {
        let c = Cell::from_index(CellIndex::new(h, 1)?);
        println!("{h:>3} {:>14.9} {:>14.9}", g.cell_diameter(&c), g.diameter_bound(h));
    }

    let x = std::f64::consts::PI / 6.0;
    let h = 12;
    let i = (x * (1u64 << h) as f64).ceil() as u64;
    let c = Cell::from_index(CellIndex::new(h, i)?);
    println!("pi/6 lies in {} = [{:.6}, {:.6}], representative {:.6}", c.index, c.lo, c.hi, c.representative());
    Ok(())
}
