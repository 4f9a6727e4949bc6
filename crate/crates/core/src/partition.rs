//! Dyadic partition of the arm space `[0, 1]`.
//!
//! Node `(h, i)` covers `[(i - 1) / 2^h, i / 2^h]` and its children are
//! `(h + 1, 2i - 1)` and `(h + 1, 2i)`, which split the parent at its midpoint.

use std::fmt;

use crate::error::{Error, Result};

/// Position `(h, i)` of a node in the covering tree, `1 <= i <= 2^h`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CellIndex {
    pub depth: u32,
    pub index: u64,
}

impl CellIndex {
    /// Deepest level whose indices still fit in a `u64`.
    pub const MAX_DEPTH: u32 = 63;

    pub const ROOT: CellIndex = CellIndex { depth: 0, index: 1 };

    pub fn new(depth: u32, index: u64) -> Result<Self> {
        if depth > Self::MAX_DEPTH || index == 0 || index > 1u64 << depth {
            return Err(Error::Domain(format!("no cell ({depth},{index})")));
        }
        Ok(Self { depth, index })
    }

    pub fn is_root(self) -> bool {
        self.depth == 0
    }

    pub fn left_child(self) -> CellIndex {
        CellIndex { depth: self.depth + 1, index: 2 * self.index - 1 }
    }

    pub fn right_child(self) -> CellIndex {
        CellIndex { depth: self.depth + 1, index: 2 * self.index }
    }

    pub fn children(self) -> (CellIndex, CellIndex) {
        (self.left_child(), self.right_child())
    }

    pub fn parent(self) -> Option<CellIndex> {
        (self.depth > 0).then(|| CellIndex { depth: self.depth - 1, index: self.index.div_ceil(2) })
    }
}

impl fmt::Display for CellIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.depth, self.index)
    }
}

/// A node together with the closed interval of arm space it covers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cell {
    pub index: CellIndex,
    pub lo: f64,
    pub hi: f64,
}

impl Cell {
    pub fn root() -> Self {
        Self { index: CellIndex::ROOT, lo: 0.0, hi: 1.0 }
    }

    /// The region is computed from the index alone; exact in binary floating
    /// point up to depth 52.
    pub fn from_index(index: CellIndex) -> Self {
        let width = (-(index.depth as f64)).exp2();
        Self {
            index,
            lo: (index.index - 1) as f64 * width,
            hi: index.index as f64 * width,
        }
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    /// The arm pulled whenever this node is selected: the region midpoint.
    pub fn representative(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    /// Splits at the midpoint into the two depth `h + 1` children.
    pub fn split(&self) -> Result<(Cell, Cell)> {
        let mid = self.representative();
        if !(self.lo < mid && mid < self.hi) || self.index.depth >= CellIndex::MAX_DEPTH {
            return Err(Error::DegenerateCell(self.index));
        }
        let (l, r) = self.index.children();
        Ok((Cell { index: l, lo: self.lo, hi: mid }, Cell { index: r, lo: mid, hi: self.hi }))
    }
}

/// Smoothness parameters of the dissimilarity `ℓ(x, y) = ν₁·|x − y|^α` and
/// the per-depth diameter bound `ν₁·ρ^h`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeometryParams {
    pub nu1: f64,
    pub rho: f64,
    /// Ball-radius scale. Carried along but not used by any algorithm.
    pub nu2: f64,
    pub smoothness_exponent: f64,
}

impl Default for GeometryParams {
    /// `ℓ(x, y) = 2·|x − y|^{1/2}` with `ρ = 2^{-1/2}`, which matches the local
    /// shape of the garland function around its maximum.
    fn default() -> Self {
        Self { nu1: 2.0, rho: std::f64::consts::FRAC_1_SQRT_2, nu2: 2.0, smoothness_exponent: 0.5 }
    }
}

impl GeometryParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.rho > 0.0 && self.rho < 1.0) {
            return Err(Error::InvalidGeometry(format!("rho = {} not in (0, 1)", self.rho)));
        }
        if !(self.nu1 > 0.0 && self.nu1.is_finite()) {
            return Err(Error::InvalidGeometry(format!("nu1 = {} must be positive", self.nu1)));
        }
        if !(self.nu2 > 0.0 && self.nu2 <= self.nu1) {
            return Err(Error::InvalidGeometry(format!("nu2 = {} not in (0, nu1]", self.nu2)));
        }
        if !(self.smoothness_exponent > 0.0 && self.smoothness_exponent <= 1.0) {
            return Err(Error::InvalidGeometry(format!(
                "smoothness exponent = {} not in (0, 1]",
                self.smoothness_exponent
            )));
        }
        Ok(())
    }

    pub fn dissimilarity(&self, x: f64, y: f64) -> f64 {
        self.nu1 * (x - y).abs().powf(self.smoothness_exponent)
    }

    /// Resolution term `ν₁·ρ^h`.
    pub fn diameter_bound(&self, depth: u32) -> f64 {
        self.nu1 * self.rho.powi(depth as i32)
    }

    /// `sup ℓ(x, y)` over the cell, attained at its endpoints.
    pub fn cell_diameter(&self, cell: &Cell) -> f64 {
        self.dissimilarity(cell.lo, cell.hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cell(h: u32, i: u64) -> Cell {
        Cell::from_index(CellIndex::new(h, i).unwrap())
    }

    #[test]
    fn root_split_is_dyadic() {
        let (l, r) = Cell::root().split().unwrap();
        assert_eq!((l.lo, l.hi, r.lo, r.hi), (0.0, 0.5, 0.5, 1.0));
        assert_eq!(l.index, CellIndex::new(1, 1).unwrap());
        assert_eq!(r.index, CellIndex::new(1, 2).unwrap());
    }

    #[test]
    fn deeper_splits() {
        let (l, r) = cell(1, 2).split().unwrap();
        assert_eq!((l.lo, l.hi, r.lo, r.hi), (0.5, 0.75, 0.75, 1.0));
        assert_eq!((l.index, r.index), (cell(2, 3).index, cell(2, 4).index));
        assert_eq!(l, cell(2, 3));

        let (l, r) = cell(2, 3).split().unwrap();
        assert_eq!((l.lo, l.hi, r.lo, r.hi), (0.5, 0.625, 0.625, 0.75));
    }

    #[test]
    fn degenerate_cell_refuses_to_split() {
        let c = Cell { index: CellIndex::ROOT, lo: 0.3, hi: 0.3 };
        assert!(matches!(c.split(), Err(Error::DegenerateCell(_))));
    }

    #[test]
    fn representatives() {
        assert_eq!(Cell::root().representative(), 0.5);
        assert_eq!(cell(1, 1).representative(), 0.25);
        assert_eq!(cell(3, 5).representative(), 0.5625);
    }

    #[test]
    fn dissimilarity_values() {
        let g = GeometryParams { nu1: 2.0, ..GeometryParams::default() };
        assert_eq!(g.dissimilarity(0.3, 0.3), 0.0);
        assert_eq!(g.dissimilarity(0.0, 0.25), 1.0);
        assert_eq!(g.dissimilarity(0.0, 1.0), 2.0);
    }

    #[test]
    fn invalid_indices_and_geometry() {
        assert!(CellIndex::new(2, 0).is_err());
        assert!(CellIndex::new(2, 5).is_err());
        assert!(GeometryParams { rho: 1.0, ..Default::default() }.validate().is_err());
        assert!(GeometryParams { nu1: 0.0, ..Default::default() }.validate().is_err());
        GeometryParams::default().validate().unwrap();
    }

    #[test]
    fn levels_tile_the_unit_interval() {
        for h in 0..=20u32 {
            let n = 1u64 << h;
            let mut prev_hi = 0.0;
            for i in 1..=n {
                let c = cell(h, i);
                assert_eq!(c.lo, prev_hi, "gap or overlap at ({h},{i})");
                assert!(c.lo < c.hi);
                prev_hi = c.hi;
            }
            assert_eq!(prev_hi, 1.0);
        }
    }

    #[test]
    fn default_geometry_bounds_cell_diameters() {
        let g = GeometryParams::default();
        for h in 0..=20u32 {
            // every depth-h cell has width 2^-h, so one check per level covers all of them
            let c = cell(h, 1);
            assert!(g.cell_diameter(&c) <= g.diameter_bound(h) * (1.0 + 1e-12), "depth {h}");
        }
    }

    proptest! {
        #[test]
        fn index_arithmetic_round_trips(h in 0u32..40, frac in 0.0f64..1.0) {
            let i = 1 + ((frac * (1u64 << h) as f64) as u64).min((1u64 << h) - 1);
            let c = CellIndex::new(h, i).unwrap();
            let (l, r) = c.children();
            prop_assert_eq!(l.parent(), Some(c));
            prop_assert_eq!(r.parent(), Some(c));
            prop_assert_eq!(r.index, l.index + 1);
        }

        #[test]
        fn representative_inside_and_children_cover(h in 0u32..40, frac in 0.0f64..1.0) {
            let i = 1 + ((frac * (1u64 << h) as f64) as u64).min((1u64 << h) - 1);
            let c = Cell::from_index(CellIndex::new(h, i).unwrap());
            prop_assert!(c.contains(c.representative()));
            let (l, r) = c.split().unwrap();
            prop_assert_eq!(l.lo, c.lo);
            prop_assert_eq!(l.hi, r.lo);
            prop_assert_eq!(r.hi, c.hi);
        }

        #[test]
        fn dissimilarity_is_symmetric(x in 0.0f64..=1.0, y in 0.0f64..=1.0) {
            let g = GeometryParams::default();
            prop_assert_eq!(g.dissimilarity(x, y), g.dissimilarity(y, x));
            prop_assert!(g.dissimilarity(x, y) >= 0.0);
            prop_assert_eq!(g.dissimilarity(x, y) == 0.0, x == y);
        }
    }
}
