use crate::rules::FullRuleTable;

use super::{Configuration, GridError};

/// Square window `[-radius, radius]^2` with one byte per cell and a one-cell
/// dead border, so neighbor reads never need bounds checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenseGrid {
    radius: usize,
    side: usize,
    cells: Vec<u8>,
    // every live cell satisfies max(|i|, |j|) <= extent
    extent: usize,
}

impl DenseGrid {
    pub fn empty(radius: usize) -> Self {
        let side = 2 * radius + 3;
        DenseGrid {
            radius,
            side,
            cells: vec![0; side * side],
            extent: 0,
        }
    }

    pub fn seed(radius: usize) -> Self {
        let mut g = DenseGrid::empty(radius);
        let idx = g.index(0, 0);
        g.cells[idx] = 1;
        g
    }

    pub fn from_configuration(c: &Configuration, radius: usize) -> Result<Self, GridError> {
        let mut g = DenseGrid::empty(radius);
        for (i, j) in c.cells() {
            let (ai, aj) = (i.unsigned_abs() as usize, j.unsigned_abs() as usize);
            if ai > radius || aj > radius {
                return Err(GridError::OutOfBounds { radius });
            }
            g.extent = g.extent.max(ai).max(aj);
            let idx = g.index(i, j);
            g.cells[idx] = 1;
        }
        Ok(g)
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    #[inline]
    fn index(&self, i: i64, j: i64) -> usize {
        let off = self.radius as i64 + 1;
        ((j + off) as usize) * self.side + (i + off) as usize
    }

    pub fn get(&self, i: i64, j: i64) -> bool {
        let r = self.radius as i64;
        if i.abs() > r || j.abs() > r {
            return false;
        }
        self.cells[self.index(i, j)] == 1
    }

    pub fn population(&self) -> u64 {
        self.cells.iter().map(|&b| b as u64).sum()
    }

    /// One synchronous update.
    ///
    /// Panics if a live cell already sits on the outer ring of the window,
    /// since the next state could leave it.
    pub fn step(&self, rule: FullRuleTable) -> DenseGrid {
        let reach = self.extent + 1;
        assert!(
            reach <= self.radius,
            "dense grid of radius {} is too small for the next step",
            self.radius
        );
        let mut next = DenseGrid::empty(self.radius);
        let side = self.side;
        let r = reach as i64;
        let mut extent = 0usize;
        for j in -r..=r {
            let row = self.index(-r, j);
            for (k, i) in (-r..=r).enumerate() {
                let idx = row + k;
                let code = self.cells[idx + side] << 4
                    | self.cells[idx - 1] << 3
                    | self.cells[idx] << 2
                    | self.cells[idx + 1] << 1
                    | self.cells[idx - side];
                if rule.apply_code(code) {
                    next.cells[idx] = 1;
                    extent = extent.max(i.unsigned_abs() as usize).max(j.unsigned_abs() as usize);
                }
            }
        }
        next.extent = extent;
        next
    }

    pub fn to_configuration(&self, generation: u64) -> Configuration {
        let r = self.radius as i64;
        let mut cells = Vec::new();
        for j in -r..=r {
            for i in -r..=r {
                if self.cells[self.index(i, j)] == 1 {
                    cells.push((i, j));
                }
            }
        }
        Configuration::from_cells(cells, generation)
    }
}
