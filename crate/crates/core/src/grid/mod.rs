//! Evolution of finite-support configurations on `Z^2`.
//!
//! [`Configuration`] is the sparse representation (a set of live cells).
//! [`DenseGrid`] is a square byte-per-cell window used for long census sweeps
//! and the rule search; the two engines must agree bit for bit.

mod bitmap;
mod dense;

pub use bitmap::{PatternBitmap, Window};
pub use dense::DenseGrid;

use std::collections::HashSet;

use thiserror::Error;

use crate::rules::{FullRuleTable, Neighborhood, SymRuleTable};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GridError {
    #[error("rule is not quiescent: a dead cell with dead neighbors is born, so the orbit has infinite support")]
    NonQuiescent,
    #[error("rule table is not symmetric under the dihedral group")]
    NotSymmetric,
    #[error("empty window")]
    EmptyWindow,
    #[error("configuration does not fit in a dense grid of radius {radius}")]
    OutOfBounds { radius: usize },
}

pub type Cell = (i64, i64);

/// A finite set of live cells together with its time step.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Configuration {
    live: HashSet<Cell>,
    generation: u64,
}

impl Configuration {
    pub fn empty(generation: u64) -> Self {
        Configuration {
            live: HashSet::new(),
            generation,
        }
    }

    pub fn from_cells(cells: impl IntoIterator<Item = Cell>, generation: u64) -> Self {
        Configuration {
            live: cells.into_iter().collect(),
            generation,
        }
    }

    pub fn generation(&self) -> u64 {
        self.generation
    }

    pub fn population(&self) -> u64 {
        self.live.len() as u64
    }

    pub fn is_live(&self, cell: Cell) -> bool {
        self.live.contains(&cell)
    }

    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        self.live.iter().copied()
    }

    /// Live cells in row-major order (descending `j`, ascending `i`).
    pub fn sorted_cells(&self) -> Vec<Cell> {
        let mut cells: Vec<Cell> = self.cells().collect();
        cells.sort_by_key(|&(i, j)| (-j, i));
        cells
    }

    pub fn neighborhood(&self, (i, j): Cell) -> Neighborhood {
        Neighborhood::new(
            self.is_live((i, j + 1)),
            self.is_live((i - 1, j)),
            self.is_live((i, j)),
            self.is_live((i + 1, j)),
            self.is_live((i, j - 1)),
        )
    }

    /// Largest `|i| + |j|` over the live cells.
    pub fn l1_radius(&self) -> u64 {
        self.cells()
            .map(|(i, j)| i.unsigned_abs() + j.unsigned_abs())
            .max()
            .unwrap_or(0)
    }

    pub fn bounding_box(&self) -> Option<Window> {
        let mut cells = self.cells();
        let (i0, j0) = cells.next()?;
        let (mut imin, mut imax, mut jmin, mut jmax) = (i0, i0, j0, j0);
        for (i, j) in cells {
            imin = imin.min(i);
            imax = imax.max(i);
            jmin = jmin.min(j);
            jmax = jmax.max(j);
        }
        Some(Window::new(imin, imax, jmin, jmax).expect("non-empty bounding box"))
    }

    /// The image of the configuration under one of the eight symmetries of the
    /// square (index `0..8`, 0 = identity).
    pub fn transformed(&self, symmetry: usize) -> Configuration {
        Configuration {
            live: self.cells().map(|c| dihedral(symmetry, c)).collect(),
            generation: self.generation,
        }
    }

    pub fn is_dihedral_symmetric(&self) -> bool {
        (1..8).all(|s| self.cells().all(|c| self.is_live(dihedral(s, c))))
    }
}

fn dihedral(symmetry: usize, (i, j): Cell) -> Cell {
    match symmetry {
        0 => (i, j),
        1 => (i, -j),
        2 => (-i, j),
        3 => (-j, i),
        4 => (-i, -j),
        5 => (j, -i),
        6 => (j, i),
        7 => (-j, -i),
        _ => panic!("dihedral symmetry index out of range: {symmetry}"),
    }
}

pub fn single_site_seed() -> Configuration {
    Configuration::from_cells([(0, 0)], 0)
}

/// A validated local rule: symmetric and quiescent.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Automaton {
    rule: FullRuleTable,
}

impl Automaton {
    pub fn new(rule: FullRuleTable) -> Result<Self, GridError> {
        if !rule.validate_symmetry() {
            return Err(GridError::NotSymmetric);
        }
        if !rule.is_quiescent() {
            return Err(GridError::NonQuiescent);
        }
        Ok(Automaton { rule })
    }

    /// Expands a class table (wildcards resolved to `wildcard_choice`).
    pub fn from_sym(table: &SymRuleTable, wildcard_choice: bool) -> Result<Self, GridError> {
        Automaton::new(table.expand(wildcard_choice))
    }

    pub fn rule(&self) -> FullRuleTable {
        self.rule
    }

    /// One synchronous update. Only live cells and their four neighbors can be
    /// live afterwards because the rule is quiescent.
    pub fn step(&self, c: &Configuration) -> Configuration {
        let mut candidates: HashSet<Cell> = HashSet::with_capacity(c.live.len() * 5);
        for &(i, j) in &c.live {
            candidates.extend([(i, j), (i + 1, j), (i - 1, j), (i, j + 1), (i, j - 1)]);
        }
        let live = candidates
            .into_iter()
            .filter(|&cell| self.rule.apply(c.neighborhood(cell)))
            .collect();
        Configuration {
            live,
            generation: c.generation + 1,
        }
    }

    pub fn evolve(&self, c0: &Configuration, steps: u64) -> Configuration {
        let mut c = c0.clone();
        for _ in 0..steps {
            c = self.step(&c);
        }
        c
    }

    /// `c0, step(c0), ..., step^steps(c0)`.
    pub fn orbit(&self, c0: &Configuration, steps: u64) -> Vec<Configuration> {
        let mut out = Vec::with_capacity(steps as usize + 1);
        out.push(c0.clone());
        for _ in 0..steps {
            let next = self.step(out.last().expect("orbit is non-empty"));
            out.push(next);
        }
        out
    }

    /// Populations of `T^0 x_o, ..., T^{steps} x_o` from the single site seed,
    /// using the dense engine.
    pub fn seed_populations(&self, steps: u64) -> Vec<u64> {
        let mut grid = DenseGrid::seed(steps as usize + 1);
        let mut pops = Vec::with_capacity(steps as usize + 1);
        pops.push(grid.population());
        for _ in 0..steps {
            grid = grid.step(self.rule);
            pops.push(grid.population());
        }
        pops
    }
}

pub fn population(c: &Configuration) -> u64 {
    c.population()
}

pub fn snapshot(c: &Configuration, window: Window) -> PatternBitmap {
    PatternBitmap::rasterize(c, window)
}
