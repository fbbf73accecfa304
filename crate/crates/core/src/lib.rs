//! Symmetric two-dimensional elementary cellular automata grown from a single
//! live cell, their population censuses, and the functions on `[0, 1]` that
//! those censuses converge to.

pub mod census;
pub mod fractal;
pub mod grid;
pub mod quadrature;
pub mod rules;

pub use census::{CensusError, CensusRow, CensusSeries};
pub use fractal::{BitSeq, Dyadic, FractalError, Truncation};
pub use grid::{Automaton, Configuration, GridError, PatternBitmap, Window};
pub use quadrature::{QuadratureError, RiemannReport};
pub use rules::{
    builtin, BuiltinRule, FullRuleTable, Neighborhood, NeighborhoodClass, RuleError, RuleName,
    RuleOutput, SymRuleTable,
};
