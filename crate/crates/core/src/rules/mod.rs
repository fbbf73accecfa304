//! Local rules of symmetric two-dimensional elementary cellular automata.
//!
//! A local rule reads the von Neumann neighborhood `U / L C R / D` of a cell.
//! Requiring the rule to commute with the eight symmetries of the square
//! collapses the 32 raw neighborhoods into 12 classes: the center state times
//! the six dihedral orbits of the four-cell ring. A [`SymRuleTable`] assigns an
//! output (or a wildcard) to each class; [`FullRuleTable`] is the expanded
//! 32-entry lookup used by the simulator.

mod builtin;
mod json;
mod search;

pub use builtin::{builtin, BuiltinRule, RuleName};
pub use json::RuleJson;
pub use search::{
    oracle_for, resolve_rule_ambiguity, search_rules, wildcard_pattern, wildcards_irrelevant,
    Resolution, RuleResolution,
};

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RuleError {
    #[error("unknown rule name `{0}` (expected one of ta, tb, ts0)")]
    UnknownName(String),
    #[error("search horizon must be at least 2, got {0}")]
    HorizonTooShort(u64),
    #[error("rule outputs must have 12 entries, got {0}")]
    WrongArity(usize),
    #[error("unknown neighborhood class `{0}`")]
    UnknownClass(String),
    #[error("column order lists class `{0}` more than once")]
    DuplicateClass(String),
    #[error("invalid rule output `{0}` (expected 0, 1 or \"*\")")]
    InvalidOutput(String),
    #[error("malformed rule JSON: {0}")]
    Json(String),
}

/// The five states read by a local rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Neighborhood {
    pub up: bool,
    pub left: bool,
    pub center: bool,
    pub right: bool,
    pub down: bool,
}

impl Neighborhood {
    pub const fn new(up: bool, left: bool, center: bool, right: bool, down: bool) -> Self {
        Neighborhood {
            up,
            left,
            center,
            right,
            down,
        }
    }

    /// Packs the states as `U L C R D`, most significant bit first.
    #[inline]
    pub const fn code(self) -> u8 {
        (self.up as u8) << 4
            | (self.left as u8) << 3
            | (self.center as u8) << 2
            | (self.right as u8) << 1
            | self.down as u8
    }

    #[inline]
    pub const fn from_code(code: u8) -> Self {
        Neighborhood {
            up: code & 0b10000 != 0,
            left: code & 0b01000 != 0,
            center: code & 0b00100 != 0,
            right: code & 0b00010 != 0,
            down: code & 0b00001 != 0,
        }
    }

    pub fn all() -> impl Iterator<Item = Neighborhood> {
        (0u8..32).map(Neighborhood::from_code)
    }

    /// Images of this neighborhood under the eight symmetries of the square:
    /// identity, the two reflections of (sym1), the three rotations of (sym2)
    /// and the two diagonal reflections that the group generates.
    pub fn dihedral_images(self) -> [Neighborhood; 8] {
        let Neighborhood {
            up: u,
            left: l,
            center: c,
            right: r,
            down: d,
        } = self;
        [
            Neighborhood::new(u, l, c, r, d),
            Neighborhood::new(d, l, c, r, u),
            Neighborhood::new(u, r, c, l, d),
            Neighborhood::new(l, d, c, u, r),
            Neighborhood::new(d, r, c, l, u),
            Neighborhood::new(r, u, c, d, l),
            Neighborhood::new(l, u, c, d, r),
            Neighborhood::new(r, d, c, u, l),
        ]
    }
}

/// Orbit of the four-cell ring under the dihedral group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RingShape {
    Empty,
    Single,
    AdjacentPair,
    OppositePair,
    Triple,
    Full,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct NeighborhoodClass {
    pub center: bool,
    pub ring: RingShape,
}

impl NeighborhoodClass {
    /// The twelve classes in the column order of the published rule table.
    /// Rule serialization relies on this order.
    pub const COLUMNS: [NeighborhoodClass; 12] = [
        NeighborhoodClass::new(true, RingShape::Full),
        NeighborhoodClass::new(true, RingShape::Triple),
        NeighborhoodClass::new(true, RingShape::OppositePair),
        NeighborhoodClass::new(true, RingShape::AdjacentPair),
        NeighborhoodClass::new(true, RingShape::Single),
        NeighborhoodClass::new(true, RingShape::Empty),
        NeighborhoodClass::new(false, RingShape::Full),
        NeighborhoodClass::new(false, RingShape::Triple),
        NeighborhoodClass::new(false, RingShape::OppositePair),
        NeighborhoodClass::new(false, RingShape::AdjacentPair),
        NeighborhoodClass::new(false, RingShape::Single),
        NeighborhoodClass::new(false, RingShape::Empty),
    ];

    pub const fn new(center: bool, ring: RingShape) -> Self {
        NeighborhoodClass { center, ring }
    }

    /// Position of this class in [`NeighborhoodClass::COLUMNS`].
    pub fn column(self) -> usize {
        let ring = match self.ring {
            RingShape::Full => 0,
            RingShape::Triple => 1,
            RingShape::OppositePair => 2,
            RingShape::AdjacentPair => 3,
            RingShape::Single => 4,
            RingShape::Empty => 5,
        };
        if self.center {
            ring
        } else {
            6 + ring
        }
    }

    /// The neighborhood printed in the table header for this column.
    pub fn representative(self) -> Neighborhood {
        let c = self.center;
        match self.ring {
            RingShape::Full => Neighborhood::new(true, true, c, true, true),
            RingShape::Triple => Neighborhood::new(false, true, c, true, true),
            RingShape::OppositePair => Neighborhood::new(true, false, c, false, true),
            RingShape::AdjacentPair => Neighborhood::new(false, false, c, true, true),
            RingShape::Single => Neighborhood::new(false, false, c, false, true),
            RingShape::Empty => Neighborhood::new(false, false, c, false, false),
        }
    }

    /// Header label `U/LCR/D`, e.g. `1/101/1`.
    pub fn name(self) -> String {
        let n = self.representative();
        let b = |x: bool| if x { '1' } else { '0' };
        format!(
            "{}/{}{}{}/{}",
            b(n.up),
            b(n.left),
            b(n.center),
            b(n.right),
            b(n.down)
        )
    }

    pub fn from_name(name: &str) -> Result<Self, RuleError> {
        Self::COLUMNS
            .iter()
            .copied()
            .find(|c| c.name() == name)
            .ok_or_else(|| RuleError::UnknownClass(name.to_string()))
    }
}

impl fmt::Display for NeighborhoodClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

pub fn classify(n: Neighborhood) -> NeighborhoodClass {
    let ring = [n.up, n.right, n.down, n.left];
    let live = ring.iter().filter(|&&b| b).count();
    let shape = match live {
        0 => RingShape::Empty,
        1 => RingShape::Single,
        // Two live cells are opposite exactly when up and down agree.
        2 if n.up == n.down => RingShape::OppositePair,
        2 => RingShape::AdjacentPair,
        3 => RingShape::Triple,
        _ => RingShape::Full,
    };
    NeighborhoodClass::new(n.center, shape)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RuleOutput {
    Zero,
    One,
    Wildcard,
}

impl RuleOutput {
    pub fn resolve(self, wildcard_choice: bool) -> bool {
        match self {
            RuleOutput::Zero => false,
            RuleOutput::One => true,
            RuleOutput::Wildcard => wildcard_choice,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            RuleOutput::Zero => '0',
            RuleOutput::One => '1',
            RuleOutput::Wildcard => '*',
        }
    }
}

impl From<bool> for RuleOutput {
    fn from(b: bool) -> Self {
        if b {
            RuleOutput::One
        } else {
            RuleOutput::Zero
        }
    }
}

/// A symmetric local rule given by one output per neighborhood class, in
/// [`NeighborhoodClass::COLUMNS`] order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SymRuleTable {
    pub name: Option<String>,
    pub outputs: [RuleOutput; 12],
}

impl SymRuleTable {
    pub fn new(outputs: [RuleOutput; 12]) -> Self {
        SymRuleTable {
            name: None,
            outputs,
        }
    }

    pub fn named(name: impl Into<String>, outputs: [RuleOutput; 12]) -> Self {
        SymRuleTable {
            name: Some(name.into()),
            outputs,
        }
    }

    /// Parses a row such as `"1*10111**010"` (column order, `*` = wildcard).
    pub fn from_row(row: &str) -> Result<Self, RuleError> {
        let symbols: Vec<char> = row.chars().filter(|c| !c.is_whitespace()).collect();
        if symbols.len() != 12 {
            return Err(RuleError::WrongArity(symbols.len()));
        }
        let mut outputs = [RuleOutput::Zero; 12];
        for (slot, c) in outputs.iter_mut().zip(symbols) {
            *slot = match c {
                '0' => RuleOutput::Zero,
                '1' => RuleOutput::One,
                '*' => RuleOutput::Wildcard,
                other => return Err(RuleError::InvalidOutput(other.to_string())),
            };
        }
        Ok(SymRuleTable::new(outputs))
    }

    /// The concrete table whose outputs, read in column order, spell the
    /// 12-bit number `index` (first column is the most significant bit).
    /// Enumerating `0..4096` therefore walks the tables in lexicographic order.
    pub fn concrete_from_index(index: u16) -> Self {
        assert!(index < 4096, "concrete rule index out of range: {index}");
        let mut outputs = [RuleOutput::Zero; 12];
        for (col, slot) in outputs.iter_mut().enumerate() {
            *slot = RuleOutput::from(index >> (11 - col) & 1 == 1);
        }
        SymRuleTable::new(outputs)
    }

    pub fn row(&self) -> String {
        self.outputs.iter().map(|o| o.symbol()).collect()
    }

    pub fn output(&self, class: NeighborhoodClass) -> RuleOutput {
        self.outputs[class.column()]
    }

    pub fn is_concrete(&self) -> bool {
        !self.outputs.contains(&RuleOutput::Wildcard)
    }

    pub fn wildcard_columns(&self) -> Vec<usize> {
        (0..12)
            .filter(|&c| self.outputs[c] == RuleOutput::Wildcard)
            .collect()
    }

    /// Every concrete table obtained by filling the wildcards.
    pub fn concretions(&self) -> Vec<SymRuleTable> {
        let wild = self.wildcard_columns();
        (0u32..1 << wild.len())
            .map(|mask| {
                let mut outputs = self.outputs;
                for (bit, &col) in wild.iter().enumerate() {
                    outputs[col] = RuleOutput::from(mask >> (wild.len() - 1 - bit) & 1 == 1);
                }
                SymRuleTable {
                    name: self.name.clone(),
                    outputs,
                }
            })
            .collect()
    }

    /// Whether `other` is one of this table's concretions.
    pub fn admits(&self, other: &SymRuleTable) -> bool {
        self.outputs
            .iter()
            .zip(other.outputs.iter())
            .all(|(a, b)| *a == RuleOutput::Wildcard || a == b)
    }

    pub fn expand(&self, wildcard_choice: bool) -> FullRuleTable {
        let mut bits = 0u32;
        for n in Neighborhood::all() {
            if self.output(classify(n)).resolve(wildcard_choice) {
                bits |= 1 << n.code();
            }
        }
        FullRuleTable { bits }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }
}

impl fmt::Display for SymRuleTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.name {
            Some(name) => write!(f, "{name} [{}]", self.row()),
            None => write!(f, "[{}]", self.row()),
        }
    }
}

/// A local rule over all 32 raw neighborhoods, stored as a bitmask indexed by
/// [`Neighborhood::code`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FullRuleTable {
    bits: u32,
}

impl FullRuleTable {
    pub const fn from_bits(bits: u32) -> Self {
        FullRuleTable { bits }
    }

    pub const fn bits(self) -> u32 {
        self.bits
    }

    pub const fn constant(value: bool) -> Self {
        FullRuleTable {
            bits: if value { u32::MAX } else { 0 },
        }
    }

    #[inline]
    pub const fn apply_code(self, code: u8) -> bool {
        self.bits >> code & 1 == 1
    }

    #[inline]
    pub const fn apply(self, n: Neighborhood) -> bool {
        self.apply_code(n.code())
    }

    pub fn with_flipped(self, n: Neighborhood) -> Self {
        FullRuleTable {
            bits: self.bits ^ 1 << n.code(),
        }
    }

    /// True iff the table takes one value on every dihedral orbit.
    pub fn validate_symmetry(self) -> bool {
        Neighborhood::all().all(|n| {
            let v = self.apply(n);
            n.dihedral_images().iter().all(|&m| self.apply(m) == v)
        })
    }

    /// A dead cell with a dead neighborhood stays dead, so a finite
    /// configuration stays finite.
    pub fn is_quiescent(self) -> bool {
        !self.apply_code(0)
    }

    /// Collapses a symmetric table back to its class outputs.
    pub fn to_sym(self) -> Option<SymRuleTable> {
        if !self.validate_symmetry() {
            return None;
        }
        let mut outputs = [RuleOutput::Zero; 12];
        for (col, class) in NeighborhoodClass::COLUMNS.iter().enumerate() {
            outputs[col] = RuleOutput::from(self.apply(class.representative()));
        }
        Some(SymRuleTable::new(outputs))
    }
}
