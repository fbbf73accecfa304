use std::collections::BTreeMap;

use num_bigint::BigUint;
use rayon::prelude::*;

use super::{BuiltinRule, RuleError, RuleName, RuleOutput, SymRuleTable};
use crate::census;
use crate::grid::DenseGrid;

/// Every concrete symmetric table whose orbit from the single site seed has
/// `population(T^{t-1} x_o) = oracle(t)` for `1 <= t <= horizon`, in
/// lexicographic order of the outputs.
///
/// Non-quiescent tables grow an infinite background and never match a finite
/// census. An empty result is a valid outcome.
pub fn search_rules<F>(oracle: F, horizon: u64) -> Result<Vec<SymRuleTable>, RuleError>
where
    F: Fn(u64) -> BigUint,
{
    if horizon < 2 {
        return Err(RuleError::HorizonTooShort(horizon));
    }
    let expected: Vec<BigUint> = (1..=horizon).map(oracle).collect();
    let mut hits: Vec<SymRuleTable> = (0u16..4096)
        .into_par_iter()
        .map(SymRuleTable::concrete_from_index)
        .filter(|table| matches_census(table, &expected))
        .collect();
    hits.sort_by(|a, b| a.outputs.cmp(&b.outputs));
    Ok(hits)
}

fn matches_census(table: &SymRuleTable, expected: &[BigUint]) -> bool {
    let rule = table.expand(false);
    if !rule.is_quiescent() {
        return false;
    }
    let mut grid = DenseGrid::seed(expected.len());
    for (n, want) in expected.iter().enumerate() {
        if n > 0 {
            grid = grid.step(rule);
        }
        if BigUint::from(grid.population()) != *want {
            return false;
        }
    }
    true
}

/// Whether resolving the wildcards to 0 and to 1 gives the same orbit from the
/// seed for `steps` steps.
pub fn wildcards_irrelevant(table: &SymRuleTable, steps: u64) -> bool {
    let (lo, hi) = (table.expand(false), table.expand(true));
    if !lo.is_quiescent() || !hi.is_quiescent() {
        return false;
    }
    let radius = steps as usize + 1;
    let (mut a, mut b) = (DenseGrid::seed(radius), DenseGrid::seed(radius));
    for _ in 0..steps {
        a = a.step(lo);
        b = b.step(hi);
        if a != b {
            return false;
        }
    }
    true
}

/// Columns fixed across all `tables` keep their value, the rest become `*`.
pub fn wildcard_pattern(tables: &[SymRuleTable]) -> Option<SymRuleTable> {
    let first = tables.first()?;
    let mut outputs = first.outputs;
    for t in &tables[1..] {
        for (slot, out) in outputs.iter_mut().zip(t.outputs) {
            if *slot != out {
                *slot = RuleOutput::Wildcard;
            }
        }
    }
    Some(SymRuleTable::new(outputs))
}

#[derive(Debug, Clone)]
pub struct Resolution {
    pub name: RuleName,
    pub matches: Vec<SymRuleTable>,
    pub pattern: Option<SymRuleTable>,
    /// Lexicographically smallest match.
    pub pinned: Option<SymRuleTable>,
    pub printed_admits_all: bool,
}

/// Outcome of matching each named census against all 4096 tables.
#[derive(Debug, Clone)]
pub struct RuleResolution {
    pub horizon: u64,
    pub by_name: BTreeMap<RuleName, Resolution>,
}

impl RuleResolution {
    pub fn get(&self, name: RuleName) -> &Resolution {
        &self.by_name[&name]
    }

    /// First `t` at which the pinned ta and ts0 censuses differ.
    pub fn ta_ts0_first_difference(&self) -> Option<u64> {
        let ta = self.get(RuleName::Ta).pinned.as_ref()?;
        let ts0 = self.get(RuleName::Ts0).pinned.as_ref()?;
        let pa = seed_populations(ta, self.horizon);
        let ps = seed_populations(ts0, self.horizon);
        pa.iter()
            .zip(&ps)
            .position(|(a, b)| a != b)
            .map(|i| i as u64 + 1)
    }
}

fn seed_populations(table: &SymRuleTable, horizon: u64) -> Vec<u64> {
    let rule = table.expand(false);
    let mut grid = DenseGrid::seed(horizon as usize);
    let mut out = vec![grid.population()];
    for _ in 1..horizon {
        grid = grid.step(rule);
        out.push(grid.population());
    }
    out
}

pub fn oracle_for(name: RuleName) -> impl Fn(u64) -> BigUint {
    move |t| census::num_closed(name, t).expect("closed-form census is integral")
}

/// Runs [`search_rules`] against the ta, tb and ts0 census formulas.
pub fn resolve_rule_ambiguity(horizon: u64) -> Result<RuleResolution, RuleError> {
    let mut by_name = BTreeMap::new();
    for name in RuleName::ALL {
        let matches = search_rules(oracle_for(name), horizon)?;
        let printed = BuiltinRule::get(name).printed;
        let printed_admits_all =
            printed.concretions().len() == matches.len() && matches.iter().all(|m| printed.admits(m));
        let pattern = wildcard_pattern(&matches).map(|p| p.with_name(name.as_str()));
        let pinned = matches.first().cloned().map(|p| p.with_name(name.as_str()));
        by_name.insert(
            name,
            Resolution {
                name,
                matches,
                pattern,
                pinned,
                printed_admits_all,
            },
        );
    }
    Ok(RuleResolution { horizon, by_name })
}
