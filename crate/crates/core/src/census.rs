//! Live-cell censuses of orbits from the single site seed.
//!
//! `num(t)` is the population of `T^{t-1} x_o` and `cum(t)` its running sum,
//! with `num(0) = cum(0) = 0`. Every closed form here is evaluated over big
//! integers; formulas that divide check that the division is exact and fail
//! with [`CensusError::NonIntegral`] otherwise.

use std::io::Write;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::grid::Automaton;
use crate::rules::RuleName;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CensusError {
    #[error("{formula}: {numerator} is not divisible by {denominator}")]
    NonIntegral {
        formula: &'static str,
        numerator: BigInt,
        denominator: BigInt,
    },
    #[error("{formula} evaluated to a negative value")]
    Negative { formula: &'static str },
    #[error("t = {t} is outside [2^{k}, 2^{})", k + 1)]
    OutOfRange { t: u64, k: u32 },
    #[error("csv output failed: {0}")]
    Csv(String),
}

/// Binary digits of a nonnegative integer, least significant first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryDigits {
    digits: Vec<u8>,
}

impl BinaryDigits {
    pub fn of(t: u64) -> Self {
        let len = 64 - t.leading_zeros() as usize;
        BinaryDigits {
            digits: (0..len).map(|i| (t >> i & 1) as u8).collect(),
        }
    }

    /// `t_i`, zero for every index past the top bit (and for negative indices,
    /// which the explicit sums reach at their boundary terms).
    pub fn digit(&self, i: i64) -> u8 {
        if i < 0 {
            return 0;
        }
        self.digits.get(i as usize).copied().unwrap_or(0)
    }

    /// Index of the highest set bit; `None` for zero.
    pub fn top(&self) -> Option<u32> {
        self.digits.len().checked_sub(1).map(|k| k as u32)
    }

    pub fn digit_sum(&self) -> u32 {
        self.digits.iter().map(|&d| d as u32).sum()
    }

    pub fn value(&self) -> u64 {
        self.digits
            .iter()
            .enumerate()
            .map(|(i, &d)| (d as u64) << i)
            .sum()
    }
}

fn top_bit(t: u64) -> u32 {
    63 - t.leading_zeros()
}

fn pow(base: u32, exp: u32) -> BigInt {
    num_traits::pow(BigInt::from(base), exp as usize)
}

fn pow4(exp: u32) -> BigUint {
    BigUint::one() << (2 * exp as usize)
}

fn exact_div(
    formula: &'static str,
    numerator: BigInt,
    denominator: BigInt,
) -> Result<BigInt, CensusError> {
    let (q, r) = numerator.div_rem(&denominator);
    if !r.is_zero() {
        return Err(CensusError::NonIntegral {
            formula,
            numerator,
            denominator,
        });
    }
    Ok(q)
}

fn to_natural(formula: &'static str, v: BigInt) -> Result<BigUint, CensusError> {
    v.to_biguint().ok_or(CensusError::Negative { formula })
}

/// `num_a` by the self-similarity recurrence
/// `num_a(t) = 4^{t_k} num_a(t - t_k 2^k) + t_k (2^{k+1} - t)^2`.
pub fn num_a_closed(t: u64) -> BigUint {
    match t {
        0 => BigUint::zero(),
        1 => BigUint::one(),
        _ => {
            let k = top_bit(t);
            let side = (BigInt::one() << (k + 1)) - BigInt::from(t);
            let square = (&side * &side).to_biguint().expect("square is nonnegative");
            num_a_closed(t - (1 << k)) * 4u32 + square
        }
    }
}

/// `num_a` by the unrolled sum
/// `sum_{i=0}^k t_{k-i} 4^{sum_{j=0}^i t_{k-j+1}} (2^{k-i+1} - t + sum_{j=0}^i t_{k-j+1} 2^{k-j+1})^2`.
///
/// The `j = 0` terms read `t_{k+1}`, which is zero by convention.
pub fn num_a_explicit(t: u64) -> BigUint {
    let digits = BinaryDigits::of(t);
    let Some(k) = digits.top() else {
        return BigUint::zero();
    };
    let k = k as i64;
    let mut total = BigInt::zero();
    for i in 0..=k {
        if digits.digit(k - i) == 0 {
            continue;
        }
        let mut exponent = 0u32;
        let mut removed = BigInt::zero();
        for j in 0..=i {
            let d = digits.digit(k - j + 1);
            exponent += d as u32;
            if d == 1 {
                removed += BigInt::one() << (k - j + 1) as usize;
            }
        }
        let base = (BigInt::one() << (k - i + 1) as usize) - BigInt::from(t) + removed;
        total += pow(4, exponent) * &base * &base;
    }
    total.to_biguint().expect("sum of squares is nonnegative")
}

/// `cum_a(2^k) = (2 8^k + 8 5^k + 9 4^k - 2^k) / 18`.
pub fn cum_a_closed(k: u32) -> Result<BigUint, CensusError> {
    let bracket = pow(8, k) * 2 + pow(5, k) * 8 + pow(4, k) * 9 - pow(2, k);
    to_natural("cum_a", exact_div("cum_a", bracket, BigInt::from(18))?)
}

/// Pyramid decomposition of the ta spatio-temporal pattern: `u_k = cum_a(2^k)`
/// and `v_k`, the population of the central pyramid, with
/// `u_0 = 1`, `v_{k+1} = (2 8^k - 3 4^k + 2^k)/6` and `u_{k+1} = 5 u_k + v_{k+1}`.
/// `v_0` is reported as 0.
pub fn pyramid_counts_a(k: u32) -> Result<(BigUint, BigUint), CensusError> {
    let mut u = BigInt::one();
    let mut v = BigInt::zero();
    for m in 0..k {
        v = exact_div(
            "v_k",
            pow(8, m) * 2 - pow(4, m) * 3 + pow(2, m),
            BigInt::from(6),
        )?;
        u = u * 5 + &v;
    }
    Ok((to_natural("u_k", u)?, to_natural("v_k", v)?))
}

/// Correction term of the tb census,
/// `A(t) = 2 (2^{k+1} - t + 1)(2^{k+1} - t) + 1 - (2/3)(2^k + 1)(2^k + 2) prod_{j<k} (1 - t_j)`,
/// for `2^k <= t < 2^{k+1}`. The product is empty (= 1) when `k = 0`.
pub fn a_b(t: u64, k: u32) -> Result<BigUint, CensusError> {
    if k >= 64 || t >> k != 1 {
        return Err(CensusError::OutOfRange { t, k });
    }
    let digits = BinaryDigits::of(t);
    let side = (BigInt::one() << (k + 1)) - BigInt::from(t);
    let square_part = (&side + 1) * &side * 2 + 1;
    let all_low_zero = (0..k as i64).all(|j| digits.digit(j) == 0);
    let value = if all_low_zero {
        let p = BigInt::one() << k;
        let correction = exact_div("A(t)", (&p + 1) * (&p + 2) * 2, BigInt::from(3))?;
        square_part - correction
    } else {
        square_part
    };
    to_natural("A(t)", value)
}

/// `num_b` by the recurrence `num_b(t) = 4^{t_k} num_b(t - t_k 2^k) + t_k A(t)`.
pub fn num_b_closed(t: u64) -> Result<BigUint, CensusError> {
    if t == 0 {
        return Ok(BigUint::zero());
    }
    let k = top_bit(t);
    Ok(num_b_closed(t - (1 << k))? * 4u32 + a_b(t, k)?)
}

/// `num_b` by the unrolled sum
/// `sum_{i=0}^k t_{k-i} 4^{sum_{j=0}^i t_{k-j+1}} A(sum_{j=0}^{k-i} t_j 2^j)`,
/// where each `A` uses the top bit of its own (reduced) argument.
pub fn num_b_explicit(t: u64) -> Result<BigUint, CensusError> {
    let digits = BinaryDigits::of(t);
    let Some(k) = digits.top() else {
        return Ok(BigUint::zero());
    };
    let k = k as i64;
    let mut total = BigUint::zero();
    for i in 0..=k {
        if digits.digit(k - i) == 0 {
            continue;
        }
        let exponent: u32 = (0..=i).map(|j| digits.digit(k - j + 1) as u32).sum();
        let low_bits = (k - i + 1) as u32;
        let reduced = if low_bits >= 64 {
            t
        } else {
            t & ((1u64 << low_bits) - 1)
        };
        total += pow4(exponent) * a_b(reduced, top_bit(reduced))?;
    }
    Ok(total)
}

/// `cum_b(2^k) = (8 5^k + 2 8^k - 2^k) / 9`.
pub fn cum_b_closed(k: u32) -> Result<BigUint, CensusError> {
    let bracket = pow(5, k) * 8 + pow(8, k) * 2 - pow(2, k);
    to_natural("cum_b", exact_div("cum_b", bracket, BigInt::from(9))?)
}

/// Pyramid decomposition of the tb pattern: `y_k = cum_b(2^k)` and `z_k`, with
/// `y_0 = 1`, `z_{k+1} = (2 8^k + 2^k)/3` and `y_{k+1} = 5 y_k + z_{k+1}`.
pub fn pyramid_counts_b(k: u32) -> Result<(BigUint, BigUint), CensusError> {
    let mut y = BigInt::one();
    let mut z = BigInt::zero();
    for m in 0..k {
        z = exact_div("z_k", pow(8, m) * 2 + pow(2, m), BigInt::from(3))?;
        y = y * 5 + &z;
    }
    Ok((to_natural("y_k", y)?, to_natural("z_k", z)?))
}

/// `num_S0(t) = 4^{digit sum of t - 1}` for `t >= 1`.
pub fn num_s0_closed(t: u64) -> BigUint {
    if t == 0 {
        return BigUint::zero();
    }
    pow4((t - 1).count_ones())
}

/// `cum_S0(2^k) = 5^k`.
pub fn cum_s0_closed(k: u32) -> BigUint {
    pow(5, k).to_biguint().expect("positive power")
}

/// `cum_S0(t)` for arbitrary `t`, summed from the closed `num_S0`.
pub fn cum_s0_at(t: u64) -> BigUint {
    (1..=t).map(num_s0_closed).sum()
}

/// Closed-form `num` of a named rule.
pub fn num_closed(rule: RuleName, t: u64) -> Result<BigUint, CensusError> {
    match rule {
        RuleName::Ta => Ok(num_a_closed(t)),
        RuleName::Tb => num_b_closed(t),
        RuleName::Ts0 => Ok(num_s0_closed(t)),
    }
}

/// Closed-form `cum(2^k)` of a named rule.
pub fn cum_closed(rule: RuleName, k: u32) -> Result<BigUint, CensusError> {
    match rule {
        RuleName::Ta => cum_a_closed(k),
        RuleName::Tb => cum_b_closed(k),
        RuleName::Ts0 => Ok(cum_s0_closed(k)),
    }
}

/// `num[t]` and `cum[t]` for `0 <= t <= t_max`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusSeries {
    pub rule: String,
    pub num: Vec<BigUint>,
    pub cum: Vec<BigUint>,
}

impl CensusSeries {
    /// Builds the series from `num(1..=t_max)`; index 0 is the zero convention.
    pub fn from_num(rule: impl Into<String>, num_tail: impl IntoIterator<Item = BigUint>) -> Self {
        let mut num = vec![BigUint::zero()];
        num.extend(num_tail);
        let mut cum = Vec::with_capacity(num.len());
        let mut running = BigUint::zero();
        for n in &num {
            running += n;
            cum.push(running.clone());
        }
        CensusSeries {
            rule: rule.into(),
            num,
            cum,
        }
    }

    pub fn closed(rule: RuleName, t_max: u64) -> Result<Self, CensusError> {
        let num = (1..=t_max)
            .map(|t| num_closed(rule, t))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(CensusSeries::from_num(rule.as_str(), num))
    }

    pub fn t_max(&self) -> u64 {
        self.num.len() as u64 - 1
    }
}

/// Census of `automaton` from the single site seed by simulation.
pub fn census_sim(rule: impl Into<String>, automaton: &Automaton, t_max: u64) -> CensusSeries {
    let pops = if t_max == 0 {
        Vec::new()
    } else {
        automaton.seed_populations(t_max - 1)
    };
    CensusSeries::from_num(rule, pops.into_iter().map(BigUint::from))
}

/// One line of the simulation-versus-closed-form CSV.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusRow {
    pub t: u64,
    pub num_sim: String,
    pub num_closed: String,
    pub cum_sim: String,
    pub cum_closed: String,
    #[serde(rename = "match")]
    pub matched: u8,
}

/// Pairs two series of equal length; rows from `t = 1`.
pub fn compare(sim: &CensusSeries, closed: &CensusSeries) -> Vec<CensusRow> {
    (1..sim.num.len().min(closed.num.len()))
        .map(|t| {
            let ok = sim.num[t] == closed.num[t] && sim.cum[t] == closed.cum[t];
            CensusRow {
                t: t as u64,
                num_sim: sim.num[t].to_string(),
                num_closed: closed.num[t].to_string(),
                cum_sim: sim.cum[t].to_string(),
                cum_closed: closed.cum[t].to_string(),
                matched: ok as u8,
            }
        })
        .collect()
}

/// CSV with header `t,num_sim,num_closed,cum_sim,cum_closed,match`.
pub fn write_census_csv<W: Write>(rows: &[CensusRow], out: W) -> Result<(), CensusError> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row).map_err(|e| CensusError::Csv(e.to_string()))?;
    }
    w.flush().map_err(|e| CensusError::Csv(e.to_string()))
}

/// Recurrence check for the ta census at time `t`:
/// `num(t) - 4^{t_k} num(t - 2^k)` must equal `(2^{k+1} - t)^2`.
pub fn self_similarity_defect_a(num: &[BigUint], t: u64) -> Option<BigInt> {
    if t < 2 {
        return None;
    }
    let k = top_bit(t);
    let prev = num.get((t - (1 << k)) as usize)?;
    let cur = num.get(t as usize)?;
    let side = (BigInt::one() << (k + 1)) - BigInt::from(t);
    Some(BigInt::from(cur.clone()) - BigInt::from(prev.clone()) * 4 - &side * &side)
}
