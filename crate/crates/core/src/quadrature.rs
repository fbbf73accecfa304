//! Exact dyadic Riemann sums for `F` and `G` and per-piece integrals.

use std::io::Write;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::census::{self, CensusError};
use crate::fractal::{decimal, scaled_f, scaled_g, Dyadic, H_eval};

/// Largest grid level summed point by point (`2^28` evaluations).
pub const MAX_GRID_LEVEL: u32 = 28;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuadratureError {
    #[error("level must be at least 1")]
    LevelTooSmall,
    #[error("grid level {0} exceeds {MAX_GRID_LEVEL}")]
    GridTooLarge(u32),
    #[error(transparent)]
    Census(#[from] CensusError),
    #[error("csv: {0}")]
    Csv(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RiemannReport {
    pub level: u32,
    pub sum: BigRational,
    pub target: BigRational,
    /// `|sum - target|`.
    pub error: BigRational,
    /// Closed form of `error`, when one is known.
    pub closed_error: Option<BigRational>,
}

impl RiemannReport {
    fn new(level: u32, sum: BigRational, target: BigRational, closed_error: Option<BigRational>) -> Self {
        let error = (&sum - &target).abs();
        RiemannReport {
            level,
            sum,
            target,
            error,
            closed_error,
        }
    }
}

fn ratio(n: impl Into<BigInt>, d: impl Into<BigInt>) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn pow_ratio(base: (i64, i64), e: u32) -> BigRational {
    ratio(BigInt::from(base.0).pow(e), BigInt::from(base.1).pow(e))
}

fn check_grid(k: u32) -> Result<(), QuadratureError> {
    match k {
        0 => Err(QuadratureError::LevelTooSmall),
        k if k > MAX_GRID_LEVEL => Err(QuadratureError::GridTooLarge(k)),
        _ => Ok(()),
    }
}

/// `(1/18)(8 (5/8)^k + 9 2^{-k} - 4^{-k})`.
pub fn closed_error_f(k: u32) -> BigRational {
    (pow_ratio((5, 8), k) * BigInt::from(8) + pow_ratio((1, 2), k) * BigInt::from(9)
        - pow_ratio((1, 4), k))
        / BigInt::from(18)
}

/// `2^{-k} sum_{t=1}^{2^k} F(t/2^k)`, summed point by point against `1/9`.
#[allow(non_snake_case)]
pub fn riemann_sum_F(k: u32) -> Result<RiemannReport, QuadratureError> {
    check_grid(k)?;
    let total: u128 = (1..=1u64 << k)
        .into_par_iter()
        .map(|t| scaled_f(t, k))
        .sum();
    let sum = ratio(BigInt::from(total), BigInt::from(1u8) << (3 * k as usize));
    Ok(RiemannReport::new(k, sum, ratio(1, 9), Some(closed_error_f(k))))
}

/// The same sum through the census: `cum_a(2^k) / 8^k`. No grid, any `k`.
#[allow(non_snake_case)]
pub fn riemann_sum_F_census(k: u32) -> Result<RiemannReport, QuadratureError> {
    if k == 0 {
        return Err(QuadratureError::LevelTooSmall);
    }
    let cum = census::cum_a_closed(k)?;
    let sum = ratio(BigInt::from(cum), BigInt::from(8u8).pow(k));
    Ok(RiemannReport::new(k, sum, ratio(1, 9), Some(closed_error_f(k))))
}

/// `2^{-k} sum_{t=1}^{2^k} G_k(t/2^k) = cum_b(2^k) / (2^k num_b(2^k))` against
/// `1/6`.
#[allow(non_snake_case)]
pub fn riemann_sum_G(k: u32) -> Result<RiemannReport, QuadratureError> {
    if k == 0 {
        return Err(QuadratureError::LevelTooSmall);
    }
    if k > 63 {
        return Err(QuadratureError::GridTooLarge(k));
    }
    let cum = census::cum_b_closed(k)?;
    let top = census::num_b_closed(1u64 << k)?;
    let sum = ratio(BigInt::from(cum), BigInt::from(top) << k as usize);
    Ok(RiemannReport::new(k, sum, ratio(1, 6), None))
}

/// [`riemann_sum_G`] summed point by point over `G_k`; slow reference.
#[allow(non_snake_case)]
pub fn riemann_sum_G_grid(k: u32) -> Result<RiemannReport, QuadratureError> {
    check_grid(k)?;
    let total: BigUint = (1..=1u64 << k)
        .into_par_iter()
        .map(|t| census::num_b_closed(t).expect("num_b is integral"))
        .sum();
    let top = census::num_b_closed(1u64 << k)?;
    let sum = ratio(BigInt::from(total), BigInt::from(top) << k as usize);
    Ok(RiemannReport::new(k, sum, ratio(1, 6), None))
}

/// `2^{-k} sum_{t=1}^{2^k} G(t/2^k)` with `G` itself rather than `G_k`.
#[allow(non_snake_case)]
pub fn riemann_sum_G_exact(k: u32) -> Result<RiemannReport, QuadratureError> {
    check_grid(k)?;
    let total: u128 = (1..=1u64 << k)
        .into_par_iter()
        .map(|t| scaled_g(t, k))
        .sum();
    let sum = ratio(BigInt::from(total), BigInt::from(1u8) << (3 * k as usize + 1));
    Ok(RiemannReport::new(k, sum, ratio(1, 6), None))
}

/// `int_0^1 f_i`: on each interval `[(2m+1)/2^i, (2m+2)/2^i)` the piece is
/// `4^{popcount(m)} ((2m+2)/2^i - x)^2`, integrating to
/// `4^{popcount(m)} / (3 8^i)`. Grouping the `m` by popcount gives
/// `sum_c C(i-1, c) 4^c / (3 8^i) = (1/24)(5/8)^{i-1}`.
pub fn integral_f_piece(i: u32) -> BigRational {
    if i == 0 {
        return BigRational::zero();
    }
    let mut numer = BigInt::zero();
    let mut binom = BigInt::from(1u8);
    for c in 0..i {
        numer += &binom << (2 * c as usize);
        binom = binom * BigInt::from(i - 1 - c) / BigInt::from(c + 1);
    }
    ratio(numer, BigInt::from(3u8) * BigInt::from(8u8).pow(i))
}

/// `H_k` vanishes off finitely many points.
#[allow(non_snake_case)]
pub fn integral_H(_k: u32) -> BigRational {
    BigRational::zero()
}

/// `2^{-level} sum_{t=1}^{2^level} H_k(t/2^level)`; at most `2^k / 2^level`.
#[allow(non_snake_case)]
pub fn grid_mean_H(k: u32, level: u32) -> Result<BigRational, QuadratureError> {
    check_grid(level)?;
    let total: BigRational = (1..=1u64 << level)
        .map(|t| H_eval(k, Dyadic::new(t, level).expect("on grid")))
        .sum();
    Ok(total / BigInt::from(1u64 << level))
}

/// One line of the report CSV.
#[derive(Debug, Clone, Serialize)]
pub struct ReportRow {
    pub k: u32,
    pub sum_num: String,
    pub sum_den: String,
    pub target: String,
    pub abs_error_decimal: String,
}

impl From<&RiemannReport> for ReportRow {
    fn from(r: &RiemannReport) -> Self {
        ReportRow {
            k: r.level,
            sum_num: r.sum.numer().to_string(),
            sum_den: r.sum.denom().to_string(),
            target: format!("{}/{}", r.target.numer(), r.target.denom()),
            abs_error_decimal: decimal(&r.error),
        }
    }
}

pub fn write_report_csv<W: Write>(reports: &[RiemannReport], out: W) -> Result<(), QuadratureError> {
    let mut w = csv::Writer::from_writer(out);
    for r in reports {
        w.serialize(ReportRow::from(r))
            .map_err(|e| QuadratureError::Csv(e.to_string()))?;
    }
    w.flush().map_err(|e| QuadratureError::Csv(e.to_string()))
}
