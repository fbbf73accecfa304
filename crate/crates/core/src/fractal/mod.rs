//! The functions `F` and `G` built from the ta and tb censuses, the step
//! functions `H_k`, and Salem's singular function, evaluated exactly.

mod bits;
mod dyadic;
mod eval;
mod trunc;

use std::io::Write;

use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Serialize;
use thiserror::Error;

pub use bits::{is_dyadic, BitSeq};
pub use dyadic::{Dyadic, MAX_LEVEL};
pub use eval::{
    f_piece, f_series, g_piece, g_series, gfh_identity_residual, gfh_identity_residual_literal,
    salem_eval, F_eval, F_interior_bound_check, G_eval, G_limit_probe, H_eval, H_eval_rational,
};
pub(crate) use eval::{scaled_f, scaled_g};
pub use trunc::{tail_constant, F_trunc, F_trunc_all, G_trunc, Truncation};

use crate::census::CensusError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FractalError {
    #[error("cannot parse `{0}` as a dyadic t/2^k")]
    Parse(String),
    #[error("{0} is outside [0, 1]")]
    OutOfUnitInterval(String),
    #[error("level {0} exceeds the supported maximum of 63")]
    LevelTooLarge(u32),
    #[error("level {level} is below the dyadic's own level {needed}")]
    LevelBelowDyadic { level: u32, needed: u32 },
    #[error("insufficient bits to evaluate piece {index} exactly")]
    InsufficientBits { index: usize },
    #[error("too few bits: need {needed}, have {available}")]
    TooFewBits { needed: usize, available: usize },
    #[error("{0} is not an interior point of (0, 1)")]
    NotInterior(String),
    #[error("alpha = {0} must lie strictly between 0 and 1")]
    AlphaOutOfRange(String),
    #[error(transparent)]
    Census(#[from] CensusError),
    #[error("csv: {0}")]
    Csv(String),
}

/// `num/den` for integers too.
pub fn fraction(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// 17 significant digits in scientific notation.
pub fn decimal(r: &BigRational) -> String {
    format!("{:.16e}", r.to_f64().unwrap_or(f64::NAN))
}

/// One row of the sample export.
#[derive(Debug, Clone, Serialize)]
pub struct SampleRow {
    pub x_num: u64,
    pub x_den: u64,
    #[serde(rename = "F")]
    pub f: String,
    #[serde(rename = "G")]
    pub g: String,
    #[serde(rename = "H_k")]
    pub h: String,
    #[serde(rename = "L_alpha")]
    pub salem: String,
    #[serde(rename = "F_decimal")]
    pub f_decimal: String,
    #[serde(rename = "G_decimal")]
    pub g_decimal: String,
    #[serde(rename = "H_k_decimal")]
    pub h_decimal: String,
    #[serde(rename = "L_alpha_decimal")]
    pub salem_decimal: String,
}

/// `F`, `G`, `H_k` and `L_alpha` on every point of the level-`level` grid.
pub fn sample_grid(level: u32, k: u32, alpha: &BigRational) -> Result<Vec<SampleRow>, FractalError> {
    if level > MAX_LEVEL {
        return Err(FractalError::LevelTooLarge(level));
    }
    Dyadic::grid(level)
        .map(|d| {
            let (f, g, h) = (F_eval(d), G_eval(d), H_eval(k, d));
            let l = salem_eval(alpha, d)?;
            Ok(SampleRow {
                x_num: d.numerator(),
                x_den: d.denominator(),
                f_decimal: decimal(&f),
                g_decimal: decimal(&g),
                h_decimal: decimal(&h),
                salem_decimal: decimal(&l),
                f: fraction(&f),
                g: fraction(&g),
                h: fraction(&h),
                salem: fraction(&l),
            })
        })
        .collect()
}

pub fn write_samples_csv<W: Write>(rows: &[SampleRow], out: W) -> Result<(), FractalError> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row).map_err(|e| FractalError::Csv(e.to_string()))?;
    }
    w.flush().map_err(|e| FractalError::Csv(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sample_csv_layout() {
        let rows = sample_grid(1, 1, &BigRational::new(1.into(), 5.into())).unwrap();
        let mut buf = Vec::new();
        write_samples_csv(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(
            lines.next().unwrap(),
            "x_num,x_den,F,G,H_k,L_alpha,F_decimal,G_decimal,H_k_decimal,L_alpha_decimal"
        );
        assert_eq!(
            lines.nth(1).unwrap(),
            "1,2,1/4,1/4,1/4,1/5,2.5000000000000000e-1,2.5000000000000000e-1,2.5000000000000000e-1,2.0000000000000001e-1"
        );
    }

    #[test]
    fn decimal_digits() {
        assert_eq!(decimal(&BigRational::new(1.into(), 3.into())), "3.3333333333333331e-1");
    }
}
