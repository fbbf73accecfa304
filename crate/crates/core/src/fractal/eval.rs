use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::bits::{is_dyadic, prefix_value};
use super::{BitSeq, Dyadic, FractalError};
use crate::census;

fn ratio(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> BigRational {
    BigRational::new(numer.into(), denom.into())
}

fn pow4(e: u32) -> BigInt {
    BigInt::one() << (2 * e as usize)
}

/// `x_i 4^{c_i} (sum_{j>=i} (1 - x_j) 2^{-j})^2`, `c_i` the number of ones
/// among `x_0 .. x_{i-1}`.
///
/// Exact for finite and periodic expansions. On a stream prefix only pieces
/// with `x_i = 0` (which vanish) can be evaluated.
pub fn f_piece(x: &BitSeq, i: usize) -> Result<BigRational, FractalError> {
    let bit = x.bit(i).ok_or(FractalError::InsufficientBits { index: i })?;
    if bit == 0 {
        return Ok(BigRational::zero());
    }
    if !x.is_exact() {
        return Err(FractalError::InsufficientBits { index: i });
    }
    let c = ones_before(x, i);
    let t = tail_zero_mass(x, i);
    Ok(BigRational::from_integer(pow4(c)) * &t * &t)
}

/// The `G` analogue of [`f_piece`]:
/// `x_i 4^{c_i} ((3/2) T_i^2 - prod_{j>i} (1 - x_j) / (2 4^i))`.
pub fn g_piece(x: &BitSeq, i: usize) -> Result<BigRational, FractalError> {
    let bit = x.bit(i).ok_or(FractalError::InsufficientBits { index: i })?;
    if bit == 0 {
        return Ok(BigRational::zero());
    }
    if !x.is_exact() {
        return Err(FractalError::InsufficientBits { index: i });
    }
    let c = ones_before(x, i);
    let t = tail_zero_mass(x, i);
    let mut inner = ratio(3, 2) * &t * &t;
    if x.last_one() == Some(i) {
        inner -= ratio(1, BigInt::from(2) * pow4(i as u32));
    }
    Ok(BigRational::from_integer(pow4(c)) * inner)
}

fn ones_before(x: &BitSeq, i: usize) -> u32 {
    (0..i).filter(|&j| x.bit(j) == Some(1)).count() as u32
}

/// `T_i = sum_{j>=i} (1 - x_j) 2^{-j} = 2^{1-i} - (x - sum_{j<i} x_j 2^{-j})`.
fn tail_zero_mass(x: &BitSeq, i: usize) -> BigRational {
    let value = x.exact_value().expect("exact expansion");
    let head = match x {
        BitSeq::Finite(bits) => prefix_value(bits, i),
        _ => prefix_value(&x.prefix(i).expect("exact expansion"), i),
    };
    ratio(2, BigInt::one() << i) - (value - head)
}

/// `4^L F(t / 2^L)` as an integer, `L <= 63`.
///
/// With `x = t / 2^L`, `2^L T_i = 2^{L+1-i} - (t mod 2^{L+1-i})`, so every
/// term is an integer and the total is at most `4^L`.
pub(crate) fn scaled_f(t: u64, level: u32) -> u128 {
    let t = t as u128;
    let mut acc = 0u128;
    let mut ones = 0u32;
    for i in 0..=level {
        if t >> (level - i) & 1 == 1 {
            let span = 1u128 << (level + 1 - i);
            let tail = span - (t & (span - 1));
            acc += (tail * tail) << (2 * ones);
            ones += 1;
        }
    }
    acc
}

/// `2 4^L G(t / 2^L)` as an integer, `L <= 63`.
pub(crate) fn scaled_g(t: u64, level: u32) -> u128 {
    let t = t as u128;
    let last = if t == 0 { None } else { Some(level - t.trailing_zeros().min(level)) };
    let mut acc = 0u128;
    let mut ones = 0u32;
    for i in 0..=level {
        if t >> (level - i) & 1 == 1 {
            let span = 1u128 << (level + 1 - i);
            let tail = span - (t & (span - 1));
            let mut term = 3 * tail * tail;
            if last == Some(i) {
                term -= 1u128 << (2 * (level - i));
            }
            acc += term << (2 * ones);
            ones += 1;
        }
    }
    acc
}

fn u128_ratio(numer: u128, denom_log2: u32) -> BigRational {
    ratio(BigInt::from(numer), BigInt::one() << denom_log2 as usize)
}

/// `F` at a dyadic, summed over its finite expansion.
#[allow(non_snake_case)]
pub fn F_eval(d: Dyadic) -> BigRational {
    let r = d.reduced();
    u128_ratio(scaled_f(r.numerator(), r.level()), 2 * r.level())
}

/// `G` at a dyadic, summed over its finite expansion.
#[allow(non_snake_case)]
pub fn G_eval(d: Dyadic) -> BigRational {
    let r = d.reduced();
    u128_ratio(scaled_g(r.numerator(), r.level()), 2 * r.level() + 1)
}

/// `F_eval(d) < 4/9`, for `0 < d < 1`.
#[allow(non_snake_case)]
pub fn F_interior_bound_check(d: Dyadic) -> Result<bool, FractalError> {
    if d.is_zero() || d.is_one() {
        return Err(FractalError::NotInterior(d.to_string()));
    }
    Ok(F_eval(d) < ratio(4, 9))
}

/// `G_k(d) = num_b(d 2^k) / num_b(2^k)`.
#[allow(non_snake_case)]
pub fn G_limit_probe(d: Dyadic, k: u32) -> Result<BigRational, FractalError> {
    let r = d.reduced();
    if k < r.level() {
        return Err(FractalError::LevelBelowDyadic {
            level: k,
            needed: r.level(),
        });
    }
    if k > super::dyadic::MAX_LEVEL {
        return Err(FractalError::LevelTooLarge(k));
    }
    let t = r.numerator() << (k - r.level());
    let num = census::num_b_closed(t)?;
    let den = census::num_b_closed(1u64 << k)?;
    Ok(ratio(BigInt::from(num), BigInt::from(den)))
}

/// `H_k(d) = 4^{x̂_1 + .. + x̂_k} / 4^k` when `d` is a nonzero dyadic of level
/// at most `k`, else 0.
///
/// The digits `x̂` are those of the expansion ending in an infinite run of ones,
/// `d = sum_{i<=k} x̂_i 2^{-i} + 2^{-k}`, so `sum x̂ = popcount(d 2^k - 1)` and
/// `H_k(1) = 1`.
#[allow(non_snake_case)]
pub fn H_eval(k: u32, d: Dyadic) -> BigRational {
    let r = d.reduced();
    if r.is_zero() || r.level() > k {
        return BigRational::zero();
    }
    let t = (BigUint::from(r.numerator()) << (k - r.level()) as usize) - 1u32;
    let ones = t.count_ones() as u32;
    ratio(pow4(ones), pow4(k))
}

/// [`H_eval`] on any rational; non-dyadic points give 0.
#[allow(non_snake_case)]
pub fn H_eval_rational(k: u32, x: &BigRational) -> Result<BigRational, FractalError> {
    if !is_dyadic(x) {
        return Ok(BigRational::zero());
    }
    Ok(H_eval(k, dyadic_of(x)?))
}

fn dyadic_of(x: &BigRational) -> Result<Dyadic, FractalError> {
    let level = x.denom().trailing_zeros().unwrap_or(0) as u32;
    let numerator: u64 = x
        .numer()
        .try_into()
        .map_err(|_| FractalError::OutOfUnitInterval(x.to_string()))?;
    Dyadic::new(numerator, level)
}

/// Salem's singular function: `L(0) = 0`, `L(1) = 1`, `L(x) = a L(2x)` for
/// `x < 1/2` and `(1 - a) L(2x - 1) + a` otherwise. Terminates after
/// `level` halvings.
pub fn salem_eval(alpha: &BigRational, d: Dyadic) -> Result<BigRational, FractalError> {
    if *alpha <= BigRational::zero() || *alpha >= BigRational::one() {
        return Err(FractalError::AlphaOutOfRange(alpha.to_string()));
    }
    let beta = BigRational::one() - alpha;
    let r = d.reduced();
    // L(d) = scale L(y) + shift
    let mut scale = BigRational::one();
    let mut shift = BigRational::zero();
    let (mut t, mut level) = (r.numerator(), r.level());
    while t != 0 && t != 1u64 << level {
        let half = 1u64 << (level - 1);
        if t < half {
            scale *= alpha;
        } else {
            shift += &scale * alpha;
            scale *= &beta;
            t -= half;
        }
        level -= 1;
    }
    if t != 0 {
        shift += scale;
    }
    Ok(shift)
}

/// `G - (3/2) F + (1/2) H_{k_x}(d)`, `k_x` the index of the last 1-bit; zero
/// on every dyadic.
pub fn gfh_identity_residual(d: Dyadic) -> BigRational {
    let mut residual = G_eval(d) - ratio(3, 2) * F_eval(d);
    if let Some(kx) = d.last_one() {
        residual += ratio(1, 2) * H_eval(kx, d);
    }
    residual
}

/// The relation exactly as printed, `G - (3/2) F + (1/2) H_{k_x}(d + 2^{-k_x})`.
///
/// Not an identity: it is nonzero at `1/2` (residual `3/8`). `None` when the
/// shifted argument leaves `[0, 1]` or `d = 0`.
pub fn gfh_identity_residual_literal(d: Dyadic) -> Option<BigRational> {
    let kx = d.last_one()?;
    let r = d.reduced();
    let shifted = Dyadic::new(r.numerator() + 1, kx).ok()?;
    Some(G_eval(d) - ratio(3, 2) * F_eval(d) + ratio(1, 2) * H_eval(kx, shifted))
}

/// Sum of [`f_piece`] over the finite expansion; a slow reference for
/// [`F_eval`].
pub fn f_series(d: Dyadic) -> BigRational {
    let x = BitSeq::from_dyadic(d);
    let n = x.last_one().map_or(0, |k| k + 1);
    (0..n).map(|i| f_piece(&x, i).expect("finite")).sum()
}

/// Sum of [`g_piece`] over the finite expansion.
pub fn g_series(d: Dyadic) -> BigRational {
    let x = BitSeq::from_dyadic(d);
    let n = x.last_one().map_or(0, |k| k + 1);
    (0..n).map(|i| g_piece(&x, i).expect("finite")).sum()
}
