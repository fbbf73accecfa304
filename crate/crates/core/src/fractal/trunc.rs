use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{BitSeq, FractalError};

/// A partial sum over pieces `0..=n` and a bound on what the remaining pieces
/// can add for any continuation of the first `n + 1` digits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Truncation {
    pub n: usize,
    pub partial: BigRational,
    pub tail_bound: BigRational,
}

impl Truncation {
    pub fn upper(&self) -> BigRational {
        &self.partial + &self.tail_bound
    }
}

/// Constant `C` of the tail bound `sum_{i>N} f_i(y) <= C 4^{-z_N}`.
///
/// With `o_i` the first zero at or after `i`, `f_i(y) <= 4^{c_i + 1 - o_i}`.
/// Writing `Z_i` for the zeros among `y_1 .. y_{i-1}`, `c_i = i - 1 - Z_i`,
/// so inside one run of ones the bounds are `4^{-Z-1}, 4^{-Z-2}, ..` read from
/// the right end of the run and sum to at most `(1/3) 4^{-Z}`. Runs past
/// position `N` have pairwise distinct `Z >= z_N`, which gives
/// `(1/3)(4/3) 4^{-z_N} = (4/9) 4^{-z_N}`.
pub fn tail_constant() -> BigRational {
    BigRational::new(4.into(), 9.into())
}

fn pow4_inv(e: usize) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::one() << (2 * e))
}

fn zeros_after_x0(bits: &[u8], n: usize) -> usize {
    bits[1..=n].iter().filter(|&&b| b == 0).count()
}

/// `F` summed over pieces `i <= n`, with a certified bound on the rest.
///
/// Exact expansions give `partial = sum_{i<=n} f_i(x)`. A stream prefix gives
/// the smallest value the first `n + 1` digits allow (digits past `n` taken
/// as ones); its bound also covers the spread of those head pieces.
#[allow(non_snake_case)]
pub fn F_trunc(x: &BitSeq, n: usize) -> Result<Truncation, FractalError> {
    Ok(F_trunc_all(x, n)?.pop().expect("n + 1 entries"))
}

/// [`F_trunc`] for every `N` in `0..=n`.
#[allow(non_snake_case)]
pub fn F_trunc_all(x: &BitSeq, n: usize) -> Result<Vec<Truncation>, FractalError> {
    let bits = x.prefix(n + 1)?;
    if x.is_exact() {
        let pieces = exact_f_pieces(x, &bits);
        let mut acc = BigRational::zero();
        Ok((0..=n)
            .map(|m| {
                acc += &pieces[m];
                Truncation {
                    n: m,
                    partial: acc.clone(),
                    tail_bound: exact_tail(&bits, m),
                }
            })
            .collect())
    } else {
        Ok((0..=n).map(|m| stream_f(&bits, m)).collect())
    }
}

fn exact_tail(bits: &[u8], m: usize) -> BigRational {
    if m == 0 {
        // z_0 is an empty count
        return tail_constant();
    }
    tail_constant() * pow4_inv(zeros_after_x0(bits, m))
}

/// `f_0 ..= f_n` for an exact expansion.
fn exact_f_pieces(x: &BitSeq, bits: &[u8]) -> Vec<BigRational> {
    let value = x.exact_value().expect("exact");
    let mut head = BigRational::zero();
    let mut ones = 0usize;
    let mut out = Vec::with_capacity(bits.len());
    for (i, &b) in bits.iter().enumerate() {
        let unit = BigRational::new(BigInt::one(), BigInt::one() << i);
        if b == 1 {
            // T_i = 2^{1-i} - (x - head)
            let t = &unit * BigInt::from(2) - (&value - &head);
            out.push(BigRational::from_integer(BigInt::one() << (2 * ones)) * &t * &t);
            ones += 1;
            head += unit;
        } else {
            out.push(BigRational::zero());
        }
    }
    out
}

/// Stream digits `x_0 ..= x_m`, continuation unknown.
fn stream_f(bits: &[u8], m: usize) -> Truncation {
    // all quantities scaled by 2^m
    let mut partial = BigInt::zero();
    let mut slack = BigInt::zero();
    let mut ones = 0usize;
    let mut zero_mass = BigInt::zero();
    let mut masses = vec![BigInt::zero(); m + 1];
    for i in (0..=m).rev() {
        if bits[i] == 0 {
            zero_mass += BigInt::one() << (m - i);
        }
        masses[i] = zero_mass.clone();
    }
    for i in 0..=m {
        if bits[i] == 1 {
            let t = &masses[i];
            let weight = BigInt::one() << (2 * ones);
            partial += &weight * t * t;
            // (t + 1)^2 - t^2
            slack += &weight * (t * 2 + 1);
            ones += 1;
        }
    }
    let scale = BigInt::one() << (2 * m);
    let partial = BigRational::new(partial, scale.clone());
    let slack = BigRational::new(slack, scale);
    Truncation {
        n: m,
        partial,
        tail_bound: slack + exact_tail(bits, m),
    }
}

/// `G` summed over pieces `i <= n`, with a bound on the rest.
///
/// The pieces satisfy `0 <= g_i <= (3/2) f_i`, so the bound is `3/2` times
/// the `F` bound. A stream is irrational, where `g_i = (3/2) f_i` exactly.
#[allow(non_snake_case)]
pub fn G_trunc(x: &BitSeq, n: usize) -> Result<Truncation, FractalError> {
    let three_halves = BigRational::new(3.into(), 2.into());
    let f = F_trunc(x, n)?;
    let partial = match x {
        BitSeq::Finite(_) if x.last_one().is_some_and(|k| k <= n) => {
            let k = x.last_one().expect("nonzero");
            let correction = BigRational::new(BigInt::one(), BigInt::from(2) << (2 * k));
            let ones_before = (0..k).filter(|&j| x.bit(j) == Some(1)).count();
            &f.partial * &three_halves
                - correction * BigRational::from_integer(BigInt::one() << (2 * ones_before))
        }
        _ => &f.partial * &three_halves,
    };
    Ok(Truncation {
        n,
        partial,
        tail_bound: f.tail_bound * three_halves,
    })
}
