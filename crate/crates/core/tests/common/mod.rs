//! Reference implementations written straight from the definitions, sharing
//! no code with the library beyond its public types.
#![allow(dead_code)]

use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub fn q(p: i64, d: i64) -> BigRational {
    BigRational::new(p.into(), d.into())
}

pub fn pow2_inv(e: usize) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::one() << e)
}

fn column_of(u: bool, l: bool, c: bool, r: bool, d: bool) -> usize {
    let ring = [u, l, r, d].iter().filter(|&&b| b).count();
    let slot = match ring {
        4 => 0,
        3 => 1,
        2 if (u && d) || (l && r) => 2,
        2 => 3,
        1 => 4,
        _ => 5,
    };
    if c {
        slot
    } else {
        6 + slot
    }
}

/// Populations `num(1..=t_max)` of the automaton with class row `row`
/// (column order `1/111/1 ... 0/000/0`) grown from one live cell.
pub fn sim_populations(row: &str, t_max: usize) -> Vec<u64> {
    let out: Vec<bool> = row.chars().map(|ch| ch == '1').collect();
    assert_eq!(out.len(), 12);
    let mut live: HashSet<(i64, i64)> = HashSet::from([(0, 0)]);
    let mut pops = Vec::with_capacity(t_max);
    for _ in 0..t_max {
        pops.push(live.len() as u64);
        let mut next = HashSet::new();
        let mut seen = HashSet::new();
        for &(i, j) in &live {
            for cell in [(i, j), (i + 1, j), (i - 1, j), (i, j + 1), (i, j - 1)] {
                if !seen.insert(cell) {
                    continue;
                }
                let (x, y) = cell;
                let col = column_of(
                    live.contains(&(x, y + 1)),
                    live.contains(&(x - 1, y)),
                    live.contains(&(x, y)),
                    live.contains(&(x + 1, y)),
                    live.contains(&(x, y - 1)),
                );
                if out[col] {
                    next.insert(cell);
                }
            }
        }
        live = next;
    }
    pops
}

/// Binary digits `x_0 ..= x_level` of `t / 2^level`.
pub fn digits(t: u64, level: u32) -> Vec<u8> {
    (0..=level).map(|i| ((t >> (level - i)) & 1) as u8).collect()
}

/// `sum_{j>=i} (1 - x_j) 2^{-j}` for the finite expansion `bits` padded with
/// zeros.
fn zero_tail(bits: &[u8], i: usize) -> BigRational {
    let mut s = BigRational::zero();
    for (j, &b) in bits.iter().enumerate().skip(i) {
        if b == 0 {
            s += pow2_inv(j);
        }
    }
    // positions past the end: sum_{j>=len} 2^{-j} = 2^{1-len}
    let start = bits.len().max(i);
    s + pow2_inv(start) * BigInt::from(2)
}

/// `F` by the series, term by term.
pub fn naive_f(bits: &[u8]) -> BigRational {
    let mut total = BigRational::zero();
    let mut ones = 0u32;
    for (i, &b) in bits.iter().enumerate() {
        if b == 1 {
            let t = zero_tail(bits, i);
            total += BigRational::from_integer(BigInt::from(4).pow(ones)) * &t * &t;
            ones += 1;
        }
    }
    total
}

/// `G` by the series, term by term.
pub fn naive_g(bits: &[u8]) -> BigRational {
    let mut total = BigRational::zero();
    let mut ones = 0u32;
    for (i, &b) in bits.iter().enumerate() {
        if b == 1 {
            let t = zero_tail(bits, i);
            let prod_zero = bits[i + 1..].iter().all(|&x| x == 0);
            let mut inner = q(3, 2) * &t * &t;
            if prod_zero {
                inner -= q(1, 2) * pow2_inv(2 * i);
            }
            total += BigRational::from_integer(BigInt::from(4).pow(ones)) * inner;
            ones += 1;
        }
    }
    total
}

/// `H_k` as a lookup table built by enumerating every digit string
/// `x̂_1 .. x̂_k`: the point `sum x̂_i 2^{-i} + 2^{-k}` gets `4^{sum x̂}/4^k`.
pub fn h_table(k: u32) -> HashMap<BigRational, BigRational> {
    let mut table = HashMap::new();
    for word in 0u64..(1 << k) {
        let mut x = pow2_inv(k as usize);
        let mut ones = 0u32;
        for i in 1..=k {
            if (word >> (k - i)) & 1 == 1 {
                x += pow2_inv(i as usize);
                ones += 1;
            }
        }
        let v = BigRational::new(BigInt::from(4).pow(ones), BigInt::from(4).pow(k));
        table.insert(x, v);
    }
    table
}

/// Salem's function on a rational with dyadic denominator, recursing on the
/// value itself.
pub fn naive_salem(alpha: &BigRational, x: &BigRational) -> BigRational {
    if x.is_zero() {
        return BigRational::zero();
    }
    if x.is_one() {
        return BigRational::one();
    }
    let two = BigRational::from_integer(2.into());
    if *x < q(1, 2) {
        alpha * naive_salem(alpha, &(x * &two))
    } else {
        (BigRational::one() - alpha) * naive_salem(alpha, &(x * &two - BigRational::one())) + alpha
    }
}

/// Milne's open rule on `[a, b]`: exact for cubics, never touches the ends.
pub fn milne(f: impl Fn(&BigRational) -> BigRational, a: &BigRational, b: &BigRational) -> BigRational {
    let h = (b - a) / BigInt::from(4);
    let x1 = a + &h;
    let x2 = &x1 + &h;
    let x3 = &x2 + &h;
    h * q(4, 3) * (f(&x1) * BigInt::from(2) - f(&x2) + f(&x3) * BigInt::from(2))
}

/// Digits of a dyadic rational in `[0, 1]`.
pub fn digits_of(x: &BigRational) -> Vec<u8> {
    let level = x.denom().trailing_zeros().unwrap_or(0) as usize;
    let mut out = Vec::with_capacity(level + 1);
    let mut r = x.clone();
    for i in 0..=level {
        let unit = pow2_inv(i);
        if r >= unit {
            out.push(1);
            r -= unit;
        } else {
            out.push(0);
        }
    }
    assert!(r.is_zero());
    out
}

/// `x_0 .. x_{n-1}` of `sqrt(2) - 1`, from the integer square root.
pub fn sqrt2_minus_1_bits(n: usize) -> Vec<u8> {
    let scaled = (BigInt::from(2) << (2 * n)).sqrt();
    // scaled = floor(sqrt(2) 2^n); drop the leading 1 (the integer part)
    let mut bits: Vec<u8> = (0..n)
        .rev()
        .map(|j| u8::from(scaled.bit(j as u64)))
        .collect();
    bits.insert(0, 0);
    bits.truncate(n);
    bits
}
