use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{Dyadic, FractalError};

/// Binary expansion `x = sum_{i>=0} x_i 2^{-i}` of a point of `[0, 1]`.
///
/// `Finite` and `Periodic` describe the number exactly. Dyadic rationals are
/// always held in their finite form; a periodic expansion never ends in all
/// zeros or all ones. `Stream` carries a known prefix of a number the caller
/// asserts to be irrational (its expansion is neither finite nor periodic).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BitSeq {
    /// `x_0 ..= x_k` with `x_k = 1` (empty for zero).
    Finite(Vec<u8>),
    /// `prefix` at positions `0..p`, then `cycle` repeated forever.
    Periodic { prefix: Vec<u8>, cycle: Vec<u8> },
    /// `x_0 .. x_{n-1}` of an irrational number.
    Stream(Vec<u8>),
}

impl BitSeq {
    pub fn from_dyadic(d: Dyadic) -> BitSeq {
        let r = d.reduced();
        if r.is_zero() {
            return BitSeq::Finite(Vec::new());
        }
        BitSeq::Finite((0..=r.level()).map(|i| r.bit(i)).collect())
    }

    /// Canonical expansion of an exact rational in `[0, 1]` by long division.
    pub fn from_rational(x: &BigRational) -> Result<BitSeq, FractalError> {
        if x.is_negative() || *x > BigRational::one() {
            return Err(FractalError::OutOfUnitInterval(x.to_string()));
        }
        if x.is_one() {
            return Ok(BitSeq::Finite(vec![1]));
        }
        let q = x.denom().clone();
        let mut r = x.numer().clone();
        let mut bits = vec![0u8];
        let mut seen: HashMap<BigInt, usize> = HashMap::new();
        loop {
            if r.is_zero() {
                while bits.last() == Some(&0) {
                    bits.pop();
                }
                return Ok(BitSeq::Finite(bits));
            }
            if let Some(&start) = seen.get(&r) {
                let cycle = bits.split_off(start);
                return Ok(BitSeq::Periodic {
                    prefix: bits,
                    cycle,
                });
            }
            seen.insert(r.clone(), bits.len());
            r <<= 1;
            if r >= q {
                r -= &q;
                bits.push(1);
            } else {
                bits.push(0);
            }
        }
    }

    pub fn from_ratio(p: u64, q: u64) -> Result<BitSeq, FractalError> {
        if q == 0 {
            return Err(FractalError::Parse(format!("{p}/{q}")));
        }
        BitSeq::from_rational(&BigRational::new(p.into(), q.into()))
    }

    /// An eventually periodic expansion, canonicalized (an all-ones cycle is
    /// carried into the finite form).
    pub fn periodic(prefix: Vec<u8>, cycle: Vec<u8>) -> Result<BitSeq, FractalError> {
        if cycle.is_empty() || prefix.is_empty() {
            return Err(FractalError::Parse("periodic expansion needs x_0 and a cycle".into()));
        }
        let raw = BitSeq::Periodic { prefix, cycle };
        let value = raw.exact_value().expect("periodic expansions are exact");
        BitSeq::from_rational(&value)
    }

    /// Known prefix of an irrational number. `bits[0]` is `x_0` and must be 0.
    pub fn stream(bits: Vec<u8>) -> Result<BitSeq, FractalError> {
        if bits.first() == Some(&1) || bits.iter().any(|&b| b > 1) {
            return Err(FractalError::Parse("stream bits must be 0/1 with x_0 = 0".into()));
        }
        Ok(BitSeq::Stream(bits))
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self, BitSeq::Stream(_))
    }

    /// `x_i`, or `None` past the known prefix of a stream.
    pub fn bit(&self, i: usize) -> Option<u8> {
        match self {
            BitSeq::Finite(bits) => Some(bits.get(i).copied().unwrap_or(0)),
            BitSeq::Periodic { prefix, cycle } => Some(if i < prefix.len() {
                prefix[i]
            } else {
                cycle[(i - prefix.len()) % cycle.len()]
            }),
            BitSeq::Stream(bits) => bits.get(i).copied(),
        }
    }

    /// Number of available digits (`x_0` included); unbounded for exact kinds.
    pub fn available(&self) -> Option<usize> {
        match self {
            BitSeq::Stream(bits) => Some(bits.len()),
            _ => None,
        }
    }

    /// Index of the last 1-bit of a finite expansion.
    pub fn last_one(&self) -> Option<usize> {
        match self {
            BitSeq::Finite(bits) => bits.len().checked_sub(1),
            _ => None,
        }
    }

    pub fn exact_value(&self) -> Option<BigRational> {
        match self {
            BitSeq::Finite(bits) => Some(prefix_value(bits, bits.len())),
            BitSeq::Periodic { prefix, cycle } => {
                let head = prefix_value(prefix, prefix.len());
                let len = cycle.len();
                let cycle_int = cycle
                    .iter()
                    .fold(BigInt::zero(), |acc, &b| (acc << 1) + BigInt::from(b));
                // positions p .. p+L-1 repeated: C 2^{1-p} / (2^L - 1)
                let numer = cycle_int << 1;
                let denom = ((BigInt::one() << len) - 1) << prefix.len();
                Some(head + BigRational::new(numer, denom))
            }
            BitSeq::Stream(_) => None,
        }
    }

    /// The dyadic `sum_{j<=n} x_j 2^{-j}` formed by the first `n + 1` digits.
    pub fn truncate(&self, n: usize) -> Result<Dyadic, FractalError> {
        let bits = self.prefix(n + 1)?;
        if n as u32 > super::dyadic::MAX_LEVEL {
            return Err(FractalError::LevelTooLarge(n as u32));
        }
        let numerator = bits.iter().fold(0u64, |acc, &b| acc << 1 | b as u64);
        Dyadic::new(numerator, n as u32)
    }

    /// The first `len` digits.
    pub fn prefix(&self, len: usize) -> Result<Vec<u8>, FractalError> {
        (0..len)
            .map(|i| {
                self.bit(i).ok_or(FractalError::TooFewBits {
                    needed: len,
                    available: i,
                })
            })
            .collect()
    }
}

/// `sum_{j<n} bits_j 2^{-j}`.
pub(crate) fn prefix_value(bits: &[u8], n: usize) -> BigRational {
    let n = n.min(bits.len());
    if n == 0 {
        return BigRational::zero();
    }
    let numer = bits[..n]
        .iter()
        .fold(BigInt::zero(), |acc, &b| (acc << 1) + BigInt::from(b));
    BigRational::new(numer, BigInt::one() << (n - 1))
}

/// `true` when the reduced denominator is a power of two.
pub fn is_dyadic(x: &BigRational) -> bool {
    let d = x.denom();
    let twos = d.trailing_zeros().unwrap_or(0);
    (d >> twos as usize).is_one()
}
