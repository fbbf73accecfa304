use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::FractalError;

/// Largest supported level; numerators live in a `u64`.
pub const MAX_LEVEL: u32 = 63;

/// The dyadic rational `numerator / 2^level` in `[0, 1]`.
///
/// Equality is on the representation; compare [`Dyadic::reduced`] forms (or
/// [`Dyadic::value`]) to compare numbers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Dyadic {
    numerator: u64,
    level: u32,
}

impl Dyadic {
    pub fn new(numerator: u64, level: u32) -> Result<Self, FractalError> {
        if level > MAX_LEVEL {
            return Err(FractalError::LevelTooLarge(level));
        }
        if numerator > 1u64 << level {
            return Err(FractalError::OutOfUnitInterval(format!("{numerator}/2^{level}")));
        }
        Ok(Dyadic { numerator, level })
    }

    pub const ZERO: Dyadic = Dyadic {
        numerator: 0,
        level: 0,
    };
    pub const ONE: Dyadic = Dyadic {
        numerator: 1,
        level: 0,
    };

    pub fn numerator(self) -> u64 {
        self.numerator
    }

    pub fn level(self) -> u32 {
        self.level
    }

    pub fn denominator(self) -> u64 {
        1u64 << self.level
    }

    pub fn is_zero(self) -> bool {
        self.numerator == 0
    }

    pub fn is_one(self) -> bool {
        self.numerator == 1u64 << self.level
    }

    /// Lowest terms: odd numerator, or `0/2^0`.
    pub fn reduced(self) -> Dyadic {
        if self.numerator == 0 {
            return Dyadic::ZERO;
        }
        let shift = self.numerator.trailing_zeros().min(self.level);
        Dyadic {
            numerator: self.numerator >> shift,
            level: self.level - shift,
        }
    }

    /// Index of the last nonzero binary digit of the finite expansion
    /// (the level in lowest terms). Zero has no such digit.
    pub fn last_one(self) -> Option<u32> {
        (!self.is_zero()).then(|| self.reduced().level)
    }

    /// The same number at a finer level.
    pub fn at_level(self, level: u32) -> Result<Dyadic, FractalError> {
        let r = self.reduced();
        if level < r.level {
            return Err(FractalError::LevelBelowDyadic {
                level,
                needed: r.level,
            });
        }
        if level > MAX_LEVEL {
            return Err(FractalError::LevelTooLarge(level));
        }
        Ok(Dyadic {
            numerator: r.numerator << (level - r.level),
            level,
        })
    }

    /// Binary digit `x_i` of the finite expansion `x = sum_i x_i 2^{-i}`.
    pub fn bit(self, i: u32) -> u8 {
        if i > self.level {
            return 0;
        }
        (self.numerator >> (self.level - i) & 1) as u8
    }

    pub fn value(self) -> BigRational {
        BigRational::new(
            BigInt::from(self.numerator),
            BigInt::from(1u64) << self.level,
        )
    }

    /// All `t / 2^level` for `t = 0..=2^level`.
    pub fn grid(level: u32) -> impl Iterator<Item = Dyadic> {
        assert!(level <= MAX_LEVEL);
        (0..=1u64 << level).map(move |numerator| Dyadic { numerator, level })
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numerator, self.denominator())
    }
}

/// Accepts `t/2^k`, `t/d` with `d` a power of two, `0` and `1`. Decimal
/// notation is rejected so nothing is silently rounded.
impl FromStr for Dyadic {
    type Err = FractalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || FractalError::Parse(s.to_string());
        let Some((num, den)) = s.split_once('/') else {
            return match s {
                "0" => Ok(Dyadic::ZERO),
                "1" => Ok(Dyadic::ONE),
                _ => Err(bad()),
            };
        };
        let numerator: u64 = num.trim().parse().map_err(|_| bad())?;
        let den = den.trim();
        let level = if let Some(exp) = den.strip_prefix("2^") {
            exp.parse::<u32>().map_err(|_| bad())?
        } else {
            let d: u64 = den.parse().map_err(|_| bad())?;
            if !d.is_power_of_two() {
                return Err(bad());
            }
            d.trailing_zeros()
        };
        Dyadic::new(numerator, level)
    }
}
