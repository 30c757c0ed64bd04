//! Eventually periodic binary expansions, as derived views of [`Angle`]s.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::angle::Angle;
use crate::error::AngleError;
use crate::word::BinaryWord;

/// `.PRE PERIOD PERIOD ...` in canonical form: the period is primitive and
/// the preperiod is as short as possible. Dyadic angles use the terminating
/// form with period `0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Expansion {
    preperiod: BinaryWord,
    period: BinaryWord,
}

impl Expansion {
    pub fn of(theta: &Angle) -> Expansion {
        let (pre_len, period_len) = theta.orbit_lengths();
        if let (Some(num), Some(den)) = (theta.numer().to_u64(), theta.denom().to_u64()) {
            return Self::of_small(num, den, pre_len, period_len);
        }
        let mut x = theta.clone();
        let mut pre = Vec::with_capacity(pre_len);
        for _ in 0..pre_len {
            pre.push(x.first_digit());
            x = x.double();
        }
        let mut period = Vec::with_capacity(period_len);
        for _ in 0..period_len {
            period.push(x.first_digit());
            x = x.double();
        }
        Expansion {
            preperiod: BinaryWord::from_digits_unchecked(pre),
            period: BinaryWord::from_digits_unchecked(period),
        }
    }

    fn of_small(num: u64, den: u64, pre_len: usize, period_len: usize) -> Expansion {
        let den = u128::from(den);
        let mut x = u128::from(num);
        let mut next = || {
            x <<= 1;
            if x >= den {
                x -= den;
                1
            } else {
                0
            }
        };
        let pre: Vec<u8> = (0..pre_len).map(|_| next()).collect();
        let period: Vec<u8> = (0..period_len).map(|_| next()).collect();
        Expansion {
            preperiod: BinaryWord::from_digits_unchecked(pre),
            period: BinaryWord::from_digits_unchecked(period),
        }
    }

    /// Canonical expansion of the number `.PRE (PERIOD)^∞`, whatever form
    /// the parts are given in (e.g. `.0~1` becomes the terminating `.1`).
    pub fn from_parts(preperiod: &BinaryWord, period: &BinaryWord) -> Result<Expansion, AngleError> {
        if period.is_empty() {
            return Err(AngleError::Parse {
                position: preperiod.len(),
                message: "empty period".into(),
            });
        }
        Ok(Expansion::of(&Self::value_of_parts(preperiod, period)))
    }

    /// Value of `.PRE (PERIOD)^∞` mod 1; `period` must be nonempty.
    pub fn value_of_parts(preperiod: &BinaryWord, period: &BinaryWord) -> Angle {
        assert!(!period.is_empty(), "period must be nonempty");
        let k = period.len();
        let cycle = (BigUint::one() << k) - BigUint::one();
        let num = preperiod.to_biguint() * &cycle + period.to_biguint();
        let den = cycle << preperiod.len();
        Angle::from_biguint(num, den).expect("denominator is positive")
    }

    pub fn preperiod(&self) -> &BinaryWord {
        &self.preperiod
    }

    pub fn period(&self) -> &BinaryWord {
        &self.period
    }

    pub fn is_terminating(&self) -> bool {
        self.period.len() == 1 && self.period[0] == 0
    }

    pub fn is_purely_periodic(&self) -> bool {
        self.preperiod.is_empty() && !self.is_terminating()
    }

    pub fn value(&self) -> Angle {
        Self::value_of_parts(&self.preperiod, &self.period)
    }

    /// The `i`-th digit after the binary point, zero-based.
    pub fn digit(&self, i: usize) -> u8 {
        let s = self.preperiod.len();
        if i < s {
            self.preperiod[i]
        } else {
            self.period[(i - s) % self.period.len()]
        }
    }

    pub fn prefix(&self, n: usize) -> BinaryWord {
        (0..n).map(|i| self.digit(i)).collect()
    }

    /// Applies a digit substitution `0 -> zero`, `1 -> one` to preperiod and
    /// period. The result is returned as raw parts, not canonicalized.
    pub fn substitute(&self, zero: &BinaryWord, one: &BinaryWord) -> (BinaryWord, BinaryWord) {
        let subst = |w: &BinaryWord| {
            let mut out = BinaryWord::empty();
            for d in w.iter() {
                out = out.concat(if d == 0 { zero } else { one });
            }
            out
        };
        (subst(&self.preperiod), subst(&self.period))
    }
}

impl fmt::Display for Expansion {
    /// `.PRE~PERIOD`, or `.PRE` when terminating (`.0` for zero).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_terminating() {
            if self.preperiod.is_empty() {
                write!(f, ".0")
            } else {
                write!(f, ".{}", self.preperiod)
            }
        } else {
            write!(f, ".{}~{}", self.preperiod, self.period)
        }
    }
}

impl From<&Angle> for Expansion {
    fn from(theta: &Angle) -> Self {
        Expansion::of(theta)
    }
}

impl From<&Expansion> for Angle {
    fn from(e: &Expansion) -> Self {
        e.value()
    }
}
