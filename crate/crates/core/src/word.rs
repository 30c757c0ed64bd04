//! Finite words over the alphabet `{0, 1}`.

use std::fmt;
use std::ops::Index;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::AngleError;

/// A finite binary word. The empty word is the identity for concatenation.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinaryWord {
    digits: Vec<u8>,
}

impl BinaryWord {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Builds a word from digits, rejecting anything other than 0 or 1.
    pub fn from_digits(digits: Vec<u8>) -> Result<Self, AngleError> {
        if let Some(position) = digits.iter().position(|&d| d > 1) {
            return Err(AngleError::Parse {
                position,
                message: format!("digit {} is not binary", digits[position]),
            });
        }
        Ok(Self { digits })
    }

    pub(crate) fn from_digits_unchecked(digits: Vec<u8>) -> Self {
        debug_assert!(digits.iter().all(|&d| d <= 1));
        Self { digits }
    }

    pub fn repeated(digit: u8, count: usize) -> Self {
        assert!(digit <= 1, "binary digit expected");
        Self {
            digits: vec![digit; count],
        }
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    pub fn digits(&self) -> &[u8] {
        &self.digits
    }

    pub fn iter(&self) -> impl Iterator<Item = u8> + '_ {
        self.digits.iter().copied()
    }

    pub fn first(&self) -> Option<u8> {
        self.digits.first().copied()
    }

    pub fn last(&self) -> Option<u8> {
        self.digits.last().copied()
    }

    pub fn push(&mut self, digit: u8) {
        assert!(digit <= 1, "binary digit expected");
        self.digits.push(digit);
    }

    pub fn concat(&self, other: &BinaryWord) -> BinaryWord {
        let mut digits = Vec::with_capacity(self.len() + other.len());
        digits.extend_from_slice(&self.digits);
        digits.extend_from_slice(&other.digits);
        BinaryWord { digits }
    }

    pub fn repeat(&self, times: usize) -> BinaryWord {
        BinaryWord {
            digits: self.digits.repeat(times),
        }
    }

    /// The word with its first digit removed (empty stays empty).
    pub fn tail(&self) -> BinaryWord {
        BinaryWord {
            digits: self.digits.iter().skip(1).copied().collect(),
        }
    }

    pub fn slice(&self, start: usize, end: usize) -> BinaryWord {
        BinaryWord {
            digits: self.digits[start..end].to_vec(),
        }
    }

    /// Digit-wise complement `1 - s_i`.
    pub fn complement(&self) -> BinaryWord {
        BinaryWord {
            digits: self.digits.iter().map(|d| 1 - d).collect(),
        }
    }

    /// The word read as a big-endian binary integer.
    pub fn to_biguint(&self) -> BigUint {
        if self.digits.is_empty() {
            return BigUint::zero();
        }
        BigUint::from_radix_be(&self.digits, 2).expect("binary digits")
    }

    /// Whether the word is a proper power `u^k`, `k >= 2`.
    pub fn is_proper_power(&self) -> bool {
        let n = self.len();
        (1..n)
            .filter(|d| n.is_multiple_of(*d))
            .any(|d| (d..n).all(|i| self.digits[i] == self.digits[i - d]))
    }
}

impl Index<usize> for BinaryWord {
    type Output = u8;

    fn index(&self, index: usize) -> &u8 {
        &self.digits[index]
    }
}

impl FromIterator<u8> for BinaryWord {
    fn from_iter<I: IntoIterator<Item = u8>>(iter: I) -> Self {
        let digits: Vec<u8> = iter.into_iter().collect();
        assert!(digits.iter().all(|&d| d <= 1), "binary digit expected");
        BinaryWord { digits }
    }
}

impl FromStr for BinaryWord {
    type Err = AngleError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let digits = s
            .chars()
            .enumerate()
            .map(|(position, c)| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                other => Err(AngleError::Parse {
                    position,
                    message: format!("unexpected character {other:?} in binary word"),
                }),
            })
            .collect::<Result<Vec<u8>, _>>()?;
        Ok(BinaryWord { digits })
    }
}

impl fmt::Display for BinaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.digits {
            write!(f, "{d}")?;
        }
        Ok(())
    }
}
