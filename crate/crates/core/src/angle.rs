//! Exact points of the circle `Q/Z` and the doubling map.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::AngleError;
use crate::expansion::Expansion;
use crate::word::BinaryWord;

/// A rational angle `numerator / denominator` in `[0, 1)`, always reduced.
///
/// Ordering is the linear order of representatives in `[0, 1)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Angle {
    num: BigUint,
    den: BigUint,
}

impl Angle {
    pub fn zero() -> Self {
        Angle {
            num: BigUint::zero(),
            den: BigUint::one(),
        }
    }

    pub fn half() -> Self {
        Angle {
            num: BigUint::one(),
            den: BigUint::from(2u32),
        }
    }

    /// `p/q mod 1`, reduced.
    pub fn new(p: u64, q: u64) -> Result<Self, AngleError> {
        Self::from_biguint(BigUint::from(p), BigUint::from(q))
    }

    pub fn from_biguint(p: BigUint, q: BigUint) -> Result<Self, AngleError> {
        if q.is_zero() {
            return Err(AngleError::ZeroDenominator);
        }
        Ok(Self::reduce(p % &q, q))
    }

    /// Any rational, taken mod 1.
    pub fn from_ratio(value: &BigRational) -> Self {
        let den = value.denom().magnitude().clone();
        let num = value.numer().mod_floor(value.denom());
        let num = num.magnitude().clone();
        Self::reduce(num, den)
    }

    fn reduce(num: BigUint, den: BigUint) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let g = num.gcd(&den);
        if g.is_one() {
            Angle { num, den }
        } else {
            Angle {
                num: num / &g,
                den: den / g,
            }
        }
    }

    pub fn numer(&self) -> &BigUint {
        &self.num
    }

    pub fn denom(&self) -> &BigUint {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn to_ratio(&self) -> BigRational {
        BigRational::new_raw(BigInt::from(self.num.clone()), BigInt::from(self.den.clone()))
    }

    pub fn to_f64(&self) -> f64 {
        self.to_ratio().to_f64().unwrap_or(f64::NAN)
    }

    /// `2θ mod 1`. Never needs a gcd: the result of doubling a reduced
    /// fraction is reduced after at most one halving of the denominator.
    pub fn double(&self) -> Angle {
        if self.den.is_even() {
            let den = &self.den >> 1u32;
            let num = &self.num % &den;
            if num.is_zero() {
                Angle::zero()
            } else {
                Angle { num, den }
            }
        } else {
            let mut num: BigUint = &self.num << 1u32;
            if num >= self.den {
                num -= &self.den;
            }
            Angle {
                num,
                den: self.den.clone(),
            }
        }
    }

    /// `D^n(θ)`.
    pub fn iterate(&self, n: usize) -> Angle {
        let mut x = self.clone();
        for _ in 0..n {
            x = x.double();
        }
        x
    }

    /// First binary digit: 0 on `[0, 1/2)`, 1 on `[1/2, 1)`.
    pub fn first_digit(&self) -> u8 {
        u8::from((&self.num << 1u32) >= self.den)
    }

    pub fn is_dyadic(&self) -> bool {
        self.den.count_ones() == 1
    }

    /// `‖θ‖`: the `q` with `θ = p/2^q`, `p` odd; zero for `θ = 0`.
    pub fn dyadic_complexity(&self) -> Result<u32, AngleError> {
        if !self.is_dyadic() {
            return Err(AngleError::NotDyadic(self.to_string()));
        }
        Ok(self.den.trailing_zeros().unwrap_or(0) as u32)
    }

    /// Canonical binary expansion.
    pub fn expansion(&self) -> Expansion {
        Expansion::of(self)
    }

    /// `S · θ = Σ s_k 2^{-k} + 2^{-n} θ`. Dyadic `θ` contributes through its
    /// terminating expansion, which is exactly this affine formula.
    pub fn prefixed(&self, word: &BinaryWord) -> Angle {
        if word.is_empty() {
            return self.clone();
        }
        let n = word.len();
        let num = word.to_biguint() * &self.den + &self.num;
        let den = &self.den << n;
        Self::reduce(num, den)
    }

    /// Signed representative difference `self - other` as a rational in `(-1, 1)`.
    pub fn sub_linear(&self, other: &Angle) -> BigRational {
        self.to_ratio() - other.to_ratio()
    }

    /// `(to - self) mod 1` in `[0, 1)`: counterclockwise travel from `self` to `to`.
    pub fn ccw_offset(&self, to: &Angle) -> BigRational {
        let d = to.sub_linear(self);
        if d.is_negative() {
            d + BigRational::one()
        } else {
            d
        }
    }

    /// `|θ - 1/2|` with `θ` read in `[0, 1)`.
    pub fn distance_to_half(&self) -> BigRational {
        // |2p - q| / 2q
        let two_p = BigInt::from(&self.num << 1u32);
        let q = BigInt::from(self.den.clone());
        BigRational::new((two_p - &q).abs(), q << 1u32)
    }

    /// Preperiod and period lengths of the binary expansion.
    /// Dyadic angles report period 1 (the trailing zero cycle).
    pub fn orbit_lengths(&self) -> (usize, usize) {
        let pre = self.den.trailing_zeros().unwrap_or(0) as usize;
        let odd = &self.den >> pre;
        if odd.is_one() {
            return (pre, 1);
        }
        (pre, multiplicative_order_of_two(&odd))
    }

    /// Exact period under doubling, or `None` for strictly preperiodic angles.
    pub fn period(&self) -> Option<usize> {
        if self.den.is_even() {
            return None;
        }
        Some(self.orbit_lengths().1)
    }

    pub fn parse_with_cap(s: &str, cap: &BigUint) -> Result<Angle, AngleError> {
        let angle: Angle = s.parse()?;
        if &angle.den > cap {
            return Err(AngleError::DenominatorTooLarge {
                angle: angle.to_string(),
                cap: cap.to_string(),
            });
        }
        Ok(angle)
    }
}

/// Multiplicative order of 2 modulo an odd `n > 1`.
pub(crate) fn multiplicative_order_of_two(n: &BigUint) -> usize {
    debug_assert!(n.is_odd() && !n.is_one());
    let one = BigUint::one();
    let mut x: BigUint = BigUint::from(2u32) % n;
    let mut k = 1usize;
    while x != one {
        x <<= 1u32;
        if &x >= n {
            x -= n;
        }
        k += 1;
    }
    k
}

/// `S · θ`; see [`Angle::prefixed`].
pub fn concat(word: &BinaryWord, theta: &Angle) -> Angle {
    theta.prefixed(word)
}

/// `D(θ) = 2θ mod 1`.
pub fn double(theta: &Angle) -> Angle {
    theta.double()
}

/// `‖θ‖` for dyadic `θ`.
pub fn dyadic_complexity(theta: &Angle) -> Result<u32, AngleError> {
    theta.dyadic_complexity()
}

impl Ord for Angle {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.den == other.den {
            return self.num.cmp(&other.num);
        }
        (&self.num * &other.den).cmp(&(&other.num * &self.den))
    }
}

impl PartialOrd for Angle {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl fmt::Debug for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// Accepts `p/q` (reduced or not, taken mod 1) or a binary literal
/// `.PRE~PERIOD`, where `~` separates the preperiod from the repeating
/// block. A literal without `~` is terminating.
impl FromStr for Angle {
    type Err = AngleError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let lead = s.len() - s.trim_start().len();
        let t = s.trim();
        if t.is_empty() {
            return Err(AngleError::Parse {
                position: 0,
                message: "empty angle".into(),
            });
        }
        if let Some(body) = t.strip_prefix('.') {
            return parse_binary_literal(body, lead + 1);
        }
        let Some((p, q)) = t.split_once('/') else {
            return Err(AngleError::Parse {
                position: lead + t.len(),
                message: "expected `p/q` or a binary literal starting with `.`".into(),
            });
        };
        let p_num = parse_natural(p, lead)?;
        let q_num = parse_natural(q, lead + p.len() + 1)?;
        Angle::from_biguint(p_num, q_num)
    }
}

fn parse_natural(s: &str, offset: usize) -> Result<BigUint, AngleError> {
    if s.is_empty() {
        return Err(AngleError::Parse {
            position: offset,
            message: "expected a non-negative integer".into(),
        });
    }
    if let Some(i) = s.find(|c: char| !c.is_ascii_digit()) {
        return Err(AngleError::Parse {
            position: offset + i,
            message: format!("unexpected character {:?}", s[i..].chars().next().unwrap()),
        });
    }
    Ok(s.parse::<BigUint>().expect("ascii digits"))
}

fn parse_binary_literal(body: &str, offset: usize) -> Result<Angle, AngleError> {
    let (pre, period) = match body.split_once('~') {
        Some((pre, period)) => (pre, Some(period)),
        None => (body, None),
    };
    let shift = |e: AngleError, by: usize| match e {
        AngleError::Parse { position, message } => AngleError::Parse {
            position: position + by,
            message,
        },
        other => other,
    };
    let pre_word: BinaryWord = pre.parse().map_err(|e| shift(e, offset))?;
    let period_word = match period {
        Some(p) => {
            let w: BinaryWord = p.parse().map_err(|e| shift(e, offset + pre.len() + 1))?;
            if w.is_empty() {
                return Err(AngleError::Parse {
                    position: offset + pre.len() + 1,
                    message: "empty period after `~`".into(),
                });
            }
            w
        }
        None => BinaryWord::repeated(0, 1),
    };
    Ok(Expansion::value_of_parts(&pre_word, &period_word))
}
