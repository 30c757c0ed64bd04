//! Open arcs of the circle and their pseudocenters.

use std::fmt;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::One;

use crate::angle::Angle;
use crate::error::AngleError;

/// The open arc traversed counterclockwise from `start` to `end`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CircularInterval {
    start: Angle,
    end: Angle,
}

impl CircularInterval {
    pub fn new(start: Angle, end: Angle) -> Result<Self, AngleError> {
        if start == end {
            return Err(AngleError::DegenerateInterval(start.to_string()));
        }
        Ok(CircularInterval { start, end })
    }

    pub fn start(&self) -> &Angle {
        &self.start
    }

    pub fn end(&self) -> &Angle {
        &self.end
    }

    /// Arc length in `(0, 1)`.
    pub fn length(&self) -> BigRational {
        self.start.ccw_offset(&self.end)
    }

    /// Strict containment; endpoints are excluded.
    pub fn contains(&self, x: &Angle) -> bool {
        if x == &self.start {
            return false;
        }
        self.start.ccw_offset(x) < self.length()
    }

    pub fn contains_zero(&self) -> bool {
        !self.end.is_zero() && self.end < self.start
    }

    /// Whether the two open arcs share a point.
    pub fn intersects(&self, other: &CircularInterval) -> bool {
        self.start == other.start || self.contains(&other.start) || other.contains(&self.start)
    }

    /// Arc from `D(start)` to `D(end)`: the image of the arc under doubling
    /// when the arc is shorter than 1/2.
    pub fn doubled(&self) -> Result<CircularInterval, AngleError> {
        CircularInterval::new(self.start.double(), self.end.double())
    }

    /// Shorter than 1/2, so doubling maps it homeomorphically.
    pub fn is_embedded(&self) -> bool {
        self.length() < BigRational::new(1.into(), 2.into())
    }

    /// The dyadic of lowest complexity strictly inside the arc.
    pub fn pseudocenter(&self) -> Angle {
        if self.contains_zero() {
            return Angle::zero();
        }
        // Linear picture: lo < x < hi inside [0, 1], with hi = 1 for end 0.
        let lo = &self.start;
        let (hi_num, hi_den) = if self.end.is_zero() {
            (BigUint::one(), BigUint::one())
        } else {
            (self.end.numer().clone(), self.end.denom().clone())
        };
        let mut q: u32 = 1;
        loop {
            // smallest k with k/2^q > lo
            let k: BigUint = ((lo.numer() << q) / lo.denom()) + 1u32;
            // k/2^q < hi
            if &k * &hi_den < &hi_num << q {
                let next: BigUint = &k + 1u32;
                assert!(
                    &next * &hi_den >= &hi_num << q,
                    "two dyadics of minimal complexity in {self}"
                );
                return Angle::from_biguint(k, BigUint::one() << q).expect("nonzero denominator");
            }
            q += 1;
        }
    }
}

/// See [`CircularInterval::pseudocenter`]; errors on a zero-length interval.
pub fn pseudocenter(start: &Angle, end: &Angle) -> Result<Angle, AngleError> {
    Ok(CircularInterval::new(start.clone(), end.clone())?.pseudocenter())
}

impl fmt::Display for CircularInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.start, self.end)
    }
}
