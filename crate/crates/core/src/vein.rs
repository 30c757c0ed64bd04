//! Combinatorial veins: ray pairs sharing a dyadic pseudocenter and the
//! end count of its tree.

use std::fmt;

use crate::angle::Angle;
use crate::error::{ComponentError, LeafError};
use crate::lamination::{ends, ends_dyadic, Leaf};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Vein {
    center: Angle,
    complexity: u32,
}

/// The vein with tip `θ0`, a nonzero dyadic. Its complexity `‖θ0‖ - 1` is
/// also the first `k` with `D^k(θ0) = 1/2`.
pub fn vein_of(theta0: &Angle) -> Result<Vein, ComponentError> {
    if theta0.is_zero() || !theta0.is_dyadic() {
        return Err(ComponentError::InvalidVeinCenter(theta0.to_string()));
    }
    let complexity = theta0.dyadic_complexity()? - 1;
    let half = Angle::half();
    let mut x = theta0.clone();
    let mut k = 0;
    while x != half {
        x = x.double();
        k += 1;
    }
    assert_eq!(k, complexity, "dyadic complexity of {theta0}");
    Ok(Vein {
        center: theta0.clone(),
        complexity,
    })
}

/// The vein at the pseudocenter of the arc `(θ⁻, θ⁺)`.
pub fn vein_at_pseudocenter(pair: &Leaf) -> Result<Vein, ComponentError> {
    let arc = pair
        .inner_arc()
        .ok_or_else(|| ComponentError::NotARayPair(pair.lo().to_string(), pair.hi().to_string()))?;
    vein_of(&arc.pseudocenter())
}

impl Vein {
    pub fn center(&self) -> &Angle {
        &self.center
    }

    /// `δ_V = ‖center‖ - 1`.
    pub fn complexity(&self) -> u32 {
        self.complexity
    }

    /// The pair's pseudocenter is the center and its tree has as many ends
    /// as the center's.
    pub fn contains(&self, pair: &Leaf) -> Result<bool, LeafError> {
        let Some(arc) = pair.inner_arc() else {
            return Ok(false);
        };
        if arc.pseudocenter() != self.center {
            return Ok(false);
        }
        Ok(ends(pair)? == ends_dyadic(&self.center)?)
    }
}

pub fn vein_contains(vein: &Vein, pair: &Leaf) -> Result<bool, LeafError> {
    vein.contains(pair)
}

impl fmt::Display for Vein {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "vein({})", self.center)
    }
}
