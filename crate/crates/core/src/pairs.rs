//! Ray pairs of periodic angles, built with the Lavaurs pairing rule.

use std::cmp::Ordering;
use std::collections::HashMap;

use crate::angle::Angle;
use crate::error::ComponentError;
use crate::lamination::Leaf;
use crate::word::BinaryWord;

/// Largest period [`enumerate_ray_pairs`] accepts.
pub const MAX_ENUMERATION_PERIOD: u32 = 16;

/// Two periodic angles of equal period whose rays land together.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RayPair {
    pub leaf: Leaf,
    pub period: u32,
}

impl RayPair {
    pub fn lower(&self) -> &Angle {
        self.leaf.lo()
    }

    pub fn upper(&self) -> &Angle {
        self.leaf.hi()
    }

    /// Repeating words of the two angles.
    pub fn words(&self) -> (BinaryWord, BinaryWord) {
        (
            self.lower().expansion().period().clone(),
            self.upper().expansion().period().clone(),
        )
    }
}

/// `num / (2^period - 1)` with exact period `period`.
#[derive(Clone, Copy, Debug)]
struct Point {
    num: u64,
    period: u32,
}

impl Point {
    fn cmp_value(&self, other: &Point) -> Ordering {
        let lhs = u128::from(self.num) * u128::from((1u64 << other.period) - 1);
        let rhs = u128::from(other.num) * u128::from((1u64 << self.period) - 1);
        lhs.cmp(&rhs)
    }
}

fn points_of_exact_period(k: u32) -> Vec<Point> {
    let m = (1u64 << k) - 1;
    let divisors: Vec<u32> = (1..k).filter(|d| k.is_multiple_of(*d)).collect();
    (1..m)
        .filter(|&a| {
            divisors
                .iter()
                .all(|&d| (u128::from(a) * u128::from((1u64 << d) - 1)) % u128::from(m) != 0)
        })
        .map(|num| Point { num, period: k })
        .collect()
}

/// All ray pairs of period `2..=max_period`, sorted by `(period, lower angle)`.
///
/// Periods are processed increasingly. Within a period, the smallest
/// unpaired angle is joined to the nearest later unpaired angle of the same
/// period whose chord crosses no chord drawn so far. The angle 0, the only
/// angle of period 1, is left alone.
pub fn enumerate_ray_pairs(max_period: u32) -> Result<Vec<RayPair>, ComponentError> {
    if max_period > MAX_ENUMERATION_PERIOD {
        return Err(ComponentError::PeriodOutOfRange(max_period, MAX_ENUMERATION_PERIOD));
    }
    let mut sorted: Vec<Point> = Vec::new();
    let mut partner: Vec<Option<usize>> = Vec::new();
    let mut out = Vec::new();
    for k in 2..=max_period {
        let fresh = points_of_exact_period(k);
        // Merge, remapping existing partner indices.
        let mut merged = Vec::with_capacity(sorted.len() + fresh.len());
        let mut old_to_new = Vec::with_capacity(sorted.len());
        let (mut i, mut j) = (0, 0);
        while i < sorted.len() || j < fresh.len() {
            let take_old = j == fresh.len()
                || (i < sorted.len() && sorted[i].cmp_value(&fresh[j]) == Ordering::Less);
            if take_old {
                old_to_new.push(merged.len());
                merged.push(sorted[i]);
                i += 1;
            } else {
                merged.push(fresh[j]);
                j += 1;
            }
        }
        let mut new_partner = vec![None; merged.len()];
        for (old, p) in partner.iter().enumerate() {
            new_partner[old_to_new[old]] = p.map(|p| old_to_new[p]);
        }
        sorted = merged;
        partner = new_partner;

        for x in 0..sorted.len() {
            if sorted[x].period != k || partner[x].is_some() {
                continue;
            }
            let y = nearest_partner(&sorted, &partner, x, k);
            partner[x] = Some(y);
            partner[y] = Some(x);
            out.push(RayPair {
                leaf: Leaf::new(to_angle(sorted[x]), to_angle(sorted[y])),
                period: k,
            });
        }
    }
    Ok(out)
}

/// Scans forward from `x`, stepping over drawn chords whole. A chord
/// reaching back behind `x` would be crossed by any later choice.
fn nearest_partner(sorted: &[Point], partner: &[Option<usize>], x: usize, k: u32) -> usize {
    let mut j = x + 1;
    while j < sorted.len() {
        match partner[j] {
            Some(p) if p > j => j = p + 1,
            Some(_) => break,
            None if sorted[j].period == k => return j,
            None => j += 1,
        }
    }
    panic!("no admissible partner for {}", to_angle(sorted[x]));
}

fn to_angle(p: Point) -> Angle {
    Angle::new(p.num, (1u64 << p.period) - 1).expect("nonzero denominator")
}

/// Enumerated ray pairs with lookup by angle.
#[derive(Clone, Debug)]
pub struct RayPairTable {
    max_period: u32,
    pairs: Vec<RayPair>,
    by_angle: HashMap<Angle, usize>,
}

impl RayPairTable {
    pub fn new(max_period: u32) -> Result<Self, ComponentError> {
        let pairs = enumerate_ray_pairs(max_period)?;
        let mut by_angle = HashMap::with_capacity(2 * pairs.len());
        for (i, pair) in pairs.iter().enumerate() {
            by_angle.insert(pair.lower().clone(), i);
            by_angle.insert(pair.upper().clone(), i);
        }
        Ok(RayPairTable {
            max_period,
            pairs,
            by_angle,
        })
    }

    pub fn max_period(&self) -> u32 {
        self.max_period
    }

    pub fn pairs(&self) -> &[RayPair] {
        &self.pairs
    }

    pub fn pairs_of_period(&self, k: u32) -> impl Iterator<Item = &RayPair> {
        self.pairs.iter().filter(move |p| p.period == k)
    }

    /// The pair containing `theta`, if `theta` is periodic of an enumerated period.
    pub fn pair_of(&self, theta: &Angle) -> Option<&RayPair> {
        self.by_angle.get(theta).map(|&i| &self.pairs[i])
    }

    pub fn is_ray_pair(&self, leaf: &Leaf) -> bool {
        self.pair_of(leaf.lo()).is_some_and(|p| &p.leaf == leaf)
    }
}
