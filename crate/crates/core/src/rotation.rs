//! Periodic orbits of doubling with a combinatorial rotation number, and
//! the rational angles whose rays land on the main cardioid.

use num_integer::Integer;

use crate::angle::Angle;
use crate::error::ComponentError;
use crate::lamination::Leaf;

/// Largest denominator exponent accepted by [`rotation_set`].
pub const MAX_ROTATION_Q: u32 = 24;

/// The unique doubling orbit of `q` points on which doubling acts as the
/// rotation by `p/q` in circular order. Points are sorted increasingly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RotationSet {
    pub p: u32,
    pub q: u32,
    pub points: Vec<Angle>,
}

impl RotationSet {
    /// The consecutive pair bounding the shortest complementary arc: the
    /// two angles landing at the root of the `p/q`-limb.
    pub fn root_pair(&self) -> Leaf {
        let q = self.points.len();
        let (i, _) = (0..q)
            .map(|i| {
                let next = &self.points[(i + 1) % q];
                (i, self.points[i].ccw_offset(next))
            })
            .min_by(|a, b| a.1.cmp(&b.1))
            .expect("rotation sets are nonempty");
        Leaf::new(self.points[i].clone(), self.points[(i + 1) % q].clone())
    }
}

/// Brute force over the numerators `k/(2^q - 1)`.
pub fn rotation_set(p: u32, q: u32) -> Result<RotationSet, ComponentError> {
    if q < 2 || p == 0 || p >= q || p.gcd(&q) != 1 {
        return Err(ComponentError::InvalidRotation { p, q });
    }
    if q > MAX_ROTATION_Q {
        return Err(ComponentError::PeriodOutOfRange(q, MAX_ROTATION_Q));
    }
    let m: u64 = (1u64 << q) - 1;
    let mut seen = vec![false; m as usize];
    for start in 1..m {
        if seen[start as usize] {
            continue;
        }
        let mut orbit = Vec::with_capacity(q as usize);
        let mut k = start;
        loop {
            seen[k as usize] = true;
            orbit.push(k);
            k = (2 * k) % m;
            if k == start {
                break;
            }
        }
        if orbit.len() != q as usize {
            continue;
        }
        let mut sorted = orbit.clone();
        sorted.sort_unstable();
        if rotates_by(&sorted, m) == Some(p as usize) {
            let points = sorted
                .into_iter()
                .map(|k| Angle::new(k, m).expect("nonzero denominator"))
                .collect();
            return Ok(RotationSet { p, q, points });
        }
    }
    unreachable!("every p/q has a rotation set")
}

/// The shift `s` with `2 x_i = x_{i+s}` for all `i`, if one exists.
fn rotates_by(sorted: &[u64], m: u64) -> Option<usize> {
    let q = sorted.len();
    let image = (2 * sorted[0]) % m;
    let s = sorted.iter().position(|&x| x == image)?;
    (0..q)
        .all(|i| (2 * sorted[i]) % m == sorted[(i + s) % q])
        .then_some(s)
}

/// Whether the rational `θ` lands on the main cardioid: `θ = 0`, or `θ` is
/// one of the two root angles of a rotation set.
pub fn is_cardioid_angle(theta: &Angle) -> bool {
    if theta.is_zero() {
        return true;
    }
    let Some(q) = theta.period() else {
        return false;
    };
    if q < 2 {
        return false;
    }
    let mut orbit = vec![theta.clone()];
    for _ in 1..q {
        let next = orbit.last().expect("nonempty").double();
        orbit.push(next);
    }
    orbit.sort();
    let image = orbit[0].double();
    let Some(s) = orbit.iter().position(|x| *x == image) else {
        return false;
    };
    if !(0..q).all(|i| orbit[i].double() == orbit[(i + s) % q]) {
        return false;
    }
    let set = RotationSet {
        p: s as u32,
        q: q as u32,
        points: orbit,
    };
    set.root_pair().has_endpoint(theta)
}

/// `0` together with both root angles of every `p/q`-limb, `2 <= q <= max_q`,
/// sorted increasingly.
pub fn cardioid_angles(max_q: u32) -> Result<Vec<Angle>, ComponentError> {
    let mut out = vec![Angle::zero()];
    for q in 2..=max_q {
        for p in (1..q).filter(|p| p.gcd(&q) == 1) {
            let root = rotation_set(p, q)?.root_pair();
            out.push(root.lo().clone());
            out.push(root.hi().clone());
        }
    }
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(s: &str) -> Angle {
        s.parse().unwrap()
    }

    fn points(p: u32, q: u32) -> Vec<String> {
        rotation_set(p, q)
            .unwrap()
            .points
            .iter()
            .map(ToString::to_string)
            .collect()
    }

    #[test]
    fn small_rotation_sets() {
        assert_eq!(points(1, 2), ["1/3", "2/3"]);
        assert_eq!(points(1, 3), ["1/7", "2/7", "4/7"]);
        assert_eq!(points(2, 3), ["3/7", "5/7", "6/7"]);
        assert_eq!(points(2, 5), ["5/31", "9/31", "10/31", "18/31", "20/31"]);
    }

    #[test]
    fn invalid_rotation_numbers() {
        assert!(rotation_set(2, 4).is_err());
        assert!(rotation_set(0, 3).is_err());
        assert!(rotation_set(3, 3).is_err());
    }

    #[test]
    fn root_pairs() {
        assert_eq!(rotation_set(1, 3).unwrap().root_pair(), Leaf::new(a("1/7"), a("2/7")));
        assert_eq!(rotation_set(1, 2).unwrap().root_pair(), Leaf::new(a("1/3"), a("2/3")));
        assert_eq!(rotation_set(2, 3).unwrap().root_pair(), Leaf::new(a("5/7"), a("6/7")));
    }

    #[test]
    fn cardioid_membership() {
        for s in ["0/1", "1/3", "2/3", "1/7", "2/7", "5/7", "6/7", "1/15", "2/15"] {
            assert!(is_cardioid_angle(&a(s)), "{s}");
        }
        for s in ["4/7", "3/7", "1/5", "1/2", "1/4", "21/40"] {
            assert!(!is_cardioid_angle(&a(s)), "{s}");
        }
        let all = cardioid_angles(5).unwrap();
        assert_eq!(all.len(), 1 + 2 * (1 + 2 + 2 + 4));
        assert!(all.iter().all(is_cardioid_angle));
    }
}
