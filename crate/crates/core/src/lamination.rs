//! Leaves of invariant laminations, combinatorial segments and the
//! combinatorial Hubbard tree.
//!
//! Segments `[L1, L2]` are never materialized: [`segment_contains`] is the
//! primitive, and set-level statements are checked against finite leaf
//! universes (typically the forward orbit of a minor leaf plus the root
//! leaf `β = {0}`).

use std::fmt;

use crate::angle::Angle;
use crate::error::LeafError;
use crate::interval::CircularInterval;

/// Default iteration bound for [`hubbard_tree`].
pub const DEFAULT_MAX_ITER: usize = 4096;

/// An unordered chord `{a, b}` of the closed disk, stored with `lo <= hi`.
/// Degenerate (a single boundary point) when `lo == hi`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Leaf {
    lo: Angle,
    hi: Angle,
}

/// Which side of a non-degenerate leaf `(lo, hi)` a point lies on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Side {
    /// The open arc `(lo, hi)`, which never contains 0.
    Inner,
    /// The open arc `(hi, lo)` through 0.
    Outer,
}

impl Leaf {
    pub fn new(a: Angle, b: Angle) -> Self {
        if a <= b {
            Leaf { lo: a, hi: b }
        } else {
            Leaf { lo: b, hi: a }
        }
    }

    pub fn point(x: Angle) -> Self {
        Leaf {
            lo: x.clone(),
            hi: x,
        }
    }

    /// The root leaf `β = {0}`.
    pub fn beta() -> Self {
        Leaf::point(Angle::zero())
    }

    pub fn lo(&self) -> &Angle {
        &self.lo
    }

    pub fn hi(&self) -> &Angle {
        &self.hi
    }

    pub fn is_degenerate(&self) -> bool {
        self.lo == self.hi
    }

    pub fn has_endpoint(&self, x: &Angle) -> bool {
        &self.lo == x || &self.hi == x
    }

    /// `f({a, b}) = {D(a), D(b)}`.
    pub fn image(&self) -> Leaf {
        Leaf::new(self.lo.double(), self.hi.double())
    }

    /// The arc `(lo, hi)` away from 0; `None` when degenerate.
    pub fn inner_arc(&self) -> Option<CircularInterval> {
        CircularInterval::new(self.lo.clone(), self.hi.clone()).ok()
    }

    fn side_of_point(&self, x: &Angle) -> Side {
        debug_assert!(!self.has_endpoint(x));
        if &self.lo < x && x < &self.hi {
            Side::Inner
        } else {
            Side::Outer
        }
    }

    fn endpoints(&self) -> impl Iterator<Item = &Angle> {
        let second = (!self.is_degenerate()).then_some(&self.hi);
        std::iter::once(&self.lo).chain(second)
    }

    /// Side of `other` relative to `self`, judged by the endpoints of
    /// `other` that are not shared with `self`. `None` when `other` crosses
    /// `self` or has no unshared endpoint.
    fn side_touching(&self, other: &Leaf) -> Option<Side> {
        let mut sides = other
            .endpoints()
            .filter(|x| !self.has_endpoint(x))
            .map(|x| self.side_of_point(x));
        let first = sides.next()?;
        sides.all(|s| s == first).then_some(first)
    }

    fn strict_side(&self, other: &Leaf) -> Result<Side, LeafError> {
        if other.endpoints().any(|x| self.has_endpoint(x)) {
            return Err(LeafError::IncidentLeaves(other.to_string()));
        }
        self.side_touching(other)
            .ok_or_else(|| LeafError::CrossingLeaves(other.to_string()))
    }
}

impl fmt::Display for Leaf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_degenerate() {
            write!(f, "{{{}}}", self.lo)
        } else {
            write!(f, "({}, {})", self.lo, self.hi)
        }
    }
}

impl fmt::Debug for Leaf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Whether the chord `l` puts `p` and `q` in different components of the
/// disk minus `l`. Leaves sharing an endpoint with `l`, or crossing it, are
/// rejected; [`segment_contains`] decides how touching leaves count.
pub fn separates(l: &Leaf, p: &Leaf, q: &Leaf) -> Result<bool, LeafError> {
    if l.is_degenerate() {
        return Err(LeafError::DegenerateSeparator(l.to_string()));
    }
    Ok(l.strict_side(p)? != l.strict_side(q)?)
}

/// Membership `l ∈ [l1, l2]`. Both ends belong to the segment. A leaf that
/// touches `l1` or `l2` at an endpoint is placed on the side of its other
/// endpoint, so the sides of a polygonal gap separate as chords do.
pub fn segment_contains(l1: &Leaf, l2: &Leaf, l: &Leaf) -> bool {
    if l == l1 || l == l2 {
        return true;
    }
    if l.is_degenerate() {
        return false;
    }
    match (l.side_touching(l1), l.side_touching(l2)) {
        (Some(s1), Some(s2)) => s1 != s2,
        _ => false,
    }
}

/// Forward orbit `m, f(m), …, f^n(m)` of a minor leaf.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeafOrbit {
    pub minor: Leaf,
    pub iterates: Vec<Leaf>,
}

impl LeafOrbit {
    pub fn new(minor: Leaf, n: usize) -> Self {
        let mut iterates = Vec::with_capacity(n + 1);
        iterates.push(minor.clone());
        for i in 0..n {
            let next = iterates[i].image();
            iterates.push(next);
        }
        LeafOrbit { minor, iterates }
    }
}

/// A point of the postcritical set, located by a leaf of the orbit of the
/// minor. For a periodic minor the point is the Fatou gap adjacent to the
/// leaf on the side `side`; otherwise it is the leaf itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PostcriticalPoint {
    pub leaf: Leaf,
    pub side: Option<CircularInterval>,
}

impl PostcriticalPoint {
    /// Side of the point relative to a non-degenerate leaf `l`.
    fn side_of(&self, l: &Leaf) -> Option<Side> {
        if &self.leaf == l {
            let arc = self.side.as_ref()?;
            return Some(if arc.start() == l.lo() { Side::Inner } else { Side::Outer });
        }
        l.side_touching(&self.leaf)
    }
}

/// The combinatorial Hubbard tree `H = H_N`, `N` minimal with
/// `f^{N+1}(m) ∈ H_N`, together with its end count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HubbardTree {
    /// Iterates `f^0(m) … f^N(m)`.
    pub orbit: LeafOrbit,
    pub n: usize,
    /// The postcritical points `c_1, c_2, …` in orbit order.
    pub postcritical: Vec<PostcriticalPoint>,
    /// Ends of the tree spanned by the postcritical points.
    pub ends: usize,
}

impl HubbardTree {
    /// `N + 2`: the number of ends the extended tree would have if no
    /// postcritical leaf were swallowed by a later one. An upper bound for
    /// the extended end count.
    pub fn closure_bound(&self) -> usize {
        self.n + 2
    }
}

/// Iterates the minor leaf until `f^{N+1}(m)` lies in
/// `H_N = ⋃_{i ≤ N} [β, f^i(m)]`, then counts the ends of the tree spanned
/// by the postcritical points: `c_k` is an end unless its leaf separates
/// two other postcritical points.
pub fn hubbard_tree(m: &Leaf, max_iter: usize) -> Result<HubbardTree, LeafError> {
    let beta = Leaf::beta();
    let mut iterates = vec![m.clone()];
    let mut closed_at = None;
    for n in 0..max_iter {
        let next = iterates[n].image();
        if iterates.iter().any(|fi| segment_contains(&beta, fi, &next)) {
            closed_at = Some(n);
            break;
        }
        iterates.push(next);
    }
    let n = closed_at.ok_or(LeafError::TreeDidNotClose(max_iter))?;
    let postcritical = postcritical_points(m, max_iter)?;
    let ends = count_ends(&postcritical);
    Ok(HubbardTree {
        orbit: LeafOrbit {
            minor: m.clone(),
            iterates,
        },
        n,
        postcritical,
        ends,
    })
}

/// For a periodic ray pair of period `p`: `c_i`, `i = 1..=p`, the gap next
/// to `f^{i-1}(m)` on the side swept counterclockwise from `D^{i-1}(θ⁻)`
/// to `D^{i-1}(θ⁺)`, the local image of the inner side of `m`. Otherwise
/// the distinct leaves of the forward orbit.
fn postcritical_points(m: &Leaf, max_iter: usize) -> Result<Vec<PostcriticalPoint>, LeafError> {
    if !m.is_degenerate() {
        if let Some(p) = m.lo().period() {
            let (mut lo, mut hi) = (m.lo().clone(), m.hi().clone());
            let mut points = Vec::with_capacity(p);
            for _ in 0..p {
                points.push(PostcriticalPoint {
                    leaf: Leaf::new(lo.clone(), hi.clone()),
                    side: CircularInterval::new(lo.clone(), hi.clone()).ok(),
                });
                (lo, hi) = (lo.double(), hi.double());
            }
            return Ok(points);
        }
    }
    let mut seen = std::collections::HashSet::new();
    let mut points = Vec::new();
    let mut current = m.clone();
    while seen.insert(current.clone()) {
        if points.len() > max_iter {
            return Err(LeafError::TreeDidNotClose(max_iter));
        }
        points.push(PostcriticalPoint {
            leaf: current.clone(),
            side: None,
        });
        current = current.image();
    }
    Ok(points)
}

fn count_ends(points: &[PostcriticalPoint]) -> usize {
    let between = |k: usize, i: usize, j: usize| {
        let l = &points[k].leaf;
        if l.is_degenerate() {
            return false;
        }
        match (points[i].side_of(l), points[j].side_of(l)) {
            (Some(a), Some(b)) => a != b,
            _ => false,
        }
    };
    (0..points.len())
        .filter(|&k| {
            !(0..points.len()).any(|i| {
                i != k && (i + 1..points.len()).any(|j| j != k && between(k, i, j))
            })
        })
        .count()
}

/// Number of ends of the Hubbard tree of the minor leaf `m`.
pub fn ends(m: &Leaf) -> Result<usize, LeafError> {
    Ok(hubbard_tree(m, DEFAULT_MAX_ITER)?.ends)
}

/// Ends of the tree of a nonzero dyadic `θ0`: `‖θ0‖ + 1`.
pub fn ends_dyadic(theta0: &Angle) -> Result<usize, LeafError> {
    let q = theta0.dyadic_complexity()?;
    if q == 0 {
        return Err(LeafError::Angle(crate::error::AngleError::NotDyadic(
            "0 has no Hubbard tree with a dyadic tip".into(),
        )));
    }
    Ok(q as usize + 1)
}

/// The arcs `I_k = (D^k θ⁻, D^k θ⁺)`, `k < q`.
pub fn iterated_arcs(pair: &Leaf, q: usize) -> Vec<Option<CircularInterval>> {
    let mut lo = pair.lo().clone();
    let mut hi = pair.hi().clone();
    let mut arcs = Vec::with_capacity(q);
    for _ in 0..q {
        arcs.push(CircularInterval::new(lo.clone(), hi.clone()).ok());
        lo = lo.double();
        hi = hi.double();
    }
    arcs
}

/// Whether `I_0, …, I_{q-1}` are pairwise disjoint open arcs. A degenerate
/// arc is empty.
pub fn arcs_disjoint(pair: &Leaf, q: usize) -> bool {
    let arcs: Vec<CircularInterval> = iterated_arcs(pair, q).into_iter().flatten().collect();
    arcs.iter()
        .enumerate()
        .all(|(i, a)| arcs[i + 1..].iter().all(|b| !a.intersects(b)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(s: &str) -> Angle {
        s.parse().unwrap()
    }

    fn leaf(x: &str, y: &str) -> Leaf {
        Leaf::new(a(x), a(y))
    }

    fn pt(x: &str) -> Leaf {
        Leaf::point(a(x))
    }

    #[test]
    fn separates_examples() {
        assert_eq!(separates(&leaf("1/3", "2/3"), &Leaf::beta(), &pt("1/2")), Ok(true));
        assert_eq!(
            separates(&leaf("1/7", "2/7"), &Leaf::beta(), &leaf("3/7", "4/7")),
            Ok(false)
        );
        assert_eq!(separates(&leaf("1/8", "3/8"), &pt("1/4"), &Leaf::beta()), Ok(true));
    }

    #[test]
    fn separates_rejects_incident_and_crossing() {
        assert!(matches!(
            separates(&leaf("1/7", "2/7"), &leaf("2/7", "4/7"), &Leaf::beta()),
            Err(LeafError::IncidentLeaves(_))
        ));
        assert!(matches!(
            separates(&leaf("1/7", "3/7"), &leaf("2/7", "4/7"), &Leaf::beta()),
            Err(LeafError::CrossingLeaves(_))
        ));
        assert!(matches!(
            separates(&pt("1/7"), &Leaf::beta(), &pt("1/2")),
            Err(LeafError::DegenerateSeparator(_))
        ));
    }

    #[test]
    fn segment_examples() {
        let m = leaf("1/7", "2/7");
        assert!(segment_contains(&Leaf::beta(), &m, &Leaf::beta()));
        assert!(segment_contains(&Leaf::beta(), &m, &m));
        assert!(!segment_contains(
            &Leaf::beta(),
            &leaf("3/15", "4/15"),
            &leaf("6/15", "8/15")
        ));
        // {0} and (12/15, 1/15) both lie outside the arc (3/15, 4/15).
        assert!(!segment_contains(
            &Leaf::beta(),
            &leaf("12/15", "1/15"),
            &leaf("3/15", "4/15")
        ));
        // the 1/2-limb root separates 0 from (6/15, 8/15)
        assert!(segment_contains(
            &Leaf::beta(),
            &leaf("6/15", "8/15"),
            &leaf("1/3", "2/3")
        ));
    }

    #[test]
    fn touching_leaves_of_a_gap() {
        // Rabbit triangle: (1/7, 4/7) separates 0 from (1/7, 2/7), but
        // (2/7, 4/7) does not.
        let m = leaf("1/7", "2/7");
        assert!(segment_contains(&Leaf::beta(), &m, &leaf("4/7", "1/7")));
        assert!(!segment_contains(&Leaf::beta(), &m, &leaf("2/7", "4/7")));
    }

    #[test]
    fn hubbard_tree_examples() {
        assert_eq!(ends(&leaf("1/7", "2/7")), Ok(3));
        assert_eq!(ends(&leaf("77/255", "78/255")), Ok(6));
        assert_eq!(ends(&pt("3/16")), Ok(5));
        assert_eq!(ends(&pt("1/4")), Ok(3));
        assert_eq!(ends(&leaf("39/224", "43/224")), Ok(5));
        assert_eq!(ends(&leaf("3/15", "4/15")), Ok(3));
    }

    #[test]
    fn hubbard_tree_reports_orbit() {
        let t = hubbard_tree(&leaf("1/7", "2/7"), DEFAULT_MAX_ITER).unwrap();
        assert_eq!(t.n, 1);
        assert_eq!(t.closure_bound(), 3);
        assert_eq!(t.orbit.iterates, vec![leaf("1/7", "2/7"), leaf("2/7", "4/7")]);
        assert_eq!(t.postcritical.len(), 3);
        for w in t.orbit.iterates.windows(2) {
            assert_eq!(w[0].image(), w[1]);
        }
    }

    #[test]
    fn closure_index_can_overcount_ends() {
        // f^6(m) lands between β and f^3(m), so N = 5, but the tree spanned
        // by the eight postcritical leaves has only six ends.
        let t = hubbard_tree(&leaf("77/255", "78/255"), DEFAULT_MAX_ITER).unwrap();
        assert_eq!(t.n, 5);
        assert_eq!(t.closure_bound(), 7);
        assert_eq!(t.postcritical.len(), 8);
        assert!(t.postcritical.iter().all(|c| c.side.is_some()));
        assert_eq!(t.ends, 6);
    }

    #[test]
    fn satellite_leaf_carries_two_points() {
        // The minor of the basilica is fixed; c_1 and c_2 sit on either side.
        let t = hubbard_tree(&leaf("1/3", "2/3"), DEFAULT_MAX_ITER).unwrap();
        assert_eq!(t.postcritical.len(), 2);
        assert_eq!(t.postcritical[0].leaf, t.postcritical[1].leaf);
        assert_eq!(t.ends, 2);
    }

    #[test]
    fn tree_that_does_not_close_in_budget() {
        assert_eq!(
            hubbard_tree(&pt("1/1024"), 3),
            Err(LeafError::TreeDidNotClose(3))
        );
    }

    #[test]
    fn ends_dyadic_examples() {
        assert_eq!(ends_dyadic(&a("1/4")), Ok(3));
        assert_eq!(ends_dyadic(&a("39/128")), Ok(8));
        assert_eq!(ends_dyadic(&a("1/2")), Ok(2));
        assert!(ends_dyadic(&a("1/3")).is_err());
        assert!(ends_dyadic(&Angle::zero()).is_err());
    }

    #[test]
    fn arcs_disjoint_examples() {
        assert!(arcs_disjoint(&leaf("3/15", "4/15"), 2));
        assert!(!arcs_disjoint(&leaf("77/255", "78/255"), 7));
        assert!(arcs_disjoint(&leaf("1/3", "2/3"), 1));
        assert!(arcs_disjoint(&leaf("1/7", "2/7"), 2));
    }
}
