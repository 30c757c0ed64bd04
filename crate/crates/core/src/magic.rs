//! Formulas sending angles of rays landing on hyperbolic components to
//! angles of rays landing on the real axis, and the orbit-distance
//! predicate that recognises the latter.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::angle::Angle;
use crate::component::{HalfPlane, HyperbolicComponent};
use crate::error::MagicError;
use crate::rotation::is_cardioid_angle;
use crate::vein::{vein_of, Vein};
use crate::word::BinaryWord;
use crate::words::tuned_decomposition;

/// Forward orbit of a rational angle up to its first repetition, with the
/// point closest to 1/2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitReport {
    pub angle: Angle,
    /// `D^0(θ), D^1(θ), …`, each point once.
    pub orbit: Vec<Angle>,
    /// `min_k |D^k(θ) - 1/2|`.
    pub min_distance: BigRational,
    /// First index attaining the minimum.
    pub argmin_index: usize,
}

impl OrbitReport {
    pub fn argmin_point(&self) -> &Angle {
        &self.orbit[self.argmin_index]
    }

    /// No point of the orbit is closer to 1/2 than the angle itself.
    pub fn is_real(&self) -> bool {
        self.min_distance == self.angle.distance_to_half()
    }
}

pub fn orbit_report(theta: &Angle) -> OrbitReport {
    let (pre, period) = theta.orbit_lengths();
    let mut orbit = Vec::with_capacity(pre + period);
    let mut x = theta.clone();
    for _ in 0..pre + period {
        let next = x.double();
        orbit.push(x);
        x = next;
    }
    let mut min_distance = orbit[0].distance_to_half();
    let mut argmin_index = 0;
    for (k, y) in orbit.iter().enumerate().skip(1) {
        let d = y.distance_to_half();
        if d < min_distance {
            min_distance = d;
            argmin_index = k;
        }
    }
    OrbitReport {
        angle: theta.clone(),
        orbit,
        min_distance,
        argmin_index,
    }
}

/// `|D^n(θ) - 1/2| >= |θ - 1/2|` for every `n`.
pub fn is_real_angle(theta: &Angle) -> bool {
    orbit_report(theta).is_real()
}

/// `Ψ(x) = 1/2 + min_k |D^k(x) - 1/2|`, mod 1.
pub fn psi(x: &Angle) -> Angle {
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    Angle::from_ratio(&(half + orbit_report(x).min_distance))
}

/// `1/2 + θ/4` below 1/2 and `1/4 + θ/4` above.
pub fn douady_t(theta: &Angle) -> Result<Angle, MagicError> {
    let half = Angle::half();
    let prefix = match theta.cmp(&half) {
        std::cmp::Ordering::Less => "10",
        std::cmp::Ordering::Greater => "01",
        std::cmp::Ordering::Equal => return Err(MagicError::UndefinedAtHalf),
    };
    Ok(theta.prefixed(&prefix.parse().expect("literal word")))
}

/// `lo <= θ <= hi`, with `hi = 0` read as 1.
fn in_closed(lo: &Angle, hi: &Angle, theta: &Angle) -> bool {
    lo <= theta && (hi.is_zero() || theta <= hi)
}

/// `B_H A_H · θ` on `[a_H, a'_H]` and `A_H B_H · θ` on `[b'_H, b_H]`.
pub fn ble_cabrera(h: &HyperbolicComponent, theta: &Angle) -> Result<Angle, MagicError> {
    let ba = h.word_b().concat(h.word_a());
    let ab = h.word_a().concat(h.word_b());
    if in_closed(h.root_a(), &h.a_prime(), theta) {
        Ok(theta.prefixed(&ba))
    } else if in_closed(&h.b_prime(), h.root_b(), theta) {
        Ok(theta.prefixed(&ab))
    } else {
        Err(MagicError::NotInSectors(theta.to_string()))
    }
}

/// `Φ_H(θ) = D^{δ_V}(B_H A_H · θ)` for a fixed component and vein.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MagicFormula {
    component: HyperbolicComponent,
    vein: Vein,
}

impl MagicFormula {
    /// Checks the hypotheses on `H` and `V`: upper half plane, outside the
    /// 1/2-limb, and the root pair of `H` on `V`. The cardioid goes with
    /// the real vein `vein(1/2)`.
    pub fn new(component: HyperbolicComponent, vein: Vein) -> Result<Self, MagicError> {
        let wrong_vein = || MagicError::WrongVein {
            pair: component.root_pair().to_string(),
            center: vein.center().to_string(),
        };
        if component.is_cardioid() {
            if vein.center() != &Angle::half() {
                return Err(wrong_vein());
            }
        } else {
            let class = component.classify();
            if class.position == HalfPlane::Lower {
                return Err(MagicError::LowerHalfPlane);
            }
            if class.in_half_limb || class.position == HalfPlane::RealAxis {
                return Err(MagicError::HalfLimb);
            }
            if !vein.contains(&component.root_pair())? {
                return Err(wrong_vein());
            }
        }
        Ok(MagicFormula { component, vein })
    }

    /// [`MagicFormula::new`] with the vein at the pseudocenter of the root pair.
    pub fn for_component(component: HyperbolicComponent) -> Result<Self, MagicError> {
        let vein = if component.is_cardioid() {
            vein_of(&Angle::half())?
        } else {
            crate::vein::vein_at_pseudocenter(&component.root_pair())?
        };
        Self::new(component, vein)
    }

    pub fn component(&self) -> &HyperbolicComponent {
        &self.component
    }

    pub fn vein(&self) -> &Vein {
        &self.vein
    }

    /// `B_H A_H` with its first `δ_V` digits removed, so that
    /// `Φ_H(θ) = word · θ`.
    pub fn word(&self) -> BinaryWord {
        let ba = self.component.word_b().concat(self.component.word_a());
        let d = self.vein.complexity() as usize;
        ba.slice(d, ba.len())
    }

    /// `(c, s)` with `Φ_H(θ) = c + s θ`.
    pub fn affine(&self) -> (BigRational, BigRational) {
        let w = self.word();
        let scale = BigRational::from_integer(BigInt::one() << w.len());
        let offset = BigRational::from_integer(BigInt::from(w.to_biguint())) / &scale;
        (offset, BigRational::one() / scale)
    }

    /// `B_H A_H · θ`, before doubling.
    pub fn intermediate(&self, theta: &Angle) -> Angle {
        theta.prefixed(&self.component.word_b().concat(self.component.word_a()))
    }

    /// The formula evaluated at any angle, without the membership check.
    pub fn eval(&self, theta: &Angle) -> Angle {
        self.intermediate(theta).iterate(self.vein.complexity() as usize)
    }

    /// `θ = tune(H, η)` with `η` a cardioid angle in `[0, 1/3]`; returns `η`.
    pub fn upper_part_parameter(&self, theta: &Angle) -> Option<Angle> {
        let eta = self.component.untune(theta)?;
        let third = Angle::new(1, 3).expect("nonzero");
        (eta <= third && is_cardioid_angle(&eta)).then_some(eta)
    }

    /// The formula on angles of rays landing on the upper part of `∂H`.
    pub fn apply(&self, theta: &Angle) -> Result<Angle, MagicError> {
        if self.upper_part_parameter(theta).is_none() {
            return Err(MagicError::NotOnUpperPart(theta.to_string()));
        }
        Ok(self.eval(theta))
    }
}

/// `Φ_H(θ)` with every hypothesis checked.
pub fn phi_h(h: &HyperbolicComponent, vein: &Vein, theta: &Angle) -> Result<Angle, MagicError> {
    MagicFormula::new(h.clone(), vein.clone())?.apply(theta)
}

/// `0 1^{2p-1}`.
pub fn alternate_word(p: usize) -> BinaryWord {
    BinaryWord::repeated(0, 1).concat(&BinaryWord::repeated(1, 2 * p - 1))
}

/// `φ_H(θ) = 0 1^{2p-1} · θ` for `θ` whose expansion is a sequence of
/// `A_H`/`B_H` blocks.
pub fn alternate_phi(h: &HyperbolicComponent, theta: &Angle) -> Result<Angle, MagicError> {
    let p = h.period();
    if p < 2 {
        return Err(MagicError::RequiresPeriodAboveOne);
    }
    let tiles = tuned_decomposition(&theta.expansion(), h.word_a(), h.word_b())
        .expect("root words are distinct blocks of equal length");
    if tiles.is_none() {
        return Err(MagicError::NotInTunedSet(theta.to_string()));
    }
    Ok(theta.prefixed(&alternate_word(p)))
}

/// `2^{-2p}`, the radius of `U_p` around 1/2.
pub fn u_p_radius(p: usize) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::one() << (2 * p))
}

/// `x ∈ U_p = (1/2 - 2^{-2p}, 1/2 + 2^{-2p})`.
pub fn in_u_p(x: &Angle, p: usize) -> bool {
    x.distance_to_half() < u_p_radius(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(s: &str) -> Angle {
        s.parse().unwrap()
    }

    fn comp(s: &str) -> HyperbolicComponent {
        let (x, y) = s.split_once(':').unwrap();
        HyperbolicComponent::from_words(&x.parse().unwrap(), &y.parse().unwrap(), None).unwrap()
    }

    #[test]
    fn real_angles() {
        assert!(is_real_angle(&a("21/40")));
        assert!(!is_real_angle(&a("147/255")));
        assert!(is_real_angle(&a("114/255")));
        assert!(is_real_angle(&Angle::zero()));
    }

    #[test]
    fn orbit_reports() {
        let r = orbit_report(&a("78/255"));
        assert_eq!(r.orbit.len(), 8);
        assert_eq!(r.argmin_index, 3);
        assert_eq!(r.argmin_point(), &a("114/255"));
        assert_eq!(r.min_distance, BigRational::new(27.into(), 510.into()));
        let r = orbit_report(&a("1/2"));
        assert_eq!((r.argmin_index, r.min_distance.clone()), (0, BigRational::from_integer(0.into())));
        assert_eq!(r.orbit, [a("1/2"), Angle::zero()]);
        let r = orbit_report(&a("1/3"));
        assert_eq!(r.min_distance, BigRational::new(1.into(), 6.into()));
    }

    #[test]
    fn psi_values() {
        assert_eq!(psi(&a("1/2")), a("1/2"));
        assert_eq!(psi(&a("1/3")), a("2/3"));
        assert_eq!(psi(&Angle::zero()), Angle::zero());
    }

    #[test]
    fn douady() {
        assert_eq!(douady_t(&a("1/3")).unwrap(), a("7/12"));
        assert_eq!(douady_t(&a("2/3")).unwrap(), a("5/12"));
        assert_eq!(douady_t(&Angle::zero()).unwrap(), a("1/2"));
        assert_eq!(douady_t(&a("1/2")), Err(MagicError::UndefinedAtHalf));
    }

    #[test]
    fn ble_cabrera_branches() {
        let k = comp("0011:0100");
        assert_eq!(ble_cabrera(&k, &a("1/5")).unwrap(), a("21/80"));
        assert_eq!(ble_cabrera(&k, &a("1/5")).unwrap().double(), a("21/40"));
        assert!(matches!(ble_cabrera(&k, &a("1/2")), Err(MagicError::NotInSectors(_))));
        let c = HyperbolicComponent::cardioid();
        for s in ["1/7", "1/3", "2/3", "5/7"] {
            assert_eq!(ble_cabrera(&c, &a(s)).unwrap(), douady_t(&a(s)).unwrap(), "{s}");
        }
    }

    #[test]
    fn magic_formula() {
        let k = comp("0011:0100");
        let v = vein_of(&a("1/4")).unwrap();
        assert_eq!(phi_h(&k, &v, &a("1/5")).unwrap(), a("21/40"));
        let f = MagicFormula::new(k.clone(), v).unwrap();
        assert_eq!(f.word().to_string(), "1000011");
        let (c, s) = f.affine();
        assert_eq!(c, BigRational::new(67.into(), 128.into()));
        assert_eq!(s, BigRational::new(1.into(), 128.into()));

        let r = comp("001:010");
        let v = vein_of(&a("1/4")).unwrap();
        // 1/7 is the root a_H of the rabbit.
        assert_eq!(phi_h(&r, &v, &a("1/7")).unwrap(), a("15/28"));
        assert!(is_real_angle(&a("15/28")));
        let phi = phi_h(&r, &v, &r.tune(&a("1/7"))).unwrap();
        assert!(is_real_angle(&phi));

        let c = HyperbolicComponent::cardioid();
        let half = vein_of(&a("1/2")).unwrap();
        assert_eq!(phi_h(&c, &half, &a("1/3")).unwrap(), a("7/12"));
    }

    #[test]
    fn hypothesis_errors() {
        let v = vein_of(&a("1/4")).unwrap();
        assert_eq!(phi_h(&comp("101:110"), &v, &a("5/7")), Err(MagicError::LowerHalfPlane));
        assert_eq!(phi_h(&comp("01:10"), &v, &a("1/3")), Err(MagicError::HalfLimb));
        assert!(matches!(
            phi_h(&comp("0011:0100"), &vein_of(&a("1/8")).unwrap(), &a("1/5")),
            Err(MagicError::WrongVein { .. })
        ));
        let k = comp("0011:0100");
        assert!(matches!(
            phi_h(&k, &v, &k.tune(&a("2/3"))),
            Err(MagicError::NotOnUpperPart(_))
        ));
        assert!(matches!(phi_h(&k, &v, &a("1/7")), Err(MagicError::NotOnUpperPart(_))));
    }

    #[test]
    fn alternate_formula() {
        let b = comp("01:10");
        assert_eq!(alternate_phi(&b, &a("1/3")).unwrap(), a("11/24"));
        assert_eq!(alternate_phi(&b, &a("2/3")).unwrap(), a("23/48"));
        assert_eq!(alternate_phi(&comp("0011:0100"), &a("1/5")).unwrap(), a("159/320"));
        assert_eq!(
            alternate_phi(&HyperbolicComponent::cardioid(), &a("1/3")),
            Err(MagicError::RequiresPeriodAboveOne)
        );
        assert!(matches!(alternate_phi(&b, &a("1/7")), Err(MagicError::NotInTunedSet(_))));
        assert!(in_u_p(&a("11/24"), 2));
        assert!(!in_u_p(&a("1/3"), 2));
    }
}
