//! Hyperbolic components by their root words, and tuning.

use std::fmt;

use crate::angle::Angle;
use crate::error::ComponentError;
use crate::expansion::Expansion;
use crate::lamination::Leaf;
use crate::pairs::{RayPair, RayPairTable};
use crate::word::BinaryWord;
use crate::words::tuned_decomposition;

/// A hyperbolic component with root angles `a = .(A)^∞ < b = .(B)^∞`.
/// The main cardioid has `A = 0`, `B = 1` and both roots at angle 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HyperbolicComponent {
    root_a: Angle,
    root_b: Angle,
    word_a: BinaryWord,
    word_b: BinaryWord,
}

/// Which half plane a component sits in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum HalfPlane {
    Upper,
    Lower,
    RealAxis,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Classification {
    pub position: HalfPlane,
    pub in_half_limb: bool,
}

impl HyperbolicComponent {
    pub fn cardioid() -> Self {
        HyperbolicComponent {
            root_a: Angle::zero(),
            root_b: Angle::zero(),
            word_a: BinaryWord::repeated(0, 1),
            word_b: BinaryWord::repeated(1, 1),
        }
    }

    /// A component from an enumerated ray pair; no further checks.
    pub fn from_ray_pair(pair: &RayPair) -> Self {
        let (word_a, word_b) = pair.words();
        HyperbolicComponent {
            root_a: pair.lower().clone(),
            root_b: pair.upper().clone(),
            word_a,
            word_b,
        }
    }

    /// A component from its root words. With a table, the root angles must
    /// form an enumerated ray pair; without one the words are trusted.
    pub fn from_words(
        a: &BinaryWord,
        b: &BinaryWord,
        table: Option<&RayPairTable>,
    ) -> Result<Self, ComponentError> {
        if a.is_empty() || a.len() != b.len() {
            return Err(ComponentError::WordLengths(a.to_string(), b.to_string()));
        }
        if a.len() == 1 {
            return if a[0] == 0 && b[0] == 1 {
                Ok(Self::cardioid())
            } else {
                Err(ComponentError::WordOrder(a.to_string(), b.to_string()))
            };
        }
        for w in [a, b] {
            if w.is_proper_power() {
                return Err(ComponentError::NotPrimitive(w.to_string()));
            }
        }
        if a >= b {
            return Err(ComponentError::WordOrder(a.to_string(), b.to_string()));
        }
        let root_a = Expansion::value_of_parts(&BinaryWord::empty(), a);
        let root_b = Expansion::value_of_parts(&BinaryWord::empty(), b);
        if let Some(table) = table {
            let period = a.len() as u32;
            if period > table.max_period() {
                return Err(ComponentError::PeriodOutOfRange(period, table.max_period()));
            }
            if !table.is_ray_pair(&Leaf::new(root_a.clone(), root_b.clone())) {
                return Err(ComponentError::NotARayPair(root_a.to_string(), root_b.to_string()));
            }
        }
        Ok(HyperbolicComponent {
            root_a,
            root_b,
            word_a: a.clone(),
            word_b: b.clone(),
        })
    }

    /// The component whose root pair contains `root`.
    pub fn from_root(root: &Angle, table: &RayPairTable) -> Result<Self, ComponentError> {
        if root.is_zero() {
            return Ok(Self::cardioid());
        }
        let Some(period) = root.period() else {
            return Err(ComponentError::NotPeriodic(root.to_string()));
        };
        if period as u32 > table.max_period() {
            return Err(ComponentError::PeriodOutOfRange(period as u32, table.max_period()));
        }
        table
            .pair_of(root)
            .map(Self::from_ray_pair)
            .ok_or_else(|| ComponentError::NotPeriodic(root.to_string()))
    }

    /// `"A:B"` with binary words, or `"root=p/q"`.
    pub fn parse(s: &str, table: &RayPairTable) -> Result<Self, ComponentError> {
        let s = s.trim();
        if let Some(root) = s.strip_prefix("root=") {
            return Self::from_root(&root.parse()?, table);
        }
        let Some((a, b)) = s.split_once(':') else {
            return Err(crate::error::AngleError::Parse {
                position: 0,
                message: "expected \"A:B\" or \"root=p/q\"".into(),
            }
            .into());
        };
        let a: BinaryWord = a.parse()?;
        let b: BinaryWord = b.parse().map_err(|e| shift_parse_position(e, a.len() + 1))?;
        let checked = (a.len() as u32 <= table.max_period()).then_some(table);
        Self::from_words(&a, &b, checked)
    }

    pub fn root_a(&self) -> &Angle {
        &self.root_a
    }

    pub fn root_b(&self) -> &Angle {
        &self.root_b
    }

    pub fn word_a(&self) -> &BinaryWord {
        &self.word_a
    }

    pub fn word_b(&self) -> &BinaryWord {
        &self.word_b
    }

    pub fn period(&self) -> usize {
        self.word_a.len()
    }

    pub fn is_cardioid(&self) -> bool {
        self.period() == 1
    }

    /// The root leaf `(a, b)`; the point `{0}` for the cardioid.
    pub fn root_pair(&self) -> Leaf {
        Leaf::new(self.root_a.clone(), self.root_b.clone())
    }

    /// `a' = .(AB)^∞`.
    pub fn a_prime(&self) -> Angle {
        Expansion::value_of_parts(&BinaryWord::empty(), &self.word_a.concat(&self.word_b))
    }

    /// `b' = .(BA)^∞`.
    pub fn b_prime(&self) -> Angle {
        Expansion::value_of_parts(&BinaryWord::empty(), &self.word_b.concat(&self.word_a))
    }

    /// Substitutes `A` for 0 and `B` for 1 in the canonical expansion of `θ`.
    pub fn tune(&self, theta: &Angle) -> Angle {
        let (pre, period) = theta.expansion().substitute(&self.word_a, &self.word_b);
        Expansion::value_of_parts(&pre, &period)
    }

    pub fn tune_word(&self, s: &BinaryWord) -> BinaryWord {
        s.iter()
            .fold(BinaryWord::empty(), |acc, d| {
                acc.concat(if d == 0 { &self.word_a } else { &self.word_b })
            })
    }

    /// The `η` with `tune(η) = θ`, if any.
    pub fn untune(&self, theta: &Angle) -> Option<Angle> {
        if self.is_cardioid() {
            return Some(theta.clone());
        }
        let blocks = tuned_decomposition(&theta.expansion(), &self.word_a, &self.word_b)
            .expect("root words are distinct blocks of equal length")?;
        let eta = blocks.value();
        (self.tune(&eta) == *theta).then_some(eta)
    }

    /// Half plane from the first digits of the root words; the 1/2-limb is
    /// the closed arc `[1/3, 2/3]`.
    pub fn classify(&self) -> Classification {
        let position = match (self.word_a[0], self.word_b[0]) {
            (0, 0) => HalfPlane::Upper,
            (1, 1) => HalfPlane::Lower,
            _ => HalfPlane::RealAxis,
        };
        let third = Angle::new(1, 3).expect("nonzero");
        let two_thirds = Angle::new(2, 3).expect("nonzero");
        let in_limb = |x: &Angle| &third <= x && x <= &two_thirds;
        Classification {
            position,
            in_half_limb: !self.is_cardioid() && in_limb(&self.root_a) && in_limb(&self.root_b),
        }
    }
}

fn shift_parse_position(e: crate::error::AngleError, by: usize) -> crate::error::AngleError {
    match e {
        crate::error::AngleError::Parse { position, message } => crate::error::AngleError::Parse {
            position: position + by,
            message,
        },
        other => other,
    }
}

impl fmt::Display for HyperbolicComponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.word_a, self.word_b)
    }
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
    fn tuning_examples() {
        let c = HyperbolicComponent::cardioid();
        for s in ["1/3", "1/4", "21/40", "0/1"] {
            assert_eq!(c.tune(&a(s)), a(s));
        }
        assert_eq!(comp("001:010").tune(&a("1/3")), a("10/63"));
        assert_eq!(comp("0011:0100").tune(&Angle::zero()), a("1/5"));
        assert_eq!(comp("0011:0100").root_a(), &a("1/5"));
        assert_eq!(comp("0011:0100").root_b(), &a("4/15"));
    }

    #[test]
    fn untuning() {
        let k = comp("0011:0100");
        for s in ["0/1", "1/3", "2/7", "1/4", "3/16"] {
            assert_eq!(k.untune(&k.tune(&a(s))), Some(a(s)), "{s}");
        }
        // .(B)^∞ tiles as all-B blocks, which is tune(1), not an angle in [0, 1).
        assert_eq!(k.untune(k.root_b()), None);
        assert_eq!(k.untune(&a("1/7")), None);
    }

    #[test]
    fn classification() {
        let k = comp("0011:0100").classify();
        assert_eq!(k.position, HalfPlane::Upper);
        assert!(!k.in_half_limb);
        let b = comp("01:10").classify();
        assert_eq!(b.position, HalfPlane::RealAxis);
        assert!(b.in_half_limb);
        assert_eq!(comp("101:110").classify().position, HalfPlane::Lower);
        let c = HyperbolicComponent::cardioid().classify();
        assert_eq!(c.position, HalfPlane::RealAxis);
        assert!(!c.in_half_limb);
    }

    #[test]
    fn word_validation() {
        let w = |s: &str| s.parse::<BinaryWord>().unwrap();
        assert!(HyperbolicComponent::from_words(&w("01"), &w("1"), None).is_err());
        assert!(HyperbolicComponent::from_words(&w("10"), &w("01"), None).is_err());
        assert!(HyperbolicComponent::from_words(&w("0101"), &w("0110"), None).is_err());
        let t = RayPairTable::new(4).unwrap();
        assert!(HyperbolicComponent::from_words(&w("0011"), &w("0100"), Some(&t)).is_ok());
        assert!(matches!(
            HyperbolicComponent::from_words(&w("001"), &w("011"), Some(&t)),
            Err(ComponentError::NotARayPair(..))
        ));
    }

    #[test]
    fn parse_literals() {
        let t = RayPairTable::new(6).unwrap();
        let k = HyperbolicComponent::parse("0011:0100", &t).unwrap();
        assert_eq!(HyperbolicComponent::parse("root=3/15", &t).unwrap(), k);
        assert_eq!(HyperbolicComponent::parse("root=4/15", &t).unwrap(), k);
        assert!(HyperbolicComponent::parse("0:1", &t).unwrap().is_cardioid());
        assert!(matches!(
            HyperbolicComponent::parse("0011:01x0", &t),
            Err(ComponentError::Angle(crate::error::AngleError::Parse { position: 7, .. }))
        ));
        assert_eq!(k.to_string(), "0011:0100");
        assert_eq!(k.a_prime(), a("52/255"));
        assert_eq!(k.b_prime(), a("67/255"));
    }
}
