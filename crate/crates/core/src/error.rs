use thiserror::Error;

/// Errors from angle arithmetic and parsing.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AngleError {
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("not dyadic: {0}")]
    NotDyadic(String),
    #[error("degenerate interval: start and end coincide at {0}")]
    DegenerateInterval(String),
    #[error("denominator of {angle} exceeds the cap {cap}")]
    DenominatorTooLarge { angle: String, cap: String },
}

/// Errors from leaf geometry and combinatorial Hubbard trees.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LeafError {
    #[error("incident leaves: {0} shares an endpoint with the separating leaf")]
    IncidentLeaves(String),
    #[error("leaf {0} crosses the separating leaf")]
    CrossingLeaves(String),
    #[error("a degenerate leaf {0} cannot separate")]
    DegenerateSeparator(String),
    #[error("tree did not close within {0} iterations")]
    TreeDidNotClose(usize),
    #[error(transparent)]
    Angle(#[from] AngleError),
}

/// Errors from component, rotation set, and vein construction.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComponentError {
    #[error("invalid rotation number {p}/{q}: need 0 < p < q with gcd(p, q) = 1")]
    InvalidRotation { p: u32, q: u32 },
    #[error("period {0} is outside the supported enumeration range 1..={1}")]
    PeriodOutOfRange(u32, u32),
    #[error("root words must be nonempty and of equal length, got {0:?} and {1:?}")]
    WordLengths(String, String),
    #[error("root words must satisfy A < B, got {0} and {1}")]
    WordOrder(String, String),
    #[error("{0} is not a primitive word, so it is not a root expansion of its length")]
    NotPrimitive(String),
    #[error("({0}, {1}) is not a ray pair")]
    NotARayPair(String, String),
    #[error("{0} is not a periodic angle")]
    NotPeriodic(String),
    #[error("vein center must be a nonzero dyadic, got {0}")]
    InvalidVeinCenter(String),
    #[error(transparent)]
    Angle(#[from] AngleError),
    #[error(transparent)]
    Leaf(#[from] LeafError),
}

/// Coarse classification of [`MagicError`]s for sweep bookkeeping.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ErrorKind {
    /// The caller supplied a component or vein outside the formula's hypotheses.
    Hypothesis,
    /// The input angle is outside the domain the formula is stated for.
    Membership,
    /// Something that should be impossible for valid inputs.
    Internal,
}

/// Errors from the magic formulas.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MagicError {
    #[error("component lies in the lower half plane")]
    LowerHalfPlane,
    #[error("component lies in the 1/2-limb")]
    HalfLimb,
    #[error("wrong vein: root pair {pair} is not on the vein with center {center}")]
    WrongVein { pair: String, center: String },
    #[error("angle {0} does not land on the upper part of the component")]
    NotOnUpperPart(String),
    #[error("undefined at 1/2")]
    UndefinedAtHalf,
    #[error("angle {0} is not in the Xi_H sectors")]
    NotInSectors(String),
    #[error("requires p > 1")]
    RequiresPeriodAboveOne,
    #[error("angle {0} is not in the tuned set Theta_H")]
    NotInTunedSet(String),
    #[error(transparent)]
    Component(#[from] ComponentError),
    #[error(transparent)]
    Leaf(#[from] LeafError),
}

impl MagicError {
    pub fn kind(&self) -> ErrorKind {
        match self {
            MagicError::LowerHalfPlane
            | MagicError::HalfLimb
            | MagicError::WrongVein { .. }
            | MagicError::RequiresPeriodAboveOne => ErrorKind::Hypothesis,
            MagicError::NotOnUpperPart(_)
            | MagicError::UndefinedAtHalf
            | MagicError::NotInSectors(_)
            | MagicError::NotInTunedSet(_) => ErrorKind::Membership,
            MagicError::Component(_) | MagicError::Leaf(_) => ErrorKind::Internal,
        }
    }

    /// Short stable label, used as a key in sweep reports.
    pub fn cause(&self) -> &'static str {
        match self {
            MagicError::LowerHalfPlane => "lower half plane",
            MagicError::HalfLimb => "1/2-limb",
            MagicError::WrongVein { .. } => "wrong vein",
            MagicError::NotOnUpperPart(_) => "angle not on upper part",
            MagicError::UndefinedAtHalf => "undefined at 1/2",
            MagicError::NotInSectors(_) => "not in Xi_H sectors",
            MagicError::RequiresPeriodAboveOne => "requires p > 1",
            MagicError::NotInTunedSet(_) => "not in Theta_H",
            MagicError::Component(_) => "component error",
            MagicError::Leaf(_) => "lamination error",
        }
    }
}

/// Errors from symbol streams and word combinatorics.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("refine alpha: continued fraction prefix too short to fix {0} symbols exactly")]
    RefineAlpha(usize),
    #[error("alpha must lie in (0, 1): expected leading coefficient 0 followed by at least one positive term")]
    InvalidAlpha,
    #[error("finite stream of length {len} has no symbol at index {index}")]
    StreamExhausted { len: usize, index: usize },
    #[error("horizon {horizon} is shorter than p_max^2 = {min}")]
    HorizonTooShort { horizon: usize, min: usize },
    #[error("block words must be distinct, nonempty and of equal length")]
    InvalidBlocks,
    #[error("periodic stream needs a nonempty period")]
    EmptyPeriod,
    #[error("progression step must be positive")]
    ZeroStep,
}
