//! Symbol streams: Sturmian words from exact floor differences,
//! finite-depth maximal diversity, and block decompositions.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::angle::Angle;
use crate::error::{ComponentError, WordError};
use crate::expansion::Expansion;
use crate::pairs::{RayPair, RayPairTable};
use crate::word::BinaryWord;

/// Continued fraction `[a0; a1, a2, …]`: an explicit prefix optionally
/// followed by a tail repeated forever.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContinuedFraction {
    a0: u64,
    prefix: Vec<u64>,
    repeating: Vec<u64>,
}

impl ContinuedFraction {
    /// A finite prefix `[a0; terms…]` of an irrational's expansion.
    pub fn from_terms(a0: u64, terms: Vec<u64>) -> Result<Self, WordError> {
        Self::with_tail(a0, terms, Vec::new())
    }

    /// `[a0; prefix…, (repeating…)^∞]`.
    pub fn with_tail(a0: u64, prefix: Vec<u64>, repeating: Vec<u64>) -> Result<Self, WordError> {
        if prefix.iter().chain(&repeating).any(|&a| a == 0) {
            return Err(WordError::InvalidAlpha);
        }
        Ok(ContinuedFraction {
            a0,
            prefix,
            repeating,
        })
    }

    /// `[0; 1, 1, 1, …]`, the inverse golden ratio.
    pub fn golden() -> Self {
        ContinuedFraction {
            a0: 0,
            prefix: Vec::new(),
            repeating: vec![1],
        }
    }

    /// `a_i` for `i >= 1`, or `None` past the end of a finite prefix.
    pub fn term(&self, i: usize) -> Option<u64> {
        if i == 0 {
            return Some(self.a0);
        }
        let i = i - 1;
        if i < self.prefix.len() {
            return Some(self.prefix[i]);
        }
        if self.repeating.is_empty() {
            return None;
        }
        Some(self.repeating[(i - self.prefix.len()) % self.repeating.len()])
    }

    /// Number of terms after `a0`, or `None` when infinite.
    pub fn depth(&self) -> Option<usize> {
        self.repeating.is_empty().then_some(self.prefix.len())
    }

    /// Open interval `(lo, hi)` known to contain the value, from the
    /// convergents `[a0; …, a_d]` and `[a0; …, a_d + 1]`.
    pub fn bounds(&self, d: usize) -> Option<(BigRational, BigRational)> {
        let (mut h1, mut h2) = (BigInt::one(), BigInt::zero());
        let (mut k1, mut k2) = (BigInt::zero(), BigInt::one());
        for i in 0..=d {
            let a = BigInt::from(self.term(i)?);
            let h = &a * &h1 + &h2;
            let k = &a * &k1 + &k2;
            (h2, h1) = (h1, h);
            (k2, k1) = (k1, k);
        }
        let x = BigRational::new(h1.clone(), k1.clone());
        let y = BigRational::new(h1 + h2, k1 + k2);
        Some(if x < y { (x, y) } else { (y, x) })
    }
}

/// Parameters of the mechanical word `ε_n = ⌊(n+1)α + β⌋ - ⌊nα + β⌋`.
/// `β` is stored reduced mod 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SturmianParams {
    alpha: ContinuedFraction,
    beta: BigRational,
}

impl SturmianParams {
    /// `α` must lie in `(0, 1)`: `a0 = 0` and `a1` present.
    pub fn new(alpha: ContinuedFraction, beta: BigRational) -> Result<Self, WordError> {
        if alpha.a0 != 0 || alpha.term(1).is_none() {
            return Err(WordError::InvalidAlpha);
        }
        let beta = &beta - beta.floor();
        Ok(SturmianParams { alpha, beta })
    }

    pub fn alpha(&self) -> &ContinuedFraction {
        &self.alpha
    }

    pub fn beta(&self) -> &BigRational {
        &self.beta
    }

    /// `⌊kα + β⌋` for `k = 0..=n`, or `None` if the depth-`d` bounds on `α`
    /// leave some floor undetermined.
    fn floors_at_depth(&self, n: usize, d: usize) -> Option<Vec<BigInt>> {
        let (lo, hi) = self.alpha.bounds(d)?;
        let mut out = Vec::with_capacity(n + 1);
        out.push(self.beta.floor().to_integer());
        for k in 1..=n {
            let k = BigRational::from_integer(BigInt::from(k));
            let l = &k * &lo + &self.beta;
            let u = &k * &hi + &self.beta;
            let f = l.floor();
            if f.clone() + BigRational::one() < u {
                return None;
            }
            out.push(f.to_integer());
        }
        Some(out)
    }

    fn floors(&self, n: usize) -> Result<Vec<BigInt>, WordError> {
        let mut d = 2;
        loop {
            if let Some(f) = self.floors_at_depth(n, d) {
                return Ok(f);
            }
            match self.alpha.depth() {
                Some(max) if d >= max => return Err(WordError::RefineAlpha(n)),
                Some(max) => d = (2 * d).min(max),
                None => d *= 2,
            }
        }
    }

    /// The first `n` symbols, exactly.
    pub fn prefix(&self, n: usize) -> Result<BinaryWord, WordError> {
        let f = self.floors(n)?;
        Ok(f.windows(2)
            .map(|w| if w[1] > w[0] { 1 } else { 0 })
            .collect())
    }
}

/// The first `n` symbols of a Sturmian word.
pub fn sturmian_prefix(params: &SturmianParams, n: usize) -> Result<BinaryWord, WordError> {
    params.prefix(n)
}

/// A lazily evaluated infinite (or finite) binary sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SymbolStream {
    Finite(BinaryWord),
    /// `pre (period)^∞`.
    Periodic {
        preperiod: BinaryWord,
        period: BinaryWord,
    },
    Sturmian(SturmianParams),
    /// The stream with its first `by` symbols dropped.
    Shifted { inner: Box<SymbolStream>, by: usize },
    /// `s_{start + n·step}`.
    Progression {
        inner: Box<SymbolStream>,
        start: usize,
        step: usize,
    },
}

impl SymbolStream {
    pub fn periodic(preperiod: BinaryWord, period: BinaryWord) -> Result<Self, WordError> {
        if period.is_empty() {
            return Err(WordError::EmptyPeriod);
        }
        Ok(SymbolStream::Periodic { preperiod, period })
    }

    pub fn from_expansion(e: &Expansion) -> Self {
        SymbolStream::Periodic {
            preperiod: e.preperiod().clone(),
            period: e.period().clone(),
        }
    }

    pub fn shift(self, by: usize) -> Self {
        SymbolStream::Shifted {
            inner: Box::new(self),
            by,
        }
    }

    pub fn subsequence(self, start: usize, step: usize) -> Result<Self, WordError> {
        if step == 0 {
            return Err(WordError::ZeroStep);
        }
        Ok(SymbolStream::Progression {
            inner: Box::new(self),
            start,
            step,
        })
    }

    pub fn prefix(&self, n: usize) -> Result<BinaryWord, WordError> {
        match self {
            SymbolStream::Finite(w) => {
                if n > w.len() {
                    Err(WordError::StreamExhausted {
                        len: w.len(),
                        index: w.len(),
                    })
                } else {
                    Ok(w.slice(0, n))
                }
            }
            SymbolStream::Periodic { preperiod, period } => Ok((0..n)
                .map(|i| {
                    if i < preperiod.len() {
                        preperiod[i]
                    } else {
                        period[(i - preperiod.len()) % period.len()]
                    }
                })
                .collect()),
            SymbolStream::Sturmian(params) => params.prefix(n),
            SymbolStream::Shifted { inner, by } => {
                let w = inner.prefix(n + by)?;
                Ok(w.slice(*by, n + by))
            }
            SymbolStream::Progression { inner, start, step } => {
                if n == 0 {
                    return Ok(BinaryWord::empty());
                }
                let w = inner.prefix(start + (n - 1) * step + 1)?;
                Ok((0..n).map(|k| w[start + k * step]).collect())
            }
        }
    }
}

/// Outcome of [`max_diverse_check`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Diversity {
    /// No two progressions `(s_{i+np})`, `p <= p_max`, agree on the compared
    /// window. This does not certify maximal diversity.
    NoCollision { p_max: usize, horizon: usize },
    /// `(s_{i+np})` and `(s_{j+nq})` agree wherever both are defined below
    /// the horizon.
    Collision {
        i: usize,
        p: usize,
        j: usize,
        q: usize,
    },
}

impl Diversity {
    pub fn passed(&self) -> bool {
        matches!(self, Diversity::NoCollision { .. })
    }
}

/// Compares all progressions `(s_{i+np})`, `1 <= p <= p_max`, `i < p`, on
/// the first `horizon` symbols. Pairs are visited in `(p, i)` order and the
/// first collision is reported.
pub fn max_diverse_check(s: &SymbolStream, p_max: usize, horizon: usize) -> Result<Diversity, WordError> {
    let min = p_max * p_max;
    if horizon < min || p_max == 0 {
        return Err(WordError::HorizonTooShort { horizon, min });
    }
    let w = s.prefix(horizon)?;
    let progressions: Vec<(usize, usize)> = (1..=p_max).flat_map(|p| (0..p).map(move |i| (i, p))).collect();
    for (a, &(i, p)) in progressions.iter().enumerate() {
        for &(j, q) in &progressions[a + 1..] {
            let agree = (0..)
                .map_while(|n| {
                    let x = i + n * p;
                    let y = j + n * q;
                    (x < horizon && y < horizon).then(|| w[x] == w[y])
                })
                .all(|eq| eq);
            if agree {
                return Ok(Diversity::Collision { i, p, j, q });
            }
        }
    }
    Ok(Diversity::NoCollision { p_max, horizon })
}

/// An eventually periodic sequence of block indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockSequence {
    pub preperiod: BinaryWord,
    pub period: BinaryWord,
}

impl BlockSequence {
    /// The angle whose expansion is the block sequence.
    pub fn value(&self) -> Angle {
        Expansion::value_of_parts(&self.preperiod, &self.period)
    }

    pub fn prefix(&self, n: usize) -> BinaryWord {
        SymbolStream::Periodic {
            preperiod: self.preperiod.clone(),
            period: self.period.clone(),
        }
        .prefix(n)
        .expect("periodic streams never run out")
    }
}

fn check_blocks(z0: &BinaryWord, z1: &BinaryWord) -> Result<usize, WordError> {
    if z0.is_empty() || z0.len() != z1.len() || z0 == z1 {
        return Err(WordError::InvalidBlocks);
    }
    Ok(z0.len())
}

fn split_blocks(w: &BinaryWord, z0: &BinaryWord, z1: &BinaryWord) -> Option<BinaryWord> {
    let q = z0.len();
    (0..w.len() / q)
        .map(|b| {
            let block = &w.digits()[b * q..(b + 1) * q];
            if block == z0.digits() {
                Some(0)
            } else if block == z1.digits() {
                Some(1)
            } else {
                None
            }
        })
        .collect::<Option<Vec<u8>>>()
        .map(BinaryWord::from_iter)
}

/// Splits `σ` from position 0 into blocks `z0`/`z1`. Past the first block
/// boundary after the preperiod, the digits repeat with period
/// `lcm(|z0|, |period|)`, so a finite window decides the question.
pub fn tuned_decomposition(
    sigma: &Expansion,
    z0: &BinaryWord,
    z1: &BinaryWord,
) -> Result<Option<BlockSequence>, WordError> {
    let q = check_blocks(z0, z1)?;
    let s = sigma.preperiod().len();
    let r = sigma.period().len();
    let t0 = s.div_ceil(q) * q;
    let l = q.lcm(&r);
    let window = sigma.prefix(t0 + l);
    Ok(split_blocks(&window, z0, z1).map(|blocks| BlockSequence {
        preperiod: blocks.slice(0, t0 / q),
        period: blocks.slice(t0 / q, blocks.len()),
    }))
}

/// Block indices of the first `⌊horizon / q⌋` blocks of a stream, or `None`
/// if some block is neither word.
pub fn tuned_prefix_decomposition(
    s: &SymbolStream,
    z0: &BinaryWord,
    z1: &BinaryWord,
    horizon: usize,
) -> Result<Option<BinaryWord>, WordError> {
    let q = check_blocks(z0, z1)?;
    let w = s.prefix(horizon - horizon % q)?;
    Ok(split_blocks(&w, z0, z1))
}

/// Searches for a ray pair of period `2..=max_q` whose two repeating words
/// tile `σ` from position 0. With `complement_only`, only pairs whose
/// words are digit-wise complements are tried.
pub fn is_renormalizable(
    sigma: &Expansion,
    max_q: u32,
    table: &RayPairTable,
    complement_only: bool,
) -> Result<Option<RayPair>, ComponentError> {
    if max_q > table.max_period() {
        return Err(ComponentError::PeriodOutOfRange(max_q, table.max_period()));
    }
    for pair in table.pairs().iter().filter(|p| p.period <= max_q) {
        let (a, b) = pair.words();
        if complement_only && a.complement() != b {
            continue;
        }
        let found = tuned_decomposition(sigma, &a, &b).expect("ray pair words are valid blocks");
        if found.is_some() {
            return Ok(Some(pair.clone()));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> BinaryWord {
        s.parse().unwrap()
    }

    fn golden(beta: i64) -> SturmianParams {
        SturmianParams::new(ContinuedFraction::golden(), BigRational::from_integer(beta.into())).unwrap()
    }

    #[test]
    fn golden_prefix() {
        assert_eq!(golden(0).prefix(8).unwrap(), w("01011010"));
        assert_eq!(golden(0).prefix(1).unwrap(), w("0"));
        // β is read mod 1.
        assert_eq!(golden(3).prefix(8).unwrap(), w("01011010"));
    }

    #[test]
    fn finite_alpha_runs_out() {
        let cf = ContinuedFraction::from_terms(0, vec![1, 1, 1]).unwrap();
        let s = SturmianParams::new(cf, BigRational::zero()).unwrap();
        assert!(s.prefix(2).is_ok());
        assert_eq!(s.prefix(200), Err(WordError::RefineAlpha(200)));
        assert!(SturmianParams::new(ContinuedFraction::from_terms(1, vec![2]).unwrap(), BigRational::zero()).is_err());
        assert!(ContinuedFraction::from_terms(0, vec![1, 0]).is_err());
    }

    #[test]
    fn collisions() {
        let zero = SymbolStream::periodic(BinaryWord::empty(), w("0")).unwrap();
        assert_eq!(
            max_diverse_check(&zero, 3, 9).unwrap(),
            Diversity::Collision { i: 0, p: 1, j: 0, q: 2 }
        );
        let alt = SymbolStream::periodic(BinaryWord::empty(), w("01")).unwrap();
        assert!(!max_diverse_check(&alt, 4, 64).unwrap().passed());
        assert!(max_diverse_check(&alt, 4, 15).is_err());
    }

    #[test]
    fn stream_views() {
        let s = SymbolStream::Sturmian(golden(0));
        assert_eq!(s.clone().shift(2).prefix(6).unwrap(), w("011010"));
        assert_eq!(s.subsequence(1, 2).unwrap().prefix(4).unwrap(), w("1100"));
        let f = SymbolStream::Finite(w("0110"));
        assert!(f.prefix(5).is_err());
        assert!(SymbolStream::Finite(w("1")).subsequence(0, 0).is_err());
    }

    #[test]
    fn block_decompositions() {
        let e = |s: &str| s.parse::<Angle>().unwrap().expansion();
        let z0 = w("01");
        let z1 = w("10");
        // .(0110)^∞ = 6/15
        let d = tuned_decomposition(&e("6/15"), &z0, &z1).unwrap().unwrap();
        assert_eq!(d.prefix(6), w("010101"));
        let d = tuned_decomposition(&e("1/3"), &z0, &z1).unwrap().unwrap();
        assert_eq!(d.prefix(4), w("0000"));
        assert!(tuned_decomposition(&e("1/7"), &z0, &z1).unwrap().is_none());
        assert!(tuned_decomposition(&e("1/7"), &z0, &z0).is_err());
    }
}
