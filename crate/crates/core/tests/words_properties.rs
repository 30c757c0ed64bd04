use magic_angles::component::HyperbolicComponent;
use magic_angles::pairs::RayPairTable;
use magic_angles::rotation::rotation_set;
use magic_angles::word::BinaryWord;
use magic_angles::words::{
    max_diverse_check, sturmian_prefix, tuned_decomposition, ContinuedFraction, SturmianParams, SymbolStream,
};
use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use proptest::prelude::*;

fn from_floors(floor: impl Fn(u64) -> u64, n: usize) -> BinaryWord {
    (0..n as u64).map(|k| (floor(k + 1) - floor(k)) as u8).collect()
}

fn zero() -> BigRational {
    BigRational::from_integer(0.into())
}

#[test]
fn quadratic_slopes_match_integer_square_roots() {
    let n = 2000;
    // √2 - 1 = [0; 2, 2, …]: ⌊k(√2 - 1)⌋ = ⌊√(2k²)⌋ - k.
    let alpha = ContinuedFraction::with_tail(0, vec![], vec![2]).unwrap();
    let got = sturmian_prefix(&SturmianParams::new(alpha, zero()).unwrap(), n).unwrap();
    assert_eq!(got, from_floors(|k| (2 * k * k).sqrt() - k, n));
    // (√5 - 1)/2 = [0; 1, 1, …].
    let got = sturmian_prefix(&SturmianParams::new(ContinuedFraction::golden(), zero()).unwrap(), n).unwrap();
    assert_eq!(got, from_floors(|k| ((5 * k * k).sqrt() - k) / 2, n));
    // (3 - √5)/2 = [0; 2, 1, 1, …] ≈ 0.382.
    let alpha = ContinuedFraction::with_tail(0, vec![2], vec![1]).unwrap();
    let got = sturmian_prefix(&SturmianParams::new(alpha, zero()).unwrap(), n).unwrap();
    assert_eq!(got, from_floors(|k| if k == 0 { 0 } else { (3 * k - (5 * k * k).sqrt() - 1) / 2 }, n));
    assert_eq!(got.slice(0, 5).to_string(), "00100");
}

fn cf_strategy() -> impl Strategy<Value = ContinuedFraction> {
    prop::collection::vec(1u64..6, 1..4).prop_map(|tail| ContinuedFraction::with_tail(0, vec![], tail).unwrap())
}

fn beta_strategy() -> impl Strategy<Value = BigRational> {
    (-3i64..3, 0i64..997).prop_map(|(i, k)| BigRational::new(BigInt::from(i * 997 + k), BigInt::from(997)))
}

fn bits(n: usize) -> impl Strategy<Value = BinaryWord> {
    prop::collection::vec(0u8..2, n).prop_map(BinaryWord::from_iter)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sturmian_digit_sums_telescope(alpha in cf_strategy(), beta in beta_strategy(), n in 1usize..300) {
        let params = SturmianParams::new(alpha.clone(), beta.clone()).unwrap();
        let w = sturmian_prefix(&params, n).unwrap();
        let longer = sturmian_prefix(&params, n + 17).unwrap();
        prop_assert_eq!(longer.slice(0, n), w.clone());
        // Σ ε_k = ⌊nα + β⌋ - ⌊β⌋, with α pinned between convergents.
        let sum = w.iter().filter(|&d| d == 1).count() as i64;
        let (lo, hi) = alpha.bounds(40).unwrap();
        let nn = BigRational::from_integer(BigInt::from(n));
        let f_lo = (&nn * lo + &beta).floor() - beta.floor();
        let f_hi = (&nn * hi + &beta).floor() - beta.floor();
        prop_assert_eq!(&f_lo, &f_hi);
        prop_assert_eq!(f_lo, BigRational::from_integer(BigInt::from(sum)));
    }

    #[test]
    fn random_words_are_shift_stable(w in bits(801)) {
        let s = SymbolStream::Finite(w);
        let before = max_diverse_check(&s, 6, 800).unwrap();
        let after = max_diverse_check(&s.clone().shift(1), 6, 799).unwrap();
        prop_assert_eq!(before.passed(), after.passed());
    }

    #[test]
    fn sturmian_streams_are_shift_stable(alpha in cf_strategy(), beta in beta_strategy(), by in 1usize..20) {
        let s = SymbolStream::Sturmian(SturmianParams::new(alpha, beta).unwrap());
        let before = max_diverse_check(&s, 5, 1024).unwrap();
        prop_assert!(before.passed(), "{:?}", before);
        let after = max_diverse_check(&s.shift(by), 5, 1024 - by).unwrap();
        prop_assert!(after.passed(), "{:?}", after);
    }

    #[test]
    fn sturmian_subsequences_stay_diverse(alpha in cf_strategy(), beta in beta_strategy(), step in 1usize..4, start in 0usize..4) {
        let s = SymbolStream::Sturmian(SturmianParams::new(alpha, beta).unwrap());
        let horizon = 2048;
        prop_assert!(max_diverse_check(&s, 4, horizon).unwrap().passed());
        let sub = s.subsequence(start, step).unwrap();
        let d = max_diverse_check(&sub, 4, horizon / step - start).unwrap();
        prop_assert!(d.passed(), "{:?}", d);
    }
}

/// Mechanical words `⌊(k+1)p/q + b/q⌋ - ⌊kp/q + b/q⌋` and their ceiling
/// counterparts, over one period.
fn mechanical_words(p: u64, q: u64) -> Vec<BinaryWord> {
    let mut out = Vec::new();
    for b in 0..q {
        out.push(from_floors(|k| (k * p + b) / q, q as usize));
        out.push(from_floors(|k| Integer::div_ceil(&(k * p + b), &q), q as usize));
    }
    out
}

#[test]
fn tuned_cardioid_angles_decompose_into_rotation_words() {
    let table = RayPairTable::new(5).unwrap();
    let mut checked = 0;
    for pair in table.pairs() {
        let h = HyperbolicComponent::from_ray_pair(pair);
        for q in 2..=7u64 {
            for p in (1..q).filter(|p| p.gcd(&q) == 1) {
                let words = mechanical_words(p, q);
                for eta in &rotation_set(p as u32, q as u32).unwrap().points {
                    let theta = h.tune(eta);
                    let blocks = tuned_decomposition(&theta.expansion(), h.word_a(), h.word_b())
                        .unwrap()
                        .expect("tuned angles decompose");
                    assert_eq!(blocks.value(), *eta);
                    let period = blocks.prefix(q as usize);
                    assert!(words.contains(&period), "{h} {eta}: {period} is not mechanical of slope {p}/{q}");
                    checked += 1;
                }
            }
        }
    }
    assert!(checked > 1000, "{checked}");
}
