use magic_angles::angle::{concat, Angle};
use magic_angles::component::HyperbolicComponent;
use magic_angles::harness::{components, upper_reflection};
use magic_angles::magic::{
    alternate_phi, ble_cabrera, douady_t, in_u_p, is_real_angle, orbit_report, psi, u_p_radius, MagicFormula,
};
use magic_angles::pairs::RayPairTable;
use magic_angles::rotation::cardioid_angles;
use magic_angles::word::BinaryWord;
use num_integer::Integer;
use proptest::prelude::*;
use std::sync::OnceLock;

fn table() -> &'static RayPairTable {
    static TABLE: OnceLock<RayPairTable> = OnceLock::new();
    TABLE.get_or_init(|| RayPairTable::new(6).unwrap())
}

/// The cardioid and every enumerated component up to period `max`.
fn all_components(max: u32) -> Vec<HyperbolicComponent> {
    std::iter::once(HyperbolicComponent::cardioid())
        .chain(components(table(), max))
        .collect()
}

fn admissible() -> &'static [MagicFormula] {
    static FORMULAS: OnceLock<Vec<MagicFormula>> = OnceLock::new();
    FORMULAS.get_or_init(|| {
        components(table(), 6)
            .into_iter()
            .filter_map(|h| MagicFormula::for_component(h).ok())
            .collect()
    })
}

fn angle_strategy(max_q: u64) -> impl Strategy<Value = Angle> {
    (1..=max_q).prop_flat_map(|q| (0..q, Just(q))).prop_map(|(p, q)| Angle::new(p, q).unwrap())
}

proptest! {
    #[test]
    fn tuning_respects_concatenation(
        index in 0usize..22,
        s in prop::collection::vec(0u8..2, 0..=8).prop_map(BinaryWord::from_iter),
        theta in angle_strategy(1000),
    ) {
        let hs = all_components(5);
        let h = &hs[index % hs.len()];
        prop_assert_eq!(h.tune(&concat(&s, &theta)), concat(&h.tune_word(&s), &h.tune(&theta)));
        prop_assert_eq!(h.untune(&h.tune(&theta)), Some(theta.clone()));
    }

    /// `Φ_H = D^{δ_V} ∘ T_H` on the branch `[a_H, a'_H] = T_H-image of [0, 1/3]`.
    #[test]
    fn formula_factors_through_the_tuned_branch(index in 0usize..64, eta in angle_strategy(2000)) {
        let third = Angle::new(1, 3).unwrap();
        prop_assume!(eta <= third);
        let fs = admissible();
        let f = &fs[index % fs.len()];
        let h = f.component();
        let theta = h.tune(&eta);
        prop_assert!(h.root_a() <= &theta && theta <= h.a_prime());
        let branch = ble_cabrera(h, &theta).unwrap();
        prop_assert_eq!(f.eval(&theta), branch.iterate(f.vein().complexity() as usize));
    }

    /// Tuned angles stay `2^{-2p}` from 1/2, and `0 1^{2p-1} · θ` is real.
    #[test]
    fn alternate_formula_lands_on_the_real_axis(index in 0usize..64, eta in angle_strategy(500)) {
        let hs = components(table(), 6);
        let h = &hs[index % hs.len()];
        let p = h.period();
        let theta = h.tune(&eta);
        prop_assert!(orbit_report(&theta).min_distance >= u_p_radius(p));
        let phi = alternate_phi(h, &theta).unwrap();
        let report = orbit_report(&phi);
        prop_assert!(report.is_real());
        prop_assert!(in_u_p(&phi, p));
        prop_assert!(report.orbit.iter().skip(1).all(|x| !in_u_p(x, p)));
    }
}

#[test]
fn douady_images_of_cardioid_angles_are_real() {
    let angles = cardioid_angles(12).unwrap();
    assert!(angles.len() > 80);
    for eta in &angles {
        let t = douady_t(eta).unwrap();
        assert!(is_real_angle(&t), "T({eta}) = {t}");
        assert_eq!(psi(&t), upper_reflection(&t), "T({eta}) = {t}");
    }
}

fn psi_is_real_up_to(max_q: u64) {
    for q in 1..=max_q {
        for p in (0..q).filter(|p| p.gcd(&q) == 1) {
            let x = Angle::new(p, q).unwrap();
            let y = psi(&x);
            assert!(is_real_angle(&y), "psi({x}) = {y}");
            assert!(y >= Angle::half() || y.is_zero(), "psi({x}) = {y}");
        }
    }
}

#[test]
fn psi_values_are_real() {
    psi_is_real_up_to(256);
}

#[test]
#[ignore = "slow; run with --ignored"]
fn psi_values_are_real_to_1024() {
    psi_is_real_up_to(1 << 10);
}
