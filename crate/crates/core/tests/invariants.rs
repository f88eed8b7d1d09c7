use std::f64::consts::TAU;

use gurmix_core::detection::{run_qutrit_scheme, scheme_statistic, SchemeConfig, Verdict};
use gurmix_core::state_space::random::{density_with, hermitian_with, rng, unitary_with};
use gurmix_core::state_space::{
    bloch_of, isotropic, linear_entropy, qutrit_density, schmidt_pure, BlochVector, SchmidtCoeffs,
};
use gurmix_core::su_algebra::{conjugate, gellmann_dot, star, wedge};
use gurmix_core::uncertainty::{
    q_max_over_settings, q_oracle, MaximizerConfig, SettingFamily, SettingTemplate,
};
use gurmix_core::{CMatrix, GellMannPair};
use proptest::prelude::*;

fn dim() -> impl Strategy<Value = usize> {
    prop::sample::select(vec![2usize, 3, 4, 9])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn q_is_nonnegative(d in dim(), seed in any::<u64>()) {
        let mut g = rng(seed);
        let rho = density_with(d, &mut g);
        let (a, b) = (hermitian_with(d, &mut g), hermitian_with(d, &mut g));
        prop_assert!(q_oracle(&rho, &a, &b).unwrap().q >= -1e-10);
    }

    #[test]
    fn q_is_symmetric_in_observables(d in dim(), seed in any::<u64>()) {
        let mut g = rng(seed);
        let rho = density_with(d, &mut g);
        let (a, b) = (hermitian_with(d, &mut g), hermitian_with(d, &mut g));
        let ab = q_oracle(&rho, &a, &b).unwrap().q;
        let ba = q_oracle(&rho, &b, &a).unwrap().q;
        prop_assert!((ab - ba).abs() <= 1e-10 * ab.abs().max(1.0));
    }

    #[test]
    fn q_is_unitarily_covariant(d in dim(), seed in any::<u64>()) {
        let mut g = rng(seed);
        let rho = density_with(d, &mut g);
        let (a, b) = (hermitian_with(d, &mut g), hermitian_with(d, &mut g));
        let u = unitary_with(d, &mut g);
        let q0 = q_oracle(&rho, &a, &b).unwrap().q;
        let q1 = q_oracle(
            &rho.conjugated(&u).unwrap(),
            &conjugate(&a, &u).unwrap(),
            &conjugate(&b, &u).unwrap(),
        )
        .unwrap()
        .q;
        prop_assert!((q0 - q1).abs() <= 1e-10 * q0.abs().max(1.0));
    }

    #[test]
    fn bloch_round_trip(seed in any::<u64>()) {
        let rho = density_with(3, &mut rng(seed));
        let BlochVector::Qutrit(n) = bloch_of(&rho).unwrap() else {
            panic!("qutrit Bloch vector expected");
        };
        let back = qutrit_density(&n).unwrap();
        prop_assert!(rho.operator().max_abs_diff(back.operator()) < 1e-12);
    }

    #[test]
    fn star_is_symmetric_and_wedge_antisymmetric(
        u in prop::array::uniform8(-1.0f64..1.0),
        v in prop::array::uniform8(-1.0f64..1.0),
    ) {
        let (s1, s2) = (star(&u, &v), star(&v, &u));
        let (w1, w2) = (wedge(&u, &v), wedge(&v, &u));
        for k in 0..8 {
            prop_assert!((s1[k] - s2[k]).abs() < 1e-12);
            prop_assert!((w1[k] + w2[k]).abs() < 1e-12);
        }
    }

    #[test]
    fn schmidt_pure_states_vanish_on_constrained_settings(
        k in prop::array::uniform3(0.0f64..1.0),
        t3 in 0.0..TAU,
        t4 in 0.0..TAU,
        pair in prop::sample::select(GellMannPair::ALL.to_vec()),
    ) {
        prop_assume!(k.iter().any(|&x| x > 1e-3));
        let rho = schmidt_pure(&SchmidtCoeffs::normalized(k.to_vec()).unwrap());
        let s = SettingFamily::TwoQutrit { pair, theta2: t3 + t4, theta3: t3, theta4: t4 };
        let (a, b) = s.observables().unwrap();
        prop_assert!(q_oracle(&rho, &a, &b).unwrap().q.abs() < 1e-9);
    }

    #[test]
    fn scheme_statistic_agrees_with_verdict(seed in any::<u64>()) {
        let rho = density_with(3, &mut rng(seed));
        let config = SchemeConfig::default();
        let stat = scheme_statistic(&rho, &config).unwrap();
        let verdict = run_qutrit_scheme(&rho, &config).unwrap().verdict;
        prop_assert_eq!(verdict == Verdict::Pure, stat < config.epsilon);
    }
}

/// `U ⊗ U*` leaves the isotropic state unchanged.
#[test]
fn isotropic_is_u_ustar_invariant() {
    let mut g = rng(11);
    for p in [0.0, 0.3, 0.7, 1.0] {
        let rho = isotropic(p).unwrap();
        let u = unitary_with(3, &mut g);
        let uu: CMatrix = u.kronecker(&u.conjugate());
        let moved = rho.conjugated(&uu).unwrap();
        assert!(rho.operator().max_abs_diff(moved.operator()) < 1e-12);
    }
}

#[test]
fn isotropic_q_max_is_positive_below_one() {
    let m = MaximizerConfig {
        grid: 16,
        refine_rounds: 2,
    };
    for p in [0.0, 0.5, 0.9] {
        let rho = isotropic(p).unwrap();
        let q = q_max_over_settings(&rho, &SettingTemplate::two_qutrit_default(), &m)
            .unwrap()
            .q_max;
        let expected = 16.0 / 81.0 * (1.0 - p) * (1.0 + 2.0 * p);
        assert!((q - expected).abs() < 1e-8, "p = {p}: {q} vs {expected}");
    }
}

#[test]
fn linear_entropy_of_maximally_mixed_is_one() {
    let rho = qutrit_density(&[0.0; 8]).unwrap();
    assert!((linear_entropy(&rho) - 1.0).abs() < 1e-12);
}

#[test]
fn gellmann_dot_of_extremal_has_spectrum_of_pure_state() {
    // -λ₈ = diag(-1, -1, 2)/√3, so ρ = (I - √3 λ₈)/3 = |3⟩⟨3|.
    let mut n = [0.0; 8];
    n[7] = -1.0;
    let mut ev = gellmann_dot(&n).eigenvalues();
    ev.sort_by(f64::total_cmp);
    let expected = [-1.0 / 3f64.sqrt(), -1.0 / 3f64.sqrt(), 2.0 / 3f64.sqrt()];
    for (a, b) in ev.iter().zip(expected) {
        assert!((a - b).abs() < 1e-12);
    }
}
