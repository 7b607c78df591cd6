use std::f64::consts::PI;

use helionics_core::densities::{one_density, pair_density};
use helionics_core::hamiltonian::{kinetic_element, momentum_square_element};
use helionics_core::measures::{
    entropy_density, info_density_p, mutual_information, shannon_one, shannon_two,
};
use helionics_core::orbitals::overlap;
use helionics_core::quadrature::{integrate_pair, integrate_radial, log_space};
use helionics_core::*;
use proptest::prelude::*;

fn spec() -> QuadSpec {
    QuadSpec::default()
}

fn orbital(nodal: bool, zeta: f64) -> OrbitalCombo {
    if nodal {
        OrbitalCombo::nodal(zeta).unwrap()
    } else {
        OrbitalCombo::slater(zeta).unwrap()
    }
}

fn momentum_overlap(a: &OrbitalCombo, b: &OrbitalCombo) -> f64 {
    let s = QuadSpec {
        rel_tol: 1e-11,
        abs_tol: 1e-14,
        ..spec()
    }
    .with_scale(a.max_exponent().max(b.max_exponent()));
    integrate_radial(|p| 4.0 * PI * p * p * a.eval_momentum(p) * b.eval_momentum(p), &s)
        .unwrap()
        .value
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn parseval_for_orbital_pairs(z1 in 0.3f64..10.0, z2 in 0.3f64..10.0, n1: bool, n2: bool) {
        let (a, b) = (orbital(n1, z1), orbital(n2, z2));
        let position = overlap(&a, &b);
        let momentum = momentum_overlap(&a, &b);
        let scale = (overlap(&a, &a) * overlap(&b, &b)).sqrt();
        prop_assert!((position - momentum).abs() <= 1e-8 * scale, "{position} vs {momentum}");
    }

    #[test]
    fn momentum_square_is_twice_kinetic(z1 in 0.3f64..10.0, z2 in 0.3f64..10.0, n1: bool, n2: bool) {
        let (a, b) = (orbital(n1, z1), orbital(n2, z2));
        let t = kinetic_element(&a, &b);
        let p2 = momentum_square_element(&a, &b, &spec()).unwrap();
        prop_assert!((p2 - 2.0 * t).abs() <= 1e-8 * p2.abs().max(t.abs()).max(1e-3), "{p2} vs {t}");
    }

    #[test]
    fn triplet_pair_density_vanishes_on_diagonal(z1 in 0.5f64..8.0, z2 in 0.3f64..6.0, x in 0.0f64..20.0) {
        let s = TwoElectronState::build(StateKind::Triplet, 2.0, [z1, z2]).unwrap();
        for space in [Space::Position, Space::Momentum] {
            prop_assert_eq!(pair_density(&s, space).eval(x, x), 0.0);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn two_electron_parseval(z1 in 0.5f64..6.0, z2 in 0.3f64..4.0, triplet: bool) {
        let kind = if triplet { StateKind::Triplet } else { StateKind::Singlet };
        let s = TwoElectronState::build(kind, 2.0, [z1, z2]).unwrap();
        for space in [Space::Position, Space::Momentum] {
            let pair = pair_density(&s, space).to_unity().unwrap();
            let tight = QuadSpec { rel_tol: 1e-11, abs_tol: 1e-14, ..spec() }.with_scale(pair.scale());
            let total = integrate_pair(
                |x, y| 16.0 * PI * PI * x * x * y * y * pair.eval(x, y),
                &tight,
            )
            .unwrap()
            .value;
            prop_assert!((total - 1.0).abs() <= 1e-8, "{space:?} {total}");
        }
    }
}

fn optimized(kind: StateKind, z: f64) -> TwoElectronState {
    hamiltonian::optimize(kind, z, hamiltonian::default_start(kind, z))
        .unwrap()
        .state()
        .unwrap()
}

#[test]
fn mutual_information_modes_agree() {
    for kind in [StateKind::Singlet, StateKind::Triplet, StateKind::NonInteractingTriplet] {
        for z in [2.0, 3.0, 5.0, 10.0, 30.0] {
            let s = optimized(kind, z);
            for space in [Space::Position, Space::Momentum] {
                let one = one_density(&s, space).to_unity().unwrap();
                let pair = pair_density(&s, space).to_unity().unwrap();
                let d = mutual_information(&pair, &one, MiMode::Direct, &spec()).unwrap();
                let e = mutual_information(&pair, &one, MiMode::EntropyDifference, &spec()).unwrap();
                assert!((d - e).abs() <= 1e-5, "{kind} Z={z} {space:?}: {d} vs {e}");
                assert!(d >= -1e-6, "{kind} Z={z} {space:?}: {d}");
            }
        }
    }
}

#[test]
fn marginal_consistency() {
    let tight = QuadSpec {
        rel_tol: 1e-12,
        abs_tol: 1e-15,
        ..spec()
    };
    for kind in [StateKind::Singlet, StateKind::Triplet] {
        let s = optimized(kind, 3.0);
        for space in [Space::Position, Space::Momentum] {
            let one = one_density(&s, space).to_unity().unwrap();
            let pair = pair_density(&s, space).to_unity().unwrap();
            for k in [0.0, 0.1, 0.5, 1.0, 2.0, 5.0] {
                let x = k * one.scale();
                let m = pair.marginal(x, &tight).unwrap();
                assert!((m - one.eval(x)).abs() <= 1e-8 * one.eval(x).max(1.0), "{kind} {space:?} x={x}");
            }
        }
    }
}

#[test]
fn non_interacting_scaling_is_exact() {
    let base = MeasureReport::evaluate(&TwoElectronState::non_interacting(1.0).unwrap(), &spec()).unwrap();
    for z in [2.0_f64, 5.0, 10.0, 30.0] {
        let r = MeasureReport::evaluate(&TwoElectronState::non_interacting(z).unwrap(), &spec()).unwrap();
        assert!((r.s_gamma_u - base.s_gamma_u + 6.0 * z.ln()).abs() < 1e-7, "Z={z}");
        assert!((r.s_pi2_u - base.s_pi2_u - 6.0 * z.ln()).abs() < 1e-7, "Z={z}");
        assert!((r.entropy_sum_1e - base.entropy_sum_1e).abs() < 1e-8, "Z={z}");
        assert!((r.i_r - base.i_r).abs() < 1e-7);
        assert!((r.i_p - base.i_p).abs() < 1e-7);
    }
}

#[test]
fn hydrogenic_sum_is_charge_independent() {
    let at = |z: f64| {
        let r = shannon_one(&RadialDensity::hydrogenic(z, Space::Position).unwrap(), &spec()).unwrap();
        let p = shannon_one(&RadialDensity::hydrogenic(z, Space::Momentum).unwrap(), &spec()).unwrap();
        r + p
    };
    let one = at(1.0);
    for z in [0.7, 2.0, 13.0] {
        assert!((at(z) - one).abs() < 1e-8);
    }
}

#[test]
fn product_singlet_entropy_is_additive() {
    let s = TwoElectronState::build(StateKind::Singlet, 2.0, [1.6875, 1.6875]).unwrap();
    for space in [Space::Position, Space::Momentum] {
        let s1 = shannon_one(&one_density(&s, space).to_unity().unwrap(), &spec()).unwrap();
        let s2 = shannon_two(&pair_density(&s, space).to_unity().unwrap(), &spec()).unwrap();
        assert!((s2 - 2.0 * s1).abs() < 1e-8);
    }
}

#[test]
fn info_density_integrates_to_mutual_information() {
    let ps = log_space(1e-5, 1e3, 3000);
    for z in [2.0, 4.0] {
        let s = optimized(StateKind::Triplet, z);
        let curve = info_density_p(&s, &ps, &spec()).unwrap();
        let report = MeasureReport::evaluate(&s, &spec()).unwrap();
        assert!((curve.integral() - report.i_p).abs() < 1e-4 * report.i_p, "Z={z}");
    }
}

#[test]
fn info_density_cancels_for_product_state() {
    let s = TwoElectronState::build(StateKind::Singlet, 3.0, [2.6875, 2.6875]).unwrap();
    let ps = log_space(1e-4, 1e3, 600);
    let curve = info_density_p(&s, &ps, &spec()).unwrap();
    assert!(curve.values.iter().all(|v| v.abs() < 1e-9));
    assert!(curve.integral().abs() < 1e-9);
}

#[test]
fn entropy_density_curves_integrate_to_scalars() {
    let s = optimized(StateKind::Triplet, 2.0);
    let report = MeasureReport::evaluate(&s, &spec()).unwrap();
    let rs = log_space(1e-6, 80.0, 4000);
    let ps = log_space(1e-6, 1e3, 4000);
    let r = entropy_density(&one_density(&s, Space::Position).to_unity().unwrap(), &rs).unwrap();
    let p = entropy_density(&one_density(&s, Space::Momentum).to_unity().unwrap(), &ps).unwrap();
    assert!((r.integral() - report.s_rho_u).abs() < 1e-4);
    assert!((p.integral() - report.s_pi_u).abs() < 1e-4);
}

#[test]
fn hydrogenic_entropy_density_is_non_negative() {
    let d = RadialDensity::hydrogenic(1.0, Space::Position).unwrap();
    let c = entropy_density(&d, &log_space(1e-4, 40.0, 2000)).unwrap();
    assert!(c.values.iter().all(|&v| v >= 0.0));
}
