use approx::assert_relative_eq;
use proptest::prelude::*;

use helmholtz_core::boundary::{
    ellipse_boundary, supercircle_boundary, validate_equal_area, EllipseSpec, StarCurve, SupercircleSpec,
};
use helmholtz_core::empirical::{blend_weight, dual_exponent, empirical_omega, Exponent};
use helmholtz_core::oracle::{eigenvalue_near, OracleConfig, SymmetryClass};
use helmholtz_core::perturb::{circle_modes, corrections, spectrum, Mode, Units};
use helmholtz_core::report::{format_float, Grid};
use helmholtz_core::{BoundaryCondition, Parity};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn duality_is_an_involution(t in 1.0001f64..50.0) {
        let Exponent::Finite(d) = dual_exponent(Exponent::Finite(t)).unwrap() else { unreachable!() };
        let Exponent::Finite(back) = dual_exponent(Exponent::Finite(d)).unwrap() else { unreachable!() };
        prop_assert!((back - t).abs() <= 1e-9 * t);
        prop_assert!((1.0 / t + 1.0 / d - 1.0).abs() < 1e-12);
    }

    #[test]
    fn blend_weights_stay_in_the_unit_interval(t in 1.0f64..1e6, n in 1i32..6) {
        let f = blend_weight(Exponent::Finite(t), n).unwrap();
        prop_assert!((0.0..=1.0).contains(&f));
    }

    #[test]
    fn empirical_levels_are_positive_and_ordered(t in 1.0f64..8.0, i in 0usize..30) {
        for bc in [BoundaryCondition::Dirichlet, BoundaryCondition::Neumann] {
            let a = empirical_omega(t, i, bc).unwrap();
            let b = empirical_omega(t, i + 1, bc).unwrap();
            prop_assert!(a > 0.0 && a <= b * (1.0 + 1e-12));
        }
    }

    #[test]
    fn first_order_pair_trace_vanishes(lam in 0.0f64..0.3, t in 1.1f64..3.0) {
        let boundaries = [
            ellipse_boundary(EllipseSpec::from_lambda(1.3, lam)).unwrap(),
            supercircle_boundary(SupercircleSpec::new(t), 32).unwrap(),
        ];
        for b in &boundaries {
            for m in circle_modes::<f64>(16).unwrap().iter().filter(|m| m.l > 0 && m.parity == Parity::Cos) {
                let (c, _) = corrections(b, m).unwrap();
                let (s, _) = corrections(b, &Mode { parity: Parity::Sin, ..*m }).unwrap();
                prop_assert!((c + s).abs() <= 1e-14 * c.abs().max(1.0));
            }
        }
    }

    #[test]
    fn spectrum_is_sorted_and_keeps_its_size(lam in -0.3f64..0.3, n in 1usize..30) {
        let b = ellipse_boundary(EllipseSpec::from_lambda(1.0, 0.1)).unwrap().with_lambda(lam);
        let s = spectrum(&b, BoundaryCondition::Neumann, n, Units::Reduced).unwrap();
        prop_assert_eq!(s.len(), n);
        prop_assert!(s.windows(2).all(|w| w[0].omega_total <= w[1].omega_total));
    }

    #[test]
    fn formatted_floats_round_trip_to_ten_digits(x in prop::num::f64::NORMAL) {
        let back: f64 = format_float(x).parse().unwrap();
        prop_assert!((back - x).abs() <= 5e-10 * x.abs());
    }

    #[test]
    fn grid_endpoints_are_included(start in -5.0f64..5.0, steps in 1usize..200, step in 0.001f64..1.0) {
        let stop = start + steps as f64 * step;
        let p = Grid { start, stop, step }.points().unwrap();
        prop_assert_eq!(p.len(), steps + 1);
        prop_assert!((p[steps] - stop).abs() <= 1e-9 * stop.abs().max(1.0));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn supercircle_expansions_satisfy_equal_area(t in 1.2f64..2.8) {
        let b = supercircle_boundary(SupercircleSpec::new(t), 64).unwrap();
        prop_assert!(validate_equal_area(&b).constraint_residual < 1e-8);
    }
}

#[test]
fn zero_deformation_leaves_the_pair_degenerate() {
    let b = ellipse_boundary(EllipseSpec::from_lambda(1.0, 0.2)).unwrap().with_lambda(0.0);
    let s = spectrum(&b, BoundaryCondition::Neumann, 12, Units::Reduced).unwrap();
    for w in s.windows(2).filter(|w| w[0].mode.l == w[1].mode.l && w[0].mode.j == w[1].mode.j) {
        assert_eq!(w[0].omega_total, w[1].omega_total);
        assert_eq!((w[0].mode.parity, w[1].mode.parity), (Parity::Cos, Parity::Sin));
    }
}

#[test]
fn ellipse_splits_the_l1_pair_but_not_l2_at_first_order() {
    let b = ellipse_boundary(EllipseSpec::from_lambda(1.0, 0.1)).unwrap();
    let w1 = |l, p| corrections(&b, &Mode::<f64>::new(l, 1, p).unwrap()).unwrap().0;
    assert!(w1(1, Parity::Cos) < 0.0 && w1(1, Parity::Sin) > 0.0);
    assert_eq!(w1(2, Parity::Cos), 0.0);
    assert_eq!(w1(2, Parity::Sin), 0.0);
}

#[test]
fn oracle_eigenvalues_scale_with_inverse_area() {
    // ω(s·Ω) = ω(Ω)/s²
    let cfg = OracleConfig::default();
    let base = EllipseSpec::from_lambda(1.0f64, 0.1);
    let class = SymmetryClass::containing(base.symmetry(), 1, Parity::Cos);
    let w = eigenvalue_near(&base, BoundaryCondition::Neumann, 1.68, Some(class), &cfg).unwrap().omega;
    for s in [0.7, 1.6] {
        let scaled = EllipseSpec { a: base.a * s, b: base.b * s };
        let ws = eigenvalue_near(&scaled, BoundaryCondition::Neumann, 1.68 / s, Some(class), &cfg).unwrap().omega;
        assert_relative_eq!(ws * s * s, w, max_relative = 1e-6);
    }
}
