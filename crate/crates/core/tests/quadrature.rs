mod common;

use std::f64::consts::PI;

use common::*;
use hankel_asymptotics::quadrature::hankel::{
    hankel_gamma, hankel_sum_identity, reference_l, reference_l_hankel,
};
use hankel_asymptotics::quadrature::{
    integrate_path, integrate_path_with, integrate_real_line, ComplexPath, PathPiece, QuadratureOptions,
};
use hankel_asymptotics::special::gamma_lanczos;
use hankel_asymptotics::Error;
use num_complex::Complex64;
use proptest::prelude::*;

#[test]
fn hankel_gamma_against_independent_gamma() {
    for s in [c(0.5, 0.0), c(2.5, 0.0), c(0.5, 1.0), c(-1.5, 0.3), c(3.2, -2.0)] {
        let got = hankel_gamma(s, 1e-13).unwrap();
        assert!(rel(got, gamma_lanczos(s)) < 1e-10, "s = {s}");
    }
    let got = hankel_gamma(c(0.5, 1.0), 1e-13).unwrap();
    assert!(rel(got, pair(GAMMA_HALF_PLUS_I)) < 1e-12);
}

#[test]
fn hankel_gamma_refuses_integers() {
    assert!(matches!(hankel_gamma(c(2.0, 0.0), 1e-10), Err(Error::NearSingularPrefactor(_))));
    assert!(matches!(hankel_gamma(c(-1.0, 1e-9), 1e-10), Err(Error::NearSingularPrefactor(_))));
}

#[test]
fn sum_identity_matches_reference() {
    for &(x, want) in &SUM_LHS {
        let id = hankel_sum_identity(x, 1e-13, 60).unwrap();
        let want = pair(want);
        assert!((id.lhs - want).norm() < 1e-14, "x = {x}");
        assert!((id.rhs - want).norm() < 1e-9, "x = {x}");
        assert!((id.rhs_square - id.rhs).norm() < 1e-9, "x = {x}");
    }
    assert!(matches!(hankel_sum_identity(0.0, 1e-10, 60), Err(Error::PoleAtOrigin)));
}

#[test]
fn cauchy_integral_of_one_over_z() {
    let circle = ComplexPath::new(vec![PathPiece::arc(c(0.0, 0.0), 2.0, 0.0, 2.0 * PI)]).unwrap();
    let r = integrate_path(|z| 1.0 / z, &circle, 1e-13).unwrap();
    assert!((r.value - c(0.0, 2.0 * PI)).norm() < 1e-12);
}

#[test]
fn budget_exhaustion_reports_partial_result() {
    let opts = QuadratureOptions {
        tol: 1e-15,
        max_subdivisions: 5,
        max_depth: 40,
    };
    let err = integrate_real_line(|t| c((100.0 * t).sin() / t.sqrt(), 0.0), 0.0, 1.0, opts).unwrap_err();
    match err {
        Error::BudgetExceeded { partial, subdivisions, .. } => {
            assert!(subdivisions >= 5);
            assert!(partial.value.norm().is_finite());
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn deformed_contour_matches_extended_precision() {
    for &(alpha, lambda, want) in &L_HANKEL {
        let got = reference_l(alpha, lambda, 1e-13).unwrap();
        let want = pair(want);
        assert!((got.value - want).norm() < 1e-11, "alpha {alpha} lambda {lambda}: {} vs {want}", got.value);
        assert!(got.total_error() < 1e-11);
    }
}

#[test]
fn hankel_and_deformed_contours_agree_at_small_lambda() {
    for &alpha in &[0.5, 0.97, 1.02, 2.0, 5.0] {
        for &lambda in &[2.0, 5.0, 10.0] {
            let h = reference_l_hankel(alpha, lambda, 1e-12).unwrap().value;
            let d = reference_l(alpha, lambda, 1e-12).unwrap().value;
            assert!((h - d).norm() < 1e-9, "alpha {alpha} lambda {lambda}: {h} vs {d}");
        }
    }
}

#[test]
fn alpha_one_is_the_mean_of_the_one_sided_limits() {
    let at = reference_l(1.0, 40.0, 1e-12).unwrap().value;
    let above = reference_l(1.0 + 1e-9, 40.0, 1e-12).unwrap().value;
    let below = reference_l(1.0 - 1e-9, 40.0, 1e-12).unwrap().value;
    assert!((0.5 * (above + below) - at).norm() < 1e-7);
    // the one-sided values differ by the residue of the crossed pole
    assert!((above - below).norm() > 1e-3);
}

fn entire(z: Complex64) -> Complex64 {
    (0.3 * z).exp() * (z * z - c(1.0, 2.0))
}

fn entire_antiderivative(z: Complex64) -> Complex64 {
    // d/dz [e^{az}(z^2/a - 2z/a^2 + 2/a^3 - b/a)] with a = 0.3, b = 1 + 2i
    let a = 0.3;
    (a * z).exp() * (z * z / a - 2.0 * z / (a * a) + 2.0 / (a * a * a) - c(1.0, 2.0) / a)
}

proptest! {
    #[test]
    fn reversal_negates(x0 in -2.0..2.0f64, y0 in -2.0..2.0f64, x1 in -2.0..2.0f64, y1 in -2.0..2.0f64, turn in 0.1..3.0f64) {
        let a = c(x0, y0);
        let b = c(x1, y1);
        let center = b + c(0.0, 1.0);
        let arc_end = center + Complex64::from_polar(1.0, -PI / 2.0 + turn);
        let path = ComplexPath::new(vec![
            PathPiece::line(a, b),
            PathPiece::arc(center, 1.0, -PI / 2.0, -PI / 2.0 + turn),
        ]).unwrap();
        let fwd = integrate_path(entire, &path, 1e-12).unwrap().value;
        let back = integrate_path(entire, &path.reversed(), 1e-12).unwrap().value;
        prop_assert!((fwd + back).norm() < 1e-10);
        // path independence for an entire integrand
        let exact = entire_antiderivative(arc_end) - entire_antiderivative(a);
        prop_assert!((fwd - exact).norm() < 1e-10 * exact.norm().max(1.0));
    }

    #[test]
    fn global_tolerance_is_met(k in 1.0..40.0f64) {
        let opts = QuadratureOptions::with_tol(1e-11);
        let r = integrate_real_line(|t| Complex64::from_polar(1.0, k * t), 0.0, 1.0, opts).unwrap();
        let exact = (Complex64::from_polar(1.0, k) - 1.0) / c(0.0, k);
        prop_assert!((r.value - exact).norm() < 1e-11);
        prop_assert!(r.abs_error_estimate <= 1e-11);
    }
}

#[test]
fn evaluations_come_in_whole_rules() {
    let path = ComplexPath::new(vec![PathPiece::line(c(0.0, 0.0), c(1.0, 1.0))]).unwrap();
    let r = integrate_path_with(|z| z, &path, QuadratureOptions::with_tol(1e-14)).unwrap();
    assert!((r.value - c(0.0, 1.0)).norm() < 1e-15);
    assert_eq!(r.evaluations % 21, 0);
}

fn l_integrand(alpha: f64, lambda: f64) -> impl Fn(Complex64) -> Complex64 {
    let p = hankel_asymptotics::phase::PhaseData::new(alpha);
    move |w| p.integrand(lambda, w)
}

#[test]
fn doubling_the_tails_stays_within_the_error_budget() {
    use hankel_asymptotics::quadrature::hankel::{deformed_contour, SaddleCrossing};
    for &alpha in &[0.5, 2.0, 5.0] {
        for &lambda in &[20.0, 50.0, 100.0] {
            let path = deformed_contour(lambda, 1e-12, SaddleCrossing::Chord).unwrap();
            let longer = path.map_rays(|p| match *p {
                PathPiece::Ray { truncation, .. } => p.with_truncation(2.0 * truncation, 0.0),
                other => other,
            });
            let f = l_integrand(alpha, lambda);
            let a = integrate_path(&f, &path, 1e-12).unwrap();
            let b = integrate_path(&f, &longer, 1e-12).unwrap();
            let budget = a.tail_bound + a.abs_error_estimate + b.abs_error_estimate;
            assert!((a.value - b.value).norm() <= budget, "alpha {alpha} lambda {lambda}");
        }
    }
}

#[test]
fn two_resolutions_agree() {
    let coarse = reference_l(5.0, 50.0, 1e-12).unwrap().value;
    let fine = reference_l(5.0, 50.0, 1e-14).unwrap().value;
    assert!((coarse - fine).norm() < 1e-10);
}
