//! Taylor coefficients of the amplitudes `g(alpha, r)` and `g_reg(alpha, r)`
//! about `r = 0`.
//!
//! With `s = ln(i w)` both amplitudes factor through `A(r) = r/(e^{s(r)} - 1)`:
//!
//! ```text
//! g     = (i e^{i pi/4}/pi) A(r) / (ln alpha - s(r))
//! g_reg = (i e^{i pi/4}/pi) A(r) Q(s(r) - ln alpha),  Q(x) = 1/(1 - e^{-x}) - 1/x
//! ```
//!
//! `Q` is analytic at `x = 0` (radius `2 pi`), so `g_reg` stays well defined
//! through `alpha = 1`.

use std::f64::consts::{FRAC_PI_4, PI};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::saddle::s_of_r_series;
use crate::series::TruncatedSeries;
use crate::special::cis;

/// Around this `|ln alpha|` the regularized amplitude switches from the
/// recentred Maclaurin series of `Q` to its direct expansion.
pub const Q_MACLAURIN_RADIUS: f64 = 1.5;
const Q_MACLAURIN_ORDER: usize = 64;

fn zero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

fn prefactor() -> Complex64 {
    Complex64::i() * cis(FRAC_PI_4) / PI
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(Error::InvalidArgument(format!("alpha must be positive, got {alpha}")));
    }
    Ok(())
}

/// `A(r) = r/(e^{s(r)} - 1)` and `s(r)` to order `order`.
fn chart_factors(order: usize) -> Result<(TruncatedSeries, TruncatedSeries)> {
    let s = s_of_r_series(order + 1)?;
    let mut em1 = TruncatedSeries::exp_about(zero(), order + 1);
    em1 = em1.add_constant(Complex64::new(-1.0, 0.0));
    let expm1_s = TruncatedSeries::compose(&em1, &s)?;
    let a = expm1_s.deflate()?.reciprocal()?;
    Ok((a, s.truncated(order)))
}

/// Maclaurin series of `Q(x) = 1/(1 - e^{-x}) - 1/x`.
fn q_maclaurin(order: usize) -> TruncatedSeries {
    // (1 - e^{-x})/x = sum (-1)^n x^n/(n+1)!
    let mut fact = 1.0;
    let base = TruncatedSeries::from_fn(zero(), order + 1, |n| {
        fact *= (n + 1) as f64;
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        Complex64::new(sign / fact, 0.0)
    });
    // x/(1 - e^{-x}) - 1 vanishes at 0; dividing by x gives Q
    let recip = base.reciprocal().expect("constant term is 1");
    recip
        .add_constant(Complex64::new(-1.0, 0.0))
        .deflate()
        .expect("constant term cancels")
}

/// Taylor series of `Q` about the real point `x0`.
pub fn q_series(x0: f64, order: usize) -> TruncatedSeries {
    let center = Complex64::new(x0, 0.0);
    if x0.abs() <= Q_MACLAURIN_RADIUS {
        return q_maclaurin(Q_MACLAURIN_ORDER).recenter(center).truncated(order);
    }
    // 1 - e^{-x} about x0
    let mut fact = 1.0;
    let e = (-x0).exp();
    let one_minus = TruncatedSeries::from_fn(center, order, |k| {
        if k > 0 {
            fact *= k as f64;
        }
        let sign = if k % 2 == 0 { -1.0 } else { 1.0 };
        let v = sign * e / fact;
        Complex64::new(if k == 0 { 1.0 + v } else { v }, 0.0)
    });
    let first = one_minus.reciprocal().expect("x0 != 0");
    let second = TruncatedSeries::from_fn(center, order, |k| {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        Complex64::new(sign / x0.powi(k as i32 + 1), 0.0)
    });
    first.sub(&second).expect("same structure")
}

/// Coefficients `c_k` of `g(alpha, r) = sum c_k r^k`, `k <= max_order`.
pub fn g_coefficients(alpha: f64, max_order: usize) -> Result<TruncatedSeries> {
    check_alpha(alpha)?;
    let ln_alpha = alpha.ln();
    if ln_alpha == 0.0 {
        return Err(Error::PoleCollision);
    }
    let (a, s) = chart_factors(max_order)?;
    // 1/(ln alpha - s) = -1/x about x0 = -ln alpha
    let x0 = -ln_alpha;
    let minus_inv = TruncatedSeries::from_fn(Complex64::new(x0, 0.0), max_order, |k| {
        let sign = if k % 2 == 0 { -1.0 } else { 1.0 };
        Complex64::new(sign / x0.powi(k as i32 + 1), 0.0)
    });
    let x = s.add_constant(Complex64::new(x0, 0.0));
    let b = TruncatedSeries::compose(&minus_inv, &x)?;
    Ok(a.multiply(&b)?.scale(prefactor()))
}

/// Coefficients of `g_reg(alpha, r)`; defined for every `alpha > 0`.
pub fn greg_coefficients(alpha: f64, max_order: usize) -> Result<TruncatedSeries> {
    check_alpha(alpha)?;
    let x0 = -alpha.ln();
    let (a, s) = chart_factors(max_order)?;
    let q = q_series(x0, max_order);
    let x = s.add_constant(Complex64::new(x0, 0.0));
    let b = TruncatedSeries::compose(&q, &x)?;
    Ok(a.multiply(&b)?.scale(prefactor()))
}

/// The published closed forms of the order-0 and order-2 coefficients.
pub mod closed_form {
    use super::*;

    pub fn g0(alpha: f64) -> Complex64 {
        Complex64::new(1.0 / (PI * alpha.ln()), 0.0)
    }

    pub fn g1(alpha: f64) -> Complex64 {
        let l = alpha.ln();
        -cis(0.75 * PI) * (l - 3.0) / (3.0 * PI * l * l)
    }

    pub fn g2(alpha: f64) -> Complex64 {
        let l = alpha.ln();
        Complex64::new(0.0, -(12.0 - 6.0 * l + l * l) / (12.0 * PI * l.powi(3)))
    }

    pub fn greg0(alpha: f64) -> Complex64 {
        let l = alpha.ln();
        Complex64::new((alpha - 1.0 - l) / (PI * (alpha - 1.0) * l), 0.0)
    }

    pub fn greg1(alpha: f64) -> Complex64 {
        let l = alpha.ln();
        let d = alpha - 1.0;
        cis(0.75 * PI) * ((3.0 - l) / (l * l) - (2.0 * alpha + 1.0) / (d * d)) / (3.0 * PI)
    }

    pub fn greg2(alpha: f64) -> Complex64 {
        let l = alpha.ln();
        let d = alpha - 1.0;
        let bracket = (1.0 + 10.0 * alpha + alpha * alpha) / d.powi(3) - (12.0 - 6.0 * l + l * l) / l.powi(3);
        Complex64::new(0.0, bracket / (12.0 * PI))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::E;

    fn rel(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / b.norm()
    }

    #[test]
    fn g_at_e() {
        let g = g_coefficients(E, 4).unwrap();
        assert!(rel(g.coeff(0), Complex64::new(1.0 / PI, 0.0)) < 1e-14);
        assert!(rel(g.coeff(2), Complex64::new(0.0, -7.0 / (12.0 * PI))) < 1e-13);
    }

    #[test]
    fn closed_forms_agree() {
        for &alpha in &[0.5, 2.0, E, 5.0] {
            let g = g_coefficients(alpha, 4).unwrap();
            let gr = greg_coefficients(alpha, 4).unwrap();
            assert!(rel(g.coeff(0), closed_form::g0(alpha)) < 1e-12);
            assert!(rel(g.coeff(1), closed_form::g1(alpha)) < 1e-12);
            assert!(rel(g.coeff(2), closed_form::g2(alpha)) < 1e-12);
            assert!(rel(gr.coeff(0), closed_form::greg0(alpha)) < 1e-12);
            assert!(rel(gr.coeff(1), closed_form::greg1(alpha)) < 1e-11);
            assert!(rel(gr.coeff(2), closed_form::greg2(alpha)) < 1e-11);
        }
    }

    #[test]
    fn alpha_one_is_a_collision_for_g_only() {
        assert!(matches!(g_coefficients(1.0, 4), Err(Error::PoleCollision)));
        let gr = greg_coefficients(1.0, 4).unwrap();
        assert!((gr.coeff(0) - Complex64::new(0.5 / PI, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn q_branches_agree_at_the_switch() {
        for &x0 in &[1.49, 1.51, -1.49, -1.51] {
            let center = Complex64::new(x0, 0.0);
            let maclaurin = q_maclaurin(Q_MACLAURIN_ORDER).recenter(center).truncated(6);
            let other = q_series(x0, 6);
            for k in 0..=6 {
                let rel = (maclaurin.coeff(k) - other.coeff(k)).norm() / maclaurin.coeff(k).norm();
                assert!(rel < 1e-10, "x0 {x0} k {k}: {rel:e}");
            }
        }
    }

    #[test]
    fn q_values_match_definition() {
        for &x0 in &[-2.3, -1.0, -0.3, 0.7, 1.6] {
            let q = q_series(x0, 3).coeff(0).re;
            let exact = 1.0 / (1.0 - f64::exp(-x0)) - 1.0 / x0;
            assert!((q - exact).abs() < 1e-12, "x0 {x0}");
        }
    }

    #[test]
    fn q_maclaurin_known_terms() {
        let q = q_maclaurin(10);
        assert!((q.coeff(0).re - 0.5).abs() < 1e-16);
        assert!((q.coeff(1).re - 1.0 / 12.0).abs() < 1e-16);
        assert!(q.coeff(2).norm() < 1e-17);
        assert!((q.coeff(3).re + 1.0 / 720.0).abs() < 1e-17);
    }
}
