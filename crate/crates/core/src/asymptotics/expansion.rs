//! Large-`lambda` expansions of `L(alpha, lambda)`.

use std::f64::consts::FRAC_PI_4;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::coefficients::{g_coefficients, greg_coefficients};
use super::pole::{k_integral, saddle_phase};
use crate::error::{Error, Result};
use crate::series::TruncatedSeries;
use crate::special::{cis, HalfIntegerGamma};

/// Tolerance used for `K` when the caller does not give one.
pub const DEFAULT_K_TOL: f64 = 1e-13;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticResult {
    pub value: Complex64,
    pub n: u32,
    /// Summand `j = 0 ..= N/2` of the expansion.
    pub terms: Vec<Complex64>,
    /// `K(alpha, lambda)` for the regularized expansion.
    pub k_correction: Option<Complex64>,
    /// `lambda^{-(N+2)/2}`
    pub remainder_scale: f64,
}

impl AsymptoticResult {
    /// Sum of the recorded terms, in order.
    pub fn terms_sum(&self) -> Complex64 {
        self.terms.iter().sum()
    }
}

fn check(alpha: f64, lambda: f64, n: u32) -> Result<()> {
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(Error::InvalidArgument(format!("alpha must be positive, got {alpha}")));
    }
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::InvalidArgument(format!("lambda must be positive, got {lambda}")));
    }
    if n < 1 {
        return Err(Error::InvalidArgument("N must be at least 1".into()));
    }
    Ok(())
}

/// `e^{i pi/4} e^{-i lambda (1 + ln alpha)} c_{2j} Gamma(j + 1/2) (2/lambda)^{j + 1/2}`, `j = 0..=N/2`,
/// where `c_k` are the Taylor coefficients of the amplitude.
fn expansion_terms(coeffs: &TruncatedSeries, alpha: f64, lambda: f64, n: u32) -> Vec<Complex64> {
    let front = cis(FRAC_PI_4) * saddle_phase(alpha, lambda);
    let mut gamma = HalfIntegerGamma::new(0);
    let ratio = 2.0 / lambda;
    let mut power = ratio.sqrt();
    let mut terms = Vec::new();
    for j in 0..=(n / 2) {
        if j > 0 {
            gamma = gamma.next();
            power *= ratio;
        }
        terms.push(front * coeffs.coeff(2 * j as usize) * (gamma.value * power));
    }
    terms
}

fn max_order(n: u32) -> usize {
    2 * (n / 2) as usize
}

/// Uniform expansion: regularized amplitude plus the pole integral `K`.
pub fn l_asymptotic_regularized(alpha: f64, lambda: f64, n: u32) -> Result<AsymptoticResult> {
    l_asymptotic_regularized_with_tol(alpha, lambda, n, DEFAULT_K_TOL)
}

pub fn l_asymptotic_regularized_with_tol(alpha: f64, lambda: f64, n: u32, k_tol: f64) -> Result<AsymptoticResult> {
    check(alpha, lambda, n)?;
    let k = k_integral(alpha, lambda, k_tol)?;
    regularized_with_k(alpha, lambda, n, k)
}

/// Regularized expansion with a precomputed `K`.
pub fn regularized_with_k(alpha: f64, lambda: f64, n: u32, k: Complex64) -> Result<AsymptoticResult> {
    check(alpha, lambda, n)?;
    let coeffs = greg_coefficients(alpha, max_order(n))?;
    let terms = expansion_terms(&coeffs, alpha, lambda, n);
    let sum: Complex64 = terms.iter().sum();
    Ok(AsymptoticResult {
        value: sum + k,
        n,
        terms,
        k_correction: Some(k),
        remainder_scale: lambda.powf(-0.5 * (n as f64 + 2.0)),
    })
}

/// Expansion with the plain amplitude; not uniform as `alpha -> 1`.
pub fn l_asymptotic_plain(alpha: f64, lambda: f64, n: u32) -> Result<AsymptoticResult> {
    check(alpha, lambda, n)?;
    let coeffs = g_coefficients(alpha, max_order(n))?;
    let terms = expansion_terms(&coeffs, alpha, lambda, n);
    let value: Complex64 = terms.iter().sum();
    Ok(AsymptoticResult {
        value,
        n,
        terms,
        k_correction: None,
        remainder_scale: lambda.powf(-0.5 * (n as f64 + 2.0)),
    })
}

/// The `N = 3` expansions written out term by term, independent of the
/// series machinery. Each returns the two terms of the brace times the
/// common prefactor; `K` is not included.
pub mod closed_form {
    use super::*;

    const SQRT_PI: f64 = 1.772_453_850_905_516;

    pub fn regularized_n3(alpha: f64, lambda: f64) -> [Complex64; 2] {
        let l = alpha.ln();
        let d = alpha - 1.0;
        let front = cis(FRAC_PI_4) * saddle_phase(alpha, lambda);
        let first = (d - l) / (SQRT_PI * d * l) * (2.0 / lambda).sqrt();
        let bracket = (1.0 + 10.0 * alpha + alpha * alpha) / d.powi(3) - (12.0 - 6.0 * l + l * l) / l.powi(3);
        let second = Complex64::new(0.0, bracket / (24.0 * SQRT_PI)) * (2.0 / lambda).powf(1.5);
        [front * first, front * second]
    }

    pub fn plain_n3(alpha: f64, lambda: f64) -> [Complex64; 2] {
        let l = alpha.ln();
        let front = cis(FRAC_PI_4) * saddle_phase(alpha, lambda);
        let first = 1.0 / (SQRT_PI * l) * (2.0 / lambda).sqrt();
        let second = Complex64::new(0.0, -(12.0 - 6.0 * l + l * l) / (24.0 * SQRT_PI * l.powi(3))) * (2.0 / lambda).powf(1.5);
        [front * first, front * second]
    }

    /// Leading coefficient `(alpha - 1 - ln alpha)/((alpha - 1) ln alpha)` and its
    /// limit `1/2` at `alpha = 1`.
    pub fn leading_regularized_ratio(alpha: f64) -> f64 {
        if alpha == 1.0 {
            0.5
        } else {
            (alpha - 1.0 - alpha.ln()) / ((alpha - 1.0) * alpha.ln())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::E;

    #[test]
    fn n3_matches_closed_forms() {
        for &alpha in &[0.5, 2.0, E, 5.0] {
            for &lambda in &[20.0, 50.0] {
                let plain = l_asymptotic_plain(alpha, lambda, 3).unwrap();
                let cf = closed_form::plain_n3(alpha, lambda);
                for j in 0..2 {
                    assert!((plain.terms[j] - cf[j]).norm() <= 1e-12 * cf[j].norm());
                }
                let reg = regularized_with_k(alpha, lambda, 3, Complex64::new(0.0, 0.0)).unwrap();
                let cf = closed_form::regularized_n3(alpha, lambda);
                for j in 0..2 {
                    assert!((reg.terms[j] - cf[j]).norm() <= 1e-11 * cf[j].norm(), "alpha {alpha} j {j}");
                }
            }
        }
    }

    #[test]
    fn n1_keeps_one_term() {
        let r = regularized_with_k(5.0, 50.0, 1, Complex64::new(0.1, 0.2)).unwrap();
        assert_eq!(r.terms.len(), 1);
        assert_eq!(r.value, r.terms[0] + Complex64::new(0.1, 0.2));
    }

    #[test]
    fn plain_rejects_alpha_one() {
        assert!(matches!(l_asymptotic_plain(1.0, 50.0, 3), Err(Error::PoleCollision)));
    }

    #[test]
    fn bookkeeping_is_exact() {
        let r = l_asymptotic_regularized(2.0, 30.0, 5).unwrap();
        assert_eq!(r.value, r.terms_sum() + r.k_correction.unwrap());
        assert_eq!(r.terms.len(), 3);
    }
}
