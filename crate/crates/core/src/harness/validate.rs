//! The invariant battery: each check compares two independent routes to the
//! same quantity and reports the worst residual it saw.

use std::f64::consts::{E, FRAC_PI_4, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::HarnessError;
use crate::asymptotics::coefficients::closed_form;
use crate::asymptotics::{g_coefficients, greg_coefficients, k0_leading, k_hat_0, k_hat_0_direct, k_integral};
use crate::asymptotics::pole::k_integral_direct;
use crate::quadrature::hankel::{hankel_gamma, hankel_sum_identity};
use crate::saddle::w_of_r_series;
use crate::special::{bleistein_b, cis, gamma_lanczos};

/// Tolerance handed to the quadratures inside the checks; the check
/// threshold itself is the caller's.
const QUAD_TOL: f64 = 1e-13;
const SQRT_PI: f64 = 1.772_453_850_905_516;
/// Agreement below double-precision resolution cannot be certified, so
/// residuals are floored here.
const RESOLUTION: f64 = f64::EPSILON;
/// Above this, `lambda |alpha - 1| |K - K_0|` is no longer considered bounded.
pub const K_BOUND_LIMIT: f64 = 5.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub passed: bool,
    /// Worst residual over the check's sample points.
    pub residual: f64,
    pub threshold: f64,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub tol: f64,
    pub checks: Vec<CheckReport>,
}

impl ValidationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| !c.passed).count()
    }
}

type CheckFn = fn() -> crate::Result<(f64, String)>;

const CHECKS: [(&str, CheckFn); 8] = [
    ("gamma_identity", gamma_identity),
    ("sum_identity", sum_identity),
    ("chart_coefficients", chart_coefficients),
    ("closed_forms", closed_forms),
    ("bleistein_lemma_lower", || bleistein_lemma(false)),
    ("bleistein_lemma_upper", || bleistein_lemma(true)),
    ("plemelj_limit", plemelj_limit),
    ("k_vs_k0_bound", k_vs_k0_bound),
];

pub fn check_names() -> Vec<&'static str> {
    CHECKS.iter().map(|(n, _)| *n).collect()
}

/// Run every check, or only `only`, against threshold `tol`.
pub fn run_validate(tol: f64, only: Option<&str>) -> Result<ValidationReport, HarnessError> {
    if !(tol > 0.0) {
        return Err(HarnessError::Usage(format!("tol must be positive, got {tol}")));
    }
    let selected: Vec<_> = match only {
        None => CHECKS.iter().collect(),
        Some(name) => {
            let found: Vec<_> = CHECKS.iter().filter(|(n, _)| *n == name).collect();
            if found.is_empty() {
                return Err(HarnessError::Usage(format!(
                    "unknown check {name:?}; available: {}",
                    check_names().join(", ")
                )));
            }
            found
        }
    };
    let checks = selected
        .into_iter()
        .map(|(name, f)| match f() {
            Ok((measured, detail)) => {
                let residual = measured.max(RESOLUTION);
                CheckReport {
                    name: name.to_string(),
                    passed: residual <= tol,
                    residual,
                    threshold: tol,
                    detail,
                }
            }
            Err(e) => CheckReport {
                name: name.to_string(),
                passed: false,
                residual: f64::INFINITY,
                threshold: tol,
                detail: format!("error: {e}"),
            },
        })
        .collect();
    Ok(ValidationReport { tol, checks })
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm()
}

fn gamma_identity() -> crate::Result<(f64, String)> {
    let mut worst: f64 = 0.0;
    for s in [c(0.5, 0.0), c(2.5, 0.0), c(0.5, 1.0)] {
        worst = worst.max(rel(hankel_gamma(s, QUAD_TOL)?, gamma_lanczos(s)));
    }
    Ok((worst, "relative, s in {1/2, 5/2, 1/2 + i}".into()))
}

fn sum_identity() -> crate::Result<(f64, String)> {
    let mut worst: f64 = 0.0;
    for x in [1.0, -1.0, 10.0] {
        let id = hankel_sum_identity(x, QUAD_TOL, 60)?;
        worst = worst.max((id.lhs - id.rhs).norm());
    }
    Ok((worst, "absolute, x in {1, -1, 10}".into()))
}

/// First coefficients of `w(r)`.
pub fn chart_reference() -> [Complex64; 4] {
    [c(0.0, -1.0), cis(FRAC_PI_4), c(-1.0 / 3.0, 0.0), -cis(0.75 * PI) / 36.0]
}

fn chart_coefficients() -> crate::Result<(f64, String)> {
    let w = w_of_r_series(4)?;
    let worst = chart_reference()
        .iter()
        .enumerate()
        .map(|(k, &want)| (w.coeff(k) - want).norm())
        .fold(0.0, f64::max);
    Ok((worst, "absolute, orders 0..3".into()))
}

fn closed_forms() -> crate::Result<(f64, String)> {
    let mut worst: f64 = 0.0;
    for alpha in [0.5, 2.0, E, 5.0] {
        let g = g_coefficients(alpha, 2)?;
        let gr = greg_coefficients(alpha, 2)?;
        worst = worst
            .max(rel(g.coeff(0), closed_form::g0(alpha)))
            .max(rel(g.coeff(2), closed_form::g2(alpha)))
            .max(rel(gr.coeff(0), closed_form::greg0(alpha)))
            .max(rel(gr.coeff(2), closed_form::greg2(alpha)));
    }
    Ok((worst, "relative, orders 0 and 2, alpha in {0.5, 2, e, 5}".into()))
}

/// Deterministic, well spread points with `|z| <= 3` on one side of
/// `e^{i pi/4} R`, at least `0.1` away from it.
pub fn lemma_sample(count: usize, upper: bool) -> Vec<Complex64> {
    // additive recurrence with the plastic-number increments
    let (a1, a2) = (0.754_877_666_246_692_8, 0.569_840_290_998_053_3);
    let mut out = Vec::with_capacity(count);
    let mut k = 0u64;
    while out.len() < count {
        k += 1;
        let u = (0.5 + a1 * k as f64).fract();
        let v = (0.5 + a2 * k as f64).fract();
        let z = Complex64::from_polar(3.0 * u.sqrt(), 2.0 * PI * v);
        let side = (cis(-FRAC_PI_4) * z).im;
        if side.abs() >= 0.1 && (side > 0.0) == upper {
            out.push(z);
        }
    }
    out
}

/// `|B(z) - e^{-i z^2} K_hat_0(z) - [upper] sqrt(pi) e^{-i pi/4}|`, with `K_hat_0` by
/// quadrature, relative to `max(1, |B(z)|)`.
pub fn lemma_residual(z: Complex64, tol: f64) -> crate::Result<f64> {
    let jump = if (cis(-FRAC_PI_4) * z).im > 0.0 {
        SQRT_PI * cis(-FRAC_PI_4)
    } else {
        c(0.0, 0.0)
    };
    let b = bleistein_b(z);
    let k = k_hat_0_direct(z, tol)?;
    let lhs = b - (-Complex64::i() * z * z).exp() * k - jump;
    Ok(lhs.norm() / b.norm().max(1.0))
}

fn bleistein_lemma(upper: bool) -> crate::Result<(f64, String)> {
    let mut worst: f64 = 0.0;
    for z in lemma_sample(20, upper) {
        worst = worst.max(lemma_residual(z, QUAD_TOL)?);
    }
    Ok((worst, "20 points, |z| <= 3, relative to max(1, |B|)".into()))
}

fn plemelj_limit() -> crate::Result<(f64, String)> {
    let delta = 1e-12;
    let half_jump = 0.5 * SQRT_PI * cis(-FRAC_PI_4);
    let upper = k_hat_0(delta * cis(0.75 * PI))?;
    let lower = k_hat_0(-delta * cis(0.75 * PI))?;
    let worst = (upper + half_jump).norm().max((lower - half_jump).norm());
    Ok((worst, format!("delta = {delta:e}")))
}

/// `K` by pole subtraction against `K` by direct quadrature, plus the bound
/// on `lambda |alpha - 1| |K - K_0|`.
fn k_vs_k0_bound() -> crate::Result<(f64, String)> {
    let mut worst: f64 = 0.0;
    let mut constant: f64 = 0.0;
    for alpha in [1.5, 2.0, 5.0] {
        for lambda in [25.0, 50.0, 100.0] {
            let k = k_integral(alpha, lambda, QUAD_TOL)?;
            let k0 = k0_leading(alpha, lambda)?;
            constant = constant.max((k - k0).norm() * lambda * (alpha - 1.0).abs());
            if lambda == 50.0 {
                worst = worst.max((k - k_integral_direct(alpha, lambda, QUAD_TOL)?).norm());
            }
        }
    }
    let detail = format!("max lambda |alpha - 1| |K - K_0| = {constant:.4} (limit {K_BOUND_LIMIT})");
    if constant >= K_BOUND_LIMIT {
        // fails regardless of tol
        return Ok((f64::INFINITY, detail));
    }
    Ok((worst, detail))
}
