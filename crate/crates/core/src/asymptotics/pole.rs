//! The pole-correction integrals `K`, `K_0` and the normalized Cauchy
//! integral `K_hat_0`.

use std::f64::consts::{FRAC_PI_4, PI, SQRT_2};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quadrature::{integrate_real_line, QuadratureOptions, QuadratureResult};
use crate::saddle::{default_chart, expm1_complex, SaddleChart};
use crate::special::{cis, faddeeva, gaussian_cauchy};

const SQRT_PI: f64 = 1.772_453_850_905_516;

/// The real-line integral for `K` is cut here, short of the branch point
/// `r = sqrt(4 pi)` of the continued map `w(r)`.
pub const K_TRUNCATION_CAP: f64 = 3.4;

/// `e^{lambda S(alpha, -i)} = e^{-i lambda (1 + ln alpha)}`
pub fn saddle_phase(alpha: f64, lambda: f64) -> Complex64 {
    cis(-lambda * (1.0 + alpha.ln()))
}

/// `alpha - 1 - ln alpha`, accurate for alpha near 1.
pub fn pole_depth(alpha: f64) -> f64 {
    let d = alpha - 1.0;
    if d.abs() < 0.1 {
        // sum_{k >= 2} (-d)^k / k
        let mut term = d * d;
        let mut sum = 0.0;
        for k in 2..60 {
            let next = term / k as f64;
            sum += next;
            if next.abs() <= 1e-18 * sum.abs() {
                break;
            }
            term *= -d;
        }
        sum
    } else {
        d - alpha.ln()
    }
}

/// Location of the pole of `w r/((w + i alpha)(w + i))` as a function of real
/// `r` continued into the complex plane; the residue there is `-1`.
pub fn pole_in_r(alpha: f64) -> Complex64 {
    let d = alpha - 1.0;
    if d == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    -d.signum() * (2.0 * pole_depth(alpha)).sqrt() * cis(FRAC_PI_4)
}

/// Default radius for the truncated real-line integral in `K`.
pub fn k_truncation(lambda: f64, tol: f64) -> f64 {
    ((2.0 * (1.0 / tol).ln() / lambda).sqrt() + 2.0).min(K_TRUNCATION_CAP)
}

/// `K` together with the quadrature record of its smooth part.
#[derive(Debug, Clone, PartialEq)]
pub struct KIntegral {
    pub value: Complex64,
    pub truncation: f64,
    pub quadrature: QuadratureResult,
}

/// `K(alpha, lambda) = -(i e^{lambda S(alpha,-i)}/pi) int e^{-lambda r^2/2} w r/((w + i alpha)(w + i)) dr`.
///
/// The pole of the integrand at `r_p` (complex, or `0` when `alpha = 1`) is
/// subtracted and integrated in closed form through the Faddeeva function;
/// the smooth remainder is integrated numerically. At `alpha = 1` the pole
/// is on the real line and the principal value is taken.
pub fn k_integral(alpha: f64, lambda: f64, tol: f64) -> Result<Complex64> {
    Ok(k_integral_detailed(alpha, lambda, tol, None)?.value)
}

pub fn k_integral_detailed(alpha: f64, lambda: f64, tol: f64, truncation: Option<f64>) -> Result<KIntegral> {
    if !(alpha > 0.0 && alpha.is_finite() && lambda > 0.0 && lambda.is_finite() && tol > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "K needs alpha > 0, lambda > 0, tol > 0 (got {alpha}, {lambda}, {tol})"
        )));
    }
    let big_r = truncation.unwrap_or_else(|| k_truncation(lambda, tol));
    if big_r > K_TRUNCATION_CAP {
        return Err(Error::InvalidArgument(format!(
            "truncation {big_r} passes the branch point of w(r) at sqrt(4 pi)"
        )));
    }
    let envelope = (-0.5 * lambda * big_r * big_r).exp();
    if envelope > tol {
        return Err(Error::InvalidArgument(format!(
            "lambda = {lambda} is too small: the Gaussian at r = {big_r} is {envelope:e} > {tol:e}"
        )));
    }
    let chart = default_chart();
    let d = alpha - 1.0;
    let rp = pole_in_r(alpha);
    let smooth = |r: f64| -> Complex64 {
        let weight = (-0.5 * lambda * r * r).exp();
        if weight == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        weight * regular_part(chart, r, d, rp)
    };

    let opts = QuadratureOptions::with_tol(0.25 * tol);
    let mut cuts = vec![-big_r, 0.0, big_r];
    if rp.re != 0.0 && rp.re.abs() < big_r {
        cuts.push(rp.re);
    }
    cuts.sort_by(f64::total_cmp);
    let mut total: Option<QuadratureResult> = None;
    for w in cuts.windows(2) {
        let part = integrate_real_line(smooth, w[0], w[1], opts)?;
        total = Some(match total {
            None => part,
            Some(acc) => QuadratureResult {
                value: acc.value + part.value,
                abs_error_estimate: acc.abs_error_estimate + part.abs_error_estimate,
                tail_bound: acc.tail_bound + part.tail_bound,
                evaluations: acc.evaluations + part.evaluations,
                roundoff_limited: acc.roundoff_limited || part.roundoff_limited,
            },
        });
    }
    let mut quadrature = total.expect("at least one interval");
    // tails beyond R: |h + 1/(r - r_p)| is at most a few units there
    quadrature.tail_bound += 4.0 * envelope / (lambda * big_r);

    // int e^{-lambda r^2/2}/(r - r_p) dr = int e^{-t^2}/(t - u) dt, u = r_p sqrt(lambda/2)
    let u = rp * (0.5 * lambda).sqrt();
    let cauchy = gaussian_cauchy(u);
    let prefactor = -Complex64::i() * saddle_phase(alpha, lambda) / PI;
    Ok(KIntegral {
        value: prefactor * (quadrature.value - cauchy),
        truncation: big_r,
        quadrature,
    })
}

/// `h(r) + 1/(r - r_p)` with `h = w r/((w + i alpha)(w + i)) = i e^s r/((e^s - 1 - d)(e^s - 1))`.
fn regular_part(chart: &SaddleChart, r: f64, d: f64, rp: Complex64) -> Complex64 {
    let s = match chart.s_of_r(r) {
        Ok(s) => s,
        Err(_) => return Complex64::new(f64::NAN, f64::NAN),
    };
    let em1 = expm1_complex(s);
    let h = Complex64::i() * s.exp() * r / ((em1 - d) * em1);
    h + 1.0 / (r - rp)
}

/// Direct quadrature of the defining integral of `K` (pole not subtracted);
/// for cross-checks away from `alpha = 1`.
pub fn k_integral_direct(alpha: f64, lambda: f64, tol: f64) -> Result<Complex64> {
    if alpha == 1.0 {
        return Err(Error::PoleOnContour);
    }
    let chart = default_chart();
    let d = alpha - 1.0;
    let big_r = k_truncation(lambda, tol);
    let f = |r: f64| -> Complex64 {
        let s = match chart.s_of_r(r) {
            Ok(s) => s,
            Err(_) => return Complex64::new(f64::NAN, f64::NAN),
        };
        let em1 = expm1_complex(s);
        (-0.5 * lambda * r * r).exp() * Complex64::i() * s.exp() * r / ((em1 - d) * em1)
    };
    let opts = QuadratureOptions::with_tol(0.5 * tol);
    let a = integrate_real_line(f, -big_r, 0.0, opts)?;
    let b = integrate_real_line(f, 0.0, big_r, opts)?;
    Ok(-Complex64::i() * saddle_phase(alpha, lambda) / PI * (a.value + b.value))
}

/// Which side of the line `e^{i pi/4} R` the point `z` lies on.
fn side(z: Complex64) -> f64 {
    (cis(-FRAC_PI_4) * z).im
}

/// `K_hat_0(z) = -(e^{i pi/4}/(2 sqrt pi)) int e^{-zeta^2/2}/(zeta + sqrt2 e^{-i pi/4} z) d zeta`.
///
/// Evaluated through the identity `K_hat_0(z) = e^{i z^2} (B(z) - [upper] sqrt(pi) e^{-i pi/4})`
/// with `B` in its error-function form. The exponentials cancel analytically,
/// leaving `-(sqrt(pi)/2) e^{3 i pi/4} w(e^{3 i pi/4} z)` below the line and
/// `(sqrt(pi)/2) e^{3 i pi/4} w(-e^{3 i pi/4} z)` above it.
pub fn k_hat_0(z: Complex64) -> Result<Complex64> {
    let im = side(z);
    if im == 0.0 {
        return Err(Error::PrincipalValueBranch(z));
    }
    let rot = cis(0.75 * PI);
    let xi = rot * z;
    if im < 0.0 {
        Ok(-0.5 * SQRT_PI * rot * faddeeva(xi))
    } else {
        Ok(0.5 * SQRT_PI * rot * faddeeva(-xi))
    }
}

/// `K_hat_0` by adaptive quadrature of its defining integral.
pub fn k_hat_0_direct(z: Complex64, tol: f64) -> Result<Complex64> {
    if side(z) == 0.0 {
        return Err(Error::PrincipalValueBranch(z));
    }
    let pole = -SQRT_2 * cis(-FRAC_PI_4) * z;
    // beyond |zeta| = L the Gaussian is below tol
    let reach = (2.0 * (1.0 / tol).ln()).sqrt() + 1.0;
    let f = |zeta: f64| (-0.5 * zeta * zeta).exp() / (zeta - pole);
    let mut cuts = vec![-reach, reach];
    if pole.re.abs() < reach {
        cuts.push(pole.re);
    }
    cuts.sort_by(f64::total_cmp);
    let opts = QuadratureOptions {
        tol: 0.5 * tol,
        max_subdivisions: 50_000,
        max_depth: 60,
    };
    let mut sum = Complex64::new(0.0, 0.0);
    for w in cuts.windows(2) {
        sum += integrate_real_line(f, w[0], w[1], opts)?.value;
    }
    Ok(-cis(FRAC_PI_4) / (2.0 * SQRT_PI) * sum)
}

/// `K_0(alpha, lambda) = -(2 e^{i pi/4}/sqrt pi) e^{-i lambda (1 + ln alpha)} K_hat_0(i (alpha - 1) sqrt(lambda/2))`.
pub fn k0_leading(alpha: f64, lambda: f64) -> Result<Complex64> {
    if alpha == 1.0 {
        return Err(Error::PoleOnContour);
    }
    if !(alpha > 0.0 && lambda > 0.0) {
        return Err(Error::InvalidArgument(format!("K_0 needs alpha > 0, lambda > 0 (got {alpha}, {lambda})")));
    }
    let z = Complex64::new(0.0, (alpha - 1.0) * (0.5 * lambda).sqrt());
    Ok(-2.0 * cis(FRAC_PI_4) / SQRT_PI * saddle_phase(alpha, lambda) * k_hat_0(z)?)
}

/// `K_0` by adaptive quadrature of `(i e^{lambda S(alpha,-i)}/pi) int e^{-lambda r^2/2}/(r + (alpha - 1) e^{i pi/4}) dr`.
pub fn k0_direct(alpha: f64, lambda: f64, tol: f64) -> Result<Complex64> {
    if alpha == 1.0 {
        return Err(Error::PoleOnContour);
    }
    let pole = -(alpha - 1.0) * cis(FRAC_PI_4);
    let reach = (2.0 * (1.0 / tol).ln() / lambda).sqrt() + 0.5;
    let f = |r: f64| (-0.5 * lambda * r * r).exp() / (r - pole);
    let opts = QuadratureOptions::with_tol(0.5 * tol);
    let mut cuts = vec![-reach, reach];
    if pole.re.abs() < reach {
        cuts.push(pole.re);
    }
    cuts.sort_by(f64::total_cmp);
    let mut sum = Complex64::new(0.0, 0.0);
    for w in cuts.windows(2) {
        sum += integrate_real_line(f, w[0], w[1], opts)?.value;
    }
    Ok(Complex64::i() * saddle_phase(alpha, lambda) / PI * sum)
}
