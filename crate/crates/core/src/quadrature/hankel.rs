//! Hankel-contour integrals: the gamma function, the finite-contour sum
//! identity, and the oscillatory integral `L(alpha, lambda)`.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use num_complex::Complex64;

use super::path::{ComplexPath, PathPiece};
use super::{integrate_path, QuadratureResult};
use crate::error::{Error, Result};
use crate::phase::PhaseData;
use crate::special::cis;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Hankel contour around the negative axis: in along `arg = -pi` from
/// `-(radius + truncation)`, counterclockwise around the circle of `radius`,
/// out along `arg = +pi`.
pub fn hankel_contour(radius: f64, truncation: f64, tail_bound_each: f64) -> Result<ComplexPath> {
    ComplexPath::new(vec![
        PathPiece::incoming_ray(c(-radius, -0.0), c(-1.0, -0.0), truncation, tail_bound_each),
        PathPiece::arc(c(0.0, 0.0), radius, -PI, PI),
        PathPiece::outgoing_ray(c(-radius, 0.0), c(-1.0, 0.0), truncation, tail_bound_each),
    ])
}

/// `Gamma(s)` through `(e^{i pi s} - e^{-i pi s})^{-1} int_{H} e^z z^{s-1} dz`
/// with a unit-radius contour.
pub fn hankel_gamma(s: Complex64, tol: f64) -> Result<Complex64> {
    hankel_gamma_with_radius(s, tol, 1.0)
}

pub fn hankel_gamma_with_radius(s: Complex64, tol: f64, radius: f64) -> Result<Complex64> {
    let nearest = s.re.round();
    if (s - nearest).norm() < 1e-8 {
        return Err(Error::NearSingularPrefactor(s));
    }
    let ipi_s = Complex64::i() * PI * s;
    let denom = ipi_s.exp() - (-ipi_s).exp();
    let scale = denom.norm();
    let target = tol * scale;

    // |e^z z^{s-1}| on either ray is e^{-rho} rho^{sigma-1} e^{pi |tau|};
    // the tail from R on is at most twice its value at R once R > 2(sigma - 1)
    let sigma = s.re;
    let growth = (PI * s.im.abs()).exp();
    let tail_at = |r: f64| 2.0 * growth * (-r).exp() * r.powf(sigma - 1.0);
    let mut end = radius + 1.0;
    while end <= 2.0 * (sigma - 1.0) || tail_at(end) > 0.01 * target {
        end += 1.0;
    }
    let path = hankel_contour(radius, end - radius, tail_at(end))?;
    let sm1 = s - 1.0;
    let res = integrate_path(|z| (z + sm1 * z.ln()).exp(), &path, 0.5 * target)?;
    Ok(res.value / denom)
}

/// Partial sum of `sum_k (-i)^k / (k! (k + i x))` and the contour
/// expression `(e^{-pi x} - e^{pi x})^{-1} int e^{iz} z^{ix-1} dz` over the
/// unit circle from `e^{-i pi}` to `e^{i pi}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SumIdentity {
    pub lhs: Complex64,
    pub rhs: Complex64,
    /// The same contour integral taken over a square with the same endpoints.
    pub rhs_square: Complex64,
}

pub fn hankel_sum_identity(x: f64, tol: f64, k_max: usize) -> Result<SumIdentity> {
    if x == 0.0 {
        return Err(Error::PoleAtOrigin);
    }
    let mut lhs = Complex64::new(0.0, 0.0);
    let mut power = c(1.0, 0.0);
    let mut fact = 1.0;
    for k in 0..=k_max {
        if k > 0 {
            power *= c(0.0, -1.0);
            fact *= k as f64;
        }
        lhs += power / (fact * c(k as f64, x));
    }

    let prefactor = 1.0 / ((-PI * x).exp() - (PI * x).exp());
    let target = tol / prefactor.abs();
    let exponent = c(-1.0, x);
    let integrand = |z: Complex64| (Complex64::i() * z + exponent * z.ln()).exp();

    let arc = ComplexPath::new(vec![PathPiece::arc(c(0.0, 0.0), 1.0, -PI, PI)])?;
    let rhs = integrate_path(integrand, &arc, target)?.value * prefactor;

    let square = ComplexPath::new(vec![
        PathPiece::line(c(-1.0, -0.0), c(-1.0, -1.0)),
        PathPiece::line(c(-1.0, -1.0), c(1.0, -1.0)),
        PathPiece::line(c(1.0, -1.0), c(1.0, 1.0)),
        PathPiece::line(c(1.0, 1.0), c(-1.0, 1.0)),
        PathPiece::line(c(-1.0, 1.0), c(-1.0, 0.0)),
    ])?;
    let rhs_square = integrate_path(integrand, &square, target)?.value * prefactor;
    Ok(SumIdentity { lhs, rhs, rhs_square })
}

/// Half-length of the chord through the saddle.
pub const CHORD_HALF_LENGTH: f64 = 0.25;
/// Below this `|alpha - 1|` the chord is replaced by a semicircular detour.
pub const DETOUR_THRESHOLD: f64 = 0.05;
pub const DETOUR_RADIUS: f64 = 0.1;

/// Which way the path passes the saddle `-i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SaddleCrossing {
    Chord,
    /// Semicircle around `-i` bulging toward the origin.
    DetourAbove,
    /// Semicircle around `-i` bulging away from the origin.
    DetourBelow,
}

/// Truncation length of a tail ray and the bound on the discarded part.
///
/// Along the ray `|f e^{lambda S}| <= amp * e^{lambda (x + shift)}`, where `x`
/// is the real part of the point and `x0` that of the ray origin.
fn ray_truncation(amp: f64, shift: f64, x0: f64, lambda: f64, cutoff: f64) -> (f64, f64) {
    // amp e^{lambda (X + shift)} = cutoff
    let x_end = (cutoff / amp).ln() / lambda - shift;
    let truncation = (x0 - x_end).max(1.0);
    let x_end = x0 - truncation;
    let tail = amp * (lambda * (x_end + shift)).exp() / lambda;
    (truncation, tail)
}

/// The deformed contour: `-inf - 2i -> -1 - 2i -> -i -> 1 -> i -> -inf + i`,
/// straight through the saddle along `e^{i pi/4}`, with certified tail
/// truncations for the given `lambda` and tolerance.
pub fn deformed_contour(lambda: f64, tol: f64, crossing: SaddleCrossing) -> Result<ComplexPath> {
    let saddle = c(0.0, -1.0);
    let lower_corner = c(-1.0, -2.0);
    let upper_corner = c(0.0, 1.0);
    let diag = cis(FRAC_PI_4);

    let mut middle = Vec::new();
    match crossing {
        SaddleCrossing::Chord => {
            let a = saddle - diag * CHORD_HALF_LENGTH;
            let b = saddle + diag * CHORD_HALF_LENGTH;
            middle.push(PathPiece::line(lower_corner, a));
            middle.push(PathPiece::line(a, b));
            middle.push(PathPiece::line(b, c(1.0, 0.0)));
        }
        SaddleCrossing::DetourAbove | SaddleCrossing::DetourBelow => {
            let a = saddle - diag * DETOUR_RADIUS;
            let b = saddle + diag * DETOUR_RADIUS;
            let (t0, t1) = if crossing == SaddleCrossing::DetourAbove {
                (1.25 * PI, FRAC_PI_4)
            } else {
                (-0.75 * PI, FRAC_PI_4)
            };
            middle.push(PathPiece::line(lower_corner, a));
            middle.push(PathPiece::arc(saddle, DETOUR_RADIUS, t0, t1));
            middle.push(PathPiece::line(b, c(1.0, 0.0)));
        }
    }
    middle.push(PathPiece::line(c(1.0, 0.0), upper_corner));
    let finite_length: f64 = middle.iter().map(PathPiece::length).sum();
    let cutoff = tol / (100.0 * finite_length);

    // lower ray w = x - 2i: |w| >= sqrt 5, |pi/2 + arg w| >= pi/2 + arg(-1-2i)
    let lower_amp = 1.0 / (PI * 5f64.sqrt() * (FRAC_PI_2 + lower_corner.arg()).abs());
    let (lower_len, lower_tail) = ray_truncation(lower_amp, FRAC_PI_2, -1.0, lambda, cutoff);
    // upper ray w = x + i: |w| >= 1, |pi/2 + arg w| >= pi, Re S <= x - pi
    let upper_amp = 1.0 / (PI * PI);
    let (upper_len, upper_tail) = ray_truncation(upper_amp, -PI, 0.0, lambda, cutoff);

    let mut pieces = vec![PathPiece::incoming_ray(lower_corner, c(-1.0, 0.0), lower_len, lower_tail)];
    pieces.extend(middle);
    pieces.push(PathPiece::outgoing_ray(upper_corner, c(-1.0, 0.0), upper_len, upper_tail));
    ComplexPath::new(pieces)
}

/// `L(alpha, lambda) = int f(alpha, w) e^{lambda S(alpha, w)} dw` over the
/// deformed contour.
///
/// The pole of `f` at `-i alpha` sits next to the saddle when alpha is near 1;
/// there the path detours around `-i` on the side away from the pole. At
/// `alpha = 1` the pole lies on the contour and the principal value (the mean
/// of both detours) is returned.
pub fn reference_l(alpha: f64, lambda: f64, tol: f64) -> Result<QuadratureResult> {
    check_parameters(alpha, lambda, tol)?;
    let phase = PhaseData::new(alpha);
    let integrand = |w: Complex64| phase.integrand(lambda, w);
    let delta = alpha - 1.0;
    if delta == 0.0 {
        let above = integrate_path(integrand, &deformed_contour(lambda, tol, SaddleCrossing::DetourAbove)?, 0.5 * tol)?;
        let below = integrate_path(integrand, &deformed_contour(lambda, tol, SaddleCrossing::DetourBelow)?, 0.5 * tol)?;
        return Ok(QuadratureResult {
            value: 0.5 * (above.value + below.value),
            abs_error_estimate: 0.5 * (above.abs_error_estimate + below.abs_error_estimate),
            tail_bound: 0.5 * (above.tail_bound + below.tail_bound),
            evaluations: above.evaluations + below.evaluations,
            roundoff_limited: above.roundoff_limited || below.roundoff_limited,
        });
    }
    let crossing = if delta.abs() >= DETOUR_THRESHOLD {
        SaddleCrossing::Chord
    } else if delta > 0.0 {
        SaddleCrossing::DetourAbove
    } else {
        SaddleCrossing::DetourBelow
    };
    let path = deformed_contour(lambda, tol, crossing)?;
    integrate_path(integrand, &path, tol)
}

/// The same integral over the undeformed unit-radius Hankel contour. Only
/// usable for moderate `lambda`: near `w = -1` the integrand reaches
/// `e^{(pi/2 - 1) lambda}` and the final value is cancellation-limited.
pub fn reference_l_hankel(alpha: f64, lambda: f64, tol: f64) -> Result<QuadratureResult> {
    check_parameters(alpha, lambda, tol)?;
    if alpha == 1.0 {
        return Err(Error::PoleOnContour);
    }
    let phase = PhaseData::new(alpha);
    // w = -rho on the rays: Re S = -rho - pi/2 -+ (-pi), |f| <= 1/(pi rho pi/2)
    let amp = 2.0 / (PI * PI);
    let cutoff = tol / 1000.0;
    let mut end = 2.0;
    while amp * (lambda * (-end + FRAC_PI_2)).exp() / lambda > cutoff {
        end += 1.0;
    }
    let tail = amp * (lambda * (-end + FRAC_PI_2)).exp() / lambda;
    let path = hankel_contour(1.0, end - 1.0, tail)?;
    integrate_path(|w| phase.integrand(lambda, w), &path, tol)
}

fn check_parameters(alpha: f64, lambda: f64, tol: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(Error::InvalidArgument(format!("alpha must be positive, got {alpha}")));
    }
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::InvalidArgument(format!("lambda must be positive, got {lambda}")));
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!("tolerance must be positive, got {tol}")));
    }
    Ok(())
}
