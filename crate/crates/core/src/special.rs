//! Complex error function family, the Bleistein integral and gamma values.
//!
//! The Faddeeva function `w(z) = exp(-z^2) erfc(-iz)` is the workhorse:
//! a Laplace continued fraction far from the origin and a pole-corrected
//! trapezoidal rule for `(i/pi) int exp(-t^2)/(z - t) dt` elsewhere. `erf`
//! switches to its Maclaurin series near the origin, where `1 - exp(-z^2) w(iz)`
//! would cancel.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use num_complex::Complex64;

const SQRT_PI: f64 = 1.772_453_850_905_516_f64;
const FRAC_2_SQRT_PI: f64 = std::f64::consts::FRAC_2_SQRT_PI;

/// Below this modulus `erf` is summed from its Maclaurin series.
pub const ERF_SERIES_RADIUS: f64 = 2.0;
/// At or beyond this modulus `w` uses the continued fraction.
pub const FADDEEVA_CF_RADIUS: f64 = 7.0;

const TRAPEZOID_STEP: f64 = 0.45;
const TRAPEZOID_REACH: f64 = 6.6;

fn i() -> Complex64 {
    Complex64::new(0.0, 1.0)
}

/// `e^(i theta)`
pub fn cis(theta: f64) -> Complex64 {
    Complex64::from_polar(1.0, theta)
}

/// The Faddeeva function `w(z) = exp(-z^2) erfc(-iz)`.
pub fn faddeeva(z: Complex64) -> Complex64 {
    if z.im < 0.0 {
        // w(z) = 2 exp(-z^2) - w(-z)
        return 2.0 * (-z * z).exp() - faddeeva(-z);
    }
    if z.norm() >= FADDEEVA_CF_RADIUS {
        faddeeva_continued_fraction(z)
    } else {
        faddeeva_trapezoid(z)
    }
}

/// Laplace continued fraction, valid for `Im z >= 0` and `|z|` large.
fn faddeeva_continued_fraction(z: Complex64) -> Complex64 {
    let rho = ((z.re / 6.3).powi(2) + (z.im / 4.4).powi(2)).sqrt();
    let terms = (3.0 + 1442.0 / (26.0 * rho + 77.0)).ceil() as usize + 12;
    let mut tail = Complex64::new(0.0, 0.0);
    for k in (1..=terms).rev() {
        tail = (0.5 * k as f64) / (z - tail);
    }
    i() / (SQRT_PI * (z - tail))
}

/// Trapezoidal rule for `(i/pi) int exp(-t^2)/(z - t) dt` with the residue
/// correction from the pole at `t = z`; `Im z >= 0`.
fn faddeeva_trapezoid(z: Complex64) -> Complex64 {
    let h = TRAPEZOID_STEP;
    // shift the nodes so that none sits within h/4 of Re z
    let frac = (z.re / h).rem_euclid(1.0);
    let shift = if (0.25..=0.75).contains(&frac) { 0.0 } else { 0.5 };
    let n_max = (TRAPEZOID_REACH / h).ceil() as i64 + 1;
    let mut sum = Complex64::new(0.0, 0.0);
    for n in -n_max..=n_max {
        let t = (n as f64 + shift) * h;
        sum += (-t * t).exp() / (z - t);
    }
    // 2 exp(-z^2) / (1 - exp(-2 pi i (z/h - shift))), written with the
    // decaying exponential so that neither factor overflows for Im z > 0
    let phase = 2.0 * PI * i() * (z / h - shift);
    let e = phase.exp();
    let correction = -2.0 * (-z * z + phase).exp() / (1.0 - e);
    i() * h / PI * sum + correction
}

/// `exp(-z^2) * w` without forming `exp(-z^2)` on its own.
fn scaled_by_gaussian(z: Complex64, w: Complex64) -> Complex64 {
    if w.norm() == 0.0 {
        return w;
    }
    let exponent = -z * z;
    if exponent.re.abs() < 600.0 {
        exponent.exp() * w
    } else {
        (exponent + w.ln()).exp()
    }
}

fn erf_maclaurin(z: Complex64) -> Complex64 {
    let z2 = -z * z;
    let mut power = z;
    let mut sum = z;
    for n in 1..200 {
        power *= z2 / n as f64;
        let term = power / (2 * n + 1) as f64;
        sum += term;
        if term.norm() <= 1e-17 * sum.norm() {
            break;
        }
    }
    sum * FRAC_2_SQRT_PI
}

/// The complex error function.
pub fn erf_complex(z: Complex64) -> Complex64 {
    if z.norm() < ERF_SERIES_RADIUS {
        return erf_maclaurin(z);
    }
    if z.re < 0.0 {
        return -erf_complex(-z);
    }
    1.0 - scaled_by_gaussian(z, faddeeva(i() * z))
}

/// The complementary error function `1 - erf(z)`, accurate where it is small.
pub fn erfc_complex(z: Complex64) -> Complex64 {
    if z.re < 0.0 {
        return 2.0 - erfc_complex(-z);
    }
    if z.norm() < 0.5 {
        return 1.0 - erf_maclaurin(z);
    }
    scaled_by_gaussian(z, faddeeva(i() * z))
}

/// `B(z) = int_z^{e^{-i pi/4} inf} exp(-i zeta^2) d zeta`,
/// evaluated as `(1/2) e^{3 i pi/4} sqrt(pi) (erf(e^{i pi/4} z) - 1)`.
pub fn bleistein_b(z: Complex64) -> Complex64 {
    -0.5 * SQRT_PI * cis(0.75 * PI) * erfc_complex(cis(0.25 * PI) * z)
}

/// Gaussian Cauchy transform `int_R exp(-t^2) / (t - u) dt`.
///
/// For real `u` the principal value is returned.
pub fn gaussian_cauchy(u: Complex64) -> Complex64 {
    let ipi = Complex64::new(0.0, PI);
    if u.im > 0.0 {
        ipi * faddeeva(u)
    } else if u.im < 0.0 {
        -ipi * faddeeva(-u)
    } else if u.re == 0.0 {
        Complex64::new(0.0, 0.0)
    } else {
        Complex64::new(-PI * faddeeva(u).im, 0.0)
    }
}

/// `Gamma(j + 1/2)` for a nonnegative integer `j`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfIntegerGamma {
    pub j: u32,
    pub value: f64,
}

impl HalfIntegerGamma {
    pub fn new(j: u32) -> Self {
        let value = (0..j).fold(SQRT_PI, |acc, k| acc * (k as f64 + 0.5));
        Self { j, value }
    }

    /// `Gamma(j + 3/2) = (j + 1/2) Gamma(j + 1/2)`
    pub fn next(self) -> Self {
        Self {
            j: self.j + 1,
            value: self.value * (self.j as f64 + 0.5),
        }
    }
}

pub fn half_integer_gamma(j: u32) -> f64 {
    HalfIntegerGamma::new(j).value
}

const LANCZOS_G: f64 = 7.0;
#[allow(clippy::excessive_precision)]
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Complex gamma function by the Lanczos approximation (g = 7, nine terms),
/// with reflection for `Re s < 1/2`. Independent of the Hankel-contour route.
pub fn gamma_lanczos(s: Complex64) -> Complex64 {
    if s.re < 0.5 {
        return PI / ((PI * s).sin() * gamma_lanczos(1.0 - s));
    }
    let z = s - 1.0;
    let mut x = Complex64::new(LANCZOS_COEFFS[0], 0.0);
    for (k, &c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        x += c / (z + k as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    (2.0 * PI).sqrt() * ((z + 0.5) * t.ln() - t).exp() * x
}

/// `e^{-i pi/4}`, the unit direction of the Bleistein ray.
pub fn ray_direction() -> Complex64 {
    Complex64::new(FRAC_1_SQRT_2, -FRAC_1_SQRT_2)
}
