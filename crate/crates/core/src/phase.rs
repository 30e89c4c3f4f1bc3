//! The amplitude `f(alpha, w)` and phase `S(alpha, w)` of the integrand
//! `f e^{lambda S}`.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

/// Per-alpha constants of the integrand.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseData {
    pub alpha: f64,
    pub ln_alpha: f64,
    /// `S(alpha, -i) = -i (1 + ln alpha)`
    pub s_at_saddle: Complex64,
    /// Simple pole of `f` at `-i alpha`, residue `i/pi`.
    pub pole_location: Complex64,
}

impl PhaseData {
    pub fn new(alpha: f64) -> Self {
        let ln_alpha = alpha.ln();
        Self {
            alpha,
            ln_alpha,
            s_at_saddle: Complex64::new(0.0, -(1.0 + ln_alpha)),
            pole_location: Complex64::new(0.0, -alpha),
        }
    }

    pub fn pole_residue(&self) -> Complex64 {
        Complex64::new(0.0, 1.0 / PI)
    }

    /// `S(alpha, w) = w - pi/2 + i ln(w/alpha)`, principal logarithm.
    pub fn phase(&self, w: Complex64) -> Complex64 {
        let ln_w = Complex64::new(w.norm().ln() - self.ln_alpha, w.arg());
        w - FRAC_PI_2 + Complex64::i() * ln_w
    }

    /// `f(alpha, w) = 1 / (pi w (pi/2 - i ln(w/alpha)))`.
    pub fn amplitude(&self, w: Complex64) -> Complex64 {
        // pi/2 - i ln(w/alpha) = (pi/2 + arg w) - i ln|w/alpha|
        let inner = Complex64::new(FRAC_PI_2 + w.arg(), -(w.norm().ln() - self.ln_alpha));
        1.0 / (PI * w * inner)
    }

    /// `f(alpha, w) e^{lambda S(alpha, w)}` with the real and imaginary parts of
    /// the exponent formed separately.
    pub fn integrand(&self, lambda: f64, w: Complex64) -> Complex64 {
        let arg = w.arg();
        let ln_abs = w.norm().ln() - self.ln_alpha;
        let re_s = w.re - FRAC_PI_2 - arg;
        let im_s = w.im + ln_abs;
        let inner = Complex64::new(FRAC_PI_2 + arg, -ln_abs);
        Complex64::from_polar((lambda * re_s).exp(), lambda * im_s) / (PI * w * inner)
    }
}

/// `Re S(alpha, w) = Re w - pi/2 - arg w`, the same for every alpha.
pub fn real_phase(w: Complex64) -> f64 {
    w.re - FRAC_PI_2 - w.arg()
}
