//! Steepest-descent coordinate near the saddle `w = -i`.
//!
//! `r` is defined by `S(alpha, w) - S(alpha, -i) = -r^2/2` with
//! `dr/dw = e^{-i pi/4}` at the saddle. The difference of phases is free of
//! alpha. The exact map is solved in the variable `s = ln(i w)`, where
//! `w = -i e^s` and the defining equation becomes
//!
//! ```text
//! F(s) = e^s - 1 - s + i r^2/2 = 0,
//! ```
//!
//! an entire function of `s`. Following `s` continuously in `r` keeps track
//! of how many times `w(r)` has wound around the origin, which the principal
//! logarithm in `w` would lose.

use std::f64::consts::FRAC_PI_4;
use std::sync::OnceLock;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::series::TruncatedSeries;
use crate::special::cis;

pub const DEFAULT_CHART_ORDER: usize = 8;
pub const DEFAULT_RESIDUAL_TOL: f64 = 1e-13;
/// Upper end of the domain-radius search.
pub const MAX_DOMAIN_RADIUS: f64 = 3.0;
const PROBE_POINTS: usize = 64;
const NEWTON_MAX_ITER: usize = 60;

fn zero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

/// `e^s - 1 - s` without cancellation near `s = 0`.
pub fn exp_minus_one_minus_id(s: Complex64) -> Complex64 {
    if s.norm() < 0.2 {
        let mut term = s * s / 2.0;
        let mut sum = term;
        for k in 3..40 {
            term *= s / k as f64;
            sum += term;
            if term.norm() <= 1e-18 * sum.norm() {
                break;
            }
        }
        sum
    } else {
        s.exp() - 1.0 - s
    }
}

/// `e^s - 1` without cancellation near `s = 0`.
pub fn expm1_complex(s: Complex64) -> Complex64 {
    exp_minus_one_minus_id(s) + s
}

/// Series of `S(alpha, w) - S(alpha, -i) = v + i ln(1 + i v)` in `v = w + i`.
pub fn phase_difference_series(order: usize) -> TruncatedSeries {
    let i = Complex64::i();
    TruncatedSeries::from_fn(zero(), order, |k| {
        if k < 2 {
            zero()
        } else {
            let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
            i * sign * i.powu(k as u32) / k as f64
        }
    })
}

/// Series of `r(w)` in `v = w + i` to the given order.
pub fn r_of_w_series(order: usize) -> Result<TruncatedSeries> {
    // r^2 = -2 phi(v) = v^2 (-2 phi(v)/v^2); the principal square root of the
    // bracket starts at sqrt(-i) = e^{-i pi/4}, the required branch
    let phi = phase_difference_series(order + 1);
    let bracket = phi.deflate()?.deflate()?.scale(Complex64::new(-2.0, 0.0));
    let root = bracket.sqrt()?;
    let mut coeffs = vec![zero()];
    coeffs.extend_from_slice(root.coeffs());
    Ok(TruncatedSeries::new(zero(), coeffs))
}

/// Series of `w(r) = -i + e^{i pi/4} r - r^2/3 + ...` about `r = 0`.
pub fn w_of_r_series(order: usize) -> Result<TruncatedSeries> {
    let v = r_of_w_series(order)?.revert()?;
    Ok(v.add_constant(Complex64::new(0.0, -1.0)))
}

/// Series of `s(r) = ln(i w(r))` about `r = 0`.
pub fn s_of_r_series(order: usize) -> Result<TruncatedSeries> {
    let v = r_of_w_series(order)?.revert()?;
    // i w = 1 + i v
    let iw = v.scale(Complex64::i()).add_constant(Complex64::new(1.0, 0.0));
    let ln = TruncatedSeries::ln_about(Complex64::new(1.0, 0.0), order)?;
    TruncatedSeries::compose(&ln, &iw)
}

/// Newton solution of `F(s) = 0` from `seed`; returns `(s, |F(s)|, iterations)`.
fn newton(r: f64, seed: Complex64, tol: f64) -> Option<(Complex64, f64, usize)> {
    let target = Complex64::new(0.0, 0.5 * r * r);
    let mut s = seed;
    let mut best: Option<(Complex64, f64)> = None;
    for it in 0..NEWTON_MAX_ITER {
        let f = exp_minus_one_minus_id(s) + target;
        let res = f.norm();
        if !res.is_finite() {
            return None;
        }
        if best.map_or(true, |(_, b)| res < b) {
            best = Some((s, res));
        }
        if res <= tol {
            return Some((s, res, it));
        }
        let slope = expm1_complex(s);
        if slope.norm() == 0.0 {
            return None;
        }
        let step = f / slope;
        s -= step;
        if step.norm() <= 4.0 * f64::EPSILON * (1.0 + s.norm()) {
            let res = (exp_minus_one_minus_id(s) + target).norm();
            return (res <= tol).then_some((s, res, it + 1));
        }
    }
    best.filter(|&(_, res)| res <= tol).map(|(s, res)| (s, res, NEWTON_MAX_ITER))
}

/// Bidirectional map between `r` and `w` near the saddle.
#[derive(Debug, Clone)]
pub struct SaddleChart {
    series_w_of_r: TruncatedSeries,
    series_s_of_r: TruncatedSeries,
    domain_radius: f64,
    residual_tol: f64,
}

impl SaddleChart {
    pub fn build(order: usize, residual_tol: f64) -> Result<Self> {
        if order < 1 {
            return Err(Error::InvalidArgument("chart order must be at least 1".into()));
        }
        if !(residual_tol > 0.0) {
            return Err(Error::InvalidArgument("residual tolerance must be positive".into()));
        }
        let series_w_of_r = w_of_r_series(order)?;
        let series_s_of_r = s_of_r_series(order)?;
        let mut chart = Self {
            series_w_of_r,
            series_s_of_r,
            domain_radius: 0.0,
            residual_tol,
        };
        chart.domain_radius = chart.find_domain_radius();
        Ok(chart)
    }

    pub fn series_w_of_r(&self) -> &TruncatedSeries {
        &self.series_w_of_r
    }

    pub fn series_s_of_r(&self) -> &TruncatedSeries {
        &self.series_s_of_r
    }

    pub fn order(&self) -> usize {
        self.series_w_of_r.order()
    }

    pub fn domain_radius(&self) -> f64 {
        self.domain_radius
    }

    pub fn residual_tol(&self) -> f64 {
        self.residual_tol
    }

    fn seed_converges(&self, r: f64) -> bool {
        let seed = self.series_s_of_r.eval(Complex64::new(r, 0.0));
        match newton(r, seed, self.residual_tol) {
            Some((s, _, iterations)) => {
                iterations <= 8 && (s - seed).norm() <= 0.1 * seed.norm().max(1e-300) + 1e-15
            }
            None => false,
        }
    }

    fn probe(&self, radius: f64) -> bool {
        (0..PROBE_POINTS).all(|k| {
            let r = radius * (2.0 * k as f64 / (PROBE_POINTS - 1) as f64 - 1.0);
            self.seed_converges(r)
        })
    }

    fn find_domain_radius(&self) -> f64 {
        if self.probe(MAX_DOMAIN_RADIUS) {
            return MAX_DOMAIN_RADIUS;
        }
        let (mut lo, mut hi) = (0.0, MAX_DOMAIN_RADIUS);
        for _ in 0..40 {
            let mid = 0.5 * (lo + hi);
            if self.probe(mid) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        lo
    }

    /// `|S(alpha, w(r)) - S(alpha, -i) + r^2/2|` at the coordinate `s = ln(i w)`.
    pub fn residual_at(r: f64, s: Complex64) -> f64 {
        (exp_minus_one_minus_id(s) + Complex64::new(0.0, 0.5 * r * r)).norm()
    }

    /// `s = ln(i w(r))`, continued along the real `r` axis.
    pub fn s_of_r(&self, r: f64) -> Result<Complex64> {
        if r == 0.0 {
            return Ok(zero());
        }
        if !r.is_finite() {
            return Err(Error::ChartDomain(format!("r = {r} is not finite")));
        }
        let tol = self.residual_tol * (1.0 + 0.5 * r * r);
        if r.abs() <= self.domain_radius {
            let seed = self.series_s_of_r.eval(Complex64::new(r, 0.0));
            if let Some((s, _, _)) = newton(r, seed, tol) {
                return Ok(s);
            }
        }
        self.continue_to(r, tol)
    }

    fn continue_to(&self, r: f64, tol: f64) -> Result<Complex64> {
        let sign = r.signum();
        let start = sign * self.domain_radius.min(r.abs());
        let seed = self.series_s_of_r.eval(Complex64::new(start, 0.0));
        let (mut s, _, _) = newton(start, seed, self.residual_tol * (1.0 + 0.5 * start * start))
            .ok_or_else(|| Error::ChartDomain(format!("no converged start at r = {start}")))?;
        let mut here = start;
        let mut step = sign * (self.domain_radius / 4.0).max(1e-3);
        while here != r {
            if (r - here).abs() <= step.abs() {
                step = r - here;
            }
            let next = here + step;
            // midpoint predictor on ds/dr = -i r / (e^s - 1)
            let k1 = -Complex64::i() * here / expm1_complex(s);
            let s_mid = s + 0.5 * step * k1;
            let k2 = -Complex64::i() * (here + 0.5 * step) / expm1_complex(s_mid);
            let predicted = s + step * k2;
            let local_tol = self.residual_tol * (1.0 + 0.5 * next * next);
            match newton(next, predicted, local_tol) {
                Some((s_new, _, _)) if (s_new - predicted).norm() <= 0.25 * step.abs().max(1e-8) => {
                    s = s_new;
                    here = next;
                }
                _ => {
                    step *= 0.5;
                    if step.abs() < 1e-10 {
                        return Err(Error::ChartDomain(format!("continuation stalled at r = {here}")));
                    }
                }
            }
        }
        if Self::residual_at(r, s) > tol {
            return Err(Error::ChartDomain(format!("residual too large at r = {r}")));
        }
        Ok(s)
    }

    /// `w(r) = -i e^{s(r)}`.
    pub fn w_of_r(&self, r: f64) -> Result<Complex64> {
        Ok(Complex64::new(0.0, -1.0) * self.s_of_r(r)?.exp())
    }

    /// Series-only approximation of `w(r)`.
    pub fn w_series(&self, r: f64) -> Complex64 {
        self.series_w_of_r.eval(Complex64::new(r, 0.0))
    }

    /// `dw/dr = -w r/(w + i)`, with its limit `e^{i pi/4}` at `r = 0`.
    pub fn dw_dr(&self, r: f64) -> Result<Complex64> {
        if r == 0.0 {
            return Ok(cis(FRAC_PI_4));
        }
        let s = self.s_of_r(r)?;
        Ok(dw_dr_at(r, s))
    }
}

/// `dw/dr` in terms of `s = ln(i w)`: `-e^s r/(e^s - 1)`.
pub fn dw_dr_at(r: f64, s: Complex64) -> Complex64 {
    if r == 0.0 {
        return cis(FRAC_PI_4);
    }
    -s.exp() * r / expm1_complex(s)
}

/// Process-wide order-8 chart.
pub fn default_chart() -> &'static SaddleChart {
    static CHART: OnceLock<SaddleChart> = OnceLock::new();
    CHART.get_or_init(|| {
        SaddleChart::build(DEFAULT_CHART_ORDER, DEFAULT_RESIDUAL_TOL).expect("default saddle chart builds")
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn order_four_coefficients() {
        let w = w_of_r_series(4).unwrap();
        let expected = [c(0.0, -1.0), cis(PI / 4.0), c(-1.0 / 3.0, 0.0), -cis(0.75 * PI) / 36.0];
        for (j, e) in expected.iter().enumerate() {
            assert!((w.coeff(j) - e).norm() < 1e-14, "coefficient {j}: {}", w.coeff(j));
        }
    }

    #[test]
    fn s_series_matches_log_of_w_series() {
        let chart = SaddleChart::build(8, 1e-13).unwrap();
        for &r in &[0.05, -0.1, 0.2] {
            let s = chart.series_s_of_r().eval(c(r, 0.0));
            let w = chart.w_series(r);
            assert!((c(0.0, -1.0) * s.exp() - w).norm() < 1e-9 * (1.0 + r.abs().powi(9) * 1e9));
        }
    }

    #[test]
    fn saddle_is_fixed() {
        let chart = SaddleChart::build(1, 1e-13).unwrap();
        assert_eq!(chart.w_of_r(0.0).unwrap(), c(0.0, -1.0));
        assert_eq!(SaddleChart::residual_at(0.0, c(0.0, 0.0)), 0.0);
    }

    #[test]
    fn domain_radius_is_positive() {
        let chart = default_chart();
        assert!(chart.domain_radius() > 0.5, "radius {}", chart.domain_radius());
        assert!(chart.domain_radius() <= MAX_DOMAIN_RADIUS);
    }

    #[test]
    fn continuation_beyond_the_chart() {
        let chart = default_chart();
        let s3 = chart.s_of_r(3.0).unwrap();
        assert!(SaddleChart::residual_at(3.0, s3) <= 1e-12);
        let w3 = chart.w_of_r(3.0).unwrap();
        let w299 = chart.w_of_r(2.99).unwrap();
        assert!((w3 - w299).norm() < 0.05);
        let s_neg = chart.s_of_r(-3.3).unwrap();
        assert!(SaddleChart::residual_at(-3.3, s_neg) <= 1e-12);
    }

    #[test]
    fn dw_dr_limit_and_difference() {
        let chart = default_chart();
        assert!((chart.dw_dr(0.0).unwrap() - cis(PI / 4.0)).norm() < 1e-15);
        for &r in &[0.2, -0.2, 1.5] {
            let h = 1e-5;
            let fd = (chart.w_of_r(r + h).unwrap() - chart.w_of_r(r - h).unwrap()) / (2.0 * h);
            assert!((fd - chart.dw_dr(r).unwrap()).norm() < 1e-9, "r = {r}");
        }
    }

    #[test]
    fn stable_helpers() {
        let s = c(1e-9, 2e-9);
        assert!((exp_minus_one_minus_id(s) - s * s / 2.0).norm() < 1e-26);
        assert!((expm1_complex(c(1.0, 0.0)).re - (1f64.exp() - 1.0)).abs() < 1e-15);
    }
}
