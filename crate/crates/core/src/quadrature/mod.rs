//! Adaptive line integrals along [`ComplexPath`]s.
//!
//! All pieces of a path share one global error budget: the interval with the
//! largest error estimate is bisected until the summed estimate drops below
//! the requested absolute tolerance.

pub mod gk;
pub mod hankel;
pub mod path;

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
pub use path::{ComplexPath, PathPiece};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadratureResult {
    pub value: Complex64,
    pub abs_error_estimate: f64,
    pub tail_bound: f64,
    pub evaluations: usize,
    /// Some intervals stopped at the rounding floor rather than at `tol`.
    pub roundoff_limited: bool,
}

impl QuadratureResult {
    pub fn total_error(&self) -> f64 {
        self.abs_error_estimate + self.tail_bound
    }
}

#[derive(Debug, Clone, Copy)]
pub struct QuadratureOptions {
    /// Absolute tolerance on the summed error estimate.
    pub tol: f64,
    pub max_subdivisions: usize,
    pub max_depth: u32,
}

impl QuadratureOptions {
    pub fn with_tol(tol: f64) -> Self {
        Self {
            tol,
            ..Self::default()
        }
    }
}

impl Default for QuadratureOptions {
    fn default() -> Self {
        Self {
            tol: 1e-12,
            max_subdivisions: 20_000,
            max_depth: 40,
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Interval {
    piece: usize,
    a: f64,
    b: f64,
    depth: u32,
    value: Complex64,
    error: f64,
    abs_integral: f64,
}

impl PartialEq for Interval {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}

impl Eq for Interval {}

impl PartialOrd for Interval {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Interval {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// Integrates `f(z) dz` along `path` with the default options and absolute
/// tolerance `tol`.
pub fn integrate_path<F>(f: F, path: &ComplexPath, tol: f64) -> Result<QuadratureResult>
where
    F: Fn(Complex64) -> Complex64,
{
    integrate_path_with(f, path, QuadratureOptions::with_tol(tol))
}

pub fn integrate_path_with<F>(f: F, path: &ComplexPath, opts: QuadratureOptions) -> Result<QuadratureResult>
where
    F: Fn(Complex64) -> Complex64,
{
    if !(opts.tol > 0.0) {
        return Err(Error::InvalidArgument(format!("tolerance must be positive, got {}", opts.tol)));
    }
    let pieces = path.pieces();
    let mut evaluations = 0usize;
    let mut heap = BinaryHeap::new();
    let mut retired: Vec<Interval> = Vec::new();

    let apply = |piece: usize, a: f64, b: f64, depth: u32, evaluations: &mut usize| {
        let p = &pieces[piece];
        let g = |t: f64| f(p.point(t)) * p.velocity(t);
        let out = gk::gk21(&g, a, b);
        *evaluations += gk::POINTS;
        Interval {
            piece,
            a,
            b,
            depth,
            value: out.value,
            error: if out.error.is_finite() { out.error } else { f64::INFINITY },
            abs_integral: out.abs_integral,
        }
    };

    for k in 0..pieces.len() {
        if pieces[k].length() == 0.0 {
            continue;
        }
        heap.push(apply(k, 0.0, 1.0, 0, &mut evaluations));
    }

    let mut subdivisions = 0usize;
    let mut roundoff_limited = false;
    let mut active: f64 = heap.iter().map(|iv| iv.error).sum();
    let mut frozen = 0.0;
    loop {
        if active + frozen <= opts.tol {
            // guard against drift in the running sum
            active = heap.iter().map(|iv| iv.error).sum();
            if active + frozen <= opts.tol {
                break;
            }
        }
        if heap.is_empty() {
            break;
        }
        if subdivisions >= opts.max_subdivisions {
            let partial = summarize(&heap, &retired, path, evaluations, true);
            return Err(Error::BudgetExceeded {
                partial: Box::new(partial),
                subdivisions,
                tol: opts.tol,
            });
        }
        let worst = heap.pop().expect("heap is non-empty");
        active -= worst.error;
        let at_floor = worst.error <= 100.0 * f64::EPSILON * worst.abs_integral;
        let too_narrow = (worst.b - worst.a).abs() <= 1e-13 * worst.a.abs().max(worst.b.abs()).max(1e-300);
        if worst.depth >= opts.max_depth || at_floor || too_narrow {
            roundoff_limited = true;
            frozen += worst.error;
            retired.push(worst);
            continue;
        }
        let mid = 0.5 * (worst.a + worst.b);
        let left = apply(worst.piece, worst.a, mid, worst.depth + 1, &mut evaluations);
        let right = apply(worst.piece, mid, worst.b, worst.depth + 1, &mut evaluations);
        subdivisions += 1;
        if !(left.value.norm().is_finite() && right.value.norm().is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "integrand is not finite near {}",
                pieces[worst.piece].point(mid)
            )));
        }
        active += left.error + right.error;
        heap.push(left);
        heap.push(right);
    }
    Ok(summarize(&heap, &retired, path, evaluations, roundoff_limited))
}

fn summarize(
    heap: &BinaryHeap<Interval>,
    retired: &[Interval],
    path: &ComplexPath,
    evaluations: usize,
    roundoff_limited: bool,
) -> QuadratureResult {
    // sum in parameter order so that the result does not depend on heap layout
    let mut all: Vec<&Interval> = heap.iter().chain(retired.iter()).collect();
    all.sort_by(|x, y| x.piece.cmp(&y.piece).then(x.a.total_cmp(&y.a)));
    let value = all.iter().map(|iv| iv.value).sum();
    let abs_error_estimate = all.iter().map(|iv| iv.error).sum();
    QuadratureResult {
        value,
        abs_error_estimate,
        tail_bound: path.tail_bound(),
        evaluations,
        roundoff_limited,
    }
}

/// Integrates a complex function of a real variable over `[a, b]`.
pub fn integrate_real_line<F>(f: F, a: f64, b: f64, opts: QuadratureOptions) -> Result<QuadratureResult>
where
    F: Fn(f64) -> Complex64,
{
    let path = ComplexPath::new(vec![PathPiece::line(Complex64::new(a, 0.0), Complex64::new(b, 0.0))])?;
    integrate_path_with(|z| f(z.re), &path, opts)
}
