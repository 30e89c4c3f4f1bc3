//! Piecewise-smooth integration paths in the complex plane.
//!
//! Each piece is parametrized over `t in [0, 1]`. On a piece lying along the
//! negative real axis the sign of the zero imaginary part of its points selects
//! the side of the logarithm's cut, so Hankel rays are built from
//! `(-r, -0.0)` and `(-r, +0.0)`.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Endpoints closer than this are treated as joined.
pub const CONTINUITY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PathPiece {
    Line {
        a: Complex64,
        b: Complex64,
    },
    Arc {
        center: Complex64,
        radius: f64,
        theta0: f64,
        theta1: f64,
    },
    /// The segment `origin + direction * [0, truncation]`, traversed outward
    /// or, when `incoming`, toward `origin`. `tail_bound` bounds the modulus of
    /// the discarded part of the integral beyond the truncation point.
    Ray {
        origin: Complex64,
        direction: Complex64,
        truncation: f64,
        incoming: bool,
        tail_bound: f64,
    },
}

impl PathPiece {
    pub fn line(a: Complex64, b: Complex64) -> Self {
        PathPiece::Line { a, b }
    }

    pub fn arc(center: Complex64, radius: f64, theta0: f64, theta1: f64) -> Self {
        PathPiece::Arc {
            center,
            radius,
            theta0,
            theta1,
        }
    }

    pub fn outgoing_ray(origin: Complex64, direction: Complex64, truncation: f64, tail_bound: f64) -> Self {
        PathPiece::Ray {
            origin,
            direction,
            truncation,
            incoming: false,
            tail_bound,
        }
    }

    pub fn incoming_ray(origin: Complex64, direction: Complex64, truncation: f64, tail_bound: f64) -> Self {
        PathPiece::Ray {
            origin,
            direction,
            truncation,
            incoming: true,
            tail_bound,
        }
    }

    pub fn point(&self, t: f64) -> Complex64 {
        match *self {
            PathPiece::Line { a, b } => a + (b - a) * t,
            PathPiece::Arc {
                center,
                radius,
                theta0,
                theta1,
            } => center + Complex64::from_polar(radius, theta0 + (theta1 - theta0) * t),
            PathPiece::Ray {
                origin,
                direction,
                truncation,
                incoming,
                ..
            } => {
                let d = if incoming { 1.0 - t } else { t };
                origin + direction * (truncation * d)
            }
        }
    }

    /// `d point / dt`
    pub fn velocity(&self, t: f64) -> Complex64 {
        match *self {
            PathPiece::Line { a, b } => b - a,
            PathPiece::Arc {
                radius,
                theta0,
                theta1,
                ..
            } => {
                let theta = theta0 + (theta1 - theta0) * t;
                Complex64::new(0.0, 1.0) * Complex64::from_polar(radius, theta) * (theta1 - theta0)
            }
            PathPiece::Ray {
                direction,
                truncation,
                incoming,
                ..
            } => {
                if incoming {
                    -direction * truncation
                } else {
                    direction * truncation
                }
            }
        }
    }

    pub fn start(&self) -> Complex64 {
        self.endpoint(false)
    }

    pub fn end(&self) -> Complex64 {
        self.endpoint(true)
    }

    fn endpoint(&self, end: bool) -> Complex64 {
        match *self {
            PathPiece::Ray {
                origin,
                direction,
                truncation,
                incoming,
                ..
            } => {
                if incoming == end {
                    origin
                } else {
                    origin + direction * truncation
                }
            }
            _ => self.point(if end { 1.0 } else { 0.0 }),
        }
    }

    pub fn length(&self) -> f64 {
        match *self {
            PathPiece::Line { a, b } => (b - a).norm(),
            PathPiece::Arc {
                radius,
                theta0,
                theta1,
                ..
            } => radius * (theta1 - theta0).abs(),
            PathPiece::Ray { truncation, .. } => truncation,
        }
    }

    pub fn tail_bound(&self) -> f64 {
        match *self {
            PathPiece::Ray { tail_bound, .. } => tail_bound,
            _ => 0.0,
        }
    }

    pub fn reversed(&self) -> Self {
        match *self {
            PathPiece::Line { a, b } => PathPiece::Line { a: b, b: a },
            PathPiece::Arc {
                center,
                radius,
                theta0,
                theta1,
            } => PathPiece::Arc {
                center,
                radius,
                theta0: theta1,
                theta1: theta0,
            },
            PathPiece::Ray {
                origin,
                direction,
                truncation,
                incoming,
                tail_bound,
            } => PathPiece::Ray {
                origin,
                direction,
                truncation,
                incoming: !incoming,
                tail_bound,
            },
        }
    }

    /// Same piece with a new truncation length and tail bound (rays only).
    pub fn with_truncation(&self, truncation: f64, tail_bound: f64) -> Self {
        match *self {
            PathPiece::Ray {
                origin,
                direction,
                incoming,
                ..
            } => PathPiece::Ray {
                origin,
                direction,
                truncation,
                incoming,
                tail_bound,
            },
            other => other,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComplexPath {
    pieces: Vec<PathPiece>,
}

impl ComplexPath {
    /// Checks endpoint continuity between consecutive pieces.
    pub fn new(pieces: Vec<PathPiece>) -> Result<Self> {
        if pieces.is_empty() {
            return Err(Error::InvalidArgument("empty path".into()));
        }
        for (k, pair) in pieces.windows(2).enumerate() {
            let gap = (pair[0].end() - pair[1].start()).norm();
            if gap > CONTINUITY_TOL * (1.0 + pair[1].start().norm()) {
                return Err(Error::InvalidArgument(format!(
                    "path pieces {k} and {} are {gap:e} apart",
                    k + 1
                )));
            }
        }
        for p in &pieces {
            if let PathPiece::Ray {
                truncation,
                direction,
                tail_bound,
                ..
            } = p
            {
                if !(truncation.is_finite() && *truncation >= 0.0 && tail_bound.is_finite() && *tail_bound >= 0.0) {
                    return Err(Error::InvalidArgument("ray needs a finite truncation and tail bound".into()));
                }
                if (direction.norm() - 1.0).abs() > 1e-12 {
                    return Err(Error::InvalidArgument("ray direction must be a unit vector".into()));
                }
            }
        }
        Ok(Self { pieces })
    }

    pub fn pieces(&self) -> &[PathPiece] {
        &self.pieces
    }

    pub fn start(&self) -> Complex64 {
        self.pieces[0].start()
    }

    pub fn end(&self) -> Complex64 {
        self.pieces[self.pieces.len() - 1].end()
    }

    pub fn length(&self) -> f64 {
        self.pieces.iter().map(PathPiece::length).sum()
    }

    pub fn tail_bound(&self) -> f64 {
        self.pieces.iter().map(PathPiece::tail_bound).sum()
    }

    pub fn reversed(&self) -> Self {
        Self {
            pieces: self.pieces.iter().rev().map(PathPiece::reversed).collect(),
        }
    }

    /// Replaces each ray by `rule(piece)`; used to vary truncations.
    pub fn map_rays(&self, rule: impl Fn(&PathPiece) -> PathPiece) -> Self {
        Self {
            pieces: self
                .pieces
                .iter()
                .map(|p| match p {
                    PathPiece::Ray { .. } => rule(p),
                    other => *other,
                })
                .collect(),
        }
    }
}
