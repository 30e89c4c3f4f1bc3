//! Hankel-contour integrals and their uniform large-parameter asymptotics.
//!
//! The central object is
//!
//! ```text
//! L(alpha, lambda) = int_H f(alpha, w) e^{lambda S(alpha, w)} dw,
//! f = 1/(pi w (pi/2 - i ln(w/alpha))),   S = w - pi/2 + i ln(w/alpha),
//! ```
//!
//! taken over the Hankel contour around the negative real axis. The crate
//! evaluates it by adaptive quadrature on a deformed contour, builds its
//! large-`lambda` expansions to any order from truncated power series, and
//! computes the pole-correction integrals that keep the expansion uniform as
//! the pole at `w = -i alpha` meets the saddle at `w = -i`.

pub mod asymptotics;
pub mod error;
pub mod harness;
pub mod phase;
pub mod quadrature;
pub mod saddle;
pub mod series;
pub mod special;

pub use error::{Error, Result};
pub use num_complex::Complex64;
