//! Asymptotic expansions of `L(alpha, lambda)` and the pole corrections.

pub mod coefficients;
pub mod expansion;
pub mod pole;

pub use coefficients::{g_coefficients, greg_coefficients};
pub use expansion::{
    DEFAULT_K_TOL,
    l_asymptotic_plain, l_asymptotic_regularized, l_asymptotic_regularized_with_tol, regularized_with_k, AsymptoticResult,
};
pub use pole::{k0_leading, k_hat_0, k_hat_0_direct, k_integral};
