use thiserror::Error;

use crate::quadrature::QuadratureResult;

/// Errors raised by the series algebra, the quadrature engine and the
/// asymptotic machinery.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("series structure mismatch: {0}")]
    Structural(String),

    #[error("series cannot be reverted: linear coefficient vanishes")]
    DegenerateReversion,

    #[error("series has a vanishing constant term; {0} is undefined")]
    SingularSeries(&'static str),

    #[error("quadrature budget exceeded after {subdivisions} subdivisions (error estimate {}, target {tol:e})", partial.abs_error_estimate)]
    BudgetExceeded {
        partial: Box<QuadratureResult>,
        subdivisions: usize,
        tol: f64,
    },

    #[error("prefactor 1/(e^(i pi s) - e^(-i pi s)) is singular: s = {0} is within 1e-8 of an integer")]
    NearSingularPrefactor(num_complex::Complex64),

    #[error("x = 0 puts a pole at k = 0 of the Hankel sum")]
    PoleAtOrigin,

    #[error("alpha = 1: the amplitude pole collides with the saddle; use the regularized expansion")]
    PoleCollision,

    #[error("alpha = 1: the pole lies on the integration line")]
    PoleOnContour,

    #[error("z = {0} lies on the line e^(i pi/4) R; choose a side")]
    PrincipalValueBranch(num_complex::Complex64),

    #[error("saddle chart: {0}")]
    ChartDomain(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    pub fn is_budget_exceeded(&self) -> bool {
        matches!(self, Error::BudgetExceeded { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
