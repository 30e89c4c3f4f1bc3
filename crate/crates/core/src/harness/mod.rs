//! Verification harness: parameter sweeps of the expansion error, the
//! invariant battery, and one-shot evaluation of every public operation.
//!
//! The command-line front end is a thin wrapper over this module.

mod eval;
mod sweep;
mod validate;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use eval::{parse_complex, registered_operations, run_eval, EvalOutput};
pub use sweep::{
    flatness, read_csv, read_json, read_records, run_sweep, sweep_point, write_csv, write_json, write_records, Flatness,
    RecordStatus, SweepRecord, SweepSummary,
};
pub use validate::{check_names, run_validate, CheckReport, ValidationReport};

/// Errors surfaced by the harness; `Usage` is a malformed request, the rest
/// come from the numerics or from I/O.
#[derive(Debug, thiserror::Error)]
pub enum HarnessError {
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Numerical(#[from] crate::Error),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Sweep,
    Eval,
    Validate,
}

/// How `alpha` is chosen at each grid point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum AlphaSpec {
    Fixed(f64),
    /// `alpha = 1 + 1/sqrt(lambda)`
    OnePlusInvSqrtLambda,
}

impl AlphaSpec {
    pub const RULE: &'static str = "1+1/sqrt(lambda)";

    pub fn alpha_at(&self, lambda: f64) -> f64 {
        match *self {
            AlphaSpec::Fixed(a) => a,
            AlphaSpec::OnePlusInvSqrtLambda => 1.0 + 1.0 / lambda.sqrt(),
        }
    }
}

impl FromStr for AlphaSpec {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact == Self::RULE || compact == "rule" {
            return Ok(AlphaSpec::OnePlusInvSqrtLambda);
        }
        let a: f64 = compact
            .parse()
            .map_err(|_| HarnessError::Usage(format!("alpha must be a number or \"{}\", got {s:?}", Self::RULE)))?;
        if !(a > 0.0 && a.is_finite()) {
            return Err(HarnessError::Usage(format!("alpha must be positive, got {a}")));
        }
        Ok(AlphaSpec::Fixed(a))
    }
}

impl fmt::Display for AlphaSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlphaSpec::Fixed(a) => write!(f, "{a}"),
            AlphaSpec::OnePlusInvSqrtLambda => f.write_str(Self::RULE),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LambdaGrid {
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl Default for LambdaGrid {
    fn default() -> Self {
        Self {
            min: 20.0,
            max: 100.0,
            count: 17,
        }
    }
}

impl LambdaGrid {
    pub fn validate(&self) -> Result<(), HarnessError> {
        if !(self.min > 0.0 && self.min.is_finite()) {
            return Err(HarnessError::Usage(format!("lambda-min must be positive, got {}", self.min)));
        }
        if !(self.max >= self.min && self.max.is_finite()) {
            return Err(HarnessError::Usage(format!(
                "lambda-max must be finite and at least lambda-min, got {}",
                self.max
            )));
        }
        if self.count < 2 {
            return Err(HarnessError::Usage(format!("need at least 2 grid points, got {}", self.count)));
        }
        Ok(())
    }

    /// Log-spaced points; the endpoints are hit exactly.
    pub fn points(&self) -> Vec<f64> {
        let (a, b) = (self.min.ln(), self.max.ln());
        let last = self.count - 1;
        (0..self.count)
            .map(|k| match k {
                0 => self.min,
                k if k == last => self.max,
                k => (a + (b - a) * k as f64 / last as f64).exp(),
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            _ => Err(HarnessError::Usage(format!("format must be csv or json, got {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub mode: Mode,
    pub alpha: AlphaSpec,
    pub lambda_grid: LambdaGrid,
    pub n: u32,
    pub tol: f64,
    pub output_path: Option<String>,
    pub output_format: OutputFormat,
    /// Worker threads for the sweep; 0 lets the pool decide.
    pub workers: usize,
    /// Treat a missing plain expansion (alpha = 1) as a failed grid point.
    pub require_plain: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            mode: Mode::Sweep,
            alpha: AlphaSpec::Fixed(5.0),
            lambda_grid: LambdaGrid::default(),
            n: 3,
            tol: 1e-12,
            output_path: None,
            output_format: OutputFormat::Csv,
            workers: 0,
            require_plain: false,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), HarnessError> {
        self.lambda_grid.validate()?;
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(HarnessError::Usage(format!("tol must be positive, got {}", self.tol)));
        }
        if self.n < 1 {
            return Err(HarnessError::Usage("N must be at least 1".into()));
        }
        Ok(())
    }
}
