//! Sweeps of the rescaled expansion errors over a `lambda` grid.

use std::fmt;
use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{HarnessError, OutputFormat, RunConfig};
use crate::asymptotics::{l_asymptotic_plain, l_asymptotic_regularized_with_tol};
use crate::error::Error;
use crate::quadrature::hankel::reference_l;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "reason", rename_all = "snake_case")]
pub enum RecordStatus {
    Ok,
    Failed(String),
    BudgetExceeded(String),
}

impl RecordStatus {
    pub fn is_ok(&self) -> bool {
        matches!(self, RecordStatus::Ok)
    }

    fn from_error(e: &Error) -> Self {
        if e.is_budget_exceeded() {
            RecordStatus::BudgetExceeded(e.to_string())
        } else {
            RecordStatus::Failed(e.to_string())
        }
    }

    fn parse(s: &str) -> Self {
        if s == "ok" {
            RecordStatus::Ok
        } else if let Some(r) = s.strip_prefix("budget_exceeded: ") {
            RecordStatus::BudgetExceeded(r.to_string())
        } else {
            RecordStatus::Failed(s.strip_prefix("failed: ").unwrap_or(s).to_string())
        }
    }
}

impl fmt::Display for RecordStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RecordStatus::Ok => f.write_str("ok"),
            RecordStatus::Failed(r) => write!(f, "failed: {r}"),
            RecordStatus::BudgetExceeded(r) => write!(f, "budget_exceeded: {r}"),
        }
    }
}

/// One grid point. `D_N = L_ref - L_reg` (the regularized value already
/// contains `K`) and `E_N = L_ref - L_plain`. Values that could not be
/// computed at a failed point are `None`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub alpha: f64,
    pub lambda: f64,
    #[serde(rename = "N")]
    pub n: u32,
    pub l_ref: Option<Complex64>,
    pub l_reg: Option<Complex64>,
    pub l_plain: Option<Complex64>,
    pub k: Option<Complex64>,
    pub d_n: Option<Complex64>,
    pub e_n: Option<Complex64>,
    /// `lambda^{(N+2)/2} |D_N|`
    pub scaled_d: Option<f64>,
    pub scaled_e: Option<f64>,
    pub status: RecordStatus,
}

impl SweepRecord {
    fn empty(alpha: f64, lambda: f64, n: u32) -> Self {
        Self {
            alpha,
            lambda,
            n,
            l_ref: None,
            l_reg: None,
            l_plain: None,
            k: None,
            d_n: None,
            e_n: None,
            scaled_d: None,
            scaled_e: None,
            status: RecordStatus::Ok,
        }
    }
}

/// Evaluate one grid point; errors end up in `status`.
pub fn sweep_point(alpha: f64, lambda: f64, n: u32, tol: f64, require_plain: bool) -> SweepRecord {
    let mut rec = SweepRecord::empty(alpha, lambda, n);
    let scale = lambda.powf(0.5 * (n as f64 + 2.0));

    let l_ref = match reference_l(alpha, lambda, tol) {
        Ok(q) => q.value,
        Err(e) => {
            rec.status = RecordStatus::from_error(&e);
            return rec;
        }
    };
    rec.l_ref = Some(l_ref);

    match l_asymptotic_regularized_with_tol(alpha, lambda, n, tol) {
        Ok(reg) => {
            let d = l_ref - reg.terms_sum() - reg.k_correction.unwrap_or_default();
            rec.l_reg = Some(reg.value);
            rec.k = reg.k_correction;
            rec.d_n = Some(d);
            rec.scaled_d = Some(scale * d.norm());
        }
        Err(e) => {
            rec.status = RecordStatus::from_error(&e);
            return rec;
        }
    }

    match l_asymptotic_plain(alpha, lambda, n) {
        Ok(plain) => {
            let e = l_ref - plain.value;
            rec.l_plain = Some(plain.value);
            rec.e_n = Some(e);
            rec.scaled_e = Some(scale * e.norm());
        }
        Err(e) if require_plain => rec.status = RecordStatus::from_error(&e),
        Err(_) => {}
    }
    rec
}

/// Evaluate every grid point of `config`, in grid order, and write the
/// records to `config.output_path` when one is set.
pub fn run_sweep(config: &RunConfig) -> Result<Vec<SweepRecord>, HarnessError> {
    config.validate()?;
    let lambdas = config.lambda_grid.points();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers)
        .build()
        .map_err(|e| HarnessError::Usage(format!("cannot start {} workers: {e}", config.workers)))?;
    let records: Vec<SweepRecord> = pool.install(|| {
        lambdas
            .par_iter()
            .map(|&lambda| {
                let alpha = config.alpha.alpha_at(lambda);
                sweep_point(alpha, lambda, config.n, config.tol, config.require_plain)
            })
            .collect()
    });
    if let Some(path) = &config.output_path {
        write_records(&records, path, config.output_format)?;
    }
    Ok(records)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Flatness {
    pub max: f64,
    pub min: f64,
    /// `max/min`
    pub ratio: f64,
}

/// Spread of a rescaled error over the grid; `None` without any finite value.
pub fn flatness(values: impl IntoIterator<Item = f64>) -> Option<Flatness> {
    let mut max = f64::NEG_INFINITY;
    let mut min = f64::INFINITY;
    for v in values.into_iter().filter(|v| v.is_finite()) {
        max = max.max(v);
        min = min.min(v);
    }
    (max >= min).then(|| Flatness { max, min, ratio: max / min })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub points: usize,
    pub failed: usize,
    pub scaled_d: Option<Flatness>,
    pub scaled_e: Option<Flatness>,
}

impl SweepSummary {
    pub fn from_records(records: &[SweepRecord]) -> Self {
        Self {
            points: records.len(),
            failed: records.iter().filter(|r| !r.status.is_ok()).count(),
            scaled_d: flatness(records.iter().filter_map(|r| r.scaled_d)),
            scaled_e: flatness(records.iter().filter_map(|r| r.scaled_e)),
        }
    }
}

impl fmt::Display for SweepSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "points={} failed={}", self.points, self.failed)?;
        for (name, fl) in [("scaled_D", self.scaled_d), ("scaled_E", self.scaled_e)] {
            match fl {
                Some(fl) => write!(f, " {name}: max={:.6e} min={:.6e} flatness={:.4}", fl.max, fl.min, fl.ratio)?,
                None => write!(f, " {name}: n/a")?,
            }
        }
        Ok(())
    }
}

const HEADER: [&str; 18] = [
    "alpha", "lambda", "N", "L_ref_re", "L_ref_im", "L_reg_re", "L_reg_im", "L_plain_re", "L_plain_im", "K_re", "K_im",
    "D_N_re", "D_N_im", "E_N_re", "E_N_im", "scaled_D", "scaled_E", "status",
];

/// Shortest decimal that parses back to the same `f64`.
pub(crate) fn fmt_real(x: f64) -> String {
    let a = x.abs();
    if a == 0.0 || (1e-5..1e16).contains(&a) || !x.is_finite() {
        x.to_string()
    } else {
        format!("{x:e}")
    }
}

fn opt_real(v: Option<f64>) -> String {
    v.map(fmt_real).unwrap_or_default()
}

fn push_complex(row: &mut Vec<String>, v: Option<Complex64>) {
    row.push(opt_real(v.map(|z| z.re)));
    row.push(opt_real(v.map(|z| z.im)));
}

pub fn write_csv<W: Write>(records: &[SweepRecord], out: W) -> Result<(), HarnessError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(HEADER)?;
    for r in records {
        let mut row = vec![fmt_real(r.alpha), fmt_real(r.lambda), r.n.to_string()];
        for v in [r.l_ref, r.l_reg, r.l_plain, r.k, r.d_n, r.e_n] {
            push_complex(&mut row, v);
        }
        row.push(opt_real(r.scaled_d));
        row.push(opt_real(r.scaled_e));
        row.push(r.status.to_string());
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

fn bad_row(msg: impl Into<String>) -> HarnessError {
    HarnessError::Usage(format!("malformed sweep CSV: {}", msg.into()))
}

fn parse_real(field: &str) -> Result<Option<f64>, HarnessError> {
    if field.is_empty() {
        return Ok(None);
    }
    field.parse().map(Some).map_err(|_| bad_row(format!("not a number: {field:?}")))
}

fn parse_pair(re: &str, im: &str) -> Result<Option<Complex64>, HarnessError> {
    match (parse_real(re)?, parse_real(im)?) {
        (Some(a), Some(b)) => Ok(Some(Complex64::new(a, b))),
        (None, None) => Ok(None),
        _ => Err(bad_row("half of a complex pair is missing")),
    }
}

pub fn read_csv<R: Read>(input: R) -> Result<Vec<SweepRecord>, HarnessError> {
    let mut rd = csv::Reader::from_reader(input);
    let header = rd.headers()?.clone();
    if header.iter().ne(HEADER.iter().copied()) {
        return Err(bad_row("unexpected header"));
    }
    let mut records = Vec::new();
    for row in rd.records() {
        let row = row?;
        let f = |i: usize| row.get(i).unwrap_or("");
        let need = |i: usize| parse_real(f(i))?.ok_or_else(|| bad_row(format!("empty {}", HEADER[i])));
        records.push(SweepRecord {
            alpha: need(0)?,
            lambda: need(1)?,
            n: f(2).parse().map_err(|_| bad_row("N"))?,
            l_ref: parse_pair(f(3), f(4))?,
            l_reg: parse_pair(f(5), f(6))?,
            l_plain: parse_pair(f(7), f(8))?,
            k: parse_pair(f(9), f(10))?,
            d_n: parse_pair(f(11), f(12))?,
            e_n: parse_pair(f(13), f(14))?,
            scaled_d: parse_real(f(15))?,
            scaled_e: parse_real(f(16))?,
            status: RecordStatus::parse(f(17)),
        });
    }
    Ok(records)
}

pub fn write_json<W: Write>(records: &[SweepRecord], mut out: W) -> Result<(), HarnessError> {
    serde_json::to_writer_pretty(&mut out, records)?;
    out.write_all(b"\n")?;
    Ok(())
}

pub fn read_json<R: Read>(input: R) -> Result<Vec<SweepRecord>, HarnessError> {
    Ok(serde_json::from_reader(input)?)
}

pub fn write_records(records: &[SweepRecord], path: impl AsRef<Path>, format: OutputFormat) -> Result<(), HarnessError> {
    let file = BufWriter::new(File::create(path)?);
    match format {
        OutputFormat::Csv => write_csv(records, file),
        OutputFormat::Json => write_json(records, file),
    }
}

/// Read records back from a file written by [`write_records`].
pub fn read_records(path: impl AsRef<Path>, format: OutputFormat) -> Result<Vec<SweepRecord>, HarnessError> {
    let file = BufReader::new(File::open(path)?);
    match format {
        OutputFormat::Csv => read_csv(file),
        OutputFormat::Json => read_json(file),
    }
}
