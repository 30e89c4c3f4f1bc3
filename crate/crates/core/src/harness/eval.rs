//! One-shot evaluation of the public operations by name.

use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Value};

use super::HarnessError;
use crate::asymptotics::{
    g_coefficients, greg_coefficients, k0_leading, k_hat_0, k_integral, l_asymptotic_plain,
    l_asymptotic_regularized_with_tol, AsymptoticResult, DEFAULT_K_TOL,
};
use crate::quadrature::hankel::{hankel_gamma, hankel_sum_identity, reference_l};
use crate::saddle::{default_chart, SaddleChart};
use crate::series::TruncatedSeries;
use crate::special::{bleistein_b, erf_complex, half_integer_gamma};

const DEFAULT_TOL: f64 = 1e-12;
const SUM_TERMS: usize = 60;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvalOutput {
    pub operation: String,
    pub args: Vec<String>,
    pub result: Value,
}

struct Operation {
    name: &'static str,
    /// Argument names; a trailing `?` marks an optional one.
    params: &'static [&'static str],
    run: fn(&Args) -> Result<Value, HarnessError>,
}

struct Args<'a> {
    op: &'static str,
    raw: &'a [String],
}

impl Args<'_> {
    fn real(&self, i: usize, name: &str) -> Result<f64, HarnessError> {
        let s = &self.raw[i];
        s.trim()
            .parse()
            .map_err(|_| HarnessError::Usage(format!("{}: {name} must be a real number, got {s:?}", self.op)))
    }

    fn real_or(&self, i: usize, name: &str, default: f64) -> Result<f64, HarnessError> {
        if i < self.raw.len() {
            self.real(i, name)
        } else {
            Ok(default)
        }
    }

    fn complex(&self, i: usize, name: &str) -> Result<Complex64, HarnessError> {
        parse_complex(&self.raw[i])
            .ok_or_else(|| HarnessError::Usage(format!("{}: {name} must be complex (a, a+bi or a,b), got {:?}", self.op, self.raw[i])))
    }

    fn count(&self, i: usize, name: &str) -> Result<u32, HarnessError> {
        let s = &self.raw[i];
        s.trim()
            .parse()
            .map_err(|_| HarnessError::Usage(format!("{}: {name} must be a nonnegative integer, got {s:?}", self.op)))
    }
}

/// Parse `a`, `bi`, `a+bi`, `a-bi` or `a,b`.
pub fn parse_complex(s: &str) -> Option<Complex64> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return None;
    }
    if let Some((re, im)) = t.split_once(',') {
        return Some(Complex64::new(re.parse().ok()?, im.parse().ok()?));
    }
    let Some(body) = t.strip_suffix('i').or_else(|| t.strip_suffix('j')) else {
        return Some(Complex64::new(t.parse().ok()?, 0.0));
    };
    // split at the last sign that is not the leading one or part of an exponent
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let imag = |x: &str| -> Option<f64> {
        match x {
            "" | "+" => Some(1.0),
            "-" => Some(-1.0),
            _ => x.parse().ok(),
        }
    };
    match split {
        Some(k) => Some(Complex64::new(body[..k].parse().ok()?, imag(&body[k..])?)),
        None => Some(Complex64::new(0.0, imag(body)?)),
    }
}

fn complex(z: Complex64) -> Value {
    json!({ "re": z.re, "im": z.im })
}

fn series(s: &TruncatedSeries) -> Value {
    Value::Array(s.coeffs().iter().map(|&c| complex(c)).collect())
}

fn asymptotic(r: &AsymptoticResult) -> Value {
    json!({
        "value": complex(r.value),
        "N": r.n,
        "terms": r.terms.iter().map(|&t| complex(t)).collect::<Vec<_>>(),
        "K": r.k_correction.map(complex),
        "remainder_scale": r.remainder_scale,
    })
}

const OPERATIONS: &[Operation] = &[
    Operation {
        name: "erf_complex",
        params: &["z"],
        run: |a| Ok(json!({ "value": complex(erf_complex(a.complex(0, "z")?)) })),
    },
    Operation {
        name: "bleistein_B",
        params: &["z"],
        run: |a| Ok(json!({ "value": complex(bleistein_b(a.complex(0, "z")?)) })),
    },
    Operation {
        name: "hankel_gamma",
        params: &["s", "tol?"],
        run: |a| {
            let tol = a.real_or(1, "tol", DEFAULT_TOL)?;
            Ok(json!({ "value": complex(hankel_gamma(a.complex(0, "s")?, tol)?), "tol": tol }))
        },
    },
    Operation {
        name: "hankel_sum_identity",
        params: &["x", "tol?"],
        run: |a| {
            let tol = a.real_or(1, "tol", DEFAULT_TOL)?;
            let id = hankel_sum_identity(a.real(0, "x")?, tol, SUM_TERMS)?;
            Ok(json!({
                "lhs": complex(id.lhs),
                "rhs": complex(id.rhs),
                "rhs_square": complex(id.rhs_square),
                "abs_difference": (id.lhs - id.rhs).norm(),
            }))
        },
    },
    Operation {
        name: "reference_L",
        params: &["alpha", "lambda", "tol?"],
        run: |a| {
            let tol = a.real_or(2, "tol", DEFAULT_TOL)?;
            let q = reference_l(a.real(0, "alpha")?, a.real(1, "lambda")?, tol)?;
            Ok(json!({
                "value": complex(q.value),
                "abs_error_estimate": q.abs_error_estimate,
                "tail_bound": q.tail_bound,
                "evaluations": q.evaluations,
                "roundoff_limited": q.roundoff_limited,
            }))
        },
    },
    Operation {
        name: "K_integral",
        params: &["alpha", "lambda", "tol?"],
        run: |a| {
            let tol = a.real_or(2, "tol", DEFAULT_K_TOL)?;
            Ok(json!({ "value": complex(k_integral(a.real(0, "alpha")?, a.real(1, "lambda")?, tol)?), "tol": tol }))
        },
    },
    Operation {
        name: "K0_leading",
        params: &["alpha", "lambda"],
        run: |a| Ok(json!({ "value": complex(k0_leading(a.real(0, "alpha")?, a.real(1, "lambda")?)?) })),
    },
    Operation {
        name: "k_hat_0",
        params: &["z"],
        run: |a| Ok(json!({ "value": complex(k_hat_0(a.complex(0, "z")?)?) })),
    },
    Operation {
        name: "g_coefficients",
        params: &["alpha", "order"],
        run: |a| Ok(json!({ "coefficients": series(&g_coefficients(a.real(0, "alpha")?, a.count(1, "order")? as usize)?) })),
    },
    Operation {
        name: "greg_coefficients",
        params: &["alpha", "order"],
        run: |a| Ok(json!({ "coefficients": series(&greg_coefficients(a.real(0, "alpha")?, a.count(1, "order")? as usize)?) })),
    },
    Operation {
        name: "L_asymptotic_regularized",
        params: &["alpha", "lambda", "N", "tol?"],
        run: |a| {
            let tol = a.real_or(3, "tol", DEFAULT_K_TOL)?;
            let r = l_asymptotic_regularized_with_tol(a.real(0, "alpha")?, a.real(1, "lambda")?, a.count(2, "N")?, tol)?;
            Ok(asymptotic(&r))
        },
    },
    Operation {
        name: "L_asymptotic_plain",
        params: &["alpha", "lambda", "N"],
        run: |a| Ok(asymptotic(&l_asymptotic_plain(a.real(0, "alpha")?, a.real(1, "lambda")?, a.count(2, "N")?)?)),
    },
    Operation {
        name: "build_chart",
        params: &["order"],
        run: |a| {
            let chart = SaddleChart::build(a.count(0, "order")? as usize, crate::saddle::DEFAULT_RESIDUAL_TOL)?;
            Ok(json!({
                "w_of_r": series(chart.series_w_of_r()),
                "domain_radius": chart.domain_radius(),
            }))
        },
    },
    Operation {
        name: "w_of_r",
        params: &["r"],
        run: |a| Ok(json!({ "value": complex(default_chart().w_of_r(a.real(0, "r")?)?) })),
    },
    Operation {
        name: "dw_dr",
        params: &["r"],
        run: |a| Ok(json!({ "value": complex(default_chart().dw_dr(a.real(0, "r")?)?) })),
    },
    Operation {
        name: "half_integer_gamma",
        params: &["j"],
        run: |a| Ok(json!({ "value": half_integer_gamma(a.count(0, "j")?) })),
    },
];

/// `name(params)` for every registered operation.
pub fn registered_operations() -> Vec<String> {
    OPERATIONS
        .iter()
        .map(|op| format!("{} {}", op.name, op.params.join(" ")))
        .collect()
}

pub fn run_eval(name: &str, args: &[String]) -> Result<EvalOutput, HarnessError> {
    let Some(op) = OPERATIONS.iter().find(|op| op.name == name) else {
        return Err(HarnessError::Usage(format!(
            "unknown operation {name:?}; registered operations:\n  {}",
            registered_operations().join("\n  ")
        )));
    };
    let required = op.params.iter().filter(|p| !p.ends_with('?')).count();
    if args.len() < required || args.len() > op.params.len() {
        return Err(HarnessError::Usage(format!(
            "{name} takes arguments: {}",
            op.params.join(" ")
        )));
    }
    let result = (op.run)(&Args { op: op.name, raw: args })?;
    Ok(EvalOutput {
        operation: name.to_string(),
        args: args.to_vec(),
        result,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn args(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn complex_parsing() {
        let c = |re, im| Some(Complex64::new(re, im));
        assert_eq!(parse_complex("1.5"), c(1.5, 0.0));
        assert_eq!(parse_complex("-2i"), c(0.0, -2.0));
        assert_eq!(parse_complex("i"), c(0.0, 1.0));
        assert_eq!(parse_complex("1-i"), c(1.0, -1.0));
        assert_eq!(parse_complex("0.5+1e-3i"), c(0.5, 1e-3));
        assert_eq!(parse_complex("1e-3-2.5e+2i"), c(1e-3, -250.0));
        assert_eq!(parse_complex("-1, 2"), c(-1.0, 2.0));
        assert_eq!(parse_complex("x"), None);
        assert_eq!(parse_complex(""), None);
    }

    #[test]
    fn gamma_of_one_half() {
        let out = run_eval("hankel_gamma", &args(&["0.5"])).unwrap();
        let re = out.result["value"]["re"].as_f64().unwrap();
        assert!((re - std::f64::consts::PI.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn unknown_name_lists_operations() {
        match run_eval("nope", &[]) {
            Err(HarnessError::Usage(msg)) => assert!(msg.contains("bleistein_B") && msg.contains("reference_L")),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn arity_is_checked() {
        assert!(matches!(run_eval("K0_leading", &args(&["2"])), Err(HarnessError::Usage(_))));
        assert!(matches!(run_eval("erf_complex", &args(&["1", "2"])), Err(HarnessError::Usage(_))));
        assert!(matches!(run_eval("erf_complex", &args(&["q"])), Err(HarnessError::Usage(_))));
    }

    #[test]
    fn numerical_errors_pass_through() {
        assert!(matches!(
            run_eval("L_asymptotic_plain", &args(&["1", "50", "3"])),
            Err(HarnessError::Numerical(crate::Error::PoleCollision))
        ));
    }
}
