//! `hankel`: sweeps, validation and one-shot evaluations.

use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use hankel_asymptotics::harness::{
    run_eval, run_sweep, run_validate, write_csv, write_json, AlphaSpec, HarnessError, LambdaGrid, Mode,
    OutputFormat, RecordStatus, RunConfig, SweepSummary,
};

const EXIT_VALIDATION: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser)]
#[command(name = "hankel", version, about = "Large-lambda asymptotics of a Hankel-contour integral: sweeps, checks, evaluations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate the rescaled expansion errors over a lambda grid.
    Sweep(SweepArgs),
    /// Evaluate one registered operation and print JSON.
    Eval {
        /// Operation name; run with an unknown name to list them.
        name: String,
        #[arg(allow_hyphen_values = true)]
        args: Vec<String>,
    },
    /// Run the invariant battery.
    Validate {
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        /// Run a single named check.
        #[arg(long)]
        check: Option<String>,
        #[arg(long, default_value = "text", value_parser = ["text", "json"])]
        format: String,
    },
}

#[derive(Args)]
struct SweepArgs {
    /// A fixed value, or the rule "1+1/sqrt(lambda)".
    #[arg(long, default_value = "5")]
    alpha: String,
    #[arg(long = "lambda-min", default_value_t = 20.0)]
    lambda_min: f64,
    #[arg(long = "lambda-max", default_value_t = 100.0)]
    lambda_max: f64,
    #[arg(long, default_value_t = 17)]
    points: usize,
    #[arg(long = "N", default_value_t = 3)]
    n: u32,
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
    /// Output file; records go to stdout when absent.
    #[arg(long)]
    out: Option<String>,
    #[arg(long, default_value = "csv")]
    format: String,
    /// Worker threads (0: one per core).
    #[arg(long, default_value_t = 0)]
    workers: usize,
    /// Mark grid points without a plain expansion (alpha = 1) as failed.
    #[arg(long)]
    require_plain: bool,
}

fn sweep(a: SweepArgs) -> Result<u8, HarnessError> {
    let config = RunConfig {
        mode: Mode::Sweep,
        alpha: a.alpha.parse::<AlphaSpec>()?,
        lambda_grid: LambdaGrid {
            min: a.lambda_min,
            max: a.lambda_max,
            count: a.points,
        },
        n: a.n,
        tol: a.tol,
        output_path: a.out.clone(),
        output_format: a.format.parse::<OutputFormat>()?,
        workers: a.workers,
        require_plain: a.require_plain,
    };
    let records = run_sweep(&config)?;
    if config.output_path.is_none() {
        let stdout = io::stdout().lock();
        match config.output_format {
            OutputFormat::Csv => write_csv(&records, stdout)?,
            OutputFormat::Json => write_json(&records, stdout)?,
        }
    }
    let summary = SweepSummary::from_records(&records);
    eprintln!("summary: alpha={} N={} {summary}", config.alpha, config.n);
    for r in records.iter().filter(|r| !r.status.is_ok()) {
        eprintln!("  lambda={} alpha={}: {}", r.lambda, r.alpha, r.status);
    }
    let budget = records.iter().any(|r| matches!(r.status, RecordStatus::BudgetExceeded(_)));
    Ok(if budget {
        EXIT_BUDGET
    } else if summary.failed > 0 {
        EXIT_VALIDATION
    } else {
        0
    })
}

fn eval(name: &str, args: &[String]) -> Result<u8, HarnessError> {
    let out = run_eval(name, args)?;
    let mut stdout = io::stdout().lock();
    serde_json::to_writer_pretty(&mut stdout, &out)?;
    writeln!(stdout)?;
    Ok(0)
}

fn validate(tol: f64, check: Option<&str>, format: &str) -> Result<u8, HarnessError> {
    let report = run_validate(tol, check)?;
    let mut stdout = io::stdout().lock();
    if format == "json" {
        serde_json::to_writer_pretty(&mut stdout, &report)?;
        writeln!(stdout)?;
    } else {
        for c in &report.checks {
            writeln!(
                stdout,
                "{} {:<24} residual={:.3e} threshold={:.1e}  {}",
                if c.passed { "PASS" } else { "FAIL" },
                c.name,
                c.residual,
                c.threshold,
                c.detail
            )?;
        }
        writeln!(stdout, "{} of {} checks passed", report.checks.len() - report.failures(), report.checks.len())?;
    }
    Ok(if report.all_passed() { 0 } else { EXIT_VALIDATION })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let outcome = match cli.command {
        Command::Sweep(a) => sweep(a),
        Command::Eval { name, args } => eval(&name, &args),
        Command::Validate { tol, check, format } => validate(tol, check.as_deref(), &format),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("hankel: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

fn exit_code_for(e: &HarnessError) -> u8 {
    match e {
        HarnessError::Numerical(n) if n.is_budget_exceeded() => EXIT_BUDGET,
        _ => EXIT_USAGE,
    }
}
