use hankel_asymptotics::harness::{
    read_csv, read_records, run_eval, run_sweep, run_validate, sweep_point, write_csv, AlphaSpec, LambdaGrid,
    OutputFormat, RecordStatus, RunConfig, SweepRecord, SweepSummary,
};
use num_complex::Complex64;
use proptest::prelude::*;

fn config(alpha: AlphaSpec, count: usize) -> RunConfig {
    RunConfig {
        alpha,
        lambda_grid: LambdaGrid { min: 20.0, max: 100.0, count },
        tol: 1e-11,
        ..RunConfig::default()
    }
}

#[test]
fn sweep_records_follow_the_grid() {
    let cfg = config(AlphaSpec::OnePlusInvSqrtLambda, 5);
    let recs = run_sweep(&cfg).unwrap();
    let grid = cfg.lambda_grid.points();
    assert_eq!(recs.len(), 5);
    for (r, &lambda) in recs.iter().zip(&grid) {
        assert_eq!(r.lambda, lambda);
        assert_eq!(r.alpha, 1.0 + 1.0 / lambda.sqrt());
        assert!(r.status.is_ok());
        let d = r.l_ref.unwrap() - r.l_reg.unwrap();
        assert!((d - r.d_n.unwrap()).norm() < 1e-15);
        assert_eq!(r.scaled_d.unwrap(), lambda.powf(2.5) * r.d_n.unwrap().norm());
    }
    let summary = SweepSummary::from_records(&recs);
    assert!(summary.scaled_d.unwrap().ratio < 3.0);
    assert_eq!(summary.failed, 0);
}

#[test]
fn identical_configs_write_identical_files() {
    let dir = tempfile::tempdir().unwrap();
    for format in [OutputFormat::Csv, OutputFormat::Json] {
        let mut bytes = Vec::new();
        for (run, workers) in [(0, 1), (1, 4)] {
            let path = dir.path().join(format!("run{run}.out"));
            let cfg = RunConfig {
                output_path: Some(path.to_string_lossy().into_owned()),
                output_format: format,
                workers,
                ..config(AlphaSpec::Fixed(2.0), 6)
            };
            let recs = run_sweep(&cfg).unwrap();
            assert_eq!(read_records(&path, format).unwrap(), recs);
            bytes.push(std::fs::read(&path).unwrap());
        }
        assert_eq!(bytes[0], bytes[1]);
    }
}

#[test]
fn poisoned_point_fails_alone() {
    let cfg = RunConfig {
        require_plain: true,
        ..config(AlphaSpec::Fixed(1.0), 3)
    };
    let recs = run_sweep(&cfg).unwrap();
    assert_eq!(recs.len(), 3);
    for r in &recs {
        assert!(matches!(r.status, RecordStatus::Failed(_)));
        assert!(r.scaled_d.is_some() && r.scaled_e.is_none());
    }
    // an invalid alpha is reported on its record too
    let r = sweep_point(-1.0, 30.0, 3, 1e-10, false);
    assert!(matches!(r.status, RecordStatus::Failed(_)));
}

#[test]
fn validation_battery() {
    let ok = run_validate(1e-9, None).unwrap();
    assert_eq!(ok.checks.len(), 8);
    for c in &ok.checks {
        assert!(c.passed, "{} residual {}", c.name, c.residual);
    }
    let strict = run_validate(1e-30, None).unwrap();
    assert!(strict.checks.iter().all(|c| !c.passed));
    let one = run_validate(1e-9, Some("plemelj_limit")).unwrap();
    assert_eq!(one.checks.len(), 1);
    assert_eq!(one.checks[0].name, "plemelj_limit");
}

#[test]
fn eval_examples() {
    let args = |v: &[&str]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>();
    let b = run_eval("bleistein_B", &args(&["0"])).unwrap().result;
    assert!((b["value"]["re"].as_f64().unwrap() - 0.6266570686577501).abs() < 1e-15);
    assert!((b["value"]["im"].as_f64().unwrap() + 0.6266570686577501).abs() < 1e-15);

    let l = run_eval("reference_L", &args(&["5", "50"])).unwrap().result;
    let reg = run_eval("L_asymptotic_regularized", &args(&["5", "50", "3"])).unwrap().result;
    let get = |v: &serde_json::Value| Complex64::new(v["re"].as_f64().unwrap(), v["im"].as_f64().unwrap());
    let d = (get(&l["value"]) - get(&reg["value"])).norm();
    assert!(d < 50f64.powf(-2.5));
}

fn finite() -> impl Strategy<Value = f64> {
    prop_oneof![-1e300..1e300f64, -1.0..1.0f64, Just(0.0), Just(-0.0), Just(f64::MIN_POSITIVE), Just(5e-324)]
}

fn maybe_complex() -> impl Strategy<Value = Option<Complex64>> {
    proptest::option::of((finite(), finite()).prop_map(|(a, b)| Complex64::new(a, b)))
}

fn record() -> impl Strategy<Value = SweepRecord> {
    (
        (0.01..10.0f64, 1.0..1e3f64, 1u32..9),
        [maybe_complex(), maybe_complex(), maybe_complex(), maybe_complex(), maybe_complex(), maybe_complex()],
        (proptest::option::of(finite()), proptest::option::of(finite())),
        prop_oneof![
            Just(RecordStatus::Ok),
            "[ -~]{0,30}".prop_map(RecordStatus::Failed),
            "[ -~]{0,30}".prop_map(RecordStatus::BudgetExceeded),
        ],
    )
        .prop_map(|((alpha, lambda, n), c, (sd, se), status)| SweepRecord {
            alpha,
            lambda,
            n,
            l_ref: c[0],
            l_reg: c[1],
            l_plain: c[2],
            k: c[3],
            d_n: c[4],
            e_n: c[5],
            scaled_d: sd,
            scaled_e: se,
            status,
        })
}

proptest! {
    #[test]
    fn csv_round_trip(recs in proptest::collection::vec(record(), 0..6)) {
        let mut buf = Vec::new();
        write_csv(&recs, &mut buf).unwrap();
        let back = read_csv(buf.as_slice()).unwrap();
        prop_assert_eq!(back.len(), recs.len());
        for (a, b) in back.iter().zip(&recs) {
            // compare bit patterns so that -0.0 and 0.0 are told apart
            let bits = |r: &SweepRecord| {
                let mut v = vec![r.alpha.to_bits(), r.lambda.to_bits()];
                for z in [r.l_ref, r.l_reg, r.l_plain, r.k, r.d_n, r.e_n].iter().flatten() {
                    v.extend([z.re.to_bits(), z.im.to_bits()]);
                }
                v.extend(r.scaled_d.iter().chain(r.scaled_e.iter()).map(|x| x.to_bits()));
                v
            };
            prop_assert_eq!(bits(a), bits(b));
            prop_assert_eq!(a, b);
        }
    }
}
