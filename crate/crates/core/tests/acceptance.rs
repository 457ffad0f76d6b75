//! Acceptance criteria, one line each. Runs without the libtest harness so
//! the summary is always printed; exits nonzero if any criterion fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rug::Float;

use common::*;
use ellcorr::engine::{lambda_limit_check, verify_isotropic, CorrTable};
use ellcorr::numerics::{
    check_pi_to_k_at_zero, eval_value, toeplitz_diag, toeplitz_row, verify_c01_forms, verify_pi_identity, verify_pi_pair,
    ParamPoint, PrecisionConfig, Regime,
};
use ellcorr::ode::{annihilator_fixed_nu, expected_order, verify_low_row_operator, ROW_OPERATOR_POINTS};
use ellcorr::series::pi_lambda_series;

const SEED: u64 = 20240601;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome { passed, detail: detail.into() }
}

fn golden_formulas() -> Outcome {
    let t = CorrTable::build(2).unwrap();
    let mut bad = Vec::new();
    for (m, n, src) in C_FORMS {
        if t.c_entry(m, n).unwrap() != val(src) {
            bad.push(format!("C({m},{n})"));
        }
    }
    for (m, n, src) in C_DUAL_FORMS {
        if t.c_dual(m, n).unwrap() != val(src) {
            bad.push(format!("C_d({m},{n})"));
        }
    }
    for (m, n, src) in C_LOW_FORMS {
        if t.low_temp(m, n).unwrap() != val(src) {
            bad.push(format!("C_<({m},{n})"));
        }
    }
    let total = C_FORMS.len() + C_DUAL_FORMS.len() + C_LOW_FORMS.len();
    outcome(bad.is_empty(), format!("{}/{total} closed forms match {bad:?}", total - bad.len()))
}

fn overdetermination(t: &CorrTable) -> Outcome {
    let r = t.audit();
    let rel: Vec<_> = r.checks.iter().filter(|c| !matches!(c.check.as_str(), "duality" | "duality_involution" | "swap")).collect();
    let bad = rel.iter().filter(|c| !c.zero).count();
    let origin = rel.iter().filter(|c| c.check.starts_with("boundary") && c.zero).count();
    outcome(bad == 0 && origin == 2, format!("{} relation instances, {bad} nonzero, boundary relations at origin: {origin}/2", rel.len()))
}

fn duality(t: &CorrTable) -> Outcome {
    let mut n_checks = 0;
    let mut bad = Vec::new();
    for (m, n) in t.points() {
        let c = t.c_pi(m, n).unwrap();
        let d = t.c_dual_pi(m, n).unwrap();
        n_checks += 2;
        if c.duality_map() != *d {
            bad.push(format!("map({m},{n})"));
        }
        if c.duality_map().duality_map() != *c {
            bad.push(format!("involution({m},{n})"));
        }
    }
    outcome(bad.is_empty(), format!("{n_checks} exact checks over M,N <= {}, failures {bad:?}", t.nmax()))
}

fn numeric_cross_validation() -> Outcome {
    let t = CorrTable::build(5).unwrap();
    let prec = PrecisionConfig::with_digits(50).bits();
    let mut worst = 0.0f64;
    let mut count = 0;
    for (h, v) in HIGH_POINTS.iter().chain(&LOW_POINTS) {
        let p = ParamPoint::from_f64(*h, *v, prec).unwrap();
        let entry = |m, n| if p.regime() == Regime::High { t.c_entry(m, n) } else { t.low_temp(m, n) }.unwrap();
        for n in 0..=5 {
            for (sym, oracle) in [(entry(0, n), toeplitz_row(n, &p)), (entry(n, n), toeplitz_diag(n, &p))] {
                let x = eval_value(&sym, &p).unwrap();
                let diff = Float::with_val(prec, &x - &oracle.unwrap().value).abs().to_f64();
                worst = worst.max(diff);
                count += 1;
            }
        }
    }
    outcome(worst < 1e-12, format!("{count} comparisons, max |table - Toeplitz| = {worst:.2e} (tol 1e-12)"))
}

fn identity_suite() -> Outcome {
    let cfg = PrecisionConfig::with_digits(50);
    let pi = verify_pi_identity(100, SEED, &cfg).unwrap();
    let third = verify_pi_pair(100, SEED, &cfg).unwrap();
    let four = check_pi_to_k_at_zero(&cfg).unwrap();
    let c01 = verify_c01_forms(10, SEED, &cfg).unwrap();
    let ok = pi.samples.len() == 100
        && pi.max_residual < 1e-25
        && third.samples.len() == 100
        && third.max_residual < 1e-25
        && four.exact
        && four.passed
        && c01.samples.len() == 20
        && c01.max_residual < 1e-20;
    outcome(
        ok,
        format!(
            "pi_transform max {:.1e} ({} pts), pi_pair max {:.1e}, x=0 exact {}, C(0,1) forms max {:.1e} ({} pts)",
            pi.max_residual,
            pi.samples.len(),
            third.max_residual,
            four.exact,
            c01.max_residual,
            c01.samples.len()
        ),
    )
}

fn isotropic(t: &CorrTable) -> Outcome {
    let r = verify_isotropic(t, &PrecisionConfig::with_digits(50)).unwrap();
    let need = |check: &str, m, n| r.checks.iter().any(|c| c.check == check && c.m == m && c.n == n && c.passed);
    let forms = need("closed_form", 0, 2) && need("closed_form_dual", 0, 2) && need("closed_form", 1, 2) && need("closed_form_dual", 1, 2);
    let parity = need("parity_identity", 0, 1) && need("parity_identity", 1, 2);
    let ok = forms && parity && (r.small_k_ratio - 1.0).abs() < 1e-3 && r.passed();
    outcome(
        ok,
        format!(
            "closed forms {forms}, parity identity {parity}, small-k ratio {:.7}, {} checks all passed {}",
            r.small_k_ratio,
            r.checks.len(),
            r.passed()
        ),
    )
}

fn lambda_limit(t: &CorrTable) -> Outcome {
    let mut parts = Vec::new();
    let mut ok = true;
    for (m, n) in [(0, 1), (0, 2), (1, 2), (0, 3)] {
        let r = lambda_limit_check(m, n, t).unwrap();
        ok &= r.passed();
        parts.push(format!("({m},{n}):{}", if r.passed() { "ok" } else { "FAIL" }));
    }
    let s = pi_lambda_series(6).unwrap();
    let series_ok = PI_SERIES.iter().all(|(e, src)| s.coeff(*e) == val(src));
    ok &= series_ok;
    outcome(ok, format!("limits {}, Pi series through lambda^6 {series_ok}", parts.join(" ")))
}

fn ode(t: &CorrTable) -> Outcome {
    let mut parts = Vec::new();
    let mut ok = true;
    for (m, n) in [(0, 1), (0, 2), (1, 2), (0, 3)] {
        let want = expected_order(m, n);
        match annihilator_fixed_nu(t.c_pi(m, n).unwrap()) {
            Ok(a) => {
                let stages: Vec<usize> = (m + 1..=n + 1).collect();
                let good = a.op.order() == want && a.rank == want && a.support == want && a.stage_orders == stages;
                ok &= good;
                parts.push(format!("({m},{n}) order {} stages {:?}", a.op.order(), a.stage_orders));
            }
            Err(e) => {
                ok = false;
                parts.push(format!("({m},{n}) error {e}"));
            }
        }
    }
    let c1 = verify_low_row_operator(&t.low_temp(0, 1).unwrap(), &ROW_OPERATOR_POINTS, &PrecisionConfig::with_digits(60)).unwrap();
    ok &= c1.passed && c1.samples.len() == 5;
    outcome(ok, format!("{}; printed C_<(0,1) operator max residual {:.1e}", parts.join(", "), c1.max_residual))
}

type Criterion<'a> = (&'static str, Duration, Box<dyn Fn() -> Outcome + 'a>);

fn main() -> ExitCode {
    let build = Instant::now();
    let t4 = CorrTable::build(4).unwrap();
    // the audit criterion is charged with building the table it audits
    let build_time = build.elapsed();
    let criteria: Vec<Criterion> = vec![
        ("golden formulas", Duration::from_secs(30), Box::new(golden_formulas)),
        ("overdetermination audit", Duration::from_secs(120), Box::new(|| overdetermination(&t4))),
        ("duality", Duration::MAX, Box::new(|| duality(&t4))),
        ("numeric cross-validation", Duration::from_secs(120), Box::new(numeric_cross_validation)),
        ("identity suite", Duration::MAX, Box::new(identity_suite)),
        ("isotropic", Duration::MAX, Box::new(|| isotropic(&t4))),
        ("lambda limit", Duration::MAX, Box::new(|| lambda_limit(&t4))),
        ("ODE", Duration::from_secs(300), Box::new(|| ode(&t4))),
    ];
    let mut failures = 0;
    for (i, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = run();
        let took = start.elapsed() + if i == 1 { build_time } else { Duration::ZERO };
        let passed = o.passed && took < *budget;
        failures += usize::from(!passed);
        let limit = if *budget == Duration::MAX { String::new() } else { format!(" / {}s", budget.as_secs()) };
        println!(
            "criterion {} [{name}]: {} ({:.1}s{limit}) {}",
            i + 1,
            if passed { "PASS" } else { "FAIL" },
            took.as_secs_f64(),
            o.detail
        );
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failures} criteria failed");
        ExitCode::FAILURE
    }
}
