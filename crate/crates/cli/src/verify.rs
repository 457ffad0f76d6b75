//! Verification suites and their JSON report.

use std::thread;

use anyhow::Result;
use rug::Float;
use serde::Serialize;
use serde_json::{json, Value};

use crate::config::RunConfig;
use ellcorr::engine::{lambda_limit_check, verify_isotropic, AuditReport, CorrTable};
use ellcorr::numerics::{
    check_pi_to_k_at_zero, eval_value, toeplitz_diag, toeplitz_row, verify_c01_forms, verify_pi_identity, verify_pi_pair,
    IdentityReport, ParamPoint, PrecisionConfig, Regime,
};
use ellcorr::ode::{annihilator, annihilator_fixed_nu, expected_order, verify_low_row_operator, ROW_OPERATOR_POINTS};
use ellcorr::series::check_pi_series;

pub const REPORT_SCHEMA_VERSION: u32 = 1;

/// Row and diagonal entries compared with the Toeplitz oracle go up to this N.
const ORACLE_NMAX: usize = 4;
/// Pairs (M, N) checked by the λ-limit and ODE suites.
const PAIRS: [(usize, usize); 4] = [(0, 1), (0, 2), (1, 2), (0, 3)];

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Recursions,
    Duality,
    Identities,
    Isotropic,
    Lambda,
    Ode,
    #[value(name = "appendixC1", alias = "appendix-c1", alias = "row-operator")]
    RowOperator,
    All,
}

impl Suite {
    const EACH: [Suite; 7] =
        [Suite::Recursions, Suite::Duality, Suite::Identities, Suite::Isotropic, Suite::Lambda, Suite::Ode, Suite::RowOperator];

    fn name(self) -> &'static str {
        match self {
            Suite::Recursions => "recursions",
            Suite::Duality => "duality",
            Suite::Identities => "identities",
            Suite::Isotropic => "isotropic",
            Suite::Lambda => "lambda",
            Suite::Ode => "ode",
            Suite::RowOperator => "appendixC1",
            Suite::All => "all",
        }
    }

    /// Smallest table the suite needs.
    fn table_size(self) -> usize {
        match self {
            Suite::Lambda | Suite::Ode | Suite::All => 3,
            Suite::Isotropic => 2,
            _ => 1,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub suite: &'static str,
    pub name: String,
    pub passed: bool,
    pub detail: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub suite: &'static str,
    pub nmax: usize,
    pub seed: u64,
    pub working_digits: u32,
    pub passed: bool,
    pub failures: usize,
    pub checks: Vec<Check>,
}

struct Ctx<'a> {
    cfg: &'a RunConfig,
    table: &'a CorrTable,
    samples: usize,
}

fn check(suite: Suite, name: impl Into<String>, passed: bool, detail: Value) -> Check {
    Check { suite: suite.name(), name: name.into(), passed, detail }
}

pub fn run(suite: Suite, cfg: &RunConfig, samples: usize) -> Result<Report> {
    let table = cfg.table(suite.table_size())?;
    let ctx = &Ctx { cfg, table: &table, samples };
    let checks = if suite == Suite::All {
        let parts: Vec<Result<Vec<Check>>> = thread::scope(|s| {
            let handles: Vec<_> = Suite::EACH.iter().map(|&x| s.spawn(move || run_one(x, ctx))).collect();
            handles.into_iter().map(|h| h.join().expect("suite thread panicked")).collect()
        });
        parts.into_iter().collect::<Result<Vec<_>>>()?.concat()
    } else {
        run_one(suite, ctx)?
    };
    let failures = checks.iter().filter(|c| !c.passed).count();
    Ok(Report {
        schema_version: REPORT_SCHEMA_VERSION,
        suite: suite.name(),
        nmax: table.nmax(),
        seed: cfg.rng_seed,
        working_digits: cfg.precision.working_digits,
        passed: failures == 0,
        failures,
        checks,
    })
}

fn run_one(suite: Suite, ctx: &Ctx) -> Result<Vec<Check>> {
    match suite {
        Suite::Recursions => recursions(ctx),
        Suite::Duality => Ok(duality(&ctx.table.audit())),
        Suite::Identities => identities(ctx),
        Suite::Isotropic => isotropic(ctx),
        Suite::Lambda => lambda(ctx),
        Suite::Ode => Ok(ode(ctx)),
        Suite::RowOperator => row_operator(ctx),
        Suite::All => unreachable!("expanded by the caller"),
    }
}

fn is_duality_check(name: &str) -> bool {
    matches!(name, "duality" | "duality_involution" | "swap")
}

fn recursions(ctx: &Ctx) -> Result<Vec<Check>> {
    let audit = ctx.table.audit();
    let mut out: Vec<Check> = audit
        .checks
        .iter()
        .filter(|c| !is_duality_check(&c.check))
        .map(|c| {
            check(Suite::Recursions, format!("{}({},{})", c.check, c.m, c.n), c.zero, json!({ "residual_terms": c.residual_terms }))
        })
        .collect();
    let prec = ctx.cfg.precision.bits();
    let tol = ctx.cfg.precision.physics_tolerance;
    for &(h, v) in &ctx.cfg.sample_points {
        let p = ParamPoint::from_f64(h, v, prec)?;
        for n in 0..=ctx.table.nmax().min(ORACLE_NMAX) {
            for (name, m) in [("row", 0), ("diagonal", n)] {
                let entry = match p.regime() {
                    Regime::High => ctx.table.c_entry(m, n)?,
                    Regime::Low => ctx.table.low_temp(m, n)?,
                };
                let oracle = if m == 0 { toeplitz_row(n, &p)? } else { toeplitz_diag(n, &p)? };
                let diff = Float::with_val(prec, eval_value(&entry, &p)? - &oracle.value).abs().to_f64();
                out.push(check(
                    Suite::Recursions,
                    format!("oracle_{name}({m},{n})@({h},{v})"),
                    diff < tol,
                    json!({ "abs_difference": diff, "tolerance": tol, "oracle_error_estimate": oracle.error_estimate }),
                ));
            }
        }
    }
    Ok(out)
}

fn duality(audit: &AuditReport) -> Vec<Check> {
    audit
        .checks
        .iter()
        .filter(|c| is_duality_check(&c.check))
        .map(|c| check(Suite::Duality, format!("{}({},{})", c.check, c.m, c.n), c.zero, json!({ "residual_terms": c.residual_terms })))
        .collect()
}

fn identity_check(r: &IdentityReport, expected: usize) -> Check {
    check(
        Suite::Identities,
        r.name.clone(),
        r.passed && r.samples.len() == expected,
        json!({
            "samples": r.samples.len(),
            "skipped": r.skipped,
            "max_residual": r.max_residual,
            "median_residual": r.median_residual,
            "tolerance": r.tolerance,
        }),
    )
}

fn identities(ctx: &Ctx) -> Result<Vec<Check>> {
    let cfg = &ctx.cfg.precision;
    let seed = ctx.cfg.rng_seed;
    let per_regime = ctx.samples.div_ceil(10).max(1);
    let four = check_pi_to_k_at_zero(cfg)?;
    Ok(vec![
        identity_check(&verify_pi_identity(ctx.samples, seed, cfg)?, ctx.samples),
        identity_check(&verify_pi_pair(ctx.samples, seed, cfg)?, ctx.samples),
        identity_check(&verify_c01_forms(per_regime, seed, cfg)?, 2 * per_regime),
        check(Suite::Identities, "x0_evaluation", four.passed, serde_json::to_value(&four)?),
    ])
}

fn isotropic(ctx: &Ctx) -> Result<Vec<Check>> {
    let r = verify_isotropic(ctx.table, &ctx.cfg.precision)?;
    Ok(r.checks
        .into_iter()
        .map(|c| check(Suite::Isotropic, format!("{}({},{})", c.check, c.m, c.n), c.passed, json!({ "detail": c.detail })))
        .collect())
}

fn lambda(ctx: &Ctx) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for (m, n) in PAIRS {
        let r = lambda_limit_check(m, n, ctx.table)?;
        out.push(check(Suite::Lambda, format!("limit({m},{n})"), r.passed(), serde_json::to_value(&r)?));
    }
    let prec = ctx.cfg.precision.bits();
    for (s, lam) in [(0.7, 0.1), (0.5, 0.05), (0.9, 0.08)] {
        let c = check_pi_series(&Float::with_val(prec, s), &Float::with_val(prec, lam), 24)?;
        out.push(check(Suite::Lambda, format!("pi_series@({s},{lam})"), c.residual < 1e-20, serde_json::to_value(&c)?));
    }
    Ok(out)
}

fn ode(ctx: &Ctx) -> Vec<Check> {
    let results: Vec<Check> = thread::scope(|s| {
        let handles: Vec<_> = PAIRS
            .iter()
            .map(|&(m, n)| {
                s.spawn(move || {
                    let want = expected_order(m, n);
                    let stages: Vec<usize> = (m + 1..=n + 1).collect();
                    let name = format!("annihilator({m},{n})");
                    match ctx.table.c_pi(m, n).map_err(anyhow::Error::from).and_then(|v| Ok(annihilator_fixed_nu(v)?)) {
                        Ok(a) => {
                            let passed =
                                a.op.order() == want && a.rank == want && a.support == want && a.stage_orders == stages;
                            let detail = json!({
                                "order": a.op.order(),
                                "expected_order": want,
                                "rank": a.rank,
                                "support": a.support,
                                "stage_orders": a.stage_orders,
                            });
                            check(Suite::Ode, name, passed, detail)
                        }
                        Err(e) => check(Suite::Ode, name, false, json!({ "error": e.to_string() })),
                    }
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("ODE thread panicked")).collect()
    });
    let mut out = results;
    let full = ctx.table.c_pi(0, 1).map_err(anyhow::Error::from).and_then(|v| Ok(annihilator(v)?));
    out.push(match full {
        Ok(a) => check(
            Suite::Ode,
            "annihilator_full_field(0,1)",
            a.op.order() == expected_order(0, 1),
            json!({ "order": a.op.order(), "operator": a.op.to_json() }),
        ),
        Err(e) => check(Suite::Ode, "annihilator_full_field(0,1)", false, json!({ "error": e.to_string() })),
    });
    out
}

fn row_operator(ctx: &Ctx) -> Result<Vec<Check>> {
    let digits = ctx.cfg.precision.working_digits.max(60);
    let r = verify_low_row_operator(&ctx.table.low_temp(0, 1)?, &ROW_OPERATOR_POINTS, &PrecisionConfig::with_digits(digits))?;
    Ok(vec![check(Suite::RowOperator, "low_temperature_row_operator", r.passed, serde_json::to_value(&r)?)])
}
