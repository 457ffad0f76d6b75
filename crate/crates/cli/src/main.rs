//! `ellcorr`: exact correlation table, rendering, numeric evaluation,
//! verification suites and first-principles oracles.

mod config;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rug::Float;
use serde_json::json;

use config::{Format, RunConfig, DEFAULT_CACHE, DEFAULT_POINTS, DEFAULT_SEED};
use ellcorr::ellring::{latex_document, EllValue, Variables};
use ellcorr::engine::{CorrTable, DEFAULT_NMAX};
use ellcorr::numerics::transfer::row_correlation;
use ellcorr::numerics::{eval_value, toeplitz_diag, toeplitz_row, OracleValue, ParamPoint, PrecisionConfig, Regime};
use verify::Suite;

const JSON_SCHEMA_VERSION: u32 = 1;
const TOEPLITZ_NMAX: usize = 12;

#[derive(Parser)]
#[command(name = "ellcorr", version, about = "Exact anisotropic Ising correlations as polynomials in complete elliptic integrals")]
struct Cli {
    #[command(flatten)]
    run: RunArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct RunArgs {
    /// Largest lattice index M, N kept in the table.
    #[arg(long = "nmax", visible_alias = "Nmax", global = true, default_value_t = DEFAULT_NMAX)]
    nmax: usize,
    /// Working precision in decimal digits.
    #[arg(long, global = true, default_value_t = 50)]
    digits: u32,
    /// Table cache file.
    #[arg(long, global = true, env = "ELLCORR_CACHE", default_value = DEFAULT_CACHE)]
    cache: PathBuf,
    /// Build the table in memory only.
    #[arg(long, global = true)]
    no_cache: bool,
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Sample point "s_h,s_v" for numeric comparisons (repeatable).
    #[arg(long = "point", global = true, value_parser = parse_point)]
    points: Vec<(f64, f64)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Kind {
    #[value(name = "C")]
    C,
    #[value(name = "C_d")]
    CDual,
    /// C_< in the low-temperature integrals Ẽ_<, K̃_<, Π̃_<.
    #[value(name = "C_low")]
    CLow,
}

#[derive(Subcommand)]
enum Command {
    /// Print the exact expression of C(M,N), C_d(M,N) or C_<(M,N).
    Correlation {
        m: usize,
        n: usize,
        #[arg(long, value_enum, default_value_t = Kind::C)]
        kind: Kind,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Wrap LaTeX output in a compilable document.
        #[arg(long)]
        standalone: bool,
    },
    /// Evaluate an entry at (s_h, s_v), with the Toeplitz oracle where one exists.
    Eval {
        m: usize,
        n: usize,
        #[arg(long, value_enum, default_value_t = Kind::C)]
        kind: Kind,
        #[arg(long = "s-h")]
        s_h: String,
        #[arg(long = "s-v")]
        s_v: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run a verification suite; prints a JSON report, exit status 1 on failure.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        /// Sample count for the sampled identities.
        #[arg(long, default_value_t = 100)]
        samples: usize,
        /// Also write the report to this file.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Numeric correlations from first principles.
    Oracle {
        #[command(subcommand)]
        kind: OracleKind,
    },
}

#[derive(Subcommand)]
enum OracleKind {
    /// C(0,N) as an N×N Toeplitz determinant.
    #[command(name = "toeplitz_row", alias = "toeplitz-row")]
    ToeplitzRow {
        n: usize,
        #[arg(long = "s-h")]
        s_h: String,
        #[arg(long = "s-v")]
        s_v: String,
    },
    /// C(N,N) as an N×N Toeplitz determinant.
    #[command(name = "toeplitz_diag", alias = "toeplitz-diag")]
    ToeplitzDiag {
        n: usize,
        #[arg(long = "s-h")]
        s_h: String,
        #[arg(long = "s-v")]
        s_v: String,
    },
    /// Row correlation on a periodic strip, in double precision.
    #[command(name = "transfer_matrix", alias = "transfer-matrix")]
    TransferMatrix {
        n: usize,
        #[arg(long = "s-h")]
        s_h: f64,
        #[arg(long = "s-v")]
        s_v: f64,
        #[arg(long, default_value_t = 10)]
        width: usize,
    },
}

fn parse_point(s: &str) -> Result<(f64, f64), String> {
    let (h, v) = s.split_once(',').ok_or("expected s_h,s_v")?;
    let read = |x: &str| x.trim().parse::<f64>().map_err(|e| format!("{x:?}: {e}"));
    Ok((read(h)?, read(v)?))
}

impl RunArgs {
    fn config(&self, format: Format) -> RunConfig {
        RunConfig {
            nmax: self.nmax,
            precision: PrecisionConfig::with_digits(self.digits),
            cache_path: (!self.no_cache).then(|| self.cache.clone()),
            output_format: format,
            sample_points: if self.points.is_empty() { DEFAULT_POINTS.to_vec() } else { self.points.clone() },
            rng_seed: self.seed,
        }
    }
}

fn label(kind: Kind, m: usize, n: usize) -> String {
    match kind {
        Kind::C => format!("C({m},{n})"),
        Kind::CDual => format!("C_d({m},{n})"),
        Kind::CLow => format!("C_<({m},{n})"),
    }
}

fn entry(t: &CorrTable, kind: Kind, m: usize, n: usize) -> Result<EllValue> {
    Ok(match kind {
        Kind::C => t.c_entry(m, n)?,
        Kind::CDual => t.c_dual(m, n)?,
        Kind::CLow => t.low_temp(m, n)?,
    })
}

fn correlation(cfg: &RunConfig, m: usize, n: usize, kind: Kind, standalone: bool) -> Result<()> {
    let t = cfg.table(m.max(n))?;
    let v = entry(&t, kind, m, n)?;
    let vars = if kind == Kind::CLow { Variables::Low } else { Variables::High };
    match cfg.output_format {
        Format::Text => println!("{} = {v}", label(kind, m, n)),
        Format::Latex => {
            let lhs = label(kind, m, n);
            let body = v.to_latex(vars);
            if standalone {
                print!("{}", latex_document(&lhs, &body));
            } else {
                println!("{lhs} = {body}");
            }
        }
        Format::Json => {
            let out = json!({
                "schema_version": JSON_SCHEMA_VERSION,
                "kind": label(kind, m, n),
                "variables": if kind == Kind::CLow { "low" } else { "high" },
                "value": v,
            });
            println!("{}", serde_json::to_string_pretty(&out)?);
        }
    }
    Ok(())
}

/// The Toeplitz oracle for row, column and diagonal entries.
fn oracle_for(m: usize, n: usize, p: &ParamPoint) -> Result<Option<(&'static str, OracleValue)>> {
    if m == n && n <= TOEPLITZ_NMAX {
        return Ok(Some(("toeplitz_diag", toeplitz_diag(n, p)?)));
    }
    if m == 0 && n <= TOEPLITZ_NMAX {
        return Ok(Some(("toeplitz_row", toeplitz_row(n, p)?)));
    }
    if n == 0 && m <= TOEPLITZ_NMAX {
        return Ok(Some(("toeplitz_row", toeplitz_row(m, &p.swapped())?)));
    }
    Ok(None)
}

/// Returns whether the value agrees with the oracle (true when there is none).
fn eval(cfg: &RunConfig, m: usize, n: usize, kind: Kind, s_h: &str, s_v: &str) -> Result<bool> {
    let prec = cfg.precision.bits();
    let digits = cfg.precision.working_digits as usize;
    let p = ParamPoint::parse(s_h, s_v, prec)?;
    let k = p.k().to_f64();
    match (kind, p.regime()) {
        (Kind::CDual, Regime::Low) => bail!("C_d is written in Ẽ(k), K̃(k), Π̃ and needs k < 1; here k = {k}"),
        (Kind::CLow, Regime::High) => bail!("C_< is written in the integrals at modulus 1/k and needs k > 1; here k = {k}"),
        _ => {}
    }
    let t = cfg.table(m.max(n))?;
    // at a low-temperature point the physical C(M,N) is C_<(M,N)
    let v = match (kind, p.regime()) {
        (Kind::C, Regime::Low) => t.low_temp(m, n)?,
        _ => entry(&t, kind, m, n)?,
    };
    let x = eval_value(&v, &p)?;
    let oracle = if kind == Kind::CDual { None } else { oracle_for(m, n, &p)? };
    let tol = cfg.precision.physics_tolerance;
    let diff = oracle.as_ref().map(|(_, o)| Float::with_val(prec, &x - &o.value).abs().to_f64());
    let agrees = diff.is_none_or(|d| d < tol);
    let regime = if p.regime() == Regime::High { "high" } else { "low" };
    if cfg.output_format == Format::Json {
        let out = json!({
            "schema_version": JSON_SCHEMA_VERSION,
            "entry": label(kind, m, n),
            "s_h": s_h,
            "s_v": s_v,
            "k": k,
            "regime": regime,
            "value": x.to_string_radix(10, Some(digits)),
            "oracle": oracle.as_ref().map(|(name, o)| json!({ "method": name, "result": o.to_json(digits) })),
            "abs_difference": diff,
            "tolerance": tol,
            "agrees": agrees,
        });
        println!("{}", serde_json::to_string_pretty(&out)?);
    } else {
        println!("{} at s_h = {s_h}, s_v = {s_v} (k = {k}, {regime} temperature)", label(kind, m, n));
        println!("value   {}", x.to_string_radix(10, Some(digits)));
        if let (Some((name, o)), Some(d)) = (&oracle, diff) {
            println!("oracle  {} ({name}, error estimate {:.1e})", o.value.to_string_radix(10, Some(digits)), o.error_estimate);
            println!("|diff|  {d:.3e} ({})", if agrees { "agrees" } else { "DISAGREES" });
        }
    }
    Ok(agrees)
}

fn toeplitz(cfg: &RunConfig, name: &str, n: usize, s_h: &str, s_v: &str) -> Result<()> {
    if n > TOEPLITZ_NMAX {
        bail!("Toeplitz oracle is limited to N ≤ {TOEPLITZ_NMAX}");
    }
    let p = ParamPoint::parse(s_h, s_v, cfg.precision.bits())?;
    let o = if name == "toeplitz_row" { toeplitz_row(n, &p)? } else { toeplitz_diag(n, &p)? };
    let digits = cfg.precision.working_digits as usize;
    println!("{}", serde_json::to_string_pretty(&json!({ "oracle": name, "n": n, "s_h": s_h, "s_v": s_v, "result": o.to_json(digits) }))?);
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode> {
    let format = match &cli.command {
        Command::Correlation { format, .. } | Command::Eval { format, .. } => *format,
        _ => Format::Json,
    };
    let cfg = cli.run.config(format);
    cfg.validate()?;
    match cli.command {
        Command::Correlation { m, n, kind, standalone, .. } => correlation(&cfg, m, n, kind, standalone)?,
        Command::Eval { m, n, kind, s_h, s_v, .. } => {
            if !eval(&cfg, m, n, kind, &s_h, &s_v)? {
                return Ok(ExitCode::FAILURE);
            }
        }
        Command::Verify { suite, samples, output } => {
            let report = verify::run(suite, &cfg, samples)?;
            let text = serde_json::to_string_pretty(&report)?;
            if let Some(path) = output {
                std::fs::write(&path, format!("{text}\n"))?;
            }
            println!("{text}");
            eprintln!(
                "verify {}: {} checks, {} failed",
                report.suite,
                report.checks.len(),
                report.failures
            );
            if !report.passed {
                return Ok(ExitCode::FAILURE);
            }
        }
        Command::Oracle { kind } => match kind {
            OracleKind::ToeplitzRow { n, s_h, s_v } => toeplitz(&cfg, "toeplitz_row", n, &s_h, &s_v)?,
            OracleKind::ToeplitzDiag { n, s_h, s_v } => toeplitz(&cfg, "toeplitz_diag", n, &s_h, &s_v)?,
            OracleKind::TransferMatrix { n, s_h, s_v, width } => {
                let r = row_correlation(s_h, s_v, n, width)?;
                println!("{}", serde_json::to_string_pretty(&r)?);
                eprintln!("note: {}", r.caveat);
            }
        },
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
