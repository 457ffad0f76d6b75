//! Numeric verification of the elliptic-integral identities used by the
//! symbolic layer, on seeded random samples.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rug::{Float, Integer};
use serde::Serialize;

use super::elliptic::{ell_k, ell_pi};
use super::point::ParamPoint;
use super::{NumericError, PrecisionConfig};
use crate::coeffield::{IntPoly, RatFunc};

#[derive(Clone, Debug, Serialize)]
pub struct Sample {
    pub params: Vec<f64>,
    pub residual: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub name: String,
    pub tolerance: f64,
    pub samples: Vec<Sample>,
    /// Samples drawn outside the domain of the integrals and not evaluated.
    pub skipped: usize,
    pub max_residual: f64,
    pub median_residual: f64,
    pub passed: bool,
}

impl IdentityReport {
    fn new(name: &str, tolerance: f64, samples: Vec<Sample>, skipped: usize) -> Self {
        let mut r: Vec<f64> = samples.iter().map(|s| s.residual).collect();
        r.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let max = r.last().copied().unwrap_or(0.0);
        let median = if r.is_empty() { 0.0 } else { r[r.len() / 2] };
        IdentityReport {
            name: name.into(),
            tolerance,
            passed: !samples.is_empty() && max < tolerance,
            samples,
            skipped,
            max_residual: max,
            median_residual: median,
        }
    }
}

fn f(prec: u32, v: f64) -> Float {
    Float::with_val(prec, v)
}

/// Residual of
/// 4(z−1)(z²−k²)(z−k²)Π̃(z,k) + (z²+k²−2z)(z²+k²−2k²z)Π̃(R,k) − (z²−k²)(z²−2z−2k²z+3k²)K̃(k),
/// R = 4k²z(z−1)(z−k²)/(z²−k²)². `None` when R ≥ 1.
pub fn pi_identity_residual(z: &Float, k: &Float) -> Result<Option<Float>, NumericError> {
    let p = z.prec().max(k.prec());
    let k2 = Float::with_val(p, k * k);
    let z2 = Float::with_val(p, z * z);
    let zm1 = Float::with_val(p, z - 1u32);
    let zmk2 = Float::with_val(p, z - &k2);
    let d = Float::with_val(p, &z2 - &k2);
    if d.is_zero() {
        return Ok(None);
    }
    let r = Float::with_val(p, &k2 * z) * 4u32 * &zm1 * &zmk2 / Float::with_val(p, &d * &d);
    if r >= 1 {
        return Ok(None);
    }
    let c1 = Float::with_val(p, &zm1 * &d) * &zmk2 * 4u32;
    let c2 = (Float::with_val(p, &z2 + &k2) - Float::with_val(p, z * 2u32))
        * (Float::with_val(p, &z2 + &k2) - Float::with_val(p, &k2 * z) * 2u32);
    let rho = Float::with_val(p, &z2 - Float::with_val(p, z * 2u32)) - Float::with_val(p, &k2 * z) * 2u32 + Float::with_val(p, &k2 * 3u32);
    let c3 = Float::with_val(p, &d * &rho);
    let v = c1 * ell_pi(z, k)? + c2 * ell_pi(&r, k)? - c3 * ell_k(k)?;
    Ok(Some(v.abs()))
}

pub fn verify_pi_identity(samples: usize, seed: u64, cfg: &PrecisionConfig) -> Result<IdentityReport, NumericError> {
    let prec = cfg.bits();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let mut skipped = 0;
    while out.len() < samples {
        let k: f64 = rng.gen_range(0.01..0.5);
        let z: f64 = rng.gen_range(-0.9..0.9) * k * k;
        match pi_identity_residual(&f(prec, z), &f(prec, k))? {
            Some(r) => out.push(Sample { params: vec![z, k], residual: r.to_f64() }),
            None => skipped += 1,
        }
        if skipped > 10 * samples + 100 {
            break;
        }
    }
    Ok(IdentityReport::new("pi_transform", 1e-25, out, skipped))
}

/// |Π̃(−νk,k) + Π̃(−k/ν,k) − K̃(k) − [(1+νk)(1+k/ν)]^{−1/2}|
pub fn pi_pair_residual(k: &Float, nu: &Float) -> Result<Float, NumericError> {
    let p = k.prec().max(nu.prec());
    let a = Float::with_val(p, k * nu);
    let b = Float::with_val(p, k / nu);
    let tail = (Float::with_val(p, &a + 1u32) * Float::with_val(p, &b + 1u32)).recip_sqrt();
    let v = ell_pi(&Float::with_val(p, -&a), k)? + ell_pi(&Float::with_val(p, -&b), k)? - ell_k(k)? - tail;
    Ok(v.abs())
}

pub fn verify_pi_pair(samples: usize, seed: u64, cfg: &PrecisionConfig) -> Result<IdentityReport, NumericError> {
    let prec = cfg.bits();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(samples);
    for _ in 0..samples {
        let k: f64 = rng.gen_range(0.01..0.99);
        let nu: f64 = rng.gen_range(-2.0f64..2.0).exp();
        let r = pi_pair_residual(&f(prec, k), &f(prec, nu))?;
        out.push(Sample { params: vec![k, nu], residual: r.to_f64() });
    }
    Ok(IdentityReport::new("pi_pair", 1e-25, out, 0))
}

/// Coefficients A, B of K̃(y) = A·Π̃(x, y) + B·Π̃(R, y), as rational functions
/// of x (first indeterminate) and y (second):
/// A = 4(x−1)(x−y²)/ρ, B = (x²+y²−2x)(x²+y²−2y²x)/((x²−y²)ρ), ρ = x²−2x−2y²x+3y².
pub fn pi_to_k_coefficients() -> (RatFunc, RatFunc) {
    let x = IntPoly::s_h();
    let y2 = IntPoly::monomial(1, 0, 2);
    let one = IntPoly::one();
    let rho = IntPoly::from_terms([(2, 0, 1i64), (1, 0, -2), (1, 2, -2), (0, 2, 3)]);
    let a_num = x.sub(&one).mul(&x.sub(&y2)).scale(&Integer::from(4));
    let x2y2 = x.mul(&x).add(&y2);
    let b_num = x2y2.sub(&x.scale(&Integer::from(2))).mul(&x2y2.sub(&y2.mul(&x).scale(&Integer::from(2))));
    let b_den = x.mul(&x).sub(&y2).mul(&rho);
    (RatFunc::new(a_num, rho).unwrap(), RatFunc::new(b_num, b_den).unwrap())
}

#[derive(Clone, Debug, Serialize)]
pub struct PiToKAtZero {
    /// A and B restricted to x = 0, as exact rational functions of y.
    pub a_at_zero: String,
    pub b_at_zero: String,
    /// Whether A(0,y) = 4/3 and B(0,y) = −1/3 identically.
    pub exact: bool,
    /// Largest |A·Π̃(x,y) + B·Π̃(R,y) − K̃(y)| over the numeric samples.
    pub max_residual: f64,
    pub passed: bool,
}

fn restrict_first_to_zero(r: &RatFunc) -> Option<RatFunc> {
    let row0 = |p: &IntPoly| {
        let terms: Vec<(u32, u32, Integer)> = p
            .rows()
            .first()
            .map(|row| row.iter().enumerate().filter(|(_, c)| **c != 0).map(|(j, c)| (0, j as u32, c.clone())).collect())
            .unwrap_or_default();
        IntPoly::from_terms(terms)
    };
    RatFunc::new(row0(r.num()), row0(r.den())).ok()
}

/// The x = 0 specialization of the two-term form must reduce to
/// K̃ = (4/3)K̃ − (1/3)K̃; the numeric part samples small x.
pub fn check_pi_to_k_at_zero(cfg: &PrecisionConfig) -> Result<PiToKAtZero, NumericError> {
    let (a, b) = pi_to_k_coefficients();
    let a0 = restrict_first_to_zero(&a);
    let b0 = restrict_first_to_zero(&b);
    let exact = a0.as_ref() == Some(&RatFunc::ratio(4, 3)) && b0.as_ref() == Some(&RatFunc::ratio(-1, 3));
    let prec = cfg.bits();
    let mut max = 0.0f64;
    for (x, y) in [(0.0, 0.3), (1e-3, 0.3), (-2e-3, 0.2), (0.01, 0.45)] {
        let (xf, yf) = (f(prec, x), f(prec, y));
        let q = |r: &RatFunc| {
            let num = r.num().eval_float(&xf, &yf);
            num / r.den().eval_float(&xf, &yf)
        };
        let y2 = Float::with_val(prec, &yf * &yf);
        let d = Float::with_val(prec, &xf * &xf) - &y2;
        let rr = Float::with_val(prec, &y2 * &xf) * 4u32 * Float::with_val(prec, &xf - 1u32) * Float::with_val(prec, &xf - &y2)
            / Float::with_val(prec, &d * &d);
        let v = q(&a) * ell_pi(&xf, &yf)? + q(&b) * ell_pi(&rr, &yf)? - ell_k(&yf)?;
        max = max.max(v.abs().to_f64());
    }
    Ok(PiToKAtZero {
        a_at_zero: a0.map(|r| r.to_string()).unwrap_or_default(),
        b_at_zero: b0.map(|r| r.to_string()).unwrap_or_default(),
        exact,
        max_residual: max,
        passed: exact && max < 1e-25,
    })
}

/// The two closed forms of C(0,1) at a point, in the regime of the point:
/// the Toeplitz-contour form in α₁, α₂ and the form in ν, k.
pub fn c01_forms(p: &ParamPoint) -> Result<(Float, Float), NumericError> {
    let prec = p.prec();
    let (a1, a2, nu) = (p.alpha1(), p.alpha2(), p.nu());
    let one = Float::with_val(prec, 1);
    let pref = Float::with_val(prec, &a1 - Float::with_val(prec, &one / &a1));
    let ratio = Float::with_val(prec, &a1 / &a2);
    match p.regime() {
        super::Regime::Low => {
            let x = p.k_low();
            let contour = pref / (Float::with_val(prec, &one / &a2) - &a1)
                * (ell_k(&x)? - Float::with_val(prec, &ratio + 1u32) * ell_pi(&Float::with_val(prec, -Float::with_val(prec, &a1 * &x)), &x)?);
            let xn = Float::with_val(prec, &x / &nu);
            let direct = Float::with_val(prec, Float::with_val(prec, &nu * &x) + 1u32).sqrt()
                * (Float::with_val(prec, &xn + 1u32) * ell_pi(&Float::with_val(prec, -Float::with_val(prec, &nu * &x)), &x)?
                    - xn * ell_k(&x)?);
            Ok((contour, direct))
        }
        super::Regime::High => {
            let k = p.k();
            let contour = pref / (Float::with_val(prec, &one - &ratio))
                * (ell_k(&k)? - Float::with_val(prec, &ratio + 1u32) * ell_pi(&Float::with_val(prec, -Float::with_val(prec, &a1 * &k)), &k)?);
            let nk = Float::with_val(prec, &nu * &k);
            let direct = Float::with_val(prec, Float::with_val(prec, &nu / &k) + 1u32).sqrt() / &nu
                * (Float::with_val(prec, &nk + 1u32) * ell_pi(&Float::with_val(prec, -&nk), &k)? - ell_k(&k)?);
            Ok((contour, direct))
        }
    }
}

pub fn verify_c01_forms(per_regime: usize, seed: u64, cfg: &PrecisionConfig) -> Result<IdentityReport, NumericError> {
    let prec = cfg.bits();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for low in [false, true] {
        for _ in 0..per_regime {
            let x: f64 = rng.gen_range(0.05..0.95);
            let nu: f64 = rng.gen_range(-1.2f64..1.2).exp();
            let k = if low { Float::with_val(prec, 1) / x } else { f(prec, x) };
            let p = ParamPoint::from_k_nu(&k, &f(prec, nu))?;
            let (a, b) = c01_forms(&p)?;
            out.push(Sample { params: vec![k.to_f64(), nu], residual: Float::with_val(prec, &a - &b).abs().to_f64() });
        }
    }
    Ok(IdentityReport::new("c01_two_forms", 1e-20, out, 0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pi_identity_at_zero_and_origin() {
        let p = 180;
        let r = pi_identity_residual(&Float::new(p), &f(p, 0.3)).unwrap().unwrap();
        assert!(r.to_f64() < 1e-45);
    }

    #[test]
    fn pi_pair_isotropic_case() {
        // ν = 1: 2Π̃(−k,k) = K̃ + 1/(1+k)
        let r = pi_pair_residual(&f(180, 0.4), &f(180, 1.0)).unwrap();
        assert!(r.to_f64() < 1e-45);
    }

    #[test]
    fn pi_to_k_at_zero_is_exact() {
        let r = check_pi_to_k_at_zero(&PrecisionConfig::default()).unwrap();
        assert!(r.exact, "{r:?}");
        assert!(r.passed, "{r:?}");
    }

    #[test]
    fn small_reports() {
        let cfg = PrecisionConfig::default();
        assert!(verify_pi_identity(5, 1, &cfg).unwrap().passed);
        assert!(verify_pi_pair(5, 1, &cfg).unwrap().passed);
        assert!(verify_c01_forms(2, 1, &cfg).unwrap().passed);
    }
}
