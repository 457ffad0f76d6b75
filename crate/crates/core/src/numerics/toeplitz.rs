//! Toeplitz-determinant oracle for row and diagonal correlations.
//!
//! The entries a_n are Fourier coefficients of the symbol
//!   low temperature (α₂ < 1):  [(1 − α₁z)(1 − α₂/z) / ((1 − α₁/z)(1 − α₂z))]^{1/2}
//!   high temperature (α₂ > 1): −z^{−1}[(1 − α₁z)(1 − βz) / ((1 − α₁/z)(1 − β/z))]^{1/2}, β = 1/α₂
//! computed by the trapezoidal rule on the unit circle, and C = det(a_{i−j}).
//! Row correlations C(0,N) use α₁, α₂ of the point; diagonal ones C(N,N)
//! use α₁ = 0, α₂ = 1/k.

use rug::float::Constant;
use rug::ops::Pow;
use rug::Float;
use serde::Serialize;

use super::complex::Complex;
use super::point::ParamPoint;
use super::NumericError;

#[derive(Clone, Debug)]
pub struct OracleValue {
    pub value: Float,
    /// Largest change of any entry between the last two grid refinements.
    pub error_estimate: f64,
    pub nodes: usize,
}

#[derive(Serialize)]
struct OracleJson {
    value: String,
    error_estimate: f64,
    nodes: usize,
}

impl OracleValue {
    pub fn to_json(&self, digits: usize) -> serde_json::Value {
        serde_json::to_value(OracleJson {
            value: self.value.to_string_radix(10, Some(digits)),
            error_estimate: self.error_estimate,
            nodes: self.nodes,
        })
        .unwrap()
    }
}

fn symbol(alpha1: &Float, alpha2: &Float, z: &Complex) -> Complex {
    let zi = z.conj();
    let p = alpha2.prec();
    if *alpha2 < 1 {
        let num = Complex::one_minus(alpha1, z).mul(&Complex::one_minus(alpha2, &zi));
        let den = Complex::one_minus(alpha1, &zi).mul(&Complex::one_minus(alpha2, z));
        num.sqrt().div(&den.sqrt())
    } else {
        let beta = Float::with_val(p, 1 / alpha2);
        let num = Complex::one_minus(alpha1, z).mul(&Complex::one_minus(&beta, z));
        let den = Complex::one_minus(alpha1, &zi).mul(&Complex::one_minus(&beta, &zi));
        let minus_one = Float::with_val(p, -1);
        num.sqrt().div(&den.sqrt()).mul(&zi).scale(&minus_one)
    }
}

/// Fourier coefficients a_n, n in `lo..=hi`, of the symbol with parameters α₁, α₂.
pub fn toeplitz_entries(alpha1: &Float, alpha2: &Float, lo: i64, hi: i64) -> Result<(Vec<Float>, f64, usize), NumericError> {
    let prec = alpha1.prec().max(alpha2.prec());
    let wp = prec + 32;
    let a1 = Float::with_val(wp, alpha1);
    let a2 = Float::with_val(wp, alpha2);
    if a2 == 1 || a1 < 0 || a1 >= 1 {
        return Err(NumericError::Regime("symbol parameters at the critical point".into()));
    }
    let rho = {
        let r2 = if a2 < 1 { a2.to_f64() } else { 1.0 / a2.to_f64() };
        a1.to_f64().max(r2).max(1e-3)
    };
    let span = hi.unsigned_abs().max(lo.unsigned_abs()) as f64;
    let need = (prec as f64 * std::f64::consts::LN_2 / -rho.ln() + span + 16.0).ceil() as usize;
    let mut m = need.next_power_of_two().max(64);
    let tol = Float::with_val(prec, 2).pow(-(prec as i32 - 8)).to_f64();
    let count = (hi - lo + 1) as usize;
    let two_pi = Float::with_val(wp, Constant::Pi) * 2u32;

    let accumulate = |sums: &mut Vec<(Float, Float)>, m: usize, odd_only: bool| {
        let step = if odd_only { 2 } else { 1 };
        let start = if odd_only { 1 } else { 0 };
        for j in (start..m).step_by(step) {
            let theta = Float::with_val(wp, &two_pi * j as u32) / m as u32;
            let z = Complex::unit(&theta);
            let w = symbol(&a1, &a2, &z);
            for (idx, n) in (lo..=hi).enumerate() {
                let phase = Complex::unit(&(-Float::with_val(wp, &theta * n)));
                let t = w.mul(&phase);
                sums[idx].0 += t.re;
                sums[idx].1 += t.im;
            }
        }
    };
    let mut sums = vec![(Float::new(wp), Float::new(wp)); count];
    accumulate(&mut sums, m, false);
    let mut prev: Vec<Float> = sums.iter().map(|s| Float::with_val(wp, &s.0 / m as u32)).collect();
    loop {
        accumulate(&mut sums, 2 * m, true);
        m *= 2;
        let cur: Vec<Float> = sums.iter().map(|s| Float::with_val(wp, &s.0 / m as u32)).collect();
        let diff = cur.iter().zip(&prev).map(|(a, b)| Float::with_val(wp, a - b).abs().to_f64()).fold(0.0, f64::max);
        let imag = sums.iter().map(|s| Float::with_val(wp, &s.1 / m as u32).abs().to_f64()).fold(0.0, f64::max);
        if diff <= tol && imag <= tol {
            return Ok((cur.into_iter().map(|v| Float::with_val(prec, v)).collect(), diff, m));
        }
        if m > 1 << 20 {
            return Err(NumericError::NonConvergence { what: "Toeplitz quadrature".into(), achieved: diff.max(imag) });
        }
        prev = cur;
    }
}

/// Determinant by Gaussian elimination with partial pivoting.
pub fn determinant(mut a: Vec<Vec<Float>>) -> Float {
    let n = a.len();
    let prec = a.first().map(|r| r[0].prec()).unwrap_or(64);
    let mut det = Float::with_val(prec, 1);
    for c in 0..n {
        let piv = (c..n).max_by(|&i, &j| a[i][c].clone().abs().partial_cmp(&a[j][c].clone().abs()).unwrap()).unwrap();
        if a[piv][c].is_zero() {
            return Float::new(prec);
        }
        if piv != c {
            a.swap(piv, c);
            det = -det;
        }
        det *= &a[c][c];
        for r in c + 1..n {
            let f = Float::with_val(prec, &a[r][c] / &a[c][c]);
            for j in c..n {
                let t = Float::with_val(prec, &f * &a[c][j]);
                a[r][j] -= t;
            }
        }
    }
    det
}

fn toeplitz_det(alpha1: &Float, alpha2: &Float, n: usize) -> Result<OracleValue, NumericError> {
    let prec = alpha1.prec().max(alpha2.prec());
    if n == 0 {
        return Ok(OracleValue { value: Float::with_val(prec, 1), error_estimate: 0.0, nodes: 0 });
    }
    let lo = -(n as i64 - 1);
    let (entries, err, nodes) = toeplitz_entries(alpha1, alpha2, lo, n as i64 - 1)?;
    let at = |d: i64| entries[(d - lo) as usize].clone();
    let m = (0..n).map(|i| (0..n).map(|j| at(i as i64 - j as i64)).collect()).collect();
    Ok(OracleValue { value: determinant(m), error_estimate: err, nodes })
}

/// C(0,N) at the point (for C(N,0) pass the swapped point).
pub fn toeplitz_row(n: usize, p: &ParamPoint) -> Result<OracleValue, NumericError> {
    toeplitz_det(&p.alpha1(), &p.alpha2(), n)
}

/// C(N,N) at the point.
pub fn toeplitz_diag(n: usize, p: &ParamPoint) -> Result<OracleValue, NumericError> {
    let prec = p.prec();
    toeplitz_det(&Float::new(prec), &p.k_low(), n)
}
