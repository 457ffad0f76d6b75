//! Numeric check of the printed order-three operator M_2·M_1 for the
//! low-temperature nearest-neighbour row correlation C_<(0,1), in
//! x = k_< at fixed ν:
//!
//! M_1 = ∂_x − 1/(2(x+ν)),  M_2 = p_2 ∂_x² + p_1 ∂_x + p_0.
//!
//! Derivatives of x ↦ C_<(0,1) come from central finite differences.

use rug::ops::Pow;
use rug::{Float, Rational};
use serde::Serialize;

use super::linalg::rational_solve;
use super::OdeError;
use crate::ellring::EllValue;
use crate::numerics::{eval_value, ParamPoint, PrecisionConfig};

/// (x, ν) sample points, 0 < x < 1.
pub const ROW_OPERATOR_POINTS: [(f64, f64); 5] = [(0.3, 0.7), (0.5, 1.3), (0.1, 0.4), (0.8, 2.0), (0.65, 1.0)];

const TOLERANCE: f64 = 1e-18;
const HALF_WIDTH: i64 = 5;
const STEP: f64 = 1e-8;

/// Central-difference weights w_j, j = −h..h, for the given derivative.
pub fn fd_weights(deriv: usize, half_width: i64) -> Vec<Rational> {
    let n = (2 * half_width + 1) as usize;
    let nodes: Vec<i64> = (-half_width..=half_width).collect();
    let a: Vec<Vec<Rational>> =
        (0..n).map(|row| nodes.iter().map(|&j| Rational::from(rug::Integer::from(j).pow(row as u32))).collect()).collect();
    let mut b = vec![Rational::new(); n];
    b[deriv] = Rational::from(rug::Integer::from(rug::Integer::factorial(deriv as u32)));
    rational_solve(a, b).expect("Vandermonde matrix is invertible")
}

fn poly(x: &Float, coeffs: &[Float]) -> Float {
    let mut acc = Float::new(x.prec());
    for c in coeffs.iter().rev() {
        acc *= x;
        acc += c;
    }
    acc
}

/// (p_2, p_1, p_0) at (x, ν).
pub fn c1_coefficients(x: &Float, nu: &Float) -> (Float, Float, Float) {
    let prec = x.prec();
    let f = |v: f64| Float::with_val(prec, v);
    let n = |c: &[i64]| poly(nu, &c.iter().map(|&v| f(v as f64)).collect::<Vec<_>>());
    let one = f(1.0);
    let x_nu = Float::with_val(prec, x + nu);
    let nu_x_1 = Float::with_val(prec, nu * x) + &one;
    let cubic = poly(x, &[one.clone(), Float::with_val(prec, nu * 3u32), f(3.0), nu.clone()]);
    let p2 = Float::with_val(prec, x * 4u32) * (Float::with_val(prec, x * x) - &one) * x_nu.clone().square()
        * nu_x_1.clone().square()
        * cubic;
    // coefficients of x^0..x^7 inside the braces, each a polynomial in ν
    let brace = [
        n(&[0, -2]),
        n(&[-3, 0, -6]),
        n(&[0, -6, 0, -6]),
        n(&[2, 0, 3]),
        n(&[0, 18, 0, 12]),
        n(&[9, 0, 24]),
        n(&[0, 14, 0, 2]),
        n(&[0, 0, 3]),
    ];
    let p1 = Float::with_val(prec, &x_nu * 4u32) * &nu_x_1 * poly(x, &brace);
    let p0c = [
        n(&[0, -8, 0, 8]),
        n(&[-4, 0, -2, 0, 15]),
        n(&[0, 38, 0, 10, 0, 9]),
        n(&[36, 0, 99, 0, 18]),
        n(&[0, 96, 0, 123, 0, 6]),
        n(&[0, 0, 140, 0, 55]),
        n(&[0, 18, 0, 80, 0, 1]),
        n(&[0, 0, 19, 0, 8]),
        n(&[0, 0, 0, 3]),
    ];
    let p0 = poly(x, &p0c);
    (p2, p1, p0)
}

#[derive(Clone, Debug, Serialize)]
pub struct RowOperatorSample {
    pub x: f64,
    pub nu: f64,
    pub relative_residual: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct RowOperatorReport {
    pub tolerance: f64,
    pub samples: Vec<RowOperatorSample>,
    pub max_residual: f64,
    pub passed: bool,
}

/// f, f′, f″, f‴ at x by central differences of `f`.
fn derivatives(f: impl Fn(&Float) -> Result<Float, OdeError>, x: &Float) -> Result<[Float; 4], OdeError> {
    let prec = x.prec();
    let h = Float::with_val(prec, STEP);
    let mut vals = Vec::new();
    for j in -HALF_WIDTH..=HALF_WIDTH {
        vals.push(f(&(Float::with_val(prec, &h * j) + x))?);
    }
    let mut out = [vals[HALF_WIDTH as usize].clone(), Float::new(prec), Float::new(prec), Float::new(prec)];
    for (d, slot) in out.iter_mut().enumerate().skip(1) {
        let w = fd_weights(d, HALF_WIDTH);
        let mut acc = Float::new(prec);
        for (wj, v) in w.iter().zip(&vals) {
            acc += Float::with_val(prec, wj) * v;
        }
        *slot = acc / Float::with_val(prec, h.clone().pow(d as u32));
    }
    Ok(out)
}

/// Relative size of M_2·M_1 f at (x, ν), with f′..f‴ supplied.
fn residual(x: &Float, nu: &Float, f: &[Float; 4]) -> f64 {
    let prec = x.prec();
    let xn = Float::with_val(prec, x + nu);
    // q = 1/(2(x+ν)), q′ = −1/(2(x+ν)²), q″ = 1/(x+ν)³
    let q = Float::with_val(prec, &xn * 2u32).recip();
    let dq = -Float::with_val(prec, xn.clone().square() * 2u32).recip();
    let ddq = Float::with_val(prec, xn.clone().pow(3u32)).recip();
    let g0 = Float::with_val(prec, &f[1] - Float::with_val(prec, &q * &f[0]));
    let g1 = Float::with_val(prec, &f[2] - Float::with_val(prec, &dq * &f[0]) - Float::with_val(prec, &q * &f[1]));
    let g2 = Float::with_val(
        prec,
        &f[3] - Float::with_val(prec, &ddq * &f[0]) - Float::with_val(prec, &dq * &f[1]) * 2u32 - Float::with_val(prec, &q * &f[2]),
    );
    let (p2, p1, p0) = c1_coefficients(x, nu);
    let t = [Float::with_val(prec, &p2 * &g2), Float::with_val(prec, &p1 * &g1), Float::with_val(prec, &p0 * &g0)];
    let total = Float::with_val(prec, &t[0] + &t[1]) + &t[2];
    let scale = Float::with_val(prec, t[0].abs_ref()) + Float::with_val(prec, t[1].abs_ref()) + Float::with_val(prec, t[2].abs_ref());
    (total.abs() / scale).to_f64()
}

/// Applies the printed operator to `c01_low` (C_<(0,1) in low-temperature
/// variables) at the given (x, ν) points.
pub fn verify_low_row_operator(c01_low: &EllValue, points: &[(f64, f64)], cfg: &PrecisionConfig) -> Result<RowOperatorReport, OdeError> {
    let prec = cfg.bits();
    let mut samples = Vec::new();
    for &(x0, nu0) in points {
        let x = Float::with_val(prec, x0);
        let nu = Float::with_val(prec, nu0);
        let f = |xx: &Float| -> Result<Float, OdeError> {
            let p = ParamPoint::from_k_nu(&Float::with_val(prec, xx.recip_ref()), &nu)?;
            Ok(eval_value(c01_low, &p)?)
        };
        let d = derivatives(f, &x)?;
        samples.push(RowOperatorSample { x: x0, nu: nu0, relative_residual: residual(&x, &nu, &d) });
    }
    let max_residual = samples.iter().map(|s| s.relative_residual).fold(0.0, f64::max);
    Ok(RowOperatorReport { tolerance: TOLERANCE, samples, max_residual, passed: max_residual < TOLERANCE })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stencils_are_exact_on_polynomials() {
        let w = fd_weights(3, 5);
        // third derivative of j³ is 6, of j^4 at 0 is 0
        let s3: Rational = w.iter().zip(-5i64..=5).map(|(a, j)| Rational::from(a * Rational::from(j * j * j))).sum();
        let s4: Rational = w.iter().zip(-5i64..=5).map(|(a, j)| Rational::from(a * Rational::from(j.pow(4)))).sum();
        assert_eq!(s3, 6);
        assert_eq!(s4, 0);
    }

    #[test]
    fn first_factor_kills_the_square_root() {
        let prec = 180;
        let nu = Float::with_val(prec, 0.7);
        let x = Float::with_val(prec, 0.3);
        let f = |xx: &Float| Ok(Float::with_val(prec, xx + &nu).sqrt());
        let d = derivatives(f, &x).unwrap();
        let q = Float::with_val(prec, Float::with_val(prec, &x + &nu) * 2u32).recip();
        let m1 = Float::with_val(prec, &d[1] - Float::with_val(prec, &q * &d[0]));
        assert!(m1.abs().to_f64() < 1e-30);
    }
}
