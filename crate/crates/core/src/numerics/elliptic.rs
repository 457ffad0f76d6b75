//! Complete elliptic integrals normalized to 1 at zero modulus:
//! K̃ = (2/π)K, Ẽ = (2/π)E, Π̃(n,k) = (2/π)∫₀^{π/2} dφ / ((1 − n sin²φ)(1 − k² sin²φ)^{1/2}).

use rug::float::Constant;
use rug::ops::Pow;
use rug::Float;

use super::carlson::{rd, rf, rj};
use super::NumericError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EllKind {
    K,
    E,
    Pi,
}

fn check_modulus(k: &Float) -> Result<(), NumericError> {
    if k.is_nan() || *k < 0 || *k >= 1 {
        return Err(NumericError::Regime(format!("elliptic modulus {} outside [0, 1)", k.to_f64())));
    }
    Ok(())
}

fn two_over_pi(prec: u32) -> Float {
    Float::with_val(prec, 2) / Float::with_val(prec, Constant::Pi)
}

fn kc2(k: &Float) -> Float {
    Float::with_val(k.prec(), 1) - Float::with_val(k.prec(), k * k)
}

pub fn ell_k(k: &Float) -> Result<Float, NumericError> {
    check_modulus(k)?;
    let p = k.prec();
    Ok(two_over_pi(p) * rf(&Float::new(p), &kc2(k), &Float::with_val(p, 1))?)
}

pub fn ell_e(k: &Float) -> Result<Float, NumericError> {
    check_modulus(k)?;
    let p = k.prec();
    let (zero, kc, one) = (Float::new(p), kc2(k), Float::with_val(p, 1));
    let k2 = Float::with_val(p, k * k);
    let v = rf(&zero, &kc, &one)? - k2 * rd(&zero, &kc, &one)? / 3u32;
    Ok(two_over_pi(p) * v)
}

/// Π̃(n, k) for n < 1; n > 1 gives the Cauchy principal value.
pub fn ell_pi(n: &Float, k: &Float) -> Result<Float, NumericError> {
    check_modulus(k)?;
    let p = k.prec().max(n.prec());
    if *n == 1 {
        return Err(NumericError::Domain("Π̃ is singular at n = 1".into()));
    }
    if n.is_zero() {
        return ell_k(k);
    }
    let (zero, kc, one) = (Float::new(p), kc2(k), Float::with_val(p, 1));
    let pp = Float::with_val(p, 1) - n;
    let v = rf(&zero, &kc, &one)? + Float::with_val(p, n * rj(&zero, &kc, &one, &pp)?) / 3u32;
    Ok(two_over_pi(p) * v)
}

pub fn ell_tilde(kind: EllKind, k: &Float, n: Option<&Float>) -> Result<Float, NumericError> {
    match (kind, n) {
        (EllKind::K, _) => ell_k(k),
        (EllKind::E, _) => ell_e(k),
        (EllKind::Pi, Some(n)) => ell_pi(n, k),
        (EllKind::Pi, None) => Err(NumericError::Domain("Π̃ needs a characteristic".into())),
    }
}

/// K̃(k) = 1/AGM(1, (1 − k²)^{1/2}), independent of the Carlson kernels.
pub fn ell_k_agm(k: &Float) -> Result<Float, NumericError> {
    check_modulus(k)?;
    let p = k.prec() + 16;
    let mut a = Float::with_val(p, 1);
    let mut b = Float::with_val(p, kc2(k)).sqrt();
    let eps = Float::with_val(p, 2).pow(-(p as i32 - 4));
    for _ in 0..200 {
        if Float::with_val(p, &a - &b).abs() <= Float::with_val(p, &a * &eps) {
            break;
        }
        let an = Float::with_val(p, &a + &b) / 2u32;
        b = Float::with_val(p, &a * &b).sqrt();
        a = an;
    }
    Ok(Float::with_val(k.prec(), 1 / a))
}

/// Π̃(n, k) by the trapezoidal rule over a full period of the integrand
/// (spectrally accurate for this periodic analytic integrand). Returns the
/// value and the difference between the last two refinements.
pub fn ell_pi_quadrature(n: &Float, k: &Float) -> Result<(Float, Float), NumericError> {
    check_modulus(k)?;
    if *n >= 1 {
        return Err(NumericError::Domain("quadrature needs n < 1".into()));
    }
    let p = k.prec().max(n.prec()) + 16;
    let tol = Float::with_val(p, 2).pow(-(k.prec() as i32));
    let k2 = Float::with_val(p, k * k);
    let integrand = |theta: &Float| {
        let s2 = Float::with_val(p, theta.sin_ref()).square();
        let a = Float::with_val(p, 1) - Float::with_val(p, n * &s2);
        let b = (Float::with_val(p, 1) - Float::with_val(p, &k2 * &s2)).sqrt();
        1 / (a * b)
    };
    let pi = Float::with_val(p, Constant::Pi);
    let mut m: u32 = 64;
    let mut sum = Float::new(p);
    for j in 0..m {
        sum += integrand(&(Float::with_val(p, &pi * (2 * j)) / m));
    }
    let mut prev = Float::with_val(p, &sum / m);
    while m < 1 << 22 {
        // midpoints of the current grid
        for j in 0..m {
            sum += integrand(&(Float::with_val(p, &pi * (2 * j + 1)) / m));
        }
        m *= 2;
        let cur = Float::with_val(p, &sum / m);
        let diff = Float::with_val(p, &cur - &prev).abs();
        if diff <= tol {
            return Ok((Float::with_val(k.prec(), cur), diff));
        }
        prev = cur;
    }
    Err(NumericError::NonConvergence { what: "Π̃ quadrature".into(), achieved: f64::NAN })
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: u32 = 180;

    fn fl(v: f64) -> Float {
        Float::with_val(P, v)
    }

    fn err(a: &Float, b: &Float) -> f64 {
        Float::with_val(P, a - b).abs().to_f64()
    }

    #[test]
    fn unity_at_zero() {
        assert!(err(&ell_k(&fl(0.0)).unwrap(), &fl(1.0)) < 1e-50);
        assert!(err(&ell_e(&fl(0.0)).unwrap(), &fl(1.0)) < 1e-50);
        assert!(err(&ell_pi(&fl(0.0), &fl(0.0)).unwrap(), &fl(1.0)) < 1e-50);
    }

    #[test]
    fn pi_at_zero_modulus_is_elementary() {
        let v = ell_pi(&fl(-1.0), &fl(0.0)).unwrap();
        let expected = Float::with_val(P, 0.5).sqrt();
        assert!(err(&v, &expected) < 1e-50);
    }

    #[test]
    fn k_agrees_with_agm() {
        for k in [0.1, 0.5, 0.9, 0.999] {
            assert!(err(&ell_k(&fl(k)).unwrap(), &ell_k_agm(&fl(k)).unwrap()) < 1e-45, "{k}");
        }
    }

    #[test]
    fn legendre_relation() {
        let k = Float::with_val(P, 3) / 10u32;
        let kp = kc2(&k).sqrt();
        let (e, kk) = (ell_e(&k).unwrap(), ell_k(&k).unwrap());
        let (ep, kkp) = (ell_e(&kp).unwrap(), ell_k(&kp).unwrap());
        let lhs = Float::with_val(P, &e * &kkp) + Float::with_val(P, &ep * &kk) - Float::with_val(P, &kk * &kkp);
        assert!(err(&lhs, &two_over_pi(P)) < 1e-45);
    }

    #[test]
    fn pi_matches_quadrature() {
        for (n, k) in [(-0.36, 0.48), (-2.5, 0.9), (0.4, 0.3)] {
            let (q, _) = ell_pi_quadrature(&fl(n), &fl(k)).unwrap();
            assert!(err(&ell_pi(&fl(n), &fl(k)).unwrap(), &q) < 1e-45, "{n} {k}");
        }
    }

    #[test]
    fn principal_value_matches_reflection() {
        // Π(n, k) = K(k) − Π(k²/n, k) for n > 1
        let (n, k) = (fl(3.0), fl(0.6));
        let m = Float::with_val(P, &k * &k) / &n;
        let expected = ell_k(&k).unwrap() - ell_pi(&m, &k).unwrap();
        assert!(err(&ell_pi(&n, &k).unwrap(), &expected) < 1e-45);
    }

    #[test]
    fn modulus_out_of_range() {
        assert!(ell_k(&fl(1.0)).is_err());
        assert!(ell_e(&fl(1.5)).is_err());
    }
}
