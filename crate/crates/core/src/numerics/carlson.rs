//! Carlson symmetric elliptic integrals R_F, R_D, R_J, R_C by the duplication
//! theorem, at the precision of the arguments.

use rug::float::Constant;
use rug::ops::Pow;
use rug::Float;

use super::NumericError;

fn prec_of(args: &[&Float]) -> u32 {
    args.iter().map(|a| a.prec()).max().unwrap_or(64)
}

/// Relative tolerance matched to the working precision.
fn tolerance(prec: u32) -> Float {
    Float::with_val(prec, 2).pow(-(prec as i32))
}

fn check_nonneg(args: &[&Float], name: &str) -> Result<(), NumericError> {
    if args.iter().any(|a| a.is_nan() || *a < &0) {
        return Err(NumericError::Domain(format!("{name}: negative or NaN argument")));
    }
    Ok(())
}

/// R_F(x, y, z) for nonnegative arguments, at most one of them zero.
pub fn rf(x: &Float, y: &Float, z: &Float) -> Result<Float, NumericError> {
    check_nonneg(&[x, y, z], "RF")?;
    if [x, y, z].iter().filter(|a| a.is_zero()).count() > 1 {
        return Err(NumericError::Domain("RF: more than one zero argument".into()));
    }
    let p = prec_of(&[x, y, z]) + 16;
    let (mut x, mut y, mut z) = (Float::with_val(p, x), Float::with_val(p, y), Float::with_val(p, z));
    let a0 = (Float::with_val(p, &x + &y) + &z) / 3u32;
    let r = tolerance(p);
    let q = {
        let m = max3(Float::with_val(p, &a0 - &x).abs(), Float::with_val(p, &a0 - &y).abs(), Float::with_val(p, &a0 - &z).abs());
        m / Float::with_val(p, &r * 3u32).pow(Float::with_val(p, 1) / 6u32)
    };
    let (x0, y0) = (x.clone(), y.clone());
    let mut a = a0.clone();
    let mut scale = Float::with_val(p, 1);
    for _ in 0..200 {
        if Float::with_val(p, &q * &scale) < Float::with_val(p, a.abs_ref()) {
            break;
        }
        let (sx, sy, sz) = (x.clone().sqrt(), y.clone().sqrt(), z.clone().sqrt());
        let lam = Float::with_val(p, &sx * &sy) + Float::with_val(p, &sy * &sz) + Float::with_val(p, &sz * &sx);
        a = (a + &lam) / 4u32;
        x = (x + &lam) / 4u32;
        y = (y + &lam) / 4u32;
        z = (z + &lam) / 4u32;
        scale /= 4u32;
    }
    let denom = Float::with_val(p, &a / &scale);
    let xx = Float::with_val(p, &a0 - &x0) / &denom;
    let yy = Float::with_val(p, &a0 - &y0) / &denom;
    let zz = -Float::with_val(p, &xx + &yy);
    let e2 = Float::with_val(p, &xx * &yy) - Float::with_val(p, &zz * &zz);
    let e3 = Float::with_val(p, &xx * &yy) * &zz;
    let series = Float::with_val(p, 1) - Float::with_val(p, &e2 / 10u32) + Float::with_val(p, &e3 / 14u32)
        + Float::with_val(p, &e2 * &e2) / 24u32
        - Float::with_val(p, &e2 * &e3) * 3u32 / 44u32;
    Ok(series / a.sqrt())
}

/// R_D(x, y, z) = R_J(x, y, z, z).
pub fn rd(x: &Float, y: &Float, z: &Float) -> Result<Float, NumericError> {
    check_nonneg(&[x, y, z], "RD")?;
    if z.is_zero() || (x.is_zero() && y.is_zero()) {
        return Err(NumericError::Domain("RD: z must be positive and x + y > 0".into()));
    }
    let p = prec_of(&[x, y, z]) + 16;
    let (mut x, mut y, mut z) = (Float::with_val(p, x), Float::with_val(p, y), Float::with_val(p, z));
    let a0 = (Float::with_val(p, &x + &y) + Float::with_val(p, &z * 3u32)) / 5u32;
    let r = tolerance(p);
    let q = {
        let m = max3(Float::with_val(p, &a0 - &x).abs(), Float::with_val(p, &a0 - &y).abs(), Float::with_val(p, &a0 - &z).abs());
        m / Float::with_val(p, &r / 4u32).pow(Float::with_val(p, 1) / 6u32)
    };
    let (x0, y0) = (x.clone(), y.clone());
    let mut a = a0.clone();
    let mut scale = Float::with_val(p, 1);
    let mut sum = Float::new(p);
    for _ in 0..200 {
        if Float::with_val(p, &q * &scale) < Float::with_val(p, a.abs_ref()) {
            break;
        }
        let (sx, sy, sz) = (x.clone().sqrt(), y.clone().sqrt(), z.clone().sqrt());
        let lam = Float::with_val(p, &sx * &sy) + Float::with_val(p, &sy * &sz) + Float::with_val(p, &sz * &sx);
        sum += Float::with_val(p, &scale / (sz * Float::with_val(p, &z + &lam)));
        a = (a + &lam) / 4u32;
        x = (x + &lam) / 4u32;
        y = (y + &lam) / 4u32;
        z = (z + &lam) / 4u32;
        scale /= 4u32;
    }
    let denom = Float::with_val(p, &a / &scale);
    let xx = Float::with_val(p, &a0 - &x0) / &denom;
    let yy = Float::with_val(p, &a0 - &y0) / &denom;
    let zz = -Float::with_val(p, &xx + &yy) / 3u32;
    let xy = Float::with_val(p, &xx * &yy);
    let z2 = Float::with_val(p, &zz * &zz);
    let e2 = Float::with_val(p, &xy - Float::with_val(p, &z2 * 6u32));
    let e3 = (Float::with_val(p, &xy * 3u32) - Float::with_val(p, &z2 * 8u32)) * &zz;
    let e4 = Float::with_val(p, &xy - &z2) * 3u32 * &z2;
    let e5 = Float::with_val(p, &xy * &z2) * &zz;
    let series = series_rj(p, &e2, &e3, &e4, &e5);
    let a32 = Float::with_val(p, a.pow(Float::with_val(p, 1.5)));
    Ok(Float::with_val(p, &scale * series) / a32 + sum * 3u32)
}

fn series_rj(p: u32, e2: &Float, e3: &Float, e4: &Float, e5: &Float) -> Float {
    Float::with_val(p, 1) - Float::with_val(p, e2 * 3u32) / 14u32 + Float::with_val(p, e3 / 6u32)
        + Float::with_val(p, e2 * e2) * 9u32 / 88u32
        - Float::with_val(p, e4 * 3u32) / 22u32
        - Float::with_val(p, e2 * e3) * 9u32 / 52u32
        + Float::with_val(p, e5 * 3u32) / 26u32
}

/// R_C(x, y) for x ≥ 0, y ≠ 0 (Cauchy principal value when y < 0).
pub fn rc(x: &Float, y: &Float) -> Result<Float, NumericError> {
    let p = prec_of(&[x, y]) + 16;
    if *x < 0 || y.is_zero() {
        return Err(NumericError::Domain("RC: need x ≥ 0, y ≠ 0".into()));
    }
    if *y < 0 {
        // R_C(x, y) = (x/(x−y))^{1/2} R_C(x − y, −y)
        let xm = Float::with_val(p, x - y);
        let f = Float::with_val(p, x / &xm).sqrt();
        return Ok(f * rc(&xm, &Float::with_val(p, -y))?);
    }
    let x = Float::with_val(p, x);
    let y = Float::with_val(p, y);
    if x == y {
        return Ok(Float::with_val(p, 1) / x.sqrt());
    }
    if x < y {
        let d = Float::with_val(p, &y - &x).sqrt();
        if x.is_zero() {
            return Ok(Float::with_val(p, Constant::Pi) / 2u32 / d);
        }
        let t = Float::with_val(p, &d / x.sqrt());
        Ok(t.atan() / d)
    } else {
        let d = Float::with_val(p, &x - &y).sqrt();
        let t = Float::with_val(p, &d / x.sqrt());
        Ok(t.atanh() / d)
    }
}

/// R_J(x, y, z, p). For p < 0 the Cauchy principal value is returned.
pub fn rj(x: &Float, y: &Float, z: &Float, pp: &Float) -> Result<Float, NumericError> {
    check_nonneg(&[x, y, z], "RJ")?;
    if [x, y, z].iter().filter(|a| a.is_zero()).count() > 1 || pp.is_zero() || pp.is_nan() {
        return Err(NumericError::Domain("RJ: at most one zero among x, y, z and p ≠ 0".into()));
    }
    if *pp < 0 {
        return rj_principal_value(x, y, z, pp);
    }
    let p = prec_of(&[x, y, z, pp]) + 16;
    let (mut x, mut y, mut z, mut q4) = (Float::with_val(p, x), Float::with_val(p, y), Float::with_val(p, z), Float::with_val(p, pp));
    let a0 = (Float::with_val(p, &x + &y) + &z + Float::with_val(p, &q4 * 2u32)) / 5u32;
    let delta = Float::with_val(p, &q4 - &x) * Float::with_val(p, &q4 - &y) * Float::with_val(p, &q4 - &z);
    let r = tolerance(p);
    let qq = {
        let m = max3(Float::with_val(p, &a0 - &x).abs(), Float::with_val(p, &a0 - &y).abs(), Float::with_val(p, &a0 - &z).abs());
        let m = m.max(&Float::with_val(p, &a0 - &q4).abs());
        m / Float::with_val(p, &r / 4u32).pow(Float::with_val(p, 1) / 6u32)
    };
    let (x0, y0, z0) = (x.clone(), y.clone(), z.clone());
    let mut a = a0.clone();
    let mut scale = Float::with_val(p, 1);
    let mut scale3 = Float::with_val(p, 1);
    let mut sum = Float::new(p);
    let one = Float::with_val(p, 1);
    for _ in 0..200 {
        if Float::with_val(p, &qq * &scale) < Float::with_val(p, a.abs_ref()) {
            break;
        }
        let (sx, sy, sz, sp) = (x.clone().sqrt(), y.clone().sqrt(), z.clone().sqrt(), q4.clone().sqrt());
        let lam = Float::with_val(p, &sx * &sy) + Float::with_val(p, &sy * &sz) + Float::with_val(p, &sz * &sx);
        let d = Float::with_val(p, &sp + &sx) * Float::with_val(p, &sp + &sy) * Float::with_val(p, &sp + &sz);
        let e = Float::with_val(p, &scale3 * &delta) / Float::with_val(p, &d * &d);
        let rcv = rc(&one, &Float::with_val(p, &one + &e))?;
        sum += Float::with_val(p, &scale * rcv) / &d;
        a = (a + &lam) / 4u32;
        x = (x + &lam) / 4u32;
        y = (y + &lam) / 4u32;
        z = (z + &lam) / 4u32;
        q4 = (q4 + &lam) / 4u32;
        scale /= 4u32;
        scale3 /= 64u32;
    }
    let denom = Float::with_val(p, &a / &scale);
    let xx = Float::with_val(p, &a0 - &x0) / &denom;
    let yy = Float::with_val(p, &a0 - &y0) / &denom;
    let zz = Float::with_val(p, &a0 - &z0) / &denom;
    let pq = -(Float::with_val(p, &xx + &yy) + &zz) / 2u32;
    let xyz = Float::with_val(p, &xx * &yy) * &zz;
    let p2 = Float::with_val(p, &pq * &pq);
    let e2 = Float::with_val(p, &xx * &yy) + Float::with_val(p, &xx * &zz) + Float::with_val(p, &yy * &zz) - Float::with_val(p, &p2 * 3u32);
    let e3 = Float::with_val(p, &xyz + Float::with_val(p, &e2 * &pq) * 2u32) + Float::with_val(p, &p2 * &pq) * 4u32;
    let e4 = (Float::with_val(p, &xyz * 2u32) + Float::with_val(p, &e2 * &pq) + Float::with_val(p, &p2 * &pq) * 3u32) * &pq;
    let e5 = Float::with_val(p, &xyz * &p2);
    let series = series_rj(p, &e2, &e3, &e4, &e5);
    let a32 = Float::with_val(p, a.pow(Float::with_val(p, 1.5)));
    Ok(Float::with_val(p, &scale * series) / a32 + sum * 6u32)
}

/// Principal value for p < 0 via
/// (y − p) R_J(x,y,z,p) = (q − y) R_J(x,y,z,q) − 3 R_F(x,y,z) + 3 (xyz/(xz + pq))^{1/2} R_C(xz + pq, pq),
/// q = y + (z − y)(y − x)/(y − p), with x ≤ y ≤ z.
fn rj_principal_value(x: &Float, y: &Float, z: &Float, pp: &Float) -> Result<Float, NumericError> {
    let prec = prec_of(&[x, y, z, pp]) + 16;
    let mut v = [Float::with_val(prec, x), Float::with_val(prec, y), Float::with_val(prec, z)];
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let [x, y, z] = v;
    let yp = Float::with_val(prec, &y - pp);
    let q = Float::with_val(prec, &y + Float::with_val(prec, &z - &y) * Float::with_val(prec, &y - &x) / &yp);
    let mut acc = Float::with_val(prec, &q - &y) * rj(&x, &y, &z, &q)? - rf(&x, &y, &z)? * 3u32;
    let xyz = Float::with_val(prec, &x * &y) * &z;
    if !xyz.is_zero() {
        let pq = Float::with_val(prec, pp * &q);
        let s = Float::with_val(prec, &x * &z) + &pq;
        acc += Float::with_val(prec, &xyz / &s).sqrt() * rc(&s, &pq)? * 3u32;
    }
    Ok(acc / yp)
}

fn max3(a: Float, b: Float, c: Float) -> Float {
    a.max(&b).max(&c)
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: u32 = 200;

    fn fl(v: f64) -> Float {
        Float::with_val(P, v)
    }

    fn close(a: &Float, b: &Float, tol: f64) -> bool {
        let d = Float::with_val(P, a - b).abs();
        d <= Float::with_val(P, b.abs_ref()).max(&fl(1.0)) * tol
    }

    #[test]
    fn closed_forms() {
        assert!(close(&rf(&fl(1.0), &fl(1.0), &fl(1.0)).unwrap(), &fl(1.0), 1e-55));
        let half_pi = Float::with_val(P, Constant::Pi) / 2u32;
        assert!(close(&rf(&fl(0.0), &fl(1.0), &fl(1.0)).unwrap(), &half_pi, 1e-55));
        // R_D(x, x, x) = x^{-3/2}
        let v = rd(&fl(2.0), &fl(2.0), &fl(2.0)).unwrap();
        assert!(close(&v, &Float::with_val(P, fl(2.0).pow(-1.5)), 1e-55));
        let v = rj(&fl(2.0), &fl(2.0), &fl(2.0), &fl(2.0)).unwrap();
        assert!(close(&v, &Float::with_val(P, fl(2.0).pow(-1.5)), 1e-55));
    }

    #[test]
    fn rj_with_equal_last_arguments_is_rd() {
        let a = rj(&fl(0.3), &fl(1.7), &fl(2.5), &fl(2.5)).unwrap();
        let b = rd(&fl(0.3), &fl(1.7), &fl(2.5)).unwrap();
        assert!(close(&a, &b, 1e-55));
    }

    #[test]
    fn rc_matches_rf() {
        for (x, y) in [(0.5, 2.0), (3.0, 1.0), (0.0, 1.5)] {
            let a = rc(&fl(x), &fl(y)).unwrap();
            let b = rf(&fl(x), &fl(y), &fl(y)).unwrap();
            assert!(close(&a, &b, 1e-55), "{x} {y}");
        }
    }

    #[test]
    fn domain_errors() {
        assert!(rf(&fl(-1.0), &fl(1.0), &fl(1.0)).is_err());
        assert!(rf(&fl(0.0), &fl(0.0), &fl(1.0)).is_err());
        assert!(rj(&fl(0.0), &fl(1.0), &fl(1.0), &fl(0.0)).is_err());
    }

    #[test]
    fn extra_duplication_step_is_invisible() {
        // scaling all arguments by 4 scales R_F by 1/2 and exercises one more step
        let a = rf(&fl(0.2), &fl(0.9), &fl(1.4)).unwrap();
        let b = rf(&fl(0.8), &fl(3.6), &fl(5.6)).unwrap() * 2u32;
        assert!(close(&a, &b, 1e-55));
    }
}
