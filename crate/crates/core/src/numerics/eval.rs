//! Numeric evaluation of values at parameter points.
//!
//! At a high-temperature point (k < 1) the generators are Ẽ(k), K̃(k),
//! Π̃(−s_h², k) and Π̃_p = Π̃(−s_v², k). At a low-temperature point (k > 1) they
//! are the low-temperature generators Ẽ(1/k), K̃(1/k), Π̃(−1/s_v², 1/k) and
//! Π̃_p = Π̃(−1/s_h², 1/k), the images of the high-temperature ones under the
//! replacement s_h → 1/s_v, s_v → 1/s_h.

use rug::ops::Pow;
use rug::Float;

use super::elliptic::{ell_e, ell_k, ell_pi};
use super::point::{ParamPoint, Regime};
use super::NumericError;
use crate::ellring::{Basis, EllValue};

#[derive(Clone, Debug)]
pub struct Generators {
    pub e: Float,
    pub k: Float,
    pub pi: Float,
    pub pi_p: Float,
}

impl Generators {
    pub fn at(p: &ParamPoint) -> Result<Self, NumericError> {
        let prec = p.prec();
        let sq = |s: &Float| Float::with_val(prec, s * s);
        let (modulus, n, n_p) = match p.regime() {
            Regime::High => (p.k(), -sq(&p.s_h), -sq(&p.s_v)),
            Regime::Low => (p.k_low(), -(sq(&p.s_v).recip()), -(sq(&p.s_h).recip())),
        };
        Ok(Generators { e: ell_e(&modulus)?, k: ell_k(&modulus)?, pi: ell_pi(&n, &modulus)?, pi_p: ell_pi(&n_p, &modulus)? })
    }
}

pub fn eval_value(a: &EllValue, p: &ParamPoint) -> Result<Float, NumericError> {
    Ok(eval_with(a, p, &Generators::at(p)?))
}

pub fn eval_with(a: &EllValue, p: &ParamPoint, g: &Generators) -> Float {
    let prec = p.prec();
    let pi = match a.basis() {
        Basis::Pi => &g.pi,
        Basis::PiP => &g.pi_p,
    };
    let mut acc = Float::new(prec);
    for (m, c) in a.terms() {
        let mut t = c.eval_float(&p.s_h, &p.s_v);
        for (x, e) in [(&g.e, m.i), (&g.k, m.j), (pi, m.l)] {
            if e > 0 {
                t *= Float::with_val(prec, x.pow(e));
            }
        }
        acc += t;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ellring::parse_value;

    #[test]
    fn third_kind_pair_identity() {
        // high: Π̃ + Π̃_p = K̃ + 1/w; low: the image of 1/w is k/w
        let p = ParamPoint::from_f64(0.6, 0.8, 180).unwrap();
        let a = parse_value("P", Basis::Pi).unwrap();
        let x = eval_value(&a, &p).unwrap();
        let y = eval_value(&a.change_basis(Basis::PiP), &p).unwrap();
        assert!(Float::with_val(180, &x - &y).abs().to_f64() < 1e-45);

        let p = ParamPoint::from_f64(1.3, 1.1, 180).unwrap();
        let lhs = parse_value("P", Basis::Pi).unwrap();
        let rhs = parse_value("K + k/w - P", Basis::PiP).unwrap();
        let x = eval_value(&lhs, &p).unwrap();
        let y = eval_value(&rhs, &p).unwrap();
        assert!(Float::with_val(180, &x - &y).abs().to_f64() < 1e-45);
    }

    #[test]
    fn constant_one() {
        let p = ParamPoint::from_f64(0.3, 0.4, 180).unwrap();
        let v = eval_value(&EllValue::one(Basis::Pi), &p).unwrap();
        assert_eq!(v, 1);
    }
}
