//! Derivatives of the generators in k = s_h s_v at fixed ν = s_h/s_v.
//!
//! dK̃/dk = Ẽ/(k(1−k²)) − K̃/k
//! dẼ/dk = (Ẽ − K̃)/k
//! dΠ̃/dk = (1/w)·[−(1+s_v²)/(2 s_h s_v)·K̃ + (s_h²s_v² + 2s_v² + 1)/(2 s_h s_v (1 − s_h²s_v²))·Ẽ] − (w′/w)·Π̃
//!
//! The last line is the derivative of Π̃_w = w·Π̃ (which involves only Ẽ, K̃)
//! rewritten for Π̃ itself; w′/w is rational because w² is.

use std::sync::OnceLock;

use super::{Basis, EllMonomial, EllValue};
use crate::coeffield::{FieldElem, IntPoly, RatFunc};

#[derive(Debug, Clone)]
pub struct DerivClosure {
    pub d_e: EllValue,
    pub d_k: EllValue,
    pub d_pi: EllValue,
}

fn rat(num: IntPoly, den: IntPoly) -> FieldElem {
    FieldElem::from_rat(&RatFunc::new(num, den).unwrap())
}

impl DerivClosure {
    fn build() -> Self {
        let b = Basis::Pi;
        let e = EllValue::e(b);
        let k = EllValue::k(b);
        let pi = EllValue::pi(b);
        let kk = IntPoly::monomial(1, 1, 1);
        let one_minus_k2 = IntPoly::from_terms([(0, 0, 1i64), (2, 2, -1)]);

        let d_k = e.scale(&rat(IntPoly::one(), kk.mul(&one_minus_k2))).sub(&k.scale(&rat(IntPoly::one(), kk.clone())));
        let d_e = e.sub(&k).scale(&rat(IntPoly::one(), kk.clone()));

        let w = FieldElem::w();
        let inv_w = w.inv().unwrap();
        let two_k = IntPoly::monomial(2, 1, 1);
        let k_coeff = rat(IntPoly::from_terms([(0, 0, -1i64), (0, 2, -1)]), two_k.clone());
        let e_coeff = rat(IntPoly::from_terms([(2, 2, 1i64), (0, 2, 2), (0, 0, 1)]), two_k.mul(&one_minus_k2));
        let log_w = w.derivative_k().mul(&inv_w);
        let d_pi = k
            .scale(&k_coeff)
            .add(&e.scale(&e_coeff))
            .scale(&inv_w)
            .sub(&pi.scale(&log_w));
        DerivClosure { d_e, d_k, d_pi }
    }

    pub fn get() -> &'static DerivClosure {
        static TABLE: OnceLock<DerivClosure> = OnceLock::new();
        TABLE.get_or_init(Self::build)
    }

    /// Derivative of a value in basis `Pi` (chain rule on coefficients and generators).
    pub(crate) fn apply(&self, a: &EllValue) -> EllValue {
        let mut out = EllValue::zero(Basis::Pi);
        for (m, c) in a.terms() {
            let dc = c.derivative_k();
            if !dc.is_zero() {
                out.add_term(*m, dc);
            }
            for (exp, table, unit) in [
                (m.i, &self.d_e, EllMonomial::new(1, 0, 0)),
                (m.j, &self.d_k, EllMonomial::new(0, 1, 0)),
                (m.l, &self.d_pi, EllMonomial::new(0, 0, 1)),
            ] {
                if exp == 0 {
                    continue;
                }
                let rest = EllMonomial::new(m.i - unit.i, m.j - unit.j, m.l - unit.l);
                let factor = c.scale_int(&rug::Integer::from(exp));
                for (tm, tc) in table.terms() {
                    out.add_term(tm.mul(&rest), tc.mul(&factor));
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn third_kind_derivative_has_rational_pi_coefficient() {
        let t = DerivClosure::get();
        let c = t.d_pi.coeff(&EllMonomial::new(0, 0, 1));
        assert!(c.as_rational().is_some());
        assert!(!t.d_e.has_pi() && !t.d_k.has_pi());
    }

    #[test]
    fn product_rule() {
        let a = EllValue::pi(Basis::Pi).mul(&EllValue::k(Basis::Pi)).scale(&FieldElem::u_v());
        let b = EllValue::e(Basis::Pi).add(&EllValue::constant(FieldElem::monomial(3, 1, -1), Basis::Pi));
        let lhs = a.mul(&b).derivative_k();
        let rhs = a.derivative_k().mul(&b).add(&a.mul(&b.derivative_k()));
        assert_eq!(lhs, rhs);
    }
}
