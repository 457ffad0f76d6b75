//! Truncated Laurent series in λ for the anisotropic limit s_h = sλ, s_v = s/λ
//! at fixed k = s².
//!
//! Coefficients are [`EllValue`]s in basis `Pi` without Π̃; `E`, `K` stand for
//! Ẽ(s²), K̃(s²) and the coefficient field variable `s_h` stands for `s`.

use std::collections::BTreeMap;

use rug::ops::Pow;
use rug::{Float, Integer, Rational};
use serde::Serialize;

use crate::coeffield::{FieldElem, IntPoly, RatFunc};
use crate::ellring::{Basis, EllMonomial, EllValue};
use crate::numerics::{ell_pi_quadrature, eval_value, NumericError, ParamPoint};

/// Highest λ exponent for which [`pi_lambda_series`] is produced.
pub const PI_SERIES_BOUND: i32 = 48;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SeriesError {
    #[error("λ order {requested} exceeds the available expansion of Π̃ (bound {bound})")]
    OrderTooHigh { requested: i32, bound: i32 },
    #[error("expected a value in basis Pi")]
    Basis,
    #[error(transparent)]
    Numeric(#[from] NumericError),
}

/// Σ c_e λ^e with every coefficient known for e ≤ `order`.
#[derive(Debug, Clone, PartialEq)]
pub struct LamSeries {
    coeffs: BTreeMap<i32, EllValue>,
    order: i32,
}

impl LamSeries {
    pub fn zero(order: i32) -> Self {
        LamSeries { coeffs: BTreeMap::new(), order }
    }

    /// A single term c·λ^e, known through `order`.
    pub fn monomial(c: EllValue, e: i32, order: i32) -> Self {
        let mut s = Self::zero(order);
        s.set(e, c);
        s
    }

    pub fn constant(c: EllValue, order: i32) -> Self {
        Self::monomial(c, 0, order)
    }

    pub fn from_coeffs(coeffs: impl IntoIterator<Item = (i32, EllValue)>, order: i32) -> Self {
        let mut s = Self::zero(order);
        for (e, c) in coeffs {
            let sum = s.coeff(e).add(&c);
            s.set(e, sum);
        }
        s
    }

    fn set(&mut self, e: i32, c: EllValue) {
        if e > self.order || c.is_zero() {
            self.coeffs.remove(&e);
        } else {
            self.coeffs.insert(e, c);
        }
    }

    pub fn order(&self) -> i32 {
        self.order
    }

    /// Lowest exponent with a nonzero coefficient, or `order + 1` if none is known.
    pub fn valuation(&self) -> i32 {
        self.coeffs.keys().next().copied().unwrap_or(self.order + 1)
    }

    pub fn coeff(&self, e: i32) -> EllValue {
        self.coeffs.get(&e).cloned().unwrap_or_else(|| EllValue::zero(Basis::Pi))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i32, &EllValue)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Exponents below zero that carry a nonzero coefficient.
    pub fn negative_exponents(&self) -> Vec<i32> {
        self.coeffs.range(..0).map(|(e, _)| *e).collect()
    }

    pub fn truncate(&self, order: i32) -> Self {
        let order = order.min(self.order);
        LamSeries { coeffs: self.coeffs.range(..=order).map(|(e, c)| (*e, c.clone())).collect(), order }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.truncate(self.order.min(o.order));
        for (e, c) in o.coeffs.range(..=out.order) {
            let sum = out.coeff(*e).add(c);
            out.set(*e, sum);
        }
        out
    }

    pub fn neg(&self) -> Self {
        LamSeries { coeffs: self.coeffs.iter().map(|(e, c)| (*e, c.neg())).collect(), order: self.order }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let order = (self.order + o.valuation()).min(o.order + self.valuation());
        let mut acc: BTreeMap<i32, EllValue> = BTreeMap::new();
        for (ea, ca) in &self.coeffs {
            for (eb, cb) in &o.coeffs {
                let e = ea + eb;
                if e > order {
                    break;
                }
                let p = ca.mul(cb);
                acc.entry(e).and_modify(|x| *x = x.add(&p)).or_insert(p);
            }
        }
        LamSeries::from_coeffs(acc, order)
    }

    pub fn pow(&self, n: u32) -> Self {
        if n == 0 {
            return LamSeries::constant(EllValue::one(Basis::Pi), self.order);
        }
        let mut out = self.clone();
        for _ in 1..n {
            out = out.mul(self);
        }
        out
    }

    /// Multiplies every coefficient by a λ-free value.
    pub fn scale(&self, v: &EllValue) -> Self {
        LamSeries::from_coeffs(self.coeffs.iter().map(|(e, c)| (*e, c.mul(v))), self.order)
    }
}

fn s_poly(c: &Integer, deg: u32) -> IntPoly {
    IntPoly::monomial(c.clone(), deg, 0)
}

/// Laurent coefficients of p(sλ, s/λ), keyed by λ exponent, as polynomials in s.
fn laurent_poly(p: &IntPoly) -> BTreeMap<i32, IntPoly> {
    let mut out: BTreeMap<i32, IntPoly> = BTreeMap::new();
    for ((a, b), c) in p.terms() {
        let t = s_poly(c, a + b);
        let e = a as i32 - b as i32;
        out.entry(e).and_modify(|x| *x = x.add(&t)).or_insert(t);
    }
    out
}

fn ratfunc_valuation(r: &RatFunc) -> Option<i32> {
    if r.is_zero() {
        return None;
    }
    let lo = |p: &IntPoly| *laurent_poly(p).keys().next().unwrap();
    Some(lo(r.num()) - lo(r.den()))
}

/// Expands r(sλ, s/λ) through λ^order.
fn ratfunc_series(r: &RatFunc, order: i32) -> LamSeries {
    let Some(v) = ratfunc_valuation(r) else {
        return LamSeries::zero(order);
    };
    let num = laurent_poly(r.num());
    let den = laurent_poly(r.den());
    let (n0, d0) = (*num.keys().next().unwrap(), *den.keys().next().unwrap());
    let inv_lead = FieldElem::from_poly(den[&d0].clone()).inv().expect("nonzero leading coefficient");
    let mut q: Vec<FieldElem> = Vec::new();
    for j in 0..=(order - v).max(-1) {
        let mut acc = num.get(&(n0 + j)).map(|p| FieldElem::from_poly(p.clone())).unwrap_or_else(FieldElem::zero);
        for i in 1..=j {
            if let Some(d) = den.get(&(d0 + i)) {
                acc = acc.sub(&q[(j - i) as usize].mul_poly(d));
            }
        }
        q.push(acc.mul(&inv_lead));
    }
    LamSeries::from_coeffs(
        q.into_iter().enumerate().map(|(j, c)| (v + j as i32, EllValue::constant(c, Basis::Pi))),
        order,
    )
}

/// Binomial coefficient (1/2 choose j).
fn half_binomial(j: u32) -> Rational {
    let mut r = Rational::from(1);
    for i in 0..j {
        r *= Rational::from((1 - 2 * i as i64, 2)) / Rational::from(i + 1);
    }
    r
}

fn rational_elem(r: &Rational) -> FieldElem {
    FieldElem::integer(r.numer().clone()).mul(&FieldElem::integer(r.denom().clone()).inv().unwrap())
}

/// Series of u_h = (1+s²λ²)^{1/2} (`vertical = false`) or
/// u_v = (s/λ)(1+λ²/s²)^{1/2} (`vertical = true`) through λ^order.
fn root_series(vertical: bool, order: i32) -> LamSeries {
    let mut terms = Vec::new();
    for j in 0u32.. {
        let (e, s_exp) = if vertical { (2 * j as i32 - 1, 1 - 2 * j as i32) } else { (2 * j as i32, 2 * j as i32) };
        if e > order {
            break;
        }
        let c = rational_elem(&half_binomial(j)).mul(&FieldElem::monomial(1, s_exp, 0));
        terms.push((e, EllValue::constant(c, Basis::Pi)));
    }
    LamSeries::from_coeffs(terms, order)
}

/// λ-valuation of each root 1, u_v, u_h, u_v u_h.
const ROOT_VALUATION: [i32; 4] = [0, -1, 0, -1];

fn root_of(i: usize, order: i32) -> LamSeries {
    match i {
        0 => LamSeries::constant(EllValue::one(Basis::Pi), order),
        1 => root_series(true, order),
        2 => root_series(false, order),
        _ => root_series(true, order).mul(&root_series(false, order + 1)),
    }
}

/// Lower bound on the λ-valuation of a coefficient after substitution.
fn field_valuation(c: &FieldElem) -> Option<i32> {
    c.components().iter().enumerate().filter_map(|(i, r)| ratfunc_valuation(r).map(|v| v + ROOT_VALUATION[i])).min()
}

fn field_series(c: &FieldElem, order: i32) -> LamSeries {
    let mut out = LamSeries::zero(order);
    for (i, r) in c.components().iter().enumerate() {
        let Some(v) = ratfunc_valuation(r) else { continue };
        let part = ratfunc_series(r, order - ROOT_VALUATION[i]).mul(&root_of(i, order - v));
        out = out.add(&part.truncate(order));
    }
    out
}

/// Moments I_m = (2/π)∫ sin^{2m}φ (1 − k² sin²φ)^{−1/2} dφ at k = s², m = 0..=last,
/// from (2m+1)k² I_{m+1} = 2m(1+k²) I_m − (2m−1) I_{m−1}.
fn moments(last: usize) -> Vec<EllValue> {
    let b = Basis::Pi;
    let k2 = FieldElem::monomial(1, 4, 0);
    let inv_k2 = k2.inv().unwrap();
    let mut out = vec![EllValue::k(b)];
    if last >= 1 {
        out.push(EllValue::k(b).sub(&EllValue::e(b)).scale(&inv_k2));
    }
    for m in 1..last {
        let mi = m as i64;
        let a = out[m].scale(&FieldElem::one().add(&k2).scale_int(&Integer::from(2 * mi)));
        let c = out[m - 1].scale(&FieldElem::integer(2 * mi - 1));
        out.push(a.sub(&c).scale(&inv_k2.mul(&FieldElem::ratio(1, 2 * mi + 1))));
    }
    out
}

/// Expansion of Π̃(−s²λ², s²) through λ^order.
pub fn pi_lambda_series(order: i32) -> Result<LamSeries, SeriesError> {
    if order > PI_SERIES_BOUND {
        return Err(SeriesError::OrderTooHigh { requested: order, bound: PI_SERIES_BOUND });
    }
    let last = (order.max(0) / 2) as usize;
    let terms = moments(last).into_iter().enumerate().map(|(m, im)| {
        let sign = if m % 2 == 0 { 1 } else { -1 };
        (2 * m as i32, im.scale(&FieldElem::monomial(sign, 2 * m as i32, 0)))
    });
    Ok(LamSeries::from_coeffs(terms, order))
}

/// Substitutes s_h = sλ, s_v = s/λ into `a` (basis `Pi`) and expands through λ^order.
pub fn lam_substitute(a: &EllValue, order: i32) -> Result<LamSeries, SeriesError> {
    if a.basis() != Basis::Pi {
        return Err(SeriesError::Basis);
    }
    let mut out = LamSeries::zero(order);
    let mut pi_cache: BTreeMap<(u32, i32), LamSeries> = BTreeMap::new();
    for (m, c) in a.terms() {
        let Some(v) = field_valuation(c) else { continue };
        let coeff = field_series(c, order);
        let ek = EllValue::term(FieldElem::one(), EllMonomial::new(m.i, m.j, 0), Basis::Pi);
        let mut part = coeff.scale(&ek);
        if m.l > 0 {
            let need = order - v.min(0);
            if need > PI_SERIES_BOUND {
                return Err(SeriesError::OrderTooHigh { requested: need, bound: PI_SERIES_BOUND });
            }
            let pil = match pi_cache.get(&(m.l, need)) {
                Some(s) => s.clone(),
                None => {
                    let s = pi_lambda_series(need)?.pow(m.l);
                    pi_cache.insert((m.l, need), s.clone());
                    s
                }
            };
            part = part.mul(&pil);
        }
        out = out.add(&part.truncate(order));
    }
    Ok(out)
}

/// Sums a series at (s, λ), reading `E`, `K` as Ẽ(s²), K̃(s²).
pub fn eval_series(series: &LamSeries, s: &Float, lambda: &Float) -> Result<Float, SeriesError> {
    let prec = s.prec();
    let p = ParamPoint::new(s.clone(), s.clone())?;
    let mut acc = Float::new(prec);
    for (e, c) in series.terms() {
        acc += eval_value(c, &p)? * Float::with_val(prec, lambda.pow(*e));
    }
    Ok(acc)
}

#[derive(Debug, Clone, Serialize)]
pub struct PiSeriesCheck {
    pub s: f64,
    pub lambda: f64,
    pub order: i32,
    pub residual: f64,
}

/// Compares the truncated Π̃ expansion against trapezoidal quadrature of
/// Π̃(−s²λ², s²).
pub fn check_pi_series(s: &Float, lambda: &Float, order: i32) -> Result<PiSeriesCheck, SeriesError> {
    let prec = s.prec();
    let series = pi_lambda_series(order)?;
    let sum = eval_series(&series, s, lambda)?;
    let n = -Float::with_val(prec, s * lambda).square();
    let (quad, _) = ell_pi_quadrature(&n, &Float::with_val(prec, s.square_ref()))?;
    Ok(PiSeriesCheck {
        s: s.to_f64(),
        lambda: lambda.to_f64(),
        order,
        residual: (sum - quad).abs().to_f64(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ellring::parse_value;

    fn val(src: &str) -> EllValue {
        parse_value(src, Basis::Pi).unwrap()
    }

    #[test]
    fn printed_low_orders_of_the_third_kind_expansion() {
        let s = pi_lambda_series(6).unwrap();
        assert_eq!(s.coeff(0), val("K"));
        assert_eq!(s.coeff(2), val("(E - K)/s^2"));
        assert_eq!(s.coeff(4), val("((s^4+2)*K - 2*(s^4+1)*E)/(3*s^4)"));
        assert_eq!(s.coeff(6), val("((8*s^8+7*s^4+8)*E - (4*s^8+3*s^4+8)*K)/(15*s^6)"));
        assert!(pi_lambda_series(PI_SERIES_BOUND + 1).is_err());
    }

    #[test]
    fn constants_and_roots() {
        let one = lam_substitute(&EllValue::one(Basis::Pi), 6).unwrap();
        assert_eq!(one, LamSeries::constant(EllValue::one(Basis::Pi), 6));
        // u_v² = 1 + s²/λ² exactly.
        let uv2 = root_series(true, 4).mul(&root_series(true, 6));
        assert_eq!(uv2.coeff(-2), val("s^2"));
        assert_eq!(uv2.coeff(0), val("1"));
        for e in 1..=uv2.order() {
            assert!(uv2.coeff(e).is_zero(), "λ^{e}");
        }
    }

    #[test]
    fn rational_expansion() {
        // 1/(1 − s_h) = Σ (sλ)^j
        let r = RatFunc::new(IntPoly::one(), IntPoly::from_terms([(0, 0, 1i64), (1, 0, -1)])).unwrap();
        let s = ratfunc_series(&r, 5);
        for j in 0..=5 {
            assert_eq!(s.coeff(j), EllValue::constant(FieldElem::monomial(1, j, 0), Basis::Pi));
        }
        let u = lam_substitute(&val("s_v/s_h"), 3).unwrap();
        assert_eq!(u.coeff(-2), val("1"));
        assert_eq!(u.terms().count(), 1);
    }

    #[test]
    fn expansion_agrees_with_quadrature() {
        let f = |x: f64| Float::with_val(180, x);
        let c = check_pi_series(&f(0.7), &f(0.1), 24).unwrap();
        assert!(c.residual < 1e-20, "{c:?}");
        // dropping the λ⁸ term is visible at that size
        let short = pi_lambda_series(6).unwrap();
        let full = pi_lambda_series(24).unwrap();
        let gap = eval_series(&full.sub(&short), &f(0.7), &f(0.1)).unwrap();
        let c8 = eval_series(&LamSeries::monomial(full.coeff(8), 8, 8), &f(0.7), &f(0.1)).unwrap();
        assert!((gap - c8).abs().to_f64() < 1e-9);
    }

    #[test]
    fn truncation_tracks_valuation() {
        let a = LamSeries::monomial(val("1"), -2, 4);
        let b = LamSeries::monomial(val("s"), 1, 3);
        assert_eq!(a.mul(&b).order(), 1);
        assert_eq!(a.pow(0).order(), 4);
        assert_eq!(a.pow(2).coeff(-4), val("1"));
    }
}
