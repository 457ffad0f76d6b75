//! Coefficient fields for differential operators, and sparse (Ẽ, K̃, Π̃)
//! forms over them.
//!
//! The operators can be built over the full field `FieldElem` or over its
//! specialization at a fixed rational ν (`NuElem`), where the base field is
//! univariate and the intermediate expressions stay small.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use rug::Integer;

use crate::coeffield::FieldElem;
use crate::ellring::{Basis, DerivClosure, EllMonomial, EllValue};

pub trait OpCoeff: Clone + PartialEq + fmt::Display + fmt::Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn inv(&self) -> Option<Self>;
    fn scale_int(&self, c: &Integer) -> Self;
    /// d/dk at fixed ν.
    fn derivative_k(&self) -> Self;
    /// Image of a full-field element; `None` if it has a pole there.
    fn from_field(c: &FieldElem) -> Option<Self>;
    /// Derivatives of Ẽ, K̃, Π̃ (basis Π̃) with coefficients in this field.
    fn closure() -> &'static [Form<Self>; 3];

    fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc.mul(self))
    }
}

fn closure_tables<C: OpCoeff>() -> [Form<C>; 3] {
    let t = DerivClosure::get();
    [&t.d_e, &t.d_k, &t.d_pi].map(|v| Form::from_value(v).expect("derivative table has no pole"))
}

impl OpCoeff for FieldElem {
    fn zero() -> Self {
        FieldElem::zero()
    }
    fn one() -> Self {
        FieldElem::one()
    }
    fn is_zero(&self) -> bool {
        FieldElem::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        FieldElem::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        FieldElem::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        FieldElem::mul(self, o)
    }
    fn inv(&self) -> Option<Self> {
        FieldElem::inv(self).ok()
    }
    fn scale_int(&self, c: &Integer) -> Self {
        FieldElem::scale_int(self, c)
    }
    fn derivative_k(&self) -> Self {
        FieldElem::derivative_k(self)
    }
    fn from_field(c: &FieldElem) -> Option<Self> {
        Some(c.clone())
    }
    fn closure() -> &'static [Form<Self>; 3] {
        static T: OnceLock<[Form<FieldElem>; 3]> = OnceLock::new();
        T.get_or_init(closure_tables)
    }
    fn pow(&self, e: u32) -> Self {
        FieldElem::pow(self, e)
    }
}

/// Σ c·Ẽ^i K̃^j Π̃^l in basis Π̃.
#[derive(Clone, PartialEq, Debug)]
pub struct Form<C> {
    terms: BTreeMap<EllMonomial, C>,
}

impl<C: OpCoeff> Form<C> {
    pub fn zero() -> Self {
        Form { terms: BTreeMap::new() }
    }

    pub fn constant(c: C) -> Self {
        let mut f = Self::zero();
        f.add_term(EllMonomial::ONE, c);
        f
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (EllMonomial, C)>) -> Self {
        let mut f = Self::zero();
        for (m, c) in terms {
            f.add_term(m, c);
        }
        f
    }

    /// The image of a value in basis Π̃; `None` on a basis mismatch or a pole.
    pub fn from_value(v: &EllValue) -> Option<Self> {
        if v.basis() != Basis::Pi && v.has_pi() {
            return None;
        }
        let mut f = Self::zero();
        for (m, c) in v.terms() {
            f.add_term(*m, C::from_field(c)?);
        }
        Some(f)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&EllMonomial, &C)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &EllMonomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest monomial in (l, j, i) order.
    pub fn leading(&self) -> Option<(&EllMonomial, &C)> {
        self.terms.iter().next_back()
    }

    pub fn pi_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.l).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(EllMonomial::degree).max().unwrap_or(0)
    }

    fn add_term(&mut self, m: EllMonomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(x) => {
                let s = x.add(&c);
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *x = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(*m, C::zero().sub(c));
        }
        out
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Form { terms: self.terms.iter().map(|(m, x)| (*m, x.mul(c))).collect() }
    }

    /// The Π̃^l coefficient, as a form in Ẽ, K̃.
    pub fn pi_coefficient(&self, l: u32) -> Self {
        Self::from_terms(self.terms.iter().filter(|(m, _)| m.l == l).map(|(m, c)| (EllMonomial::new(m.i, m.j, 0), c.clone())))
    }

    /// d/dk at fixed ν by the chain rule over the generators.
    pub fn derivative_k(&self) -> Self {
        let tables = C::closure();
        let units = [EllMonomial::new(1, 0, 0), EllMonomial::new(0, 1, 0), EllMonomial::new(0, 0, 1)];
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out.add_term(*m, c.derivative_k());
            for ((exp, table), unit) in [m.i, m.j, m.l].into_iter().zip(tables).zip(units) {
                if exp == 0 {
                    continue;
                }
                let rest = EllMonomial::new(m.i - unit.i, m.j - unit.j, m.l - unit.l);
                let factor = c.scale_int(&Integer::from(exp));
                for (tm, tc) in &table.terms {
                    out.add_term(tm.mul(&rest), tc.mul(&factor));
                }
            }
        }
        out
    }
}

impl<C: OpCoeff> fmt::Display for Form<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| {
                let mut s = format!("({c})");
                for (name, e) in [("E", m.i), ("K", m.j), ("P", m.l)] {
                    match e {
                        0 => {}
                        1 => s.push_str(&format!("*{name}")),
                        _ => s.push_str(&format!("*{name}^{e}")),
                    }
                }
                s
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ellring::parse_value;

    #[test]
    fn matches_the_value_derivative() {
        let v = parse_value("u_h*P^2*K/s_v + (s_h - u_v)*E*K + s_h*s_v", Basis::Pi).unwrap();
        let f: Form<FieldElem> = Form::from_value(&v).unwrap();
        let g: Form<FieldElem> = Form::from_value(&v.derivative_k()).unwrap();
        assert_eq!(f.derivative_k(), g);
    }

    #[test]
    fn pi_coefficients() {
        let v = parse_value("s_h*P*E + P*K + E^2", Basis::Pi).unwrap();
        let f: Form<FieldElem> = Form::from_value(&v).unwrap();
        assert_eq!(f.pi_degree(), 1);
        assert_eq!(f.pi_coefficient(1).num_terms(), 2);
        assert_eq!(f.pi_coefficient(0).total_degree(), 2);
    }
}
