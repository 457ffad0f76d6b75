//! Polynomials in the normalized complete elliptic integrals Ẽ, K̃, Π̃ with
//! coefficients in the extension field.
//!
//! A value carries one third-kind generator, tagged by `Basis`:
//! `Pi` is Π̃(−s_h², s_h s_v), `PiP` is Π̃(−s_v², s_h s_v). The two are tied by
//! Π̃ + Π̃_p = K̃ + 1/w with w = u_v u_h, and `change_basis` rewrites between them.

mod deriv;
mod latex;
mod parse;
mod serial;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use rug::Integer;

use crate::coeffield::{FieldElem, RatFunc, Substitution};

pub use deriv::DerivClosure;
pub use latex::{field_latex, latex_document, poly_latex, LatexStyle, Variables};
pub use parse::{parse_field, parse_value, ParseError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Basis {
    #[serde(rename = "PI")]
    Pi,
    #[serde(rename = "PI_P")]
    PiP,
}

impl Basis {
    pub fn other(self) -> Basis {
        match self {
            Basis::Pi => Basis::PiP,
            Basis::PiP => Basis::Pi,
        }
    }
}

/// Ẽ^i K̃^j Π̃^l. Ordered by (l, j, i).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct EllMonomial {
    pub i: u32,
    pub j: u32,
    pub l: u32,
}

impl EllMonomial {
    pub const ONE: EllMonomial = EllMonomial { i: 0, j: 0, l: 0 };

    pub fn new(i: u32, j: u32, l: u32) -> Self {
        EllMonomial { i, j, l }
    }

    pub fn degree(&self) -> u32 {
        self.i + self.j + self.l
    }

    pub fn mul(&self, o: &Self) -> Self {
        EllMonomial { i: self.i + o.i, j: self.j + o.j, l: self.l + o.l }
    }

    pub fn divides(&self, o: &Self) -> bool {
        self.i <= o.i && self.j <= o.j && self.l <= o.l
    }

    fn div(&self, o: &Self) -> Self {
        EllMonomial { i: self.i - o.i, j: self.j - o.j, l: self.l - o.l }
    }
}

impl Ord for EllMonomial {
    fn cmp(&self, o: &Self) -> Ordering {
        (self.l, self.j, self.i).cmp(&(o.l, o.j, o.i))
    }
}

impl PartialOrd for EllMonomial {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum EllError {
    #[error("basis mismatch: {0:?} vs {1:?}")]
    BasisMismatch(Basis, Basis),
    #[error("division by the zero value")]
    DivisionByZero,
    #[error("division is not exact; remainder has {} terms", .remainder.num_terms())]
    NonExact { remainder: Box<EllValue> },
}

#[derive(Clone, PartialEq, Eq)]
pub struct EllValue {
    terms: BTreeMap<EllMonomial, FieldElem>,
    basis: Basis,
}

impl EllValue {
    pub fn zero(basis: Basis) -> Self {
        EllValue { terms: BTreeMap::new(), basis }
    }

    pub fn one(basis: Basis) -> Self {
        Self::constant(FieldElem::one(), basis)
    }

    pub fn constant(c: FieldElem, basis: Basis) -> Self {
        Self::term(c, EllMonomial::ONE, basis)
    }

    pub fn term(c: FieldElem, m: EllMonomial, basis: Basis) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        EllValue { terms, basis }
    }

    pub fn e(basis: Basis) -> Self {
        Self::term(FieldElem::one(), EllMonomial::new(1, 0, 0), basis)
    }

    pub fn k(basis: Basis) -> Self {
        Self::term(FieldElem::one(), EllMonomial::new(0, 1, 0), basis)
    }

    /// The third-kind generator of the given basis.
    pub fn pi(basis: Basis) -> Self {
        Self::term(FieldElem::one(), EllMonomial::new(0, 0, 1), basis)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (EllMonomial, FieldElem)>, basis: Basis) -> Self {
        let mut out = Self::zero(basis);
        for (m, c) in terms {
            out.add_term(m, c);
        }
        out
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in descending (l, j, i) order.
    pub fn terms(&self) -> impl Iterator<Item = (&EllMonomial, &FieldElem)> {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, m: &EllMonomial) -> FieldElem {
        self.terms.get(m).cloned().unwrap_or_else(FieldElem::zero)
    }

    pub fn leading(&self) -> Option<(&EllMonomial, &FieldElem)> {
        self.terms.iter().next_back()
    }

    pub fn has_pi(&self) -> bool {
        self.terms.keys().any(|m| m.l > 0)
    }

    pub fn pi_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.l).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    /// True when every monomial has total degree `d`.
    pub fn is_homogeneous(&self, d: u32) -> bool {
        self.terms.keys().all(|m| m.degree() == d)
    }

    /// Relabels the basis tag of a value without third-kind terms.
    pub fn with_basis(mut self, basis: Basis) -> Self {
        assert!(!self.has_pi() || self.basis == basis, "value contains the third-kind generator");
        self.basis = basis;
        self
    }

    fn add_term(&mut self, m: EllMonomial, c: FieldElem) {
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

    fn common_basis(&self, other: &Self) -> Result<Basis, EllError> {
        if self.basis == other.basis || !other.has_pi() {
            Ok(self.basis)
        } else if !self.has_pi() {
            Ok(other.basis)
        } else {
            Err(EllError::BasisMismatch(self.basis, other.basis))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, EllError> {
        let basis = self.common_basis(other)?;
        let mut out = self.clone();
        out.basis = basis;
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, EllError> {
        self.try_add(&other.neg())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, EllError> {
        let basis = self.common_basis(other)?;
        let mut out = Self::zero(basis);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca.mul(cb));
            }
        }
        Ok(out)
    }

    /// Panicking variants for internal use where the bases are known to agree.
    pub fn add(&self, other: &Self) -> Self {
        self.try_add(other).expect("basis mismatch")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.try_sub(other).expect("basis mismatch")
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.try_mul(other).expect("basis mismatch")
    }

    pub fn neg(&self) -> Self {
        EllValue { terms: self.terms.iter().map(|(m, c)| (*m, c.neg())).collect(), basis: self.basis }
    }

    pub fn square(&self) -> Self {
        let items: Vec<_> = self.terms.iter().collect();
        let mut out = Self::zero(self.basis);
        let two = Integer::from(2);
        for (a, (ma, ca)) in items.iter().enumerate() {
            out.add_term(ma.mul(ma), ca.mul(ca));
            for (mb, cb) in &items[a + 1..] {
                out.add_term(ma.mul(mb), ca.mul(cb).scale_int(&two));
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one(self.basis);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    pub fn scale(&self, c: &FieldElem) -> Self {
        if c.is_zero() {
            return Self::zero(self.basis);
        }
        EllValue { terms: self.terms.iter().map(|(m, x)| (*m, x.mul(c))).collect(), basis: self.basis }
    }

    pub fn scale_rat(&self, c: &RatFunc) -> Self {
        if c.is_zero() {
            return Self::zero(self.basis);
        }
        EllValue { terms: self.terms.iter().map(|(m, x)| (*m, x.mul_rat(c))).collect(), basis: self.basis }
    }

    pub fn mul_monomial(&self, m: &EllMonomial) -> Self {
        EllValue { terms: self.terms.iter().map(|(x, c)| (x.mul(m), c.clone())).collect(), basis: self.basis }
    }

    /// Applies `f` to every coefficient.
    pub fn map_coeffs(&self, f: impl Fn(&FieldElem) -> FieldElem) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, c)| (*m, f(c))), self.basis)
    }

    /// Exact quotient in the polynomial ring over the coefficient field,
    /// with Ẽ, K̃ and the third-kind generator algebraically independent.
    pub fn exact_divide(&self, den: &Self) -> Result<Self, EllError> {
        let (q, remainder) = self.div_rem(den)?;
        if remainder.is_zero() {
            Ok(q)
        } else {
            Err(EllError::NonExact { remainder: Box::new(remainder) })
        }
    }

    /// Division by the leading term of `den`: `self = q·den + r` where no term
    /// of `r` is divisible by the leading monomial of `den`.
    pub fn div_rem(&self, den: &Self) -> Result<(Self, Self), EllError> {
        let basis = self.common_basis(den)?;
        let Some((lm, lc)) = den.leading() else {
            return Err(EllError::DivisionByZero);
        };
        let (lm, inv) = (*lm, lc.inv().expect("nonzero leading coefficient"));
        let rest: Vec<(EllMonomial, FieldElem)> =
            den.terms.iter().rev().skip(1).map(|(m, c)| (*m, c.clone())).collect();
        let mut r = self.clone();
        r.basis = basis;
        let mut q = Self::zero(basis);
        let mut remainder = Self::zero(basis);
        while let Some((m, c)) = r.terms.pop_last() {
            if !lm.divides(&m) {
                remainder.terms.insert(m, c);
                continue;
            }
            let tm = m.div(&lm);
            let tc = c.mul(&inv);
            for (dm, dc) in &rest {
                r.add_term(tm.mul(dm), tc.mul(dc).neg());
            }
            q.add_term(tm, tc);
        }
        Ok((q, remainder))
    }

    /// The square root of `self / lc(self)` with leading coefficient 1, if the
    /// value is a constant multiple of a square.
    pub fn normalized_sqrt(&self) -> Option<Self> {
        let (lm, lc) = self.leading()?;
        let inv = lc.inv().ok()?;
        if lm.i % 2 + lm.j % 2 + lm.l % 2 != 0 {
            return None;
        }
        let target = self.scale(&inv);
        let head = EllMonomial::new(lm.i / 2, lm.j / 2, lm.l / 2);
        let two_inv = FieldElem::ratio(1, 2);
        let mut root = Self::term(FieldElem::one(), head, self.basis);
        let mut rest = target.sub(&root.square());
        let bound = head.degree() * 2 + 8;
        let mut steps = 0usize;
        while let Some((m, c)) = rest.leading() {
            if !head.divides(m) {
                return None;
            }
            let next = Self::term(c.mul(&two_inv), m.div(&head), self.basis);
            if next.terms.keys().next().map(|x| *x >= head).unwrap_or(false) {
                return None;
            }
            // (root + next)² − target = rest − 2·root·next − next²
            rest = rest.sub(&root.mul(&next).scale(&FieldElem::integer(2))).sub(&next.square());
            root = root.add(&next);
            steps += 1;
            if steps > 64 * bound as usize {
                return None;
            }
        }
        Some(root)
    }

    /// Rewrites the value in the other third-kind basis using
    /// Π̃_other = K̃ + 1/w − Π̃_this.
    pub fn change_basis(&self, to: Basis) -> Self {
        if to == self.basis {
            return self.clone();
        }
        if !self.has_pi() {
            return self.clone().with_basis(to);
        }
        let inv_w = FieldElem::w().inv().unwrap();
        let sub = EllValue::k(to).add(&EllValue::constant(inv_w, to)).sub(&EllValue::pi(to));
        let mut powers = vec![EllValue::one(to)];
        let mut out = Self::zero(to);
        for (m, c) in &self.terms {
            while powers.len() <= m.l as usize {
                let next = powers.last().unwrap().mul(&sub);
                powers.push(next);
            }
            let rest = EllMonomial::new(m.i, m.j, 0);
            for (pm, pc) in &powers[m.l as usize].terms {
                out.add_term(pm.mul(&rest), pc.mul(c));
            }
        }
        out
    }

    /// Kramers-Wannier duality: s_h → 1/s_v, s_v → 1/s_h, Ẽ → Ẽ/k + (k²−1)K̃/k,
    /// K̃ → kK̃, third-kind generator → k·(same generator), with k = s_h s_v.
    pub fn duality_map(&self) -> Self {
        let sub = Substitution::dual();
        let b = self.basis;
        let k = FieldElem::monomial(1, 1, 1);
        let e_img = EllValue::e(b)
            .scale(&FieldElem::monomial(1, -1, -1))
            .add(&EllValue::k(b).scale(&FieldElem::from_poly(crate::coeffield::IntPoly::from_terms([
                (2, 2, 1i64),
                (0, 0, -1),
            ]))
            .mul(&FieldElem::monomial(1, -1, -1))));
        let mut epow = vec![EllValue::one(b)];
        let mut out = Self::zero(b);
        for (m, c) in &self.terms {
            while epow.len() <= m.i as usize {
                let next = epow.last().unwrap().mul(&e_img);
                epow.push(next);
            }
            let coeff = c.substitute(&sub).mul(&k.pow(m.j + m.l));
            let rest = EllMonomial::new(0, m.j, m.l);
            for (pm, pc) in &epow[m.i as usize].terms {
                out.add_term(pm.mul(&rest), pc.mul(&coeff));
            }
        }
        out
    }

    /// Exchanges the two directions: s_h ↔ s_v, u_h ↔ u_v, Π̃ ↔ Π̃_p.
    pub fn swap_hv(&self) -> Self {
        EllValue {
            terms: self.terms.iter().map(|(m, c)| (*m, c.swap_hv())).collect(),
            basis: self.basis.other(),
        }
    }

    /// Ẽ → −Ẽ, K̃ → −K̃ (the third-kind generator must be absent).
    pub fn flip_ek_sign(&self) -> Self {
        assert!(!self.has_pi());
        EllValue {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (*m, if (m.i + m.j) % 2 == 1 { c.neg() } else { c.clone() }))
                .collect(),
            basis: self.basis,
        }
    }

    /// Isotropic specialization s_v = s_h = s, with the third-kind generator
    /// eliminated through Π̃ = K̃/2 + 1/(2(1+s²)). The result has no Π̃ and
    /// coefficients in s_h (read as s) and u_h only.
    pub fn isotropic_reduce(&self) -> Self {
        let sub = Substitution::isotropic();
        let b = self.basis;
        let pi_img = EllValue::k(b).scale(&FieldElem::ratio(1, 2)).add(&EllValue::constant(
            FieldElem::from_rat(
                &RatFunc::new(
                    crate::coeffield::IntPoly::one(),
                    crate::coeffield::IntPoly::from_terms([(2, 0, 2i64), (0, 0, 2)]),
                )
                .unwrap(),
            ),
            b,
        ));
        let mut ppow = vec![EllValue::one(b)];
        let mut out = Self::zero(b);
        for (m, c) in &self.terms {
            while ppow.len() <= m.l as usize {
                let next = ppow.last().unwrap().mul(&pi_img);
                ppow.push(next);
            }
            let coeff = c.substitute(&sub);
            let rest = EllMonomial::new(m.i, m.j, 0);
            for (pm, pc) in &ppow[m.l as usize].terms {
                out.add_term(pm.mul(&rest), pc.mul(&coeff));
            }
        }
        out.with_basis(Basis::Pi)
    }

    /// Applies a substitution to the coefficients only.
    pub fn substitute_coeffs(&self, sub: &Substitution) -> Self {
        self.map_coeffs(|c| c.substitute(sub))
    }

    /// Derivative in k at fixed ν.
    pub fn derivative_k(&self) -> Self {
        match self.basis {
            Basis::Pi => DerivClosure::get().apply(self),
            Basis::PiP => DerivClosure::get().apply(&self.swap_hv()).swap_hv(),
        }
    }
}

impl fmt::Display for EllValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let pi = match self.basis {
            Basis::Pi => "P",
            Basis::PiP => "Pp",
        };
        let mut first = true;
        for (m, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            for (name, e) in [("E", m.i), ("K", m.j), (pi, m.l)] {
                match e {
                    0 => {}
                    1 => write!(f, "*{name}")?,
                    _ => write!(f, "*{name}^{e}")?,
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for EllValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EllValue[{:?}]({self})", self.basis)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> EllValue {
        parse_value(s, Basis::Pi).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let a = v("E + K").mul(&v("E - K"));
        assert_eq!(a, v("E^2 - K^2"));
        assert_eq!(a.exact_divide(&v("E - K")).unwrap(), v("E + K"));
    }

    #[test]
    fn square_roots_up_to_a_constant() {
        let a = v("u_v*E*P/s_h + (s_h - 1)*K^2 + 3*w");
        let sq = a.square().scale(&FieldElem::monomial(5, 1, -2));
        let r = sq.normalized_sqrt().unwrap();
        let lc = a.leading().unwrap().1.inv().unwrap();
        assert_eq!(r, a.scale(&lc));
        assert!(v("E^2 + K^2").normalized_sqrt().is_none());
        assert!(v("E*K").normalized_sqrt().is_none());
    }

    #[test]
    fn remainder_of_leading_term_division() {
        let (q, r) = v("E^2*K + 3*E + K").div_rem(&v("E*K + 1")).unwrap();
        assert_eq!(q, v("E"));
        assert_eq!(r, v("2*E + K"));
    }

    #[test]
    fn non_exact_division_reports_remainder() {
        let err = v("E^2 + K").exact_divide(&v("E - K")).unwrap_err();
        assert!(matches!(err, EllError::NonExact { .. }));
    }

    #[test]
    fn basis_mismatch_is_an_error() {
        let a = EllValue::pi(Basis::Pi);
        let b = EllValue::pi(Basis::PiP);
        assert!(matches!(a.try_add(&b), Err(EllError::BasisMismatch(..))));
        assert!(a.try_add(&EllValue::k(Basis::PiP)).is_ok());
    }

    #[test]
    fn change_basis_of_generator() {
        let p = EllValue::pi(Basis::PiP).change_basis(Basis::Pi);
        assert_eq!(p, v("K + u_v*u_h/((1+s_v^2)*(1+s_h^2)) - P"));
        let x = v("(s_h+1)*P^2*E + u_v*K*P - 3");
        assert_eq!(x.change_basis(Basis::PiP).change_basis(Basis::Pi), x);
    }

    #[test]
    fn duality_of_nearest_diagonal() {
        let c11 = v("E/(s_h*s_v) + (s_h^2*s_v^2 - 1)*K/(s_h*s_v)");
        assert_eq!(c11.duality_map(), v("E"));
        assert_eq!(c11.duality_map().duality_map(), c11);
        assert_eq!(EllValue::one(Basis::Pi).duality_map(), EllValue::one(Basis::Pi));
    }

    #[test]
    fn swap_is_an_involution() {
        let x = v("(s_h+2*s_v)*u_v*P^2*E + u_h*K - 3");
        assert_eq!(x.swap_hv().basis(), Basis::PiP);
        assert_eq!(x.swap_hv().swap_hv(), x);
    }

    #[test]
    fn derivatives_of_generators() {
        assert_eq!(v("K").derivative_k(), v("E/(s_h*s_v*(1 - s_h^2*s_v^2)) - K/(s_h*s_v)"));
        assert_eq!(v("E").derivative_k(), v("(E - K)/(s_h*s_v)"));
        assert!(v("1").derivative_k().is_zero());
    }
}
