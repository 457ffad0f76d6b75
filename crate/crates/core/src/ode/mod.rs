//! Linear differential operators in k at fixed ν that annihilate table
//! entries, and their staged factorization.
//!
//! Writing Π̃_w = w·Π̃, a value X = Σ_l g_l(Ẽ,K̃)·Π̃_w^l keeps this shape under
//! d/dk, and the Π̃_w^l coefficient of L(X) is L(g_l) plus contributions from
//! higher l. An operator annihilating the top coefficient therefore lowers
//! the Π̃ degree. In basis Π̃ the top coefficient is f = w^m·g_m, so the stage
//! operator is w^{−m}·M·w^m with M annihilating f.

mod row_operator;
mod coeff;
mod fixed;
pub mod linalg;

use rug::{Integer, Rational};
use serde::Serialize;

pub use row_operator::{c1_coefficients, fd_weights, verify_low_row_operator, RowOperatorReport, RowOperatorSample, ROW_OPERATOR_POINTS};
pub use coeff::{Form, OpCoeff};
pub use fixed::{NuElem, NU_DEN, NU_NUM};

use crate::coeffield::FieldElem;
use crate::ellring::{field_latex, EllMonomial, EllValue, Variables};
use crate::numerics::NumericError;
use linalg::{first_relation, rational_rank};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum OdeError {
    #[error("an operator needs a nonzero coefficient")]
    Empty,
    #[error("expected a value in basis Pi")]
    Basis,
    #[error("no linear relation among the first {0} derivatives")]
    NoRelation(usize),
    #[error("order {order} is not minimal: the derivatives 0..{order} have rank {rank}")]
    RankDefect { order: usize, rank: usize },
    #[error("stage {stage} left the Π̃ degree at {degree}")]
    StageStuck { stage: usize, degree: u32 },
    #[error("the operator does not annihilate the value")]
    NotAnnihilated,
    #[error("every rational test point hits a pole")]
    Poles,
    #[error(transparent)]
    Numeric(#[from] NumericError),
}

/// (N − M + 1)(N + M + 2)/2.
pub fn expected_order(m: usize, n: usize) -> usize {
    (n - m + 1) * (n + m + 2) / 2
}

/// [a, Da, …, D^d a] with D = d/dk at fixed ν.
pub fn derivative_tower<C: OpCoeff>(a: &Form<C>, d: usize) -> Vec<Form<C>> {
    let mut out = Vec::with_capacity(d + 1);
    out.push(a.clone());
    for p in 0..d {
        let next = out[p].derivative_k();
        out.push(next);
    }
    out
}

/// Σ_p coeffs[p]·D^p.
#[derive(Clone, Debug, PartialEq)]
pub struct DiffOp<C = FieldElem> {
    coeffs: Vec<C>,
}

impl<C: OpCoeff> DiffOp<C> {
    pub fn new(mut coeffs: Vec<C>) -> Result<Self, OdeError> {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            return Err(OdeError::Empty);
        }
        Ok(DiffOp { coeffs })
    }

    /// The order-zero operator y ↦ f·y.
    pub fn multiplication(f: C) -> Self {
        DiffOp { coeffs: vec![f] }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn leading(&self) -> &C {
        self.coeffs.last().unwrap()
    }

    pub fn monic(&self) -> Self {
        let inv = self.leading().inv().expect("leading coefficient is nonzero");
        DiffOp { coeffs: self.coeffs.iter().map(|c| c.mul(&inv)).collect() }
    }

    pub fn apply(&self, a: &Form<C>) -> Form<C> {
        self.apply_tower(&derivative_tower(a, self.order()))
    }

    /// Applies the operator given precomputed derivatives (at least order + 1 of them).
    pub fn apply_tower(&self, tower: &[Form<C>]) -> Form<C> {
        self.coeffs.iter().zip(tower).fold(Form::zero(), |acc, (c, t)| acc.add(&t.scale(c)))
    }

    /// The operator y ↦ self(inner(y)).
    pub fn compose(&self, inner: &DiffOp<C>) -> DiffOp<C> {
        let (p_max, q_max) = (self.order(), inner.order());
        let derivs: Vec<Vec<C>> = inner
            .coeffs
            .iter()
            .map(|b| {
                let mut v = vec![b.clone()];
                for i in 0..p_max {
                    let d = v[i].derivative_k();
                    v.push(d);
                }
                v
            })
            .collect();
        let mut out = vec![C::zero(); p_max + q_max + 1];
        for (p, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (q, db) in derivs.iter().enumerate() {
                for (i, dbi) in db.iter().enumerate().take(p + 1) {
                    if dbi.is_zero() {
                        continue;
                    }
                    let binom = Integer::from(Integer::binomial_u(p as u32, i as u32));
                    out[p - i + q] = out[p - i + q].add(&a.mul(dbi).scale_int(&binom));
                }
            }
        }
        DiffOp::new(out).expect("composition of nonzero operators is nonzero")
    }

    /// y ↦ f^{−1}·self(f·y).
    pub fn conjugate(&self, f: &C) -> DiffOp<C> {
        let inv = f.inv().expect("conjugating factor is nonzero");
        DiffOp::multiplication(inv).compose(&self.compose(&DiffOp::multiplication(f.clone())))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "order": self.order(),
            "coeffs": self.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        })
    }
}

impl DiffOp<FieldElem> {
    pub fn to_latex(&self, vars: Variables) -> String {
        let mut parts = Vec::new();
        for (p, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let d = match p {
                0 => String::new(),
                1 => "\\,\\partial_k".into(),
                _ => format!("\\,\\partial_k^{{{p}}}"),
            };
            parts.push(format!("\\left({}\\right){d}", field_latex(c, vars)));
        }
        parts.join(" + ")
    }
}

/// Right-to-left product: `factors[0]` is applied first. Factor n is
/// w^{−m_n}·M_n·w^{m_n}, with M_n in `stage_ops` and m_n in `conjugators`.
#[derive(Clone, Debug)]
pub struct FactorChain<C = FieldElem> {
    pub factors: Vec<DiffOp<C>>,
    pub stage_ops: Vec<DiffOp<C>>,
    pub conjugators: Vec<u32>,
}

impl<C: OpCoeff> FactorChain<C> {
    pub fn orders(&self) -> Vec<usize> {
        self.factors.iter().map(DiffOp::order).collect()
    }

    pub fn total_order(&self) -> usize {
        self.orders().iter().sum()
    }

    pub fn compose(&self) -> DiffOp<C> {
        let mut it = self.factors.iter();
        let first = it.next().expect("a chain has at least one factor").clone();
        it.fold(first, |acc, f| f.compose(&acc))
    }

    /// Applies the factors in turn.
    pub fn apply(&self, a: &Form<C>) -> Form<C> {
        self.factors.iter().fold(a.clone(), |x, f| f.apply(&x))
    }
}

fn w<C: OpCoeff>() -> C {
    C::from_field(&FieldElem::w()).expect("w has no pole")
}

/// Kills the top Π̃ power stage by stage until the value vanishes.
pub fn staged_factorization<C: OpCoeff>(a: &Form<C>) -> Result<FactorChain<C>, OdeError> {
    let mut chain = FactorChain { factors: Vec::new(), stage_ops: Vec::new(), conjugators: Vec::new() };
    let mut x = a.clone();
    while !x.is_zero() {
        let m = x.pi_degree();
        let f = x.pi_coefficient(m);
        let d = f.total_degree() as usize;
        let tower = derivative_tower(&f, d + 1);
        let rel = first_relation(&tower).ok_or(OdeError::NoRelation(d + 2))?;
        let stage = DiffOp::new(rel)?;
        let applied = stage.conjugate(&w::<C>().pow(m));
        let next = applied.apply(&x);
        let lowered = next.is_zero() || (m > 0 && next.pi_degree() < m);
        if !lowered {
            return Err(OdeError::StageStuck { stage: chain.factors.len() + 1, degree: next.pi_degree() });
        }
        chain.factors.push(applied);
        chain.stage_ops.push(stage);
        chain.conjugators.push(m);
        x = next;
    }
    Ok(chain)
}

/// Rational test points (t_h, t_v) for s = (t² − 1)/(2t), u = (t² + 1)/(2t).
const RANK_POINTS: [(i64, i64); 3] = [(3, 5), (7, 4), (2, 9)];

fn conic_point(t: i64) -> (Rational, Rational) {
    let t2 = Rational::from(t * t);
    let two_t = Rational::from(2 * t);
    (Rational::from(&t2 - 1u32) / &two_t, Rational::from(&t2 + 1u32) / two_t)
}

/// Rank of the derivatives over their monomial support, computed exactly at
/// rational points with rational roots; the largest rank found is returned.
pub fn derivative_rank(tower: &[Form<FieldElem>]) -> Result<usize, OdeError> {
    let mut support: Vec<EllMonomial> = tower.iter().flat_map(|t| t.terms().map(|(m, _)| *m)).collect();
    support.sort();
    support.dedup();
    let mut best: Option<usize> = None;
    for (th, tv) in RANK_POINTS {
        let ((sh, uh), (sv, uv)) = (conic_point(th), conic_point(tv));
        let rows: Option<Vec<Vec<Rational>>> = tower
            .iter()
            .map(|t| support.iter().map(|m| t.coeff(m).eval_rational(&sh, &sv, &uv, &uh)).collect())
            .collect();
        let Some(rows) = rows else { continue };
        let r = rational_rank(rows);
        best = Some(best.map_or(r, |b| b.max(r)));
        if r == tower.len() {
            break;
        }
    }
    best.ok_or(OdeError::Poles)
}

#[derive(Clone, Debug, Serialize)]
#[serde(bound = "")]
pub struct Annihilator<C: OpCoeff = FieldElem> {
    #[serde(serialize_with = "ser_op")]
    pub op: DiffOp<C>,
    pub stage_orders: Vec<usize>,
    /// Rank of the derivatives 0..d−1 over the full field.
    pub rank: usize,
    /// Number of monomials spanned by the derivatives 0..d over the full field.
    pub support: usize,
}

fn ser_op<C: OpCoeff, S: serde::Serializer>(op: &DiffOp<C>, s: S) -> Result<S::Ok, S::Error> {
    op.to_json().serialize(s)
}

/// The monic minimal annihilator of `a` over the coefficient field `C`: the
/// composed staged factorization, checked to annihilate `a` exactly.
///
/// Rank and support are computed over the full field: rank d of the first d
/// derivatives rules out a lower order, and a support of d monomials means the
/// generic order is at most d.
pub fn annihilator_in<C: OpCoeff>(a: &EllValue) -> Result<Annihilator<C>, OdeError> {
    let full: Form<FieldElem> = Form::from_value(a).ok_or(OdeError::Basis)?;
    let form: Form<C> = Form::from_value(a).ok_or(OdeError::Poles)?;
    let chain = staged_factorization(&form)?;
    let op = chain.compose().monic();
    let d = op.order();
    if !op.apply(&form).is_zero() {
        return Err(OdeError::NotAnnihilated);
    }
    let tower = derivative_tower(&full, d);
    let rank = derivative_rank(&tower[..d])?;
    if rank < d {
        return Err(OdeError::RankDefect { order: d, rank });
    }
    let mut support: Vec<EllMonomial> = tower.iter().flat_map(|t| t.terms().map(|(m, _)| *m)).collect();
    support.sort();
    support.dedup();
    Ok(Annihilator { op, stage_orders: chain.orders(), rank, support: support.len() })
}

/// Annihilator with coefficients in the full field.
pub fn annihilator(a: &EllValue) -> Result<Annihilator, OdeError> {
    annihilator_in::<FieldElem>(a)
}

/// Annihilator at the fixed anisotropy ν = NU_NUM/NU_DEN.
pub fn annihilator_fixed_nu(a: &EllValue) -> Result<Annihilator<NuElem>, OdeError> {
    annihilator_in::<NuElem>(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ellring::{parse_value, Basis};

    fn val(s: &str) -> Form<FieldElem> {
        Form::from_value(&parse_value(s, Basis::Pi).unwrap()).unwrap()
    }

    #[test]
    fn tower_of_a_constant() {
        let t = derivative_tower(&Form::constant(FieldElem::one()), 3);
        assert_eq!(t[0], Form::constant(FieldElem::one()));
        assert!(t[1..].iter().all(Form::is_zero));
    }

    #[test]
    fn first_kind_has_a_second_order_operator() {
        let tower = derivative_tower(&val("K"), 2);
        assert!(tower.iter().all(|t| t.pi_degree() == 0));
        let rel = first_relation(&tower).unwrap();
        assert_eq!(rel.len(), 3);
        assert_eq!(derivative_rank(&tower[..2]).unwrap(), 2);
        let op = DiffOp::new(rel).unwrap();
        assert!(op.apply(&val("K")).is_zero());
        assert!(!op.apply(&val("E")).is_zero());
    }

    #[test]
    fn composition_matches_sequential_application() {
        let a = DiffOp::new(vec![FieldElem::s_h(), FieldElem::one()]).unwrap();
        let b = DiffOp::new(vec![FieldElem::u_v(), FieldElem::monomial(2, 1, 1), FieldElem::one()]).unwrap();
        let x = val("u_h*P*K + E^2/s_v");
        assert_eq!(a.compose(&b).apply(&x), a.apply(&b.apply(&x)));
        let w = FieldElem::w().pow(2);
        let c = a.conjugate(&w);
        assert_eq!(c.apply(&x), a.apply(&x.scale(&w)).scale(&FieldElem::inv(&w).unwrap()));
    }

    #[test]
    fn expected_orders() {
        assert_eq!(expected_order(0, 1), 3);
        assert_eq!(expected_order(0, 2), 6);
        assert_eq!(expected_order(1, 2), 5);
        assert_eq!(expected_order(0, 3), 10);
        assert_eq!(expected_order(1, 3), 9);
    }
}
