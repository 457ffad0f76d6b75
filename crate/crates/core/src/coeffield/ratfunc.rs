//! Rational functions in s_h, s_v over Q, kept in lowest terms.

use std::cmp::Ordering;
use std::fmt;

use rug::Integer;

use super::gcd::gcd;
use super::intpoly::IntPoly;
use super::CoeffError;

/// `num / den` with gcd(num, den) = 1 and the graded-lex leading coefficient
/// of `den` positive. Zero is `0 / 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: IntPoly,
    den: IntPoly,
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc { num: IntPoly::zero(), den: IntPoly::one() }
    }

    pub fn one() -> Self {
        RatFunc { num: IntPoly::one(), den: IntPoly::one() }
    }

    pub fn from_poly(p: IntPoly) -> Self {
        RatFunc { num: p, den: IntPoly::one() }
    }

    pub fn integer(c: impl Into<Integer>) -> Self {
        Self::from_poly(IntPoly::constant(c))
    }

    pub fn ratio(p: i64, q: i64) -> Self {
        Self::new(IntPoly::constant(p), IntPoly::constant(q)).expect("nonzero denominator")
    }

    pub fn s_h() -> Self {
        Self::from_poly(IntPoly::s_h())
    }

    pub fn s_v() -> Self {
        Self::from_poly(IntPoly::s_v())
    }

    /// Monomial c · s_h^a · s_v^b with possibly negative exponents.
    pub fn monomial(c: impl Into<Integer>, a: i32, b: i32) -> Self {
        let num = IntPoly::monomial(c, a.max(0) as u32, b.max(0) as u32);
        let den = IntPoly::monomial(1, (-a).max(0) as u32, (-b).max(0) as u32);
        Self::new(num, den).expect("monomial denominator is nonzero")
    }

    pub fn new(num: IntPoly, den: IntPoly) -> Result<Self, CoeffError> {
        if den.is_zero() {
            return Err(CoeffError::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: IntPoly, den: IntPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let (num, den) = if den.is_one() {
            (num, den)
        } else {
            let g = gcd(&num, &den);
            if g.is_one() {
                (num, den)
            } else {
                (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
            }
        };
        Self::normalize_sign(num, den)
    }

    fn normalize_sign(num: IntPoly, den: IntPoly) -> Self {
        if den.leading_coeff_sign() == Ordering::Less {
            RatFunc { num: num.neg(), den: den.neg() }
        } else {
            RatFunc { num, den }
        }
    }

    pub fn num(&self) -> &IntPoly {
        &self.num
    }

    pub fn den(&self) -> &IntPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn neg(&self) -> Self {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            return Self::reduce(self.num.add(&other.num), self.den.clone());
        }
        let g = gcd(&self.den, &other.den);
        let bq = self.den.div_exact(&g).unwrap();
        let dq = other.den.div_exact(&g).unwrap();
        let num = self.num.mul(&dq).add(&other.num.mul(&bq));
        if num.is_zero() {
            return Self::zero();
        }
        // common factors of the new numerator can only come from g
        let h = gcd(&num, &g);
        let num = num.div_exact(&h).unwrap();
        let den = bq.mul(&other.den.div_exact(&h).unwrap());
        Self::normalize_sign(num, den)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && other.den.is_one() {
            return Self::from_poly(self.num.mul(&other.num));
        }
        let g1 = gcd(&self.num, &other.den);
        let g2 = gcd(&other.num, &self.den);
        let n = self.num.div_exact(&g1).unwrap().mul(&other.num.div_exact(&g2).unwrap());
        let d = self.den.div_exact(&g2).unwrap().mul(&other.den.div_exact(&g1).unwrap());
        Self::normalize_sign(n, d)
    }

    pub fn inv(&self) -> Result<Self, CoeffError> {
        if self.is_zero() {
            return Err(CoeffError::DivisionByZero);
        }
        Ok(Self::normalize_sign(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &Self) -> Result<Self, CoeffError> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn scale_int(&self, c: &Integer) -> Self {
        self.mul(&Self::integer(c.clone()))
    }

    pub fn pow(&self, n: i32) -> Self {
        let base = if n < 0 { self.inv().expect("negative power of zero") } else { self.clone() };
        let e = n.unsigned_abs();
        RatFunc { num: base.num.pow(e), den: base.den.pow(e) }
    }

    /// Derivative in s_h.
    pub fn derivative_h(&self) -> Self {
        let n = self.num.derivative_h().mul(&self.den).sub(&self.num.mul(&self.den.derivative_h()));
        Self::reduce(n, self.den.mul(&self.den))
    }

    /// Derivative in s_v.
    pub fn derivative_v(&self) -> Self {
        let n = self.num.derivative_v().mul(&self.den).sub(&self.num.mul(&self.den.derivative_v()));
        Self::reduce(n, self.den.mul(&self.den))
    }

    /// Euler operator s_h ∂_h + s_v ∂_v.
    pub fn euler(&self) -> Self {
        let n = self.num.euler().mul(&self.den).sub(&self.num.mul(&self.den.euler()));
        Self::reduce(n, self.den.mul(&self.den))
    }

    pub fn eval_rational(&self, h: &rug::Rational, v: &rug::Rational) -> Option<rug::Rational> {
        let d = self.den.eval_rational(h, v);
        if d == 0 {
            return None;
        }
        Some(self.num.eval_rational(h, v) / d)
    }

    pub fn eval_float(&self, h: &rug::Float, v: &rug::Float) -> rug::Float {
        self.num.eval_float(h, v) / self.den.eval_float(h, v)
    }

    pub fn eval_f64(&self, h: f64, v: f64) -> f64 {
        self.num.eval_f64(h, v) / self.den.eval_f64(h, v)
    }

    pub fn swap_vars(&self) -> Self {
        Self::normalize_sign(self.num.swap_vars(), self.den.swap_vars())
    }

    /// Substitutes s_h and s_v by rational functions.
    pub fn compose(&self, h: &RatFunc, v: &RatFunc) -> Self {
        compose_poly(&self.num, h, v).div(&compose_poly(&self.den, h, v)).expect("denominator stays nonzero")
    }
}

/// Evaluates an integer polynomial at rational-function arguments.
pub fn compose_poly(p: &IntPoly, h: &RatFunc, v: &RatFunc) -> RatFunc {
    let mut hp = vec![RatFunc::one()];
    let mut vp = vec![RatFunc::one()];
    let dh = p.deg_h().unwrap_or(0) as usize;
    let dv = p.deg_v().unwrap_or(0) as usize;
    for i in 1..=dh {
        hp.push(hp[i - 1].mul(h));
    }
    for j in 1..=dv {
        vp.push(vp[j - 1].mul(v));
    }
    let mut acc = RatFunc::zero();
    for ((a, b), c) in p.terms() {
        acc = acc.add(&hp[a as usize].mul(&vp[b as usize]).scale_int(c));
    }
    acc
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nu_times_k() {
        let nu = RatFunc::s_h().div(&RatFunc::s_v()).unwrap();
        let k = RatFunc::s_h().mul(&RatFunc::s_v());
        assert_eq!(nu.mul(&k), RatFunc::monomial(1, 2, 0));
        assert_eq!(nu.mul(&k.inv().unwrap()), RatFunc::monomial(1, 0, -2));
        assert!(k.mul(&k.inv().unwrap()).is_one());
    }

    #[test]
    fn sum_reduces_to_lowest_terms() {
        let x = RatFunc::s_h();
        let one = RatFunc::one();
        let a = one.div(&x.sub(&one)).unwrap();
        let b = one.div(&x.add(&one)).unwrap();
        let s = a.sub(&b);
        let expected = RatFunc::integer(2).div(&x.mul(&x).sub(&one)).unwrap();
        assert_eq!(s, expected);
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert!(RatFunc::one().div(&RatFunc::zero()).is_err());
    }

    #[test]
    fn denominator_sign_is_canonical() {
        let a = RatFunc::new(IntPoly::one(), IntPoly::constant(-3)).unwrap();
        assert_eq!(a.den(), &IntPoly::constant(3));
        assert_eq!(a.num(), &IntPoly::constant(-1));
    }
}
