//! The quartic extension Q(s_h, s_v)[u_v, u_h] with u_v² = 1 + s_v² and
//! u_h² = 1 + s_h².
//!
//! Elements are stored over a common denominator:
//! `(n[0] + n[1]·u_v + n[2]·u_h + n[3]·u_v·u_h) / den`, with the gcd of all
//! five polynomials equal to 1 and `den` carrying a positive graded-lex
//! leading coefficient. This makes the representation unique.

use std::fmt;

use rug::Integer;

use super::gcd::gcd;
use super::intpoly::IntPoly;
use super::ratfunc::RatFunc;
use super::CoeffError;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElem {
    n: [IntPoly; 4],
    den: IntPoly,
}

/// Index of basis element u_v^a u_h^b.
const fn idx(a: usize, b: usize) -> usize {
    a + 2 * b
}

fn one_plus_sq_v() -> IntPoly {
    IntPoly::from_terms([(0, 0, 1), (0, 2, 1)])
}

fn one_plus_sq_h() -> IntPoly {
    IntPoly::from_terms([(0, 0, 1), (2, 0, 1)])
}

impl FieldElem {
    pub fn zero() -> Self {
        FieldElem { n: Default::default(), den: IntPoly::one() }
    }

    pub fn one() -> Self {
        Self::from_poly(IntPoly::one())
    }

    pub fn integer(c: impl Into<Integer>) -> Self {
        Self::from_poly(IntPoly::constant(c))
    }

    pub fn ratio(p: i64, q: i64) -> Self {
        Self::from_rat(&RatFunc::ratio(p, q))
    }

    pub fn from_poly(p: IntPoly) -> Self {
        FieldElem { n: [p, IntPoly::zero(), IntPoly::zero(), IntPoly::zero()], den: IntPoly::one() }
    }

    pub fn from_rat(r: &RatFunc) -> Self {
        FieldElem {
            n: [r.num().clone(), IntPoly::zero(), IntPoly::zero(), IntPoly::zero()],
            den: r.den().clone(),
        }
    }

    pub fn s_h() -> Self {
        Self::from_poly(IntPoly::s_h())
    }

    pub fn s_v() -> Self {
        Self::from_poly(IntPoly::s_v())
    }

    pub fn u_v() -> Self {
        Self::from_components([RatFunc::zero(), RatFunc::one(), RatFunc::zero(), RatFunc::zero()])
    }

    pub fn u_h() -> Self {
        Self::from_components([RatFunc::zero(), RatFunc::zero(), RatFunc::one(), RatFunc::zero()])
    }

    /// w = u_v·u_h.
    pub fn w() -> Self {
        Self::from_components([RatFunc::zero(), RatFunc::zero(), RatFunc::zero(), RatFunc::one()])
    }

    /// c · s_h^a · s_v^b.
    pub fn monomial(c: impl Into<Integer>, a: i32, b: i32) -> Self {
        Self::from_rat(&RatFunc::monomial(c, a, b))
    }

    /// Builds from the coordinates on {1, u_v, u_h, u_v u_h}.
    pub fn from_components(c: [RatFunc; 4]) -> Self {
        let mut den = IntPoly::one();
        for r in &c {
            if !r.is_zero() && !r.den().divides(&den) {
                let g = gcd(&den, r.den());
                den = den.mul(&r.den().div_exact(&g).unwrap());
            }
        }
        let n = c.map(|r| {
            if r.is_zero() {
                IntPoly::zero()
            } else {
                r.num().mul(&den.div_exact(r.den()).unwrap())
            }
        });
        Self::normalized(n, den)
    }

    fn normalized(n: [IntPoly; 4], den: IntPoly) -> Self {
        if n.iter().all(|p| p.is_zero()) {
            return Self::zero();
        }
        let mut g = den.clone();
        for p in &n {
            if g.is_one() {
                break;
            }
            if !p.is_zero() {
                g = gcd(&g, p);
            }
        }
        let (mut n, mut den) = if g.is_one() {
            (n, den)
        } else {
            (n.map(|p| p.div_exact(&g).unwrap()), den.div_exact(&g).unwrap())
        };
        if den.leading_coeff_sign() == std::cmp::Ordering::Less {
            den = den.neg();
            n = n.map(|p| p.neg());
        }
        FieldElem { n, den }
    }

    pub fn component(&self, i: usize) -> RatFunc {
        RatFunc::new(self.n[i].clone(), self.den.clone()).expect("nonzero denominator")
    }

    pub fn components(&self) -> [RatFunc; 4] {
        [0, 1, 2, 3].map(|i| self.component(i))
    }

    pub fn numerators(&self) -> &[IntPoly; 4] {
        &self.n
    }

    pub fn denominator(&self) -> &IntPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.n.iter().all(|p| p.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.n[0].is_one() && self.den.is_one() && self.n[1..].iter().all(|p| p.is_zero())
    }

    /// The element as a pure rational function, if it has no root part.
    pub fn as_rational(&self) -> Option<RatFunc> {
        if self.n[1..].iter().all(|p| p.is_zero()) {
            Some(self.component(0))
        } else {
            None
        }
    }

    /// Indices of the basis elements with nonzero coordinate.
    pub fn support(&self) -> Vec<usize> {
        (0..4).filter(|&i| !self.n[i].is_zero()).collect()
    }

    pub fn neg(&self) -> Self {
        FieldElem { n: self.n.clone().map(|p| p.neg()), den: self.den.clone() }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            let n = [0, 1, 2, 3].map(|i| self.n[i].add(&other.n[i]));
            return Self::normalized(n, self.den.clone());
        }
        let g = gcd(&self.den, &other.den);
        let bq = self.den.div_exact(&g).unwrap();
        let dq = other.den.div_exact(&g).unwrap();
        let n = [0, 1, 2, 3].map(|i| self.n[i].mul(&dq).add(&other.n[i].mul(&bq)));
        Self::normalized(n, bq.mul(&other.den))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let sv = one_plus_sq_v();
        let sh = one_plus_sq_h();
        let mut out: [IntPoly; 4] = Default::default();
        for a in 0..4 {
            if self.n[a].is_zero() {
                continue;
            }
            for b in 0..4 {
                if other.n[b].is_zero() {
                    continue;
                }
                let mut p = self.n[a].mul(&other.n[b]);
                let (av, ah) = (a & 1, a >> 1);
                let (bv, bh) = (b & 1, b >> 1);
                if av == 1 && bv == 1 {
                    p = p.mul(&sv);
                }
                if ah == 1 && bh == 1 {
                    p = p.mul(&sh);
                }
                let t = idx(av ^ bv, ah ^ bh);
                out[t] = out[t].add(&p);
            }
        }
        Self::normalized(out, self.den.mul(&other.den))
    }

    pub fn mul_rat(&self, r: &RatFunc) -> Self {
        if r.is_zero() || self.is_zero() {
            return Self::zero();
        }
        let n = self.n.clone().map(|p| p.mul(r.num()));
        Self::normalized(n, self.den.mul(r.den()))
    }

    pub fn mul_poly(&self, p: &IntPoly) -> Self {
        self.mul_rat(&RatFunc::from_poly(p.clone()))
    }

    pub fn scale_int(&self, c: &Integer) -> Self {
        self.mul_rat(&RatFunc::integer(c.clone()))
    }

    /// Conjugate flipping the sign of u_h.
    fn conj_h(&self) -> Self {
        FieldElem {
            n: [self.n[0].clone(), self.n[1].clone(), self.n[2].neg(), self.n[3].neg()],
            den: self.den.clone(),
        }
    }

    /// Conjugate flipping the sign of u_v.
    fn conj_v(&self) -> Self {
        FieldElem {
            n: [self.n[0].clone(), self.n[1].neg(), self.n[2].clone(), self.n[3].neg()],
            den: self.den.clone(),
        }
    }

    /// Inverse by norming down the tower: a·conj_h(a) lies in Q(s)(u_v),
    /// multiplying that by its u_v-conjugate lands in Q(s).
    pub fn inv(&self) -> Result<Self, CoeffError> {
        if self.is_zero() {
            return Err(CoeffError::DivisionByZero);
        }
        let c1 = self.conj_h();
        let m1 = self.mul(&c1);
        let c2 = m1.conj_v();
        let norm = m1.mul(&c2).as_rational().expect("norm lies in the base field");
        Ok(c1.mul(&c2).mul_rat(&norm.inv()?))
    }

    pub fn div(&self, other: &Self) -> Result<Self, CoeffError> {
        if let Some(r) = other.as_rational() {
            return Ok(self.mul_rat(&r.inv()?));
        }
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut k = e;
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Partial derivative in s_h or s_v, with d(u_v)/ds_v = s_v·u_v/(1+s_v²)
    /// and d(u_h)/ds_h = s_h·u_h/(1+s_h²).
    pub fn partial_derivative(&self, var: Var) -> Self {
        let d = |p: &IntPoly| match var {
            Var::H => p.derivative_h(),
            Var::V => p.derivative_v(),
        };
        let (root_bit, sq, s) = match var {
            Var::V => (1usize, one_plus_sq_v(), IntPoly::s_v()),
            Var::H => (2usize, one_plus_sq_h(), IntPoly::s_h()),
        };
        // (N/D)' = (N'D − N D')/D²; basis factor contributes s/(1+s²) on elements containing the root
        let dd = d(&self.den);
        let n = [0, 1, 2, 3].map(|i| {
            let mut t = d(&self.n[i]).mul(&self.den).sub(&self.n[i].mul(&dd)).mul(&sq);
            if i & root_bit != 0 {
                t = t.add(&self.n[i].mul(&self.den).mul(&s));
            }
            t
        });
        Self::normalized(n, self.den.mul(&self.den).mul(&sq))
    }

    /// Euler operator s_h ∂_h + s_v ∂_v, with θ(u_v) = s_v²·u_v/(1+s_v²),
    /// θ(u_h) = s_h²·u_h/(1+s_h²).
    pub fn euler(&self) -> Self {
        let sv = one_plus_sq_v();
        let sh = one_plus_sq_h();
        let sq = sv.mul(&sh);
        let dd = self.den.euler();
        let n = [0, 1, 2, 3].map(|i| {
            if self.n[i].is_zero() {
                return IntPoly::zero();
            }
            let mut t = self.n[i].euler().mul(&self.den).sub(&self.n[i].mul(&dd)).mul(&sq);
            let nd = self.n[i].mul(&self.den);
            if i & 1 != 0 {
                t = t.add(&nd.mul(&IntPoly::monomial(1, 0, 2)).mul(&sh));
            }
            if i & 2 != 0 {
                t = t.add(&nd.mul(&IntPoly::monomial(1, 2, 0)).mul(&sv));
            }
            t
        });
        Self::normalized(n, self.den.mul(&self.den).mul(&sq))
    }

    /// Derivative in k = s_h s_v at fixed ν = s_h/s_v: θ/(2 s_h s_v).
    pub fn derivative_k(&self) -> Self {
        let e = self.euler();
        Self::normalized(e.n, e.den.mul(&IntPoly::monomial(2, 1, 1)))
    }

    /// Substitutes s_h ↦ map.h, s_v ↦ map.v and the roots by their images.
    pub fn substitute(&self, map: &Substitution) -> Self {
        let basis = [FieldElem::one(), map.u_v.clone(), map.u_h.clone(), map.u_v.mul(&map.u_h)];
        let den = FieldElem::from_rat(&super::ratfunc::compose_poly(&self.den, &map.h, &map.v));
        let mut acc = FieldElem::zero();
        for i in 0..4 {
            if self.n[i].is_zero() {
                continue;
            }
            let c = FieldElem::from_rat(&super::ratfunc::compose_poly(&self.n[i], &map.h, &map.v));
            acc = acc.add(&c.mul(&basis[i]));
        }
        acc.div(&den).expect("substituted denominator is nonzero")
    }

    /// Exchanges s_h ↔ s_v and u_h ↔ u_v.
    pub fn swap_hv(&self) -> Self {
        let n = [self.n[0].swap_vars(), self.n[2].swap_vars(), self.n[1].swap_vars(), self.n[3].swap_vars()];
        Self::normalized(n, self.den.swap_vars())
    }

    /// Numeric value with positive square roots.
    pub fn eval_float(&self, h: &rug::Float, v: &rug::Float) -> rug::Float {
        let prec = h.prec().max(v.prec());
        let uv = (rug::Float::with_val(prec, v * v) + 1u32).sqrt();
        let uh = (rug::Float::with_val(prec, h * h) + 1u32).sqrt();
        let basis = [rug::Float::with_val(prec, 1u32), uv.clone(), uh.clone(), uv * uh];
        let mut acc = rug::Float::new(prec);
        for i in 0..4 {
            if !self.n[i].is_zero() {
                acc += self.n[i].eval_float(h, v) * &basis[i];
            }
        }
        acc / self.den.eval_float(h, v)
    }

    /// Exact value at a rational point where the roots are rational too
    /// (the caller supplies u_v, u_h with u² = 1 + s²). `None` on a pole.
    pub fn eval_rational(
        &self,
        h: &rug::Rational,
        v: &rug::Rational,
        u_v: &rug::Rational,
        u_h: &rug::Rational,
    ) -> Option<rug::Rational> {
        let den = self.den.eval_rational(h, v);
        if den == 0 {
            return None;
        }
        let uvh = rug::Rational::from(u_v * u_h);
        let basis = [rug::Rational::from(1), u_v.clone(), u_h.clone(), uvh];
        let mut acc = rug::Rational::new();
        for i in 0..4 {
            if !self.n[i].is_zero() {
                acc += self.n[i].eval_rational(h, v) * &basis[i];
            }
        }
        Some(acc / den)
    }

    pub fn eval_f64(&self, h: f64, v: f64) -> f64 {
        let uv = (1.0 + v * v).sqrt();
        let uh = (1.0 + h * h).sqrt();
        let basis = [1.0, uv, uh, uv * uh];
        let mut acc = 0.0;
        for i in 0..4 {
            acc += self.n[i].eval_f64(h, v) * basis[i];
        }
        acc / self.den.eval_f64(h, v)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Var {
    H,
    V,
}

/// A substitution of the base variables together with the images of the roots.
#[derive(Clone, Debug)]
pub struct Substitution {
    pub h: RatFunc,
    pub v: RatFunc,
    pub u_v: FieldElem,
    pub u_h: FieldElem,
}

impl Substitution {
    /// Builds the substitution, expressing each root image (1 + r²)^{1/2} as
    /// q·u_v^a·u_h^b by exact square extraction. The sign is chosen so the
    /// image is positive at a sample point with positive s_h, s_v.
    pub fn new(h: RatFunc, v: RatFunc) -> Result<Self, CoeffError> {
        let u_v = root_image(&v)?;
        let u_h = root_image(&h)?;
        Ok(Substitution { h, v, u_v, u_h })
    }

    pub fn identity() -> Self {
        Self::new(RatFunc::s_h(), RatFunc::s_v()).unwrap()
    }

    /// s_h → 1/s_v, s_v → 1/s_h.
    pub fn dual() -> Self {
        Self::new(RatFunc::monomial(1, 0, -1), RatFunc::monomial(1, -1, 0)).unwrap()
    }

    /// s_v → s_h.
    pub fn isotropic() -> Self {
        Self::new(RatFunc::s_h(), RatFunc::s_h()).unwrap()
    }
}

fn root_image(r: &RatFunc) -> Result<FieldElem, CoeffError> {
    let target = RatFunc::one().add(&r.mul(r));
    let sv = RatFunc::from_poly(one_plus_sq_v());
    let sh = RatFunc::from_poly(one_plus_sq_h());
    let (x, y) = (0.6180339887, 1.3247179572);
    let want = (1.0 + r.eval_f64(x, y).powi(2)).sqrt();
    for (a, b) in [(0, 0), (1, 0), (0, 1), (1, 1)] {
        let mut q = target.clone();
        if a == 1 {
            q = q.div(&sv)?;
        }
        if b == 1 {
            q = q.div(&sh)?;
        }
        let (Some(ns), Some(ds)) = (q.num().sqrt_exact(), q.den().sqrt_exact()) else {
            continue;
        };
        let coeff = RatFunc::new(ns, ds)?;
        let mut img = FieldElem::from_rat(&coeff);
        if a == 1 {
            img = img.mul(&FieldElem::u_v());
        }
        if b == 1 {
            img = img.mul(&FieldElem::u_h());
        }
        if img.eval_f64(x, y) < 0.0 {
            img = img.neg();
        }
        debug_assert!((img.eval_f64(x, y) - want).abs() < 1e-9 * want.max(1.0));
        return Ok(img);
    }
    Err(CoeffError::RootNotExpressible(format!("(1 + ({r})^2)^(1/2)")))
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let names = ["", "u_v", "u_h", "u_v*u_h"];
        let mut parts = Vec::new();
        for i in 0..4 {
            if self.n[i].is_zero() {
                continue;
            }
            if i == 0 {
                parts.push(format!("({})", self.n[i]));
            } else {
                parts.push(format!("({})*{}", self.n[i], names[i]));
            }
        }
        if self.den.is_one() {
            write!(f, "{}", parts.join(" + "))
        } else {
            write!(f, "[{}]/({})", parts.join(" + "), self.den)
        }
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldElem({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defining_relations() {
        let uv = FieldElem::u_v();
        let sv2 = FieldElem::from_poly(one_plus_sq_v());
        assert_eq!(uv.mul(&uv), sv2);
        let w = FieldElem::w();
        assert_eq!(w.mul(&w), FieldElem::from_poly(one_plus_sq_v().mul(&one_plus_sq_h())));
        let a = FieldElem::one().add(&uv);
        let b = FieldElem::one().sub(&uv);
        assert_eq!(a.mul(&b), FieldElem::monomial(-1, 0, 2));
    }

    #[test]
    fn inverses() {
        let w = FieldElem::w();
        let expected = w.mul_rat(&RatFunc::from_poly(one_plus_sq_v().mul(&one_plus_sq_h())).inv().unwrap());
        assert_eq!(w.inv().unwrap(), expected);
        assert_eq!(FieldElem::integer(2).inv().unwrap(), FieldElem::ratio(1, 2));
        let a = FieldElem::one().add(&FieldElem::u_v());
        let expected = FieldElem::u_v().sub(&FieldElem::one()).mul_rat(&RatFunc::monomial(1, 0, -2));
        assert_eq!(a.inv().unwrap(), expected);
        assert!(a.mul(&a.inv().unwrap()).is_one());
        assert!(FieldElem::zero().inv().is_err());
    }

    #[test]
    fn derivatives_of_roots() {
        let uv = FieldElem::u_v();
        let expected = uv.mul(&FieldElem::s_v()).mul_rat(&RatFunc::from_poly(one_plus_sq_v()).inv().unwrap());
        assert_eq!(uv.partial_derivative(Var::V), expected);
        assert!(FieldElem::u_h().partial_derivative(Var::V).is_zero());
        assert_eq!(FieldElem::monomial(1, 2, 0).partial_derivative(Var::H), FieldElem::monomial(2, 1, 0));
    }

    #[test]
    fn euler_matches_partials() {
        let x = FieldElem::w()
            .add(&FieldElem::u_v().mul_rat(&RatFunc::monomial(3, 1, -2)))
            .add(&FieldElem::from_poly(IntPoly::from_terms([(1, 1, 1), (0, 0, -1)])).inv().unwrap());
        let via = x
            .partial_derivative(Var::H)
            .mul(&FieldElem::s_h())
            .add(&x.partial_derivative(Var::V).mul(&FieldElem::s_v()));
        assert_eq!(x.euler(), via);
    }

    #[test]
    fn dual_substitution() {
        let d = Substitution::dual();
        assert_eq!(d.u_v, FieldElem::u_h().mul_rat(&RatFunc::monomial(1, -1, 0)));
        let k = FieldElem::monomial(1, 1, 1);
        assert_eq!(k.substitute(&d), FieldElem::monomial(1, -1, -1));
        let nu = FieldElem::monomial(1, 1, -1);
        assert_eq!(nu.substitute(&d), nu);
        let x = FieldElem::w().add(&FieldElem::u_v().mul_rat(&RatFunc::monomial(3, 2, -1)));
        assert_eq!(x.substitute(&d).substitute(&d), x);
        assert_eq!(x.substitute(&Substitution::identity()), x);
    }
}
