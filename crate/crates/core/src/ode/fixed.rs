//! The coefficient field at the fixed anisotropy ν = s_h/s_v = 2.
//!
//! With t = s_v and s_h = 2t the base field is Q(t), and elements are
//! `(n[0] + n[1]·u_v + n[2]·u_h + n[3]·u_v·u_h) / den` with u_v² = 1 + t²,
//! u_h² = 1 + 4t², all polynomials univariate over Z. Here k = 2t², so
//! d/dk = (1/(4t))·d/dt.

use std::fmt;
use std::sync::OnceLock;

use rug::Integer;

use super::coeff::{Form, OpCoeff};
use crate::coeffield::upoly::{self, UPoly};
use crate::coeffield::FieldElem;

/// s_h = NU_NUM·t, s_v = NU_DEN·t.
pub const NU_NUM: u32 = 2;
pub const NU_DEN: u32 = 1;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NuElem {
    n: [UPoly; 4],
    den: UPoly,
}

fn c(v: i64) -> Integer {
    Integer::from(v)
}

/// 1 + q²t² (for u_v) and 1 + p²t² (for u_h).
fn root_squares() -> (UPoly, UPoly) {
    let sq = |a: u32| vec![c(1), c(0), Integer::from(a * a)];
    (sq(NU_DEN), sq(NU_NUM))
}

fn deriv(p: &[Integer]) -> UPoly {
    let mut out: UPoly = p.iter().enumerate().skip(1).map(|(i, x)| Integer::from(x * i as u32)).collect();
    upoly::trim(&mut out);
    out
}

impl NuElem {
    fn normalized(n: [UPoly; 4], den: UPoly) -> Self {
        if n.iter().all(|p| p.is_empty()) {
            return Self::zero();
        }
        let mut g = den.clone();
        for p in &n {
            if g.len() == 1 && g[0] == 1 {
                break;
            }
            if !p.is_empty() {
                g = upoly::gcd(&g, p);
            }
        }
        let (mut n, mut den) = if g.len() == 1 && g[0] == 1 {
            (n, den)
        } else {
            (n.map(|p| upoly::div_exact(&p, &g).unwrap()), upoly::div_exact(&den, &g).unwrap())
        };
        if den.last().is_some_and(|x| x.cmp0() == std::cmp::Ordering::Less) {
            den = upoly::neg(&den);
            n = n.map(|p| upoly::neg(&p));
        }
        NuElem { n, den }
    }

    pub fn zero() -> Self {
        NuElem { n: Default::default(), den: vec![c(1)] }
    }

    pub fn one() -> Self {
        NuElem { n: [vec![c(1)], Vec::new(), Vec::new(), Vec::new()], den: vec![c(1)] }
    }

    /// t = s_v.
    pub fn t() -> Self {
        NuElem { n: [vec![c(0), c(1)], Vec::new(), Vec::new(), Vec::new()], den: vec![c(1)] }
    }

    pub fn u_v() -> Self {
        NuElem { n: [Vec::new(), vec![c(1)], Vec::new(), Vec::new()], den: vec![c(1)] }
    }

    pub fn u_h() -> Self {
        NuElem { n: [Vec::new(), Vec::new(), vec![c(1)], Vec::new()], den: vec![c(1)] }
    }

    pub fn is_zero(&self) -> bool {
        self.n.iter().all(|p| p.is_empty())
    }

    /// Degree of the denominator and the largest numerator degree.
    pub fn degrees(&self) -> (usize, usize) {
        let d = |p: &UPoly| p.len().saturating_sub(1);
        (d(&self.den), self.n.iter().map(d).max().unwrap_or(0))
    }

    /// Specializes s_h ↦ p·t, s_v ↦ q·t; `None` if the denominator vanishes.
    pub fn specialize(x: &FieldElem) -> Option<Self> {
        let map = |p: &crate::coeffield::IntPoly| -> UPoly {
            let mut out: UPoly = Vec::new();
            for ((dh, dv), coef) in p.terms() {
                let deg = (dh + dv) as usize;
                if out.len() <= deg {
                    out.resize(deg + 1, Integer::new());
                }
                let f = Integer::from(Integer::u_pow_u(NU_NUM, dh)) * Integer::from(Integer::u_pow_u(NU_DEN, dv));
                out[deg] += f * coef;
            }
            upoly::trim(&mut out);
            out
        };
        let den = map(x.denominator());
        if den.is_empty() {
            return None;
        }
        let n = x.numerators();
        Some(Self::normalized([map(&n[0]), map(&n[1]), map(&n[2]), map(&n[3])], den))
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            let n = [0, 1, 2, 3].map(|i| upoly::add(&self.n[i], &o.n[i]));
            return Self::normalized(n, self.den.clone());
        }
        let g = upoly::gcd(&self.den, &o.den);
        let a = upoly::div_exact(&o.den, &g).unwrap();
        let b = upoly::div_exact(&self.den, &g).unwrap();
        let n = [0, 1, 2, 3].map(|i| upoly::add(&upoly::mul(&self.n[i], &a), &upoly::mul(&o.n[i], &b)));
        Self::normalized(n, upoly::mul(&self.den, &a))
    }

    pub fn neg(&self) -> Self {
        NuElem { n: self.n.clone().map(|p| upoly::neg(&p)), den: self.den.clone() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let (sv, sh) = root_squares();
        let mut out: [UPoly; 4] = Default::default();
        for a in 0..4 {
            if self.n[a].is_empty() {
                continue;
            }
            for b in 0..4 {
                if o.n[b].is_empty() {
                    continue;
                }
                let mut p = upoly::mul(&self.n[a], &o.n[b]);
                if a & b & 1 != 0 {
                    p = upoly::mul(&p, &sv);
                }
                if a & b & 2 != 0 {
                    p = upoly::mul(&p, &sh);
                }
                let t = a ^ b;
                out[t] = upoly::add(&out[t], &p);
            }
        }
        Self::normalized(out, upoly::mul(&self.den, &o.den))
    }

    fn flip(&self, mask: usize) -> Self {
        let n = [0, 1, 2, 3].map(|i| if i & mask != 0 { upoly::neg(&self.n[i]) } else { self.n[i].clone() });
        NuElem { n, den: self.den.clone() }
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let c1 = self.flip(2);
        let m1 = self.mul(&c1);
        let c2 = m1.flip(1);
        let norm = m1.mul(&c2);
        debug_assert!(norm.n[1..].iter().all(|p| p.is_empty()));
        let cof = c1.mul(&c2);
        // cof / norm with norm = n0/den
        let n = cof.n.map(|p| upoly::mul(&p, &norm.den));
        Some(Self::normalized(n, upoly::mul(&cof.den, &norm.n[0])))
    }

    pub fn derivative_k(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let (sv, sh) = root_squares();
        let q2 = Integer::from(NU_DEN * NU_DEN);
        let p2 = Integer::from(NU_NUM * NU_NUM);
        let dd = deriv(&self.den);
        let svsh = upoly::mul(&sv, &sh);
        let n = [0, 1, 2, 3].map(|i| {
            if self.n[i].is_empty() {
                return Vec::new();
            }
            let base = upoly::sub(&upoly::mul(&deriv(&self.n[i]), &self.den), &upoly::mul(&self.n[i], &dd));
            let mut out = upoly::mul(&base, &svsh);
            // d u_v/dt = q²t·u_v/(1+q²t²), d u_h/dt = p²t·u_h/(1+p²t²)
            let nd_t = upoly::mul(&upoly::mul(&self.n[i], &self.den), &[c(0), c(1)]);
            if i & 1 != 0 {
                out = upoly::add(&out, &upoly::scale(&upoly::mul(&nd_t, &sh), &q2));
            }
            if i & 2 != 0 {
                out = upoly::add(&out, &upoly::scale(&upoly::mul(&nd_t, &sv), &p2));
            }
            out
        });
        // dk/dt = 2pq·t
        let dk = vec![c(0), Integer::from(2 * NU_NUM * NU_DEN)];
        let den = upoly::mul(&upoly::mul(&upoly::mul(&self.den, &self.den), &svsh), &dk);
        Self::normalized(n, den)
    }

    pub fn scale_int(&self, k: &Integer) -> Self {
        if *k == 0 {
            return Self::zero();
        }
        Self::normalized(self.n.clone().map(|p| upoly::scale(&p, k)), self.den.clone())
    }

    /// Value at t with positive roots.
    pub fn eval_float(&self, t: &rug::Float) -> rug::Float {
        let prec = t.prec();
        let ev = |p: &UPoly| {
            let mut acc = rug::Float::new(prec);
            for x in p.iter().rev() {
                acc *= t;
                acc += x;
            }
            acc
        };
        let t2 = rug::Float::with_val(prec, t * t);
        let uv = (rug::Float::with_val(prec, &t2 * (NU_DEN * NU_DEN)) + 1u32).sqrt();
        let uh = (rug::Float::with_val(prec, &t2 * (NU_NUM * NU_NUM)) + 1u32).sqrt();
        let basis = [rug::Float::with_val(prec, 1u32), uv.clone(), uh.clone(), uv * uh];
        let mut acc = rug::Float::new(prec);
        for i in 0..4 {
            acc += ev(&self.n[i]) * &basis[i];
        }
        acc / ev(&self.den)
    }
}

fn poly_string(p: &UPoly) -> String {
    let mut parts = Vec::new();
    for (d, x) in p.iter().enumerate().rev() {
        if *x == 0 {
            continue;
        }
        let mono = match d {
            0 => String::new(),
            1 => "s_v".into(),
            _ => format!("s_v^{d}"),
        };
        parts.push(match (mono.is_empty(), x.to_string().as_str()) {
            (true, s) => s.to_string(),
            (false, "1") => mono,
            (false, "-1") => format!("-{mono}"),
            (false, s) => format!("{s}*{mono}"),
        });
    }
    parts.join(" + ").replace("+ -", "- ")
}

impl fmt::Display for NuElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let names = ["", "*u_v", "*u_h", "*u_v*u_h"];
        let parts: Vec<String> =
            (0..4).filter(|&i| !self.n[i].is_empty()).map(|i| format!("({}){}", poly_string(&self.n[i]), names[i])).collect();
        if self.den.len() == 1 && self.den[0] == 1 {
            write!(f, "{}", parts.join(" + "))
        } else {
            write!(f, "[{}]/({})", parts.join(" + "), poly_string(&self.den))
        }
    }
}

impl fmt::Debug for NuElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NuElem({self})")
    }
}

impl OpCoeff for NuElem {
    fn zero() -> Self {
        NuElem::zero()
    }
    fn one() -> Self {
        NuElem::one()
    }
    fn is_zero(&self) -> bool {
        NuElem::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        NuElem::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        NuElem::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        NuElem::mul(self, o)
    }
    fn inv(&self) -> Option<Self> {
        NuElem::inv(self)
    }
    fn scale_int(&self, k: &Integer) -> Self {
        NuElem::scale_int(self, k)
    }
    fn derivative_k(&self) -> Self {
        NuElem::derivative_k(self)
    }
    fn from_field(x: &FieldElem) -> Option<Self> {
        NuElem::specialize(x)
    }
    fn closure() -> &'static [Form<Self>; 3] {
        static T: OnceLock<[Form<NuElem>; 3]> = OnceLock::new();
        T.get_or_init(|| {
            let full = <FieldElem as OpCoeff>::closure();
            full.clone().map(|f| Form::from_terms(f.terms().map(|(m, c)| (*m, NuElem::specialize(c).expect("no pole")))))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ellring::parse_field;

    fn sp(s: &str) -> NuElem {
        NuElem::specialize(&parse_field(s).unwrap()).unwrap()
    }

    #[test]
    fn roots_square_to_their_radicands() {
        assert_eq!(NuElem::u_v().mul(&NuElem::u_v()), sp("1 + s_v^2"));
        assert_eq!(NuElem::u_h().mul(&NuElem::u_h()), sp("1 + s_h^2"));
        assert_eq!(sp("s_h"), NuElem::t().scale_int(&Integer::from(2)));
    }

    #[test]
    fn specialization_is_a_homomorphism() {
        let a = parse_field("(s_h*u_v + u_h)/(1 + s_v^2*s_h)").unwrap();
        let b = parse_field("u_v*u_h - s_h/s_v").unwrap();
        let (x, y) = (NuElem::specialize(&a).unwrap(), NuElem::specialize(&b).unwrap());
        assert_eq!(NuElem::specialize(&a.mul(&b)).unwrap(), x.mul(&y));
        assert_eq!(NuElem::specialize(&a.add(&b)).unwrap(), x.add(&y));
        assert_eq!(NuElem::specialize(&b.inv().unwrap()).unwrap(), y.inv().unwrap());
        assert_eq!(y.mul(&y.inv().unwrap()), NuElem::one());
    }

    #[test]
    fn derivative_commutes_with_specialization() {
        let a = parse_field("(s_h^2*u_v + s_v*u_h*u_v)/(1 - s_h*s_v)").unwrap();
        assert_eq!(NuElem::specialize(&a.derivative_k()).unwrap(), NuElem::specialize(&a).unwrap().derivative_k());
    }

    #[test]
    fn vanishing_denominator_is_rejected() {
        assert!(NuElem::specialize(&parse_field("1/(s_h - 2*s_v)").unwrap()).is_none());
    }

    #[test]
    fn numeric_value() {
        let t = rug::Float::with_val(100, 0.3);
        let x = sp("u_h*s_v + 1/u_v");
        let uh = (1.0f64 + 0.36).sqrt();
        let uv = (1.0f64 + 0.09).sqrt();
        assert!((x.eval_float(&t).to_f64() - (uh * 0.3 + 1.0 / uv)).abs() < 1e-14);
    }
}
