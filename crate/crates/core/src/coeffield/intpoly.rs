//! Bivariate integer polynomials in s_h, s_v.
//!
//! Storage is dense by s_h-degree: `rows[i]` holds the coefficient of s_h^i as
//! a univariate polynomial in s_v. Both levels are trimmed, so the
//! representation is unique and `==` is structural equality.

use std::cmp::Ordering;
use std::fmt;

use rug::Integer;

use super::upoly::{self, UPoly};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    rows: Vec<UPoly>,
}

/// Exponent pair (d_h, d_v).
pub type Exp = (u32, u32);

/// Graded-lex order: total degree first, then the s_h exponent.
pub fn grlex_cmp(a: Exp, b: Exp) -> Ordering {
    (a.0 + a.1).cmp(&(b.0 + b.1)).then(a.0.cmp(&b.0))
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { rows: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Integer::from(1))
    }

    pub fn constant(c: impl Into<Integer>) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn monomial(c: impl Into<Integer>, dh: u32, dv: u32) -> Self {
        let c = c.into();
        if c == 0 {
            return Self::zero();
        }
        let mut rows = vec![Vec::new(); dh as usize + 1];
        let mut row = vec![Integer::new(); dv as usize + 1];
        row[dv as usize] = c;
        rows[dh as usize] = row;
        IntPoly { rows }
    }

    pub fn s_h() -> Self {
        Self::monomial(1, 1, 0)
    }

    pub fn s_v() -> Self {
        Self::monomial(1, 0, 1)
    }

    /// Builds from (d_h, d_v, coefficient) triples; repeated exponents are summed.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (u32, u32, C)>,
        C: Into<Integer>,
    {
        let mut rows: Vec<UPoly> = Vec::new();
        for (dh, dv, c) in terms {
            let (dh, dv) = (dh as usize, dv as usize);
            if rows.len() <= dh {
                rows.resize(dh + 1, Vec::new());
            }
            let row = &mut rows[dh];
            if row.len() <= dv {
                row.resize(dv + 1, Integer::new());
            }
            row[dv] += c.into();
        }
        Self::from_rows(rows)
    }

    fn from_rows(mut rows: Vec<UPoly>) -> Self {
        for r in rows.iter_mut() {
            upoly::trim(r);
        }
        while rows.last().is_some_and(|r| r.is_empty()) {
            rows.pop();
        }
        IntPoly { rows }
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.rows.len() == 1 && self.rows[0].len() == 1 && self.rows[0][0] == 1
    }

    pub fn as_constant(&self) -> Option<&Integer> {
        if self.rows.len() == 1 && self.rows[0].len() == 1 {
            Some(&self.rows[0][0])
        } else {
            None
        }
    }

    pub fn deg_h(&self) -> Option<u32> {
        self.rows.len().checked_sub(1).map(|d| d as u32)
    }

    pub fn deg_v(&self) -> Option<u32> {
        self.rows.iter().map(|r| r.len()).max().and_then(|l| l.checked_sub(1)).map(|d| d as u32)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms().map(|(e, _)| e.0 + e.1).max()
    }

    pub fn num_terms(&self) -> usize {
        self.rows.iter().map(|r| r.iter().filter(|c| **c != 0).count()).sum()
    }

    /// Nonzero terms in increasing (d_h, d_v) storage order.
    pub fn terms(&self) -> impl Iterator<Item = (Exp, &Integer)> + '_ {
        self.rows.iter().enumerate().flat_map(|(i, r)| {
            r.iter()
                .enumerate()
                .filter(|(_, c)| **c != 0)
                .map(move |(j, c)| ((i as u32, j as u32), c))
        })
    }

    /// Nonzero terms sorted by descending graded-lex order.
    pub fn sorted_terms(&self) -> Vec<(Exp, &Integer)> {
        let mut t: Vec<_> = self.terms().collect();
        t.sort_by(|a, b| grlex_cmp(b.0, a.0));
        t
    }

    pub fn coeff(&self, dh: u32, dv: u32) -> Integer {
        self.rows
            .get(dh as usize)
            .and_then(|r| r.get(dv as usize))
            .cloned()
            .unwrap_or_default()
    }

    /// Leading term under graded-lex order.
    pub fn leading_term(&self) -> Option<(Exp, &Integer)> {
        self.terms().max_by(|a, b| grlex_cmp(a.0, b.0))
    }

    pub fn leading_coeff_sign(&self) -> Ordering {
        match self.leading_term() {
            None => Ordering::Equal,
            Some((_, c)) => c.cmp0(),
        }
    }

    pub fn content(&self) -> Integer {
        let mut g = Integer::new();
        for r in &self.rows {
            g.gcd_mut(&upoly::content(r));
            if g == 1 {
                break;
            }
        }
        g
    }

    pub fn max_norm(&self) -> Integer {
        self.rows.iter().map(|r| upoly::max_norm(r)).max().unwrap_or_default()
    }

    /// Largest monomial s_h^a s_v^b dividing every term.
    pub fn monomial_content(&self) -> Exp {
        let mut a = u32::MAX;
        let mut b = u32::MAX;
        for (e, _) in self.terms() {
            a = a.min(e.0);
            b = b.min(e.1);
        }
        if a == u32::MAX {
            (0, 0)
        } else {
            (a, b)
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.num_terms() == 1
    }

    pub fn neg(&self) -> Self {
        IntPoly { rows: self.rows.iter().map(|r| upoly::neg(r)).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.rows.len().max(other.rows.len());
        let mut rows = Vec::with_capacity(n);
        for i in 0..n {
            match (self.rows.get(i), other.rows.get(i)) {
                (Some(a), Some(b)) => rows.push(upoly::add(a, b)),
                (Some(a), None) => rows.push(a.clone()),
                (None, Some(b)) => rows.push(b.clone()),
                (None, None) => unreachable!(),
            }
        }
        Self::from_rows(rows)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.rows.len().max(other.rows.len());
        let mut rows = Vec::with_capacity(n);
        for i in 0..n {
            match (self.rows.get(i), other.rows.get(i)) {
                (Some(a), Some(b)) => rows.push(upoly::sub(a, b)),
                (Some(a), None) => rows.push(a.clone()),
                (None, Some(b)) => rows.push(upoly::neg(b)),
                (None, None) => unreachable!(),
            }
        }
        Self::from_rows(rows)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if let Some(c) = self.as_constant() {
            return other.scale(c);
        }
        if let Some(c) = other.as_constant() {
            return self.scale(c);
        }
        let mut rows = vec![Vec::new(); self.rows.len() + other.rows.len() - 1];
        for (i, a) in self.rows.iter().enumerate() {
            if a.is_empty() {
                continue;
            }
            for (j, b) in other.rows.iter().enumerate() {
                upoly::mul_add_assign(&mut rows[i + j], a, b);
            }
        }
        Self::from_rows(rows)
    }

    pub fn scale(&self, c: &Integer) -> Self {
        if *c == 0 {
            return Self::zero();
        }
        IntPoly { rows: self.rows.iter().map(|r| upoly::scale(r, c)).collect() }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Multiplies by s_h^a s_v^b.
    pub fn shift(&self, a: u32, b: u32) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut rows = vec![Vec::new(); a as usize];
        for r in &self.rows {
            if r.is_empty() {
                rows.push(Vec::new());
            } else {
                let mut row = vec![Integer::new(); b as usize];
                row.extend(r.iter().cloned());
                rows.push(row);
            }
        }
        IntPoly { rows }
    }

    /// Divides by s_h^a s_v^b, assuming the monomial divides every term.
    pub fn unshift(&self, a: u32, b: u32) -> Self {
        let rows = self
            .rows
            .iter()
            .skip(a as usize)
            .map(|r| if r.is_empty() { Vec::new() } else { r[b as usize..].to_vec() })
            .collect();
        Self::from_rows(rows)
    }

    pub fn divide_scalar_exact(&self, c: &Integer) -> Self {
        IntPoly { rows: self.rows.iter().map(|r| upoly::divide_scalar_exact(r, c)).collect() }
    }

    /// Exact quotient self / other, or `None` when other does not divide self.
    pub fn div_exact(&self, other: &Self) -> Option<Self> {
        assert!(!other.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(Self::zero());
        }
        if other.is_one() {
            return Some(self.clone());
        }
        if let Some(c) = other.as_constant() {
            if !self.terms().all(|(_, x)| x.is_divisible(c)) {
                return None;
            }
            return Some(self.divide_scalar_exact(c));
        }
        if other.is_monomial() {
            let ((a, b), c) = other.leading_term().unwrap();
            let (ma, mb) = self.monomial_content();
            if ma < a || mb < b || !self.terms().all(|(_, x)| x.is_divisible(c)) {
                return None;
            }
            return Some(self.unshift(a, b).divide_scalar_exact(c));
        }
        if self.rows.len() < other.rows.len() {
            return None;
        }
        let db = other.rows.len() - 1;
        let lb = &other.rows[db];
        let mut r = self.rows.clone();
        let mut q = vec![Vec::new(); self.rows.len() - db];
        for k in (0..q.len()).rev() {
            if r[k + db].is_empty() {
                continue;
            }
            let t = upoly::div_exact(&r[k + db], lb)?;
            for (j, b) in other.rows.iter().enumerate() {
                if !b.is_empty() {
                    let prod = upoly::mul(&t, b);
                    upoly::sub_assign(&mut r[k + j], &prod);
                }
            }
            q[k] = t;
        }
        if r.iter().any(|row| !row.is_empty()) {
            return None;
        }
        Some(Self::from_rows(q))
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.div_exact(self).is_some()
    }

    /// Primitive part with positive graded-lex leading coefficient.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = self.content();
        if self.leading_coeff_sign() == Ordering::Less {
            c = -c;
        }
        self.divide_scalar_exact(&c)
    }

    pub fn derivative_h(&self) -> Self {
        let rows = self
            .rows
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, r)| upoly::scale(r, &Integer::from(i)))
            .collect();
        Self::from_rows(rows)
    }

    pub fn derivative_v(&self) -> Self {
        let rows = self
            .rows
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .skip(1)
                    .map(|(j, c)| Integer::from(c * j as u32))
                    .collect::<UPoly>()
            })
            .collect();
        Self::from_rows(rows)
    }

    /// Euler operator s_h ∂_h + s_v ∂_v: each term scaled by its total degree.
    pub fn euler(&self) -> Self {
        let rows = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                r.iter()
                    .enumerate()
                    .map(|(j, c)| Integer::from(c * (i + j) as u32))
                    .collect::<UPoly>()
            })
            .collect();
        Self::from_rows(rows)
    }

    /// Exchanges s_h and s_v.
    pub fn swap_vars(&self) -> Self {
        Self::from_terms(self.terms().map(|((a, b), c)| (b, a, c.clone())))
    }

    /// Sets s_v = s_h, giving a polynomial in s_h alone.
    pub fn diagonal(&self) -> Self {
        Self::from_terms(self.terms().map(|((a, b), c)| (a + b, 0, c.clone())))
    }

    /// Reverses exponents against the bounding box: s_h^A s_v^B · p(1/s_h, 1/s_v).
    pub fn reciprocal(&self, big_a: u32, big_b: u32) -> Self {
        Self::from_terms(self.terms().map(|((a, b), c)| (big_a - a, big_b - b, c.clone())))
    }

    /// Evaluates s_v at an integer, giving coefficients of a univariate polynomial in s_h.
    pub fn eval_v(&self, x: &Integer) -> UPoly {
        let mut out: UPoly = self.rows.iter().map(|r| upoly::eval(r, x)).collect();
        upoly::trim(&mut out);
        out
    }

    pub fn eval_rational(&self, h: &rug::Rational, v: &rug::Rational) -> rug::Rational {
        let mut acc = rug::Rational::new();
        for r in self.rows.iter().rev() {
            let mut row = rug::Rational::new();
            for c in r.iter().rev() {
                row *= v;
                row += c;
            }
            acc *= h;
            acc += row;
        }
        acc
    }

    pub fn eval_float(&self, h: &rug::Float, v: &rug::Float) -> rug::Float {
        let prec = h.prec().max(v.prec());
        let mut acc = rug::Float::new(prec);
        for r in self.rows.iter().rev() {
            let mut row = rug::Float::new(prec);
            for c in r.iter().rev() {
                row *= v;
                row += c;
            }
            acc *= h;
            acc += &row;
        }
        acc
    }

    pub fn eval_f64(&self, h: f64, v: f64) -> f64 {
        let mut acc = 0.0;
        for r in self.rows.iter().rev() {
            let mut row = 0.0;
            for c in r.iter().rev() {
                row = row * v + c.to_f64();
            }
            acc = acc * h + row;
        }
        acc
    }

    /// Square root when self is the square of an integer polynomial.
    /// The root is returned with positive graded-lex leading coefficient.
    pub fn sqrt_exact(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        let terms = self.sorted_terms();
        let ((a, b), c) = terms[0];
        if a % 2 != 0 || b % 2 != 0 || c.cmp0() != Ordering::Greater || !c.is_perfect_square() {
            return None;
        }
        let (la, lb) = (a / 2, b / 2);
        let lc = Integer::from(c.sqrt_ref());
        let two_lead_c = Integer::from(&lc * 2u32);
        let mut root = Self::monomial(lc, la, lb);
        let mut rem = self.sub(&root.mul(&root));
        let limit = self.num_terms() * 4 + 8;
        for _ in 0..limit {
            let Some(((ra, rb), rc)) = rem.leading_term().map(|(e, c)| (e, c.clone())) else {
                return Some(root);
            };
            if ra < la || rb < lb {
                return None;
            }
            if !rc.is_divisible(&two_lead_c) {
                return None;
            }
            let t = Self::monomial(Integer::from(rc.div_exact_ref(&two_lead_c)), ra - la, rb - lb);
            // (root + t)² = root² + 2·root·t + t²
            rem = rem.sub(&root.mul(&t).scale(&Integer::from(2))).sub(&t.mul(&t));
            root = root.add(&t);
        }
        if rem.is_zero() {
            Some(root)
        } else {
            None
        }
    }

    pub fn rows(&self) -> &[UPoly] {
        &self.rows
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((a, b), c) in self.sorted_terms() {
            let neg = c.cmp0() == std::cmp::Ordering::Less;
            let abs = Integer::from(c.abs_ref());
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let mut parts = Vec::new();
            if abs != 1 || (a == 0 && b == 0) {
                parts.push(abs.to_string());
            }
            match a {
                0 => {}
                1 => parts.push("s_h".to_string()),
                _ => parts.push(format!("s_h^{a}")),
            }
            match b {
                0 => {}
                1 => parts.push("s_v".to_string()),
                _ => parts.push(format!("s_v^{b}")),
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(terms: &[(u32, u32, i64)]) -> IntPoly {
        IntPoly::from_terms(terms.iter().map(|&(a, b, c)| (a, b, c)))
    }

    #[test]
    fn multiply_and_divide() {
        let a = poly(&[(2, 0, 1), (0, 2, 1), (0, 0, 1)]);
        let b = poly(&[(1, 1, 3), (0, 0, -2)]);
        let ab = a.mul(&b);
        assert_eq!(ab.div_exact(&b).unwrap(), a);
        assert_eq!(ab.div_exact(&a).unwrap(), b);
        assert!(ab.add(&IntPoly::one()).div_exact(&b).is_none());
    }

    #[test]
    fn leading_term_is_graded_lex() {
        let p = poly(&[(0, 3, 5), (2, 1, -7), (1, 0, 1)]);
        assert_eq!(p.leading_term().unwrap().0, (2, 1));
        assert_eq!(p.leading_coeff_sign(), Ordering::Less);
    }

    #[test]
    fn square_root_of_square() {
        let p = poly(&[(2, 0, 3), (1, 1, -1), (0, 0, 2)]);
        let sq = p.mul(&p);
        let r = sq.sqrt_exact().unwrap();
        assert!(r == p || r == p.neg());
        assert!(sq.add(&IntPoly::one()).sqrt_exact().is_none());
        assert!(poly(&[(2, 0, 1), (0, 0, 1)]).sqrt_exact().is_none());
    }

    #[test]
    fn euler_operator_scales_by_degree() {
        let p = poly(&[(2, 1, 1), (0, 0, 4), (1, 0, -1)]);
        assert_eq!(p.euler(), poly(&[(2, 1, 3), (1, 0, -1)]));
    }

    #[test]
    fn display_is_readable() {
        assert_eq!(poly(&[(2, 0, 1), (0, 2, -1), (0, 0, 1)]).to_string(), "s_h^2 - s_v^2 + 1");
    }
}
