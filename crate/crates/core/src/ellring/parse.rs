//! A small expression reader for values, e.g.
//! `u_v*((s_h^2+1)/s_h*P - K/s_h)`.
//!
//! Names: `s_h`, `s_v`, `u_h`, `u_v`, `w` (= u_v u_h), `k` (= s_h s_v),
//! `nu` (= s_h/s_v), `s`/`u` (aliases of `s_h`/`u_h` for isotropic values),
//! `E`, `K`, and `P` for the third-kind generator of the requested basis.
//! Division is allowed only by coefficient-field expressions.

use super::{Basis, EllMonomial, EllValue};
use crate::coeffield::FieldElem;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("parse error at byte {pos}: {msg}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

pub fn parse_value(src: &str, basis: Basis) -> Result<EllValue, ParseError> {
    let mut p = Parser { src: src.as_bytes(), pos: 0, basis };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("trailing input"));
    }
    Ok(v)
}

/// Parses an expression that must not contain Ẽ, K̃ or Π̃.
pub fn parse_field(src: &str) -> Result<FieldElem, ParseError> {
    let v = parse_value(src, Basis::Pi)?;
    as_field(&v).ok_or(ParseError { pos: 0, msg: "expression contains elliptic integrals".into() })
}

fn as_field(v: &EllValue) -> Option<FieldElem> {
    if v.is_zero() {
        return Some(FieldElem::zero());
    }
    if v.num_terms() == 1 {
        if let Some((m, c)) = v.leading() {
            if *m == EllMonomial::ONE {
                return Some(c.clone());
            }
        }
    }
    None
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    basis: Basis,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> ParseError {
        ParseError { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<EllValue, ParseError> {
        let mut acc = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == b'+' { acc.add(&rhs) } else { acc.sub(&rhs) };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<EllValue, ParseError> {
        let mut acc = self.unary()?;
        while let Some(c @ (b'*' | b'/')) = self.peek() {
            self.pos += 1;
            let rhs = self.unary()?;
            if c == b'*' {
                acc = acc.mul(&rhs);
            } else {
                let d = as_field(&rhs).ok_or_else(|| self.err("division by a non-constant value"))?;
                let inv = d.inv().map_err(|_| self.err("division by zero"))?;
                acc = acc.scale(&inv);
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<EllValue, ParseError> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(self.unary()?.neg());
        }
        if self.peek() == Some(b'+') {
            self.pos += 1;
        }
        self.power()
    }

    fn power(&mut self) -> Result<EllValue, ParseError> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        let mut neg = false;
        if self.peek() == Some(b'(') {
            self.pos += 1;
            if self.peek() == Some(b'-') {
                self.pos += 1;
                neg = true;
            }
            let e = self.integer()?;
            if self.peek() != Some(b')') {
                return Err(self.err("expected ')'"));
            }
            self.pos += 1;
            return self.raise(base, e, neg);
        }
        if self.peek() == Some(b'-') {
            self.pos += 1;
            neg = true;
        }
        let e = self.integer()?;
        self.raise(base, e, neg)
    }

    fn raise(&self, base: EllValue, e: u32, neg: bool) -> Result<EllValue, ParseError> {
        if !neg {
            return Ok(base.pow(e));
        }
        let f = as_field(&base).ok_or_else(|| self.err("negative power of a non-constant value"))?;
        let inv = f.inv().map_err(|_| self.err("negative power of zero"))?;
        Ok(EllValue::constant(inv.pow(e), self.basis))
    }

    fn integer(&mut self) -> Result<u32, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.err("expected an integer exponent"))
    }

    fn atom(&mut self) -> Result<EllValue, ParseError> {
        let b = self.basis;
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let n: rug::Integer = s.parse().map_err(|_| self.err("bad number"))?;
                Ok(EllValue::constant(FieldElem::integer(n), b))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let field = |f: FieldElem| Ok(EllValue::constant(f, b));
                match name {
                    "s_h" | "s" => field(FieldElem::s_h()),
                    "s_v" => field(FieldElem::s_v()),
                    "u_h" | "u" => field(FieldElem::u_h()),
                    "u_v" => field(FieldElem::u_v()),
                    "w" => field(FieldElem::w()),
                    "k" => field(FieldElem::monomial(1, 1, 1)),
                    "nu" => field(FieldElem::monomial(1, 1, -1)),
                    "E" => Ok(EllValue::e(b)),
                    "K" => Ok(EllValue::k(b)),
                    "P" => Ok(EllValue::pi(b)),
                    _ => {
                        self.pos = start;
                        Err(self.err(&format!("unknown name {name:?}")))
                    }
                }
            }
            _ => Err(self.err("expected a number, name or '('")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_nested_expressions() {
        let v = parse_value("-(E - 2*K)^2/(s_h*s_v) + s_h^(-2)", Basis::Pi).unwrap();
        let e = EllValue::e(Basis::Pi);
        let k = EllValue::k(Basis::Pi);
        let expected = e
            .sub(&k.scale(&FieldElem::integer(2)))
            .square()
            .neg()
            .scale(&FieldElem::monomial(1, -1, -1))
            .add(&EllValue::constant(FieldElem::monomial(1, -2, 0), Basis::Pi));
        assert_eq!(v, expected);
    }

    #[test]
    fn rejects_division_by_integrals() {
        assert!(parse_value("1/E", Basis::Pi).is_err());
        assert!(parse_value("1/0", Basis::Pi).is_err());
        assert!(parse_value("x", Basis::Pi).is_err());
    }
}
