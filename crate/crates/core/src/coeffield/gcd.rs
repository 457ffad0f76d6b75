//! GCD in Z[s_h, s_v].
//!
//! Monomial and integer contents are split off first. The remaining primitive
//! parts go through the heuristic GCD (evaluate s_v at a large integer, take a
//! univariate gcd, reconstruct xi-adically, confirm by trial division); if
//! that fails a primitive PRS in s_h over Z[s_v] is used.

use rug::Integer;

use super::intpoly::IntPoly;
use super::upoly::{self, UPoly};

/// GCD normalized to positive graded-lex leading coefficient.
pub fn gcd(a: &IntPoly, b: &IntPoly) -> IntPoly {
    if a.is_zero() {
        return b.primitive().scale(&b.content());
    }
    if b.is_zero() {
        return a.primitive().scale(&a.content());
    }
    let cg = Integer::from(a.content().gcd_ref(&b.content()));
    let (ma, na) = a.monomial_content();
    let (mb, nb) = b.monomial_content();
    let mono = (ma.min(mb), na.min(nb));
    let pa = a.unshift(ma, na).primitive();
    let pb = b.unshift(mb, nb).primitive();
    let core = if pa.as_constant().is_some() || pb.as_constant().is_some() {
        IntPoly::one()
    } else if pa == pb || pa.divides(&pb) {
        pa
    } else if pb.divides(&pa) {
        pb
    } else {
        heuristic(&pa, &pb).unwrap_or_else(|| prs(&pa, &pb))
    };
    core.shift(mono.0, mono.1).scale(&cg)
}

fn heuristic(a: &IntPoly, b: &IntPoly) -> Option<IntPoly> {
    let mut xi: Integer = Integer::from(a.max_norm().min(b.max_norm()) * 2u32) + 29u32;
    for _ in 0..6 {
        let ea = a.eval_v(&xi);
        let eb = b.eval_v(&xi);
        if ea.len() == a.rows().len() && eb.len() == b.rows().len() {
            let g = upoly::gcd(&ea, &eb);
            let rows: Vec<UPoly> = g.into_iter().map(|c| upoly::xi_adic(c, &xi)).collect();
            let cand = IntPoly::from_terms(rows.iter().enumerate().flat_map(|(i, r)| {
                r.iter().enumerate().map(move |(j, c)| (i as u32, j as u32, c.clone()))
            }))
            .primitive();
            if !cand.is_zero() && cand.divides(a) && cand.divides(b) {
                return Some(cand);
            }
        }
        xi = Integer::from(&xi * 73794u32) / 27011u32;
    }
    None
}

/// Content of a polynomial viewed in s_h with coefficients in Z[s_v].
fn content_h(rows: &[UPoly]) -> UPoly {
    let mut g: UPoly = Vec::new();
    for r in rows {
        if r.is_empty() {
            continue;
        }
        g = upoly::gcd(&g, r);
        if g.len() == 1 {
            break;
        }
    }
    g
}

fn rows_of(p: &IntPoly) -> Vec<UPoly> {
    p.rows().to_vec()
}

fn from_rows(rows: &[UPoly]) -> IntPoly {
    IntPoly::from_terms(rows.iter().enumerate().flat_map(|(i, r)| {
        r.iter().enumerate().map(move |(j, c)| (i as u32, j as u32, c.clone()))
    }))
}

fn pp_h(rows: &[UPoly]) -> Vec<UPoly> {
    let c = content_h(rows);
    rows.iter()
        .map(|r| if r.is_empty() { Vec::new() } else { upoly::div_exact(r, &c).expect("content divides") })
        .collect()
}

fn prem_h(a: &[UPoly], b: &[UPoly]) -> Vec<UPoly> {
    let mut r: Vec<UPoly> = a.to_vec();
    let db = b.len() - 1;
    let lb = &b[db];
    while r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        for row in r.iter_mut() {
            *row = upoly::mul(row, lb);
        }
        for (j, y) in b.iter().enumerate() {
            let t = upoly::mul(&lr, y);
            upoly::sub_assign(&mut r[dr - db + j], &t);
        }
        while r.last().is_some_and(|x| x.is_empty()) {
            r.pop();
        }
    }
    r
}

fn prs(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let ra = rows_of(a);
    let rb = rows_of(b);
    let cg = upoly::gcd(&content_h(&ra), &content_h(&rb));
    let mut x = pp_h(&ra);
    let mut y = pp_h(&rb);
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        let r = prem_h(&x, &y);
        x = y;
        y = if r.is_empty() { Vec::new() } else { pp_h(&r) };
    }
    let g = from_rows(&x);
    let cpoly = from_rows(&[cg]);
    g.mul(&cpoly).primitive()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(terms: &[(u32, u32, i64)]) -> IntPoly {
        IntPoly::from_terms(terms.iter().map(|&(a, b, c)| (a, b, c)))
    }

    #[test]
    fn recovers_common_factor() {
        let g = poly(&[(1, 1, 1), (0, 0, -1)]);
        let a = g.mul(&poly(&[(2, 0, 1), (0, 0, 1)])).mul(&poly(&[(0, 1, 3)]));
        let b = g.mul(&poly(&[(0, 2, 1), (0, 0, 1)])).mul(&poly(&[(1, 1, 6)]));
        assert_eq!(gcd(&a, &b), g.shift(0, 1).scale(&Integer::from(3)));
    }

    #[test]
    fn prs_agrees_with_heuristic() {
        let g = poly(&[(2, 1, 2), (0, 3, -1), (1, 0, 5)]);
        let a = g.mul(&poly(&[(1, 2, 1), (0, 0, 7)]));
        let b = g.mul(&poly(&[(3, 0, 1), (1, 1, -2), (0, 0, 1)]));
        assert_eq!(prs(&a, &b), heuristic(&a, &b).unwrap());
        assert_eq!(prs(&a, &b), g);
    }

    #[test]
    fn coprime_inputs() {
        let a = poly(&[(2, 0, 1), (0, 0, 1)]);
        let b = poly(&[(0, 2, 1), (0, 0, 1)]);
        assert!(gcd(&a, &b).is_one());
        assert!(prs(&a, &b).is_one());
    }
}
