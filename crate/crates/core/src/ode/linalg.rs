//! Small exact eliminations: linear relations among values over the
//! coefficient field, and ranks of rational matrices.

use rug::Rational;

use super::coeff::{Form, OpCoeff};
use crate::ellring::EllMonomial;

struct Row<C> {
    pivot: EllMonomial,
    vec: Form<C>,
    combo: Vec<C>,
}

/// The first linear dependency in `seq`: the least r such that seq[r] lies in
/// the span of seq[0..r], returned as c_0..c_r with c_r = 1 and Σ c_p seq[p] = 0.
pub fn first_relation<C: OpCoeff>(seq: &[Form<C>]) -> Option<Vec<C>> {
    let mut rows: Vec<Row<C>> = Vec::new();
    for (p, t) in seq.iter().enumerate() {
        let mut v = t.clone();
        let mut combo = vec![C::zero(); p + 1];
        combo[p] = C::one();
        for row in &rows {
            let c = v.coeff(&row.pivot);
            if c.is_zero() {
                continue;
            }
            v = v.sub(&row.vec.scale(&c));
            for (i, r) in row.combo.iter().enumerate() {
                combo[i] = combo[i].sub(&r.mul(&c));
            }
        }
        match v.leading() {
            None => return Some(combo),
            Some((m, c)) => {
                let pivot = *m;
                let inv = c.inv().expect("nonzero pivot");
                rows.push(Row { pivot, vec: v.scale(&inv), combo: combo.iter().map(|x| x.mul(&inv)).collect() });
            }
        }
    }
    None
}

/// Rank of a rational matrix given by rows.
pub fn rational_rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let ncols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r].get(col).is_some_and(|x| *x != 0)) else {
            continue;
        };
        rows.swap(rank, p);
        let piv = rows[rank][col].clone();
        for r in rank + 1..rows.len() {
            if rows[r].get(col).is_some_and(|x| *x != 0) {
                let f = Rational::from(&rows[r][col] / &piv);
                for c in col..ncols {
                    let t = Rational::from(&f * &rows[rank][c]);
                    rows[r][c] -= t;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Solves the square system A·x = b exactly; `None` if A is singular.
pub fn rational_solve(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Option<Vec<Rational>> {
    let n = b.len();
    for col in 0..n {
        let p = (col..n).find(|&r| a[r][col] != 0)?;
        a.swap(col, p);
        b.swap(col, p);
        for r in 0..n {
            if r != col && a[r][col] != 0 {
                let f = Rational::from(&a[r][col] / &a[col][col]);
                for c in col..n {
                    let t = Rational::from(&f * &a[col][c]);
                    a[r][c] -= t;
                }
                let t = Rational::from(&f * &b[col]);
                b[r] -= t;
            }
        }
    }
    Some((0..n).map(|i| Rational::from(&b[i] / &a[i][i])).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffield::FieldElem;
    use crate::ellring::{parse_value, Basis};

    #[test]
    fn finds_the_first_dependency() {
        let v = |s: &str| Form::<FieldElem>::from_value(&parse_value(s, Basis::Pi).unwrap()).unwrap();
        let seq = [v("E"), v("K + s_h*E"), v("u_v*K - E")];
        let c = first_relation(&seq).unwrap();
        assert_eq!(c.len(), 3);
        let sum = seq.iter().zip(&c).fold(Form::zero(), |acc, (t, x)| acc.add(&t.scale(x)));
        assert!(sum.is_zero());
        assert!(first_relation(&seq[..2]).is_none());
    }

    #[test]
    fn rank_and_solve() {
        let q = |a: i64| Rational::from(a);
        let m = vec![vec![q(1), q(2), q(3)], vec![q(2), q(4), q(6)], vec![q(0), q(1), q(1)]];
        assert_eq!(rational_rank(m), 2);
        let x = rational_solve(vec![vec![q(2), q(1)], vec![q(1), q(3)]], vec![q(3), q(5)]).unwrap();
        assert_eq!(x, vec![Rational::from((4, 5)), Rational::from((7, 5))]);
    }
}
