//! Diagonal correlations C(N,N) as Toeplitz determinants whose entries lie in
//! the (Ẽ, K̃) subring.
//!
//! With α the modulus of the regime (α = k_< = 1/k at low temperature, α = k
//! at high temperature), the low-temperature entries are
//!   a_0 = Ẽ,  a_1 = ((2α² − 1)Ẽ + (1 − α²)K̃)/(3α),
//! continued in both directions by
//!   α(n + ½)a_n = [(1 + α²)(n − 1) + α²]a_{n−1} − α(n − 3/2)a_{n−2},
//! the coefficient form of (−αz³ + (1+α²)z² − αz)f′ = (α/2)(z² − 2αz + 1)f for
//! the symbol f = ((1 − α/z)/(1 − αz))^{1/2}. The high-temperature symbol is
//! −z^{−1}f(1/z) at α = k, so a_n^{high} = −a_{−n−1}^{low}.

use rug::Integer;

use crate::coeffield::FieldElem;
use crate::ellring::{Basis, EllError, EllMonomial, EllValue};
use crate::numerics::Regime;

/// Largest |n| served by [`diag_entry`].
pub const ENTRY_BOUND: i64 = 64;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum DiagError {
    #[error("entry index {0} outside ±{ENTRY_BOUND}")]
    OutOfBound(i64),
    #[error("vanishing pivot at step {0}")]
    ZeroPivot(usize),
    #[error(transparent)]
    Ring(#[from] EllError),
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiagEntry {
    pub n: i64,
    /// β_n Ẽ + α_n K̃; no Π̃ term.
    pub value: EllValue,
}

/// Coefficients (of Ẽ, of K̃) of a low-temperature entry.
type Pair = (FieldElem, FieldElem);

fn modulus(regime: Regime) -> FieldElem {
    match regime {
        Regime::High => FieldElem::monomial(1, 1, 1),
        Regime::Low => FieldElem::monomial(1, -1, -1),
    }
}

fn combine(x: &Pair, cx: &FieldElem, y: &Pair, cy: &FieldElem) -> Pair {
    (x.0.mul(cx).add(&y.0.mul(cy)), x.1.mul(cx).add(&y.1.mul(cy)))
}

fn int(n: i64) -> FieldElem {
    FieldElem::integer(Integer::from(n))
}

/// Low-temperature entries a_n for n in `lo..=hi` (lo ≤ 0 ≤ hi) at modulus α.
fn low_entries(alpha: &FieldElem, lo: i64, hi: i64) -> Vec<Pair> {
    let a2 = alpha.mul(alpha);
    let one = FieldElem::one();
    let inv3a = alpha.scale_int(&Integer::from(3)).inv().expect("α ≠ 0");
    let a0: Pair = (one.clone(), FieldElem::zero());
    let a1: Pair = (a2.scale_int(&Integer::from(2)).sub(&one).mul(&inv3a), one.sub(&a2).mul(&inv3a));
    // 2[(1+α²)(n−1)+α²]
    let mid = |n: i64| one.add(&a2).mul(&int(2 * (n - 1))).add(&a2.scale_int(&Integer::from(2)));
    let mut fwd = vec![a0.clone(), a1.clone()];
    for n in 2..=hi.max(1) {
        let c1 = mid(n);
        let c2 = alpha.mul(&int(-(2 * n - 3)));
        let d = alpha.mul(&int(2 * n + 1)).inv().unwrap();
        let t = combine(&fwd[(n - 1) as usize], &c1, &fwd[(n - 2) as usize], &c2);
        fwd.push((t.0.mul(&d), t.1.mul(&d)));
    }
    // back[j] = a_{−j}
    let mut back = vec![a0, a1];
    for m in 1..=-lo {
        let n = 2 - m;
        let prev1 = if n > 0 { fwd[(n - 1) as usize].clone() } else { back[(1 - n) as usize].clone() };
        let prev0 = if n >= 0 { fwd[n as usize].clone() } else { back[(-n) as usize].clone() };
        let c1 = mid(n);
        let c0 = alpha.mul(&int(-(2 * n + 1)));
        let d = alpha.mul(&int(2 * n - 3)).inv().unwrap();
        let t = combine(&prev1, &c1, &prev0, &c0);
        let v = (t.0.mul(&d), t.1.mul(&d));
        if back.len() <= m as usize {
            back.resize(m as usize + 1, (FieldElem::zero(), FieldElem::zero()));
        }
        back[m as usize] = v;
    }
    (lo..=hi).map(|n| if n >= 0 { fwd[n as usize].clone() } else { back[(-n) as usize].clone() }).collect()
}

fn to_value(p: &Pair) -> EllValue {
    EllValue::from_terms([(EllMonomial::new(1, 0, 0), p.0.clone()), (EllMonomial::new(0, 1, 0), p.1.clone())], Basis::Pi)
}

/// Entries a_n, n in `lo..=hi`, of the diagonal Toeplitz matrix.
pub fn diag_entries(lo: i64, hi: i64, regime: Regime) -> Result<Vec<DiagEntry>, DiagError> {
    for n in [lo, hi] {
        if n.abs() > ENTRY_BOUND {
            return Err(DiagError::OutOfBound(n));
        }
    }
    let alpha = modulus(regime);
    let pairs = match regime {
        Regime::Low => low_entries(&alpha, lo.min(0), hi.max(1)),
        Regime::High => low_entries(&alpha, (-hi - 1).min(0), (-lo - 1).max(1)),
    };
    let base = match regime {
        Regime::Low => lo.min(0),
        Regime::High => (-hi - 1).min(0),
    };
    Ok((lo..=hi)
        .map(|n| {
            let value = match regime {
                Regime::Low => to_value(&pairs[(n - base) as usize]),
                Regime::High => to_value(&pairs[(-n - 1 - base) as usize]).neg(),
            };
            DiagEntry { n, value }
        })
        .collect())
}

pub fn diag_entry(n: i64, regime: Regime) -> Result<DiagEntry, DiagError> {
    Ok(diag_entries(n, n, regime)?.remove(0))
}

/// Fraction-free (Bareiss) determinant; every division is exact in the ring.
pub fn bareiss_determinant(mut m: Vec<Vec<EllValue>>) -> Result<EllValue, DiagError> {
    let n = m.len();
    if n == 0 {
        return Ok(EllValue::one(Basis::Pi));
    }
    let mut prev = EllValue::one(Basis::Pi);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            return Err(DiagError::ZeroPivot(k));
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = num.exact_divide(&prev)?;
            }
        }
        prev = m[k][k].clone();
    }
    Ok(m[n - 1][n - 1].clone())
}

/// C(N,N) in the variables of the regime: high-temperature values use Ẽ(k),
/// K̃(k); low-temperature values use Ẽ(k_<), K̃(k_<).
pub fn diag_correlation(n: usize, regime: Regime) -> Result<EllValue, DiagError> {
    if n == 0 {
        return Ok(EllValue::one(Basis::Pi));
    }
    let span = n as i64 - 1;
    let entries = diag_entries(-span, span, regime)?;
    let at = |d: i64| entries[(d + span) as usize].value.clone();
    let m = (0..n as i64).map(|i| (0..n as i64).map(|j| at(i - j)).collect()).collect();
    bareiss_determinant(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ellring::parse_value;

    #[test]
    fn base_entries() {
        assert_eq!(diag_entry(0, Regime::Low).unwrap().value, EllValue::e(Basis::Pi));
        let high0 = parse_value("E/k - (1-k^2)*K/k", Basis::Pi).unwrap();
        assert_eq!(diag_entry(0, Regime::High).unwrap().value, high0);
    }

    #[test]
    fn backward_step_matches_closed_form() {
        let a = parse_value("(-E + (1 - k^(-2))*K)*k", Basis::Pi).unwrap();
        assert_eq!(diag_entry(-1, Regime::Low).unwrap().value, a);
    }

    #[test]
    fn first_diagonals() {
        let c1 = parse_value("E/(s_h*s_v) + (s_h^2*s_v^2 - 1)*K/(s_h*s_v)", Basis::Pi).unwrap();
        assert_eq!(diag_correlation(1, Regime::High).unwrap(), c1);
        let c2 = parse_value(
            "(5 - k^2)*E^2/(3*k^2) + 8*(k^2 - 1)*E*K/(3*k^2) + (k^2 - 1)^2*K^2/k^2",
            Basis::Pi,
        )
        .unwrap();
        assert_eq!(diag_correlation(2, Regime::High).unwrap(), c2);
        assert_eq!(diag_correlation(1, Regime::Low).unwrap(), EllValue::e(Basis::Pi));
    }

    #[test]
    fn determinants_are_homogeneous() {
        for n in 1..=4 {
            let c = diag_correlation(n, Regime::High).unwrap();
            assert!(c.is_homogeneous(n as u32));
            assert_eq!(c.total_degree(), n as u32);
            assert!(!c.has_pi());
        }
    }

    #[test]
    fn bound_is_enforced() {
        assert!(diag_entry(ENTRY_BOUND + 1, Regime::Low).is_err());
    }
}
