//! The bilinear relations between C and C_d, evaluated on a table.
//!
//! horizontal(M,N): s_h²[C(M,N)² − C(M,N−1)C(M,N+1)] + [C_d(M,N)² − C_d(M−1,N)C_d(M+1,N)]
//! vertical(M,N):   s_v²[C(M,N)² − C(M−1,N)C(M+1,N)] + [C_d(M,N)² − C_d(M,N−1)C_d(M,N+1)]
//! plaquette(M,N):  s_h s_v[C(M,N)C(M+1,N+1) − C(M,N+1)C(M+1,N)]
//!                  − [C_d(M,N)C_d(M+1,N+1) − C_d(M,N+1)C_d(M+1,N)]
//! boundary_h:      C_d(1,0) − (1+s_h²)^{1/2} + s_h C(0,1)
//! boundary_v:      C_d(0,1) − (1+s_v²)^{1/2} + s_v C(1,0)
//!
//! The first three vanish for all (M,N) except horizontal/vertical at the
//! origin, where the boundary relations replace them. Negative indices are
//! reflected: C(−M,N) = C(M,−N) = C(M,N), likewise for C_d.

use serde::{Deserialize, Serialize};

use crate::coeffield::FieldElem;
use crate::ellring::{Basis, EllValue};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    Horizontal,
    Vertical,
    Plaquette,
    BoundaryH,
    BoundaryV,
}

impl Relation {
    pub const BILINEAR: [Relation; 3] = [Relation::Horizontal, Relation::Vertical, Relation::Plaquette];

    pub fn name(self) -> &'static str {
        match self {
            Relation::Horizontal => "horizontal",
            Relation::Vertical => "vertical",
            Relation::Plaquette => "plaquette",
            Relation::BoundaryH => "boundary_h",
            Relation::BoundaryV => "boundary_v",
        }
    }
}

pub(crate) fn sh2() -> FieldElem {
    FieldElem::monomial(1, 2, 0)
}

pub(crate) fn sv2() -> FieldElem {
    FieldElem::monomial(1, 0, 2)
}

pub(crate) fn k() -> FieldElem {
    FieldElem::monomial(1, 1, 1)
}

/// Read access to C and C_d in basis Π̃, with reflection at the axes.
pub trait Lookup {
    fn c(&self, m: i64, n: i64) -> Option<&EllValue>;
    fn c_d(&self, m: i64, n: i64) -> Option<&EllValue>;
}

/// Residual of a relation at (M,N), or `None` when an entry is missing.
pub fn residual<T: Lookup + ?Sized>(t: &T, rel: Relation, m: i64, n: i64) -> Option<EllValue> {
    let c = |a, b| t.c(a, b);
    let d = |a, b| t.c_d(a, b);
    Some(match rel {
        Relation::Horizontal => {
            let x = c(m, n)?.square().sub(&c(m, n - 1)?.mul(c(m, n + 1)?)).scale(&sh2());
            x.add(&d(m, n)?.square().sub(&d(m - 1, n)?.mul(d(m + 1, n)?)))
        }
        Relation::Vertical => {
            let x = c(m, n)?.square().sub(&c(m - 1, n)?.mul(c(m + 1, n)?)).scale(&sv2());
            x.add(&d(m, n)?.square().sub(&d(m, n - 1)?.mul(d(m, n + 1)?)))
        }
        Relation::Plaquette => {
            let x = c(m, n)?.mul(c(m + 1, n + 1)?).sub(&c(m, n + 1)?.mul(c(m + 1, n)?)).scale(&k());
            x.sub(&d(m, n)?.mul(d(m + 1, n + 1)?).sub(&d(m, n + 1)?.mul(d(m + 1, n)?)))
        }
        Relation::BoundaryH => {
            let u = EllValue::constant(FieldElem::u_h(), Basis::Pi);
            d(1, 0)?.sub(&u).add(&c(0, 1)?.scale(&FieldElem::s_h()))
        }
        Relation::BoundaryV => {
            let u = EllValue::constant(FieldElem::u_v(), Basis::Pi);
            d(0, 1)?.sub(&u).add(&c(1, 0)?.scale(&FieldElem::s_v()))
        }
    })
}

/// Every instance of the relations whose entries all lie in the box
/// 0 ≤ M, N ≤ nmax (after reflection).
pub fn instances(nmax: usize) -> Vec<(Relation, i64, i64)> {
    let nm = nmax as i64;
    let mut out = vec![(Relation::BoundaryH, 0, 0), (Relation::BoundaryV, 0, 0)];
    for m in 0..nm {
        for n in 0..nm {
            if (m, n) != (0, 0) {
                out.push((Relation::Horizontal, m, n));
                out.push((Relation::Vertical, m, n));
            }
            out.push((Relation::Plaquette, m, n));
        }
    }
    out
}
