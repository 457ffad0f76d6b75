//! The correlation table {C(M,N), C_d(M,N)}, filled layer by layer
//! (layer = M + N) from the quadratic relations.
//!
//! Inputs: C(0,0) = C_d(0,0) = 1, the nearest-neighbour values C(0,1),
//! C(1,0), the boundary relations for C_d(1,0), C_d(0,1), and the diagonal
//! determinants C(N,N) (high temperature) and C_d(N,N) (the low-temperature
//! determinant with s_h → 1/s_v, s_v → 1/s_h).
//!
//! Layer q is filled as follows. Even q: starting from the diagonal entry,
//! each step along the layer takes one horizontal and one vertical relation
//! on layer q − 1, each with a single unknown. Odd q: the two central entries
//! (a, a+1), (a+1, a) satisfy two plaquette and two edge relations of rank
//! three; the plaquette through the next diagonal entry (a+1, a+1) closes the
//! system with a quadratic whose polynomial root is taken. Axis entries come
//! last, from the relations at the axes with reflection.
//!
//! All work is done in basis Π̃; entries with M > N are reported in Π̃_p,
//! where they are the mirror images of the M < N entries.

mod cache;
mod isotropic;
mod limit;
mod relations;

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use cache::{read_cache, write_cache, CACHE_SCHEMA, CACHE_VERSION};
pub use isotropic::{
    isotropic_closed_form, isotropic_dual, parity_image, small_k_ratio, verify_isotropic, IsoCheck, IsotropicReport, SMALL_K,
    SMALL_K_TOLERANCE,
};
pub use limit::{lambda_limit_check, LimitError, LimitReport};
pub use relations::{instances, residual, Lookup, Relation};
use relations::{k, sh2, sv2};

use crate::coeffield::{FieldElem, Substitution};
use crate::diagonal::{diag_correlation, DiagError};
use crate::ellring::{Basis, EllError, EllValue};
use crate::numerics::Regime;

pub const DEFAULT_NMAX: usize = 4;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum EngineError {
    #[error("seed cross-check failed: {0}")]
    SeedMismatch(String),
    #[error("insufficient seeds at layer {layer}")]
    InsufficientSeeds { layer: usize },
    #[error("entry ({m},{n}) is not a polynomial; remainder {remainder}")]
    NonPolynomial { m: usize, n: usize, remainder: Box<EllValue> },
    #[error("layer {layer}: no polynomial root of the closing quadratic")]
    NoPolynomialRoot { layer: usize },
    #[error("({m},{n}) is outside the table")]
    OutOfTable { m: usize, n: usize },
    #[error(transparent)]
    Diagonal(#[from] DiagError),
    #[error("cache: {0}")]
    Cache(String),
    #[error(transparent)]
    Numeric(#[from] crate::numerics::NumericError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    /// Nearest-neighbour input or boundary relation.
    Seed,
    /// Toeplitz determinant.
    Diagonal,
    /// Solved from the quadratic relations.
    Solved,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Kind {
    C,
    CDual,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CorrTable {
    nmax: usize,
    c: BTreeMap<(usize, usize), EllValue>,
    c_d: BTreeMap<(usize, usize), EllValue>,
    source: BTreeMap<(Kind, usize, usize), Source>,
}

impl Lookup for CorrTable {
    fn c(&self, m: i64, n: i64) -> Option<&EllValue> {
        self.c.get(&(m.unsigned_abs() as usize, n.unsigned_abs() as usize))
    }

    fn c_d(&self, m: i64, n: i64) -> Option<&EllValue> {
        self.c_d.get(&(m.unsigned_abs() as usize, n.unsigned_abs() as usize))
    }
}

/// The basis an entry is reported in.
pub fn adapted_basis(m: usize, n: usize) -> Basis {
    if m > n {
        Basis::PiP
    } else {
        Basis::Pi
    }
}

/// C(0,1) = (1+s_v²)^{1/2}·((s_h²+1)/s_h·Π̃ − K̃/s_h).
pub fn row_seed() -> EllValue {
    let b = Basis::Pi;
    let coeff_pi = FieldElem::from_poly(crate::coeffield::IntPoly::from_terms([(2, 0, 1i64), (0, 0, 1)]))
        .mul(&FieldElem::monomial(1, -1, 0));
    EllValue::pi(b)
        .scale(&coeff_pi)
        .sub(&EllValue::k(b).scale(&FieldElem::monomial(1, -1, 0)))
        .scale(&FieldElem::u_v())
}

/// C_d(N,N): the low-temperature diagonal determinant read back through the
/// replacement s_h → 1/s_v, s_v → 1/s_h (an involution on coefficients).
pub fn dual_diagonal(n: usize) -> Result<EllValue, DiagError> {
    Ok(diag_correlation(n, Regime::Low)?.substitute_coeffs(&Substitution::dual()))
}

fn exact(num: &EllValue, den: &EllValue, at: (usize, usize)) -> Result<EllValue, EngineError> {
    num.exact_divide(den).map_err(|e| match e {
        EllError::NonExact { remainder } => EngineError::NonPolynomial { m: at.0, n: at.1, remainder },
        _ => EngineError::InsufficientSeeds { layer: at.0 + at.1 },
    })
}

impl CorrTable {
    pub fn nmax(&self) -> usize {
        self.nmax
    }

    /// Inputs only: C(0,0), C_d(0,0), the four nearest-neighbour entries and
    /// both diagonals up to `nmax`.
    pub fn seeds(nmax: usize) -> Result<Self, EngineError> {
        let nmax = nmax.max(1);
        let mut t = CorrTable { nmax, c: BTreeMap::new(), c_d: BTreeMap::new(), source: BTreeMap::new() };
        let one = EllValue::one(Basis::Pi);
        t.put(Kind::C, 0, 0, one.clone(), Source::Seed);
        t.put(Kind::CDual, 0, 0, one, Source::Seed);
        let c01 = row_seed();
        let c10 = c01.swap_hv().change_basis(Basis::Pi);
        let cd10 = EllValue::constant(FieldElem::u_h(), Basis::Pi).sub(&c01.scale(&FieldElem::s_h()));
        let cd01 = EllValue::constant(FieldElem::u_v(), Basis::Pi).sub(&c10.scale(&FieldElem::s_v()));
        if cd01 != c01.duality_map() || cd10 != c10.duality_map() {
            return Err(EngineError::SeedMismatch("nearest-neighbour dual values disagree with the duality map".into()));
        }
        t.put(Kind::C, 0, 1, c01, Source::Seed);
        t.put(Kind::C, 1, 0, c10, Source::Seed);
        t.put(Kind::CDual, 0, 1, cd01, Source::Seed);
        t.put(Kind::CDual, 1, 0, cd10, Source::Seed);
        let diagonals: Vec<_> = (1..=nmax)
            .into_par_iter()
            .map(|n| Ok((n, diag_correlation(n, Regime::High)?, dual_diagonal(n)?)))
            .collect::<Result<_, DiagError>>()?;
        for (n, c, cd) in diagonals {
            if n <= 2 && c.duality_map() != cd {
                return Err(EngineError::SeedMismatch(format!("dual diagonal C_d({n},{n})")));
            }
            t.put(Kind::C, n, n, c, Source::Diagonal);
            t.put(Kind::CDual, n, n, cd, Source::Diagonal);
        }
        Ok(t)
    }

    /// Seeds plus every layer up to 2·nmax, restricted to the box.
    pub fn build(nmax: usize) -> Result<Self, EngineError> {
        let mut t = Self::seeds(nmax)?;
        for q in 2..=2 * t.nmax {
            t.fill_layer(q)?;
        }
        Ok(t)
    }

    fn put(&mut self, kind: Kind, m: usize, n: usize, v: EllValue, s: Source) {
        match kind {
            Kind::C => self.c.insert((m, n), v),
            Kind::CDual => self.c_d.insert((m, n), v),
        };
        self.source.entry((kind, m, n)).or_insert(s);
    }

    fn get(&self, kind: Kind, m: i64, n: i64) -> Result<&EllValue, EngineError> {
        let v = match kind {
            Kind::C => Lookup::c(self, m, n),
            Kind::CDual => Lookup::c_d(self, m, n),
        };
        v.ok_or(EngineError::OutOfTable { m: m.unsigned_abs() as usize, n: n.unsigned_abs() as usize })
    }

    fn cc(&self, m: usize, n: usize) -> Result<&EllValue, EngineError> {
        self.get(Kind::C, m as i64, n as i64)
    }

    fn dd(&self, m: usize, n: usize) -> Result<&EllValue, EngineError> {
        self.get(Kind::CDual, m as i64, n as i64)
    }

    /// Fills the entries with M + N = q inside the box; layers below must be present.
    pub fn fill_layer(&mut self, q: usize) -> Result<(), EngineError> {
        let nmax = self.nmax;
        if q < 2 || q > 2 * nmax {
            return Ok(());
        }
        let lo = 1.max(q.saturating_sub(nmax));
        let hi = (q - 1).min(nmax);
        if lo <= hi {
            let (down_from, up_from) = if q % 2 == 0 {
                let a = q / 2;
                if !self.c.contains_key(&(a, a)) || !self.c_d.contains_key(&(a, a)) {
                    return Err(EngineError::InsufficientSeeds { layer: q });
                }
                (a, a)
            } else {
                let a = (q - 1) / 2;
                self.solve_center(a)?;
                (a, a + 1)
            };
            for m in (lo + 1..=down_from).rev() {
                self.step_down(m, q - m)?;
            }
            for m in up_from..hi {
                self.step_up(m, q - m)?;
            }
        }
        if q <= nmax {
            self.fill_axes(q)?;
        }
        Ok(())
    }

    /// From (M,N) to (M+1,N−1), by the horizontal and vertical relations at (M,N−1).
    fn step_up(&mut self, m: usize, n: usize) -> Result<(), EngineError> {
        let (c, d) = (|s: &Self, a, b| s.cc(a, b).cloned(), |s: &Self, a, b| s.dd(a, b).cloned());
        let num = c(self, m, n - 1)?
            .square()
            .sub(&c(self, m, n - 2)?.mul(&c(self, m, n)?))
            .scale(&sh2())
            .add(&d(self, m, n - 1)?.square());
        let cd_new = exact(&num, &d(self, m - 1, n - 1)?, (m + 1, n - 1))?;
        let num = c(self, m, n - 1)?
            .square()
            .scale(&sv2())
            .add(&d(self, m, n - 1)?.square())
            .sub(&d(self, m, n - 2)?.mul(&d(self, m, n)?));
        let c_new = exact(&num, &c(self, m - 1, n - 1)?.scale(&sv2()), (m + 1, n - 1))?;
        self.put(Kind::C, m + 1, n - 1, c_new, Source::Solved);
        self.put(Kind::CDual, m + 1, n - 1, cd_new, Source::Solved);
        Ok(())
    }

    /// From (M,N) to (M−1,N+1), by the vertical and horizontal relations at (M−1,N).
    fn step_down(&mut self, m: usize, n: usize) -> Result<(), EngineError> {
        let (c, d) = (|s: &Self, a, b| s.cc(a, b).cloned(), |s: &Self, a, b| s.dd(a, b).cloned());
        let num = c(self, m - 1, n)?
            .square()
            .sub(&c(self, m - 2, n)?.mul(&c(self, m, n)?))
            .scale(&sv2())
            .add(&d(self, m - 1, n)?.square());
        let cd_new = exact(&num, &d(self, m - 1, n - 1)?, (m - 1, n + 1))?;
        let num = c(self, m - 1, n)?
            .square()
            .scale(&sh2())
            .add(&d(self, m - 1, n)?.square())
            .sub(&d(self, m - 2, n)?.mul(&d(self, m, n)?));
        let c_new = exact(&num, &c(self, m - 1, n - 1)?.scale(&sh2()), (m - 1, n + 1))?;
        self.put(Kind::C, m - 1, n + 1, c_new, Source::Solved);
        self.put(Kind::CDual, m - 1, n + 1, cd_new, Source::Solved);
        Ok(())
    }

    /// Central pair A = (a, a+1), B = (a+1, a) of the odd layer 2a + 1.
    fn solve_center(&mut self, a: usize) -> Result<(), EngineError> {
        let layer = 2 * a + 1;
        let c = |s: &Self, x, y| s.cc(x, y).cloned();
        let d = |s: &Self, x, y| s.dd(x, y).cloned();
        let kk = k();

        // plaquette at (a−1, a):  p_A X_A − r_A Y_A = t_A
        let p_a = c(self, a - 1, a)?.scale(&kk);
        let r_a = d(self, a - 1, a)?;
        let t_a = c(self, a - 1, a + 1)?.mul(&c(self, a, a)?).scale(&kk).sub(&d(self, a - 1, a + 1)?.mul(&d(self, a, a)?));
        // plaquette at (a, a−1):  p_B X_B − r_B Y_B = t_B
        let p_b = c(self, a, a - 1)?.scale(&kk);
        let r_b = d(self, a, a - 1)?;
        let t_b = c(self, a, a)?.mul(&c(self, a + 1, a - 1)?).scale(&kk).sub(&d(self, a, a)?.mul(&d(self, a + 1, a - 1)?));
        // vertical at (a, a):  s_v² C(a−1,a) X_B + r_B Y_A = R_v
        let r_v = c(self, a, a)?.square().scale(&sv2()).add(&d(self, a, a)?.square());
        let g = c(self, a - 1, a)?.scale(&sv2());
        // With X_A = t:  Y_A = (p_A t − t_A)/r_A,
        //   X_B = (N_B0 + N_B1 t)/(g r_A),  N_B0 = R_v r_A + r_B t_A,  N_B1 = −r_B p_A,
        //   Y_B = (p_B X_B − t_B)/r_B = (Y_B0 + Y_B1 t)/(g r_A r_B).
        // The plaquette at (a, a), k[C(a,a)C(a+1,a+1) − t X_B] = C_d(a,a)C_d(a+1,a+1) − Y_A Y_B,
        // times g r_A² r_B is quad·t² + lin·t + cst = 0.
        let gra = g.mul(&r_a);
        let nb0 = r_v.mul(&r_a).add(&r_b.mul(&t_a));
        let nb1 = r_b.mul(&p_a).neg();
        let yb0 = p_b.mul(&nb0).sub(&t_b.mul(&gra));
        let yb1 = p_b.mul(&nb1);
        let rarb_k = r_a.mul(&r_b).scale(&kk);
        let quad = p_a.mul(&yb1).sub(&rarb_k.mul(&nb1));
        let lin = p_a.mul(&yb0).sub(&t_a.mul(&yb1)).sub(&rarb_k.mul(&nb0));
        // The root is double in practice; the general path is the fallback.
        let t = match lin.neg().exact_divide(&quad.scale(&FieldElem::integer(2))) {
            Ok(t) => t,
            Err(_) => {
                let diag = c(self, a, a)?.mul(&c(self, a + 1, a + 1)?).scale(&kk);
                let diag_d = d(self, a, a)?.mul(&d(self, a + 1, a + 1)?);
                let cst = diag.sub(&diag_d).mul(&gra).mul(&r_a).mul(&r_b).sub(&t_a.mul(&yb0));
                polynomial_root(&quad, &lin, &cst).ok_or(EngineError::NoPolynomialRoot { layer })?
            }
        };
        let y_a = exact(&p_a.mul(&t).sub(&t_a), &r_a, (a, a + 1))?;
        let x_b = exact(&nb0.add(&nb1.mul(&t)), &gra, (a + 1, a))?;
        let y_b = exact(&p_b.mul(&x_b).sub(&t_b), &r_b, (a + 1, a))?;
        self.put(Kind::C, a, a + 1, t, Source::Solved);
        self.put(Kind::CDual, a, a + 1, y_a, Source::Solved);
        self.put(Kind::C, a + 1, a, x_b, Source::Solved);
        self.put(Kind::CDual, a + 1, a, y_b, Source::Solved);
        Ok(())
    }

    /// C(q,0), C_d(q,0), C(0,q), C_d(0,q) from the relations on the axes at
    /// distance q − 1, with reflection across the axis.
    fn fill_axes(&mut self, q: usize) -> Result<(), EngineError> {
        let c = |s: &Self, x, y| s.cc(x, y).cloned();
        let d = |s: &Self, x, y| s.dd(x, y).cloned();
        let p = q - 1;
        // vertical at (p,0): s_v²[C(p,0)² − C(p−1,0)C(q,0)] + C_d(p,0)² − C_d(p,1)² = 0
        let num = c(self, p, 0)?.square().scale(&sv2()).add(&d(self, p, 0)?.square()).sub(&d(self, p, 1)?.square());
        let c_q0 = exact(&num, &c(self, p - 1, 0)?.scale(&sv2()), (q, 0))?;
        // horizontal at (p,0): s_h²[C(p,0)² − C(p,1)²] + C_d(p,0)² − C_d(p−1,0)C_d(q,0) = 0
        let num = c(self, p, 0)?.square().sub(&c(self, p, 1)?.square()).scale(&sh2()).add(&d(self, p, 0)?.square());
        let cd_q0 = exact(&num, &d(self, p - 1, 0)?, (q, 0))?;
        // horizontal at (0,p): s_h²[C(0,p)² − C(0,p−1)C(0,q)] + C_d(0,p)² − C_d(1,p)² = 0
        let num = c(self, 0, p)?.square().scale(&sh2()).add(&d(self, 0, p)?.square()).sub(&d(self, 1, p)?.square());
        let c_0q = exact(&num, &c(self, 0, p - 1)?.scale(&sh2()), (0, q))?;
        // vertical at (0,p): s_v²[C(0,p)² − C(1,p)²] + C_d(0,p)² − C_d(0,p−1)C_d(0,q) = 0
        let num = c(self, 0, p)?.square().sub(&c(self, 1, p)?.square()).scale(&sv2()).add(&d(self, 0, p)?.square());
        let cd_0q = exact(&num, &d(self, 0, p - 1)?, (0, q))?;
        self.put(Kind::C, q, 0, c_q0, Source::Solved);
        self.put(Kind::CDual, q, 0, cd_q0, Source::Solved);
        self.put(Kind::C, 0, q, c_0q, Source::Solved);
        self.put(Kind::CDual, 0, q, cd_0q, Source::Solved);
        Ok(())
    }

    /// C(M,N) in the adapted basis.
    pub fn c_entry(&self, m: usize, n: usize) -> Result<EllValue, EngineError> {
        Ok(self.cc(m, n)?.change_basis(adapted_basis(m, n)))
    }

    /// C_d(M,N) in the adapted basis.
    pub fn c_dual(&self, m: usize, n: usize) -> Result<EllValue, EngineError> {
        Ok(self.dd(m, n)?.change_basis(adapted_basis(m, n)))
    }

    /// C(M,N) in basis Π̃.
    pub fn c_pi(&self, m: usize, n: usize) -> Result<&EllValue, EngineError> {
        self.cc(m, n)
    }

    /// C_d(M,N) in basis Π̃.
    pub fn c_dual_pi(&self, m: usize, n: usize) -> Result<&EllValue, EngineError> {
        self.dd(m, n)
    }

    pub fn source(&self, kind: Kind, m: usize, n: usize) -> Option<Source> {
        self.source.get(&(kind, m, n)).copied()
    }

    /// The entries with M, N ≤ `nmax`.
    pub fn truncated(&self, nmax: usize) -> CorrTable {
        let keep = |m: usize, n: usize| m <= nmax && n <= nmax;
        CorrTable {
            nmax: nmax.min(self.nmax),
            c: self.c.iter().filter(|((m, n), _)| keep(*m, *n)).map(|(k, v)| (*k, v.clone())).collect(),
            c_d: self.c_d.iter().filter(|((m, n), _)| keep(*m, *n)).map(|(k, v)| (*k, v.clone())).collect(),
            source: self.source.iter().filter(|((_, m, n), _)| keep(*m, *n)).map(|(k, v)| (*k, *v)).collect(),
        }
    }

    /// Lattice points present in the table, in order.
    pub fn points(&self) -> Vec<(usize, usize)> {
        self.c.keys().copied().filter(|p| self.c_d.contains_key(p)).collect()
    }

    /// C_<(M,N) in low-temperature variables: the replacement
    /// s_h → 1/s_v, s_v → 1/s_h applied to C_d(M,N), with Ẽ, K̃, Π̃ read as
    /// Ẽ(k_<), K̃(k_<), Π̃(−1/s_v², k_<).
    pub fn low_temp(&self, m: usize, n: usize) -> Result<EllValue, EngineError> {
        Ok(self.c_dual(m, n)?.substitute_coeffs(&Substitution::dual()))
    }

    pub fn audit(&self) -> AuditReport {
        let mut checks: Vec<AuditCheck> = instances(self.nmax)
            .into_par_iter()
            .map(|(rel, m, n)| {
                let r = residual(self, rel, m, n);
                AuditCheck {
                    check: rel.name().into(),
                    m: m as usize,
                    n: n as usize,
                    zero: r.as_ref().map(EllValue::is_zero).unwrap_or(false),
                    residual_terms: r.map(|v| v.num_terms()).unwrap_or(usize::MAX),
                }
            })
            .collect();
        let points = self.points();
        let dual: Vec<AuditCheck> = points
            .par_iter()
            .flat_map(|&(m, n)| {
                let c = self.cc(m, n).unwrap();
                let d = self.dd(m, n).unwrap();
                let img = c.duality_map();
                let diff = img.sub(d);
                let back = d.duality_map().sub(c);
                let swap = self.cc(n, m).map(|s| s.swap_hv().change_basis(Basis::Pi).sub(c));
                let mut v = vec![
                    AuditCheck { check: "duality".into(), m, n, zero: diff.is_zero(), residual_terms: diff.num_terms() },
                    AuditCheck { check: "duality_involution".into(), m, n, zero: back.is_zero(), residual_terms: back.num_terms() },
                ];
                if let Ok(s) = swap {
                    v.push(AuditCheck { check: "swap".into(), m, n, zero: s.is_zero(), residual_terms: s.num_terms() });
                }
                v
            })
            .collect();
        checks.extend(dual);
        let failures = checks.iter().filter(|c| !c.zero).count();
        AuditReport { nmax: self.nmax, checks, failures }
    }
}

/// The root t of quad·t² + lin·t + cst = 0 that is a polynomial, if exactly
/// one is. Writing the discriminant as c²·S² with S normalized, the root
/// (c·S − lin)/(2·quad) is a polynomial only if c·rem(S) = rem(lin) modulo
/// quad, which fixes c linearly.
fn polynomial_root(quad: &EllValue, lin: &EllValue, cst: &EllValue) -> Option<EllValue> {
    if quad.is_zero() {
        return cst.neg().exact_divide(lin).ok();
    }
    let disc = lin.square().sub(&quad.mul(cst).scale(&FieldElem::integer(4)));
    let two_quad = quad.scale(&FieldElem::integer(2));
    if disc.is_zero() {
        return lin.neg().exact_divide(&two_quad).ok();
    }
    let s = disc.normalized_sqrt()?;
    let (_, rs) = s.div_rem(&two_quad).ok()?;
    let (_, rl) = lin.div_rem(&two_quad).ok()?;
    let c = match rs.leading() {
        Some((m, cs)) => rl.coeff(m).div(cs).ok()?,
        // both roots would be polynomials; the scalar is not determined here
        None => return None,
    };
    if c.mul(&c) != *disc.leading()?.1 {
        return None;
    }
    s.scale(&c).sub(lin).exact_divide(&two_quad).ok()
}

#[derive(Clone, Debug, Serialize)]
pub struct AuditCheck {
    pub check: String,
    pub m: usize,
    pub n: usize,
    pub zero: bool,
    pub residual_terms: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct AuditReport {
    pub nmax: usize,
    pub checks: Vec<AuditCheck>,
    pub failures: usize,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ellring::parse_value;

    #[test]
    fn nearest_neighbour_dual() {
        let t = CorrTable::seeds(1).unwrap();
        let expected = parse_value("u_h*((s_v^2 + 1)*P - s_v^2*K)", Basis::Pi).unwrap();
        assert_eq!(t.c_dual(0, 1).unwrap(), expected);
        assert_eq!(t.c_entry(0, 0).unwrap(), EllValue::one(Basis::Pi));
    }

    #[test]
    fn second_layer_row() {
        let t = CorrTable::build(2).unwrap();
        let c = |m, n| t.c_pi(m, n).unwrap().clone();
        let d = |m, n| t.c_dual_pi(m, n).unwrap().clone();
        let expected = c(0, 1)
            .square()
            .scale(&sh2())
            .add(&d(0, 1).square())
            .sub(&d(1, 1).square())
            .scale(&sh2().inv().unwrap());
        assert_eq!(c(0, 2), expected);
        assert_eq!(t.source(Kind::C, 0, 2), Some(Source::Solved));
    }

    #[test]
    fn small_table_audits_clean() {
        let t = CorrTable::build(2).unwrap();
        let r = t.audit();
        let bad: Vec<_> = r.checks.iter().filter(|c| !c.zero).collect();
        assert!(bad.is_empty(), "{bad:?}");
    }

    #[test]
    fn truncation_matches_a_smaller_build() {
        assert_eq!(CorrTable::build(3).unwrap().truncated(2), CorrTable::build(2).unwrap());
    }

    #[test]
    fn polynomial_root_picks_the_polynomial() {
        // (t − E)(K t − E²) = 0: only t = E is a polynomial
        let e = EllValue::e(Basis::Pi);
        let kk = EllValue::k(Basis::Pi);
        let quad = kk.clone();
        let lin = e.square().add(&e.mul(&kk)).neg();
        let cst = e.pow(3);
        assert_eq!(polynomial_root(&quad, &lin, &cst), Some(e));
    }
}
