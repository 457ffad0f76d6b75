//! Checks on the isotropic line s_h = s_v = s, where Π̃ reduces to K̃ and
//! every entry becomes a non-homogeneous polynomial in Ẽ, K̃.
//!
//! Isotropic values carry their coefficients in s_h and u_h = (1+s²)^{1/2}.

use rug::Float;
use serde::Serialize;

use super::{CorrTable, EngineError};
use crate::coeffield::{FieldElem, Substitution};
use crate::ellring::{parse_value, Basis, EllValue};
use crate::numerics::{eval_value, NumericError, ParamPoint, PrecisionConfig};

/// Closed isotropic forms of C(0,2), C_d(0,2), C(1,2), C_d(1,2).
pub fn isotropic_closed_form(dual: bool, m: usize, n: usize) -> Option<EllValue> {
    let src = match (dual, m, n) {
        (false, 0, 2) => "(s_h^2+1)*(s_h^2-1)^2/(2*s_h^2)*K^2 - E^2/s_h^2 + (s_h^2+1)/(2*s_h^2)",
        (true, 0, 2) => {
            "-(s_h^2+1)*(s_h^2+2)*(s_h^2-1)^2/(2*s_h^2)*K^2 - 2*(s_h^2+1)*(s_h^2-1)/s_h^2*E*K - E^2/s_h^2 + (s_h^2+1)/2"
        }
        (false, 1, 2) => {
            "u_h*((s_h^2+1)*(s_h^2-1)^2/(2*s_h^3)*K^2 + E^2/s_h^3 + (s_h^2+3)*(s_h^2-1)/(2*s_h^3)*E*K \
             + (s_h^2+1)*(s_h^2-1)/(2*s_h^3)*K - (s_h^2-1)/(2*s_h^3)*E)"
        }
        (true, 1, 2) => {
            "u_h*((s_h^2+1)*(s_h^2-1)^2/(2*s_h^2)*K^2 + E^2/s_h^2 + (s_h^2+3)*(s_h^2-1)/(2*s_h^2)*E*K \
             - (s_h^2+1)*(s_h^2-1)/(2*s_h^2)*K + (s_h^2-1)/(2*s_h^2)*E)"
        }
        _ => return None,
    };
    Some(parse_value(src, Basis::Pi).expect("closed form parses"))
}

/// Duality on the isotropic line: s → 1/s, Ẽ → Ẽ/s² + (s⁴−1)/s²·K̃,
/// K̃ → s²·K̃.
pub fn isotropic_dual(a: &EllValue) -> EllValue {
    a.duality_map().substitute_coeffs(&Substitution::isotropic())
}

/// s·a(s, −Ẽ, −K̃).
pub fn parity_image(a: &EllValue) -> EllValue {
    a.flip_ek_sign().scale(&FieldElem::monomial(1, 1, 0))
}

#[derive(Clone, Debug, Serialize)]
pub struct IsoCheck {
    pub check: String,
    pub m: usize,
    pub n: usize,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct IsotropicReport {
    pub checks: Vec<IsoCheck>,
    pub small_k_ratio: f64,
}

impl IsotropicReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// C(0,1)/(k^{1/2}/2) at ν = 1 and the given k.
pub fn small_k_ratio(table: &CorrTable, k: f64, cfg: &PrecisionConfig) -> Result<f64, NumericError> {
    let prec = cfg.bits();
    let s = Float::with_val(prec, k).sqrt();
    let p = ParamPoint::new(s.clone(), s.clone())?;
    let c01 = table.c_entry(0, 1).map_err(|e| NumericError::Domain(e.to_string()))?;
    let v = eval_value(&c01, &p)?;
    Ok((v / (s / 2u32)).to_f64())
}

pub const SMALL_K: f64 = 1e-6;
pub const SMALL_K_TOLERANCE: f64 = 1e-3;

/// Closed forms, duality on the isotropic line for every table entry, the
/// parity identity (expected exactly when N − M is odd), and the small-k law.
pub fn verify_isotropic(table: &CorrTable, cfg: &PrecisionConfig) -> Result<IsotropicReport, EngineError> {
    let mut checks = Vec::new();
    for (dual, m, n) in [(false, 0, 2), (true, 0, 2), (false, 1, 2), (true, 1, 2)] {
        if n > table.nmax() {
            continue;
        }
        let got = if dual { table.c_dual(m, n)? } else { table.c_entry(m, n)? }.isotropic_reduce();
        let want = isotropic_closed_form(dual, m, n).unwrap();
        let diff = got.sub(&want);
        checks.push(IsoCheck {
            check: if dual { "closed_form_dual" } else { "closed_form" }.into(),
            m,
            n,
            passed: diff.is_zero(),
            detail: format!("{} residual terms", diff.num_terms()),
        });
    }
    for (m, n) in table.points() {
        if m > n {
            continue;
        }
        let c = table.c_entry(m, n)?.isotropic_reduce();
        let d = table.c_dual(m, n)?.isotropic_reduce();
        let diff = isotropic_dual(&c).sub(&d);
        checks.push(IsoCheck {
            check: "duality".into(),
            m,
            n,
            passed: diff.is_zero(),
            detail: format!("{} residual terms", diff.num_terms()),
        });
        let holds = parity_image(&c) == d;
        let odd = (n - m) % 2 == 1;
        checks.push(IsoCheck {
            check: "parity_identity".into(),
            m,
            n,
            passed: holds == odd,
            detail: format!("holds: {holds}, N-M odd: {odd}"),
        });
    }
    let ratio = small_k_ratio(table, SMALL_K, cfg)?;
    checks.push(IsoCheck {
        check: "small_k".into(),
        m: 0,
        n: 1,
        passed: (ratio - 1.0).abs() < SMALL_K_TOLERANCE,
        detail: format!("ratio {ratio:.9} at k = {SMALL_K:e}"),
    });
    Ok(IsotropicReport { checks, small_k_ratio: ratio })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_of_pi_is_linear_in_k() {
        let p = EllValue::pi(Basis::Pi).isotropic_reduce();
        let want = parse_value("K/2 + 1/(2*(1+s_h^2))", Basis::Pi).unwrap();
        assert_eq!(p, want);
    }

    #[test]
    fn isotropic_dual_is_an_involution() {
        let a = isotropic_closed_form(false, 1, 2).unwrap();
        assert_eq!(isotropic_dual(&isotropic_dual(&a)), a);
    }

    #[test]
    fn nearest_neighbour_parity() {
        let t = CorrTable::build(1).unwrap();
        let c = t.c_entry(0, 1).unwrap().isotropic_reduce();
        let d = t.c_dual(0, 1).unwrap().isotropic_reduce();
        assert_eq!(parity_image(&c), d);
    }
}
