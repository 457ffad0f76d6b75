//! The anisotropic limit s_h = sλ, s_v = s/λ, λ → 0 at fixed k = s², in which
//! C(M,N) with M < N tends to the diagonal entry C(N,N).

use serde::Serialize;

use super::{CorrTable, EngineError};
use crate::coeffield::Substitution;
use crate::series::{lam_substitute, SeriesError};

#[derive(Clone, Debug, Serialize)]
pub struct LimitReport {
    pub m: usize,
    pub n: usize,
    pub order: i32,
    /// λ exponents below zero whose coefficient failed to cancel.
    pub surviving_negative: Vec<i32>,
    pub limit_matches: bool,
}

impl LimitReport {
    pub fn passed(&self) -> bool {
        self.surviving_negative.is_empty() && self.limit_matches
    }
}

#[derive(Debug, thiserror::Error)]
pub enum LimitError {
    #[error("need M < N, got ({m},{n})")]
    NotBelowDiagonal { m: usize, n: usize },
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// Expands C(M,N) through λ^{2N} and compares the λ⁰ term with C(N,N) at k = s².
pub fn lambda_limit_check(m: usize, n: usize, table: &CorrTable) -> Result<LimitReport, LimitError> {
    if m >= n {
        return Err(LimitError::NotBelowDiagonal { m, n });
    }
    let order = 2 * n as i32;
    let series = lam_substitute(table.c_pi(m, n)?, order)?;
    let target = table.c_pi(n, n)?.substitute_coeffs(&Substitution::isotropic());
    Ok(LimitReport {
        m,
        n,
        order,
        surviving_negative: series.negative_exponents(),
        limit_matches: series.coeff(0) == target,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nearest_neighbour_row_tends_to_the_diagonal() {
        let t = CorrTable::build(2).unwrap();
        let r = lambda_limit_check(0, 1, &t).unwrap();
        assert!(r.passed(), "{r:?}");
        assert!(lambda_limit_check(1, 1, &t).is_err());
    }
}
