//! Adjustable-precision numerics: Carlson integrals, normalized complete
//! elliptic integrals, evaluation of values at parameter points, and
//! independent numeric oracles (Toeplitz determinants, transfer matrices).

pub mod carlson;
mod complex;
pub mod elliptic;
pub mod eval;
pub mod identities;
pub mod point;
pub mod toeplitz;
pub mod transfer;

use serde::{Deserialize, Serialize};

pub use elliptic::{ell_e, ell_k, ell_k_agm, ell_pi, ell_pi_quadrature, ell_tilde, EllKind};
pub use eval::{eval_value, eval_with, Generators};
pub use identities::{
    pi_to_k_coefficients, check_pi_to_k_at_zero, verify_c01_forms, verify_pi_identity, verify_pi_pair,
    PiToKAtZero, IdentityReport, Sample,
};
pub use point::{ParamPoint, Regime};
pub use toeplitz::{toeplitz_diag, toeplitz_entries, toeplitz_row, OracleValue};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum NumericError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("modulus out of range: {0}")]
    Regime(String),
    #[error("{what} did not converge (achieved error estimate {achieved:e})")]
    NonConvergence { what: String, achieved: f64 },
    #[error("invalid precision configuration: {0}")]
    Precision(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PrecisionConfig {
    pub working_digits: u32,
    /// Relative accuracy asked of the elliptic kernels.
    pub kernel_tolerance: f64,
    /// Tolerance of physics-level comparisons (table entries against oracles).
    pub physics_tolerance: f64,
}

impl Default for PrecisionConfig {
    fn default() -> Self {
        PrecisionConfig { working_digits: 50, kernel_tolerance: 1e-30, physics_tolerance: 1e-12 }
    }
}

impl PrecisionConfig {
    pub fn with_digits(working_digits: u32) -> Self {
        PrecisionConfig { working_digits, ..Self::default() }
    }

    /// Binary precision for `rug::Float`, with a few guard bits.
    pub fn bits(&self) -> u32 {
        (self.working_digits as f64 * std::f64::consts::LOG2_10).ceil() as u32 + 8
    }

    /// Checks that the working precision can resolve both tolerances: twice the
    /// digits of the physics tolerance, and the digits of the kernel tolerance.
    pub fn validate(&self) -> Result<(), NumericError> {
        let need_physics = 2.0 * -self.physics_tolerance.log10();
        let need_kernel = -self.kernel_tolerance.log10();
        if !(self.physics_tolerance > 0.0 && self.kernel_tolerance > 0.0) {
            return Err(NumericError::Precision("tolerances must be positive".into()));
        }
        if (self.working_digits as f64) < need_physics || (self.working_digits as f64) < need_kernel {
            return Err(NumericError::Precision(format!(
                "{} digits cannot resolve tolerances {:e} / {:e}",
                self.working_digits, self.kernel_tolerance, self.physics_tolerance
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_precision_is_consistent() {
        let p = PrecisionConfig::default();
        assert!(p.validate().is_ok());
        assert!(p.bits() >= 166);
        assert!(PrecisionConfig::with_digits(20).validate().is_err());
    }
}
