//! Numeric parameter points (s_h, s_v) and the quantities derived from them.

use rug::Float;
use serde::{Deserialize, Serialize};

use super::NumericError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    /// k = s_h s_v < 1.
    High,
    /// k > 1.
    Low,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ParamPoint {
    pub s_h: Float,
    pub s_v: Float,
}

impl ParamPoint {
    pub fn new(s_h: Float, s_v: Float) -> Result<Self, NumericError> {
        if !(s_h > 0 && s_v > 0) {
            return Err(NumericError::Domain("s_h and s_v must be positive".into()));
        }
        let p = ParamPoint { s_h, s_v };
        if p.k() == 1 {
            return Err(NumericError::Regime("k = 1 is the critical point".into()));
        }
        Ok(p)
    }

    pub fn from_f64(s_h: f64, s_v: f64, prec: u32) -> Result<Self, NumericError> {
        Self::new(Float::with_val(prec, s_h), Float::with_val(prec, s_v))
    }

    /// Parses decimal strings exactly to the working precision.
    pub fn parse(s_h: &str, s_v: &str, prec: u32) -> Result<Self, NumericError> {
        let read = |s: &str| {
            Float::parse(s)
                .map(|v| Float::with_val(prec, v))
                .map_err(|e| NumericError::Domain(format!("bad number {s:?}: {e}")))
        };
        Self::new(read(s_h)?, read(s_v)?)
    }

    /// s_h = (kν)^{1/2}, s_v = (k/ν)^{1/2}.
    pub fn from_k_nu(k: &Float, nu: &Float) -> Result<Self, NumericError> {
        let p = k.prec().max(nu.prec());
        let s_h = Float::with_val(p, k * nu).sqrt();
        let s_v = Float::with_val(p, k / nu).sqrt();
        Self::new(s_h, s_v)
    }

    pub fn prec(&self) -> u32 {
        self.s_h.prec().max(self.s_v.prec())
    }

    pub fn swapped(&self) -> Self {
        ParamPoint { s_h: self.s_v.clone(), s_v: self.s_h.clone() }
    }

    pub fn k(&self) -> Float {
        Float::with_val(self.prec(), &self.s_h * &self.s_v)
    }

    pub fn k_low(&self) -> Float {
        Float::with_val(self.prec(), 1) / self.k()
    }

    pub fn nu(&self) -> Float {
        Float::with_val(self.prec(), &self.s_h / &self.s_v)
    }

    pub fn regime(&self) -> Regime {
        if self.k() < 1 {
            Regime::High
        } else {
            Regime::Low
        }
    }

    /// tanh(βE) from s = sinh(2βE).
    fn z_of(s: &Float) -> Float {
        (Float::with_val(s.prec(), s.asinh_ref()) / 2u32).tanh()
    }

    pub fn z_h(&self) -> Float {
        Self::z_of(&self.s_h)
    }

    pub fn z_v(&self) -> Float {
        Self::z_of(&self.s_v)
    }

    /// (1 − z_v)/(1 + z_v) = e^{−2βE_v}.
    fn boltzmann_v(&self) -> Float {
        let zv = self.z_v();
        let p = self.prec();
        Float::with_val(p, 1 - Float::with_val(p, &zv)) / (zv + 1u32)
    }

    pub fn alpha1(&self) -> Float {
        self.z_h() * self.boltzmann_v()
    }

    pub fn alpha2(&self) -> Float {
        self.boltzmann_v() / self.z_h()
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.s_h.to_f64(), self.s_v.to_f64())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derived_quantities() {
        let p = ParamPoint::from_f64(0.6, 0.8, 160).unwrap();
        assert!((p.k().to_f64() - 0.48).abs() < 1e-15);
        assert_eq!(p.regime(), Regime::High);
        // s = 2z/(1 − z²)
        let z = p.z_h();
        let s = Float::with_val(160, &z * 2u32) / (Float::with_val(160, 1) - Float::with_val(160, &z * &z));
        assert!((s.to_f64() - 0.6).abs() < 1e-15);
        // α₁α₂ = e^{−4βE_v}, and α₂ = 1 exactly at k = 1
        let q = ParamPoint::from_f64(2.0, 0.5 + 1e-9, 160).unwrap();
        assert!((q.alpha2().to_f64() - 1.0).abs() < 1e-8);
        assert_eq!(ParamPoint::from_f64(1.3, 1.1, 160).unwrap().regime(), Regime::Low);
    }

    #[test]
    fn rejects_bad_points() {
        assert!(ParamPoint::from_f64(-0.1, 1.0, 64).is_err());
        assert!(ParamPoint::from_f64(2.0, 0.5, 64).is_err());
    }
}
