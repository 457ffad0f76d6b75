//! Exact anisotropic square-lattice Ising correlations as polynomials in
//! complete elliptic integrals, with numeric oracles and ODE derivation.

pub mod coeffield;
pub mod diagonal;
pub mod ellring;
pub mod engine;
pub mod numerics;
pub mod ode;
pub mod series;
