//! Exact coefficient field: Q(s_h, s_v) and its extension by u_v, u_h.

mod field;
mod gcd;
mod intpoly;
mod ratfunc;
mod serial;
pub(crate) mod upoly;

pub use field::{FieldElem, Substitution, Var};
pub use gcd::gcd;
pub use intpoly::{grlex_cmp, Exp, IntPoly};
pub use ratfunc::{compose_poly, RatFunc};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CoeffError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("root image not expressible in the basis {{1, u_v, u_h, u_v u_h}}: {0}")]
    RootNotExpressible(String),
}
