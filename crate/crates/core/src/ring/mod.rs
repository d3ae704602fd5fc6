//! Exact arithmetic in `Z[β][x, t, y]` localized at the factors `1 + β·v`.

mod int;
mod json;
mod loc;
mod mono;
mod poly;
mod text;

pub use int::Int;
pub use loc::{LocElem, Substitution};
pub use mono::{Family, Monomial, Var, MAX_INDEX, NVARS};
pub use poly::MPoly;
pub use text::parse_elem;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("division left a nonzero remainder")]
    NotDivisible,
    #[error("divisor is not linear with a unit leading coefficient")]
    NonUnitDivisor,
    #[error("element is not a product of (1+b*v) factors and cannot be inverted")]
    NotUnit,
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("invalid polynomial json: {0}")]
    Json(String),
}
