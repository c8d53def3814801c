//! Torus characters and exact arithmetic in Q(q).

mod character;
mod laurent;
mod poly;
mod ratfun;

pub use character::Character;
pub use laurent::LaurentPoly;
pub use poly::PolyQ;
pub use ratfun::RationalFunction;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("dimension mismatch: expected {expected} variables, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("division by the zero polynomial")]
    DivisionByZero,
}
