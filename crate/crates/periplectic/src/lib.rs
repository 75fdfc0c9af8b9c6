//! Exact computer algebra for the periplectic Lie superalgebra p(n) sitting
//! inside gl(n|n): matrix realization with its bracket, a PBW straightening
//! engine for the enveloping algebra, highest-weight modules, central
//! elements of the quotient by the rank-lowering ideal, truncated character
//! series, and the supergeometry of the associated symplectic-like family.
//!
//! All coefficients are exact rationals; nothing here floats.

pub mod scalar;
pub mod poly;
pub mod grassmann;
pub mod linalg;
pub mod roots;
pub mod superalg;
pub mod uea;
pub mod verma;
pub mod center;
pub mod chars;
pub mod geometry;

pub use scalar::Scalar;
pub use poly::WeightPoly;

use thiserror::Error as ThisError;

#[derive(Debug, Clone, PartialEq, Eq, ThisError)]
pub enum Error {
    #[error("cannot parse scalar from {0:?}")]
    BadScalar(String),
    #[error("expected {expected} values, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("rank must be at least 2, got {0}")]
    RankTooSmall(usize),
    #[error("operands live in different algebras")]
    UniverseMismatch,
    #[error("the invariant pairing is degenerate on the chosen complement")]
    DegenerateForm,
    #[error("{0}")]
    Unsupported(String),
}
