//! Exact-arithmetic Lie algebras: rationals, linear algebra, structure
//! constants, adjoint data, modular characters, subalgebras and annihilators.

pub mod lie;
pub mod linalg;
pub mod scalar;

pub use lie::{restrict_covector, Covector, JacobiVerdict, LieAlgebra, Subalgebra, Vector};
pub use linalg::Matrix;
pub use scalar::{frac, int, parse_scalar, Scalar};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LieError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("index out of range: {0}")]
    Index(String),
    #[error("inconsistent brackets given for the pair ({0}, {1})")]
    Asymmetry(String, String),
    #[error("basis vectors are linearly dependent")]
    DependentBasis,
    #[error("span is not closed under the bracket")]
    NotClosed,
    #[error("{0}")]
    Parse(String),
}
