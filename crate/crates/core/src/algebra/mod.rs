//! Exact polynomial arithmetic: the ring every other module computes over.

mod monomial;
mod polynomial;

pub use monomial::{Monomial, MultiIndex};
pub use polynomial::Polynomial;


#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("the ambient dimension must be at least 1")]
    ZeroDimension,
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("axis {axis} is out of range for dimension {dimension}")]
    InvalidAxis { axis: usize, dimension: usize },
    #[error("multi-index has length {found}, expected {expected}")]
    IndexLength { expected: usize, found: usize },
}
