//! Exact generalized Wronskians over jet spaces, their insertion action, and
//! certified checks of the strongly homotopy Jacobi identity.
//!
//! Everything is generic over a [`Scalar`] field; the aliases below fix it to
//! arbitrary-precision rationals, which is what zero decisions need.

pub mod algebra;
pub mod certify;
pub mod det;
pub mod jacobi;
pub mod jet;
pub mod parser;
pub mod report;
mod scalar;
pub mod suite;
pub mod wronskian;

pub use algebra::{Monomial, MultiIndex, Polynomial};
pub use certify::{certify_operator, certify_zero, certify_zero_with, random_check, Certificate, CertifyConfig, CertifyError, Verdict};
pub use jet::{classify_pair, enumerate_multi_indices, jet_fibre_dim, TheoremCase, TheoremTag, WronskianSpec};
pub use parser::{parse_polynomial, render};
pub use scalar::Scalar;
pub use wronskian::{MultiLinearOp, OpError};

pub type Rational = num_rational::BigRational;
pub type QPolynomial = Polynomial<Rational>;
pub type QOp = MultiLinearOp<Rational>;
