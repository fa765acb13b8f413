//! Coefficient fields.
//!
//! Everything in this crate is generic over a [`Scalar`]. Identically-zero
//! decisions are only meaningful over an exact field such as
//! [`crate::Rational`]; floating-point scalars compile and evaluate but their
//! zero tests are approximate and never certifying.

use std::fmt;
use std::ops::{AddAssign, DivAssign, MulAssign, SubAssign};

use num_traits::{FromPrimitive, NumAssign, Signed, ToPrimitive};

pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + NumAssign
    + Signed
    + FromPrimitive
    + ToPrimitive
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
    + for<'a> MulAssign<&'a Self>
    + for<'a> DivAssign<&'a Self>
    + Send
    + Sync
    + 'static
{
    fn from_int(n: i64) -> Self {
        Self::from_i64(n).expect("scalar type cannot represent a machine integer")
    }

    fn from_count(n: u128) -> Self {
        Self::from_u128(n).expect("scalar type cannot represent a machine integer")
    }

    /// The value as a machine integer, if it is exactly one.
    fn to_exact_i64(&self) -> Option<i64> {
        let n = self.to_i64()?;
        (Self::from_i64(n).as_ref() == Some(self)).then_some(n)
    }
}

impl<T> Scalar for T where
    T: Clone
        + PartialEq
        + fmt::Debug
        + fmt::Display
        + NumAssign
        + Signed
        + FromPrimitive
        + ToPrimitive
        + for<'a> AddAssign<&'a T>
        + for<'a> SubAssign<&'a T>
        + for<'a> MulAssign<&'a T>
        + for<'a> DivAssign<&'a T>
        + Send
        + Sync
        + 'static
{
}
