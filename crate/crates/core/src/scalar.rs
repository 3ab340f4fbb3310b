//! Field scalars for incidence matrices.

use std::fmt::{Debug, Display};
use std::ops::{Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

/// A field element usable as a matrix entry.
///
/// `Zero`/`One` supply the additive and multiplicative structure via their
/// supertraits; `try_inverse` returns `None` exactly on zero. Exact types
/// keep every identity on the nose; floating point satisfies the contract
/// only approximately and is meant for cross-check harnesses, not results.
pub trait Scalar:
    Clone
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + Sub<Output = Self>
    + Debug
    + Display
    + Send
    + Sync
{
    fn try_inverse(&self) -> Option<Self>;

    fn from_integer(v: i64) -> Self;
}

impl Scalar for BigRational {
    fn try_inverse(&self) -> Option<Self> {
        (!self.is_zero()).then(|| self.recip())
    }

    fn from_integer(v: i64) -> Self {
        BigRational::from_integer(v.into())
    }
}

impl Scalar for f64 {
    fn try_inverse(&self) -> Option<Self> {
        (*self != 0.0).then(|| 1.0 / self)
    }

    fn from_integer(v: i64) -> Self {
        v as f64
    }
}

impl Scalar for f32 {
    fn try_inverse(&self) -> Option<Self> {
        (*self != 0.0).then(|| 1.0 / self)
    }

    fn from_integer(v: i64) -> Self {
        v as f32
    }
}
