//! Integer scalar abstraction shared by the exact linear algebra and the
//! K-theory pipeline.
//!
//! Everything downstream is written against [`IntScalar`], so the same code
//! runs on fixed-width integers (fast, may overflow on adversarial input) and
//! on [`num_bigint::BigInt`] (the default used by the crate-root aliases).

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_integer::Integer;
use num_traits::{FromPrimitive, Signed, ToPrimitive};

/// An exact, signed, Euclidean integer type.
pub trait IntScalar:
    Clone + Debug + Display + Ord + Hash + Integer + Signed + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
    /// Lossless conversion from a machine integer.
    fn from_i64_exact(v: i64) -> Self {
        Self::from_i64(v).expect("scalar type cannot represent i64 value")
    }

    fn from_usize_exact(v: usize) -> Self {
        Self::from_usize(v).expect("scalar type cannot represent usize value")
    }
}

impl<T> IntScalar for T where
    T: Clone + Debug + Display + Ord + Hash + Integer + Signed + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
}
