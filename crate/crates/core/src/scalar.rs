//! Scalar abstraction for the exact matrix layer.
//!
//! Everything in this crate is exact, so the intended instances are integral
//! domains with exact division: machine integers (when the caller knows the
//! values stay small), [`num_bigint::BigInt`], or a rational type such as
//! `num_rational::BigRational`.

use std::fmt::Debug;

use num_traits::{FromPrimitive, Num, Signed};

/// Matrix element type. Blanket-implemented for every type satisfying the bounds.
pub trait Scalar: Clone + Debug + PartialEq + PartialOrd + Num + Signed + FromPrimitive {
    /// Lifts a small integer (an incidence entry or a count) into the scalar type.
    fn lift(value: i64) -> Self {
        Self::from_i64(value).expect("scalar type cannot represent a small integer")
    }
}

impl<T: Clone + Debug + PartialEq + PartialOrd + Num + Signed + FromPrimitive> Scalar for T {}
