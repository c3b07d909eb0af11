//! Scalar abstractions shared by every module.
//!
//! Coefficient algebra only needs field operations, so it is written against
//! [`Field`] and runs unchanged on `f32`, `f64` and `BigRational`. Anything
//! touching logarithms, exponentials or Bessel functions needs [`Real`].

use std::fmt::{Debug, Display, LowerExp};
use std::ops::Neg;

use num_traits::{Float, FloatConst, FromPrimitive, Num, ToPrimitive};

/// Exact or approximate field arithmetic.
pub trait Field: Clone + Debug + PartialEq + Num + Neg<Output = Self> + FromPrimitive {
    /// The integer `n` as a field element.
    fn int(n: i64) -> Self {
        Self::from_i64(n).expect("integer is representable")
    }

    /// The fraction `n / d`.
    fn frac(n: i64, d: i64) -> Self {
        Self::int(n) / Self::int(d)
    }
}

impl<T> Field for T where T: Clone + Debug + PartialEq + Num + Neg<Output = T> + FromPrimitive {}

/// Floating-point scalar.
pub trait Real:
    Field + Float + FloatConst + Display + LowerExp + Send + Sync + 'static
{
    /// Converts an `f64` literal; used for tabulated constants.
    fn lit(x: f64) -> Self {
        <Self as FromPrimitive>::from_f64(x).expect("finite literal")
    }

    /// Lossy conversion used for error payloads and reports.
    fn as_f64(self) -> f64 {
        ToPrimitive::to_f64(&self).unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Evaluates `c[0] + c[1] x + ...` by Horner's rule.
pub fn horner<T: Field>(c: &[T], x: &T) -> T {
    c.iter()
        .rev()
        .fold(T::zero(), |acc, ci| acc * x.clone() + ci.clone())
}
