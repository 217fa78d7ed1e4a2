use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, NumAssign, ToPrimitive};

/// Floating-point scalar the numeric kernels are generic over.
///
/// Implemented by `f32` and `f64`; pipeline code uses [`crate::Real`].
pub trait Scalar:
    Float + FromPrimitive + ToPrimitive + NumAssign + Sum + Debug + Display + Send + Sync + 'static
{
}

impl<T> Scalar for T where
    T: Float + FromPrimitive + ToPrimitive + NumAssign + Sum + Debug + Display + Send + Sync + 'static
{
}

/// Cast a primitive into the scalar type.
///
/// Panics only when the value is not representable, which never happens for
/// the small constants this crate feeds it.
pub(crate) fn cast<F: Scalar, T: ToPrimitive>(value: T) -> F {
    F::from(value).expect("constant not representable in scalar type")
}
