//! Floating-point scalar abstraction for the geometric kernel.
//!
//! Everything numeric in this crate is generic over [`Real`]; concrete
//! aliases for `f64` live at the crate root. `f32` compiles and works, but
//! the default tolerances target `f64` precision.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};

/// Scalar type the kernel is generic over.
pub trait Real: Float + FloatConst + FromPrimitive + NumAssign + Debug + Display + 'static {
    /// Conversion from an `f64` constant.
    #[inline]
    fn of(value: f64) -> Self {
        Self::from_f64(value).expect("finite f64 constant must convert")
    }

    /// Round-trip to `f64`, used for error reporting and the LP backend.
    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().expect("scalar converts to f64")
    }
}

impl Real for f32 {}
impl Real for f64 {}
