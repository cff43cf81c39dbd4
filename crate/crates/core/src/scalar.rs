//! Generic scalar abstraction for the numerical core.
//!
//! Every formula in this crate is written against [`Real`] so the same code
//! runs in `f64` (the default used by the CLI and the verification suites)
//! or `f32`. Concrete aliases live at the crate root.

use std::fmt;

use num_traits::{Float, FloatConst, FromPrimitive};

/// Floating-point scalar with the constants and conversions the model needs.
pub trait Real:
    Float + FloatConst + FromPrimitive + fmt::Debug + fmt::Display + Default + Send + Sync + 'static
{
    /// Lift an `f64` literal into this scalar type.
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable in scalar type")
    }

    /// Lift an integer count (atom numbers, grid sizes) into this scalar type.
    fn of_usize(n: usize) -> Self {
        Self::from_usize(n).expect("count representable in scalar type")
    }
}

impl Real for f32 {}
impl Real for f64 {}
