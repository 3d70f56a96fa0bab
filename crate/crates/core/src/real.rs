//! Floating-point scalar abstraction.
//!
//! All purely numeric kernels (Lobachevsky function, sine-product tables,
//! quantum-factorial log sums) are generic over [`Real`] so they can run at
//! `f32` or `f64`; the exact layer always uses big integers and rationals.
//! Concrete `f64` aliases live at the crate root.

use num_traits::float::FloatConst;
use num_traits::{Float, FromPrimitive};

/// Scalar type for the numeric (non-exact) parts of the crate.
pub trait Real:
    Float + FloatConst + FromPrimitive + std::fmt::Debug + std::fmt::Display + Send + Sync + 'static
{
    /// Lossy conversion from `f64`, used for tolerances and tabulated constants.
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("f64 constant must convert into the scalar type")
    }
}

impl<T> Real for T where
    T: Float + FloatConst + FromPrimitive + std::fmt::Debug + std::fmt::Display + Send + Sync + 'static
{
}

/// Kahan compensated accumulator; keeps long log-sums near machine precision.
#[derive(Clone, Copy, Debug)]
pub struct KahanSum<R: Real> {
    sum: R,
    comp: R,
}

impl<R: Real> Default for KahanSum<R> {
    fn default() -> Self {
        KahanSum { sum: R::zero(), comp: R::zero() }
    }
}

impl<R: Real> KahanSum<R> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: R) {
        let y = x - self.comp;
        let t = self.sum + y;
        self.comp = (t - self.sum) - y;
        self.sum = t;
    }

    pub fn value(&self) -> R {
        self.sum
    }
}
