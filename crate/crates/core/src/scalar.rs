//! Scalar abstraction: the crate is generic over `f32`/`f64`.

use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, Signed, ToPrimitive};

/// Floating-point scalar type. Implemented for `f32` and `f64`.
///
/// The bound set is what the numerical kernels actually need: IEEE float
/// operations, math constants, conversion from literal `f64` constants, and
/// FFT support.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + NumAssign
    + Signed
    + Sum
    + Send
    + Sync
    + Debug
    + Display
    + LowerExp
    + Default
    + rustfft::FftNum
    + 'static
{
    /// Converts an `f64` constant, panicking only on non-finite input.
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("finite f64 constant")
    }

    /// Complex value from `f64` parts.
    fn cplx(re: f64, im: f64) -> Complex<Self> {
        Complex::new(Self::of(re), Self::of(im))
    }

    /// Machine-dependent tolerance scale: `eps.sqrt()` is a practical
    /// threshold for "equal up to accumulated roundoff" comparisons.
    fn eps() -> Self {
        Self::epsilon()
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Complex scalar alias used throughout the crate.
pub type C<T> = Complex<T>;
