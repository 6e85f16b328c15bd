//! Scalar abstraction shared by every numerical routine in the crate.

use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};

/// Real floating-point type the finite element code is generic over (`f32` or `f64`).
pub trait Scalar:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + NumAssign
    + Sum
    + Debug
    + Display
    + LowerExp
    + Default
    + Send
    + Sync
    + 'static
{
    /// Converts an `f64` literal into this scalar type.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable in scalar type")
    }

    /// Converts an index or count.
    #[inline]
    fn from_usize_lossy(n: usize) -> Self {
        Self::from_usize(n).expect("count representable in scalar type")
    }

    #[inline]
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// Default relative tolerance for iterative solves: `1e-12` in double
    /// precision, a hundred ulps above machine epsilon otherwise.
    #[inline]
    fn default_tol() -> Self {
        let hundred_eps = Self::epsilon() * Self::lit(100.0);
        hundred_eps.max(Self::lit(1e-12))
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// Plain 2-vector used for coordinates, wave vectors and pointwise velocities.
pub type Vec2<T> = [T; 2];

#[inline]
pub fn dot2<T: Scalar>(a: Vec2<T>, b: Vec2<T>) -> T {
    a[0] * b[0] + a[1] * b[1]
}

#[inline]
pub fn norm2<T: Scalar>(a: Vec2<T>) -> T {
    dot2(a, a).sqrt()
}

/// Pointwise rotation by +90°: `(u1, u2) -> (-u2, u1)`.
#[inline]
pub fn perp2<T: Scalar>(a: Vec2<T>) -> Vec2<T> {
    [-a[1], a[0]]
}

/// Rotation of a 2-vector by `angle` radians (counter-clockwise).
pub fn rotate2<T: Scalar>(a: Vec2<T>, angle: T) -> Vec2<T> {
    let (s, c) = angle.sin_cos();
    [c * a[0] - s * a[1], s * a[0] + c * a[1]]
}
