//! Scalar abstractions.
//!
//! Everything that only needs field arithmetic (the vector field, equilibria,
//! the Euler map, Jacobians, characteristic polynomials) is written against
//! [`Scalar`], so it runs unchanged on exact rationals. Solvers that need
//! `exp`, `powf` or `sqrt` require [`Real`].

use std::fmt::{Debug, Display, LowerExp};
use std::ops::Neg;

use num_rational::Ratio;
use num_traits::{Float, FloatConst, FromPrimitive, Num};

/// Field-like value: exact rationals, `f32`, `f64`.
pub trait Scalar: Num + Copy + PartialOrd + Neg<Output = Self> + Debug + Send + Sync + 'static {
    /// `false` for NaN and infinities; always `true` for rationals.
    fn finite(self) -> bool;

    fn two() -> Self {
        Self::one() + Self::one()
    }

    fn four() -> Self {
        Self::two() * Self::two()
    }

    fn abs_val(self) -> Self {
        if self < Self::zero() {
            -self
        } else {
            self
        }
    }

    fn max_val(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }
}

macro_rules! float_scalar {
    ($($t:ty),*) => {$(
        impl Scalar for $t {
            fn finite(self) -> bool {
                self.is_finite()
            }
        }
    )*};
}

macro_rules! ratio_scalar {
    ($($t:ty),*) => {$(
        impl Scalar for Ratio<$t> {
            fn finite(self) -> bool {
                true
            }
        }
    )*};
}

float_scalar!(f32, f64);
ratio_scalar!(i32, i64, i128);

/// Floating-point scalar used by the numerical solvers.
pub trait Real: Scalar + Float + FloatConst + FromPrimitive + Display + LowerExp {
    /// Converts an `f64` literal. Never fails for `f32`/`f64`.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable in scalar type")
    }

    fn from_usize_lossy(n: usize) -> Self {
        Self::from_usize(n).expect("index representable in scalar type")
    }

    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl<T> Real for T where T: Scalar + Float + FloatConst + FromPrimitive + Display + LowerExp {}
