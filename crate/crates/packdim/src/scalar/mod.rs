//! Number types the engine is generic over.
//!
//! Every curvature formula is written once against [`Scalar`]. Three
//! realizations exist: plain `f64` for speed, [`Interval`] with outward
//! rounding for certified bounds, and [`QuadSurd`] for exact arithmetic in
//! Q(√2). Series evaluation needs transcendental functions and is restricted
//! to the [`Real`] subset (`f64` and [`Interval`]).

mod interval;
mod surd;

pub use interval::Interval;
pub use surd::QuadSurd;

use std::cmp::Ordering;
use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::error::ScalarError;

pub trait Scalar:
    Clone
    + Debug
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn from_i64(v: i64) -> Self;
    fn from_rational(r: &BigRational) -> Self;
    fn sqrt2() -> Self;
    fn sqrt(&self) -> Result<Self, ScalarError>;
    /// Nearest double (midpoint for intervals).
    fn to_f64(&self) -> f64;
    fn lo(&self) -> f64;
    fn hi(&self) -> f64;
    /// Certain ordering, or `None` when it cannot be decided (overlapping intervals).
    fn compare(&self, other: &Self) -> Option<Ordering>;

    fn zero() -> Self {
        Self::from_i64(0)
    }

    fn one() -> Self {
        Self::from_i64(1)
    }

    /// `p + q√2` with rational parts.
    fn from_surd(p: &BigRational, q: &BigRational) -> Self {
        Self::from_rational(p) + Self::from_rational(q) * Self::sqrt2()
    }

    /// `r + s√2` with integer parts.
    fn from_z2(r: i64, s: i64) -> Self {
        match (r, s) {
            (_, 0) => Self::from_i64(r),
            (0, _) => Self::from_i64(s) * Self::sqrt2(),
            _ => Self::from_i64(r) + Self::from_i64(s) * Self::sqrt2(),
        }
    }

    /// `self < other`, falling back to midpoints when undecidable.
    fn lt_decide(&self, other: &Self) -> bool {
        match self.compare(other) {
            Some(o) => o == Ordering::Less,
            None => self.to_f64() < other.to_f64(),
        }
    }

    fn is_nonneg(&self) -> bool {
        self.compare(&Self::zero()).is_some_and(|o| o != Ordering::Less)
    }

    fn is_pos(&self) -> bool {
        self.compare(&Self::zero()) == Some(Ordering::Greater)
    }
}

/// Scalars with `exp`, `ln` and `powf`.
pub trait Real: Scalar + Copy {
    fn from_f64(x: f64) -> Self;
    fn powf(self, e: Self) -> Self;
    fn ln(self) -> Self;
    fn exp(self) -> Self;
    /// The set `[-err, err]`; zero for point arithmetic.
    fn pm(err: f64) -> Self;
    /// Upper bound on `|self|`.
    fn mag(self) -> f64;
}

impl Scalar for f64 {
    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn from_rational(r: &BigRational) -> Self {
        r.to_f64().unwrap_or(f64::NAN)
    }

    fn sqrt2() -> Self {
        std::f64::consts::SQRT_2
    }

    fn sqrt(&self) -> Result<Self, ScalarError> {
        if *self < 0.0 {
            Err(ScalarError::NegativeSqrt)
        } else {
            Ok(f64::sqrt(*self))
        }
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn lo(&self) -> f64 {
        *self
    }

    fn hi(&self) -> f64 {
        *self
    }

    fn compare(&self, other: &Self) -> Option<Ordering> {
        self.partial_cmp(other)
    }
}

impl Real for f64 {
    fn from_f64(x: f64) -> Self {
        x
    }

    fn powf(self, e: Self) -> Self {
        f64::powf(self, e)
    }

    fn ln(self) -> Self {
        f64::ln(self)
    }

    fn exp(self) -> Self {
        f64::exp(self)
    }

    fn pm(_err: f64) -> Self {
        0.0
    }

    fn mag(self) -> f64 {
        self.abs()
    }
}
