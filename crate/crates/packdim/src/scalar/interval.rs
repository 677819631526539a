//! Closed intervals with outward rounding.
//!
//! No rounding modes are switched. Each endpoint is nudged one ulp outward
//! after every operation, which encloses the exact result because IEEE
//! arithmetic is correctly rounded. Library `ln`, `exp` and `powf` are
//! assumed accurate to one ulp and are widened by two.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::ToPrimitive;

use super::{Real, Scalar};
use crate::error::ScalarError;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

#[inline]
fn dn(x: f64) -> f64 {
    x.next_down()
}

#[inline]
fn up(x: f64) -> f64 {
    x.next_up()
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Self {
        assert!(lo <= hi, "interval endpoints out of order: [{lo}, {hi}]");
        Interval { lo, hi }
    }

    pub fn point(x: f64) -> Self {
        Interval { lo: x, hi: x }
    }

    pub fn entire() -> Self {
        Interval { lo: f64::NEG_INFINITY, hi: f64::INFINITY }
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn mid(&self) -> f64 {
        0.5 * self.lo + 0.5 * self.hi
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn hull(&self, other: &Interval) -> Interval {
        Interval { lo: self.lo.min(other.lo), hi: self.hi.max(other.hi) }
    }

    fn widen(lo: f64, hi: f64, ulps: u32) -> Interval {
        let (mut l, mut h) = (lo, hi);
        for _ in 0..ulps {
            l = dn(l);
            h = up(h);
        }
        Interval { lo: l, hi: h }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:e}, {:e}]", self.lo, self.hi)
    }
}

impl Add for Interval {
    type Output = Interval;
    fn add(self, o: Interval) -> Interval {
        Interval { lo: dn(self.lo + o.lo), hi: up(self.hi + o.hi) }
    }
}

impl Sub for Interval {
    type Output = Interval;
    fn sub(self, o: Interval) -> Interval {
        Interval { lo: dn(self.lo - o.hi), hi: up(self.hi - o.lo) }
    }
}

impl Neg for Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval { lo: -self.hi, hi: -self.lo }
    }
}

impl Mul for Interval {
    type Output = Interval;
    fn mul(self, o: Interval) -> Interval {
        if self.lo >= 0.0 && o.lo >= 0.0 {
            return Interval { lo: dn(self.lo * o.lo).max(0.0), hi: up(self.hi * o.hi) };
        }
        let p = [self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi];
        let lo = p.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = p.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Interval { lo: dn(lo), hi: up(hi) }
    }
}

impl Div for Interval {
    type Output = Interval;
    fn div(self, o: Interval) -> Interval {
        if o.lo <= 0.0 && o.hi >= 0.0 {
            return Interval::entire();
        }
        let p = [self.lo / o.lo, self.lo / o.hi, self.hi / o.lo, self.hi / o.hi];
        let lo = p.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = p.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Interval { lo: dn(lo), hi: up(hi) }
    }
}

impl Scalar for Interval {
    fn from_i64(v: i64) -> Self {
        let x = v as f64;
        if x.abs() <= 9_007_199_254_740_992.0 {
            Interval::point(x)
        } else {
            Interval::widen(x, x, 1)
        }
    }

    fn from_rational(r: &BigRational) -> Self {
        let x = r.to_f64().unwrap_or(f64::NAN);
        if r.is_integer() && x.abs() <= 9_007_199_254_740_992.0 {
            Interval::point(x)
        } else {
            Interval::widen(x, x, 2)
        }
    }

    fn sqrt2() -> Self {
        let s = std::f64::consts::SQRT_2;
        Interval { lo: dn(s), hi: up(s) }
    }

    fn sqrt(&self) -> Result<Self, ScalarError> {
        if self.hi < 0.0 {
            return Err(ScalarError::NegativeSqrt);
        }
        let lo = if self.lo <= 0.0 { 0.0 } else { dn(self.lo.sqrt()).max(0.0) };
        Ok(Interval { lo, hi: up(self.hi.sqrt()) })
    }

    fn to_f64(&self) -> f64 {
        self.mid()
    }

    fn lo(&self) -> f64 {
        self.lo
    }

    fn hi(&self) -> f64 {
        self.hi
    }

    fn compare(&self, o: &Self) -> Option<Ordering> {
        if self.hi < o.lo {
            Some(Ordering::Less)
        } else if self.lo > o.hi {
            Some(Ordering::Greater)
        } else if self.lo == self.hi && o.lo == o.hi && self.lo == o.lo {
            Some(Ordering::Equal)
        } else {
            None
        }
    }
}

impl Real for Interval {
    fn from_f64(x: f64) -> Self {
        Interval::point(x)
    }

    fn powf(self, e: Interval) -> Interval {
        if self.lo <= 0.0 {
            return Interval { lo: 0.0, hi: f64::INFINITY };
        }
        // exp(e ln x) is bilinear in (e, ln x), so the extremes sit at corners.
        let c = [
            self.lo.powf(e.lo),
            self.lo.powf(e.hi),
            self.hi.powf(e.lo),
            self.hi.powf(e.hi),
        ];
        let lo = c.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = c.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let mut r = Interval::widen(lo, hi, 2);
        r.lo = r.lo.max(0.0);
        r
    }

    fn ln(self) -> Interval {
        Interval::widen(self.lo.ln(), self.hi.ln(), 2)
    }

    fn exp(self) -> Interval {
        let mut r = Interval::widen(self.lo.exp(), self.hi.exp(), 2);
        r.lo = r.lo.max(0.0);
        r
    }

    fn pm(err: f64) -> Interval {
        let e = up(err.abs());
        Interval { lo: -e, hi: e }
    }

    fn mag(self) -> f64 {
        self.lo.abs().max(self.hi.abs())
    }
}
