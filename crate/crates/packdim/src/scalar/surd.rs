//! Exact arithmetic in Q(√2).

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::Scalar;
use crate::error::ScalarError;

/// `p + q√2` with rational `p`, `q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadSurd {
    pub p: BigRational,
    pub q: BigRational,
}

fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Square root of a rational if it is a perfect square.
fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let (n, d) = (r.numer(), r.denom());
    let (sn, sd) = (n.sqrt(), d.sqrt());
    (&sn * &sn == *n && &sd * &sd == *d).then(|| BigRational::new(sn, sd))
}

impl QuadSurd {
    pub fn new(p: BigRational, q: BigRational) -> Self {
        QuadSurd { p, q }
    }

    pub fn from_ints(p: i64, q: i64) -> Self {
        QuadSurd { p: rat(p), q: rat(q) }
    }

    pub fn rational(p: BigRational) -> Self {
        QuadSurd { p, q: BigRational::zero() }
    }

    /// Field norm `p² − 2q²`.
    pub fn norm(&self) -> BigRational {
        &self.p * &self.p - rat(2) * &self.q * &self.q
    }

    pub fn conj(&self) -> Self {
        QuadSurd { p: self.p.clone(), q: -self.q.clone() }
    }

    pub fn signum(&self) -> Ordering {
        let (sp, sq) = (self.p.cmp(&BigRational::zero()), self.q.cmp(&BigRational::zero()));
        use Ordering::*;
        match (sp, sq) {
            (Equal, s) | (s, Equal) => s,
            (Greater, Greater) => Greater,
            (Less, Less) => Less,
            // Opposite signs: the larger of p² and 2q² wins.
            (sp, _) => {
                let a = &self.p * &self.p;
                let b = rat(2) * &self.q * &self.q;
                if a > b {
                    sp
                } else {
                    sp.reverse()
                }
            }
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = QuadSurd::from_ints(1, 0);
        for _ in 0..k {
            acc = acc * self.clone();
        }
        acc
    }

    pub fn is_integral(&self) -> bool {
        self.p.is_integer() && self.q.is_integer()
    }

    /// Integer parts `(p, q)` when both fit in `i64`.
    pub fn to_z2(&self) -> Option<(i64, i64)> {
        if !self.is_integral() {
            return None;
        }
        Some((self.p.to_integer().to_i64()?, self.q.to_integer().to_i64()?))
    }
}

impl fmt::Display for QuadSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.q.is_zero() {
            write!(f, "{}", self.p)
        } else if self.p.is_zero() {
            write!(f, "{}*sqrt2", self.q)
        } else if self.q.is_negative() {
            write!(f, "{} - {}*sqrt2", self.p, -self.q.clone())
        } else {
            write!(f, "{} + {}*sqrt2", self.p, self.q)
        }
    }
}

impl Add for QuadSurd {
    type Output = QuadSurd;
    fn add(self, o: QuadSurd) -> QuadSurd {
        QuadSurd { p: self.p + o.p, q: self.q + o.q }
    }
}

impl Sub for QuadSurd {
    type Output = QuadSurd;
    fn sub(self, o: QuadSurd) -> QuadSurd {
        QuadSurd { p: self.p - o.p, q: self.q - o.q }
    }
}

impl Neg for QuadSurd {
    type Output = QuadSurd;
    fn neg(self) -> QuadSurd {
        QuadSurd { p: -self.p, q: -self.q }
    }
}

impl Mul for QuadSurd {
    type Output = QuadSurd;
    fn mul(self, o: QuadSurd) -> QuadSurd {
        let p = &self.p * &o.p + rat(2) * &self.q * &o.q;
        let q = &self.p * &o.q + &self.q * &o.p;
        QuadSurd { p, q }
    }
}

impl Div for QuadSurd {
    type Output = QuadSurd;
    fn div(self, o: QuadSurd) -> QuadSurd {
        let n = o.norm();
        assert!(!n.is_zero(), "division by zero in Q(sqrt 2)");
        let num = self * o.conj();
        QuadSurd { p: num.p / &n, q: num.q / n }
    }
}

impl PartialOrd for QuadSurd {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some((self.clone() - other.clone()).signum())
    }
}

impl Scalar for QuadSurd {
    fn from_i64(v: i64) -> Self {
        QuadSurd::from_ints(v, 0)
    }

    fn from_rational(r: &BigRational) -> Self {
        QuadSurd::rational(r.clone())
    }

    fn from_surd(p: &BigRational, q: &BigRational) -> Self {
        QuadSurd::new(p.clone(), q.clone())
    }

    fn sqrt2() -> Self {
        QuadSurd::from_ints(0, 1)
    }

    fn sqrt(&self) -> Result<Self, ScalarError> {
        match self.signum() {
            Ordering::Less => return Err(ScalarError::NegativeSqrt),
            Ordering::Equal => return Ok(QuadSurd::from_ints(0, 0)),
            Ordering::Greater => {}
        }
        if self.q.is_zero() {
            if let Some(r) = rational_sqrt(&self.p) {
                return Ok(QuadSurd::rational(r));
            }
            // p = 2r² gives √p = r√2.
            let half = &self.p / rat(2);
            return rational_sqrt(&half)
                .map(|r| QuadSurd::new(BigRational::zero(), r))
                .ok_or(ScalarError::NonRepresentable);
        }
        // (x + y√2)² = p + q√2  ⇔  x² + 2y² = p, 2xy = q.
        let s = rational_sqrt(&self.norm()).ok_or(ScalarError::NonRepresentable)?;
        let two = rat(2);
        for x2 in [(&self.p + &s) / &two, (&self.p - &s) / &two] {
            if x2.is_zero() {
                continue;
            }
            if let Some(x) = rational_sqrt(&x2) {
                let y = &self.q / (&two * &x);
                let mut r = QuadSurd::new(x, y);
                if r.signum() == Ordering::Less {
                    r = -r;
                }
                if r.clone() * r.clone() == *self {
                    return Ok(r);
                }
            }
        }
        Err(ScalarError::NonRepresentable)
    }

    fn to_f64(&self) -> f64 {
        let p = self.p.to_f64().unwrap_or(f64::NAN);
        let q = self.q.to_f64().unwrap_or(f64::NAN);
        p + q * std::f64::consts::SQRT_2
    }

    fn lo(&self) -> f64 {
        self.to_f64()
    }

    fn hi(&self) -> f64 {
        self.to_f64()
    }

    fn compare(&self, other: &Self) -> Option<Ordering> {
        self.partial_cmp(other)
    }

    fn zero() -> Self {
        QuadSurd::rational(BigRational::zero())
    }

    fn one() -> Self {
        QuadSurd::rational(BigRational::one())
    }
}
