//! Floating-point scalars used by the expansion: `f64` and a double-double type
//! with about 106 significant bits.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

/// Working precision of an expansion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Precision {
    Double,
    DoubleDouble,
}

pub trait Real:
    Copy
    + Debug
    + PartialOrd
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    const PRECISION: Precision;
    /// Relative tolerance below which a computed value counts as zero.
    const ZERO_TOL: f64;
    /// Unit roundoff.
    const EPS: f64;

    fn from_f64(v: f64) -> Self;
    fn from_rational(q: &BigRational) -> Self;
    fn to_f64(self) -> f64;
    fn sqrt(self) -> Self;

    fn zero() -> Self {
        Self::from_f64(0.0)
    }

    fn one() -> Self {
        Self::from_f64(1.0)
    }

    fn abs(self) -> Self {
        if self < Self::zero() {
            -self
        } else {
            self
        }
    }
}

impl Real for f64 {
    const PRECISION: Precision = Precision::Double;
    const ZERO_TOL: f64 = 1e-9;
    const EPS: f64 = f64::EPSILON;

    fn from_f64(v: f64) -> Self {
        v
    }

    fn from_rational(q: &BigRational) -> Self {
        q.to_f64().unwrap_or(f64::NAN)
    }

    fn to_f64(self) -> f64 {
        self
    }

    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
}

/// Unevaluated sum `hi + lo` with `|lo| ≤ ulp(hi)/2`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default)]
pub struct DoubleDouble {
    hi: f64,
    lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl DoubleDouble {
    pub fn new(hi: f64, lo: f64) -> Self {
        let (hi, lo) = quick_two_sum(hi, lo);
        DoubleDouble { hi, lo }
    }

    fn from_bigint(n: &BigInt) -> Self {
        let hi = n.to_f64().unwrap_or(f64::NAN);
        if !hi.is_finite() {
            return DoubleDouble { hi, lo: 0.0 };
        }
        let rest = n - exact_bigint(hi);
        let lo = rest.to_f64().unwrap_or(0.0);
        DoubleDouble::new(hi, lo)
    }
}

/// The integer value of an integral `f64`.
fn exact_bigint(v: f64) -> BigInt {
    if v.abs() < 9.0e15 {
        return BigInt::from(v as i64);
    }
    let bits = v.to_bits();
    let exp = ((bits >> 52) & 0x7ff) as i64 - 1075;
    let mant = (bits & ((1u64 << 52) - 1)) | (1u64 << 52);
    let mag = BigInt::from(mant) << exp as usize;
    if v < 0.0 {
        -mag
    } else {
        mag
    }
}

impl Add for DoubleDouble {
    type Output = Self;
    fn add(self, b: Self) -> Self {
        let (s, e) = two_sum(self.hi, b.hi);
        let (t, f) = two_sum(self.lo, b.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        DoubleDouble { hi, lo }
    }
}

impl Neg for DoubleDouble {
    type Output = Self;
    fn neg(self) -> Self {
        DoubleDouble {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Sub for DoubleDouble {
    type Output = Self;
    fn sub(self, b: Self) -> Self {
        self + (-b)
    }
}

impl Mul for DoubleDouble {
    type Output = Self;
    fn mul(self, b: Self) -> Self {
        let (p, e) = two_prod(self.hi, b.hi);
        let e = e + (self.hi * b.lo + self.lo * b.hi);
        let (hi, lo) = quick_two_sum(p, e);
        DoubleDouble { hi, lo }
    }
}

impl Div for DoubleDouble {
    type Output = Self;
    fn div(self, b: Self) -> Self {
        let q1 = self.hi / b.hi;
        let r = self - b * DoubleDouble::from_f64(q1);
        let q2 = r.hi / b.hi;
        let r = r - b * DoubleDouble::from_f64(q2);
        let q3 = r.hi / b.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        DoubleDouble { hi, lo } + DoubleDouble::from_f64(q3)
    }
}

impl Real for DoubleDouble {
    const PRECISION: Precision = Precision::DoubleDouble;
    const ZERO_TOL: f64 = 1e-28;
    const EPS: f64 = 4.93e-32;

    fn from_f64(v: f64) -> Self {
        DoubleDouble { hi: v, lo: 0.0 }
    }

    fn from_rational(q: &BigRational) -> Self {
        let n = DoubleDouble::from_bigint(q.numer());
        if q.is_integer() {
            return n;
        }
        n / DoubleDouble::from_bigint(q.denom())
    }

    fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    fn sqrt(self) -> Self {
        if self.hi <= 0.0 {
            return DoubleDouble::zero();
        }
        let x = DoubleDouble::from_f64(self.hi.sqrt());
        x + (self - x * x) / (x * DoubleDouble::from_f64(2.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    #[test]
    fn double_double_is_more_precise() {
        let three = DoubleDouble::from_f64(3.0);
        let third = DoubleDouble::one() / three;
        let err = (third * three - DoubleDouble::one()).abs().to_f64();
        assert!(err < 1e-30, "{err}");
        let two = DoubleDouble::from_f64(2.0);
        let r = two.sqrt();
        assert!((r * r - two).abs().to_f64() < 1e-30);
        let q = BigRational::new(1.into(), 10.into());
        let tenth = DoubleDouble::from_rational(&q);
        assert!(
            (tenth * DoubleDouble::from_f64(10.0) - DoubleDouble::one())
                .abs()
                .to_f64()
                < 1e-31
        );
    }

    #[test]
    fn big_integers_convert_exactly_enough() {
        let n: BigInt = "123456789012345678901234567".parse().unwrap();
        let v = DoubleDouble::from_bigint(&n);
        let back = exact_bigint(v.hi) + exact_bigint(v.lo.round());
        let diff = (&n - back).abs();
        assert!(diff < BigInt::from(1_000_000i64), "{diff}");
    }
}
