use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

/// Dense univariate polynomial in `x` over `Z`; the coefficient domain of the
/// resultant computation. Trailing zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ZPoly {
    coeffs: Vec<BigInt>,
}

impl ZPoly {
    pub fn zero() -> Self {
        ZPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        ZPoly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        ZPoly::from_coeffs(vec![c])
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        ZPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Multiplicity of `x` as a factor; `None` for the zero polynomial.
    pub fn x_order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn pow(&self, mut e: u32) -> ZPoly {
        let mut base = self.clone();
        let mut acc = ZPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exact quotient `self / d`. Panics if `d` does not divide `self` in `Z[x]`;
    /// callers only divide where the subresultant theory guarantees exactness.
    pub fn div_exact(&self, d: &ZPoly) -> ZPoly {
        assert!(!d.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return ZPoly::zero();
        }
        let dd = d.coeffs.len() - 1;
        if self.coeffs.len() - 1 < dd {
            panic!("inexact polynomial division");
        }
        let lead = d.coeffs.last().unwrap();
        let mut rem = self.coeffs.clone();
        let qlen = rem.len() - dd;
        let mut quot = vec![BigInt::zero(); qlen];
        for k in (0..qlen).rev() {
            let top = &rem[k + dd];
            if top.is_zero() {
                continue;
            }
            let (qk, r) = top.div_rem(lead);
            assert!(r.is_zero(), "inexact polynomial division");
            for (i, dc) in d.coeffs.iter().enumerate() {
                rem[k + i] -= &qk * dc;
            }
            quot[k] = qk;
        }
        assert!(rem.iter().all(Zero::is_zero), "inexact polynomial division");
        ZPoly::from_coeffs(quot)
    }

    pub fn scale(&self, c: &BigInt) -> ZPoly {
        ZPoly::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }
}

impl Add for &ZPoly {
    type Output = ZPoly;
    fn add(self, rhs: &ZPoly) -> ZPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = BigInt::zero();
        ZPoly::from_coeffs(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&zero) + rhs.coeffs.get(i).unwrap_or(&zero))
                .collect(),
        )
    }
}

impl Sub for &ZPoly {
    type Output = ZPoly;
    fn sub(self, rhs: &ZPoly) -> ZPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = BigInt::zero();
        ZPoly::from_coeffs(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&zero) - rhs.coeffs.get(i).unwrap_or(&zero))
                .collect(),
        )
    }
}

impl Mul for &ZPoly {
    type Output = ZPoly;
    fn mul(self, rhs: &ZPoly) -> ZPoly {
        if self.is_zero() || rhs.is_zero() {
            return ZPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        ZPoly::from_coeffs(out)
    }
}

impl Neg for &ZPoly {
    type Output = ZPoly;
    fn neg(self) -> ZPoly {
        ZPoly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}
