use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

use num_complex::Complex64;

use super::real::Real;

/// Complex number over a [`Real`] scalar.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cx<R> {
    pub re: R,
    pub im: R,
}

impl<R: Real> Cx<R> {
    pub fn new(re: R, im: R) -> Self {
        Cx { re, im }
    }

    pub fn zero() -> Self {
        Cx::new(R::zero(), R::zero())
    }

    pub fn one() -> Self {
        Cx::new(R::one(), R::zero())
    }

    pub fn real(re: R) -> Self {
        Cx::new(re, R::zero())
    }

    pub fn from_c64(z: Complex64) -> Self {
        Cx::new(R::from_f64(z.re), R::from_f64(z.im))
    }

    pub fn to_c64(self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    pub fn is_zero(self) -> bool {
        self.re == R::zero() && self.im == R::zero()
    }

    pub fn norm_sqr(self) -> R {
        self.re * self.re + self.im * self.im
    }

    /// Modulus, rounded to `f64`; used only for magnitude comparisons.
    pub fn abs(self) -> f64 {
        self.to_c64().norm()
    }

    pub fn scale(self, r: R) -> Self {
        Cx::new(self.re * r, self.im * r)
    }

    pub fn powu(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Cx::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            e >>= 1;
            if e > 0 {
                base = base * base;
            }
        }
        acc
    }

    /// `k`-th of the `n`-th roots of `u`, ordered by argument, polished by
    /// Newton's method in the working precision.
    pub fn nth_root(u: Self, n: u64, k: u64) -> Self {
        let z = u.to_c64();
        let r = z.norm().powf(1.0 / n as f64);
        let theta = (z.arg() + 2.0 * std::f64::consts::PI * k as f64) / n as f64;
        let mut c = Cx::from_c64(Complex64::from_polar(r, theta));
        if n == 1 {
            return u;
        }
        let nn = R::from_f64(n as f64);
        for _ in 0..4 {
            let cn1 = c.powu(n - 1);
            let step = (cn1 * c - u) / cn1.scale(nn);
            c = c - step;
        }
        c
    }
}

impl<R: Real> Add for Cx<R> {
    type Output = Self;
    fn add(self, b: Self) -> Self {
        Cx::new(self.re + b.re, self.im + b.im)
    }
}

impl<R: Real> AddAssign for Cx<R> {
    fn add_assign(&mut self, b: Self) {
        *self = *self + b;
    }
}

impl<R: Real> Sub for Cx<R> {
    type Output = Self;
    fn sub(self, b: Self) -> Self {
        Cx::new(self.re - b.re, self.im - b.im)
    }
}

impl<R: Real> Neg for Cx<R> {
    type Output = Self;
    fn neg(self) -> Self {
        Cx::new(-self.re, -self.im)
    }
}

impl<R: Real> Mul for Cx<R> {
    type Output = Self;
    fn mul(self, b: Self) -> Self {
        Cx::new(
            self.re * b.re - self.im * b.im,
            self.re * b.im + self.im * b.re,
        )
    }
}

impl<R: Real> Div for Cx<R> {
    type Output = Self;
    fn div(self, b: Self) -> Self {
        let d = b.norm_sqr();
        Cx::new(
            (self.re * b.re + self.im * b.im) / d,
            (self.im * b.re - self.re * b.im) / d,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::super::real::DoubleDouble;
    use super::*;

    #[test]
    fn roots_of_unity_in_double_double() {
        let one = Cx::<DoubleDouble>::one();
        for k in 0..6 {
            let w = Cx::nth_root(one, 6, k);
            let err = (w.powu(6) - one).abs();
            assert!(err < 1e-30, "{err}");
        }
    }

    #[test]
    fn nth_root_of_negative() {
        let u = Cx::<f64>::real(-8.0);
        let c = Cx::nth_root(u, 3, 0);
        assert!((c.powu(3) - u).abs() < 1e-13);
    }
}
