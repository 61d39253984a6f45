use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Var {
    X,
    Y,
}

/// Bivariate polynomial over `Q`, stored as a map `(i, j) -> coefficient of x^i y^j`.
///
/// Zero coefficients are never stored, so the zero polynomial has no terms and
/// structural equality is polynomial equality. Iteration order is lexicographic
/// in `(i, j)`.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), BigRational>,
}

impl BiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn x() -> Self {
        Self::monomial(BigRational::one(), 1, 0)
    }

    pub fn y() -> Self {
        Self::monomial(BigRational::one(), 0, 1)
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(BigRational::from_integer(c.into()))
    }

    /// `c · x^i · y^j`.
    pub fn monomial(c: BigRational, i: u32, j: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((i, j), c);
        }
        BiPoly { terms }
    }

    /// Builds a polynomial from `(i, j, coefficient)` triples, summing repeated exponents.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (u32, u32, BigRational)>,
    {
        let mut p = BiPoly::zero();
        for (i, j, c) in terms {
            p.add_term(i, j, c);
        }
        p
    }

    /// Integer-coefficient convenience constructor.
    pub fn from_int_terms(terms: &[(u32, u32, i64)]) -> Self {
        Self::from_terms(
            terms
                .iter()
                .map(|&(i, j, c)| (i, j, BigRational::from_integer(c.into()))),
        )
    }

    pub fn add_term(&mut self, i: u32, j: u32, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let key = (i, j);
        let sum = match self.terms.remove(&key) {
            Some(old) => old + c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(key, sum);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical (lexicographic `(i, j)`) order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, &BigRational)> + '_ {
        self.terms.iter().map(|(&(i, j), c)| (i, j, c))
    }

    pub fn support(&self) -> Vec<(u32, u32)> {
        self.terms.keys().copied().collect()
    }

    pub fn coeff(&self, i: u32, j: u32) -> BigRational {
        self.terms
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn constant_term(&self) -> BigRational {
        self.coeff(0, 0)
    }

    /// Degree in `y`; `None` for the zero polynomial.
    pub fn deg_y(&self) -> Option<u32> {
        self.terms.keys().map(|&(_, j)| j).max()
    }

    pub fn deg_x(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, _)| i).max()
    }

    /// Largest `a` with `x^a` dividing the polynomial; `None` for zero.
    pub fn x_order(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, _)| i).min()
    }

    /// `ord_y p(0, y)`, i.e. the intersection multiplicity `(x, p)_0`.
    /// `None` when `p(0, y)` vanishes identically.
    pub fn y_order_at_x0(&self) -> Option<u32> {
        self.terms
            .keys()
            .filter(|&&(i, _)| i == 0)
            .map(|&(_, j)| j)
            .min()
    }

    /// Divides by `x^a`. Terms of lower x-degree must not exist.
    pub fn div_x_pow(&self, a: u32) -> BiPoly {
        BiPoly {
            terms: self
                .terms
                .iter()
                .map(|(&(i, j), c)| {
                    debug_assert!(i >= a);
                    ((i - a, j), c.clone())
                })
                .collect(),
        }
    }

    /// Splits off the largest power of `x`: returns `(a, p / x^a)`.
    pub fn split_x_content(&self) -> (u32, BiPoly) {
        match self.x_order() {
            Some(a) if a > 0 => (a, self.div_x_pow(a)),
            _ => (0, self.clone()),
        }
    }

    pub fn mul_monomial(&self, i: u32, j: u32) -> BiPoly {
        BiPoly {
            terms: self
                .terms
                .iter()
                .map(|(&(a, b), c)| ((a + i, b + j), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> BiPoly {
        if c.is_zero() {
            return BiPoly::zero();
        }
        BiPoly {
            terms: self.terms.iter().map(|(&k, v)| (k, v * c)).collect(),
        }
    }

    /// Coefficient of `y^j` as a polynomial in `x` alone.
    pub fn y_coeff(&self, j: u32) -> BiPoly {
        BiPoly {
            terms: self
                .terms
                .iter()
                .filter(|(&(_, b), _)| b == j)
                .map(|(&(a, _), c)| ((a, 0), c.clone()))
                .collect(),
        }
    }

    /// True when the leading coefficient in `y` is the constant `1`.
    pub fn is_monic_in_y(&self) -> bool {
        match self.deg_y() {
            None => false,
            Some(d) => {
                let lead = self.y_coeff(d);
                lead == BiPoly::one()
            }
        }
    }

    /// `p(0, y)` has the form `y^d` times a nonzero constant, where `d = deg_y p`.
    /// For monic `p` with `p(0, 0) = 0` this is the Weierstrass condition.
    pub fn is_weierstrass_like(&self) -> bool {
        match (self.deg_y(), self.y_order_at_x0()) {
            (Some(d), Some(o)) => d == o,
            _ => false,
        }
    }

    pub fn pow(&self, e: i64) -> Result<BiPoly> {
        if e < 0 {
            return Err(Error::NegativeExponent(e));
        }
        Ok(self.pow_u(e as u32))
    }

    pub fn pow_u(&self, mut e: u32) -> BiPoly {
        let mut base = self.clone();
        let mut acc = BiPoly::one();
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

    pub fn derivative(&self, var: Var) -> BiPoly {
        let mut out = BiPoly::zero();
        for (&(i, j), c) in &self.terms {
            match var {
                Var::X if i > 0 => out.add_term(i - 1, j, c * BigRational::from_integer(i.into())),
                Var::Y if j > 0 => out.add_term(i, j - 1, c * BigRational::from_integer(j.into())),
                _ => {}
            }
        }
        out
    }

    pub fn eval(&self, x: &BigRational, y: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for (&(i, j), c) in &self.terms {
            acc +=
                c * num_traits::pow(x.clone(), i as usize) * num_traits::pow(y.clone(), j as usize);
        }
        acc
    }

    /// Largest absolute value among the coefficients, as `f64`.
    pub fn max_abs_coeff(&self) -> f64 {
        self.terms
            .values()
            .map(|c| c.abs().to_f64().unwrap_or(f64::INFINITY))
            .fold(0.0, f64::max)
    }

    /// Multiplies by the lcm of the coefficient denominators and returns the
    /// integer coefficients, keyed like the rational ones.
    pub fn to_integer_terms(&self) -> BTreeMap<(u32, u32), BigInt> {
        let mut den = BigInt::one();
        for c in self.terms.values() {
            den = den.lcm(c.denom());
        }
        self.terms
            .iter()
            .map(|(&k, c)| (k, c.numer() * (&den / c.denom())))
            .collect()
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiPoly({self})")
    }
}

/// Prints in the grammar accepted by [`crate::parse_poly`], terms in canonical order.
impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(i, j), c) in &self.terms {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || (i == 0 && j == 0) {
                factors.push(abs.to_string());
            }
            match i {
                0 => {}
                1 => factors.push("x".into()),
                _ => factors.push(format!("x^{i}")),
            }
            match j {
                0 => {}
                1 => factors.push("y".into()),
                _ => factors.push(format!("y^{j}")),
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(i, j, c.clone());
        }
        out
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(i, j, -c.clone());
        }
        out
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        for (&(i1, j1), c1) in &self.terms {
            for (&(i2, j2), c2) in &rhs.terms {
                out.add_term(i1 + i2, j1 + j2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly {
            terms: self.terms.iter().map(|(&k, c)| (k, -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for BiPoly {
            type Output = BiPoly;
            fn $m(self, rhs: BiPoly) -> BiPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&BiPoly> for BiPoly {
            type Output = BiPoly;
            fn $m(self, rhs: &BiPoly) -> BiPoly {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn cusp() -> BiPoly {
        BiPoly::from_int_terms(&[(0, 2, 1), (3, 0, -1)])
    }

    #[test]
    fn squaring_the_cusp() {
        let f = cusp();
        let expected = BiPoly::from_int_terms(&[(0, 4, 1), (3, 2, -2), (6, 0, 1)]);
        assert_eq!(&f * &f, expected);
        assert_eq!(&f + &BiPoly::zero(), f);
    }

    #[test]
    fn example_two_expansion() {
        let f = cusp().pow(2).unwrap() - BiPoly::from_int_terms(&[(5, 1, 1)]);
        let expected = BiPoly::from_int_terms(&[(0, 4, 1), (3, 2, -2), (5, 1, -1), (6, 0, 1)]);
        assert_eq!(f, expected);
        // spot check by evaluation at rational points
        for (a, b) in [(q(1, 2), q(-3, 7)), (q(5, 3), q(2, 1)), (q(-1, 4), q(9, 5))] {
            let direct = {
                let c = &b * &b - &a * &a * &a;
                &c * &c - num_traits::pow(a.clone(), 5) * &b
            };
            assert_eq!(f.eval(&a, &b), direct);
        }
    }

    #[test]
    fn negative_power_is_rejected() {
        assert_eq!(cusp().pow(-1), Err(Error::NegativeExponent(-1)));
        assert_eq!(cusp().pow(0).unwrap(), BiPoly::one());
    }

    #[test]
    fn partial_derivatives() {
        let f = cusp();
        assert_eq!(f.derivative(Var::Y), BiPoly::from_int_terms(&[(0, 1, 2)]));
        assert_eq!(f.derivative(Var::X), BiPoly::from_int_terms(&[(2, 0, -3)]));

        // ∂/∂x ((y²−x³)²−x⁵y) = −6x²(y²−x³) − 5x⁴y
        let g = f.pow_u(2) - BiPoly::from_int_terms(&[(5, 1, 1)]);
        let expected =
            &BiPoly::from_int_terms(&[(2, 0, -6)]) * &f - BiPoly::from_int_terms(&[(4, 1, 5)]);
        assert_eq!(g.derivative(Var::X), expected);

        // central finite difference on the polynomial is exact up to the cubic error term;
        // compare against a symmetric difference quotient with tiny h
        let h = q(1, 1_000_000);
        let (a, b) = (q(2, 3), q(-1, 5));
        let fd = (g.eval(&(&a + &h), &b) - g.eval(&(&a - &h), &b)) / (q(2, 1) * &h);
        let exact = g.derivative(Var::X).eval(&a, &b);
        let diff = (fd - exact).abs();
        assert!(diff < q(1, 1_000_000));
    }

    #[test]
    fn display_is_canonical() {
        let f = cusp().pow_u(2) - BiPoly::from_int_terms(&[(5, 1, 1)]);
        assert_eq!(f.to_string(), "y^4 - 2*x^3*y^2 - x^5*y + x^6");
        assert_eq!(BiPoly::zero().to_string(), "0");
        let g = BiPoly::from_terms([(0, 0, q(-3, 4)), (1, 1, q(1, 1))]);
        assert_eq!(g.to_string(), "-3/4 + x*y");
    }

    #[test]
    fn degree_accessors() {
        let f = BiPoly::from_int_terms(&[(4, 2, 10), (7, 0, 3)]);
        assert_eq!(f.deg_y(), Some(2));
        assert_eq!(f.x_order(), Some(4));
        assert_eq!(f.y_order_at_x0(), None);
        let (a, rest) = f.split_x_content();
        assert_eq!(a, 4);
        assert_eq!(rest.y_order_at_x0(), Some(2));
        assert!(BiPoly::zero().deg_y().is_none());
    }
}
