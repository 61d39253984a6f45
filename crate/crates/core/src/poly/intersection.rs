use std::fmt;
use std::ops::Add;

use num_rational::BigRational;
use num_traits::Zero;
use serde::{Serialize, Serializer};

use super::resultant::resultant_x_order;
use super::{BiPoly, Var};
use crate::error::{Error, Result};

/// A local intersection multiplicity: a nonnegative integer, or infinite when
/// the curves share a component through the origin.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Multiplicity {
    Finite(u64),
    Infinite,
}

impl Multiplicity {
    pub fn finite(self) -> Option<u64> {
        match self {
            Multiplicity::Finite(v) => Some(v),
            Multiplicity::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        self == Multiplicity::Infinite
    }

    fn scaled(self, a: u64) -> Multiplicity {
        match (a, self) {
            (0, _) => Multiplicity::Finite(0),
            (_, Multiplicity::Finite(v)) => Multiplicity::Finite(a * v),
            (_, Multiplicity::Infinite) => Multiplicity::Infinite,
        }
    }
}

impl Add for Multiplicity {
    type Output = Multiplicity;
    fn add(self, rhs: Multiplicity) -> Multiplicity {
        match (self, rhs) {
            (Multiplicity::Finite(a), Multiplicity::Finite(b)) => Multiplicity::Finite(a + b),
            _ => Multiplicity::Infinite,
        }
    }
}

impl fmt::Display for Multiplicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Multiplicity::Finite(v) => write!(f, "{v}"),
            Multiplicity::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for Multiplicity {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Multiplicity::Finite(v) => s.serialize_u64(*v),
            Multiplicity::Infinite => s.serialize_str("inf"),
        }
    }
}

/// `(x, p)_0 = ord_y p(0, y)`.
fn meets_y_axis(p: &BiPoly) -> Multiplicity {
    match p.y_order_at_x0() {
        Some(o) => Multiplicity::Finite(o as u64),
        None => Multiplicity::Infinite,
    }
}

/// Local intersection multiplicity `(f, h)_0` at the origin.
///
/// Writes `f = x^a f'`, `h = x^b h'` with `f'`, `h'` coprime to `x` and returns
/// `a·(x, h')_0 + b·(x, f')_0 + (f', h')_0`. The last term is `ord_x Res_y(f', h')`
/// when one of `f'`, `h'` has all of its roots over `x = 0` at the origin
/// (`p(0, y) = c·y^deg_y p`, e.g. a Weierstrass polynomial or the `y`-derivative
/// of one). Otherwise the resultant would also count intersections elsewhere on
/// the line `x = 0`, and the purely local [`fulton_intersection`] is used.
pub fn intersection_multiplicity(f: &BiPoly, h: &BiPoly) -> Result<Multiplicity> {
    if f.is_zero() || h.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let (a, fr) = f.split_x_content();
    let (b, hr) = h.split_x_content();
    if a > 0 && b > 0 {
        return Ok(Multiplicity::Infinite);
    }
    let mut total = meets_y_axis(&hr).scaled(a as u64) + meets_y_axis(&fr).scaled(b as u64);
    if total.is_infinite() {
        return Ok(total);
    }
    if !fr.constant_term().is_zero() || !hr.constant_term().is_zero() {
        return Ok(total);
    }
    let local = if fr.is_weierstrass_like() || hr.is_weierstrass_like() {
        match resultant_x_order(&fr, &hr)? {
            Some(o) => Multiplicity::Finite(o),
            None => Multiplicity::Infinite,
        }
    } else {
        fulton_intersection(&fr, &hr)
    };
    total = total + local;
    Ok(total)
}

/// Milnor number `μ(f) = (∂f/∂x, ∂f/∂y)_0`.
///
/// Zero when the origin is not a singular point of `f`. A non-isolated
/// singularity (infinite intersection) is reported as an error.
pub fn milnor_number(f: &BiPoly) -> Result<u64> {
    let fx = f.derivative(Var::X);
    let fy = f.derivative(Var::Y);
    if !fx.constant_term().is_zero() || !fy.constant_term().is_zero() {
        return Ok(0);
    }
    if fx.is_zero() || fy.is_zero() {
        return Err(Error::NonIsolated);
    }
    intersection_multiplicity(&fx, &fy)?
        .finite()
        .ok_or(Error::NonIsolated)
}

/// `p(x, 0)` as dense coefficients in `x`.
fn restrict_to_x_axis(p: &BiPoly) -> Vec<BigRational> {
    let terms: Vec<(u32, BigRational)> = p
        .terms()
        .filter(|&(_, j, _)| j == 0)
        .map(|(i, _, c)| (i, c.clone()))
        .collect();
    let len = terms
        .iter()
        .map(|&(i, _)| i as usize + 1)
        .max()
        .unwrap_or(0);
    let mut out = vec![BigRational::zero(); len];
    for (i, c) in terms {
        out[i as usize] = c;
    }
    out
}

/// Local intersection multiplicity at the origin by Fulton's algorithm.
///
/// Purely local and independent of resultants: it repeatedly lowers the
/// `x`-degree of `G(x, 0)` by subtracting multiples of `F`, and splits off
/// factors of `y` via `(y, G)_0 = ord_x G(x, 0)`.
pub fn fulton_intersection(f: &BiPoly, g: &BiPoly) -> Multiplicity {
    let mut stack = vec![(f.clone(), g.clone())];
    let mut total = 0u64;
    while let Some((mut p, mut q)) = stack.pop() {
        loop {
            if p.is_zero() || q.is_zero() {
                return Multiplicity::Infinite;
            }
            if !p.constant_term().is_zero() || !q.constant_term().is_zero() {
                break;
            }
            let mut p0 = restrict_to_x_axis(&p);
            let mut q0 = restrict_to_x_axis(&q);
            let q_on_axis = q0.is_empty() && !p0.is_empty();
            if q_on_axis || (!q0.is_empty() && p0.len() > q0.len()) {
                std::mem::swap(&mut p, &mut q);
                std::mem::swap(&mut p0, &mut q0);
            }
            if p0.is_empty() {
                // p = y · rest; (p, q) = (y, q) + (rest, q)
                if q0.is_empty() {
                    return Multiplicity::Infinite;
                }
                let ord = q0.iter().position(|c| !c.is_zero()).unwrap() as u64;
                total += ord;
                let rest = BiPoly::from_terms(p.terms().map(|(i, j, c)| (i, j - 1, c.clone())));
                p = rest;
                continue;
            }
            // deg p(x,0) <= deg q(x,0): cancel the top coefficient of q(x,0)
            let r = p0.len() - 1;
            let s = q0.len() - 1;
            let lp = p0[r].clone();
            let lq = q0[s].clone();
            q = &q.scale(&lp) - &p.mul_monomial((s - r) as u32, 0).scale(&lq);
        }
    }
    Multiplicity::Finite(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::jacobian_det;

    fn p(t: &[(u32, u32, i64)]) -> BiPoly {
        BiPoly::from_int_terms(t)
    }

    fn example_two() -> BiPoly {
        p(&[(0, 4, 1), (3, 2, -2), (5, 1, -1), (6, 0, 1)])
    }

    #[test]
    fn basic_values() {
        use Multiplicity::*;
        assert_eq!(
            intersection_multiplicity(&BiPoly::x(), &BiPoly::y()).unwrap(),
            Finite(1)
        );
        assert_eq!(
            intersection_multiplicity(&example_two(), &BiPoly::y()).unwrap(),
            Finite(6)
        );
        let f = example_two();
        assert_eq!(intersection_multiplicity(&f, &f).unwrap(), Infinite);
        assert_eq!(
            intersection_multiplicity(&f, &BiPoly::zero()),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn milnor_numbers() {
        assert_eq!(milnor_number(&p(&[(0, 2, 1), (3, 0, -1)])).unwrap(), 2);
        assert_eq!(milnor_number(&BiPoly::y()).unwrap(), 0);
        assert_eq!(milnor_number(&example_two()).unwrap(), 16);
        assert_eq!(milnor_number(&p(&[(0, 2, 1)])), Err(Error::NonIsolated));
    }

    #[test]
    fn fulton_matches_resultant_route() {
        let f = example_two();
        let cusp = p(&[(0, 2, 1), (3, 0, -1)]);
        assert_eq!(fulton_intersection(&f, &cusp), Multiplicity::Finite(13));
        assert_eq!(
            fulton_intersection(&f, &BiPoly::y()),
            Multiplicity::Finite(6)
        );
        let fx = f.derivative(Var::X);
        let fy = f.derivative(Var::Y);
        assert_eq!(fulton_intersection(&fx, &fy), Multiplicity::Finite(16));
    }

    #[test]
    fn non_local_roots_are_excluded() {
        // (y-1)(y - x^2) and (y+1)(y + x^3) meet at the origin once, plus at points
        // away from it that a bare resultant would count.
        let a = &p(&[(0, 1, 1), (0, 0, -1)]) * &p(&[(0, 1, 1), (2, 0, -1)]);
        let b = &p(&[(0, 1, 1), (0, 0, 1)]) * &p(&[(0, 1, 1), (3, 0, 1)]);
        assert_eq!(
            intersection_multiplicity(&a, &b).unwrap(),
            Multiplicity::Finite(2)
        );
    }

    #[test]
    fn teissier_identity_example_two() {
        let f = example_two();
        let root = p(&[(0, 2, 1), (3, 0, -1)]);
        let jac = jacobian_det(&root, &f);
        let lhs = intersection_multiplicity(&root, &jac).unwrap();
        let rhs = milnor_number(&root).unwrap()
            + intersection_multiplicity(&root, &f)
                .unwrap()
                .finite()
                .unwrap()
            - 1;
        assert_eq!(lhs, Multiplicity::Finite(14));
        assert_eq!(rhs, 14);
        // 4·(x, y²−x³)₀... the x⁴ factor against y²−x³ plus the cofactor term
        let cof = p(&[(0, 2, 10), (3, 0, 3)]);
        assert_eq!(
            4 * 2
                + intersection_multiplicity(&root, &cof)
                    .unwrap()
                    .finite()
                    .unwrap(),
            14
        );
    }
}
