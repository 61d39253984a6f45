use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{BiPoly, ZPoly};
use crate::error::{Error, Result};

/// Polynomial in `y` with coefficients in `Z[x]`; index = power of `y`.
type YPoly = Vec<ZPoly>;

fn trim(p: &mut YPoly) {
    while p.last().is_some_and(ZPoly::is_zero) {
        p.pop();
    }
}

fn deg(p: &YPoly) -> usize {
    p.len() - 1
}

fn lc(p: &YPoly) -> &ZPoly {
    p.last().expect("nonzero polynomial")
}

/// Pseudo-remainder: `lc(b)^(deg a − deg b + 1) · a mod b`.
fn prem(a: &YPoly, b: &YPoly) -> YPoly {
    let db = deg(b);
    let lb = lc(b).clone();
    let mut r = a.clone();
    let mut e = deg(a) + 1 - db;
    while !r.is_empty() && deg(&r) >= db {
        let lr = lc(&r).clone();
        let shift = deg(&r) - db;
        for (i, ri) in r.iter_mut().enumerate() {
            let mut v = &lb * ri;
            if i >= shift {
                v = &v - &(&lr * &b[i - shift]);
            }
            *ri = v;
        }
        trim(&mut r);
        e -= 1;
    }
    if e > 0 {
        let s = lb.pow(e as u32);
        for ri in r.iter_mut() {
            *ri = &*ri * &s;
        }
    }
    r
}

/// Resultant in `y` of two nonzero polynomials over `Z[x]`, by the
/// subresultant remainder sequence (Collins–Brown, in the formulation with
/// running `g`, `h` factors so that every division is exact in `Z[x]`).
fn subresultant(a: &YPoly, b: &YPoly) -> ZPoly {
    let (mut a, mut b, mut negate) = if deg(a) < deg(b) {
        (b.clone(), a.clone(), deg(a) % 2 == 1 && deg(b) % 2 == 1)
    } else {
        (a.clone(), b.clone(), false)
    };
    if deg(&b) == 0 {
        let r = b[0].pow(deg(&a) as u32);
        return if negate { -&r } else { r };
    }
    let mut g = ZPoly::one();
    let mut h = ZPoly::one();
    loop {
        let delta = deg(&a) - deg(&b);
        if deg(&a) % 2 == 1 && deg(&b) % 2 == 1 {
            negate = !negate;
        }
        let r = prem(&a, &b);
        let divisor = &g * &h.pow(delta as u32);
        a = b;
        b = r.iter().map(|c| c.div_exact(&divisor)).collect();
        g = lc(&a).clone();
        h = match delta {
            0 => h,
            1 => g.clone(),
            _ => g.pow(delta as u32).div_exact(&h.pow(delta as u32 - 1)),
        };
        if b.is_empty() {
            return ZPoly::zero();
        }
        if deg(&b) == 0 {
            break;
        }
    }
    let da = deg(&a) as u32;
    let last = b[0].pow(da).div_exact(&h.pow(da - 1));
    if negate {
        -&last
    } else {
        last
    }
}

/// Integer form of `p` as a `y`-polynomial over `Z[x]`, together with the
/// positive rational factor `c` such that `int_form = c · p`.
fn to_ypoly(p: &BiPoly) -> (YPoly, BigRational) {
    let ints = p.to_integer_terms();
    let factor = match p.terms().next() {
        Some((i, j, c)) => BigRational::from_integer(ints[&(i, j)].clone()) / c,
        None => BigRational::one(),
    };
    let dy = p.deg_y().unwrap_or(0) as usize;
    let dx = p.deg_x().unwrap_or(0) as usize;
    let mut rows = vec![vec![BigInt::zero(); dx + 1]; dy + 1];
    for ((i, j), c) in ints {
        rows[j as usize][i as usize] = c;
    }
    let mut out: YPoly = rows.into_iter().map(ZPoly::from_coeffs).collect();
    trim(&mut out);
    (out, factor.abs())
}

/// Resultant of `f` and `h` with respect to `y`, as a polynomial in `x` alone.
///
/// Coefficients are cleared to integers before running the subresultant
/// sequence and the scaling is undone afterwards, so the result is the exact
/// Sylvester resultant over `Q[x]`. Zero when `f` and `h` share a factor of
/// positive `y`-degree.
pub fn resultant_y(f: &BiPoly, h: &BiPoly) -> Result<BiPoly> {
    let df = f.deg_y().unwrap_or(0);
    let dh = h.deg_y().unwrap_or(0);
    if df == 0 && dh == 0 {
        return Err(Error::ConstantInY);
    }
    if f.is_zero() || h.is_zero() {
        return Ok(BiPoly::zero());
    }
    let (a, ca) = to_ypoly(f);
    let (b, cb) = to_ypoly(h);
    let r = subresultant(&a, &b);
    // Res(ca·f, cb·h) = ca^deg h · cb^deg f · Res(f, h)
    let unscale = num_traits::pow(ca, dh as usize) * num_traits::pow(cb, df as usize);
    Ok(BiPoly::from_terms(r.coeffs().iter().enumerate().map(
        |(i, c)| (i as u32, 0, BigRational::from_integer(c.clone()) / &unscale),
    )))
}

/// `ord_x Res_y(f, h)`, or `None` if the resultant vanishes.
pub(crate) fn resultant_x_order(f: &BiPoly, h: &BiPoly) -> Result<Option<u64>> {
    if f.deg_y().unwrap_or(0) == 0 && h.deg_y().unwrap_or(0) == 0 {
        return Err(Error::ConstantInY);
    }
    let (a, _) = to_ypoly(f);
    let (b, _) = to_ypoly(h);
    if a.is_empty() || b.is_empty() {
        return Ok(None);
    }
    Ok(subresultant(&a, &b).x_order().map(|o| o as u64))
}
