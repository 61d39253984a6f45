//! Newton–Puiseux expansion with floating-point coefficients and exact exponents.
//!
//! The working polynomial is a grid `H[j][e]` (coefficient of `t^e y^j`) where
//! `x = t^ram`. Each entry carries a magnitude bound (the sum of the absolute
//! values of the terms that produced it) and a first-order estimate of its
//! absolute error. Each compact edge of the Newton polygon of slope `p/q` gives
//! an edge polynomial `ψ(u)`, `u = y^q`; for every root `c` of `c^q = u` the
//! substitution `t = s^q`, `y = s^p (c + y₁)` produces the grid of the next
//! level. Only entries with `t`-order below `⌊m · D_t⌋ + 1` are kept, where `m`
//! is the number of roots being followed and `D_t` the remaining depth in `t`
//! units; this is enough to determine those roots up to the requested depth.

use std::cmp::Ordering;

use num_rational::Rational64;
use num_traits::{ToPrimitive, Zero};

use super::complex::Cx;
use super::real::Real;
use super::roots::edge_roots;
use crate::error::{Error, Result};
use crate::poly::BiPoly;

/// A truncated root `Σ c_e x^e`; every exponent below `truncation` is present.
#[derive(Debug, Clone)]
pub(crate) struct Series<R> {
    pub terms: Vec<(Rational64, Cx<R>)>,
    /// Estimated absolute error of each coefficient.
    pub errors: Vec<f64>,
    pub truncation: Rational64,
    pub ramification: i64,
}

impl<R: Real> Series<R> {
    pub fn leading(&self) -> Option<&(Rational64, Cx<R>)> {
        self.terms.first()
    }
}

#[derive(Debug, Clone)]
pub(crate) struct Expanded<R> {
    /// `N` in `h = x^N · h'`.
    pub x_power: u32,
    /// Roots of `h'` through the origin.
    pub series: Vec<Series<R>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Class {
    Zero,
    NonZero,
    Marginal,
}

/// Three-way zero test. The threshold is the larger of the relative
/// tolerance times the magnitude bound and ten times the error estimate;
/// values within a factor `1e3` above the threshold are undecidable.
pub(crate) fn classify<R: Real>(magnitude: f64, bound: f64, err: f64) -> Class {
    let thr = (R::ZERO_TOL * bound).max(10.0 * err);
    if magnitude <= thr {
        Class::Zero
    } else if magnitude >= 1e3 * thr {
        Class::NonZero
    } else {
        Class::Marginal
    }
}

#[derive(Debug, Clone)]
struct Grid<R> {
    val: Vec<Vec<Cx<R>>>,
    bound: Vec<Vec<f64>>,
    err: Vec<Vec<f64>>,
}

impl<R: Real> Grid<R> {
    fn new(columns: usize, len: usize) -> Self {
        Grid {
            val: vec![vec![Cx::zero(); len]; columns],
            bound: vec![vec![0.0; len]; columns],
            err: vec![vec![0.0; len]; columns],
        }
    }

    /// Zeroes every entry that is numerically zero; a value inside the
    /// uncertainty band makes the expansion undecidable at this precision.
    fn clean(&mut self) -> Result<()> {
        for (j, col) in self.val.iter_mut().enumerate() {
            for (e, v) in col.iter_mut().enumerate() {
                match classify::<R>(v.abs(), self.bound[j][e], self.err[j][e]) {
                    Class::Zero => *v = Cx::zero(),
                    Class::NonZero => {}
                    Class::Marginal => {
                        return Err(Error::Undecidable(format!(
                            "coefficient of t^{e} y^{j} is within the tolerance band"
                        )))
                    }
                }
            }
        }
        Ok(())
    }

    fn order(&self, j: usize) -> Option<usize> {
        self.val.get(j)?.iter().position(|v| !v.is_zero())
    }
}

fn binomials(n: usize) -> Vec<Vec<f64>> {
    let mut rows: Vec<Vec<f64>> = vec![vec![1.0]];
    for i in 1..=n {
        let prev = &rows[i - 1];
        let mut row = vec![1.0; i + 1];
        for k in 1..i {
            row[k] = prev[k - 1] + prev[k];
        }
        rows.push(row);
    }
    rows
}

fn floor_plus_one(q: Rational64) -> usize {
    (q.floor().to_integer().max(0) + 1) as usize
}

/// Expands the roots through the origin of `h` up to `x`-exponent `depth`.
pub(crate) fn expand<R: Real>(h: &BiPoly, depth: Rational64) -> Result<Expanded<R>> {
    if h.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let (x_power, rest) = h.split_x_content();
    let m = rest
        .y_order_at_x0()
        .expect("x-free part is nonzero at x = 0") as usize;
    let mut series = Vec::new();
    if m > 0 {
        let len = floor_plus_one(depth * Rational64::from_integer(m as i64));
        let columns = rest.deg_y().unwrap() as usize + 1;
        let mut grid = Grid::new(columns, len);
        for (i, j, c) in rest.terms() {
            if (i as usize) < len {
                let v = Cx::real(R::from_rational(c));
                let (j, i) = (j as usize, i as usize);
                grid.bound[j][i] = v.abs();
                grid.err[j][i] = v.abs() * R::EPS;
                grid.val[j][i] = v;
            }
        }
        let ctx = Context {
            depth,
            binom: binomials(columns),
        };
        ctx.node(&grid, m, 1, Rational64::zero(), &[], &mut series)?;
    }
    series.sort_by(compare_series);
    Ok(Expanded { x_power, series })
}

/// Sort key: leading exponent, then argument, then modulus of the leading
/// coefficient. The zero series comes last.
fn compare_series<R: Real>(a: &Series<R>, b: &Series<R>) -> Ordering {
    match (a.leading(), b.leading()) {
        (None, None) => Ordering::Equal,
        (None, Some(_)) => Ordering::Greater,
        (Some(_), None) => Ordering::Less,
        (Some((ea, ca)), Some((eb, cb))) => ea.cmp(eb).then_with(|| {
            let (za, zb) = (ca.to_c64(), cb.to_c64());
            za.arg()
                .total_cmp(&zb.arg())
                .then(za.norm().total_cmp(&zb.norm()))
        }),
    }
}

struct Context {
    depth: Rational64,
    binom: Vec<Vec<f64>>,
}

/// Term of a partial root: exponent, coefficient, error estimate.
type Term<R> = (Rational64, Cx<R>, f64);

impl Context {
    fn leaf<R: Real>(&self, prefix: &[Term<R>], ram: i64) -> Series<R> {
        Series {
            terms: prefix.iter().map(|t| (t.0, t.1)).collect(),
            errors: prefix.iter().map(|t| t.2).collect(),
            truncation: self.depth,
            ramification: ram,
        }
    }

    /// Follows the `m` roots of `g` with positive `t`-order.
    fn node<R: Real>(
        &self,
        g: &Grid<R>,
        m: usize,
        ram: i64,
        w: Rational64,
        prefix: &[Term<R>],
        out: &mut Vec<Series<R>>,
    ) -> Result<()> {
        let orders: Vec<Option<usize>> = (0..=m).map(|j| g.order(j)).collect();
        if orders[m] != Some(0) || orders[..m].contains(&Some(0)) {
            return Err(Error::Undecidable(format!(
                "expected exactly {m} roots through the origin"
            )));
        }
        let j_min = orders.iter().position(Option::is_some).unwrap();
        // y₁ ≡ 0 within the kept orders: these roots end here
        for _ in 0..j_min {
            out.push(self.leaf(prefix, ram));
        }
        let pts: Vec<(i64, i64)> = orders
            .iter()
            .enumerate()
            .filter_map(|(j, o)| o.map(|e| (j as i64, e as i64)))
            .collect();
        for edge in lower_hull(&pts).windows(2) {
            let ((ja, ea), (jb, eb)) = (edge[0], edge[1]);
            let slope = Rational64::new(ea - eb, jb - ja);
            let (p, q) = (*slope.numer(), *slope.denom());
            let next = w + slope / ram;
            if next >= self.depth {
                for _ in ja..jb {
                    out.push(self.leaf(prefix, ram));
                }
                continue;
            }
            let at: Vec<(usize, usize)> = (0..=(jb - ja) / q)
                .map(|k| ((ja + q * k) as usize, (ea - p * k) as usize))
                .collect();
            let psi: Vec<Cx<R>> = at.iter().map(|&(j, e)| g.val[j][e]).collect();
            let psi_err: Vec<f64> = at.iter().map(|&(j, e)| g.err[j][e]).collect();
            let shift = q * ea + p * ja;
            let remaining = (self.depth - next) * Rational64::from_integer(ram * q);
            for root in edge_roots(&psi, &psi_err)? {
                let len =
                    floor_plus_one(remaining * Rational64::from_integer(root.multiplicity as i64));
                // relative uncertainty of u, and of each q-th root c
                let rel = root.err / (root.value.abs() * q as f64);
                for r in 0..q {
                    let c = Cx::nth_root(root.value, q as u64, r as u64);
                    let mut child = self.substitute(g, p, q, shift, c, rel, len);
                    child.clean()?;
                    let mut pre = prefix.to_vec();
                    pre.push((next, c, rel * c.abs()));
                    self.node(&child, root.multiplicity, ram * q, next, &pre, out)?;
                }
            }
        }
        Ok(())
    }

    /// `t = s^q`, `y = s^p (c + y₁)`, divided by `s^shift`, keeping orders `< len`.
    /// `rel` is the relative uncertainty of `c`.
    ///
    /// All columns are kept: columns beyond the root count still reach low
    /// orders of later levels through the `s^{p j}` factor.
    #[allow(clippy::too_many_arguments)]
    fn substitute<R: Real>(
        &self,
        g: &Grid<R>,
        p: i64,
        q: i64,
        shift: i64,
        c: Cx<R>,
        rel: f64,
        len: usize,
    ) -> Grid<R> {
        let cols = g.val.len();
        let mut out = Grid::new(cols, len);
        let mut cpow = vec![Cx::<R>::one(); cols];
        let mut cabs = vec![1.0f64; cols];
        for k in 1..cols {
            cpow[k] = cpow[k - 1] * c;
            cabs[k] = cabs[k - 1] * c.abs();
        }
        for j in 0..cols {
            for (e, v) in g.val[j].iter().enumerate() {
                let (b, err) = (g.bound[j][e], g.err[j][e]);
                if b == 0.0 && err == 0.0 {
                    continue;
                }
                let n = q * e as i64 + p * j as i64 - shift;
                if n < 0 {
                    debug_assert!(v.is_zero());
                    continue;
                }
                let n = n as usize;
                if n >= len {
                    continue;
                }
                let av = v.abs();
                for i in 0..=j {
                    let w = self.binom[j][i] * cabs[j - i];
                    out.val[i][n] += (*v * cpow[j - i]).scale(R::from_f64(self.binom[j][i]));
                    out.bound[i][n] += b * w;
                    out.err[i][n] += err * w + (av + err) * w * (j - i) as f64 * rel;
                }
            }
        }
        for (errs, bounds) in out.err.iter_mut().zip(&out.bound) {
            for (e, b) in errs.iter_mut().zip(bounds) {
                *e += 8.0 * R::EPS * b;
            }
        }
        out
    }
}

/// Lower convex hull of points sorted by `j`, from the first to the last point.
fn lower_hull(pts: &[(i64, i64)]) -> Vec<(i64, i64)> {
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for &p in pts {
        while hull.len() >= 2 {
            let a = hull[hull.len() - 2];
            let b = hull[hull.len() - 1];
            let cross = (b.0 - a.0) * (p.1 - a.1) - (b.1 - a.1) * (p.0 - a.0);
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    hull
}

/// Coefficients of `h(x, σ(x))` as a series in `x^{1/N}`, `N = σ.ramification`,
/// for orders below `len`, with magnitude bounds and error estimates.
pub(crate) struct Residual<R> {
    pub val: Vec<Cx<R>>,
    pub bound: Vec<f64>,
    pub err: Vec<f64>,
}

/// Magnitude series `Σ_k |h_{ij}| (a^j)_k x^{i + k/N}` for a nonnegative `a`.
fn magnitude_series(h: &BiPoly, a: &[f64], n: usize, len: usize) -> Vec<f64> {
    let deg = h.deg_y().unwrap_or(0) as usize;
    let mut pows = vec![{
        let mut one = vec![0.0; len];
        one[0] = 1.0;
        one
    }];
    for j in 1..=deg {
        let prev = &pows[j - 1];
        let mut next = vec![0.0; len];
        for (x, pa) in prev.iter().enumerate().filter(|(_, v)| **v != 0.0) {
            for (y, sb) in a.iter().enumerate().take(len - x) {
                next[x + y] += pa * sb;
            }
        }
        pows.push(next);
    }
    let mut out = vec![0.0; len];
    for (i, j, c) in h.terms() {
        let shift = i as usize * n;
        if shift >= len {
            continue;
        }
        let ca = c.to_f64().unwrap_or(f64::INFINITY).abs();
        for k in 0..len - shift {
            out[k + shift] += ca * pows[j as usize][k];
        }
    }
    out
}

pub(crate) fn substitute_series<R: Real>(h: &BiPoly, s: &Series<R>, len: usize) -> Residual<R> {
    let n = s.ramification as usize;
    let len = len.max(1);
    let mut sigma = vec![Cx::<R>::zero(); len];
    let mut sigma_abs = vec![0.0; len];
    let mut sigma_err = vec![0.0; len];
    for ((e, c), err) in s.terms.iter().zip(&s.errors) {
        let k = (*e * Rational64::from_integer(n as i64)).to_integer();
        if let Some(k) = k.to_usize().filter(|&k| k < len) {
            sigma[k] = *c;
            sigma_abs[k] = c.abs();
            sigma_err[k] = c.abs() + err;
        }
    }
    let deg = h.deg_y().unwrap_or(0) as usize;
    let mut pows = vec![{
        let mut one = vec![Cx::zero(); len];
        one[0] = Cx::one();
        one
    }];
    for j in 1..=deg {
        let prev = &pows[j - 1];
        let mut next = vec![Cx::zero(); len];
        for (a, pa) in prev.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for b in 0..len - a {
                if !sigma[b].is_zero() {
                    next[a + b] += *pa * sigma[b];
                }
            }
        }
        pows.push(next);
    }
    let mut val = vec![Cx::zero(); len];
    for (i, j, c) in h.terms() {
        let shift = i as usize * n;
        if shift >= len {
            continue;
        }
        let cv = Cx::real(R::from_rational(c));
        for k in 0..len - shift {
            val[k + shift] += cv * pows[j as usize][k];
        }
    }
    let bound = magnitude_series(h, &sigma_abs, n, len);
    // first-order sensitivity to the coefficient errors, plus rounding
    let perturbed = magnitude_series(h, &sigma_err, n, len);
    let err = perturbed
        .iter()
        .zip(&bound)
        .map(|(p, b)| (p - b).max(0.0) + 8.0 * R::EPS * b)
        .collect();
    Residual { val, bound, err }
}
