//! Roots of edge polynomials with multiplicities.
//!
//! Approximations come from the Aberth–Ehrlich iteration in `f64`. Nearby
//! approximations are grouped into clusters; a cluster of size `m` is taken to
//! be one root of multiplicity `m` when Newton's method on the `(m−1)`-th
//! derivative converges to a point where the lower derivatives vanish and the
//! `m`-th does not. The final values are polished in the working precision.

use num_complex::Complex64;

use super::complex::Cx;
use super::real::Real;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy)]
pub(crate) struct EdgeRoot<R> {
    pub value: Cx<R>,
    pub multiplicity: usize,
    /// First-order estimate of the absolute error of `value`.
    pub err: f64,
}

/// Error of the root `u` of `ψ^{(m−1)}` caused by coefficient errors `errs`:
/// `Σ_k (k)_{m−1} err_k |u|^{k−m+1} / |ψ^{(m)}(u)|`, plus rounding.
fn root_error<R: Real>(coeffs: &[Cx<R>], errs: &[f64], u: Cx<R>, m: usize) -> f64 {
    let au = u.abs();
    let mut num = 0.0;
    for k in m - 1..coeffs.len() {
        let falling: f64 = ((k + 2 - m)..=k).map(|v| v as f64).product();
        num += errs[k] * falling * au.powi((k + 1 - m) as i32);
    }
    let (d, _) = eval(&derivative(coeffs, m), u);
    let rounding = 4.0 * R::EPS * au;
    if d.is_zero() {
        f64::INFINITY
    } else {
        num / d.abs() + rounding
    }
}

/// Coefficients of the `i`-th derivative.
fn derivative<R: Real>(coeffs: &[Cx<R>], i: usize) -> Vec<Cx<R>> {
    (i..coeffs.len())
        .map(|k| {
            let falling: f64 = ((k - i + 1)..=k).map(|v| v as f64).product();
            coeffs[k].scale(R::from_f64(falling))
        })
        .collect()
}

/// Value and the bound `Σ |a_k| |z|^k`.
fn eval<R: Real>(coeffs: &[Cx<R>], z: Cx<R>) -> (Cx<R>, f64) {
    let mut v = Cx::zero();
    let mut b = 0.0;
    let az = z.abs();
    for c in coeffs.iter().rev() {
        v = v * z + *c;
        b = b * az + c.abs();
    }
    (v, b)
}

fn newton<R: Real>(coeffs: &[Cx<R>], mut z: Cx<R>) -> Cx<R> {
    if coeffs.len() == 2 {
        return -coeffs[0] / coeffs[1];
    }
    let d = derivative(coeffs, 1);
    let mut last = f64::INFINITY;
    for _ in 0..60 {
        let (p, _) = eval(coeffs, z);
        let (dp, _) = eval(&d, z);
        if dp.is_zero() {
            break;
        }
        let step = p / dp;
        let size = step.abs();
        if size >= last {
            // stagnation at the rounding level
            break;
        }
        z = z - step;
        last = size;
        if size <= 4.0 * R::EPS * z.abs() {
            break;
        }
    }
    z
}

fn aberth(coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
    let n = coeffs.len() - 1;
    let lead = coeffs[n];
    let radius = (coeffs[0] / lead).norm().powf(1.0 / n as f64).max(1e-300);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            Complex64::from_polar(
                radius,
                2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4,
            )
        })
        .collect();
    let horner = |z: Complex64| {
        let mut p = Complex64::new(0.0, 0.0);
        let mut dp = Complex64::new(0.0, 0.0);
        for c in coeffs.iter().rev() {
            dp = dp * z + p;
            p = p * z + c;
        }
        (p, dp)
    };
    for _ in 0..2000 {
        let mut done = true;
        for i in 0..n {
            let (p, dp) = horner(z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let s: Complex64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| 1.0 / (z[i] - z[j]))
                .sum();
            let w = ratio / (1.0 - ratio * s);
            if !w.is_finite() {
                continue;
            }
            z[i] -= w;
            if w.norm() > 1e-15 * z[i].norm() {
                done = false;
            }
        }
        if done {
            break;
        }
    }
    if z.iter().any(|v| !v.is_finite()) {
        return Err(Error::NoConvergence(format!("{coeffs:?}")));
    }
    Ok(z)
}

fn clusters(points: &[Complex64], delta: f64) -> Vec<Vec<usize>> {
    let n = points.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while p[r] != r {
            r = p[r];
        }
        p[i] = r;
        r
    }
    for i in 0..n {
        for j in i + 1..n {
            let scale = points[i].norm().max(points[j].norm());
            if (points[i] - points[j]).norm() <= delta * scale {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut label = vec![usize::MAX; n];
    for i in 0..n {
        let r = find(&mut parent, i);
        if label[r] == usize::MAX {
            label[r] = groups.len();
            groups.push(Vec::new());
        }
        groups[label[r]].push(i);
    }
    groups
}

/// Refines a cluster center and checks that it is a root of exactly the
/// cluster's multiplicity.
fn confirm_multiple<R: Real>(
    coeffs: &[Cx<R>],
    errs: &[f64],
    start: Cx<R>,
    m: usize,
) -> Option<Cx<R>> {
    let dm1 = derivative(coeffs, m - 1);
    let c = newton(&dm1, start);
    let threshold = |i: usize| {
        let (_, b) = eval(&derivative(coeffs, i), c);
        let e: f64 = (i..coeffs.len())
            .map(|k| {
                let falling: f64 = ((k + 1 - i)..=k).map(|v| v as f64).product();
                errs[k] * falling * c.abs().powi((k - i) as i32)
            })
            .sum();
        (R::ZERO_TOL * b).max(10.0 * e)
    };
    for i in 0..m {
        let (v, _) = eval(&derivative(coeffs, i), c);
        if v.abs() > threshold(i) {
            return None;
        }
    }
    let (v, _) = eval(&derivative(coeffs, m), c);
    (v.abs() > 1e3 * threshold(m)).then_some(c)
}

/// Nonzero roots of `Σ coeffs[k] u^k` (with `coeffs[0] ≠ 0`) and their
/// multiplicities; `errs[k]` estimates the absolute error of `coeffs[k]`.
pub(crate) fn edge_roots<R: Real>(coeffs: &[Cx<R>], errs: &[f64]) -> Result<Vec<EdgeRoot<R>>> {
    let mut roots = find_roots(coeffs, errs)?;
    for r in &mut roots {
        r.err = root_error(coeffs, errs, r.value, r.multiplicity);
    }
    Ok(roots)
}

fn find_roots<R: Real>(coeffs: &[Cx<R>], errs: &[f64]) -> Result<Vec<EdgeRoot<R>>> {
    let n = coeffs.len() - 1;
    debug_assert!(n >= 1 && !coeffs[0].is_zero() && !coeffs[n].is_zero());
    if n == 1 {
        return Ok(vec![EdgeRoot {
            value: -coeffs[0] / coeffs[1],
            multiplicity: 1,
            err: 0.0,
        }]);
    }
    let approx = aberth(&coeffs.iter().map(|c| c.to_c64()).collect::<Vec<_>>())?;
    let mut out = Vec::new();
    let mut pending: Vec<(Vec<usize>, f64)> = vec![((0..n).collect(), 0.1)];
    while let Some((members, delta)) = pending.pop() {
        let pts: Vec<Complex64> = members.iter().map(|&i| approx[i]).collect();
        for group in clusters(&pts, delta) {
            let idx: Vec<usize> = group.iter().map(|&g| members[g]).collect();
            let m = idx.len();
            if m == 1 {
                out.push(EdgeRoot {
                    value: newton(coeffs, Cx::from_c64(approx[idx[0]])),
                    multiplicity: 1,
                    err: 0.0,
                });
                continue;
            }
            let center = idx.iter().map(|&i| approx[i]).sum::<Complex64>() / m as f64;
            if let Some(c) = confirm_multiple(coeffs, errs, Cx::from_c64(center), m) {
                out.push(EdgeRoot {
                    value: c,
                    multiplicity: m,
                    err: 0.0,
                });
            } else if delta > 1e-8 {
                pending.push((idx, delta * 1e-3));
            } else {
                return Err(Error::NoConvergence(format!(
                    "cannot separate a cluster of {m} roots of {:?}",
                    coeffs.iter().map(|c| c.to_c64()).collect::<Vec<_>>()
                )));
            }
        }
    }
    if out.iter().map(|r| r.multiplicity).sum::<usize>() != n {
        return Err(Error::NoConvergence("root count mismatch".into()));
    }
    Ok(out)
}
