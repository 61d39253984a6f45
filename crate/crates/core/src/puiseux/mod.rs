//! Numerical verification through Newton–Puiseux roots.
//!
//! Roots are computed with exact rational exponents and floating-point
//! coefficients. Every computation first runs in `f64`; when a zero test falls
//! into the uncertainty band or a root cluster cannot be resolved, it is rerun
//! in double-double arithmetic. Final integers (class intersections) are
//! compared exactly against resultant computations.

mod classes;
mod complex;
mod expand;
mod real;
mod roots;

use std::fmt;

use num_complex::Complex64;
use num_rational::Rational64;
use serde::Serialize;

use crate::diagram::NewtonDiagram;
use crate::error::{Error, Result};
use crate::poly::BiPoly;
use classes::{contact_order, Analysis, Setup};
use expand::Series;

pub use real::{DoubleDouble, Precision, Real};

/// A truncated Puiseux series `Σ c_e x^e` with all terms below `truncation`.
#[derive(Debug, Clone, PartialEq)]
pub struct PuiseuxSeries {
    pub terms: Vec<(Rational64, Complex64)>,
    /// Estimated absolute error of each coefficient.
    pub errors: Vec<f64>,
    pub truncation: Rational64,
    /// Common denominator of the exponents.
    pub ramification: u64,
}

impl PuiseuxSeries {
    pub fn leading_exponent(&self) -> Option<Rational64> {
        self.terms.first().map(|t| t.0)
    }

    fn from_series<R: Real>(s: &Series<R>) -> Self {
        PuiseuxSeries {
            terms: s.terms.iter().map(|(e, c)| (*e, c.to_c64())).collect(),
            errors: s.errors.clone(),
            truncation: s.truncation,
            ramification: s.ramification as u64,
        }
    }

    fn to_series(&self) -> Series<f64> {
        Series {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (*e, complex::Cx::from_c64(*c)))
                .collect(),
            errors: self.errors.clone(),
            truncation: self.truncation,
            ramification: self.ramification as i64,
        }
    }
}

impl fmt::Display for PuiseuxSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            write!(f, "0")?;
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({:.6}{:+.6}i)*x^{}", c.re, c.im, e)?;
        }
        write!(f, " + O(x^{})", self.truncation)
    }
}

/// Roots through the origin of `h = x^{x_power} · h'`.
#[derive(Debug, Clone, PartialEq)]
pub struct Expansion {
    pub x_power: u32,
    pub series: Vec<PuiseuxSeries>,
    pub precision: Precision,
}

/// Contact order `ord_x(σ − γ)`, or a lower bound when the series agree up to
/// their truncation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ContactOrder {
    Exact(Rational64),
    AtLeast(Rational64),
}

impl fmt::Display for ContactOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ContactOrder::Exact(e) => write!(f, "{e}"),
            ContactOrder::AtLeast(e) => write!(f, ">={e}"),
        }
    }
}

fn numeric(e: &Error) -> bool {
    matches!(
        e,
        Error::Undecidable(_) | Error::NoConvergence(_) | Error::ContactClass(_)
    )
}

/// Runs `run` in `f64`, and again in double-double if it fails numerically.
fn escalate<T>(low: impl FnOnce() -> Result<T>, high: impl FnOnce() -> Result<T>) -> Result<T> {
    match low() {
        Err(e) if numeric(&e) => high(),
        r => r,
    }
}

fn expand_in<R: Real>(h: &BiPoly, depth: Rational64) -> Result<Expansion> {
    let e = expand::expand::<R>(h, depth)?;
    Ok(Expansion {
        x_power: e.x_power,
        series: e.series.iter().map(PuiseuxSeries::from_series).collect(),
        precision: R::PRECISION,
    })
}

/// Newton–Puiseux roots of `h` through the origin, up to `x`-exponent `depth`
/// (exclusive), sorted by leading exponent, then argument and modulus of the
/// leading coefficient.
pub fn puiseux_expand(h: &BiPoly, depth: Rational64) -> Result<Expansion> {
    if depth <= Rational64::from_integer(0) {
        return Err(Error::Undecidable(format!(
            "depth {depth} must be positive"
        )));
    }
    escalate(
        || expand_in::<f64>(h, depth),
        || expand_in::<DoubleDouble>(h, depth),
    )
}

/// Contact order of two series at relative coefficient tolerance `1e-9`.
pub fn contact(a: &PuiseuxSeries, b: &PuiseuxSeries) -> Result<ContactOrder> {
    contact_order(&a.to_series(), &b.to_series())
}

/// Contact of each series of `a` with the set `b`: the maximum over `b`.
pub fn contact_sets(a: &[PuiseuxSeries], b: &[PuiseuxSeries]) -> Result<Vec<ContactOrder>> {
    a.iter()
        .map(|s| {
            let mut best: Option<ContactOrder> = None;
            for t in b {
                let c = contact(s, t)?;
                best = Some(match best {
                    None => c,
                    Some(prev) => max_contact(prev, c),
                });
            }
            best.ok_or(Error::EmptySupport)
        })
        .collect()
}

fn max_contact(a: ContactOrder, b: ContactOrder) -> ContactOrder {
    let v = |c: ContactOrder| match c {
        ContactOrder::Exact(e) | ContactOrder::AtLeast(e) => e,
    };
    match v(a).cmp(&v(b)) {
        std::cmp::Ordering::Less => b,
        std::cmp::Ordering::Greater => a,
        std::cmp::Ordering::Equal if matches!(a, ContactOrder::AtLeast(_)) => a,
        std::cmp::Ordering::Equal => b,
    }
}

/// A group of jacobian roots sharing their contact with `f`.
#[derive(Debug, Clone, PartialEq)]
pub struct ContactClass {
    /// `b_i/b₀`; for the residual class, the strict upper bound `b_{k+1}/b₀`.
    pub contact: Rational64,
    /// Index `i` of the class; the residual class has `i = k+1`.
    pub index: usize,
    pub residual: bool,
    pub roots: Vec<PuiseuxSeries>,
    /// Contact of each root with `f`.
    pub root_contacts: Vec<Rational64>,
    /// `(f, Γ)₀`, including the `x`-power of `J` for the residual class.
    pub f_intersection: u64,
    /// `(f^(k), Γ)₀`, likewise.
    pub fk_intersection: u64,
    /// `(Γ, x)₀`: the number of `y`-roots in the class.
    pub x_intersection: u64,
}

fn export_classes<R: Real>(a: &Analysis<R>) -> Result<Vec<ContactClass>> {
    a.classes
        .iter()
        .map(|c| {
            Ok(ContactClass {
                contact: c.contact,
                index: c.index,
                residual: c.residual,
                roots: c
                    .members
                    .iter()
                    .map(|&i| PuiseuxSeries::from_series(&a.je.series[i]))
                    .collect(),
                root_contacts: c.root_contacts.clone(),
                f_intersection: classes::integral(c.f_intersection)?,
                fk_intersection: classes::integral(c.fk_intersection)?,
                x_intersection: c.members.len() as u64,
            })
        })
        .collect()
}

fn analyzed<T>(setup: Setup, f: impl Fn(&dyn AnalysisView) -> Result<T>) -> Result<T> {
    escalate(
        || f(&Analysis::<f64>::run(setup.clone())?),
        || f(&Analysis::<DoubleDouble>::run(setup.clone())?),
    )
}

/// Precision-erased access to an analysis.
trait AnalysisView {
    fn classes(&self) -> Result<Vec<ContactClass>>;
    fn diagram(&self) -> Result<NewtonDiagram>;
    fn checks(&self) -> Vec<Check>;
    fn precision(&self) -> Precision;
}

impl<R: Real> AnalysisView for Analysis<R> {
    fn classes(&self) -> Result<Vec<ContactClass>> {
        export_classes(self)
    }

    fn diagram(&self) -> Result<NewtonDiagram> {
        Analysis::diagram(self)
    }

    fn checks(&self) -> Vec<Check> {
        Analysis::checks(self)
    }

    fn precision(&self) -> Precision {
        R::PRECISION
    }
}

/// Contact classes of the roots of `j = jac(fk, f)`, where `fk` is one of the
/// characteristic approximate roots of the branch `f`.
pub fn contact_classes(j: &BiPoly, f: &BiPoly, fk: &BiPoly) -> Result<Vec<ContactClass>> {
    let branch = crate::branch::Branch::new(f)?;
    let s = branch.semigroup.clone();
    let k = branch.roots.iter().position(|r| r == fk).ok_or_else(|| {
        Error::NotBranch("second polynomial is not a characteristic approximate root of f".into())
    })?;
    let setup = Setup::with_parts(f.clone(), fk.clone(), j.clone(), s, k);
    analyzed(setup, |a| a.classes())
}

/// `N_J(f^(k), f)` assembled from the contact classes of the jacobian roots.
pub fn jnd_oracle(f: &BiPoly, k: usize) -> Result<NewtonDiagram> {
    analyzed(Setup::new(f, k)?, |a| a.diagram())
}

/// One named comparison of a verification report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub k: usize,
    pub precision: Precision,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "k = {} (precision: {:?})", self.k, self.precision)?;
        for c in &self.checks {
            let mark = if c.pass { "ok  " } else { "FAIL" };
            write!(
                f,
                "  [{mark}] {}: expected {}, got {}",
                c.name, c.expected, c.actual
            )?;
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Checks the contact-class decomposition of `jac(f^(k), f)` against exact
/// invariants. Numerical failures are reported as failed checks; errors are
/// returned only for invalid input.
pub fn verify_decomposition(f: &BiPoly, k: usize) -> Result<VerificationReport> {
    let setup = Setup::new(f, k)?;
    let report = |a: &dyn AnalysisView| VerificationReport {
        k,
        precision: a.precision(),
        checks: a.checks(),
    };
    let low = Analysis::<f64>::run(setup.clone()).map(|a| report(&a));
    if let Ok(r) = &low {
        if r.passed() {
            return low;
        }
    }
    match Analysis::<DoubleDouble>::run(setup).map(|a| report(&a)) {
        Ok(r) => Ok(r),
        Err(e) if numeric(&e) => Ok(VerificationReport {
            k,
            precision: Precision::DoubleDouble,
            checks: vec![Check {
                name: "analysis".into(),
                expected: "ok".into(),
                actual: e.to_string(),
                pass: false,
            }],
        }),
        Err(e) => Err(e),
    }
}
