//! Contact orders between expanded roots, grouping of the jacobian roots into
//! contact classes, and the decomposition checks.

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::Zero;

use super::complex::Cx;
use super::expand::{classify, expand, substitute_series, Class, Expanded, Series};
use super::real::Real;
use super::{Check, ContactOrder};
use crate::branch::{Branch, Semigroup};
use crate::diagram::NewtonDiagram;
use crate::error::{Error, Result};
use crate::jnd::jnd_formula;
use crate::poly::{intersection_multiplicity, jacobian_det, BiPoly};

/// Contact order of two truncated series.
pub(crate) fn contact_order<R: Real>(a: &Series<R>, b: &Series<R>) -> Result<ContactOrder> {
    let trunc = a.truncation.min(b.truncation);
    let (mut i, mut j) = (0, 0);
    loop {
        let ea = a.terms.get(i).map(|t| t.0).filter(|e| *e < trunc);
        let eb = b.terms.get(j).map(|t| t.0).filter(|e| *e < trunc);
        match (ea, eb) {
            (None, None) => return Ok(ContactOrder::AtLeast(trunc)),
            (Some(e), None) | (None, Some(e)) => return Ok(ContactOrder::Exact(e)),
            (Some(x), Some(y)) if x != y => return Ok(ContactOrder::Exact(x.min(y))),
            (Some(e), Some(_)) => {
                let (ca, cb) = (a.terms[i].1, b.terms[j].1);
                let diff = (ca - cb).abs();
                let scale = ca.abs().max(cb.abs());
                match classify::<R>(diff, scale, a.errors[i] + b.errors[j]) {
                    Class::NonZero => return Ok(ContactOrder::Exact(e)),
                    Class::Marginal => {
                        return Err(Error::Undecidable(format!(
                            "coefficients of x^{e} differ by {diff:e} relative to {scale:e}"
                        )))
                    }
                    Class::Zero => {}
                }
                i += 1;
                j += 1;
            }
        }
    }
}

fn exact(c: ContactOrder, what: &str) -> Result<Rational64> {
    match c {
        ContactOrder::Exact(e) => Ok(e),
        ContactOrder::AtLeast(e) => Err(Error::ContactClass(format!(
            "{what} agree beyond the expansion depth {e}"
        ))),
    }
}

fn ratio(a: u64, b: u64) -> Rational64 {
    Rational64::new(a as i64, b as i64)
}

/// Exact data of the problem: `f`, `f^(k)`, `J = jac(f^(k), f)` and the semigroup.
#[derive(Debug, Clone)]
pub(crate) struct Setup {
    pub s: Semigroup,
    /// Characteristic sequence `b₀, …, b_g`.
    pub b: Vec<u64>,
    pub k: usize,
    pub f: BiPoly,
    pub fk: BiPoly,
    pub j: BiPoly,
    pub depth: Rational64,
}

impl Setup {
    pub fn new(f: &BiPoly, k: usize) -> Result<Self> {
        let branch = Branch::new(f)?;
        let s = branch.semigroup.clone();
        if s.g() == 0 {
            return Err(Error::SmoothBranch);
        }
        let fk = branch.root(k)?.clone();
        let j = jacobian_det(&fk, f);
        Ok(Self::with_parts(f.clone(), fk, j, s, k))
    }

    pub fn with_parts(f: BiPoly, fk: BiPoly, j: BiPoly, s: Semigroup, k: usize) -> Self {
        let b = s.characteristic().values().to_vec();
        let depth = ratio(b[s.g()], b[0]) + 1;
        Setup {
            s,
            b,
            k,
            f,
            fk,
            j,
            depth,
        }
    }

    fn b_over_b0(&self, i: usize) -> Rational64 {
        ratio(self.b[i], self.b[0])
    }

    fn fk_degree(&self) -> u64 {
        self.b[0] / self.s.l(self.k)
    }
}

#[derive(Debug, Clone)]
pub(crate) struct RawClass {
    /// `b_i/b₀`, or the exclusive bound `b_{k+1}/b₀` for the residual class.
    pub contact: Rational64,
    pub index: usize,
    pub residual: bool,
    pub members: Vec<usize>,
    pub root_contacts: Vec<Rational64>,
    pub f_intersection: Rational64,
    pub fk_intersection: Rational64,
}

#[derive(Debug, Clone)]
pub(crate) struct Analysis<R> {
    pub setup: Setup,
    pub fe: Expanded<R>,
    pub fke: Expanded<R>,
    pub je: Expanded<R>,
    pub classes: Vec<RawClass>,
}

impl<R: Real> Analysis<R> {
    pub fn run(setup: Setup) -> Result<Self> {
        let d = setup.depth;
        let fe = expand::<R>(&setup.f, d)?;
        let fke = expand::<R>(&setup.fk, d)?;
        let je = expand::<R>(&setup.j, d)?;
        let classes = group(&setup, &fe, &fke, &je)?;
        Ok(Analysis {
            setup,
            fe,
            fke,
            je,
            classes,
        })
    }

    /// Segments `{(f,Γ)₀ \ (f^(k),Γ)₀}` of the nonempty classes, ordered by inclination.
    pub fn diagram(&self) -> Result<NewtonDiagram> {
        let mut segs: Vec<(u64, u64)> = Vec::new();
        for c in &self.classes {
            let (fi, ki) = (integral(c.f_intersection)?, integral(c.fk_intersection)?);
            if fi == 0 && ki == 0 {
                continue;
            }
            if fi == 0 || ki == 0 {
                return Err(Error::ContactClass(format!(
                    "class at contact {} has intersections ({fi}, {ki})",
                    c.contact
                )));
            }
            segs.push((fi, ki));
        }
        segs.sort_by(|a, b| (a.0 * b.1).cmp(&(b.0 * a.1)));
        if segs.windows(2).any(|w| w[0].0 * w[1].1 == w[1].0 * w[0].1) {
            return Err(Error::ContactClass(
                "two classes give segments of equal inclination".into(),
            ));
        }
        NewtonDiagram::from_pairs(&segs)
    }
}

pub(crate) fn integral(q: Rational64) -> Result<u64> {
    if !q.is_integer() || q < Rational64::zero() {
        return Err(Error::ContactClass(format!(
            "class intersection {q} is not a nonnegative integer"
        )));
    }
    Ok(q.to_integer() as u64)
}

fn group<R: Real>(
    setup: &Setup,
    fe: &Expanded<R>,
    fke: &Expanded<R>,
    je: &Expanded<R>,
) -> Result<Vec<RawClass>> {
    let g = setup.s.g();
    let k = setup.k;
    let bound = setup.b_over_b0(k + 1);
    let mut classes = vec![RawClass {
        contact: bound,
        index: k + 1,
        residual: true,
        members: Vec::new(),
        root_contacts: Vec::new(),
        f_intersection: Rational64::from_integer((je.x_power as u64 * setup.b[0]) as i64),
        fk_intersection: Rational64::from_integer((je.x_power as u64 * setup.fk_degree()) as i64),
    }];
    for i in k + 2..=g {
        classes.push(RawClass {
            contact: setup.b_over_b0(i),
            index: i,
            residual: false,
            members: Vec::new(),
            root_contacts: Vec::new(),
            f_intersection: Rational64::zero(),
            fk_intersection: Rational64::zero(),
        });
    }
    for (a, alpha) in je.series.iter().enumerate() {
        let mut best = None::<Rational64>;
        let mut f_sum = Rational64::zero();
        for sigma in &fe.series {
            let c = exact(
                contact_order(sigma, alpha)?,
                "a jacobian root and a root of f",
            )?;
            f_sum += c;
            best = Some(best.map_or(c, |b| b.max(c)));
        }
        let mut fk_sum = Rational64::zero();
        for tau in &fke.series {
            fk_sum += exact(
                contact_order(tau, alpha)?,
                "a jacobian root and a root of f^(k)",
            )?;
        }
        let best = best.expect("f has roots");
        let slot = if best < bound {
            0
        } else {
            (k + 2..=g)
                .position(|i| setup.b_over_b0(i) == best)
                .map(|p| p + 1)
                .ok_or_else(|| {
                    Error::ContactClass(format!(
                        "jacobian root with contact {best} is neither below {bound} nor characteristic"
                    ))
                })?
        };
        let c = &mut classes[slot];
        c.members.push(a);
        c.root_contacts.push(best);
        c.f_intersection += f_sum;
        c.fk_intersection += fk_sum;
    }
    Ok(classes)
}

fn check(name: impl Into<String>, expected: impl ToString, actual: impl ToString) -> Check {
    let (expected, actual) = (expected.to_string(), actual.to_string());
    Check {
        name: name.into(),
        pass: expected == actual,
        expected,
        actual,
    }
}

fn prod(v: &[u64]) -> u64 {
    v.iter().product()
}

/// Distinct values of a list, for compact reporting.
fn distinct(v: &[u64]) -> String {
    let mut d = v.to_vec();
    d.sort_unstable();
    d.dedup();
    d.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

impl<R: Real> Analysis<R> {
    pub fn checks(&self) -> Vec<Check> {
        let st = &self.setup;
        let (s, k) = (&st.s, st.k);
        let n = s.n_seq();
        let mut out = Vec::new();

        out.push(check("roots of f", st.b[0], self.fe.series.len()));
        out.push(check(
            "roots of f^(k)",
            st.fk_degree(),
            self.fke.series.len(),
        ));
        let (_, jr) = st.j.split_x_content();
        out.push(check(
            "roots of J through the origin",
            jr.y_order_at_x0().unwrap_or(0),
            self.je.series.len(),
        ));

        // class sizes n₁⋯n_{i−1}(n_i − 1)
        for c in self.classes.iter().filter(|c| !c.residual) {
            let i = c.index;
            let expected = prod(&n[..i - 1]) * (n[i - 1] - 1);
            out.push(check(
                format!("class size at contact {}", c.contact),
                expected,
                c.members.len(),
            ));
        }
        out.push(check(
            "residual contacts below b_(k+1)/b_0",
            true,
            self.classes[0]
                .root_contacts
                .iter()
                .all(|c| *c < self.classes[0].contact),
        ));

        out.extend(self.key_counts());

        // per-class sums must be integers
        let mut f_total = 0u64;
        let mut fk_total = 0u64;
        let mut integral_ok = true;
        for c in &self.classes {
            match (integral(c.f_intersection), integral(c.fk_intersection)) {
                (Ok(a), Ok(b)) => {
                    f_total += a;
                    fk_total += b;
                }
                _ => integral_ok = false,
            }
        }
        out.push(check("class intersections are integers", true, integral_ok));
        let exact = |h: &BiPoly| -> String {
            match intersection_multiplicity(h, &st.j) {
                Ok(m) => m.to_string(),
                Err(e) => e.to_string(),
            }
        };
        out.push(check("total (f, J)", exact(&st.f), f_total));
        out.push(check("total (f^(k), J)", exact(&st.fk), fk_total));
        let mu_k = crate::branch::approximate_root_semigroup(s, k).map(|r| r.milnor());
        match mu_k {
            Ok(mu) => out.push(check(
                "Teissier: (f^(k), J) = mu_k + bbar_(k+1) - 1",
                mu + s.b(k + 1) - 1,
                exact(&st.fk),
            )),
            Err(e) => out.push(check("Teissier", "ok", e)),
        }
        let formula = jnd_formula(s, k).map(|d| d.notation());
        let oracle = self.diagram().map(|d| d.notation());
        out.push(check(
            "diagram from classes equals formula",
            formula.unwrap_or_else(|e| e.to_string()),
            oracle.unwrap_or_else(|e| e.to_string()),
        ));

        out.push(self.residual_check("f", &st.f, &self.fe));
        out.push(self.residual_check("f^(k)", &st.fk, &self.fke));
        out.push(self.residual_check("J", &jr, &self.je));
        out.push(self.conjugate_check());
        out
    }

    /// For every root γ of f: `#{σ ≠ γ : O(σ, γ) ≥ τ} = l_j − 1` for `τ` in
    /// `(b_j/b₀, b_{j+1}/b₀]`; and for every root of `f^(k)` the number of
    /// jacobian roots with contact at least `b_{k+1}/b₀` is `n_{k+1}(l_{k+1} − 1)`.
    fn key_counts(&self) -> Vec<Check> {
        let st = &self.setup;
        let (s, k, g) = (&st.s, st.k, st.s.g());
        let roots = &self.fe.series;
        let mut out = Vec::new();
        let table: Result<Vec<Vec<ContactOrder>>> = roots
            .iter()
            .map(|a| roots.iter().map(|b| contact_order(a, b)).collect())
            .collect();
        let table = match table {
            Ok(t) => t,
            Err(e) => return vec![check("contacts among roots of f", "ok", e)],
        };
        for j in 0..=g {
            let mut taus = Vec::new();
            if j < g {
                let (lo, hi) = (st.b_over_b0(j), st.b_over_b0(j + 1));
                taus.push(hi);
                taus.push((lo + hi) / 2);
            } else {
                taus.push(st.b_over_b0(g) + Rational64::new(1, 2));
            }
            for tau in taus {
                let counts: Vec<u64> = (0..roots.len())
                    .map(|a| {
                        (0..roots.len())
                            .filter(|&b| b != a && table[a][b].reaches(tau))
                            .count() as u64
                    })
                    .collect();
                out.push(check(
                    format!("#{{sigma != gamma : O >= {tau}}} = l_{j} - 1"),
                    s.l(j) - 1,
                    distinct(&counts),
                ));
            }
        }
        let tau = st.b_over_b0(k + 1);
        let counts: Result<Vec<u64>> = self
            .fke
            .series
            .iter()
            .map(|t| {
                let mut c = 0;
                for a in &self.je.series {
                    if contact_order(t, a)?.reaches(tau) {
                        c += 1;
                    }
                }
                Ok(c)
            })
            .collect();
        let expected = s.n(k + 1) * (s.l(k + 1) - 1);
        out.push(match counts {
            Ok(c) => check(
                format!("#{{alpha : O(alpha, f^(k)) >= {tau}}} = n_(k+1)(l_(k+1) - 1)"),
                expected,
                distinct(&c),
            ),
            Err(e) => check("jacobian roots near f^(k)", expected, e),
        });
        out
    }

    /// Back-substitution: for a root `σ` truncated at depth `D`,
    /// `ord_x h(x, σ) ≥ D + Σ_{σ' ≠ σ} min(O(σ, σ'), D)`, so every coefficient
    /// below that order must vanish. This is stronger than `ord_x > D − 1` and
    /// detects wrong terms anywhere below the depth.
    fn residual_check(&self, label: &str, h: &BiPoly, e: &Expanded<R>) -> Check {
        let d = self.setup.depth;
        let mut worst = 0.0f64;
        let mut ok = true;
        for (a, s) in e.series.iter().enumerate() {
            let mut limit = d;
            for (b, t) in e.series.iter().enumerate() {
                if a != b {
                    let c = match contact_order(s, t) {
                        Ok(ContactOrder::Exact(c)) | Ok(ContactOrder::AtLeast(c)) => c,
                        Err(_) => Rational64::zero(),
                    };
                    limit += c.min(d);
                }
            }
            let n = Rational64::from_integer(s.ramification);
            let len = (limit * n).ceil().to_integer() as usize;
            let res = substitute_series(h, s, len);
            for ((v, b), e) in res.val.iter().zip(&res.bound).zip(&res.err) {
                let thr = (R::ZERO_TOL * b).max(10.0 * e);
                if thr > 0.0 {
                    worst = worst.max(v.abs() / thr);
                }
                if classify::<R>(v.abs(), *b, *e) != Class::Zero {
                    ok = false;
                }
            }
        }
        Check {
            name: format!("substitution residual of {label}"),
            expected: "<= 1 (relative to threshold)".into(),
            actual: format!("{worst:.2e}"),
            pass: ok,
        }
    }

    /// The roots of f are permuted by `x^{1/b₀} ↦ ω x^{1/b₀}`.
    fn conjugate_check(&self) -> Check {
        let roots = &self.fe.series;
        let nn = self.setup.b[0] as i64;
        let omega = Cx::<R>::nth_root(Cx::one(), nn as u64, 1);
        let mut used = vec![false; roots.len()];
        let mut ok = true;
        for s in roots {
            if nn % s.ramification != 0 {
                ok = false;
                break;
            }
            let twisted: Vec<(Rational64, Cx<R>)> = s
                .terms
                .iter()
                .map(|(e, c)| {
                    let p = (*e * nn).to_integer().mod_floor(&nn);
                    (*e, *c * omega.powu(p as u64))
                })
                .collect();
            let hit =
                roots.iter().enumerate().position(|(i, t)| {
                    !used[i]
                        && t.terms.len() == twisted.len()
                        && t.terms.iter().zip(&twisted).enumerate().all(
                            |(x, ((ea, ca), (eb, cb)))| {
                                let err = t.errors[x] + s.errors[x];
                                ea == eb
                                    && classify::<R>((*ca - *cb).abs(), ca.abs().max(cb.abs()), err)
                                        == Class::Zero
                            },
                        )
                });
            match hit {
                Some(i) => used[i] = true,
                None => {
                    ok = false;
                    break;
                }
            }
        }
        Check {
            name: "roots of f closed under conjugation".into(),
            expected: "permutation".into(),
            actual: if ok { "permutation" } else { "not closed" }.into(),
            pass: ok,
        }
    }
}

impl ContactOrder {
    /// Whether the contact is known to be at least `tau`.
    pub(crate) fn reaches(self, tau: Rational64) -> bool {
        match self {
            ContactOrder::Exact(e) | ContactOrder::AtLeast(e) => e >= tau,
        }
    }
}
