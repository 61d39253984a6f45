//! Approximate roots, Puiseux characteristic and semigroup of a branch.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::BigRational;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{intersection_multiplicity, BiPoly, Multiplicity};

/// Puiseux characteristic `(b₀, b₁, …, b_g)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct CharSequence {
    b: Vec<u64>,
}

impl CharSequence {
    /// Checks `0 < b₀ < … < b_g`, that every `b_k` lowers the running gcd and
    /// that the final gcd is 1.
    pub fn new(b: Vec<u64>) -> Result<Self> {
        let bad = |m: String| Err(Error::InvalidCharacteristic(m));
        if b.is_empty() {
            return bad("empty sequence".into());
        }
        if b[0] == 0 {
            return bad("b0 must be positive".into());
        }
        if let Some(w) = b.windows(2).find(|w| w[0] >= w[1]) {
            return bad(format!("not strictly increasing at {} >= {}", w[0], w[1]));
        }
        let mut l = b[0];
        for &bk in &b[1..] {
            let next = l.gcd(&bk);
            if next == l {
                return bad(format!("{bk} does not lower the gcd {l}"));
            }
            l = next;
        }
        if l != 1 {
            return bad(format!("gcd of the sequence is {l}, not 1"));
        }
        Ok(CharSequence { b })
    }

    pub fn values(&self) -> &[u64] {
        &self.b
    }

    pub fn g(&self) -> usize {
        self.b.len() - 1
    }
}

impl TryFrom<Vec<u64>> for CharSequence {
    type Error = Error;
    fn try_from(v: Vec<u64>) -> Result<Self> {
        CharSequence::new(v)
    }
}

impl From<CharSequence> for Vec<u64> {
    fn from(c: CharSequence) -> Self {
        c.b
    }
}

impl fmt::Display for CharSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", join(&self.b))
    }
}

/// Minimal generators `⟨b̄₀, …, b̄_g⟩` of the semigroup of a branch.
///
/// Validation requires `l_g = 1`, `n_k ≥ 2`, `b̄₀ < b̄₁` (the branch is transverse
/// to `x = 0`) and `b̄_{q+1} > n_q·b̄_q`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct Semigroup {
    gens: Vec<u64>,
    l: Vec<u64>,
}

impl Semigroup {
    pub fn new(gens: Vec<u64>) -> Result<Self> {
        let bad = |m: String| Err(Error::InvalidSemigroup(m));
        if gens.is_empty() {
            return bad("no generators".into());
        }
        if gens.contains(&0) {
            return bad("generators must be positive".into());
        }
        if gens.len() > 1 && gens[1] <= gens[0] {
            return bad(format!(
                "b1 = {} must exceed b0 = {} (branch transverse to x=0)",
                gens[1], gens[0]
            ));
        }
        let mut l = vec![gens[0]];
        for (k, &b) in gens.iter().enumerate().skip(1) {
            let prev = l[k - 1];
            let next = prev.gcd(&b);
            if next == prev {
                return bad(format!("generator {b} does not lower the gcd {prev}"));
            }
            l.push(next);
        }
        if *l.last().unwrap() != 1 {
            return bad(format!(
                "gcd of the generators is {}, not 1",
                l.last().unwrap()
            ));
        }
        for q in 1..gens.len().saturating_sub(1) {
            let n_q = l[q - 1] / l[q];
            let bound = n_q
                .checked_mul(gens[q])
                .ok_or(Error::Overflow("semigroup bound"))?;
            if gens[q + 1] <= bound {
                return bad(format!(
                    "b{} = {} must exceed n{q}*b{q} = {bound}",
                    q + 1,
                    gens[q + 1]
                ));
            }
        }
        Ok(Semigroup { gens, l })
    }

    /// The semigroup `⟨1⟩` of a smooth branch.
    pub fn smooth() -> Self {
        Semigroup {
            gens: vec![1],
            l: vec![1],
        }
    }

    pub fn gens(&self) -> &[u64] {
        &self.gens
    }

    /// Number of characteristic exponents.
    pub fn g(&self) -> usize {
        self.gens.len() - 1
    }

    /// `b̄_i`.
    pub fn b(&self, i: usize) -> u64 {
        self.gens[i]
    }

    /// `l_k = gcd(b̄₀, …, b̄_k)`.
    pub fn l(&self, k: usize) -> u64 {
        self.l[k]
    }

    pub fn l_seq(&self) -> &[u64] {
        &self.l
    }

    /// `n_k = l_{k−1}/l_k` for `1 ≤ k ≤ g`.
    pub fn n(&self, k: usize) -> u64 {
        self.l[k - 1] / self.l[k]
    }

    pub fn n_seq(&self) -> Vec<u64> {
        (1..=self.g()).map(|k| self.n(k)).collect()
    }

    /// `m̄ = b̄_{k+1}/l_{k+1}` for `0 ≤ k < g`.
    pub fn mbar(&self, k: usize) -> u64 {
        self.gens[k + 1] / self.l[k + 1]
    }

    /// Conductor formula `Σ (n_q − 1) b̄_q − b̄₀ + 1`.
    pub fn milnor(&self) -> u64 {
        milnor_from_semigroup(self)
    }

    pub fn characteristic(&self) -> CharSequence {
        semigroup_to_char(self)
    }

    /// Comma-separated generators, the command-line form.
    pub fn to_csv(&self) -> String {
        join(&self.gens)
    }
}

impl TryFrom<Vec<u64>> for Semigroup {
    type Error = Error;
    fn try_from(v: Vec<u64>) -> Result<Self> {
        Semigroup::new(v)
    }
}

impl From<Semigroup> for Vec<u64> {
    fn from(s: Semigroup) -> Self {
        s.gens
    }
}

impl FromStr for Semigroup {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let gens = parse_list(s).map_err(Error::InvalidSemigroup)?;
        Semigroup::new(gens)
    }
}

impl FromStr for CharSequence {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let b = parse_list(s).map_err(Error::InvalidCharacteristic)?;
        CharSequence::new(b)
    }
}

fn parse_list(s: &str) -> std::result::Result<Vec<u64>, String> {
    s.trim()
        .trim_start_matches(['<', '⟨', '('])
        .trim_end_matches(['>', '⟩', ')'])
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<u64>()
                .map_err(|e| format!("bad integer {:?}: {e}", t.trim()))
        })
        .collect()
}

impl fmt::Display for Semigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨{}⟩", join(&self.gens))
    }
}

fn join(v: &[u64]) -> String {
    v.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

pub fn char_to_semigroup(c: &CharSequence) -> Semigroup {
    let b = c.values();
    let mut l = vec![b[0]];
    for q in 1..b.len() {
        l.push(l[q - 1].gcd(&b[q]));
    }
    let mut gens = b[..b.len().min(2)].to_vec();
    for q in 2..b.len() {
        // b̄_q = n_{q−1} b̄_{q−1} + b_q − b_{q−1}
        let n_prev = l[q - 2] / l[q - 1];
        gens.push(n_prev * gens[q - 1] + b[q] - b[q - 1]);
    }
    Semigroup::new(gens).expect("a valid characteristic gives a valid semigroup")
}

pub fn semigroup_to_char(s: &Semigroup) -> CharSequence {
    let gens = s.gens();
    let mut b = vec![gens[0]];
    for q in 1..gens.len() {
        if q == 1 {
            b.push(gens[1]);
        } else {
            b.push(gens[q] - s.n(q - 1) * gens[q - 1] + b[q - 1]);
        }
    }
    CharSequence::new(b).expect("a valid semigroup gives a valid characteristic")
}

pub fn milnor_from_semigroup(s: &Semigroup) -> u64 {
    let sum: u64 = (1..=s.g()).map(|q| (s.n(q) - 1) * s.b(q)).sum();
    sum + 1 - s.b(0)
}

/// Semigroup of the characteristic approximate root `f^(k)`: `⟨b̄₀/l_k, …, b̄_k/l_k⟩`.
pub fn approximate_root_semigroup(s: &Semigroup, k: usize) -> Result<Semigroup> {
    if k >= s.g().max(1) {
        return Err(Error::IndexOutOfRange { k, g: s.g() });
    }
    let lk = s.l(k);
    Semigroup::new(s.gens()[..=k].iter().map(|b| b / lk).collect())
}

/// The unique monic `g` of degree `d/p` with `deg_y(f − g^p) < d − d/p`.
pub fn approximate_root(f: &BiPoly, p: u64) -> Result<BiPoly> {
    if !f.is_monic_in_y() {
        return Err(Error::NotMonic);
    }
    let d = u64::from(f.deg_y().expect("monic implies nonzero"));
    if p == 0 || d % p != 0 {
        return Err(Error::DegreeNotDivisible { p, degree: d });
    }
    let m = (d / p) as u32;
    let d = d as u32;
    let inv_p = BigRational::new(1.into(), p.into());
    let mut g = BiPoly::monomial(BigRational::from_integer(1.into()), 0, m);
    for j in 1..=m {
        let rest = f - &g.pow_u(p as u32);
        let c = rest.y_coeff(d - j).scale(&inv_p);
        g = &g + &c.mul_monomial(0, m - j);
    }
    Ok(g)
}

/// A branch together with its semigroup and characteristic approximate roots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Branch {
    pub poly: BiPoly,
    pub semigroup: Semigroup,
    /// `f^(0), …, f^(g−1)`.
    pub roots: Vec<BiPoly>,
}

impl Branch {
    pub fn new(f: &BiPoly) -> Result<Self> {
        let (semigroup, roots) = analyze(f)?;
        Ok(Branch {
            poly: f.clone(),
            semigroup,
            roots,
        })
    }

    pub fn g(&self) -> usize {
        self.semigroup.g()
    }

    pub fn root(&self, k: usize) -> Result<&BiPoly> {
        self.roots
            .get(k)
            .ok_or(Error::IndexOutOfRange { k, g: self.g() })
    }
}

pub fn semigroup_of(f: &BiPoly) -> Result<Semigroup> {
    analyze(f).map(|(s, _)| s)
}

pub fn characteristic_roots(f: &BiPoly) -> Result<Vec<BiPoly>> {
    analyze(f).map(|(_, r)| r)
}

fn analyze(f: &BiPoly) -> Result<(Semigroup, Vec<BiPoly>)> {
    let not_branch = |m: &str| Error::NotBranch(m.to_string());
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !f.is_monic_in_y() {
        return Err(Error::NotMonic);
    }
    let d = f.deg_y().unwrap();
    if d == 0 {
        return Err(not_branch("y-degree is 0"));
    }
    if !num_traits::Zero::is_zero(&f.constant_term()) {
        return Err(not_branch("f(0,0) != 0"));
    }
    if !f.is_weierstrass_like() {
        return Err(not_branch(
            "f(0,y) is not y^deg (not a Weierstrass polynomial)",
        ));
    }
    let d = u64::from(d);
    if d == 1 {
        return Ok((Semigroup::smooth(), Vec::new()));
    }
    let mut gens = vec![d];
    let mut roots = Vec::new();
    let mut l = d;
    while l > 1 {
        let fk = approximate_root(f, l)?;
        let b = match intersection_multiplicity(f, &fk)? {
            Multiplicity::Finite(b) => b,
            Multiplicity::Infinite => {
                return Err(not_branch(&format!(
                    "f shares a component with its approximate root of degree {}",
                    d / l
                )))
            }
        };
        if gens.len() == 1 && b < d {
            return Err(not_branch(&format!(
                "(f, y)_0 = {b} < deg_y f = {d}; x=0 is tangent to the curve, swap x and y"
            )));
        }
        let next = l.gcd(&b);
        if next == l {
            return Err(not_branch(&format!(
                "gcd chain stalls at {l} with intersection {b}"
            )));
        }
        gens.push(b);
        roots.push(fk);
        l = next;
    }
    let s = Semigroup::new(gens).map_err(|e| Error::NotBranch(e.to_string()))?;
    Ok((s, roots))
}

/// Random valid semigroup with `1 ≤ g ≤ max_g` and all generators `≤ max_gen`.
///
/// `slack` bounds how far each generator may exceed its minimal admissible value
/// (in units of `l_k`); small values give small polynomials.
pub fn random_semigroup<R: Rng + ?Sized>(
    rng: &mut R,
    max_g: usize,
    max_gen: u64,
    slack: u64,
) -> Semigroup {
    loop {
        let g = rng.gen_range(1..=max_g.max(1));
        let n: Vec<u64> = (0..g).map(|_| rng.gen_range(2..=4)).collect();
        let b0: u64 = n.iter().product();
        if b0 > max_gen {
            continue;
        }
        // l_k = n_{k+1} ⋯ n_g
        let l: Vec<u64> = (0..=g).map(|k| n[k..].iter().product()).collect();
        let mut gens = vec![b0];
        let mut ok = true;
        for k in 1..=g {
            let lower = if k == 1 {
                b0 + 1
            } else {
                n[k - 2] * gens[k - 1] + 1
            };
            let mut m = lower.div_ceil(l[k]) + rng.gen_range(0..=slack);
            while m.gcd(&n[k - 1]) != 1 {
                m += 1;
            }
            let b = m * l[k];
            if b > max_gen {
                ok = false;
                break;
            }
            gens.push(b);
        }
        if ok {
            if let Ok(s) = Semigroup::new(gens) {
                return s;
            }
        }
    }
}

/// Builds a polynomial with characteristic `c` by the nested recursion
/// `f^(k+1) = (f^(k))^{n_{k+1}} − c_k·x^{α₀} ∏ (f^(i−1))^{α_i}`, where
/// `n_{k+1} b̄_{k+1} = α₀ b̄₀ + Σ α_i b̄_i`, `0 ≤ α_i < n_i`, and `c_k` are small
/// random nonzero integers. A candidate is accepted only if [`semigroup_of`]
/// returns the requested semigroup and all coefficients are at most 1000 in
/// absolute value.
pub fn build_test_branch(c: &CharSequence, seed: u64) -> Result<BiPoly> {
    let s = char_to_semigroup(c);
    if s.g() == 0 {
        return Ok(BiPoly::y());
    }
    let alphas: Vec<Vec<u64>> = (0..s.g()).map(|k| semiroot_exponents(&s, k)).collect();
    let mut rng = StdRng::seed_from_u64(seed);
    for _ in 0..64 {
        let mut roots = vec![BiPoly::y()];
        for (k, alpha) in alphas.iter().enumerate() {
            let mut c: i64 = rng.gen_range(1..=3);
            if rng.gen_bool(0.5) {
                c = -c;
            }
            let mut tail =
                BiPoly::monomial(BigRational::from_integer(c.into()), alpha[0] as u32, 0);
            for (i, &a) in alpha.iter().enumerate().skip(1) {
                if a > 0 {
                    tail = &tail * &roots[i - 1].pow_u(a as u32);
                }
            }
            let next = &roots[k].pow_u(s.n(k + 1) as u32) - &tail;
            roots.push(next);
        }
        let f = roots.pop().unwrap();
        if f.max_abs_coeff() > 1000.0 {
            continue;
        }
        if semigroup_of(&f).ok().as_ref() == Some(&s) {
            return Ok(f);
        }
    }
    Err(Error::NotBranch(format!(
        "no accepted candidate for characteristic {c}"
    )))
}

/// `(α₀, α₁, …, α_k)` with `n_{k+1} b̄_{k+1} = Σ α_i b̄_i` and `0 ≤ α_i < n_i`
/// for `i ≥ 1`. The representation exists and is unique for branch semigroups.
fn semiroot_exponents(s: &Semigroup, k: usize) -> Vec<u64> {
    let target = s.n(k + 1) * s.b(k + 1);
    let mut alpha = vec![0u64; k + 1];
    fn search(s: &Semigroup, i: usize, rest: u64, alpha: &mut [u64]) -> bool {
        if i == 0 {
            if rest.is_multiple_of(s.b(0)) {
                alpha[0] = rest / s.b(0);
                return true;
            }
            return false;
        }
        for a in 0..s.n(i) {
            let used = a * s.b(i);
            if used > rest {
                break;
            }
            alpha[i] = a;
            if search(s, i - 1, rest - used, alpha) {
                return true;
            }
        }
        false
    }
    let found = search(s, k, target, &mut alpha);
    debug_assert!(found, "semigroup element representation");
    alpha
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(t: &[(u32, u32, i64)]) -> BiPoly {
        BiPoly::from_int_terms(t)
    }

    fn example_two() -> BiPoly {
        p(&[(0, 4, 1), (3, 2, -2), (5, 1, -1), (6, 0, 1)])
    }

    fn example_one() -> BiPoly {
        let r = p(&[(0, 3, 1), (3, 1, -6), (4, 0, -1)]);
        &r.pow_u(2) - &p(&[(9, 0, 9)])
    }

    fn sg(v: &[u64]) -> Semigroup {
        Semigroup::new(v.to_vec()).unwrap()
    }

    #[test]
    fn approximate_roots_of_examples() {
        assert_eq!(
            approximate_root(&example_two(), 2).unwrap(),
            p(&[(0, 2, 1), (3, 0, -1)])
        );
        assert_eq!(
            approximate_root(&example_one(), 2).unwrap(),
            p(&[(0, 3, 1), (3, 1, -6), (4, 0, -1)])
        );
        assert_eq!(approximate_root(&example_two(), 1).unwrap(), example_two());
        assert_eq!(approximate_root(&example_two(), 4).unwrap(), BiPoly::y());
        assert_eq!(
            approximate_root(&example_two(), 3),
            Err(Error::DegreeNotDivisible { p: 3, degree: 4 })
        );
        assert_eq!(approximate_root(&p(&[(0, 2, 2)]), 2), Err(Error::NotMonic));
    }

    #[test]
    fn approximate_root_degree_bound() {
        for f in [example_one(), example_two()] {
            let s = semigroup_of(&f).unwrap();
            let roots = characteristic_roots(&f).unwrap();
            let b0 = s.b(0) as u32;
            for (k, r) in roots.iter().enumerate() {
                let lk = s.l(k) as u32;
                let diff = &f - &r.pow_u(lk);
                assert!(diff.deg_y().unwrap_or(0) < b0 - b0 / lk);
            }
        }
    }

    #[test]
    fn semigroups_of_examples() {
        assert_eq!(semigroup_of(&example_two()).unwrap(), sg(&[4, 6, 13]));
        assert_eq!(semigroup_of(&example_one()).unwrap(), sg(&[6, 8, 27]));
        assert_eq!(semigroup_of(&BiPoly::y()).unwrap(), Semigroup::smooth());
        assert_eq!(
            characteristic_roots(&example_two()).unwrap(),
            vec![BiPoly::y(), p(&[(0, 2, 1), (3, 0, -1)])]
        );
        assert!(characteristic_roots(&p(&[(0, 1, 1), (2, 0, 1)]))
            .unwrap()
            .is_empty());
    }

    #[test]
    fn rejects_non_branches() {
        // two smooth branches y = ±x²
        assert!(matches!(
            semigroup_of(&p(&[(0, 2, 1), (4, 0, -1)])),
            Err(Error::NotBranch(_))
        ));
        // tangent to x = 0
        let err = semigroup_of(&p(&[(0, 3, 1), (2, 0, -1)])).unwrap_err();
        assert!(err.to_string().contains("swap"), "{err}");
        // y² is non-reduced
        assert!(matches!(
            semigroup_of(&p(&[(0, 2, 1)])),
            Err(Error::NotBranch(_))
        ));
        // not Weierstrass
        assert!(matches!(
            semigroup_of(&p(&[(0, 2, 1), (0, 1, 1), (3, 0, 1)])),
            Err(Error::NotBranch(_))
        ));
        assert_eq!(
            semigroup_of(&p(&[(0, 2, 2), (3, 0, 1)])),
            Err(Error::NotMonic)
        );
    }

    #[test]
    fn milnor_agrees_with_oracle() {
        use crate::poly::milnor_number;
        assert_eq!(milnor_from_semigroup(&sg(&[2, 3])), 2);
        assert_eq!(milnor_from_semigroup(&sg(&[4, 6, 13])), 16);
        assert_eq!(milnor_from_semigroup(&Semigroup::smooth()), 0);
        for f in [example_one(), example_two()] {
            assert_eq!(
                semigroup_of(&f).unwrap().milnor(),
                milnor_number(&f).unwrap()
            );
        }
    }

    #[test]
    fn characteristic_conversions() {
        let c = CharSequence::new(vec![6, 8, 11]).unwrap();
        assert_eq!(char_to_semigroup(&c), sg(&[6, 8, 27]));
        assert_eq!(
            char_to_semigroup(&CharSequence::new(vec![4, 6, 7]).unwrap()),
            sg(&[4, 6, 13])
        );
        assert_eq!(
            char_to_semigroup(&CharSequence::new(vec![1]).unwrap()),
            Semigroup::smooth()
        );
        assert!(CharSequence::new(vec![3]).is_err());
        assert!(CharSequence::new(vec![4, 6, 8]).is_err());
        assert_eq!(semigroup_to_char(&sg(&[4, 6, 13])).values(), &[4, 6, 7]);
    }

    #[test]
    fn semigroup_validation() {
        assert!(Semigroup::new(vec![4, 6, 12]).is_err());
        assert!(Semigroup::new(vec![4, 6, 11]).is_err()); // 11 <= 2·6
        assert!(Semigroup::new(vec![3, 2]).is_err());
        assert!(Semigroup::new(vec![2]).is_err());
        let s: Semigroup = "4,14,31".parse().unwrap();
        assert_eq!(s.n_seq(), vec![2, 2]);
        assert_eq!(s.l_seq(), &[4, 2, 1]);
        assert_eq!(s.mbar(0), 7);
        assert_eq!(s.to_string(), "⟨4,14,31⟩");
    }

    #[test]
    fn root_semigroups() {
        assert_eq!(
            approximate_root_semigroup(&sg(&[4, 6, 13]), 1).unwrap(),
            sg(&[2, 3])
        );
        assert_eq!(
            approximate_root_semigroup(&sg(&[6, 10, 31]), 1).unwrap(),
            sg(&[3, 5])
        );
        assert_eq!(
            approximate_root_semigroup(&sg(&[6, 10, 31]), 0).unwrap(),
            Semigroup::smooth()
        );
        assert!(matches!(
            approximate_root_semigroup(&sg(&[6, 10, 31]), 2),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn intersections_round_trip_on_fixtures() {
        for f in [example_one(), example_two()] {
            let b = Branch::new(&f).unwrap();
            for (k, r) in b.roots.iter().enumerate() {
                assert_eq!(
                    intersection_multiplicity(&f, r).unwrap(),
                    Multiplicity::Finite(b.semigroup.b(k + 1))
                );
            }
        }
    }

    #[test]
    fn generated_branches() {
        let mut rng = StdRng::seed_from_u64(7);
        for seed in 0..6 {
            let s = random_semigroup(&mut rng, 2, 40, 1);
            let f = build_test_branch(&s.characteristic(), seed).unwrap();
            assert_eq!(semigroup_of(&f).unwrap(), s);
            assert_eq!(f.deg_y().unwrap() as u64, s.b(0));
        }
    }

    fn arb_char() -> impl Strategy<Value = CharSequence> {
        any::<u64>().prop_map(|seed| {
            let mut rng = StdRng::seed_from_u64(seed);
            random_semigroup(&mut rng, 5, 10_000, 50).characteristic()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]
        #[test]
        fn char_semigroup_round_trip(c in arb_char()) {
            prop_assert_eq!(semigroup_to_char(&char_to_semigroup(&c)), c);
        }
    }
}
