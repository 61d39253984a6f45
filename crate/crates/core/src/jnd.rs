//! Closed formula for the approximate jacobian Newton diagrams of a branch,
//! the jacobian invariants, and recovery of the semigroup from the family.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::branch::{approximate_root_semigroup, Semigroup};
use crate::diagram::{ElementarySegment, Extent, NewtonDiagram};
use crate::error::{Error, Result};

fn check_index(s: &Semigroup, k: usize) -> Result<()> {
    if s.g() == 0 {
        return Err(Error::SmoothBranch);
    }
    if k >= s.g() {
        return Err(Error::IndexOutOfRange { k, g: s.g() });
    }
    Ok(())
}

fn mul(a: u64, b: u64) -> Result<u64> {
    a.checked_mul(b).ok_or(Error::Overflow("jacobian diagram"))
}

/// The segments `(L, M)` of `N_J(f^(k), f)`, one per `i = k+1..g`:
///
/// `{l_k(μ_k + m̄ − 1) \ μ_k + m̄ − 1} + Σ_{i ≥ k+2} {(n_i − 1) b̄_i \ m̄ n_{k+2}⋯n_{i−1} (n_i − 1)}`
///
/// with `μ_k = μ(f^(k))` from the conductor formula and `m̄ = b̄_{k+1}/l_{k+1}`.
pub fn jnd_segments(s: &Semigroup, k: usize) -> Result<Vec<(u64, u64)>> {
    check_index(s, k)?;
    let mu_k = approximate_root_semigroup(s, k)?.milnor();
    let mbar = s.mbar(k);
    let h = mu_k + mbar - 1;
    let mut segs = vec![(mul(s.l(k), h)?, h)];
    let mut prod = 1u64;
    for i in k + 2..=s.g() {
        let ni = s.n(i);
        segs.push((mul(ni - 1, s.b(i))?, mul(mul(mbar, prod)?, ni - 1)?));
        prod = mul(prod, ni)?;
    }
    Ok(segs)
}

pub fn jnd_formula(s: &Semigroup, k: usize) -> Result<NewtonDiagram> {
    NewtonDiagram::from_pairs(&jnd_segments(s, k)?)
}

/// Inclinations of `N_J(f^(k), f)`: `l_k` and `l_{i−1} b̄_i / b̄_{k+1}` for `i = k+2..g`.
pub fn jacobian_invariants(s: &Semigroup, k: usize) -> Result<Vec<Ratio<u64>>> {
    check_index(s, k)?;
    let mut out = vec![Ratio::from_integer(s.l(k))];
    for i in k + 2..=s.g() {
        out.push(Ratio::new(mul(s.l(i - 1), s.b(i))?, s.b(k + 1)));
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JndFamily {
    pub semigroup: Semigroup,
    /// `diagrams[k] = N_J(f^(k), f)` for `k = 0..g−1`.
    pub diagrams: Vec<NewtonDiagram>,
}

pub fn jnd_family(s: &Semigroup) -> Result<JndFamily> {
    if s.g() == 0 {
        return Err(Error::SmoothBranch);
    }
    let diagrams = (0..s.g())
        .map(|k| jnd_formula(s, k))
        .collect::<Result<Vec<_>>>()?;
    Ok(JndFamily {
        semigroup: s.clone(),
        diagrams,
    })
}

#[derive(Serialize, Deserialize)]
struct FamilyRepr {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    semigroup: Option<Vec<u64>>,
    diagrams: Vec<EntryRepr>,
}

#[derive(Serialize, Deserialize)]
struct EntryRepr {
    k: usize,
    segments: Vec<[Extent; 2]>,
}

impl JndFamily {
    /// `{"semigroup":[...],"diagrams":[{"k":0,"segments":[[L,M],...]},...]}`
    pub fn to_json(&self) -> serde_json::Value {
        let repr = FamilyRepr {
            semigroup: Some(self.semigroup.gens().to_vec()),
            diagrams: self
                .diagrams
                .iter()
                .enumerate()
                .map(|(k, d)| EntryRepr {
                    k,
                    segments: d
                        .canonical_decomposition()
                        .iter()
                        .map(|s| [s.length, s.height])
                        .collect(),
                })
                .collect(),
        };
        serde_json::to_value(repr).expect("family serializes")
    }
}

/// The `(k, diagram)` entries of a family document, plus its `semigroup`
/// field when present.
/// A parsed family document: the optional `semigroup` field and the `(k, diagram)` entries.
pub type FamilyDocument = (Option<Vec<u64>>, Vec<(usize, NewtonDiagram)>);

pub fn parse_family_json(v: &serde_json::Value) -> Result<FamilyDocument> {
    let repr = FamilyRepr::deserialize(v).map_err(|e| Error::Json(e.to_string()))?;
    let mut entries = Vec::with_capacity(repr.diagrams.len());
    for e in repr.diagrams {
        let segs = e
            .segments
            .iter()
            .map(|&[l, m]| ElementarySegment::with_extents(l, m))
            .collect::<Result<Vec<_>>>()?;
        entries.push((e.k, NewtonDiagram::from_segments(segs)));
    }
    Ok((repr.semigroup, entries))
}

fn not_family(msg: impl Into<String>) -> Error {
    Error::NotJacobianFamily(msg.into())
}

fn exact_div(a: u64, b: u64, what: &str) -> Result<u64> {
    if b == 0 || !a.is_multiple_of(b) {
        return Err(not_family(format!("{what}: {a}/{b} is not an integer")));
    }
    Ok(a / b)
}

fn integer_inclination(l: u64, m: u64, what: &str) -> Result<u64> {
    exact_div(l, m, what)
}

/// Recovers `⟨b̄₀, …, b̄_g⟩` from `[N_J(f^(0), f), …, N_J(f^(g−1), f)]`.
///
/// `b̄₀` is the smallest inclination of the first diagram and `ι = l_{g−1}` the
/// inclination of the last one, which must be a single segment. Then
/// `b̄_{r+1} = ι H_r / (ι − 1)` where `H_r` is the height of the last segment of
/// diagram `r`, and `b̄_g = L / (ι − 1)` with `L` the length of the last segment
/// of diagram `g − 2`. For `g = 1` the single segment is `{b̄₀(b̄₁−1) \ b̄₁−1}`.
///
/// The family is positional: a truncated family cannot be told apart from a
/// complete one with fewer terms, see [`recover_semigroup_indexed`]. The result
/// is checked by recomputing the family from it.
pub fn recover_semigroup(family: &[NewtonDiagram]) -> Result<Semigroup> {
    if family.is_empty() {
        return Err(not_family("empty family"));
    }
    let mut segs: Vec<Vec<(u64, u64)>> = Vec::with_capacity(family.len());
    for (k, d) in family.iter().enumerate() {
        if d.shift() != (0, 0) {
            return Err(not_family(format!("diagram {k} has a monomial factor")));
        }
        if d.is_point() {
            return Err(not_family(format!("diagram {k} is empty")));
        }
        segs.push(d.segments().iter().map(|s| s.sides().unwrap()).collect());
    }
    let g = family.len();
    let last = &segs[g - 1];
    if last.len() != 1 {
        return Err(not_family(format!(
            "last diagram has {} segments, expected 1",
            last.len()
        )));
    }
    let gens = if g == 1 {
        let (l, m) = last[0];
        vec![integer_inclination(l, m, "inclination")?, m + 1]
    } else {
        let (l0, m0) = segs[0][0];
        let b0 = integer_inclination(l0, m0, "smallest inclination of diagram 0")?;
        let (l, m) = last[0];
        let iota = integer_inclination(l, m, "inclination of the last diagram")?;
        if iota < 2 {
            return Err(not_family("last inclination must be at least 2"));
        }
        let mut gens = vec![b0];
        for (r, d) in segs.iter().enumerate().take(g - 1) {
            let h = d.last().unwrap().1;
            gens.push(exact_div(
                iota.checked_mul(h).ok_or(Error::Overflow("recovery"))?,
                iota - 1,
                &format!("b{}", r + 1),
            )?);
        }
        let big_l = segs[g - 2].last().unwrap().0;
        gens.push(exact_div(big_l, iota - 1, &format!("b{g}"))?);
        gens
    };
    let s = Semigroup::new(gens).map_err(|e| not_family(e.to_string()))?;
    let again = jnd_family(&s)?;
    if again.diagrams != family {
        return Err(not_family(format!(
            "recovered {s} does not reproduce the input family"
        )));
    }
    Ok(s)
}

/// Like [`recover_semigroup`], for entries labelled by `k`. The labels must be
/// exactly `0..g−1`, so a family truncated to its tail (e.g. only `k = 1`) is
/// rejected instead of being read as a shorter family.
pub fn recover_semigroup_indexed(entries: &[(usize, NewtonDiagram)]) -> Result<Semigroup> {
    let mut sorted: Vec<&(usize, NewtonDiagram)> = entries.iter().collect();
    sorted.sort_by_key(|(k, _)| *k);
    for (pos, (k, _)) in sorted.iter().enumerate() {
        if *k != pos {
            return Err(not_family(format!(
                "diagram labels must be exactly k = 0..{}; found k = {k} at position {pos}",
                entries.len().saturating_sub(1)
            )));
        }
    }
    let family: Vec<NewtonDiagram> = sorted.into_iter().map(|(_, d)| d.clone()).collect();
    recover_semigroup(&family)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::branch::random_semigroup;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    fn sg(v: &[u64]) -> Semigroup {
        Semigroup::new(v.to_vec()).unwrap()
    }

    fn d(pairs: &[(u64, u64)]) -> NewtonDiagram {
        NewtonDiagram::from_pairs(pairs).unwrap()
    }

    #[test]
    fn example_two_family() {
        let s = sg(&[4, 6, 13]);
        assert_eq!(jnd_formula(&s, 0).unwrap(), d(&[(8, 2), (13, 3)]));
        assert_eq!(jnd_formula(&s, 1).unwrap(), d(&[(28, 14)]));
        assert_eq!(
            jacobian_invariants(&s, 0).unwrap(),
            vec![Ratio::from_integer(4), Ratio::new(13, 3)]
        );
        assert_eq!(
            jacobian_invariants(&s, 1).unwrap(),
            vec![Ratio::from_integer(2)]
        );
        assert_eq!(
            jnd_family(&sg(&[2, 3])).unwrap().diagrams,
            vec![d(&[(4, 2)])]
        );
        assert_eq!(jnd_formula(&sg(&[6, 8, 27]), 1).unwrap(), d(&[(64, 32)]));
    }

    #[test]
    fn errors() {
        assert_eq!(
            jnd_formula(&Semigroup::smooth(), 0),
            Err(Error::SmoothBranch)
        );
        assert_eq!(
            jnd_formula(&sg(&[2, 3]), 1),
            Err(Error::IndexOutOfRange { k: 1, g: 1 })
        );
    }

    #[test]
    fn collisions() {
        let f = |v: &[u64]| jnd_formula(&sg(v), 1).unwrap();
        assert_eq!(f(&[4, 14, 31]), d(&[(72, 36)]));
        assert_eq!(f(&[4, 6, 35]), d(&[(72, 36)]));
        assert_eq!(f(&[4, 6, 37]), d(&[(76, 38)]));
        assert_eq!(f(&[6, 10, 31]), d(&[(76, 38)]));
        let fams: Vec<_> = [[4, 14, 31], [4, 6, 35], [4, 6, 37], [6, 10, 31]]
            .iter()
            .map(|v| jnd_family(&sg(v)).unwrap().diagrams)
            .collect();
        for i in 0..4 {
            for j in i + 1..4 {
                assert_ne!(fams[i], fams[j]);
            }
        }
    }

    #[test]
    fn recovery() {
        let fam = vec![d(&[(8, 2), (13, 3)]), d(&[(28, 14)])];
        assert_eq!(recover_semigroup(&fam).unwrap(), sg(&[4, 6, 13]));
        assert_eq!(recover_semigroup(&[d(&[(4, 2)])]).unwrap(), sg(&[2, 3]));
        // positional reading of a lone {72\36} is the g = 1 family of ⟨2,37⟩
        assert_eq!(recover_semigroup(&[d(&[(72, 36)])]).unwrap(), sg(&[2, 37]));
        assert!(matches!(
            recover_semigroup_indexed(&[(1, d(&[(72, 36)]))]),
            Err(Error::NotJacobianFamily(_))
        ));
        assert_eq!(
            recover_semigroup_indexed(&[(1, d(&[(28, 14)])), (0, d(&[(8, 2), (13, 3)]))]).unwrap(),
            sg(&[4, 6, 13])
        );
        assert!(recover_semigroup(&[d(&[(8, 2), (13, 3)]), d(&[(29, 14)])]).is_err());
        assert!(recover_semigroup(&[d(&[(9, 2)])]).is_err());
        assert!(recover_semigroup(&[]).is_err());
    }

    #[test]
    fn json_round_trip() {
        let fam = jnd_family(&sg(&[4, 6, 13])).unwrap();
        let j = fam.to_json();
        assert_eq!(
            j.to_string(),
            r#"{"semigroup":[4,6,13],"diagrams":[{"k":0,"segments":[[8,2],[13,3]]},{"k":1,"segments":[[28,14]]}]}"#
        );
        let (s, entries) = parse_family_json(&j).unwrap();
        assert_eq!(s, Some(vec![4, 6, 13]));
        assert_eq!(recover_semigroup_indexed(&entries).unwrap(), fam.semigroup);
    }

    #[test]
    fn random_round_trips_and_shape() {
        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..300 {
            let s = random_semigroup(&mut rng, 5, 10_000, 200);
            let fam = jnd_family(&s).unwrap();
            assert_eq!(recover_semigroup(&fam.diagrams).unwrap(), s);
            for (k, dk) in fam.diagrams.iter().enumerate() {
                assert_eq!(dk.segments().len(), s.g() - k);
                let inc: Vec<_> = dk
                    .inclinations()
                    .iter()
                    .map(|i| i.as_ratio().unwrap())
                    .collect();
                assert_eq!(inc, jacobian_invariants(&s, k).unwrap());
                assert_eq!(inc[0], Ratio::from_integer(s.l(k)));
                let mu_k = approximate_root_semigroup(&s, k).unwrap().milnor();
                assert_eq!(dk.total_height(), mu_k + s.b(k + 1) - 1);
            }
        }
    }
}
