use branchjac::{
    jacobian_invariants, jnd_family, jnd_formula, jnd_segments, parse_family_json,
    random_semigroup, recover_semigroup, recover_semigroup_indexed, Error, Inclination,
    NewtonDiagram, Semigroup,
};
use num_rational::Ratio;
use rand::rngs::StdRng;
use rand::SeedableRng;

fn sg(v: &[u64]) -> Semigroup {
    Semigroup::new(v.to_vec()).unwrap()
}

#[test]
fn example_family() {
    let s = sg(&[4, 6, 13]);
    assert_eq!(jnd_segments(&s, 0).unwrap(), vec![(8, 2), (13, 3)]);
    assert_eq!(jnd_segments(&s, 1).unwrap(), vec![(28, 14)]);
    assert_eq!(
        jacobian_invariants(&s, 0).unwrap(),
        vec![Ratio::from_integer(4), Ratio::new(13, 3)]
    );
    let fam = jnd_family(&s).unwrap();
    assert_eq!(
        fam.to_json().to_string(),
        r#"{"semigroup":[4,6,13],"diagrams":[{"k":0,"segments":[[8,2],[13,3]]},{"k":1,"segments":[[28,14]]}]}"#
    );
    assert_eq!(recover_semigroup(&fam.diagrams).unwrap(), s);
}

#[test]
fn errors() {
    let s = sg(&[4, 6, 13]);
    assert_eq!(
        jnd_formula(&s, 2),
        Err(Error::IndexOutOfRange { k: 2, g: 2 })
    );
    assert_eq!(jnd_family(&Semigroup::smooth()), Err(Error::SmoothBranch));
    let tail = vec![(1, NewtonDiagram::from_pairs(&[(72, 36)]).unwrap())];
    assert!(matches!(
        recover_semigroup_indexed(&tail),
        Err(Error::NotJacobianFamily(_))
    ));
    assert!(recover_semigroup(&[]).is_err());
}

#[test]
fn single_pair_branch() {
    let s = sg(&[3, 5]);
    let d = jnd_formula(&s, 0).unwrap();
    assert_eq!(d, NewtonDiagram::from_pairs(&[(12, 4)]).unwrap());
    assert_eq!(recover_semigroup(&[d]).unwrap(), s);
}

#[test]
fn random_family_shape() {
    let mut rng = StdRng::seed_from_u64(99);
    for _ in 0..400 {
        let s = random_semigroup(&mut rng, 5, 10_000, 25);
        let fam = jnd_family(&s).unwrap();
        for (k, d) in fam.diagrams.iter().enumerate() {
            let inc = d.inclinations();
            assert!(inc.windows(2).all(|w| w[0] < w[1]), "{s} k={k}");
            assert_eq!(inc[0], Inclination::from_integer(s.l(k)), "{s} k={k}");
            let inv: Vec<Inclination> = jacobian_invariants(&s, k)
                .unwrap()
                .into_iter()
                .map(|r| Inclination::ratio(*r.numer(), *r.denom()))
                .collect();
            assert_eq!(inc, inv);
        }
        let (gens, entries) = parse_family_json(&fam.to_json()).unwrap();
        assert_eq!(gens.as_deref(), Some(s.gens()));
        assert_eq!(recover_semigroup_indexed(&entries).unwrap(), s);
    }
}
