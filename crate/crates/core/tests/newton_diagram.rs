use branchjac::{
    parse_poly, ElementarySegment, Error, Extent, Inclination, NewtonDiagram, RenderFormat,
};
use proptest::prelude::*;

fn d(pairs: &[(u64, u64)]) -> NewtonDiagram {
    NewtonDiagram::from_pairs(pairs).unwrap()
}

#[test]
fn sum_of_example_segments() {
    let s = d(&[(8, 2)]).minkowski_sum(&d(&[(13, 3)]));
    assert_eq!(s.vertices(), vec![(0, 5), (8, 3), (21, 0)]);
    assert_eq!(s.notation(), "{8\\2} + {13\\3}");
    assert_eq!(
        s.inclinations(),
        vec![Inclination::from_integer(4), Inclination::ratio(13, 3)]
    );
}

#[test]
fn difference_identity_and_failure() {
    let a = d(&[(12, 3), (26, 6)]);
    let b = d(&[(4, 1), (13, 3)]);
    assert_eq!(a.difference(&b).unwrap(), d(&[(8, 2), (13, 3)]));
    assert!(matches!(
        d(&[(8, 2)]).difference(&d(&[(13, 3)])),
        Err(Error::DifferenceNotRepresentable(_))
    ));
}

#[test]
fn diagram_of_polynomial() {
    let f = parse_poly("(y^2-x^3)^2-x^5*y").unwrap();
    assert_eq!(f.newton_diagram().unwrap(), d(&[(6, 4)]));
    let j = parse_poly("243*x^8*(y^2-2*x^3)").unwrap();
    let nd = j.newton_diagram().unwrap();
    assert_eq!(nd.shift(), (8, 0));
    assert_eq!(nd.segments(), &[ElementarySegment::new(3, 2).unwrap()]);
    assert_eq!(
        nd.canonical_decomposition()[0],
        ElementarySegment::with_extents(Extent::Finite(8), Extent::Infinite).unwrap()
    );
}

#[test]
fn json_and_rendering() {
    let s = d(&[(8, 2), (13, 3)]);
    let v = s.to_json();
    assert_eq!(
        v.to_string(),
        r#"{"shift":[0,0],"segments":[[8,2],[13,3]]}"#
    );
    assert_eq!(NewtonDiagram::from_json(&v).unwrap(), s);
    let svg = s.render(RenderFormat::Svg);
    assert!(svg.contains("</svg>"));
    assert!(svg.contains("13/3"));
    assert!(!s.render(RenderFormat::Ascii).is_empty());
}

fn arb_pairs() -> impl Strategy<Value = Vec<(u64, u64)>> {
    prop::collection::vec((1u64..30, 1u64..30), 0..6)
}

fn arb_support() -> impl Strategy<Value = Vec<(u64, u64)>> {
    prop::collection::vec((0u64..25, 0u64..25), 1..12)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn canonical_form_is_strictly_increasing(pts in arb_support()) {
        let nd = NewtonDiagram::from_support(&pts).unwrap();
        let inc = nd.inclinations();
        prop_assert!(inc.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn sum_then_difference(a in arb_pairs(), b in arb_pairs()) {
        let (da, db) = (d(&a), d(&b));
        let s = da.minkowski_sum(&db);
        prop_assert_eq!(s.clone(), db.minkowski_sum(&da));
        prop_assert_eq!(s.difference(&db).unwrap(), da);
        prop_assert_eq!(s.total_length(), d(&a).total_length() + d(&b).total_length());
    }

    #[test]
    fn support_of_product_diagram_is_sum(a in arb_support(), b in arb_support()) {
        let da = NewtonDiagram::from_support(&a).unwrap();
        let db = NewtonDiagram::from_support(&b).unwrap();
        let prod: Vec<(u64, u64)> = a.iter()
            .flat_map(|&(i, j)| b.iter().map(move |&(k, l)| (i + k, j + l)))
            .collect();
        prop_assert_eq!(NewtonDiagram::from_support(&prod).unwrap(), da.minkowski_sum(&db));
    }
}
