use proptest::prelude::*;

use quadric_cli::dsl::{parse, Source};
use quadric_core::presentation::{CentralElement, Relation};
use quadric_core::Scalar;

fn scalar() -> impl Strategy<Value = Scalar> {
    (-3i64..=3, -3i64..=3, 1i64..=4).prop_map(|(re, im, d)| &Scalar::gaussian(re, im) * &Scalar::ratio(1, d))
}

fn source() -> impl Strategy<Value = Source> {
    (1usize..=3, any::<bool>())
        .prop_flat_map(|(n, z2)| {
            let rel = (prop::collection::vec(scalar(), n * n), scalar()).prop_map(move |(quadratic, c)| Relation {
                quadratic,
                constant: if z2 { c } else { Scalar::from(0) },
            });
            let central = prop::option::of(prop::collection::vec(scalar(), n * n));
            let witness = prop::collection::vec((prop::collection::vec(scalar(), n), prop::collection::vec(scalar(), n)), 0..=2);
            (Just(n), Just(z2), prop::collection::vec(rel, 0..=3), central, witness)
        })
        .prop_map(|(n, z2, relations, central, witness)| Source {
            generators: ["x", "y", "z"][..n].iter().map(|s| s.to_string()).collect(),
            relations: relations
                .into_iter()
                .filter(|r| r.constant != Scalar::from(0) || r.quadratic.iter().any(|c| *c != Scalar::from(0)))
                .collect(),
            central: central.map(|lift| CentralElement::new("f", lift)),
            z2,
            witness,
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn printed_text_is_a_fixed_point(src in source()) {
        let once = parse(&src.to_string()).unwrap();
        let text = once.to_string();
        let twice = parse(&text).unwrap();
        prop_assert_eq!(twice.to_string(), text);
        prop_assert_eq!(&twice, &once);
    }
}
