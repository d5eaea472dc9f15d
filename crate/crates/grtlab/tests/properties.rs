//! Property tests for the exact Lie-algebra layer.

use proptest::prelude::*;

use grtlab::grt;
use grtlab::lyndon::{lyndon_basis, LyndonWord};
use grtlab::parse::{format_series, parse_series};
use grtlab::rational::rat;
use grtlab::series::{Alphabet, LieSeries};

fn series_strategy(max_degree: usize) -> impl Strategy<Value = LieSeries> {
    let words: Vec<LyndonWord> = (1..=max_degree)
        .flat_map(|d| lyndon_basis(2, d))
        .collect();
    let n = words.len();
    proptest::collection::vec(proptest::option::of((-9i64..=9, 1i64..=9)), n).prop_map(
        move |coeffs| {
            LieSeries::from_terms(
                Alphabet::xy(),
                max_degree,
                words
                    .iter()
                    .cloned()
                    .zip(coeffs)
                    .filter_map(|(w, c)| c.map(|(num, den)| (w, rat(num, den)))),
            )
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bracket_is_antisymmetric(a in series_strategy(6), b in series_strategy(6)) {
        prop_assert_eq!(a.bracket(&b).unwrap(), b.bracket(&a).unwrap().neg());
    }

    #[test]
    fn jacobi_identity_holds(
        a in series_strategy(5),
        b in series_strategy(5),
        c in series_strategy(5),
    ) {
        let cyclic = a
            .bracket(&b.bracket(&c).unwrap())
            .unwrap()
            .add(&b.bracket(&c.bracket(&a).unwrap()).unwrap())
            .unwrap()
            .add(&c.bracket(&a.bracket(&b).unwrap()).unwrap())
            .unwrap();
        prop_assert!(cyclic.is_zero());
    }

    #[test]
    fn bracket_is_bilinear(
        a in series_strategy(5),
        b in series_strategy(5),
        c in series_strategy(5),
        num in -9i64..=9,
        den in 1i64..=9,
    ) {
        let k = rat(num, den);
        let lhs = a.add(&b.scale(&k)).unwrap().bracket(&c).unwrap();
        let rhs = a
            .bracket(&c)
            .unwrap()
            .add(&b.bracket(&c).unwrap().scale(&k))
            .unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn format_parse_round_trip(s in series_strategy(6)) {
        let text = format_series(&s);
        let back = parse_series(&text, &Alphabet::xy(), 6).unwrap();
        prop_assert_eq!(back, s);
    }

    #[test]
    fn projectors_are_complementary(s in series_strategy(6)) {
        let h = grt::hexagon_project(&s).unwrap();
        let a = grt::antihexagon_project(&s).unwrap();
        prop_assert_eq!(h.add(&a).unwrap(), s.clone());
        prop_assert!(grt::hexagon_residual(&h).unwrap().is_zero());
        prop_assert!(grt::antihexagon_residual(&a).unwrap().is_zero());
    }

    #[test]
    fn ihara_bracket_is_antisymmetric(f in series_strategy(5), g in series_strategy(5)) {
        prop_assert_eq!(
            grt::ihara_bracket(&f, &g).unwrap(),
            grt::ihara_bracket(&g, &f).unwrap().neg()
        );
    }
}
