use num_traits::Zero;
use oprd::cli::{parse_presentation, serialize_presentation};
use oprd::exact::ratio;
use oprd::linalg::default_limit;
use oprd::rewrite::{dims, span_dims};
use oprd::series::{is_inverse, lagrange_invert, RationalSeries};
use oprd::suite::random_monomial;
use oprd::tree::{GeneratorSymbol, Kind};
use oprd::veronese::{free_membership, free_membership_brute};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

const CUBIC: [&str; 8] = [
    "a(a(1,2),3)",
    "a(1,a(2,3))",
    "a(b(1,2),3)",
    "a(1,b(2,3))",
    "b(a(1,2),3)",
    "b(1,a(2,3))",
    "b(b(1,2),3)",
    "b(1,b(2,3))",
];

fn presentation(kind: &str, rels: &[Vec<i64>]) -> Option<String> {
    let mut text = format!("operad r\nkind {kind}\ngenerator a arity 2 degree 0\ngenerator b arity 2 degree 0\n");
    let mut any = false;
    for r in rels {
        let terms: Vec<String> = r
            .iter()
            .zip(CUBIC)
            .filter(|(c, _)| **c != 0)
            .map(|(c, m)| format!("{} {} * {m}", if *c < 0 { "-" } else { "+" }, c.abs()))
            .collect();
        if terms.is_empty() {
            continue;
        }
        any = true;
        text.push_str(&format!("relation {}\n", terms.join(" ")));
    }
    any.then_some(text)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn buchberger_agrees_with_linear_algebra(
        rels in proptest::collection::vec(proptest::collection::vec(-2i64..=2, 8), 1..4),
    ) {
        let Some(text) = presentation("nonsymmetric", &rels) else { return Ok(()) };
        let p = parse_presentation(&text).unwrap();
        prop_assert_eq!(dims(&p, 5).unwrap(), span_dims(&p, 5, default_limit()).unwrap());
    }

    #[test]
    fn presentations_round_trip(
        rels in proptest::collection::vec(proptest::collection::vec(-3i64..=3, 8), 1..4),
        shuffle in any::<bool>(),
    ) {
        let Some(text) = presentation(if shuffle { "shuffle" } else { "nonsymmetric" }, &rels) else { return Ok(()) };
        let p = parse_presentation(&text).unwrap();
        prop_assert_eq!(parse_presentation(&serialize_presentation(&p)).unwrap(), p);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn membership_agrees_with_brute_force(seed in any::<u64>(), shuffle in any::<bool>(), d in 1usize..4) {
        let g = vec![GeneratorSymbol::new("m", 2, 0, 1).unwrap()];
        let kind = if shuffle { Kind::Shuffle } else { Kind::Nonsymmetric };
        let t = random_monomial(&mut StdRng::seed_from_u64(seed), &g, kind, 7);
        prop_assert_eq!(free_membership(&t, d), free_membership_brute(&t, d));
    }

    #[test]
    fn lagrange_inverse_composes_to_identity(cs in proptest::collection::vec((-5i64..=5, 1i64..=6), 4)) {
        let mut coeffs = vec![ratio(0, 1), ratio(1, 1)];
        coeffs.extend(cs.iter().map(|&(a, b)| ratio(a, b)));
        let f = RationalSeries::from_coeffs(coeffs);
        let g = lagrange_invert(&f, 9).unwrap();
        prop_assert!(g.coeff(0).is_zero());
        prop_assert!(is_inverse(&f, &g, 9).unwrap());
    }
}
