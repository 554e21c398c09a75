use pisom::bicyclic::{BicyclicNF, BicyclicWord, Letter, Strategy as Rewrite};
use proptest::prelude::*;

fn word() -> impl Strategy<Value = BicyclicWord> {
    proptest::collection::vec(prop_oneof![Just(Letter::A), Just(Letter::B)], 0..=24)
        .prop_map(BicyclicWord)
}

#[test]
fn homomorphism_exhaustive() {
    for k in 0..=6 {
        for l in 0..=6 {
            let u = BicyclicNF::new(k, l);
            assert_eq!(BicyclicNF::recognize(&u.embed()), Some(u));
            for m in 0..=6 {
                for n in 0..=6 {
                    let v = BicyclicNF::new(m, n);
                    assert_eq!((u * v).embed(), u.embed().compose(&v.embed()), "{u}·{v}");
                }
            }
        }
    }
}

proptest! {
    #[test]
    fn rewriting_is_confluent(w in word()) {
        let left = w.rewrite(Rewrite::Leftmost);
        let right = w.rewrite(Rewrite::Rightmost);
        prop_assert_eq!(&left, &right);
        prop_assert_eq!(left.as_normal_form(), Some(w.normalize()));
    }

    #[test]
    fn normalize_matches_composition(w in word()) {
        prop_assert_eq!(w.fold_compose(), w.normalize().embed());
    }

    #[test]
    fn print_parse_round_trip(w in word()) {
        prop_assert_eq!(w.to_string().parse::<BicyclicWord>().unwrap(), w);
    }

    #[test]
    fn normal_form_product_associative(a in (0u64..8, 0u64..8), b in (0u64..8, 0u64..8), c in (0u64..8, 0u64..8)) {
        let (a, b, c) = (BicyclicNF::new(a.0, a.1), BicyclicNF::new(b.0, b.1), BicyclicNF::new(c.0, c.1));
        prop_assert_eq!(a * b * c, a * (b * c));
    }
}
