use pisom::bicyclic::BicyclicNF;
use pisom::noise::{in_gjm, in_gjm_range, NoiseParams};
use pisom::oracle::{reconstruct, required_window, window_compose};
use pisom::relations::{green_d, green_l, green_r, leq};
use pisom::PartialIso;
use proptest::prelude::*;

fn element() -> impl Strategy<Value = PartialIso> {
    (proptest::collection::btree_set(1u64..=12, 0..8), -6i64..=6)
        .prop_filter_map("shift leaves ℕ", |(e, s)| PartialIso::new(e, s).ok())
}

fn params() -> impl Strategy<Value = NoiseParams> {
    (2u64..=6).prop_flat_map(|j| {
        proptest::collection::btree_set(2..=j, 0..=(j as usize - 1))
            .prop_map(move |m| NoiseParams::new(j, m).unwrap())
    })
}

/// Elements of the `[M]` class: a tail `[n)` plus points `n − m` for some `m ∈ M`.
fn member(p: &NoiseParams) -> impl Strategy<Value = PartialIso> {
    let offsets: Vec<u64> = p.m().iter().copied().collect();
    (
        1u64..=14,
        proptest::sample::subsequence(offsets.clone(), 0..=offsets.len()),
        -6i64..=6,
    )
        .prop_filter_map("shift leaves ℕ", |(n, kept, s)| {
            let kept: Vec<u64> = kept.into_iter().filter(|&m| m < n).map(|m| n - m).collect();
            PartialIso::new((1..n).filter(|x| !kept.contains(x)), s).ok()
        })
}

proptest! {
    #[test]
    fn compose_matches_pointwise(g in element(), d in element()) {
        let c = g.compose(&d);
        for x in 1..40 {
            prop_assert_eq!(c.apply(x), g.apply(x).and_then(|y| d.apply(y)));
        }
        let w = required_window(&g, &d);
        prop_assert_eq!(reconstruct(&window_compose(&g, &d, w).unwrap()), Some(c));
    }

    #[test]
    fn associative(a in element(), b in element(), c in element()) {
        prop_assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
    }

    #[test]
    fn inverse_laws(g in element()) {
        let i = g.inverse();
        prop_assert_eq!(g.compose(&i).compose(&g), g.clone());
        prop_assert_eq!(i.compose(&g).compose(&i), i.clone());
        prop_assert_eq!(i.excluded().to_vec(), g.range_excluded());
        prop_assert!(g.compose(&i).is_idempotent());
    }

    #[test]
    fn accessors_agree(g in element()) {
        prop_assert_eq!(g.nr() - g.unr(), g.nd() - g.und());
        prop_assert_ne!(g.noise(), 1);
        prop_assert_eq!(g.und(), (1..).find(|&x| g.in_domain(x)).unwrap());
        prop_assert!((g.nd()..g.nd() + 10).all(|x| g.in_domain(x)));
        prop_assert!(g.nd() == 1 || !g.in_domain(g.nd() - 1));
    }

    #[test]
    fn arrow_is_bicyclic_restriction(g in element()) {
        let a = g.arrow();
        prop_assert!(a.is_bicyclic());
        prop_assert!(leq(&a, &g));
        let nf = BicyclicNF::recognize(&a).unwrap();
        prop_assert_eq!(nf.embed(), a);
    }

    #[test]
    fn green_via_idempotents(g in element(), d in element()) {
        prop_assert_eq!(green_l(&g, &d), g.compose(&g.inverse()) == d.compose(&d.inverse()));
        prop_assert_eq!(green_r(&g, &d), g.inverse().compose(&g) == d.inverse().compose(&d));
        prop_assert!(green_d(&g, &g.compose(&g.inverse()).compose(&g)));
    }

    #[test]
    fn order_by_factorization(g in element(), d in element()) {
        prop_assert_eq!(leq(&g, &d), g == d.compose(&g.inverse().compose(&g)));
    }

    #[test]
    fn offset_sides_agree(g in element(), p in params()) {
        prop_assert_eq!(in_gjm(&g, &p), in_gjm_range(&g, &p));
    }

    #[test]
    fn offset_class_closed((p, g, d) in params().prop_flat_map(|p| (Just(p.clone()), member(&p), member(&p)))) {
        prop_assert!(in_gjm(&g, &p) && in_gjm(&d, &p));
        prop_assert!(in_gjm(&g.compose(&d), &p));
        prop_assert!(in_gjm(&g.inverse(), &p));
    }

    #[test]
    fn powers_add(g in element(), a in -3i64..=3, b in -3i64..=3) {
        prop_assume!(a.signum() == b.signum());
        prop_assert_eq!(g.pow(a).compose(&g.pow(b)), g.pow(a + b));
    }
}
