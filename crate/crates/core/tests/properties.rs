//! Property tests over randomized parameters; the unit tests pin the
//! known values, these sweep the invariants.

use proptest::prelude::*;

use tower_core::census::{minus_one_pivot_count, minus_one_total};
use tower_core::genus::{
    different_degree_closed, different_degree_sum, genus_closed, genus_hurwitz,
};
use tower_core::oracle::{path_census, ConstantField, OracleConfig};
use tower_core::pyramid::{pyramid, PlaceChain};
use tower_core::{FieldCtx, Int, Tower, TowerKind};

fn small_field() -> impl Strategy<Value = FieldCtx> {
    prop_oneof![
        Just((2u64, 1u32)),
        Just((2, 2)),
        Just((2, 3)),
        Just((2, 4)),
        Just((3, 1)),
        Just((3, 2)),
        Just((5, 1)),
        Just((5, 2)),
        Just((7, 1)),
        Just((7, 2)),
    ]
    .prop_map(|(p, k)| FieldCtx::new(p, k).unwrap())
}

fn gst2_q() -> impl Strategy<Value = u64> {
    prop_oneof![Just(3u64), Just(4), Just(5), Just(7), Just(8), Just(9)]
}

proptest! {
    #[test]
    fn field_axioms(ctx in small_field(), ai in 0u64..169, bi in 0u64..169, ci in 0u64..169) {
        let q = ctx.order();
        let (a, b, c) = (ctx.element(ai % q), ctx.element(bi % q), ctx.element(ci % q));
        prop_assert_eq!(ctx.add(&a, &b), ctx.add(&b, &a));
        prop_assert_eq!(ctx.mul(&a, &b), ctx.mul(&b, &a));
        prop_assert_eq!(
            ctx.mul(&a, &ctx.mul(&b, &c)),
            ctx.mul(&ctx.mul(&a, &b), &c)
        );
        prop_assert_eq!(
            ctx.mul(&a, &ctx.add(&b, &c)),
            ctx.add(&ctx.mul(&a, &b), &ctx.mul(&a, &c))
        );
        prop_assert_eq!(ctx.add(&a, &ctx.neg(&a)), ctx.zero());
        if !a.is_zero() {
            prop_assert_eq!(ctx.mul(&a, &ctx.inv(&a).unwrap()), ctx.one());
        }
    }

    #[test]
    fn frobenius_is_a_homomorphism(ctx in small_field(), ai in 0u64..169, bi in 0u64..169) {
        let q = ctx.order();
        let (a, b) = (ctx.element(ai % q), ctx.element(bi % q));
        prop_assert_eq!(
            ctx.frobenius(&ctx.add(&a, &b)),
            ctx.add(&ctx.frobenius(&a), &ctx.frobenius(&b))
        );
        prop_assert_eq!(
            ctx.frobenius(&ctx.mul(&a, &b)),
            ctx.mul(&ctx.frobenius(&a), &ctx.frobenius(&b))
        );
    }

    #[test]
    fn root_count_matches_exhaustion(ctx in small_field(), ci in 0u64..169, m in 1u64..12) {
        let q = ctx.order();
        let c = ctx.element(ci % q);
        let predicted = ctx.root_count(&c, m);
        let actual = ctx.roots_of(&c, m).len() as u64;
        prop_assert_eq!(predicted, actual);
    }

    #[test]
    fn different_degree_identity_wide(q in gst2_q(), n in 0u64..60) {
        let s: Int = different_degree_sum(q, n).unwrap();
        let c: Int = different_degree_closed(q, n).unwrap();
        prop_assert_eq!(s, c);
    }

    #[test]
    fn scalar_routes_agree(q in gst2_q(), n in 0u64..13) {
        let big: Int = genus_closed(q, n).unwrap();
        let narrow: i128 = genus_closed(q, n).unwrap();
        prop_assert_eq!(big.clone(), Int::from(narrow));
        let h: Int = genus_hurwitz(q, n).unwrap();
        prop_assert_eq!(h, big);
    }

    #[test]
    fn pivot_rows_reconcile(q in prop_oneof![Just(3u64), Just(5), Just(7), Just(9)], n in 1u64..=10) {
        let mut sum = Int::from(1);
        for m in 1..=n {
            sum += minus_one_pivot_count::<Int>(q, n, m).unwrap();
        }
        prop_assert_eq!(sum, minus_one_total::<Int>(q, n).unwrap());
    }

    #[test]
    fn abhyankar_identity_on_stratum_chains(
        q in prop_oneof![Just(3u64), Just(5)],
        t in 0usize..3,
        n in 2usize..7,
    ) {
        prop_assume!(t + 1 < n);
        let tower = Tower::new(TowerKind::Gst2, q, None).unwrap();
        let ctx = tower.ctx();
        let mut vals = vec![ctx.from_int(-1); t + 1];
        vals.push(ctx.one());
        while vals.len() <= n {
            vals.push(ctx.zero());
        }
        let chain = PlaceChain::from_fes(vals);
        let pyr = pyramid(&tower, &chain).unwrap();
        for span in 2..=n {
            for i in 0..=(n - span) {
                let j = i + span;
                let a = pyr.l(i, j - 1);
                let b = pyr.r(i + 1, j);
                let lcm = num_integer::lcm(a, b);
                prop_assert_eq!(pyr.r(i, j) * a, lcm);
                prop_assert_eq!(pyr.l(i, j) * b, lcm);
            }
        }
    }

    #[test]
    fn census_partition_invariance(
        q in prop_oneof![Just(3u64), Just(4), Just(5)],
        n in 1u64..=4,
        workers in 1usize..9,
    ) {
        let tower = Tower::new(TowerKind::Gst2, q, None).unwrap();
        let serial = path_census(&tower, n, ConstantField::Quadratic, &OracleConfig::default()).unwrap();
        let cfg = OracleConfig { workers, ..OracleConfig::default() };
        let parallel = path_census(&tower, n, ConstantField::Quadratic, &cfg).unwrap();
        prop_assert_eq!(serial, parallel);
    }
}
