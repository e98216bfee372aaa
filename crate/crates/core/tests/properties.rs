use affine_classes::classcount::{
    affine_recursive, count_sequence, q_value, Characteristic, Family, FamilyKey,
};
use affine_classes::partitions::{
    enum_o_signed, enum_partitions, enum_sp_signed, o_gl, o_gu, Partition,
};
use affine_classes::series::{FactorFamily, Rat, TruncatedSeries};
use proptest::prelude::*;

const MAX_ORDER: usize = 12;

fn rat() -> impl Strategy<Value = Rat> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| Rat::new(n, d))
}

fn series(order: usize) -> impl Strategy<Value = TruncatedSeries<Rat>> {
    prop::collection::vec(rat(), order + 1)
        .prop_map(move |c| TruncatedSeries::from_coeffs(c, order))
}

fn triple() -> impl Strategy<
    Value = (
        TruncatedSeries<Rat>,
        TruncatedSeries<Rat>,
        TruncatedSeries<Rat>,
    ),
> {
    (0..=MAX_ORDER).prop_flat_map(|k| (series(k), series(k), series(k)))
}

fn unit_series() -> impl Strategy<Value = TruncatedSeries<Rat>> {
    (0..=MAX_ORDER, rat().prop_filter("unit", |r| !r.is_zero())).prop_flat_map(|(k, c0)| {
        series(k).prop_map(move |s| {
            let mut c = s.into_coeffs();
            c[0] = c0.clone();
            TruncatedSeries::from_coeffs(c, k)
        })
    })
}

fn family() -> impl Strategy<Value = FactorFamily<Rat>> {
    (rat(), 1u64..=3, 0i64..=2, -3i32..=3)
        .prop_map(|(c, step, offset, power)| FactorFamily::linear(c, step, offset, power))
}

fn key() -> impl Strategy<Value = (FamilyKey, u64)> {
    let families = prop::sample::select(vec![
        Family::AGL,
        Family::AGU,
        Family::ASp,
        Family::AOPlus,
        Family::AOMinus,
        Family::AOSum,
        Family::AODiff,
    ]);
    let q = prop::sample::select(vec![2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27]);
    (families, q).prop_map(|(f, q)| (FamilyKey::new(f, Characteristic::of(q)), q))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ring_axioms((a, b, c) in triple()) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.sub(&a), TruncatedSeries::zero(a.order()));
    }

    #[test]
    fn invert_is_two_sided(a in unit_series()) {
        let inv = a.invert().unwrap();
        let one = TruncatedSeries::one(a.order());
        prop_assert_eq!(a.mul(&inv), one.clone());
        prop_assert_eq!(inv.mul(&a), one);
    }

    #[test]
    fn product_then_inverse_family_is_identity(base in (0..=MAX_ORDER).prop_flat_map(series), fam in family()) {
        let back = base.apply_product(std::slice::from_ref(&fam)).apply_product(&[fam.inverse()]);
        prop_assert_eq!(back, base);
    }

    #[test]
    fn mixed_orders_truncate_to_smaller(a in series(8), b in series(5)) {
        prop_assert_eq!(a.add(&b).order(), 5);
        prop_assert_eq!(a.mul(&b).order(), 5);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn counts_are_nonnegative_integers((key, q) in key(), n in 0usize..=12) {
        let seq = count_sequence(key, &q_value(q).unwrap(), n).unwrap();
        for v in &seq.values {
            prop_assert!(v.is_integer());
            if key.family != Family::AODiff {
                prop_assert!(!v.is_negative());
            }
        }
    }

    #[test]
    fn closed_form_matches_recursion((key, q) in key(), n in 0usize..=12) {
        let qr = q_value(q).unwrap();
        let closed = count_sequence(key, &qr, n).unwrap();
        let rec = affine_recursive(key, &qr, n).unwrap();
        prop_assert_eq!(closed.values, rec.values);
    }

    #[test]
    fn partition_statistics(n in 0u32..=16) {
        for p in enum_partitions(n) {
            prop_assert_eq!(p.size(), n);
            prop_assert!(p.multiplicities().values().all(|&a| a >= 1));
            prop_assert!(o_gl(&p) >= 1);
            let at_one = o_gu(&p, &Rat::one());
            prop_assert_eq!(at_one, Rat::from(1 + p.d() as i64 - p.b() as i64));
            prop_assert_eq!(Partition::from_parts(&p.parts()), p);
        }
    }
}

#[test]
fn partition_counts_match_euler_product() {
    let order = 30;
    let euler =
        TruncatedSeries::<Rat>::product(&[FactorFamily::linear(Rat::from(-1i64), 1, 0, -1)], order);
    for n in 0..=order {
        assert_eq!(
            Rat::from(enum_partitions(n as u32).len() as u64),
            euler.coeffs()[n],
            "n = {n}"
        );
    }
}

#[test]
fn signed_partitions_are_well_formed() {
    for total in 0..=12u32 {
        for s in enum_sp_signed(total) {
            assert_eq!(s.size() % 2, 0);
            let p = s.partition();
            assert!(p
                .multiplicities()
                .iter()
                .all(|(i, a)| i % 2 == 0 || a % 2 == 0));
            let keys: Vec<u32> = p
                .multiplicities()
                .keys()
                .copied()
                .filter(|i| i % 2 == 0)
                .collect();
            assert_eq!(s.signs().keys().copied().collect::<Vec<_>>(), keys);
        }
        for s in enum_o_signed(total) {
            let p = s.partition();
            assert!(p
                .multiplicities()
                .iter()
                .all(|(i, a)| i % 2 == 1 || a % 2 == 0));
            let keys: Vec<u32> = p
                .multiplicities()
                .keys()
                .copied()
                .filter(|i| i % 2 == 1)
                .collect();
            assert_eq!(s.signs().keys().copied().collect::<Vec<_>>(), keys);
        }
    }
}
