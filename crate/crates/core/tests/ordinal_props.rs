mod common;

use proptest::prelude::*;

use common::{ord_expr, ordinal, ordinal_below_omega_omega, ordinal_below_theta_next};
use numerositas::euclid_field::{compare, Comparison};
use numerositas::ordinal::{eval, Ordinal};
use numerositas::setlang::parse_ordinal;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn natural_operations_form_a_commutative_semiring(a in ordinal(), b in ordinal(), c in ordinal()) {
        prop_assert_eq!(a.nat_add(&b), b.nat_add(&a));
        prop_assert_eq!(a.nat_mul(&b), b.nat_mul(&a));
        prop_assert_eq!(a.nat_add(&b).nat_add(&c), a.nat_add(&b.nat_add(&c)));
        prop_assert_eq!(a.nat_mul(&b).nat_mul(&c), a.nat_mul(&b.nat_mul(&c)));
        prop_assert_eq!(a.nat_mul(&b.nat_add(&c)), a.nat_mul(&b).nat_add(&a.nat_mul(&c)));
        prop_assert_eq!(a.nat_add(&Ordinal::zero()), a.clone());
        prop_assert_eq!(a.nat_mul(&Ordinal::one()), a.clone());
    }

    #[test]
    fn standard_operations(a in ordinal(), b in ordinal(), c in ordinal()) {
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert!(a.add(&b) >= b);
        prop_assert!(a.add(&b) <= a.nat_add(&b));
    }

    #[test]
    fn natural_sum_is_strictly_monotone(a in ordinal(), b in ordinal(), t in ordinal()) {
        prop_assume!(a != b);
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        prop_assert!(lo.nat_add(&t) < hi.nat_add(&t));
    }

    #[test]
    fn embedding_is_an_ordered_semiring_map(a in ordinal_below_omega_omega(), b in ordinal_below_omega_omega()) {
        let (x, y) = (a.embed().unwrap(), b.embed().unwrap());
        prop_assert_eq!(a.nat_add(&b).embed().unwrap(), &x + &y);
        prop_assert_eq!(a.nat_mul(&b).embed().unwrap(), x.checked_mul(&y).unwrap());
        let expected = match a.cmp(&b) {
            std::cmp::Ordering::Less => Comparison::Less,
            std::cmp::Ordering::Equal => Comparison::Equal,
            std::cmp::Ordering::Greater => Comparison::Greater,
        };
        prop_assert_eq!(compare(&x, &y), expected);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn theta_base_round_trip(j in 0u32..3, seed in any::<u64>()) {
        let mut runner = common::seeded_runner((seed % 251) as u8);
        let t = common::sample(&ordinal_below_theta_next(j), &mut runner);
        let form = t.to_theta_base(j).unwrap();
        prop_assert_eq!(form.to_ordinal(), t.clone());
        let theta = Ordinal::theta(j);
        for (_, digit) in &form.digits {
            prop_assert!(*digit < theta);
        }
    }

    #[test]
    fn text_form_round_trips(a in ordinal()) {
        let parsed = eval(&parse_ordinal(&a.to_string()).unwrap()).unwrap();
        prop_assert_eq!(parsed, a);
    }

    #[test]
    fn expressions_evaluate_or_refuse(e in ord_expr()) {
        // evaluation either succeeds or reports a size error; it never panics
        if let Ok(v) = eval(&e) {
            prop_assert_eq!(eval(&parse_ordinal(&v.to_string()).unwrap()).unwrap(), v);
        }
    }
}

#[test]
fn non_commutativity_witness() {
    let w = Ordinal::omega();
    let one = Ordinal::one();
    assert_eq!(one.add(&w), w);
    assert_ne!(w.add(&one), w);
    assert_eq!(one.nat_add(&w), w.nat_add(&one));
}

#[test]
fn irreducibles() {
    for j in 0..3 {
        assert!(Ordinal::theta(j).is_irreducible());
    }
    for k in [2u32, 3, 5, 6, 7] {
        assert!(!Ordinal::omega_pow(Ordinal::nat(k)).is_irreducible());
    }
    assert!(!Ordinal::omega_pow(Ordinal::omega().add(&Ordinal::one())).is_irreducible());
}
