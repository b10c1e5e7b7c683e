mod common;

use common::*;
use proptest::prelude::*;
use rees_core::{parse_polynomial, Monomial, MonomialOrder, Rationals, Ring};
use std::cmp::Ordering;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn ring_axioms_mod_p(a in arb_poly(3, 3, 5), b in arb_poly(3, 3, 5), c in arb_poly(3, 3, 5)) {
        let r = ring(3);
        let (a, b, c) = (build(&r, &a), build(&r, &b), build(&r, &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &rees_core::Polynomial::one(&r), a.clone());
        prop_assert_eq!(&a + &(-&a), rees_core::Polynomial::zero(&r));
    }

    #[test]
    fn ring_axioms_over_q(a in arb_poly(2, 3, 4), b in arb_poly(2, 3, 4), c in arb_poly(2, 3, 4)) {
        let r = Ring::new(Rationals, vec!["x".into(), "y".into()], MonomialOrder::Grevlex)
            .unwrap()
            .into_ref();
        let (a, b, c) = (build(&r, &a), build(&r, &b), build(&r, &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a - &b, -&(&b - &a));
    }

    #[test]
    fn monomial_orders_are_multiplicative_total_orders(
        a in prop::collection::vec(0u16..4, 3),
        b in prop::collection::vec(0u16..4, 3),
        c in prop::collection::vec(0u16..4, 3),
        which in 0usize..3,
    ) {
        let order = [MonomialOrder::Grevlex, MonomialOrder::Lex, MonomialOrder::BlockElim(1)][which];
        let r = ring_with(3, order);
        let (a, b, c) = (Monomial::from_exponents(&a), Monomial::from_exponents(&b), Monomial::from_exponents(&c));
        let ab = r.cmp_mono(&a, &b);
        prop_assert_eq!(ab, r.cmp_mono(&b, &a).reverse());
        prop_assert_eq!(ab == Ordering::Equal, a == b);
        prop_assert_eq!(r.cmp_mono(&a.mul(&c), &b.mul(&c)), ab);
        prop_assert_ne!(r.cmp_mono(&Monomial::one(3), &a), Ordering::Greater);
        if ab != Ordering::Greater && r.cmp_mono(&b, &c) != Ordering::Greater {
            prop_assert_ne!(r.cmp_mono(&a, &c), Ordering::Greater);
        }
    }

    #[test]
    fn printing_then_parsing_is_identity(a in arb_poly(3, 4, 6)) {
        let r = ring(3);
        let p = build(&r, &a);
        let text = p.to_string();
        let back = parse_polynomial(&r, &text).unwrap();
        prop_assert_eq!(&back, &p);
        prop_assert_eq!(back.to_string(), text);
    }
}

#[test]
fn rational_coefficients_round_trip() {
    let r = Ring::new(
        Rationals,
        vec!["x".into(), "y".into()],
        MonomialOrder::Grevlex,
    )
    .unwrap()
    .into_ref();
    let p = parse_polynomial(&r, "3/4*x^2 - y/2 + 5").unwrap();
    assert_eq!(parse_polynomial(&r, &p.to_string()).unwrap(), p);
}
