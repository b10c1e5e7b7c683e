mod common;

use common::*;
use proptest::prelude::*;
use rees_core::groebner::{s_vector, syzygies};
use rees_core::{FreeModule, GroebnerBasis, ModuleElement, ModuleOrder};

fn vectors(
    r: &rees_core::RingRef<P>,
    rank: usize,
    order: ModuleOrder,
    raw: &[Vec<RawPoly>],
) -> (rees_core::ModuleRef<P>, Vec<ModuleElement<P>>) {
    let amb = FreeModule::new(r, rank).with_order(order).into_ref();
    let gens = raw
        .iter()
        .map(|col| {
            let comps: Vec<_> = col.iter().map(|p| build(r, p)).collect();
            ModuleElement::from_components(&amb, &comps).unwrap()
        })
        .collect();
    (amb, gens)
}

fn arb_input() -> impl Strategy<Value = (usize, usize, usize, Vec<Vec<RawPoly>>)> {
    (1usize..=3, 1usize..=2, 0usize..3).prop_flat_map(|(d, e, order)| {
        (
            Just(d),
            Just(e),
            Just(order),
            prop::collection::vec(prop::collection::vec(arb_poly(d, 3, 3), e), 1..=4),
        )
    })
}

fn order_of(k: usize) -> ModuleOrder {
    [ModuleOrder::Top, ModuleOrder::Pot, ModuleOrder::Blocked(1)][k]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(250))]

    #[test]
    fn bases_satisfy_buchberger_criterion((d, e, ord, raw) in arb_input()) {
        let r = ring(d);
        let (amb, gens) = vectors(&r, e, order_of(ord), &raw);
        let gb = GroebnerBasis::compute(&amb, &gens).unwrap();
        let elems = gb.elements();
        for i in 0..elems.len() {
            for j in i + 1..elems.len() {
                if let Some(s) = s_vector(&elems[i], &elems[j]) {
                    prop_assert!(gb.normal_form(&s).unwrap().is_zero());
                }
            }
        }
        for g in &gens {
            prop_assert!(gb.contains(g).unwrap());
        }
    }

    #[test]
    fn normal_form_is_idempotent_and_reduced((d, e, ord, raw) in arb_input(), extra in arb_poly(3, 4, 5)) {
        let r = ring(d);
        let (amb, gens) = vectors(&r, e, order_of(ord), &raw);
        let gb = GroebnerBasis::compute(&amb, &gens).unwrap();
        let extra: RawPoly = extra.into_iter().map(|(ex, c)| (ex[..d].to_vec(), c)).collect();
        let v = ModuleElement::from_components(&amb, &vec![build(&r, &extra); e]).unwrap();
        let nf = gb.normal_form(&v).unwrap();
        prop_assert_eq!(gb.normal_form(&nf).unwrap(), nf.clone());
        prop_assert!(gb.contains(&v.checked_sub(&nf).unwrap()).unwrap());
        for t in nf.terms() {
            for (lm, pos) in gb.leading_terms() {
                prop_assert!(!(pos == t.pos && lm.divides(&t.mono)));
            }
        }
    }

    #[test]
    fn combinations_of_generators_are_members((d, e, ord, raw) in arb_input(), mult in prop::collection::vec(arb_poly(3, 2, 2), 4)) {
        let r = ring(d);
        let (amb, gens) = vectors(&r, e, order_of(ord), &raw);
        let gb = GroebnerBasis::compute(&amb, &gens).unwrap();
        let mut acc = ModuleElement::zero(&amb);
        for (g, m) in gens.iter().zip(&mult) {
            let m: RawPoly = m.iter().map(|(ex, c)| (ex[..d].to_vec(), *c)).collect();
            acc = acc.checked_add(&g.mul_poly(&build(&r, &m)).unwrap()).unwrap();
        }
        prop_assert!(gb.contains(&acc).unwrap());
    }

    #[test]
    fn syzygies_annihilate_generators((d, e, _ord, raw) in arb_input()) {
        let r = ring(d);
        let (amb, gens) = vectors(&r, e, ModuleOrder::Top, &raw);
        let (_, syz) = syzygies(&amb, &gens).unwrap();
        for s in &syz {
            let mut acc = ModuleElement::zero(&amb);
            for (k, g) in gens.iter().enumerate() {
                acc = acc.checked_add(&g.mul_poly(&s.component(k)).unwrap()).unwrap();
            }
            prop_assert!(acc.is_zero());
        }
    }
}
