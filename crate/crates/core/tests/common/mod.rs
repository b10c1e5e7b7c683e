#![allow(dead_code)]

use proptest::prelude::*;
use rees_core::{
    parse_polynomial, Field, FreeModule, ModuleElement, Monomial, MonomialOrder, Polynomial,
    PrimeField, Ring, RingRef, Submodule,
};

pub type P = PrimeField;

pub const NAMES: [&str; 4] = ["x", "y", "z", "w"];

pub fn ring(n: usize) -> RingRef<P> {
    ring_with(n, MonomialOrder::Grevlex)
}

pub fn ring_with(n: usize, order: MonomialOrder) -> RingRef<P> {
    Ring::new(
        PrimeField::default(),
        NAMES[..n].iter().map(|s| s.to_string()).collect(),
        order,
    )
    .unwrap()
    .into_ref()
}

pub fn poly(r: &RingRef<P>, s: &str) -> Polynomial<P> {
    parse_polynomial(r, s).unwrap()
}

pub fn module(r: &RingRef<P>, rank: usize, rows: &[&[&str]]) -> Submodule<P> {
    let amb = FreeModule::new(r, rank).into_ref();
    let gens = rows
        .iter()
        .map(|row| {
            let comps: Vec<_> = row.iter().map(|s| poly(r, s)).collect();
            ModuleElement::from_components(&amb, &comps).unwrap()
        })
        .collect();
    Submodule::new(&amb, gens).unwrap()
}

/// Raw terms: exponent vectors with small signed coefficients.
pub type RawPoly = Vec<(Vec<u16>, i64)>;

pub fn build<F: Field>(r: &RingRef<F>, raw: &RawPoly) -> Polynomial<F> {
    let f = r.field();
    let terms = raw
        .iter()
        .map(|(e, c)| (Monomial::from_exponents(e), f.from_i64(*c)))
        .collect();
    Polynomial::from_terms(r, terms)
}

/// Arbitrary polynomial with total degree at most `max_deg`.
pub fn arb_poly(nvars: usize, max_deg: u16, max_terms: usize) -> impl Strategy<Value = RawPoly> {
    prop::collection::vec(
        (prop::collection::vec(0..=max_deg, nvars), -5i64..=5),
        0..=max_terms,
    )
    .prop_map(move |terms| {
        terms
            .into_iter()
            .map(|(mut e, c)| {
                while e.iter().sum::<u16>() > max_deg {
                    let k = e.iter().position(|&a| a > 0).unwrap();
                    e[k] -= 1;
                }
                (e, c)
            })
            .collect()
    })
}

/// Homogeneous polynomial of total degree exactly `deg`.
pub fn arb_form(nvars: usize, deg: u16, max_terms: usize) -> impl Strategy<Value = RawPoly> {
    prop::collection::vec(
        (prop::collection::vec(0..=deg, nvars), -5i64..=5),
        1..=max_terms,
    )
    .prop_map(move |terms| {
        terms
            .into_iter()
            .map(|(mut e, c)| {
                while e.iter().sum::<u16>() > deg {
                    let k = e.iter().position(|&a| a > 0).unwrap();
                    e[k] -= 1;
                }
                let s: u16 = e.iter().sum();
                *e.last_mut().unwrap() += deg - s;
                (e, c)
            })
            .collect()
    })
}

/// A column-graded generator of `R^e`: every entry a form of one degree.
pub fn arb_column(nvars: usize, rank: usize, max_deg: u16) -> impl Strategy<Value = Vec<RawPoly>> {
    (1..=max_deg).prop_flat_map(move |deg| {
        prop::collection::vec(
            prop_oneof![1 => Just(Vec::new()), 2 => arb_form(nvars, deg, 2)],
            rank,
        )
    })
}

pub fn build_module(r: &RingRef<P>, rank: usize, cols: &[Vec<RawPoly>]) -> Submodule<P> {
    let amb = FreeModule::new(r, rank).into_ref();
    let gens = cols
        .iter()
        .map(|col| {
            let comps: Vec<_> = col.iter().map(|raw| build(r, raw)).collect();
            ModuleElement::from_components(&amb, &comps).unwrap()
        })
        .collect();
    Submodule::new(&amb, gens).unwrap()
}

/// Monomial generators as exponent vectors.
pub fn arb_monomials(
    nvars: usize,
    max_deg: u16,
    max_gens: usize,
) -> impl Strategy<Value = Vec<Vec<u16>>> {
    prop::collection::vec(prop::collection::vec(0..=max_deg, nvars), 1..=max_gens)
        .prop_filter("no unit generators", |g| {
            g.iter().all(|e| e.iter().any(|&a| a > 0))
        })
}
