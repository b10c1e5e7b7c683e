use std::collections::HashMap;

use super::*;
use crate::polyring::{parse_polynomial, MonomialOrder, PrimeField, Ring};

type P = PrimeField;

fn ring(names: &[&str]) -> RingRef<P> {
    Ring::new(
        PrimeField::default(),
        names.iter().map(|s| s.to_string()).collect(),
        MonomialOrder::Grevlex,
    )
    .unwrap()
    .into_ref()
}

fn ideal(r: &RingRef<P>, gens: &[&str]) -> Submodule<P> {
    let ps: Vec<_> = gens
        .iter()
        .map(|g| parse_polynomial(r, g).unwrap())
        .collect();
    Submodule::ideal(r, &ps).unwrap()
}

fn module(r: &RingRef<P>, rank: usize, rows: &[&[&str]]) -> Submodule<P> {
    let amb = FreeModule::new(r, rank).into_ref();
    let gens = rows
        .iter()
        .map(|row| {
            let comps: Vec<_> = row
                .iter()
                .map(|s| parse_polynomial(r, s).unwrap())
                .collect();
            ModuleElement::from_components(&amb, &comps).unwrap()
        })
        .collect();
    Submodule::new(&amb, gens).unwrap()
}

fn poly(r: &RingRef<P>, s: &str) -> Polynomial<P> {
    parse_polynomial(r, s).unwrap()
}

fn scalar_vec(r: &RingRef<P>, s: &str) -> ModuleElement<P> {
    crate::groebner::poly_to_vector(&crate::groebner::ideal_module(r), &poly(r, s))
}

/// `dim_k (F/M)_k` by linear algebra on the spans of `monomial × generator`,
/// without any Gröbner basis.
fn hilbert_by_linear_algebra(m: &Submodule<P>, k: i64) -> i64 {
    let amb = m.ambient();
    let ring = amb.ring();
    let field = ring.field();
    let n = ring.nvars();
    let mut free_dim = 0i64;
    let mut rows: Vec<ModuleElement<P>> = Vec::new();
    for pos in 0..amb.rank() {
        let target = k - amb.shifts()[pos] as i64;
        if target >= 0 {
            free_dim += monomials_of_degree(n, target as u32).len() as i64;
        }
    }
    for g in m.gens() {
        let dg = g.degree().unwrap();
        if dg > k {
            continue;
        }
        for mono in monomials_of_degree(n, (k - dg) as u32) {
            rows.push(g.mul_term(&mono, &field.one()));
        }
    }
    let mut pivots: HashMap<(Monomial, usize), ModuleElement<P>> = HashMap::new();
    for mut h in rows {
        while let Some(lt) = h.leading_term() {
            let key = (lt.mono.clone(), lt.pos);
            match pivots.get(&key) {
                Some(row) => {
                    let c = field.neg(&field.div(&lt.coeff, &row.terms()[0].coeff).unwrap());
                    h = h.combine(row, Some(&c));
                }
                None => break,
            }
        }
        if let Some(lt) = h.leading_term() {
            pivots.insert((lt.mono.clone(), lt.pos), h.clone());
        }
    }
    free_dim - pivots.len() as i64
}

fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    fn rec(i: usize, n: usize, left: u32, cur: &mut Vec<u16>, out: &mut Vec<Monomial>) {
        if i == n - 1 {
            cur[i] = left as u16;
            out.push(Monomial::from_exponents(cur));
            return;
        }
        for e in 0..=left {
            cur[i] = e as u16;
            rec(i + 1, n, left - e, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    rec(0, n, d, &mut vec![0; n], &mut out);
    out
}

#[test]
fn colon_examples() {
    let r = ring(&["x", "y"]);
    let i = ideal(&r, &["x^2", "x*y"]);
    let c = i.colon(&poly(&r, "x")).unwrap();
    assert!(c.same_submodule(&ideal(&r, &["x", "y"])).unwrap());
    for g in ["x", "y"] {
        let v = scalar_vec(&r, g).mul_poly(&poly(&r, "x")).unwrap();
        assert!(i.contains(&v).unwrap());
    }
    assert!(!i.contains(&scalar_vec(&r, "x")).unwrap());

    assert!(i.colon(&poly(&r, "1")).unwrap().same_submodule(&i).unwrap());
    let x = ideal(&r, &["x"]);
    assert!(x.colon(&poly(&r, "y")).unwrap().same_submodule(&x).unwrap());
    assert!(i.colon(&Polynomial::zero(&r)).is_err());
}

#[test]
fn intersection_examples() {
    let r = ring(&["x", "y"]);
    let meet = ideal(&r, &["x"]).intersect(&ideal(&r, &["y"])).unwrap();
    assert!(meet.same_submodule(&ideal(&r, &["x*y"])).unwrap());
    let i = ideal(&r, &["x^2", "x*y"]);
    assert!(i.intersect(&i).unwrap().same_submodule(&i).unwrap());

    let a = module(&r, 2, &[&["x", "0"]]);
    let b = module(&r, 2, &[&["y", "0"]]);
    let expected = module(&r, 2, &[&["x*y", "0"]]);
    assert!(a.intersect(&b).unwrap().same_submodule(&expected).unwrap());
}

#[test]
fn hilbert_function_examples() {
    let r = ring(&["x", "y"]);
    assert_eq!(
        ideal(&r, &["x", "y"])
            .quotient()
            .hilbert_function(0..=2)
            .unwrap(),
        [1, 0, 0]
    );
    assert_eq!(
        ideal(&r, &["x^2", "x*y"])
            .quotient()
            .hilbert_function(0..=3)
            .unwrap(),
        [1, 2, 1, 1]
    );
    let free = GradedQuotient::free(&FreeModule::new(&r, 2).into_ref());
    assert_eq!(free.hilbert_function(0..=1).unwrap(), [2, 4]);
}

#[test]
fn hilbert_matches_linear_algebra() {
    let r = ring(&["x", "y", "z"]);
    let cases = [
        module(&r, 1, &[&["x^2 - y*z"], &["x*y + z^2"]]),
        module(&r, 2, &[&["x", "y"], &["y^2", "z^2"], &["0", "x*z"]]),
        module(&r, 2, &[&["x*y", "z^2"], &["x^2 + y^2", "0"]]),
        module(&r, 1, &[&["x*y"], &["y*z"], &["x*z"]]),
    ];
    for m in &cases {
        let hs = m.quotient().hilbert_series().unwrap();
        for k in 0..=6 {
            assert_eq!(
                hs.coefficient(k),
                hilbert_by_linear_algebra(m, k),
                "{m:?} degree {k}"
            );
        }
    }
}

#[test]
fn dimension_and_height() {
    let r = ring(&["x", "y"]);
    let m = ideal(&r, &["x", "y"]);
    assert_eq!(m.quotient().krull_dim().unwrap(), 0);
    assert_eq!(height(&m).unwrap(), ExtendedNat::Finite(2));
    assert_eq!(ideal(&r, &["x"]).quotient().krull_dim().unwrap(), 1);
    let i = ideal(&r, &["x^2", "x*y"]);
    assert_eq!(height(&i).unwrap(), ExtendedNat::Finite(1));
    assert_eq!(height(&ideal(&r, &["1"])).unwrap(), ExtendedNat::Infinite);
    assert_eq!(
        height(&Submodule::zero(m.ambient())).unwrap(),
        ExtendedNat::Finite(0)
    );
    assert_eq!(ideal(&r, &["1"]).quotient().krull_dim().unwrap(), -1);
}

#[test]
fn series_dimension_agrees_with_combinatorics() {
    let r = ring(&["x", "y", "z"]);
    for gens in [
        &["x*y", "y*z", "x*z"][..],
        &["x^2", "y^3"],
        &["x*y*z"],
        &["x", "y", "z"],
        &["x^2 - y*z", "y^2 - x*z"],
    ] {
        let q = ideal(&r, gens).quotient();
        assert_eq!(
            q.krull_dim().unwrap(),
            q.hilbert_series().unwrap().dim(),
            "{gens:?}"
        );
    }
}

#[test]
fn depth_examples() {
    let r = ring(&["x", "y"]);
    assert_eq!(
        ideal(&r, &["x", "y"]).quotient().depth().unwrap(),
        ExtendedNat::Finite(0)
    );
    assert_eq!(
        ideal(&r, &["x"]).quotient().depth().unwrap(),
        ExtendedNat::Finite(1)
    );
    let free = GradedQuotient::free(&FreeModule::new(&r, 2).into_ref());
    assert_eq!(free.depth().unwrap(), ExtendedNat::Finite(2));
    assert_eq!(
        ideal(&r, &["1"]).quotient().depth().unwrap(),
        ExtendedNat::Infinite
    );
    // the ideal (x, y) as a module has depth 1
    assert_eq!(
        ideal(&r, &["x", "y"]).depth().unwrap(),
        ExtendedNat::Finite(1)
    );
}

#[test]
fn resolution_is_a_complex() {
    let r = ring(&["x", "y", "z"]);
    let m = ideal(&r, &["x", "y", "z"]);
    let res = m.quotient().minimal_resolution().unwrap();
    assert_eq!(res.betti_numbers(), [1, 3, 3, 1]);
    for i in 1..res.length() {
        for v in res.map(i) {
            assert!(res.apply(i - 1, v).unwrap().is_zero());
        }
    }
    // every map has entries in the maximal ideal
    for i in 0..res.length() {
        for v in res.map(i) {
            assert!(v.terms().iter().all(|t| !t.mono.is_one()));
        }
    }
}

#[test]
fn pruning_removes_unit_relations() {
    let r = ring(&["x", "y"]);
    let m = module(&r, 2, &[&["1", "0"], &["0", "x"]]);
    let q = m.quotient();
    let pruned = q.prune().unwrap();
    assert_eq!(pruned.ambient().rank(), 1);
    assert_eq!(q.depth().unwrap(), ExtendedNat::Finite(1));
    let shifted = FreeModule::with_shifts(&r, vec![0, 1]).into_ref();
    let gens = [["x", "1"], ["y^2", "y"]]
        .iter()
        .map(|row| {
            let comps: Vec<_> = row.iter().map(|s| poly(&r, s)).collect();
            ModuleElement::from_components(&shifted, &comps).unwrap()
        })
        .collect();
    let tangled = Submodule::new(&shifted, gens).unwrap();
    // R^2 / ((x,1), (y^2,y)) ≅ R / (y^2 - x y)
    assert_eq!(tangled.quotient().depth().unwrap(), ExtendedNat::Finite(1));
    assert_eq!(tangled.quotient().krull_dim().unwrap(), 1);
}

#[test]
fn fitting_examples() {
    let r = ring(&["x", "y"]);
    let m = ideal(&r, &["x", "y"]);
    assert!(fitting_ideal(&m, 1)
        .unwrap()
        .same_submodule(&ideal(&r, &["x", "y"]))
        .unwrap());
    assert!(fitting_ideal(&m, 2).unwrap().is_whole().unwrap());
    assert!(fitting_ideal(&m, 0).unwrap().is_zero());
    let chain: Vec<_> = (0..=2).map(|j| fitting_ideal(&m, j).unwrap()).collect();
    for w in chain.windows(2) {
        assert!(w[1].contains_submodule(&w[0]).unwrap());
    }
}

#[test]
fn rank_examples() {
    let r = ring(&["x", "y"]);
    assert_eq!(
        rank(&module(&r, 2, &[&["x", "0"], &["0", "y"]])).unwrap(),
        2
    );
    assert_eq!(
        rank(&module(&r, 2, &[&["x", "0"], &["y", "0"]])).unwrap(),
        1
    );
    assert_eq!(rank(&ideal(&r, &["x", "y"])).unwrap(), 1);
}

#[test]
fn double_dual_examples() {
    let r = ring(&["x", "y"]);
    assert!(double_dual_free(&ideal(&r, &["x", "y"])).unwrap());
    assert!(double_dual_free(&module(&r, 2, &[&["1", "0"], &["0", "1"]])).unwrap());
    assert!(double_dual_free(&module(&r, 2, &[&["x", "0"], &["y", "0"], &["x", "0"]])).is_err());
    let par = module(&r, 2, &[&["x", "0"], &["y", "x"], &["0", "y"]]);
    assert!(double_dual_free(&par).unwrap());
    // the dual of (x, y) is R, generated in degree -1
    let d = dual(&ideal(&r, &["x", "y"])).unwrap();
    assert_eq!(d.minimal_generators().unwrap().len(), 1);
}

#[test]
fn reflexive_but_not_free() {
    let r = ring(&["x", "y", "z"]);
    let syz = module(
        &r,
        3,
        &[&["y", "-x", "0"], &["z", "0", "-x"], &["0", "z", "-y"]],
    );
    assert_eq!(rank(&syz).unwrap(), 2);
    assert!(double_dual_free(&syz).is_err());
    // the same module projected isomorphically into R^2
    let e = module(&r, 2, &[&["y", "-x"], &["z", "0"], &["0", "z"]]);
    assert_eq!(rank(&e).unwrap(), 2);
    assert!(!double_dual_free(&e).unwrap());
}

#[test]
fn ass_examples() {
    let r = ring(&["x", "y"]);
    let names = r.names().to_vec();
    let a = ideal(&r, &["x^2", "x*y"])
        .quotient()
        .ass_monomial()
        .unwrap();
    assert_eq!(a.render(&names), ["(x)", "(x, y)"]);
    assert!(!a.free_summand);
    let b = ideal(&r, &["x"]).quotient().ass_monomial().unwrap();
    assert_eq!(b.render(&names), ["(x)"]);
    let c = module(&r, 2, &[&["x", "0"]])
        .quotient()
        .ass_monomial()
        .unwrap();
    assert_eq!(c.render(&names), ["(0)", "(x)"]);
    assert!(c.free_summand);
    let bad = ideal(&r, &["x^2 + y^2"]).quotient().ass_monomial();
    assert!(matches!(bad, Err(Error::Unsupported(_))));
}

#[test]
fn maximal_ideal_associated_iff_depth_zero() {
    let r = ring(&["x", "y", "z"]);
    for gens in [
        &["x*y", "y*z", "x*z"][..],
        &["x^2", "x*y"],
        &["x^2", "x*y", "y^3", "z"],
        &["x*y*z"],
        &["x^2", "y^2", "x*y*z"],
    ] {
        let q = ideal(&r, gens).quotient();
        let m_ass = q.ass_monomial().unwrap().contains_maximal(3);
        let depth0 = q.depth().unwrap() == ExtendedNat::Finite(0);
        assert_eq!(m_ass, depth0, "{gens:?}");
    }
}

#[test]
fn minimal_generators_drop_redundancy() {
    let r = ring(&["x", "y"]);
    let m = ideal(&r, &["x", "y", "x + y", "x^2", "x*y"]);
    assert_eq!(m.minimal_generators().unwrap().len(), 2);
    let v = module(
        &r,
        2,
        &[&["x", "y"], &["2*x", "2*y"], &["x^2", "x*y"], &["y", "0"]],
    );
    assert_eq!(v.mu().unwrap(), 2);
}

#[test]
fn minimal_primes() {
    let r = ring(&["x", "y", "z"]);
    let names = r.names().to_vec();
    let gens = ideal(&r, &["x*y", "y*z"])
        .leading_ideals()
        .unwrap()
        .remove(0);
    let primes: Vec<String> = minimal_primes_monomial(&gens, 3)
        .unwrap()
        .iter()
        .map(|p| p.render(&names))
        .collect();
    assert_eq!(primes, ["(x, z)", "(y)"]);
}
