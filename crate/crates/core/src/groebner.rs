//! Buchberger's algorithm for submodules of graded free modules.
//!
//! Ideals are the rank-one case. Pairs are chosen by the normal strategy
//! (smallest lcm degree first) and pruned with the Gebauer–Möller criteria;
//! the product criterion is only applied in rank one, where it is valid.

use std::collections::HashMap;
use std::sync::Arc;

use log::{debug, trace};

use crate::error::{Error, Result};
use crate::polyring::{
    Field, FreeModule, ModuleElement, ModuleOrder, ModuleRef, Monomial, MonomialOrder, Polynomial,
    Ring, RingRef, Term,
};

/// A reduced Gröbner basis: leading terms pairwise non-dividing, monic
/// elements, fully reduced tails, sorted ascending by leading term.
#[derive(Clone, Debug)]
pub struct GroebnerBasis<F: Field> {
    module: ModuleRef<F>,
    elems: Vec<ModuleElement<F>>,
    by_pos: HashMap<usize, Vec<usize>>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BuchbergerStats {
    pub pairs_considered: usize,
    pub pairs_reduced: usize,
    pub zero_reductions: usize,
    pub basis_size: usize,
}

impl<F: Field> GroebnerBasis<F> {
    /// Reduced Gröbner basis of the submodule generated by `gens`.
    pub fn compute(module: &ModuleRef<F>, gens: &[ModuleElement<F>]) -> Result<Self> {
        Ok(Self::compute_with_stats(module, gens)?.0)
    }

    pub fn compute_with_stats(
        module: &ModuleRef<F>,
        gens: &[ModuleElement<F>],
    ) -> Result<(Self, BuchbergerStats)> {
        let mut b = Builder::new(module);
        let mut input: Vec<ModuleElement<F>> = Vec::with_capacity(gens.len());
        for g in gens {
            input.push(g.rebase(module)?);
        }
        // stable: low degree first
        input.sort_by_key(|g| g.degree().unwrap_or(i64::MIN));
        for g in input {
            let h = b.reduce(g.into_terms())?;
            if !h.is_empty() {
                b.insert(h);
            }
        }
        b.run()?;
        let stats = b.stats.clone();
        Ok((b.finish(), stats))
    }

    /// Wraps elements already known to form a reduced basis.
    fn from_reduced(module: &ModuleRef<F>, elems: Vec<ModuleElement<F>>) -> Self {
        let mut by_pos: HashMap<usize, Vec<usize>> = HashMap::new();
        for (k, e) in elems.iter().enumerate() {
            by_pos.entry(e.terms()[0].pos).or_default().push(k);
        }
        GroebnerBasis {
            module: module.clone(),
            elems,
            by_pos,
        }
    }

    pub fn module(&self) -> &ModuleRef<F> {
        &self.module
    }

    pub fn elements(&self) -> &[ModuleElement<F>] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    /// Leading `(monomial, position)` of every element.
    pub fn leading_terms(&self) -> impl Iterator<Item = (&Monomial, usize)> {
        self.elems.iter().map(|e| {
            let t = &e.terms()[0];
            (&t.mono, t.pos)
        })
    }

    /// Remainder of `v` with no term divisible by a leading term of the basis.
    pub fn normal_form(&self, v: &ModuleElement<F>) -> Result<ModuleElement<F>> {
        let v = v.rebase(&self.module)?;
        let terms = reduce_terms(&self.module, v.into_terms(), |t| {
            self.by_pos.get(&t.pos).and_then(|idxs| {
                idxs.iter()
                    .map(|&k| &self.elems[k])
                    .find(|g| g.terms()[0].mono.divides(&t.mono))
                    .map(|g| g.terms())
            })
        })?;
        Ok(ModuleElement::from_sorted_terms(&self.module, terms))
    }

    pub fn contains(&self, v: &ModuleElement<F>) -> Result<bool> {
        Ok(self.normal_form(v)?.is_zero())
    }

    /// `true` when the basis generates the whole ambient module.
    pub fn is_whole_module(&self) -> bool {
        (0..self.module.rank()).all(|i| {
            self.by_pos
                .get(&i)
                .is_some_and(|idxs| idxs.iter().any(|&k| self.elems[k].terms()[0].mono.is_one()))
        })
    }
}

/// Full reduction of a term list. `find` returns the reducer for a term.
fn reduce_terms<'a, F: Field>(
    module: &ModuleRef<F>,
    mut h: Vec<Term<F>>,
    find: impl Fn(&Term<F>) -> Option<&'a [Term<F>]>,
) -> Result<Vec<Term<F>>>
where
    F::Elem: 'a,
{
    let ring = module.ring();
    let field = ring.field();
    let mut rem: Vec<Term<F>> = Vec::new();
    let mut start = 0;
    while start < h.len() {
        let lt = &h[start];
        match find(lt) {
            Some(g) => {
                let q = lt.mono.div(&g[0].mono).expect("reducer divides");
                ring.check_degree(&lt.mono)?;
                let c = field.neg(&field.div(&lt.coeff, &g[0].coeff).expect("monic-ish"));
                h = merge_multiple(module, &h[start..], g, &q, &c);
                start = 0;
            }
            None => {
                rem.push(h[start].clone());
                start += 1;
            }
        }
    }
    Ok(rem)
}

/// `a + c·q·b` for sorted term lists.
fn merge_multiple<F: Field>(
    module: &FreeModule<F>,
    a: &[Term<F>],
    b: &[Term<F>],
    q: &Monomial,
    c: &F::Elem,
) -> Vec<Term<F>> {
    let field = module.ring().field();
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let next_b = |j: usize| Term {
        mono: b[j].mono.mul(q),
        pos: b[j].pos,
        coeff: field.mul(&b[j].coeff, c),
    };
    let mut pending: Option<Term<F>> = None;
    while i < a.len() && j < b.len() {
        let bt = pending.take().unwrap_or_else(|| next_b(j));
        match module.cmp_term((&a[i].mono, a[i].pos), (&bt.mono, bt.pos)) {
            std::cmp::Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
                pending = Some(bt);
            }
            std::cmp::Ordering::Less => {
                out.push(bt);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                let s = field.add(&a[i].coeff, &bt.coeff);
                if !field.is_zero(&s) {
                    out.push(Term {
                        mono: bt.mono,
                        pos: bt.pos,
                        coeff: s,
                    });
                }
                i += 1;
                j += 1;
            }
        }
    }
    if let Some(bt) = pending {
        out.push(bt);
        j += 1;
    }
    out.extend(a[i..].iter().cloned());
    while j < b.len() {
        out.push(next_b(j));
        j += 1;
    }
    out
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    pos: usize,
    degree: i64,
}

struct Builder<F: Field> {
    module: ModuleRef<F>,
    basis: Vec<Vec<Term<F>>>,
    active: Vec<bool>,
    by_pos: HashMap<usize, Vec<usize>>,
    pairs: Vec<Pair>,
    rank_one: bool,
    stats: BuchbergerStats,
}

impl<F: Field> Builder<F> {
    fn new(module: &ModuleRef<F>) -> Self {
        Builder {
            module: module.clone(),
            basis: Vec::new(),
            active: Vec::new(),
            by_pos: HashMap::new(),
            pairs: Vec::new(),
            rank_one: module.rank() == 1,
            stats: BuchbergerStats::default(),
        }
    }

    fn lead(&self, k: usize) -> &Term<F> {
        &self.basis[k][0]
    }

    fn reduce(&self, h: Vec<Term<F>>) -> Result<Vec<Term<F>>> {
        let mut h = reduce_terms(&self.module, h, |t| {
            self.by_pos.get(&t.pos).and_then(|idxs| {
                idxs.iter()
                    .copied()
                    .filter(|&k| self.active[k])
                    .find(|&k| self.basis[k][0].mono.divides(&t.mono))
                    .map(|k| self.basis[k].as_slice())
            })
        })?;
        if let Some(first) = h.first() {
            let field = self.module.ring().field();
            let inv = field.inv(&first.coeff).expect("nonzero");
            for t in &mut h {
                t.coeff = field.mul(&t.coeff, &inv);
            }
        }
        Ok(h)
    }

    /// Adds `h` (reduced, monic) and updates the pair set (Gebauer–Möller).
    fn insert(&mut self, h: Vec<Term<F>>) {
        let k = self.basis.len();
        let (hm, hp) = (h[0].mono.clone(), h[0].pos);
        self.basis.push(h);
        self.active.push(true);

        let candidates: Vec<usize> = self
            .by_pos
            .get(&hp)
            .map(|v| v.iter().copied().filter(|&i| self.active[i]).collect())
            .unwrap_or_default();
        let coprime = |i: usize, s: &Self| s.rank_one && s.lead(i).mono.is_coprime(&hm);
        let lcms: Vec<Monomial> = candidates
            .iter()
            .map(|&i| self.lead(i).mono.lcm(&hm))
            .collect();

        // criterion M/F over the new pairs
        let mut kept: Vec<usize> = Vec::new(); // indexes into candidates
        let mut alive: Vec<bool> = vec![true; candidates.len()];
        for a in 0..candidates.len() {
            alive[a] = false;
            let dominated = !coprime(candidates[a], self)
                && (0..candidates.len())
                    .filter(|&b| alive[b] || kept.contains(&b))
                    .any(|b| lcms[b].divides(&lcms[a]));
            if !dominated {
                kept.push(a);
            }
        }
        let new_pairs: Vec<Pair> = kept
            .into_iter()
            .filter(|&a| !coprime(candidates[a], self))
            .map(|a| Pair {
                i: candidates[a],
                j: k,
                degree: self.module.term_degree(&lcms[a], hp),
                lcm: lcms[a].clone(),
                pos: hp,
            })
            .collect();

        // prune old pairs whose S-vector is covered via h
        let basis = &self.basis;
        self.pairs.retain(|p| {
            if p.pos != hp || !hm.divides(&p.lcm) {
                return true;
            }
            let li = basis[p.i][0].mono.lcm(&hm);
            let lj = basis[p.j][0].mono.lcm(&hm);
            li == p.lcm || lj == p.lcm
        });
        self.pairs.extend(new_pairs);

        // elements whose leading term h divides are no longer needed as reducers
        if let Some(idxs) = self.by_pos.get(&hp) {
            for &i in idxs {
                if self.active[i] && hm.divides(&self.basis[i][0].mono) {
                    self.active[i] = false;
                }
            }
        }
        self.by_pos.entry(hp).or_default().push(k);
    }

    fn pop_pair(&mut self) -> Option<Pair> {
        let best = self
            .pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                a.degree
                    .cmp(&b.degree)
                    .then(a.j.cmp(&b.j))
                    .then(a.i.cmp(&b.i))
            })
            .map(|(idx, _)| idx)?;
        Some(self.pairs.swap_remove(best))
    }

    fn s_vector(&self, p: &Pair) -> Vec<Term<F>> {
        let field = self.module.ring().field();
        let (f, g) = (&self.basis[p.i], &self.basis[p.j]);
        let qf = p.lcm.div(&f[0].mono).expect("lcm");
        let qg = p.lcm.div(&g[0].mono).expect("lcm");
        let cf = field.inv(&f[0].coeff).expect("nonzero");
        let cg = field.neg(&field.inv(&g[0].coeff).expect("nonzero"));
        let scaled_f: Vec<Term<F>> = f
            .iter()
            .map(|t| Term {
                mono: t.mono.mul(&qf),
                pos: t.pos,
                coeff: field.mul(&t.coeff, &cf),
            })
            .collect();
        merge_multiple(&self.module, &scaled_f, g, &qg, &cg)
    }

    fn run(&mut self) -> Result<()> {
        while let Some(p) = self.pop_pair() {
            self.stats.pairs_considered += 1;
            self.module.ring().check_degree(&p.lcm)?;
            let s = self.s_vector(&p);
            let h = self.reduce(s)?;
            self.stats.pairs_reduced += 1;
            if h.is_empty() {
                self.stats.zero_reductions += 1;
                trace!("pair ({}, {}) deg {} -> 0", p.i, p.j, p.degree);
            } else {
                trace!(
                    "pair ({}, {}) deg {} -> new element #{} ({} terms)",
                    p.i,
                    p.j,
                    p.degree,
                    self.basis.len(),
                    h.len()
                );
                self.insert(h);
            }
        }
        Ok(())
    }

    fn finish(mut self) -> GroebnerBasis<F> {
        let module = self.module.clone();
        // minimal basis: active elements are pairwise non-dividing
        let mut keep: Vec<usize> = (0..self.basis.len()).filter(|&k| self.active[k]).collect();
        keep.sort_by(|&a, &b| {
            module.cmp_term(
                (&self.basis[a][0].mono, self.basis[a][0].pos),
                (&self.basis[b][0].mono, self.basis[b][0].pos),
            )
        });
        let leads: Vec<(Monomial, usize)> = keep
            .iter()
            .map(|&k| (self.basis[k][0].mono.clone(), self.basis[k][0].pos))
            .collect();
        let mut reduced: Vec<ModuleElement<F>> = Vec::with_capacity(keep.len());
        let snapshot: Vec<Vec<Term<F>>> = keep
            .iter()
            .map(|&k| std::mem::take(&mut self.basis[k]))
            .collect();
        for (a, terms) in snapshot.iter().enumerate() {
            let head = terms[0].clone();
            let tail = terms[1..].to_vec();
            let tail = reduce_terms(&module, tail, |t| {
                leads
                    .iter()
                    .enumerate()
                    .find(|(b, (m, p))| *b != a && *p == t.pos && m.divides(&t.mono))
                    .map(|(b, _)| snapshot[b].as_slice())
            })
            .expect("tail reduction stays below the leading term");
            let mut all = Vec::with_capacity(tail.len() + 1);
            all.push(head);
            all.extend(tail);
            reduced.push(ModuleElement::from_sorted_terms(&module, all));
        }
        self.stats.basis_size = reduced.len();
        debug!(
            "groebner: {} pairs, {} zero reductions, basis size {}",
            self.stats.pairs_considered, self.stats.zero_reductions, self.stats.basis_size
        );
        GroebnerBasis::from_reduced(&module, reduced)
    }
}

/// S-vector of two module elements, `None` if their leading positions differ.
pub fn s_vector<F: Field>(f: &ModuleElement<F>, g: &ModuleElement<F>) -> Option<ModuleElement<F>> {
    let (a, b) = (f.leading_term()?, g.leading_term()?);
    if a.pos != b.pos {
        return None;
    }
    let field = f.ring().field();
    let l = a.mono.lcm(&b.mono);
    let fa = f.mul_term(&l.div(&a.mono)?, &field.inv(&a.coeff)?);
    let gb = g.mul_term(&l.div(&b.mono)?, &field.inv(&b.coeff)?);
    fa.checked_sub(&gb).ok()
}

/// The rank-one module used to treat polynomials as vectors.
pub fn ideal_module<F: Field>(ring: &RingRef<F>) -> ModuleRef<F> {
    FreeModule::new(ring, 1).into_ref()
}

pub fn poly_to_vector<F: Field>(module: &ModuleRef<F>, p: &Polynomial<F>) -> ModuleElement<F> {
    ModuleElement::from_components(module, std::slice::from_ref(p)).expect("rank one")
}

/// Reduced Gröbner basis of a polynomial ideal.
pub fn ideal_basis<F: Field>(
    ring: &RingRef<F>,
    gens: &[Polynomial<F>],
) -> Result<Vec<Polynomial<F>>> {
    let m = ideal_module(ring);
    let vs: Vec<_> = gens.iter().map(|p| poly_to_vector(&m, p)).collect();
    let gb = GroebnerBasis::compute(&m, &vs)?;
    Ok(gb.elements().iter().map(|e| e.component(0)).collect())
}

/// Generators of the syzygy module of `gens` inside `R^m`, where position `j`
/// carries the shift `deg gens[j]` (zero for the zero vector).
///
/// Computed as the part of a Gröbner basis of `{(g_j, e_j)}` in `F ⊕ R^m`
/// that lies in `0 ⊕ R^m`, under an order eliminating `F`.
pub fn syzygies<F: Field>(
    ambient: &ModuleRef<F>,
    gens: &[ModuleElement<F>],
) -> Result<(ModuleRef<F>, Vec<ModuleElement<F>>)> {
    let shifts: Vec<i32> = gens
        .iter()
        .map(|g| g.degree().unwrap_or(0) as i32)
        .collect();
    syzygies_with_shifts(ambient, gens, shifts)
}

pub fn syzygies_with_shifts<F: Field>(
    ambient: &ModuleRef<F>,
    gens: &[ModuleElement<F>],
    shifts: Vec<i32>,
) -> Result<(ModuleRef<F>, Vec<ModuleElement<F>>)> {
    let r = ambient.rank();
    let m = gens.len();
    let target = FreeModule::with_shifts(ambient.ring(), shifts).into_ref();
    if m == 0 {
        return Ok((target, Vec::new()));
    }
    let big = ambient
        .direct_sum(&target, ModuleOrder::Blocked(r))
        .into_ref();
    let mut lifted = Vec::with_capacity(m);
    for (j, g) in gens.iter().enumerate() {
        let g = g.rebase(ambient)?;
        let mut terms: Vec<Term<F>> = g.terms().to_vec();
        terms.push(Term {
            mono: Monomial::one(ambient.ring().nvars()),
            pos: r + j,
            coeff: ambient.ring().field().one(),
        });
        lifted.push(ModuleElement::from_terms(&big, terms));
    }
    let gb = GroebnerBasis::compute(&big, &lifted)?;
    let syz = gb
        .elements()
        .iter()
        .filter(|e| e.terms()[0].pos >= r)
        .map(|e| e.restrict_positions(&target, r..r + m))
        .collect();
    Ok((target, syz))
}

/// Generators of `(ideal) ∩ k[variables outside block]`, returned in the
/// original ring. Internally reorders the variables so the block comes first
/// and uses a block elimination order.
pub fn eliminate<F: Field>(
    ring: &RingRef<F>,
    gens: &[Polynomial<F>],
    block: &[usize],
) -> Result<Vec<Polynomial<F>>> {
    let n = ring.nvars();
    if block.iter().any(|&v| v >= n) {
        return Err(Error::InvalidArgument("block variable out of range".into()));
    }
    if block.is_empty() {
        return ideal_basis(ring, gens);
    }
    let mut perm: Vec<usize> = block.to_vec();
    perm.sort_unstable();
    perm.dedup();
    let k = perm.len();
    perm.extend((0..n).filter(|v| !block.contains(v)));
    let names = perm.iter().map(|&v| ring.names()[v].clone()).collect();
    let weights = perm.iter().map(|&v| ring.weights()[v]).collect();
    let elim_ring: RingRef<F> = Arc::new(
        Ring::with_weights(
            ring.field().clone(),
            names,
            weights,
            MonomialOrder::BlockElim(k),
        )?
        .with_max_degree(ring.max_degree()),
    );
    let forward: Vec<Option<usize>> = (0..n).map(|v| perm.iter().position(|&p| p == v)).collect();
    let back: Vec<Option<usize>> = perm.iter().map(|&v| Some(v)).collect();
    let moved: Vec<Polynomial<F>> = gens
        .iter()
        .map(|g| g.embed(&elim_ring, &forward))
        .collect::<Result<_>>()?;
    let basis = ideal_basis(&elim_ring, &moved)?;
    basis
        .iter()
        .filter(|p| {
            p.terms()
                .iter()
                .all(|(m, _)| m.exponents()[..k].iter().all(|&e| e == 0))
        })
        .map(|p| p.embed(ring, &back).map(|q| q.monic()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{parse_polynomial, PrimeField};

    fn ring(names: &[&str]) -> RingRef<PrimeField> {
        Ring::new(
            PrimeField::default(),
            names.iter().map(|s| s.to_string()).collect(),
            MonomialOrder::Grevlex,
        )
        .unwrap()
        .into_ref()
    }

    fn polys(r: &RingRef<PrimeField>, s: &[&str]) -> Vec<Polynomial<PrimeField>> {
        s.iter().map(|t| parse_polynomial(r, t).unwrap()).collect()
    }

    fn vecs(m: &ModuleRef<PrimeField>, rows: &[&[&str]]) -> Vec<ModuleElement<PrimeField>> {
        rows.iter()
            .map(|row| ModuleElement::from_components(m, &polys(m.ring(), row)).unwrap())
            .collect()
    }

    #[test]
    fn monomial_ideal_is_its_own_basis() {
        let r = ring(&["x", "y"]);
        let b = ideal_basis(&r, &polys(&r, &["x^2", "x*y"])).unwrap();
        let shown: Vec<String> = b.iter().map(|p| p.to_string()).collect();
        assert_eq!(shown, ["x*y", "x^2"]);
        let b = ideal_basis(&r, &polys(&r, &["y", "x"])).unwrap();
        let shown: Vec<String> = b.iter().map(|p| p.to_string()).collect();
        assert_eq!(shown, ["y", "x"]);
    }

    #[test]
    fn single_generator_module() {
        let r = ring(&["x", "y"]);
        let m = FreeModule::new(&r, 2).into_ref();
        let g = vecs(&m, &[&["3*y", "-3*x"]]);
        let gb = GroebnerBasis::compute(&m, &g).unwrap();
        assert_eq!(gb.len(), 1);
        assert_eq!(gb.elements()[0].to_string(), "(-y, x)");
    }

    #[test]
    fn normal_form_examples() {
        let r = ring(&["x", "y"]);
        let m = ideal_module(&r);
        let gb = GroebnerBasis::compute(&m, &vecs(&m, &[&["x^2"], &["x*y"]])).unwrap();
        let v = vecs(&m, &[&["x^2 + y"]]).remove(0);
        assert_eq!(gb.normal_form(&v).unwrap().to_string(), "(y)");
        let g = vecs(&m, &[&["x*y"]]).remove(0);
        assert!(gb.contains(&g).unwrap());
    }

    #[test]
    fn koszul_syzygy() {
        let r = ring(&["x", "y"]);
        let m = ideal_module(&r);
        let (_, syz) = syzygies(&m, &vecs(&m, &[&["x"], &["y"]])).unwrap();
        assert_eq!(syz.len(), 1);
        let s = syz[0].components();
        // (y, -x) up to sign
        let sum = &(&s[0] * &parse_polynomial(&r, "x").unwrap())
            + &(&s[1] * &parse_polynomial(&r, "y").unwrap());
        assert!(sum.is_zero());
        assert_eq!(s[0].degree(), Some(1));
    }

    #[test]
    fn regular_element_has_no_syzygies() {
        let r = ring(&["x", "y"]);
        let m = ideal_module(&r);
        let (_, syz) = syzygies(&m, &vecs(&m, &[&["x^2 + y^2"]])).unwrap();
        assert!(syz.is_empty());
    }

    #[test]
    fn twisted_cubic_elimination() {
        let r = ring(&["t", "y1", "y2", "y3"]);
        let gens = polys(&r, &["y1 - t", "y2 - t^2", "y3 - t^3"]);
        let out = eliminate(&r, &gens, &[0]).unwrap();
        let basis = ideal_basis(&r, &out).unwrap();
        let m = ideal_module(&r);
        let gb = GroebnerBasis::compute(
            &m,
            &basis
                .iter()
                .map(|p| poly_to_vector(&m, p))
                .collect::<Vec<_>>(),
        )
        .unwrap();
        for expected in ["y1^2 - y2", "y1*y2 - y3"] {
            let p = parse_polynomial(&r, expected).unwrap();
            assert!(gb.contains(&poly_to_vector(&m, &p)).unwrap(), "{expected}");
        }
        for p in &out {
            assert!(p.terms().iter().all(|(mono, _)| mono.exponents()[0] == 0));
        }
    }

    #[test]
    fn degree_guard_trips() {
        let r: RingRef<PrimeField> = Arc::new(
            Ring::new(
                PrimeField::default(),
                vec!["x".into(), "y".into()],
                MonomialOrder::Grevlex,
            )
            .unwrap()
            .with_max_degree(4),
        );
        let m = ideal_module(&r);
        let gens = vecs(&m, &[&["x^3 + y^3"], &["x^2*y + y^3"]]);
        assert!(matches!(
            GroebnerBasis::compute(&m, &gens),
            Err(Error::DegreeBound { .. })
        ));
    }
}
