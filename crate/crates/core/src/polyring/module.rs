use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

use super::field::Field;
use super::monomial::Monomial;
use super::poly::Polynomial;
use super::ring::RingRef;

/// How module terms `m·e_i` are compared.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModuleOrder {
    /// Term over position: compare `deg m + shift_i` (degree orders only),
    /// then the monomial, then the position (lower index is larger).
    Top,
    /// Position over term.
    Pot,
    /// Positions `< k` beat every position `>= k`; TOP inside each block.
    Blocked(usize),
}

/// A graded free module `R(-shift_1) ⊕ ... ⊕ R(-shift_r)`.
#[derive(Clone, PartialEq)]
pub struct FreeModule<F: Field> {
    ring: RingRef<F>,
    shifts: Vec<i32>,
    order: ModuleOrder,
}

pub type ModuleRef<F> = Arc<FreeModule<F>>;

impl<F: Field> FreeModule<F> {
    pub fn new(ring: &RingRef<F>, rank: usize) -> Self {
        FreeModule {
            ring: ring.clone(),
            shifts: vec![0; rank],
            order: ModuleOrder::Top,
        }
    }

    pub fn with_shifts(ring: &RingRef<F>, shifts: Vec<i32>) -> Self {
        FreeModule {
            ring: ring.clone(),
            shifts,
            order: ModuleOrder::Top,
        }
    }

    pub fn with_order(mut self, order: ModuleOrder) -> Self {
        self.order = order;
        self
    }

    pub fn into_ref(self) -> ModuleRef<F> {
        Arc::new(self)
    }

    #[inline]
    pub fn ring(&self) -> &RingRef<F> {
        &self.ring
    }
    #[inline]
    pub fn rank(&self) -> usize {
        self.shifts.len()
    }
    pub fn shifts(&self) -> &[i32] {
        &self.shifts
    }
    pub fn order(&self) -> ModuleOrder {
        self.order
    }

    pub fn same_as(&self, other: &FreeModule<F>) -> bool {
        self == other
    }

    /// Same ring and rank, possibly different shifts or order.
    pub fn compatible(&self, other: &FreeModule<F>) -> bool {
        self.rank() == other.rank()
            && (Arc::ptr_eq(&self.ring, &other.ring) || self.ring.same_as(&other.ring))
    }

    #[inline]
    pub fn term_degree(&self, m: &Monomial, pos: usize) -> i64 {
        self.ring.degree(m) as i64 + self.shifts[pos] as i64
    }

    #[inline]
    pub fn cmp_term(&self, a: (&Monomial, usize), b: (&Monomial, usize)) -> Ordering {
        match self.order {
            ModuleOrder::Top => self.cmp_top(a, b),
            ModuleOrder::Pot => b.1.cmp(&a.1).then_with(|| self.ring.cmp_mono(a.0, b.0)),
            ModuleOrder::Blocked(k) => {
                let (ba, bb) = (a.1 >= k, b.1 >= k);
                bb.cmp(&ba).then_with(|| self.cmp_top(a, b))
            }
        }
    }

    #[inline]
    fn cmp_top(&self, a: (&Monomial, usize), b: (&Monomial, usize)) -> Ordering {
        let by_degree = if self.ring.is_degree_order() {
            self.term_degree(a.0, a.1).cmp(&self.term_degree(b.0, b.1))
        } else {
            Ordering::Equal
        };
        by_degree
            .then_with(|| self.ring.cmp_mono(a.0, b.0))
            .then_with(|| b.1.cmp(&a.1))
    }

    /// `self ⊕ other` with positions of `other` appended.
    pub fn direct_sum(&self, other: &FreeModule<F>, order: ModuleOrder) -> FreeModule<F> {
        let mut shifts = self.shifts.clone();
        shifts.extend_from_slice(&other.shifts);
        FreeModule {
            ring: self.ring.clone(),
            shifts,
            order,
        }
    }
}

impl<F: Field> fmt::Debug for FreeModule<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "FreeModule(rank {}, shifts {:?}, {:?})",
            self.rank(),
            self.shifts,
            self.order
        )
    }
}

/// A single module term `coeff · mono · e_pos`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term<F: Field> {
    pub mono: Monomial,
    pub pos: usize,
    pub coeff: F::Elem,
}

/// An element of a free module, stored as a sorted list of module terms.
#[derive(Clone)]
pub struct ModuleElement<F: Field> {
    module: ModuleRef<F>,
    terms: Vec<Term<F>>,
}

impl<F: Field> PartialEq for ModuleElement<F> {
    fn eq(&self, other: &Self) -> bool {
        self.module.compatible(&other.module) && self.components() == other.components()
    }
}

impl<F: Field> Eq for ModuleElement<F> {}

impl<F: Field> ModuleElement<F> {
    pub fn zero(module: &ModuleRef<F>) -> Self {
        ModuleElement {
            module: module.clone(),
            terms: Vec::new(),
        }
    }

    pub fn unit(module: &ModuleRef<F>, i: usize) -> Self {
        let ring = module.ring();
        ModuleElement {
            module: module.clone(),
            terms: vec![Term {
                mono: Monomial::one(ring.nvars()),
                pos: i,
                coeff: ring.field().one(),
            }],
        }
    }

    pub fn from_components(module: &ModuleRef<F>, comps: &[Polynomial<F>]) -> Result<Self> {
        if comps.len() != module.rank() {
            return Err(Error::AmbientMismatch(format!(
                "{} components for a module of rank {}",
                comps.len(),
                module.rank()
            )));
        }
        let mut raw = Vec::new();
        for (pos, p) in comps.iter().enumerate() {
            if !p.ring().same_as(module.ring()) {
                return Err(Error::RingMismatch(format!(
                    "component {pos} lives in {:?}",
                    p.ring()
                )));
            }
            for (m, c) in p.terms() {
                raw.push(Term {
                    mono: m.clone(),
                    pos,
                    coeff: c.clone(),
                });
            }
        }
        Ok(Self::from_terms(module, raw))
    }

    /// Normalizes arbitrary terms (sort, merge, drop zeros).
    pub fn from_terms(module: &ModuleRef<F>, terms: Vec<Term<F>>) -> Self {
        let field = module.ring().field();
        let mut acc: HashMap<(Monomial, usize), F::Elem> = HashMap::with_capacity(terms.len());
        for t in terms {
            match acc.get_mut(&(t.mono.clone(), t.pos)) {
                Some(v) => *v = field.add(v, &t.coeff),
                None => {
                    acc.insert((t.mono, t.pos), t.coeff);
                }
            }
        }
        let mut terms: Vec<Term<F>> = acc
            .into_iter()
            .filter(|(_, c)| !field.is_zero(c))
            .map(|((mono, pos), coeff)| Term { mono, pos, coeff })
            .collect();
        terms.sort_by(|a, b| module.cmp_term((&b.mono, b.pos), (&a.mono, a.pos)));
        ModuleElement {
            module: module.clone(),
            terms,
        }
    }

    pub(crate) fn from_sorted_terms(module: &ModuleRef<F>, terms: Vec<Term<F>>) -> Self {
        ModuleElement {
            module: module.clone(),
            terms,
        }
    }

    #[inline]
    pub fn module(&self) -> &ModuleRef<F> {
        &self.module
    }

    #[inline]
    pub fn ring(&self) -> &RingRef<F> {
        self.module.ring()
    }

    #[inline]
    pub fn terms(&self) -> &[Term<F>] {
        &self.terms
    }

    pub(crate) fn into_terms(self) -> Vec<Term<F>> {
        self.terms
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_term(&self) -> Option<&Term<F>> {
        self.terms.first()
    }

    pub fn component(&self, i: usize) -> Polynomial<F> {
        let raw = self
            .terms
            .iter()
            .filter(|t| t.pos == i)
            .map(|t| (t.mono.clone(), t.coeff.clone()))
            .collect();
        Polynomial::from_terms(self.ring(), raw)
    }

    pub fn components(&self) -> Vec<Polynomial<F>> {
        (0..self.module.rank()).map(|i| self.component(i)).collect()
    }

    /// Positions carrying a nonzero entry.
    pub fn support(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.terms.iter().map(|t| t.pos).collect();
        s.sort_unstable();
        s.dedup();
        s
    }

    /// Degree `deg m + shift` of the leading term.
    pub fn degree(&self) -> Option<i64> {
        self.terms
            .iter()
            .map(|t| self.module.term_degree(&t.mono, t.pos))
            .max()
    }

    pub fn homogeneous_degree(&self) -> Option<i64> {
        let first = self.terms.first()?;
        let d = self.module.term_degree(&first.mono, first.pos);
        self.terms
            .iter()
            .all(|t| self.module.term_degree(&t.mono, t.pos) == d)
            .then_some(d)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    fn check_module(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.module, &other.module) || self.module.same_as(&other.module) {
            Ok(())
        } else {
            Err(Error::AmbientMismatch(format!(
                "{:?} vs {:?}",
                self.module, other.module
            )))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_module(other)?;
        Ok(self.combine(other, None))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_module(other)?;
        let minus_one = self.ring().field().from_i64(-1);
        Ok(self.combine(other, Some(&minus_one)))
    }

    /// `self + c·other` by merging sorted term lists (`c = 1` when `None`).
    pub(crate) fn combine(&self, other: &Self, c: Option<&F::Elem>) -> Self {
        let field = self.ring().field();
        let module = &self.module;
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        let scale = |x: &F::Elem| match c {
            Some(c) => field.mul(x, c),
            None => x.clone(),
        };
        while i < a.len() && j < b.len() {
            match module.cmp_term((&a[i].mono, a[i].pos), (&b[j].mono, b[j].pos)) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(Term {
                        mono: b[j].mono.clone(),
                        pos: b[j].pos,
                        coeff: scale(&b[j].coeff),
                    });
                    j += 1;
                }
                Ordering::Equal => {
                    let s = field.add(&a[i].coeff, &scale(&b[j].coeff));
                    if !field.is_zero(&s) {
                        out.push(Term {
                            mono: a[i].mono.clone(),
                            pos: a[i].pos,
                            coeff: s,
                        });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|t| Term {
            mono: t.mono.clone(),
            pos: t.pos,
            coeff: scale(&t.coeff),
        }));
        ModuleElement {
            module: self.module.clone(),
            terms: out,
        }
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let field = self.ring().field();
        if field.is_zero(c) {
            return Self::zero(&self.module);
        }
        ModuleElement {
            module: self.module.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    mono: t.mono.clone(),
                    pos: t.pos,
                    coeff: field.mul(&t.coeff, c),
                })
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&self.ring().field().from_i64(-1))
    }

    /// Multiplication by a term; order-preserving, so no re-sort.
    pub fn mul_term(&self, m: &Monomial, c: &F::Elem) -> Self {
        let field = self.ring().field();
        if field.is_zero(c) {
            return Self::zero(&self.module);
        }
        ModuleElement {
            module: self.module.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    mono: t.mono.mul(m),
                    pos: t.pos,
                    coeff: field.mul(&t.coeff, c),
                })
                .collect(),
        }
    }

    pub fn mul_poly(&self, p: &Polynomial<F>) -> Result<Self> {
        if !p.ring().same_as(self.ring()) {
            return Err(Error::RingMismatch("scalar from another ring".into()));
        }
        let field = self.ring().field();
        let mut raw = Vec::with_capacity(self.terms.len() * p.len());
        for (m, c) in p.terms() {
            for t in &self.terms {
                let mono = t.mono.mul(m);
                self.ring().check_degree(&mono)?;
                raw.push(Term {
                    mono,
                    pos: t.pos,
                    coeff: field.mul(&t.coeff, c),
                });
            }
        }
        Ok(Self::from_terms(&self.module, raw))
    }

    pub fn monic(&self) -> Self {
        match self.terms.first() {
            None => self.clone(),
            Some(t) => {
                let inv = self.ring().field().inv(&t.coeff).expect("nonzero");
                self.scale(&inv)
            }
        }
    }

    /// The same vector viewed in `target` (same ring and rank, other shifts or
    /// order).
    pub fn rebase(&self, target: &ModuleRef<F>) -> Result<Self> {
        if !self.module.compatible(target) {
            return Err(Error::AmbientMismatch(format!(
                "cannot move {:?} into {:?}",
                self.module, target
            )));
        }
        if Arc::ptr_eq(&self.module, target) || self.module.same_as(target) {
            return Ok(ModuleElement {
                module: target.clone(),
                terms: self.terms.clone(),
            });
        }
        Ok(Self::from_terms(target, self.terms.clone()))
    }

    /// Places the vector into `target` with position `i` sent to `i + offset`.
    pub fn shift_positions(&self, target: &ModuleRef<F>, offset: usize) -> Self {
        Self::from_terms(
            target,
            self.terms
                .iter()
                .map(|t| Term {
                    mono: t.mono.clone(),
                    pos: t.pos + offset,
                    coeff: t.coeff.clone(),
                })
                .collect(),
        )
    }

    /// Keeps positions in `range`, renumbered from zero, inside `target`.
    pub fn restrict_positions(&self, target: &ModuleRef<F>, range: std::ops::Range<usize>) -> Self {
        Self::from_terms(
            target,
            self.terms
                .iter()
                .filter(|t| range.contains(&t.pos))
                .map(|t| Term {
                    mono: t.mono.clone(),
                    pos: t.pos - range.start,
                    coeff: t.coeff.clone(),
                })
                .collect(),
        )
    }
}

impl<F: Field> fmt::Display for ModuleElement<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let comps: Vec<String> = self.components().iter().map(|p| p.to_string()).collect();
        write!(f, "({})", comps.join(", "))
    }
}

impl<F: Field> fmt::Debug for ModuleElement<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ModuleElement{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::field::PrimeField;
    use crate::polyring::parse::parse_polynomial;
    use crate::polyring::ring::{MonomialOrder, Ring};

    fn setup() -> (RingRef<PrimeField>, ModuleRef<PrimeField>) {
        let r = Ring::new(
            PrimeField::default(),
            vec!["x".into(), "y".into()],
            MonomialOrder::Grevlex,
        )
        .unwrap()
        .into_ref();
        let m = FreeModule::new(&r, 2).into_ref();
        (r, m)
    }

    #[test]
    fn components_roundtrip() {
        let (r, m) = setup();
        let v = ModuleElement::from_components(
            &m,
            &[
                parse_polynomial(&r, "x^2 + y").unwrap(),
                parse_polynomial(&r, "-x*y").unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(v.to_string(), "(x^2 + y, -x*y)");
        assert_eq!(v.support(), vec![0, 1]);
        assert!(!v.is_homogeneous());
    }

    #[test]
    fn top_versus_pot() {
        let (r, m) = setup();
        let x = Monomial::var(2, 0, 1);
        let y2 = Monomial::var(2, 1, 2);
        // TOP: y^2 e_2 beats x e_1 on degree
        assert_eq!(m.cmp_term((&y2, 1), (&x, 0)), Ordering::Greater);
        let pot = FreeModule::new(&r, 2).with_order(ModuleOrder::Pot);
        assert_eq!(pot.cmp_term((&y2, 1), (&x, 0)), Ordering::Less);
        let blocked = FreeModule::new(&r, 2).with_order(ModuleOrder::Blocked(1));
        assert_eq!(blocked.cmp_term((&y2, 1), (&x, 0)), Ordering::Less);
    }

    #[test]
    fn ambient_mismatch_is_an_error() {
        let (r, m) = setup();
        let other = FreeModule::new(&r, 3).into_ref();
        let a = ModuleElement::unit(&m, 0);
        let b = ModuleElement::unit(&other, 0);
        assert!(matches!(a.checked_add(&b), Err(Error::AmbientMismatch(_))));
    }
}
