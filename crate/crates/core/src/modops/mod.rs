//! Module-level algebra over a graded polynomial ring: submodules of free
//! modules, their quotients, Hilbert series, resolutions, Fitting ideals,
//! duals and associated primes of monomial quotients.

mod ass;
mod fitting;
mod hilbert;
mod resolution;

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::OnceLock;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::groebner::{self, GroebnerBasis};
use crate::polyring::{
    Field, FreeModule, ModuleElement, ModuleOrder, ModuleRef, Monomial, Polynomial, RingRef, Term,
};

pub use ass::{ass_monomial_ideal, minimal_primes_monomial, AssReport, MonomialPrime};
pub use fitting::{
    double_dual_free, dual, fitting_ideal, fitting_invariant, generator_matrix, minors, rank,
};
pub use hilbert::{minimize_monomials, monomial_ideal_dim, HilbertSeries};
pub use resolution::Resolution;

/// A natural number or `+∞` (depth of the zero module, height of the unit
/// ideal).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExtendedNat {
    Finite(usize),
    Infinite,
}

impl ExtendedNat {
    pub fn finite(self) -> Option<usize> {
        match self {
            ExtendedNat::Finite(n) => Some(n),
            ExtendedNat::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        self == ExtendedNat::Infinite
    }
}

impl PartialOrd for ExtendedNat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtendedNat {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ExtendedNat::Finite(a), ExtendedNat::Finite(b)) => a.cmp(b),
            (ExtendedNat::Finite(_), ExtendedNat::Infinite) => Ordering::Less,
            (ExtendedNat::Infinite, ExtendedNat::Finite(_)) => Ordering::Greater,
            (ExtendedNat::Infinite, ExtendedNat::Infinite) => Ordering::Equal,
        }
    }
}

impl fmt::Display for ExtendedNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedNat::Finite(n) => write!(f, "{n}"),
            ExtendedNat::Infinite => f.write_str("infinity"),
        }
    }
}

impl Serialize for ExtendedNat {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ExtendedNat::Finite(n) => s.serialize_u64(*n as u64),
            ExtendedNat::Infinite => s.serialize_str("infinity"),
        }
    }
}

/// A finitely generated submodule of a graded free module, with a lazily
/// computed (write-once) Gröbner basis.
#[derive(Clone)]
pub struct Submodule<F: Field> {
    ambient: ModuleRef<F>,
    gens: Vec<ModuleElement<F>>,
    gb: OnceLock<GroebnerBasis<F>>,
}

impl<F: Field> fmt::Debug for Submodule<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Submodule")
            .field("ambient", &self.ambient)
            .field("gens", &self.gens)
            .finish()
    }
}

impl<F: Field> Submodule<F> {
    /// Zero generators are dropped.
    pub fn new(ambient: &ModuleRef<F>, gens: Vec<ModuleElement<F>>) -> Result<Self> {
        let mut out = Vec::with_capacity(gens.len());
        for g in gens {
            if !g.is_zero() {
                out.push(g.rebase(ambient)?);
            }
        }
        Ok(Submodule {
            ambient: ambient.clone(),
            gens: out,
            gb: OnceLock::new(),
        })
    }

    /// An ideal of `ring`, viewed inside the rank-one free module.
    pub fn ideal(ring: &RingRef<F>, gens: &[Polynomial<F>]) -> Result<Self> {
        let m = groebner::ideal_module(ring);
        let vs = gens
            .iter()
            .map(|p| groebner::poly_to_vector(&m, p))
            .collect();
        Self::new(&m, vs)
    }

    pub fn zero(ambient: &ModuleRef<F>) -> Self {
        Submodule {
            ambient: ambient.clone(),
            gens: Vec::new(),
            gb: OnceLock::new(),
        }
    }

    /// The whole ambient module.
    pub fn whole(ambient: &ModuleRef<F>) -> Self {
        let gens = (0..ambient.rank())
            .map(|i| ModuleElement::unit(ambient, i))
            .collect();
        Submodule {
            ambient: ambient.clone(),
            gens,
            gb: OnceLock::new(),
        }
    }

    pub fn ambient(&self) -> &ModuleRef<F> {
        &self.ambient
    }

    pub fn ring(&self) -> &RingRef<F> {
        self.ambient.ring()
    }

    pub fn gens(&self) -> &[ModuleElement<F>] {
        &self.gens
    }

    /// Generators of a rank-one submodule as polynomials.
    pub fn ideal_gens(&self) -> Vec<Polynomial<F>> {
        self.gens.iter().map(|g| g.component(0)).collect()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.gens.iter().all(|g| g.is_homogeneous())
    }

    fn require_homogeneous(&self, what: &str) -> Result<()> {
        if self.is_homogeneous() {
            Ok(())
        } else {
            Err(Error::Validation(format!(
                "{what} needs homogeneous generators"
            )))
        }
    }

    pub fn groebner(&self) -> Result<&GroebnerBasis<F>> {
        if let Some(gb) = self.gb.get() {
            return Ok(gb);
        }
        let gb = GroebnerBasis::compute(&self.ambient, &self.gens)?;
        Ok(self.gb.get_or_init(|| gb))
    }

    pub fn contains(&self, v: &ModuleElement<F>) -> Result<bool> {
        self.groebner()?.contains(v)
    }

    pub fn contains_submodule(&self, other: &Submodule<F>) -> Result<bool> {
        self.check_ambient(other)?;
        for g in &other.gens {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equality as submodules, by double inclusion.
    pub fn same_submodule(&self, other: &Submodule<F>) -> Result<bool> {
        Ok(self.contains_submodule(other)? && other.contains_submodule(self)?)
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_whole(&self) -> Result<bool> {
        Ok(self.groebner()?.is_whole_module())
    }

    fn check_ambient(&self, other: &Submodule<F>) -> Result<()> {
        if self.ambient.same_as(&other.ambient) {
            Ok(())
        } else {
            Err(Error::AmbientMismatch(format!(
                "{:?} vs {:?}",
                self.ambient, other.ambient
            )))
        }
    }

    /// A minimal homogeneous generating set chosen greedily from the given
    /// generators, lowest degree first.
    ///
    /// In each degree the candidates are reduced modulo a Gröbner basis of
    /// the lower-degree generators kept so far; the survivors are then
    /// filtered for linear independence over the field.
    pub fn minimal_generators(&self) -> Result<Vec<ModuleElement<F>>> {
        self.require_homogeneous("minimal generators")?;
        let mut by_degree: BTreeMap<i64, Vec<&ModuleElement<F>>> = BTreeMap::new();
        for g in &self.gens {
            by_degree
                .entry(g.degree().expect("nonzero"))
                .or_default()
                .push(g);
        }
        let field = self.ring().field().clone();
        let mut kept: Vec<ModuleElement<F>> = Vec::new();
        for (_, group) in by_degree {
            let lower = if kept.is_empty() {
                None
            } else {
                Some(GroebnerBasis::compute(&self.ambient, &kept)?)
            };
            let mut pivots: HashMap<(Monomial, usize), ModuleElement<F>> = HashMap::new();
            for g in group {
                let mut h = match &lower {
                    Some(gb) => gb.normal_form(g)?,
                    None => g.clone(),
                };
                while let Some(lt) = h.leading_term() {
                    let key = (lt.mono.clone(), lt.pos);
                    match pivots.get(&key) {
                        Some(row) => {
                            let c =
                                field.neg(&field.div(&lt.coeff, &row.terms()[0].coeff).unwrap());
                            h = h.combine(row, Some(&c));
                        }
                        None => break,
                    }
                }
                if let Some(lt) = h.leading_term() {
                    pivots.insert((lt.mono.clone(), lt.pos), h.clone());
                    kept.push(g.clone());
                }
            }
        }
        Ok(kept)
    }

    pub fn minimalize(&self) -> Result<Submodule<F>> {
        let gens = self.minimal_generators()?;
        let out = Submodule::new(&self.ambient, gens)?;
        if let Some(gb) = self.gb.get() {
            let _ = out.gb.set(gb.clone());
        }
        Ok(out)
    }

    /// Number of minimal generators.
    pub fn mu(&self) -> Result<usize> {
        Ok(self.minimal_generators()?.len())
    }

    pub fn sum(&self, other: &Submodule<F>) -> Result<Submodule<F>> {
        self.check_ambient(other)?;
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Submodule::new(&self.ambient, gens)
    }

    /// `a · M`.
    pub fn scale(&self, a: &Polynomial<F>) -> Result<Submodule<F>> {
        let gens = self
            .gens
            .iter()
            .map(|g| g.mul_poly(a))
            .collect::<Result<Vec<_>>>()?;
        Submodule::new(&self.ambient, gens)
    }

    /// `I · M` for an ideal `I` of the same ring.
    pub fn ideal_product(&self, ideal: &Submodule<F>) -> Result<Submodule<F>> {
        let mut gens = Vec::with_capacity(self.gens.len() * ideal.gens.len());
        for p in ideal.ideal_gens() {
            for g in &self.gens {
                gens.push(g.mul_poly(&p)?);
            }
        }
        Submodule::new(&self.ambient, gens)
    }

    /// `M ∩ N`, read off a Gröbner basis of `{(m_i, m_i)} ∪ {(n_j, 0)}` in
    /// `F ⊕ F` under an order eliminating the first copy.
    pub fn intersect(&self, other: &Submodule<F>) -> Result<Submodule<F>> {
        self.check_ambient(other)?;
        let r = self.ambient.rank();
        if self.is_zero() || other.is_zero() {
            return Ok(Submodule::zero(&self.ambient));
        }
        let big = self
            .ambient
            .direct_sum(&self.ambient, ModuleOrder::Blocked(r))
            .into_ref();
        let mut lifted = Vec::with_capacity(self.gens.len() + other.gens.len());
        for m in &self.gens {
            let mut terms: Vec<Term<F>> = m.terms().to_vec();
            terms.extend(m.terms().iter().map(|t| Term {
                mono: t.mono.clone(),
                pos: t.pos + r,
                coeff: t.coeff.clone(),
            }));
            lifted.push(ModuleElement::from_terms(&big, terms));
        }
        for n in &other.gens {
            lifted.push(n.rebase_into(&big)?);
        }
        let gb = GroebnerBasis::compute(&big, &lifted)?;
        let gens = gb
            .elements()
            .iter()
            .filter(|e| e.terms()[0].pos >= r)
            .map(|e| e.restrict_positions(&self.ambient, r..2 * r))
            .collect();
        Submodule::new(&self.ambient, gens)
    }

    /// `(M : a) = {z | a z ∈ M}`, computed as `(M ∩ aF) / a`.
    pub fn colon(&self, a: &Polynomial<F>) -> Result<Submodule<F>> {
        if a.is_zero() {
            return Err(Error::InvalidArgument(
                "colon by the zero polynomial".into(),
            ));
        }
        let af = Submodule::whole(&self.ambient).scale(a)?;
        let meet = self.intersect(&af)?;
        let mut gens = Vec::with_capacity(meet.gens.len());
        for g in &meet.gens {
            let mut comps = Vec::with_capacity(self.ambient.rank());
            for c in g.components() {
                match c.div_exact(a)? {
                    Some(q) => comps.push(q),
                    None => {
                        return Err(Error::Inconsistency(
                            "element of aF not divisible by a".into(),
                        ))
                    }
                }
            }
            gens.push(ModuleElement::from_components(&self.ambient, &comps)?);
        }
        Submodule::new(&self.ambient, gens)
    }

    /// Leading-term monomials of the Gröbner basis, grouped by position.
    pub fn leading_ideals(&self) -> Result<Vec<Vec<Monomial>>> {
        let mut out = vec![Vec::new(); self.ambient.rank()];
        for (m, pos) in self.groebner()?.leading_terms() {
            out[pos].push(m.clone());
        }
        Ok(out.into_iter().map(minimize_monomials).collect())
    }

    /// The abstract module `M` as the quotient `R^μ / Syz` of its minimal
    /// generators.
    pub fn presentation(&self) -> Result<GradedQuotient<F>> {
        let gens = self.minimal_generators()?;
        let (free, syz) = groebner::syzygies(&self.ambient, &gens)?;
        Ok(GradedQuotient::new(Submodule::new(&free, syz)?))
    }

    /// `depth M` for the abstract module; `+∞` when `M = 0`.
    pub fn depth(&self) -> Result<ExtendedNat> {
        self.presentation()?.depth()
    }

    pub fn quotient(&self) -> GradedQuotient<F> {
        GradedQuotient::new(self.clone())
    }
}

impl<F: Field> ModuleElement<F> {
    /// Embeds into a free module with at least as many positions, keeping
    /// position indexes.
    fn rebase_into(&self, target: &ModuleRef<F>) -> Result<ModuleElement<F>> {
        if target.rank() < self.module().rank() {
            return Err(Error::AmbientMismatch("target has smaller rank".into()));
        }
        Ok(ModuleElement::from_terms(target, self.terms().to_vec()))
    }
}

/// A graded quotient `F / M` of a free module by a homogeneous submodule.
#[derive(Clone, Debug)]
pub struct GradedQuotient<F: Field> {
    relations: Submodule<F>,
}

impl<F: Field> GradedQuotient<F> {
    pub fn new(relations: Submodule<F>) -> Self {
        GradedQuotient { relations }
    }

    /// The free module `F` itself.
    pub fn free(ambient: &ModuleRef<F>) -> Self {
        GradedQuotient::new(Submodule::zero(ambient))
    }

    pub fn ambient(&self) -> &ModuleRef<F> {
        self.relations.ambient()
    }

    pub fn relations(&self) -> &Submodule<F> {
        &self.relations
    }

    pub fn ring(&self) -> &RingRef<F> {
        self.relations.ring()
    }

    pub fn is_zero(&self) -> Result<bool> {
        self.relations.is_whole()
    }

    pub fn hilbert_series(&self) -> Result<HilbertSeries> {
        self.relations.require_homogeneous("Hilbert series")?;
        let weights = self.ring().weights().to_vec();
        let lead = self.relations.leading_ideals()?;
        let parts: Vec<(i64, Vec<Monomial>)> = self
            .ambient()
            .shifts()
            .iter()
            .zip(lead)
            .map(|(&s, m)| (s as i64, m))
            .collect();
        Ok(HilbertSeries::from_components(&parts, &weights))
    }

    /// `dim_k` of the graded pieces in `degrees`.
    pub fn hilbert_function(&self, degrees: std::ops::RangeInclusive<i64>) -> Result<Vec<i64>> {
        Ok(self.hilbert_series()?.values(degrees))
    }

    /// Krull dimension; `-1` for the zero module.
    pub fn krull_dim(&self) -> Result<i64> {
        self.relations.require_homogeneous("Krull dimension")?;
        let n = self.ring().nvars();
        let mut best = -1;
        for comp in self.relations.leading_ideals()? {
            best = best.max(monomial_ideal_dim(&comp, n)?);
        }
        Ok(best)
    }

    /// An isomorphic quotient `F' / M'` with `M' ⊆ m F'`: relations with a
    /// unit coefficient are used to eliminate basis vectors.
    pub fn prune(&self) -> Result<GradedQuotient<F>> {
        self.relations.require_homogeneous("pruning")?;
        let mut ambient = self.ambient().clone();
        let mut gens = self.relations.minimal_generators()?;
        let field = self.ring().field().clone();
        loop {
            let unit = gens.iter().enumerate().find_map(|(k, g)| {
                g.terms()
                    .iter()
                    .find(|t| t.mono.is_one())
                    .map(|t| (k, t.pos, t.coeff.clone()))
            });
            let Some((k, pos, c)) = unit else { break };
            let pivot = gens.swap_remove(k);
            let inv = field.inv(&c).expect("nonzero");
            let keep: Vec<usize> = (0..ambient.rank()).filter(|&i| i != pos).collect();
            let shifts: Vec<i32> = keep.iter().map(|&i| ambient.shifts()[i]).collect();
            let smaller = FreeModule::with_shifts(ambient.ring(), shifts).into_ref();
            let mut next = Vec::with_capacity(gens.len());
            for h in &gens {
                let hp = h.component(pos);
                let cleared = if hp.is_zero() {
                    h.clone()
                } else {
                    let factor = -&hp.scale(&inv);
                    h.checked_add(&pivot.mul_poly(&factor)?)?
                };
                let moved: Vec<Term<F>> = cleared
                    .terms()
                    .iter()
                    .map(|t| Term {
                        mono: t.mono.clone(),
                        pos: keep
                            .iter()
                            .position(|&i| i == t.pos)
                            .expect("cleared position"),
                        coeff: t.coeff.clone(),
                    })
                    .collect();
                let v = ModuleElement::from_terms(&smaller, moved);
                if !v.is_zero() {
                    next.push(v);
                }
            }
            ambient = smaller;
            gens = Submodule::new(&ambient, next)?.minimal_generators()?;
        }
        Ok(GradedQuotient::new(Submodule::new(&ambient, gens)?))
    }

    pub fn minimal_resolution(&self) -> Result<Resolution<F>> {
        Resolution::minimal(self)
    }

    /// Projective dimension; `None` for the zero module.
    pub fn projective_dimension(&self) -> Result<Option<usize>> {
        let res = self.minimal_resolution()?;
        Ok((res.rank(0) > 0).then(|| res.length()))
    }

    /// `depth = d − pd` (Auslander–Buchsbaum); `+∞` for the zero module.
    pub fn depth(&self) -> Result<ExtendedNat> {
        let d = self.ring().nvars();
        Ok(match self.projective_dimension()? {
            None => ExtendedNat::Infinite,
            Some(pd) if pd <= d => ExtendedNat::Finite(d - pd),
            Some(pd) => {
                return Err(Error::Inconsistency(format!(
                    "projective dimension {pd} exceeds the number of variables {d}"
                )))
            }
        })
    }

    /// Cohen–Macaulay test (`depth = dim`); the zero module counts as CM.
    pub fn is_cohen_macaulay(&self) -> Result<bool> {
        let dim = self.krull_dim()?;
        Ok(match self.depth()? {
            ExtendedNat::Infinite => true,
            ExtendedNat::Finite(p) => p as i64 == dim,
        })
    }

    /// Associated primes for quotients by componentwise-monomial
    /// submodules.
    pub fn ass_monomial(&self) -> Result<AssReport> {
        ass::ass_of_quotient(self)
    }
}

/// `ht I = d − dim R/I`; `+∞` for the unit ideal.
pub fn height<F: Field>(ideal: &Submodule<F>) -> Result<ExtendedNat> {
    let dim = ideal.quotient().krull_dim()?;
    let d = ideal.ring().nvars() as i64;
    Ok(if dim < 0 {
        ExtendedNat::Infinite
    } else {
        ExtendedNat::Finite((d - dim) as usize)
    })
}

#[cfg(test)]
mod tests;
