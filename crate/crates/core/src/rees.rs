//! Rees powers `E_n ⊆ G_n`, the presentation of the Rees algebra, the fiber
//! cone and the deviation calculus for a graded submodule `E ⊊ G = R^e`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use log::debug;

use crate::error::{Error, Result};
use crate::groebner;
use crate::modops::{
    self, fitting_ideal, fitting_invariant, height, minimal_primes_monomial, ExtendedNat,
    GradedQuotient, MonomialPrime, Submodule,
};
use crate::polyring::{
    Field, FreeModule, ModuleElement, ModuleRef, Monomial, MonomialOrder, Polynomial, Ring,
    RingRef, Term,
};

/// Largest free rank `C(n+e-1, e-1)` a Rees power may live in.
pub const MAX_POWER_RANK: usize = 4096;

/// `E_n` as a submodule of `G_n`, whose basis is the degree-`n` monomials in
/// `t_1..t_e` in descending lex order.
#[derive(Debug)]
pub struct ReesPower<F: Field> {
    pub n: usize,
    pub basis: Vec<Monomial>,
    pub submodule: Submodule<F>,
}

impl<F: Field> ReesPower<F> {
    pub fn ambient(&self) -> &ModuleRef<F> {
        self.submodule.ambient()
    }

    pub fn quotient(&self) -> GradedQuotient<F> {
        self.submodule.quotient()
    }

    pub fn generators(&self) -> &[ModuleElement<F>] {
        self.submodule.gens()
    }
}

/// `R[y]/J ≅ R_G(E)`, with `y_j ↦ L_j`. The ring `k[x, y]` gives `y_j` the
/// weight `δ_j + 1` so that `J` is homogeneous.
#[derive(Debug)]
pub struct ReesPresentation<F: Field> {
    pub ring: RingRef<F>,
    pub ideal: Submodule<F>,
}

impl<F: Field> ReesPresentation<F> {
    pub fn generators(&self) -> Result<Vec<Polynomial<F>>> {
        Ok(self
            .ideal
            .minimal_generators()?
            .iter()
            .map(|g| g.component(0))
            .collect())
    }
}

/// `F_G(E) ≅ k[y]/J̄` with `J̄ = J|_{x=0}`, standard grading on `y`.
#[derive(Debug)]
pub struct FiberCone<F: Field> {
    pub ring: RingRef<F>,
    pub ideal: Submodule<F>,
    pub spread: usize,
}

impl<F: Field> FiberCone<F> {
    /// `dim_k [F_G(E)]_n`.
    pub fn hilbert_function(&self, n: i64) -> Result<i64> {
        Ok(self.ideal.quotient().hilbert_series()?.coefficient(n))
    }
}

/// Deviation data of an ideal module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Deviations {
    pub mu: usize,
    pub e: usize,
    pub spread: usize,
    pub fitting_height: usize,
    pub deviation: i64,
    pub analytic_deviation: i64,
}

/// Generic complete-intersection data at one minimal prime of `R/F_e(E)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalCount {
    pub prime: String,
    pub local_mu: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Predicates {
    pub complete_intersection: bool,
    pub equimultiple: bool,
    /// `None` when the minimal primes of `R/F_e(E)` are not available.
    pub generically_ci: Option<bool>,
    pub local_counts: Vec<LocalCount>,
}

pub struct ReesContext<F: Field> {
    ring: RingRef<F>,
    module: Submodule<F>,
    degrees: Vec<i64>,
    t_names: Vec<String>,
    y_names: Vec<String>,
    powers: Mutex<BTreeMap<usize, Arc<ReesPower<F>>>>,
    presentation: OnceLock<Arc<ReesPresentation<F>>>,
    fiber: OnceLock<Arc<FiberCone<F>>>,
    rank: OnceLock<usize>,
}

impl<F: Field> std::fmt::Debug for ReesContext<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ReesContext")
            .field("module", &self.module)
            .field("degrees", &self.degrees)
            .finish()
    }
}

fn fresh_names(prefix: &str, count: usize, taken: &[String]) -> Vec<String> {
    let mut tag = String::new();
    loop {
        let names: Vec<String> = (1..=count).map(|i| format!("{prefix}{tag}{i}")).collect();
        if names.iter().all(|n| !taken.contains(n)) {
            return names;
        }
        tag.push('_');
    }
}

/// Exponent vectors of degree `n` in `e` variables, descending lex.
pub fn t_basis(e: usize, n: usize) -> Vec<Monomial> {
    fn rec(i: usize, left: usize, cur: &mut Vec<u16>, out: &mut Vec<Monomial>) {
        if i + 1 == cur.len() {
            cur[i] = left as u16;
            out.push(Monomial::from_exponents(cur));
            return;
        }
        for a in (0..=left).rev() {
            cur[i] = a as u16;
            rec(i + 1, left - a, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    if e > 0 {
        rec(0, n, &mut vec![0; e], &mut out);
    }
    out
}

fn binomial(n: usize, k: usize) -> Option<usize> {
    let k = k.min(n - k);
    let mut acc: usize = 1;
    for i in 0..k {
        acc = acc.checked_mul(n - i)? / (i + 1);
    }
    Some(acc)
}

pub(crate) fn derived_ring<F: Field>(
    base: &RingRef<F>,
    names: Vec<String>,
    weights: Vec<u32>,
    order: MonomialOrder,
) -> Result<RingRef<F>> {
    Ok(
        Ring::with_weights(base.field().clone(), names, weights, order)?
            .with_max_degree(base.max_degree())
            .into_ref(),
    )
}

/// `G_n` with its `t`-monomial basis.
pub fn power_ambient<F: Field>(
    ring: &RingRef<F>,
    e: usize,
    n: usize,
) -> Result<(Vec<Monomial>, ModuleRef<F>)> {
    let g = binomial(n + e - 1, e - 1).unwrap_or(usize::MAX);
    if g > MAX_POWER_RANK {
        return Err(Error::ResourceLimit(format!(
            "G_{n} has rank {g}, above the limit {MAX_POWER_RANK}"
        )));
    }
    let basis = t_basis(e, n);
    let ambient = FreeModule::new(ring, basis.len()).into_ref();
    Ok((basis, ambient))
}

/// `E_{n+1}` from `E_n` and the generators of `E = E_1`: all products of a
/// generator of `E_n` with some `L_j`, minimalized.
pub fn next_power<F: Field>(
    ring: &RingRef<F>,
    e_gens: &[ModuleElement<F>],
    prev: &ReesPower<F>,
) -> Result<ReesPower<F>> {
    let e = prev.basis.first().map_or(0, |m| m.nvars());
    let n = prev.n + 1;
    let (basis, ambient) = power_ambient(ring, e, n)?;
    let index: HashMap<&Monomial, usize> = basis.iter().enumerate().map(|(k, m)| (m, k)).collect();
    let mut gens = Vec::new();
    for v in prev.generators() {
        for g in e_gens {
            let mut terms: Vec<Term<F>> = Vec::new();
            for vt in v.terms() {
                let alpha = &prev.basis[vt.pos];
                for gt in g.terms() {
                    let pos = index[&alpha.mul(&Monomial::var(e, gt.pos, 1))];
                    let mono = vt.mono.mul(&gt.mono);
                    ring.check_degree(&mono)?;
                    terms.push(Term {
                        mono,
                        pos,
                        coeff: ring.field().mul(&vt.coeff, &gt.coeff),
                    });
                }
            }
            gens.push(ModuleElement::from_terms(&ambient, terms));
        }
    }
    let raw = Submodule::new(&ambient, gens)?;
    let minimal = raw.minimal_generators()?;
    debug!(
        "E_{n}: {} products, {} minimal generators",
        raw.gens().len(),
        minimal.len()
    );
    Ok(ReesPower {
        n,
        basis,
        submodule: Submodule::new(&ambient, minimal)?,
    })
}

/// `E_1, …, E_{n_max}` for any homogeneous `E ⊆ R^e` (no standing
/// hypotheses; `E` may be zero or all of `G`).
pub fn power_sequence<F: Field>(e: &Submodule<F>, n_max: usize) -> Result<Vec<ReesPower<F>>> {
    let rank = e.ambient().rank();
    let (basis, ambient) = power_ambient(e.ring(), rank, 1)?;
    let gens = e.minimal_generators()?;
    let first = ReesPower {
        n: 1,
        basis,
        submodule: Submodule::new(&ambient, gens.clone())?,
    };
    let mut out = vec![first];
    while out.len() < n_max {
        let next = next_power(e.ring(), &gens, out.last().unwrap())?;
        out.push(next);
    }
    out.truncate(n_max);
    Ok(out)
}

impl<F: Field> ReesContext<F> {
    /// Validates the standing hypotheses: `R` has at least one variable and a
    /// degree order, `E` is nonzero, homogeneous, and `E ≠ G`.
    pub fn new(e: &Submodule<F>) -> Result<Self> {
        let ring = e.ring().clone();
        if ring.nvars() == 0 {
            return Err(Error::Validation(
                "the ring needs at least one variable".into(),
            ));
        }
        if !ring.is_degree_order() {
            return Err(Error::Validation("the base ring must use grevlex".into()));
        }
        if e.ambient().shifts().iter().any(|&s| s != 0) {
            return Err(Error::Validation("G must be generated in degree 0".into()));
        }
        for (k, g) in e.gens().iter().enumerate() {
            if !g.is_homogeneous() {
                return Err(Error::Validation(format!(
                    "generator {} is not column-graded: {g}",
                    k + 1
                )));
            }
        }
        if e.is_zero() {
            return Err(Error::Validation("E must be nonzero".into()));
        }
        if e.is_whole()? {
            return Err(Error::Validation(
                "E = G: the generators span the free module".into(),
            ));
        }
        let gens = e.minimal_generators()?;
        let degrees = gens.iter().map(|g| g.degree().expect("nonzero")).collect();
        let module = Submodule::new(e.ambient(), gens)?;
        let taken = ring.names().to_vec();
        let t_names = fresh_names("t", e.ambient().rank(), &taken);
        let mut taken_y = taken.clone();
        taken_y.extend(t_names.iter().cloned());
        let y_names = fresh_names("y", module.gens().len(), &taken_y);
        Ok(ReesContext {
            ring,
            module,
            degrees,
            t_names,
            y_names,
            powers: Mutex::new(BTreeMap::new()),
            presentation: OnceLock::new(),
            fiber: OnceLock::new(),
            rank: OnceLock::new(),
        })
    }

    pub fn ring(&self) -> &RingRef<F> {
        &self.ring
    }

    /// `E`, with its minimal generators.
    pub fn module(&self) -> &Submodule<F> {
        &self.module
    }

    pub fn d(&self) -> usize {
        self.ring.nvars()
    }

    pub fn e(&self) -> usize {
        self.module.ambient().rank()
    }

    pub fn mu(&self) -> usize {
        self.module.gens().len()
    }

    pub fn generator_degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn t_names(&self) -> &[String] {
        &self.t_names
    }

    pub fn y_names(&self) -> &[String] {
        &self.y_names
    }

    pub fn rank(&self) -> Result<usize> {
        if let Some(r) = self.rank.get() {
            return Ok(*r);
        }
        let r = modops::rank(&self.module)?;
        Ok(*self.rank.get_or_init(|| r))
    }

    /// `k[x, t]`, standard weight on `t`.
    pub fn t_ring(&self) -> Result<RingRef<F>> {
        let mut names = self.ring.names().to_vec();
        names.extend(self.t_names.iter().cloned());
        let mut weights = self.ring.weights().to_vec();
        weights.extend(std::iter::repeat_n(1, self.e()));
        derived_ring(&self.ring, names, weights, MonomialOrder::Grevlex)
    }

    /// `L_j = Σ_i g_{ji} t_i` in `target`, whose first `d` variables are `x`
    /// and whose `t_i` sit at `t_offset + i`.
    fn linear_forms_in(&self, target: &RingRef<F>, t_offset: usize) -> Result<Vec<Polynomial<F>>> {
        let d = self.d();
        let x_map: Vec<Option<usize>> = (0..d).map(Some).collect();
        self.module
            .gens()
            .iter()
            .map(|g| {
                let mut acc = Polynomial::zero(target);
                for (i, c) in g.components().iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let t = Polynomial::var(target, t_offset + i);
                    acc = acc.checked_add(&c.embed(target, &x_map)?.checked_mul(&t)?)?;
                }
                Ok(acc)
            })
            .collect()
    }

    pub fn linear_forms(&self) -> Result<Vec<Polynomial<F>>> {
        let tr = self.t_ring()?;
        self.linear_forms_in(&tr, self.d())
    }

    fn power_ambient(&self, n: usize) -> Result<(Vec<Monomial>, ModuleRef<F>)> {
        power_ambient(&self.ring, self.e(), n)
    }

    /// `E_n`, minimally generated; `E_0 = R`.
    pub fn rees_power(&self, n: usize) -> Result<Arc<ReesPower<F>>> {
        if let Some(p) = self.powers.lock().expect("cache").get(&n) {
            return Ok(p.clone());
        }
        let power = match n {
            0 => {
                let (basis, ambient) = self.power_ambient(0)?;
                ReesPower {
                    n,
                    basis,
                    submodule: Submodule::whole(&ambient),
                }
            }
            1 => {
                let (basis, _) = self.power_ambient(1)?;
                ReesPower {
                    n,
                    basis,
                    submodule: self.module.clone(),
                }
            }
            _ => {
                let prev = self.rees_power(n - 1)?;
                next_power(&self.ring, self.module.gens(), &prev)?
            }
        };
        let power = Arc::new(power);
        let mut cache = self.powers.lock().expect("cache");
        Ok(cache.entry(n).or_insert(power).clone())
    }

    /// `E_n` by an independent route: the degree-`n` piece in `t` of the
    /// ideal `(L_1, …, L_μ)^n ⊆ R[t]`, read off a Gröbner basis of that power.
    pub fn rees_power_oracle(&self, n: usize) -> Result<Submodule<F>> {
        if n == 0 {
            return Err(Error::InvalidArgument("the oracle needs n ≥ 1".into()));
        }
        let tr = self.t_ring()?;
        let forms = self.linear_forms_in(&tr, self.d())?;
        let mut products = vec![Polynomial::one(&tr)];
        for _ in 0..n {
            let mut next = Vec::with_capacity(products.len() * forms.len());
            for p in &products {
                for l in &forms {
                    next.push(p.checked_mul(l)?);
                }
            }
            products = groebner::ideal_basis(&tr, &next)?;
        }
        let (basis, ambient) = self.power_ambient(n)?;
        let d = self.d();
        let index: HashMap<&Monomial, usize> =
            basis.iter().enumerate().map(|(k, m)| (m, k)).collect();
        let mut gens = Vec::new();
        for p in &products {
            let t_degree = |m: &Monomial| {
                m.exponents()[d..]
                    .iter()
                    .map(|&a| a as usize)
                    .sum::<usize>()
            };
            if p.terms().iter().any(|(m, _)| t_degree(m) != n) {
                continue;
            }
            let terms = p
                .terms()
                .iter()
                .map(|(m, c)| Term {
                    mono: Monomial::from_exponents(&m.exponents()[..d]),
                    pos: index[&Monomial::from_exponents(&m.exponents()[d..])],
                    coeff: c.clone(),
                })
                .collect();
            gens.push(ModuleElement::from_terms(&ambient, terms));
        }
        Submodule::new(&ambient, gens)
    }

    /// `J = (y_j − L_j) ∩ R[y]`, by eliminating `t` under a block order.
    pub fn presentation(&self) -> Result<Arc<ReesPresentation<F>>> {
        if let Some(p) = self.presentation.get() {
            return Ok(p.clone());
        }
        let (d, e, mu) = (self.d(), self.e(), self.mu());
        let mut names = self.ring.names().to_vec();
        names.extend(self.t_names.iter().cloned());
        names.extend(self.y_names.iter().cloned());
        let mut weights = self.ring.weights().to_vec();
        weights.extend(std::iter::repeat_n(1, e));
        weights.extend(self.degrees.iter().map(|&dg| (dg + 1) as u32));
        let big = derived_ring(&self.ring, names, weights, MonomialOrder::Grevlex)?;
        let forms = self.linear_forms_in(&big, d)?;
        let gens: Vec<Polynomial<F>> = forms
            .iter()
            .enumerate()
            .map(|(j, l)| Polynomial::var(&big, d + e + j).checked_sub(l))
            .collect::<Result<_>>()?;
        let t_block: Vec<usize> = (d..d + e).collect();
        let eliminated = groebner::eliminate(&big, &gens, &t_block)?;

        let mut xy_names = self.ring.names().to_vec();
        xy_names.extend(self.y_names.iter().cloned());
        let mut xy_weights = self.ring.weights().to_vec();
        xy_weights.extend(self.degrees.iter().map(|&dg| (dg + 1) as u32));
        let xy = derived_ring(&self.ring, xy_names, xy_weights, MonomialOrder::Grevlex)?;
        let map: Vec<Option<usize>> = (0..d + e + mu)
            .map(|v| match v {
                v if v < d => Some(v),
                v if v < d + e => None,
                v => Some(v - e),
            })
            .collect();
        let j: Vec<Polynomial<F>> = eliminated
            .iter()
            .map(|p| p.embed(&xy, &map))
            .collect::<Result<_>>()?;
        let ideal = Submodule::ideal(&xy, &j)?;
        let ideal = Submodule::new(ideal.ambient(), ideal.minimal_generators()?)?;
        let pres = Arc::new(ReesPresentation { ring: xy, ideal });
        Ok(self.presentation.get_or_init(|| pres).clone())
    }

    pub fn fiber_cone(&self) -> Result<Arc<FiberCone<F>>> {
        if let Some(f) = self.fiber.get() {
            return Ok(f.clone());
        }
        let pres = self.presentation()?;
        let (d, mu) = (self.d(), self.mu());
        let yr = derived_ring(
            &self.ring,
            self.y_names.clone(),
            vec![1; mu],
            MonomialOrder::Grevlex,
        )?;
        let map: Vec<Option<usize>> = (0..d + mu).map(|v| v.checked_sub(d)).collect();
        let x_vars: Vec<usize> = (0..d).collect();
        let gens: Vec<Polynomial<F>> = pres
            .ideal
            .ideal_gens()
            .iter()
            .map(|p| p.kill_vars(&x_vars).embed(&yr, &map))
            .collect::<Result<_>>()?;
        let ideal = Submodule::ideal(&yr, &gens)?;
        let dim = ideal.quotient().krull_dim()?;
        if dim < 0 {
            return Err(Error::Inconsistency("the fiber cone is zero".into()));
        }
        let spread = dim as usize;
        if spread > mu || (d > 0 && spread > d + self.e() - 1) {
            return Err(Error::Inconsistency(format!(
                "analytic spread {spread} outside [0, min(μ, d + e − 1)]"
            )));
        }
        let fc = Arc::new(FiberCone {
            ring: yr,
            ideal,
            spread,
        });
        Ok(self.fiber.get_or_init(|| fc).clone())
    }

    /// `ℓ_G(E) = dim F_G(E)`.
    pub fn analytic_spread(&self) -> Result<usize> {
        Ok(self.fiber_cone()?.spread)
    }

    /// `dim R_G(E)` from `k[x, y]/J`, checked against `d + rank E`.
    pub fn dim_rees(&self) -> Result<usize> {
        let (a, b) = self.dim_rees_routes()?;
        if a != b {
            return Err(Error::Inconsistency(format!(
                "dim R_G(E): presentation gives {a}, d + rank E gives {b}"
            )));
        }
        Ok(a)
    }

    /// `(route A, route B)` without the consistency assertion.
    pub fn dim_rees_routes(&self) -> Result<(usize, usize)> {
        let pres = self.presentation()?;
        let a = pres.ideal.quotient().krull_dim()?;
        if a < 0 {
            return Err(Error::Inconsistency("the Rees algebra is zero".into()));
        }
        Ok((a as usize, self.d() + self.rank()?))
    }

    /// `F_e(E)`: the ideal of maximal minors of the generator matrix.
    pub fn fitting_invariant(&self) -> Result<Submodule<F>> {
        fitting_invariant(&self.module)
    }

    /// `Fitt_j(E)` for `j = 0..=μ`.
    pub fn fitting_chain(&self) -> Result<Vec<Submodule<F>>> {
        (0..=self.mu())
            .map(|j| fitting_ideal(&self.module, j))
            .collect()
    }

    /// `rank E = e` and `E**` free.
    pub fn is_ideal_module(&self) -> Result<bool> {
        if self.rank()? != self.e() {
            return Ok(false);
        }
        modops::double_dual_free(&self.module)
    }

    fn require_ideal_module(&self) -> Result<()> {
        if self.is_ideal_module()? {
            Ok(())
        } else {
            Err(Error::Validation("E is not an ideal module".into()))
        }
    }

    pub fn is_free(&self) -> Result<bool> {
        let (_, syz) = groebner::syzygies(self.module.ambient(), self.module.gens())?;
        Ok(syz.is_empty())
    }

    pub fn deviations(&self) -> Result<Deviations> {
        self.require_ideal_module()?;
        let ht = match height(&self.fitting_invariant()?)? {
            ExtendedNat::Finite(h) => h,
            ExtendedNat::Infinite => {
                return Err(Error::Inconsistency(
                    "F_e(E) is the unit ideal while E ≠ G".into(),
                ))
            }
        };
        let (mu, e, spread) = (self.mu(), self.e(), self.analytic_spread()?);
        let deviation = mu as i64 - e as i64 + 1 - ht as i64;
        let analytic_deviation = spread as i64 - e as i64 + 1 - ht as i64;
        if !(deviation >= analytic_deviation && analytic_deviation >= 0) {
            return Err(Error::Inconsistency(format!(
                "expected d(E) ≥ ad(E) ≥ 0, got {deviation} and {analytic_deviation}"
            )));
        }
        Ok(Deviations {
            mu,
            e,
            spread,
            fitting_height: ht,
            deviation,
            analytic_deviation,
        })
    }

    pub fn deviation(&self) -> Result<i64> {
        Ok(self.deviations()?.deviation)
    }

    pub fn analytic_deviation(&self) -> Result<i64> {
        Ok(self.deviations()?.analytic_deviation)
    }

    /// Minimal primes of `R/F_e(E)` when `F_e(E)` is a monomial ideal.
    pub fn fitting_minimal_primes(&self) -> Result<Option<Vec<MonomialPrime>>> {
        let fe = self.fitting_invariant()?;
        let gb = fe.groebner()?;
        if gb.elements().iter().any(|g| g.terms().len() != 1) {
            return Ok(None);
        }
        let lead = fe.leading_ideals()?.remove(0);
        Ok(Some(minimal_primes_monomial(&lead, self.d())?))
    }

    /// `μ(E_p) = min { r : Fitt_r(E) ⊄ p }`.
    pub fn local_mu(&self, prime: &Submodule<F>) -> Result<usize> {
        for (r, fitt) in self.fitting_chain()?.iter().enumerate() {
            if !prime.contains_submodule(fitt)? {
                return Ok(r);
            }
        }
        Err(Error::Inconsistency("Fitt_μ(E) = R lies in a prime".into()))
    }

    /// CI, equimultiplicity and the generic CI condition. `primes` supplies
    /// the minimal primes of `R/F_e(E)` when it is not monomial.
    pub fn predicates(&self, primes: Option<&[Submodule<F>]>) -> Result<Predicates> {
        let dev = self.deviations()?;
        let target = dev.fitting_height + dev.e - 1;
        let supplied: Option<Vec<(String, Submodule<F>)>> = match self.fitting_minimal_primes()? {
            Some(ps) => Some(
                ps.iter()
                    .map(|p| Ok((p.render(self.ring.names()), p.as_ideal(&self.ring)?)))
                    .collect::<Result<_>>()?,
            ),
            None => primes.map(|ps| {
                ps.iter()
                    .map(|p| {
                        let text: Vec<String> =
                            p.ideal_gens().iter().map(|g| g.to_string()).collect();
                        (format!("({})", text.join(", ")), p.clone())
                    })
                    .collect()
            }),
        };
        let mut local_counts = Vec::new();
        let generically_ci = match supplied {
            None => None,
            Some(list) => {
                let mut ok = true;
                for (name, p) in list {
                    let local_mu = self.local_mu(&p)?;
                    ok &= local_mu == target;
                    local_counts.push(LocalCount {
                        prime: name,
                        local_mu,
                    });
                }
                Some(ok)
            }
        };
        Ok(Predicates {
            complete_intersection: dev.deviation == 0,
            equimultiple: dev.analytic_deviation == 0,
            generically_ci,
            local_counts,
        })
    }

    /// Generator matrix of `E_n` as CSV: rows are the `t`-monomial basis of
    /// `G_n`, columns the minimal generators.
    pub fn power_csv(&self, n: usize) -> Result<String> {
        let p = self.rees_power(n)?;
        let tr = self.t_ring()?;
        let d = self.d();
        let mut out = String::from("basis");
        for k in 1..=p.generators().len() {
            out.push_str(&format!(",g{k}"));
        }
        out.push('\n');
        for (row, alpha) in p.basis.iter().enumerate() {
            let mut exps = vec![0u16; d];
            exps.extend_from_slice(alpha.exponents());
            out.push_str(&tr.render_monomial(&Monomial::from_exponents(&exps)));
            for g in p.generators() {
                out.push(',');
                out.push_str(&g.component(row).to_string());
            }
            out.push('\n');
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{parse_polynomial, PrimeField};

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

    #[test]
    fn t_basis_is_descending_lex() {
        let b: Vec<Vec<u16>> = t_basis(2, 2)
            .iter()
            .map(|m| m.exponents().to_vec())
            .collect();
        assert_eq!(b, [vec![2, 0], vec![1, 1], vec![0, 2]]);
        assert_eq!(t_basis(3, 4).len(), 15);
    }

    #[test]
    fn maximal_ideal_powers_and_presentation() {
        let r = ring(&["x", "y"]);
        let ctx = ReesContext::new(&module(&r, 1, &[&["x"], &["y"]])).unwrap();
        let p2 = ctx.rees_power(2).unwrap();
        let shown: Vec<String> = p2.generators().iter().map(|g| g.to_string()).collect();
        assert_eq!(shown, ["(x^2)", "(x*y)", "(y^2)"]);
        let j = ctx.presentation().unwrap().generators().unwrap();
        assert_eq!(j.len(), 1);
        assert_eq!(j[0].to_string(), "y*y1 - x*y2");
        assert_eq!(ctx.analytic_spread().unwrap(), 2);
        assert_eq!(ctx.dim_rees().unwrap(), 3);
        assert!(ctx.rees_power(0).unwrap().submodule.is_whole().unwrap());
    }

    #[test]
    fn diagonal_module() {
        let r = ring(&["x", "y"]);
        let ctx = ReesContext::new(&module(&r, 2, &[&["x", "0"], &["0", "y"]])).unwrap();
        let p2 = ctx.rees_power(2).unwrap();
        let shown: Vec<String> = p2.generators().iter().map(|g| g.to_string()).collect();
        assert_eq!(shown, ["(x^2, 0, 0)", "(0, x*y, 0)", "(0, 0, y^2)"]);
        assert!(ctx.presentation().unwrap().ideal.is_zero());
        assert_eq!(ctx.dim_rees().unwrap(), 4);
        assert_eq!(ctx.analytic_spread().unwrap(), 2);
        let csv = ctx.power_csv(2).unwrap();
        assert_eq!(
            csv,
            "basis,g1,g2,g3\nt1^2,x^2,0,0\nt1*t2,0,x*y,0\nt2^2,0,0,y^2\n"
        );
    }

    #[test]
    fn principal_ideal() {
        let r = ring(&["x", "y"]);
        let ctx = ReesContext::new(&module(&r, 1, &[&["x"]])).unwrap();
        assert!(ctx.presentation().unwrap().ideal.is_zero());
        assert_eq!(ctx.analytic_spread().unwrap(), 1);
        assert_eq!(ctx.dim_rees().unwrap(), 3);
    }

    #[test]
    fn oracle_agrees() {
        let r = ring(&["x", "y"]);
        for m in [
            module(&r, 1, &[&["x"], &["y"]]),
            module(&r, 2, &[&["x", "0"], &["0", "y"]]),
            module(&r, 2, &[&["x", "0"], &["y", "x"], &["0", "y"]]),
        ] {
            let ctx = ReesContext::new(&m).unwrap();
            for n in 1..=3 {
                let a = &ctx.rees_power(n).unwrap().submodule;
                let b = ctx.rees_power_oracle(n).unwrap();
                assert!(a.same_submodule(&b).unwrap(), "n = {n}");
            }
        }
    }

    #[test]
    fn deviation_of_maximal_ideal() {
        let r = ring(&["x", "y"]);
        let ctx = ReesContext::new(&module(&r, 1, &[&["x"], &["y"]])).unwrap();
        let dev = ctx.deviations().unwrap();
        assert_eq!((dev.deviation, dev.analytic_deviation), (0, 0));
        let pred = ctx.predicates(None).unwrap();
        assert!(pred.complete_intersection && pred.equimultiple);
        assert_eq!(pred.generically_ci, Some(true));
        assert_eq!(pred.local_counts[0].local_mu, 2);
    }

    #[test]
    fn x2_xy_deviation() {
        let r = ring(&["x", "y"]);
        let ctx = ReesContext::new(&module(&r, 1, &[&["x^2"], &["x*y"]])).unwrap();
        let dev = ctx.deviations().unwrap();
        assert_eq!(dev.fitting_height, 1);
        assert_eq!(dev.deviation, 1);
        assert_eq!(dev.analytic_deviation, 1);
        let pred = ctx.predicates(None).unwrap();
        assert!(!pred.complete_intersection);
        assert_eq!(pred.generically_ci, Some(true));
    }

    #[test]
    fn rejects_whole_module_and_ungraded_columns() {
        let r = ring(&["x", "y"]);
        assert!(ReesContext::new(&module(&r, 1, &[&["x"], &["1"]])).is_err());
        assert!(ReesContext::new(&module(&r, 2, &[&["x", "1"]])).is_err());
    }
}
