//! Associated primes of quotients by monomial submodules.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::polyring::{Field, Monomial, Polynomial, RingRef};

use super::{minimize_monomials, GradedQuotient, Submodule};

const MAX_DIVISORS: u128 = 2_000_000;

/// A prime generated by a set of variables; the empty set is `(0)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonomialPrime {
    vars: Vec<usize>,
}

impl MonomialPrime {
    pub fn new(mut vars: Vec<usize>) -> Self {
        vars.sort_unstable();
        vars.dedup();
        MonomialPrime { vars }
    }

    pub fn zero() -> Self {
        MonomialPrime { vars: Vec::new() }
    }

    pub fn maximal(nvars: usize) -> Self {
        MonomialPrime {
            vars: (0..nvars).collect(),
        }
    }

    pub fn vars(&self) -> &[usize] {
        &self.vars
    }

    pub fn height(&self) -> usize {
        self.vars.len()
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.vars.is_empty()
    }

    /// `true` if every term of `p` involves one of the prime's variables.
    pub fn contains_poly<F: Field>(&self, p: &Polynomial<F>) -> bool {
        p.terms()
            .iter()
            .all(|(m, _)| self.vars.iter().any(|&v| m.exponents()[v] > 0))
    }

    pub fn contains_ideal<F: Field>(&self, ideal: &Submodule<F>) -> bool {
        ideal.ideal_gens().iter().all(|p| self.contains_poly(p))
    }

    pub fn as_ideal<F: Field>(&self, ring: &RingRef<F>) -> Result<Submodule<F>> {
        let gens: Vec<Polynomial<F>> = self
            .vars
            .iter()
            .map(|&v| Polynomial::var(ring, v))
            .collect();
        Submodule::ideal(ring, &gens)
    }

    /// `(x, y)` or `(0)`.
    pub fn render(&self, names: &[String]) -> String {
        if self.vars.is_empty() {
            return "(0)".into();
        }
        let parts: Vec<&str> = self.vars.iter().map(|&v| names[v].as_str()).collect();
        format!("({})", parts.join(", "))
    }
}

/// Associated primes of a quotient, with a flag for components carrying no
/// relations (a free summand contributes `(0)`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssReport {
    pub primes: BTreeSet<MonomialPrime>,
    pub free_summand: bool,
}

impl AssReport {
    pub fn contains_maximal(&self, nvars: usize) -> bool {
        self.primes.contains(&MonomialPrime::maximal(nvars))
    }

    pub fn render(&self, names: &[String]) -> Vec<String> {
        self.primes.iter().map(|p| p.render(names)).collect()
    }
}

/// `Ass(R/I)` for a proper monomial ideal `I ≠ 0`: the monomial primes of
/// the form `(I : u)` with `u` dividing the lcm of the generators.
pub fn ass_monomial_ideal(gens: &[Monomial], nvars: usize) -> Result<BTreeSet<MonomialPrime>> {
    let gens = minimize_monomials(gens.to_vec());
    let mut out = BTreeSet::new();
    if gens.is_empty() {
        out.insert(MonomialPrime::zero());
        return Ok(out);
    }
    if gens.iter().any(|g| g.is_one()) {
        return Ok(out);
    }
    let lcm = gens.iter().skip(1).fold(gens[0].clone(), |a, g| a.lcm(g));
    let bounds: Vec<u16> = lcm.exponents().to_vec();
    let count: u128 = bounds.iter().map(|&b| b as u128 + 1).product();
    if count > MAX_DIVISORS {
        return Err(Error::ResourceLimit(format!(
            "{count} divisors to inspect for associated primes"
        )));
    }
    let mut exps = vec![0u16; nvars];
    loop {
        let u = Monomial::from_exponents(&exps);
        if !gens.iter().any(|g| g.divides(&u)) {
            let colon = minimize_monomials(
                gens.iter()
                    .map(|g| g.div(&g.gcd(&u)).expect("gcd divides"))
                    .collect(),
            );
            if colon.iter().all(|m| m.total_degree() == 1) {
                out.insert(MonomialPrime::new(
                    colon
                        .iter()
                        .flat_map(|m| m.support().collect::<Vec<_>>())
                        .collect(),
                ));
            }
        }
        // odometer over the divisor lattice
        let mut i = 0;
        loop {
            if i == nvars {
                return Ok(out);
            }
            if exps[i] < bounds[i] {
                exps[i] += 1;
                break;
            }
            exps[i] = 0;
            i += 1;
        }
    }
}

/// Minimal primes of a monomial ideal: the inclusion-minimal sets of
/// variables meeting every generator's support.
pub fn minimal_primes_monomial(gens: &[Monomial], nvars: usize) -> Result<Vec<MonomialPrime>> {
    if nvars > 20 {
        return Err(Error::ResourceLimit(format!(
            "{nvars} variables for minimal prime enumeration"
        )));
    }
    let masks: Vec<u32> = gens
        .iter()
        .map(|g| g.support().fold(0u32, |a, v| a | (1 << v)))
        .collect();
    if masks.iter().any(|&m| m == 0) {
        return Ok(Vec::new());
    }
    let mut covers: Vec<u32> = (0u32..(1 << nvars))
        .filter(|&s| masks.iter().all(|&m| m & s != 0))
        .collect();
    covers.sort_by_key(|s| (s.count_ones(), *s));
    let mut minimal: Vec<u32> = Vec::new();
    for s in covers {
        if !minimal.iter().any(|&t| t & s == t) {
            minimal.push(s);
        }
    }
    let mut out: Vec<MonomialPrime> = minimal
        .into_iter()
        .map(|s| MonomialPrime::new((0..nvars).filter(|&v| s & (1 << v) != 0).collect()))
        .collect();
    out.sort();
    Ok(out)
}

pub(super) fn ass_of_quotient<F: Field>(q: &GradedQuotient<F>) -> Result<AssReport> {
    let gb = q.relations().groebner()?;
    if gb.elements().iter().any(|e| e.terms().len() != 1) {
        return Err(Error::Unsupported(
            "associated primes are only computed for componentwise-monomial relations".into(),
        ));
    }
    let n = q.ring().nvars();
    let mut primes = BTreeSet::new();
    let mut free_summand = false;
    for comp in q.relations().leading_ideals()? {
        if comp.is_empty() {
            free_summand = true;
            primes.insert(MonomialPrime::zero());
        } else {
            primes.extend(ass_monomial_ideal(&comp, n)?);
        }
    }
    Ok(AssReport {
        primes,
        free_summand,
    })
}
