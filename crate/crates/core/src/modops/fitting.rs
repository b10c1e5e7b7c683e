//! Minors, Fitting ideals, rank and duals.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::groebner;
use crate::polyring::{Field, FreeModule, ModuleElement, Polynomial, RingRef};

use super::Submodule;

/// All nonzero `k × k` minors of `matrix` (given as rows), deduplicated up to
/// scalars. `k = 0` yields the single minor `1`.
pub fn minors<F: Field>(
    ring: &RingRef<F>,
    matrix: &[Vec<Polynomial<F>>],
    k: usize,
) -> Result<Vec<Polynomial<F>>> {
    let rows = matrix.len();
    let cols = matrix.first().map_or(0, |r| r.len());
    if k == 0 {
        return Ok(vec![Polynomial::one(ring)]);
    }
    if k > rows || k > cols {
        return Ok(Vec::new());
    }
    if cols > 64 {
        return Err(Error::ResourceLimit(format!(
            "{cols} columns in a minor computation"
        )));
    }
    let mut out: Vec<Polynomial<F>> = Vec::new();
    for row_set in subsets(rows, k) {
        // dp[mask]: signed sum over assignments of the first |mask| chosen
        // rows to the columns in mask
        let mut dp: HashMap<u64, Polynomial<F>> = HashMap::new();
        dp.insert(0, Polynomial::one(ring));
        for &r in &row_set {
            let mut next: HashMap<u64, Polynomial<F>> = HashMap::new();
            for (mask, acc) in &dp {
                for c in 0..cols {
                    if mask & (1 << c) != 0 || matrix[r][c].is_zero() {
                        continue;
                    }
                    let above = (mask >> (c + 1)).count_ones();
                    let mut term = acc.checked_mul(&matrix[r][c])?;
                    if above % 2 == 1 {
                        term = -&term;
                    }
                    let key = mask | (1 << c);
                    let slot = next.entry(key).or_insert_with(|| Polynomial::zero(ring));
                    *slot = slot.checked_add(&term)?;
                }
            }
            next.retain(|_, p| !p.is_zero());
            dp = next;
        }
        let mut keys: Vec<u64> = dp.keys().copied().collect();
        keys.sort_unstable();
        for key in keys {
            let m = dp[&key].monic();
            if !out.contains(&m) {
                out.push(m);
            }
        }
    }
    Ok(out)
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Rows are ambient positions, columns the minimal generators.
pub fn generator_matrix<F: Field>(m: &Submodule<F>) -> Result<Vec<Vec<Polynomial<F>>>> {
    let gens = m.minimal_generators()?;
    Ok((0..m.ambient().rank())
        .map(|i| gens.iter().map(|g| g.component(i)).collect())
        .collect())
}

fn unit_ideal<F: Field>(ring: &RingRef<F>) -> Result<Submodule<F>> {
    Submodule::ideal(ring, &[Polynomial::one(ring)])
}

/// `Fitt_j(M)` of the abstract module `M`: the ideal of `(μ − j)`-minors of
/// the relation matrix on its minimal generators.
pub fn fitting_ideal<F: Field>(m: &Submodule<F>, j: usize) -> Result<Submodule<F>> {
    let ring = m.ring().clone();
    let gens = m.minimal_generators()?;
    let mu = gens.len();
    if j >= mu {
        return unit_ideal(&ring);
    }
    let (_, syz) = groebner::syzygies(m.ambient(), &gens)?;
    let matrix: Vec<Vec<Polynomial<F>>> = (0..mu)
        .map(|i| syz.iter().map(|s| s.component(i)).collect())
        .collect();
    Submodule::ideal(&ring, &minors(&ring, &matrix, mu - j)?)
}

/// The ideal of `e × e` minors of the generator matrix of `E ⊆ R^e`, which is
/// `Fitt_0(R^e / E)`.
pub fn fitting_invariant<F: Field>(e: &Submodule<F>) -> Result<Submodule<F>> {
    let ring = e.ring().clone();
    let matrix = generator_matrix(e)?;
    Submodule::ideal(&ring, &minors(&ring, &matrix, e.ambient().rank())?)
}

/// Largest `r` with a nonzero `r × r` minor of the generator matrix.
pub fn rank<F: Field>(m: &Submodule<F>) -> Result<usize> {
    let matrix = generator_matrix(m)?;
    let cols = matrix.first().map_or(0, |r| r.len());
    for r in (1..=matrix.len().min(cols)).rev() {
        if !minors(m.ring(), &matrix, r)?.is_empty() {
            return Ok(r);
        }
    }
    Ok(0)
}

/// `M* = Hom(M, R)` as a submodule of `R^μ` (shifts `−δ_j` for generator
/// degrees `δ_j`): the kernel of the transposed relation matrix.
pub fn dual<F: Field>(m: &Submodule<F>) -> Result<Submodule<F>> {
    let ring = m.ring().clone();
    let gens = m.minimal_generators()?;
    let degrees: Vec<i32> = gens
        .iter()
        .map(|g| g.degree().expect("nonzero") as i32)
        .collect();
    let (_, syz) = groebner::syzygies(m.ambient(), &gens)?;
    let target_shifts: Vec<i32> = degrees.iter().map(|d| -d).collect();
    let target = FreeModule::with_shifts(&ring, target_shifts.clone()).into_ref();
    if syz.is_empty() {
        return Ok(Submodule::whole(&target));
    }
    let row_shifts: Vec<i32> = syz
        .iter()
        .map(|s| -(s.degree().expect("nonzero") as i32))
        .collect();
    let row_module = FreeModule::with_shifts(&ring, row_shifts).into_ref();
    let rows: Vec<ModuleElement<F>> = (0..gens.len())
        .map(|i| {
            let comps: Vec<Polynomial<F>> = syz.iter().map(|s| s.component(i)).collect();
            ModuleElement::from_components(&row_module, &comps)
        })
        .collect::<Result<_>>()?;
    let (free, kernel) = groebner::syzygies_with_shifts(&row_module, &rows, target_shifts)?;
    Submodule::new(&free, kernel)
}

/// Whether `E**` is free, for `E ⊆ R^e` of rank `e`.
pub fn double_dual_free<F: Field>(e: &Submodule<F>) -> Result<bool> {
    let r = rank(e)?;
    if r < e.ambient().rank() {
        return Err(Error::Validation(format!(
            "rank {r} is less than the ambient rank {}",
            e.ambient().rank()
        )));
    }
    let dd = dual(&dual(e)?)?;
    let gens = dd.minimal_generators()?;
    let (_, syz) = groebner::syzygies(dd.ambient(), &gens)?;
    Ok(syz.is_empty())
}
