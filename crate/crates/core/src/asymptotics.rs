//! Windowed asymptotics of `depth(G_n/E_n)`, `depth E_n` and
//! `Ass(G_n/E_n)`, and the checkers that confront them with the spread, the
//! depth of the Rees algebra and the deviation calculus.
//!
//! A window `1..=n_max` can only supply evidence for statements about large
//! `n`. Verdicts are therefore three-valued, and `Violation` is reserved for
//! exact inequalities whose hypotheses were all verified.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::sync::{Arc, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::modops::{ExtendedNat, GradedQuotient, MonomialPrime, Submodule};
use crate::polyring::{Field, FreeModule, ModuleElement, Monomial, Polynomial, RingRef};
use crate::rees::{derived_ring, power_sequence, ReesContext, ReesPower};

pub const DEFAULT_N_MAX: usize = 6;
pub const DEFAULT_WINDOW: usize = 3;
/// Upper limit on `n_max`.
pub const MAX_N: usize = 32;

const DETERMINISTIC_CANDIDATES: usize = 256;
const RANDOM_CANDIDATES: usize = 16;

/// The constant tail of a sequence: `value` at every `n ≥ from`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StableTail<T> {
    pub from: usize,
    pub value: T,
}

/// Finds the constant tail of `values` (indexed from `n = 1`) when its last
/// `window` entries agree.
pub fn stable_tail<T: Clone + PartialEq>(values: &[T], window: usize) -> Option<StableTail<T>> {
    let window = window.max(1);
    if values.len() < window {
        return None;
    }
    let last = values.last()?;
    if !values[values.len() - window..].iter().all(|v| v == last) {
        return None;
    }
    let start = values.iter().rposition(|v| v != last).map_or(0, |k| k + 1);
    Some(StableTail {
        from: start + 1,
        value: last.clone(),
    })
}

/// `depth(G_n/E_n)` for `n = 1..=n_max`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DepthSequence {
    pub values: Vec<ExtendedNat>,
    pub stable_tail: Option<StableTail<ExtendedNat>>,
}

impl DepthSequence {
    /// The value at `n ≥ 1`.
    pub fn at(&self, n: usize) -> Option<ExtendedNat> {
        n.checked_sub(1).and_then(|k| self.values.get(k).copied())
    }

    pub fn windowed_inf(&self) -> Option<ExtendedNat> {
        self.values.iter().copied().min()
    }
}

/// `Ass(G_n/E_n)` for `n = 1..=n_max`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssSequence {
    pub values: Vec<BTreeSet<MonomialPrime>>,
    pub stable_tail: Option<StableTail<BTreeSet<MonomialPrime>>>,
}

impl AssSequence {
    pub fn render(&self, names: &[String]) -> Vec<Vec<String>> {
        self.values
            .iter()
            .map(|s| s.iter().map(|p| p.render(names)).collect())
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Consistent,
    Violation,
    Inconclusive,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Consistent => "CONSISTENT",
            Verdict::Violation => "VIOLATION",
            Verdict::Inconclusive => "INCONCLUSIVE",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckerVerdict {
    pub name: String,
    pub instance: String,
    pub n_max: usize,
    pub quantities: BTreeMap<String, Value>,
    pub verdict: Verdict,
    pub explanation: String,
}

impl CheckerVerdict {
    fn new(name: &str, instance: &str, n_max: usize) -> Self {
        CheckerVerdict {
            name: name.into(),
            instance: instance.into(),
            n_max,
            quantities: BTreeMap::new(),
            verdict: Verdict::Inconclusive,
            explanation: String::new(),
        }
    }

    fn put(&mut self, key: &str, value: impl Serialize) {
        let v = serde_json::to_value(value).expect("plain data serializes");
        self.quantities.insert(key.into(), v);
    }

    fn finish(mut self, verdict: Verdict, explanation: impl Into<String>) -> Self {
        self.verdict = verdict;
        self.explanation = explanation.into();
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WindowOptions {
    pub n_max: usize,
    pub window: usize,
    pub seed: u64,
}

impl Default for WindowOptions {
    fn default() -> Self {
        WindowOptions {
            n_max: DEFAULT_N_MAX,
            window: DEFAULT_WINDOW,
            seed: 0,
        }
    }
}

/// Per-`n` data of `G_n/E_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct PowerStats {
    depth: ExtendedNat,
    dim: i64,
}

/// Window computations over one `ReesContext`, cached.
pub struct Asymptotics<'a, F: Field> {
    ctx: &'a ReesContext<F>,
    opts: WindowOptions,
    instance: String,
    powers: OnceLock<Vec<Arc<ReesPower<F>>>>,
    stats: OnceLock<Vec<PowerStats>>,
    power_depths: OnceLock<Vec<ExtendedNat>>,
    rees_depth: OnceLock<usize>,
}

impl<'a, F: Field> Asymptotics<'a, F> {
    pub fn new(ctx: &'a ReesContext<F>, opts: WindowOptions) -> Result<Self> {
        if opts.n_max == 0 || opts.n_max > MAX_N {
            return Err(Error::InvalidArgument(format!(
                "n_max must lie in 1..={MAX_N}, got {}",
                opts.n_max
            )));
        }
        let gens: Vec<String> = ctx.module().gens().iter().map(|g| g.to_string()).collect();
        let instance = format!("E = <{}> in R^{}", gens.join(", "), ctx.e());
        Ok(Asymptotics {
            ctx,
            opts,
            instance,
            powers: OnceLock::new(),
            stats: OnceLock::new(),
            power_depths: OnceLock::new(),
            rees_depth: OnceLock::new(),
        })
    }

    pub fn with_instance(mut self, name: impl Into<String>) -> Self {
        self.instance = name.into();
        self
    }

    pub fn context(&self) -> &ReesContext<F> {
        self.ctx
    }

    pub fn options(&self) -> WindowOptions {
        self.opts
    }

    pub fn instance(&self) -> &str {
        &self.instance
    }

    fn verdict(&self, name: &str) -> CheckerVerdict {
        CheckerVerdict::new(name, &self.instance, self.opts.n_max)
    }

    /// `E_1, …, E_{n_max}`.
    pub fn powers(&self) -> Result<&[Arc<ReesPower<F>>]> {
        if let Some(p) = self.powers.get() {
            return Ok(p);
        }
        let list = (1..=self.opts.n_max)
            .map(|n| self.ctx.rees_power(n))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.powers.get_or_init(|| list))
    }

    fn stats(&self) -> Result<&[PowerStats]> {
        if let Some(s) = self.stats.get() {
            return Ok(s);
        }
        let list = self
            .powers()?
            .par_iter()
            .map(|p| {
                let q = p.quotient();
                Ok(PowerStats {
                    depth: q.depth()?,
                    dim: q.krull_dim()?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(self.stats.get_or_init(|| list))
    }

    pub fn depth_sequence(&self) -> Result<DepthSequence> {
        let values: Vec<ExtendedNat> = self.stats()?.iter().map(|s| s.depth).collect();
        let stable_tail = stable_tail(&values, self.opts.window);
        Ok(DepthSequence {
            values,
            stable_tail,
        })
    }

    /// `dim G_n/E_n` for `n = 1..=n_max`.
    pub fn quotient_dims(&self) -> Result<Vec<i64>> {
        Ok(self.stats()?.iter().map(|s| s.dim).collect())
    }

    /// `depth E_n` for `n = 0..=n_max`, with `depth E_0 = depth R = d`.
    pub fn depth_powers(&self) -> Result<Vec<ExtendedNat>> {
        if let Some(v) = self.power_depths.get() {
            return Ok(v.clone());
        }
        let rest = self
            .powers()?
            .par_iter()
            .map(|p| p.submodule.depth())
            .collect::<Result<Vec<_>>>()?;
        let mut all = vec![ExtendedNat::Finite(self.ctx.d())];
        all.extend(rest);
        Ok(self.power_depths.get_or_init(|| all).clone())
    }

    /// Ass per `n`, for componentwise-monomial powers. Cross-checked against
    /// the depth sequence: `m ∈ Ass ⇔ depth 0`.
    pub fn ass_sequence(&self) -> Result<AssSequence> {
        let values = self
            .powers()?
            .par_iter()
            .map(|p| Ok(p.quotient().ass_monomial()?.primes))
            .collect::<Result<Vec<BTreeSet<MonomialPrime>>>>()?;
        let depths = self.depth_sequence()?;
        let d = self.ctx.d();
        for (k, primes) in values.iter().enumerate() {
            let has_max = primes.contains(&MonomialPrime::maximal(d));
            let depth_zero = depths.values[k] == ExtendedNat::Finite(0);
            if has_max != depth_zero {
                return Err(Error::Inconsistency(format!(
                    "n = {}: m ∈ Ass is {has_max} but depth is {}",
                    k + 1,
                    depths.values[k]
                )));
            }
        }
        let stable_tail = stable_tail(&values, self.opts.window);
        Ok(AssSequence {
            values,
            stable_tail,
        })
    }

    /// A linear form `a` that is a nonzerodivisor on every `G_n/E_n` in the
    /// window, or `None` when some depth is zero or the search fails.
    pub fn superficial_element(&self) -> Result<Option<Polynomial<F>>> {
        if self.ctx.d() == 0 {
            return Ok(None);
        }
        if self
            .depth_sequence()?
            .values
            .contains(&ExtendedNat::Finite(0))
        {
            return Ok(None);
        }
        let powers = self.powers()?;
        for a in linear_form_candidates(self.ctx.ring(), self.opts.seed) {
            if is_regular_on_all(&a, powers.iter().map(|p| &p.submodule))? {
                return Ok(Some(a));
            }
        }
        Ok(None)
    }

    /// Reduction modulo a linear form `a`: compares `G_n/E_n` modulo `a` with
    /// `Ḡ_n/Ē_n` over `R/(a)`, tests `aG_n ∩ E_n = aE_n`, and counts the
    /// minimal generators of `Ē_n` through `E_n/(mE_n + aG_n ∩ E_n)`.
    pub fn bar_reduce_check(&self, a: &Polynomial<F>) -> Result<CheckerVerdict> {
        let mut out = self.verdict("bar_reduce");
        let ring = self.ctx.ring();
        let pivot = linear_pivot(a)?;
        out.put("a", a.to_string());
        let (bar_ring, images) = quotient_by_linear_form(ring, a, pivot)?;
        out.put("reduced_ring", bar_ring.names());
        let bar_gens: Vec<ModuleElement<F>> = {
            let bar_free = FreeModule::new(&bar_ring, self.ctx.e()).into_ref();
            self.ctx
                .module()
                .gens()
                .iter()
                .map(|g| {
                    let comps: Vec<Polynomial<F>> = g
                        .components()
                        .iter()
                        .map(|c| c.substitute(&images, &bar_ring))
                        .collect::<Result<_>>()?;
                    ModuleElement::from_components(&bar_free, &comps)
                })
                .collect::<Result<_>>()?
        };
        let bar_free = FreeModule::new(&bar_ring, self.ctx.e()).into_ref();
        let bar_e = Submodule::new(&bar_free, bar_gens)?;
        let bar_powers = power_sequence(&bar_e, self.opts.n_max)?;
        let powers = self.powers()?;
        let maximal = maximal_ideal(ring)?;
        let mut mus = Vec::new();
        for (k, (p, bar_p)) in powers.iter().zip(&bar_powers).enumerate() {
            let n = k + 1;
            let e_n = &p.submodule;
            let a_g = Submodule::whole(p.ambient()).scale(a)?;
            let lhs = e_n.sum(&a_g)?.quotient().hilbert_series()?;
            let rhs = bar_p.quotient().hilbert_series()?;
            if !lhs.same_function(&rhs) {
                out.put("failed_at", n);
                return Ok(out.finish(
                    Verdict::Inconclusive,
                    format!(
                        "n = {n}: HF of G_n/(E_n + aG_n) differs from HF of the reduced quotient"
                    ),
                ));
            }
            let meet = e_n.intersect(&a_g)?;
            if !meet.same_submodule(&e_n.scale(a)?)? {
                out.put("failed_at", n);
                return Ok(out.finish(
                    Verdict::Inconclusive,
                    format!("n = {n}: aG_n ∩ E_n ≠ aE_n, so a is not superficial in the window"),
                ));
            }
            let bar_mu = bar_p.submodule.mu()?;
            let count = fiber_count(e_n, &meet, &maximal)?;
            if count != bar_mu as i64 {
                out.put("failed_at", n);
                return Ok(out.finish(
                    Verdict::Inconclusive,
                    format!("n = {n}: dim E_n/(mE_n + aG_n ∩ E_n) = {count} but μ(Ē_n) = {bar_mu}"),
                ));
            }
            mus.push(bar_mu);
        }
        out.put("reduced_mu", &mus);
        Ok(out.finish(
            Verdict::Consistent,
            "Hilbert functions, aG_n ∩ E_n = aE_n and generator counts agree at every n",
        ))
    }

    /// `ℓ ≤ d + e − 1 − depth(G,E)`, with the stable tail standing in for
    /// `depth(G,E)`, and the weak bound `ℓ ≤ d + e − 1`.
    pub fn burch_check(&self) -> Result<CheckerVerdict> {
        let mut out = self.verdict("burch");
        let (d, e) = (self.ctx.d() as i64, self.ctx.e() as i64);
        let spread = self.ctx.analytic_spread()? as i64;
        let depths = self.depth_sequence()?;
        out.put("d", d);
        out.put("e", e);
        out.put("spread", spread);
        out.put("depth_sequence", &depths.values);
        let weak = d + e - 1;
        out.put("weak_bound", weak);
        if let Some(ExtendedNat::Finite(w)) = depths.windowed_inf() {
            out.put("window_bound", weak - w as i64);
        }
        if spread > weak {
            return Ok(out.finish(
                Verdict::Violation,
                format!("ℓ = {spread} > d + e − 1 = {weak}"),
            ));
        }
        let Some(tail) = &depths.stable_tail else {
            out.put("stable_tail", Value::Null);
            return Ok(out.finish(
                Verdict::Inconclusive,
                format!(
                    "ℓ = {spread} ≤ {weak}; the depth sequence has no stable tail in the window"
                ),
            ));
        };
        out.put("stable_tail", tail);
        let ExtendedNat::Finite(t) = tail.value else {
            return Ok(out.finish(Verdict::Inconclusive, "the quotients vanish on the tail"));
        };
        let sharp = weak - t as i64;
        out.put("sharp_bound", sharp);
        if spread > sharp {
            Ok(out.finish(
                Verdict::Violation,
                format!("ℓ = {spread} > d + e − 1 − depth(G,E) = {sharp}"),
            ))
        } else {
            let how = if spread == sharp {
                "equality"
            } else {
                "strict"
            };
            Ok(out.finish(
                Verdict::Consistent,
                format!("ℓ = {spread} ≤ {sharp} ({how})"),
            ))
        }
    }

    /// `depth R_G(E) = dim k[x,y] − pd k[x,y]/J`.
    pub fn depth_rees(&self) -> Result<usize> {
        if let Some(v) = self.rees_depth.get() {
            return Ok(*v);
        }
        let pres = self.ctx.presentation()?;
        let depth = pres.ideal.quotient().depth()?.finite().ok_or_else(|| {
            Error::Inconsistency("the Rees algebra presentation is the zero ring".into())
        })?;
        Ok(*self.rees_depth.get_or_init(|| depth))
    }

    /// `depth R_G(E) ≤ inf_n depth E_n + ℓ` with the windowed infimum, which
    /// also serves as the estimate of `grade m R_G(E)`.
    pub fn grade_and_depth_checks(&self) -> Result<CheckerVerdict> {
        let mut out = self.verdict("grade");
        let depth_rees = self.depth_rees()?;
        let dim_rees = self.ctx.dim_rees()?;
        let spread = self.ctx.analytic_spread()?;
        let powers = self.depth_powers()?;
        let inf = powers.iter().copied().min().expect("n = 0 is present");
        out.put("depth_rees", depth_rees);
        out.put("dim_rees", dim_rees);
        out.put("spread", spread);
        out.put("depth_powers", &powers);
        out.put("grade_estimate", inf);
        let ExtendedNat::Finite(inf) = inf else {
            return Ok(out.finish(Verdict::Inconclusive, "every E_n in the window is zero"));
        };
        let bound = inf + spread;
        out.put("bound", bound);
        if depth_rees > bound {
            Ok(out.finish(
                Verdict::Violation,
                format!("depth R_G(E) = {depth_rees} > inf depth E_n + ℓ = {bound}"),
            ))
        } else {
            Ok(out.finish(
                Verdict::Consistent,
                format!("depth R_G(E) = {depth_rees} ≤ {inf} + {spread} = {bound}"),
            ))
        }
    }

    /// For Cohen–Macaulay `R_G(E)` with `E` of rank `e` and not free:
    /// `ℓ = d + e − 1 − inf_{n≥1} depth G_n/E_n`.
    pub fn cm_equality_check(&self) -> Result<CheckerVerdict> {
        let mut out = self.verdict("cm_equality");
        let (d, e) = (self.ctx.d() as i64, self.ctx.e() as i64);
        let rank = self.ctx.rank()?;
        let free = self.ctx.is_free()?;
        out.put("rank", rank);
        out.put("free", free);
        if rank as i64 != e || free {
            return Ok(out.finish(
                Verdict::Inconclusive,
                format!("hypotheses fail: rank E = {rank}, e = {e}, free = {free}"),
            ));
        }
        let depth_rees = self.depth_rees()?;
        let dim_rees = self.ctx.dim_rees()?;
        let cm = depth_rees == dim_rees;
        out.put("depth_rees", depth_rees);
        out.put("dim_rees", dim_rees);
        out.put("cohen_macaulay", cm);
        if !cm {
            return Ok(out.finish(
                Verdict::Consistent,
                format!("R_G(E) is not Cohen–Macaulay (depth {depth_rees} < dim {dim_rees})"),
            ));
        }
        let spread = self.ctx.analytic_spread()? as i64;
        let depths = self.depth_sequence()?;
        out.put("spread", spread);
        out.put("depth_sequence", &depths.values);
        let Some(ExtendedNat::Finite(winf)) = depths.windowed_inf() else {
            return Ok(out.finish(Verdict::Inconclusive, "the quotients vanish in the window"));
        };
        let predicted = d + e - 1 - winf as i64;
        out.put("windowed_inf", winf);
        out.put("predicted_spread", predicted);
        // the true infimum is at most the windowed one
        if spread < predicted {
            return Ok(out.finish(
                Verdict::Violation,
                format!("ℓ = {spread} < d + e − 1 − windowed inf = {predicted}"),
            ));
        }
        let Some(tail) = &depths.stable_tail else {
            return Ok(out.finish(
                Verdict::Inconclusive,
                "R_G(E) is Cohen–Macaulay but the depth sequence has no stable tail",
            ));
        };
        out.put("stable_tail", tail);
        if let ExtendedNat::Finite(t) = tail.value {
            let sharp = d + e - 1 - t as i64;
            if spread > sharp {
                return Ok(out.finish(
                    Verdict::Violation,
                    format!("ℓ = {spread} > d + e − 1 − tail = {sharp}"),
                ));
            }
        }
        if spread == predicted {
            Ok(out.finish(
                Verdict::Consistent,
                format!("ℓ = {spread} = d + e − 1 − {winf}"),
            ))
        } else {
            Ok(out.finish(
                Verdict::Inconclusive,
                format!("ℓ = {spread}, d + e − 1 − windowed inf = {predicted}"),
            ))
        }
    }

    /// Complete intersection versus Cohen–Macaulay powers for generically
    /// CI ideal modules. `primes` lists the minimal primes of `R/F_e(E)` when
    /// `F_e(E)` is not monomial.
    pub fn cowsik_nori_check(&self, primes: Option<&[Submodule<F>]>) -> Result<CheckerVerdict> {
        let mut out = self.verdict("cowsik_nori");
        let ideal_module = self.ctx.is_ideal_module()?;
        out.put("ideal_module", ideal_module);
        if !ideal_module {
            return Ok(out.finish(Verdict::Inconclusive, "E is not an ideal module"));
        }
        let pred = self.ctx.predicates(primes)?;
        let dev = self.ctx.deviations()?;
        let Some(generic) = pred.generically_ci else {
            return Err(Error::Unsupported(
                "F_e(E) is not monomial and no minimal primes were supplied".into(),
            ));
        };
        out.put("generically_ci", generic);
        out.put("deviation", dev.deviation);
        out.put("analytic_deviation", dev.analytic_deviation);
        out.put("fitting_height", dev.fitting_height);
        out.put("complete_intersection", pred.complete_intersection);
        out.put("equimultiple", pred.equimultiple);
        out.put(
            "local_mu",
            pred.local_counts
                .iter()
                .map(|c| (c.prime.clone(), c.local_mu))
                .collect::<BTreeMap<_, _>>(),
        );
        if !generic {
            return Ok(out.finish(
                Verdict::Inconclusive,
                "E is not generically a complete intersection",
            ));
        }
        let stats = self.stats()?;
        let expected_dim = self.ctx.d() as i64 - dev.fitting_height as i64;
        let dims: Vec<i64> = stats.iter().map(|s| s.dim).collect();
        let depths: Vec<ExtendedNat> = stats.iter().map(|s| s.depth).collect();
        let cm: Vec<bool> = stats
            .iter()
            .map(|s| s.depth == ExtendedNat::Finite(s.dim.max(0) as usize) && s.dim >= 0)
            .collect();
        out.put("expected_dim", expected_dim);
        out.put("dims", &dims);
        out.put("depths", &depths);
        out.put("cohen_macaulay", &cm);
        if let Some(k) = dims.iter().position(|&x| x != expected_dim) {
            return Ok(out.finish(
                Verdict::Violation,
                format!(
                    "n = {}: dim G_n/E_n = {} but d − ht F_e(E) = {expected_dim}",
                    k + 1,
                    dims[k]
                ),
            ));
        }
        if pred.complete_intersection {
            if let Some(k) = cm.iter().position(|&c| !c) {
                return Ok(out.finish(
                    Verdict::Violation,
                    format!(
                        "E is a complete intersection but G_{}/E_{} is not Cohen–Macaulay",
                        k + 1,
                        k + 1
                    ),
                ));
            }
        }
        if cm.iter().all(|&c| c) && !pred.equimultiple {
            return Ok(out.finish(
                Verdict::Violation,
                "every G_n/E_n in the window is Cohen–Macaulay of dimension d − ht F_e(E), yet E is not equimultiple",
            ));
        }
        if pred.equimultiple && !pred.complete_intersection {
            return Ok(out.finish(
                Verdict::Violation,
                "E is generically CI and equimultiple but not a complete intersection",
            ));
        }
        let summary = match (pred.complete_intersection, cm.iter().all(|&c| c)) {
            (true, _) => "complete intersection with Cohen–Macaulay powers throughout the window",
            (false, false) => "not a complete intersection, and some G_n/E_n is not Cohen–Macaulay",
            (false, true) => unreachable!("ruled out above"),
        };
        Ok(out.finish(Verdict::Consistent, summary))
    }
}

/// `dim_k E_n/(mE_n + (aG_n ∩ E_n))`, summed over the generator degrees.
fn fiber_count<F: Field>(
    e_n: &Submodule<F>,
    meet: &Submodule<F>,
    maximal: &Submodule<F>,
) -> Result<i64> {
    let gens = e_n.minimal_generators()?;
    let degrees: Vec<i64> = gens.iter().filter_map(|g| g.degree()).collect();
    let (Some(&lo), Some(&hi)) = (degrees.iter().min(), degrees.iter().max()) else {
        return Ok(0);
    };
    let smaller = e_n.ideal_product(maximal)?.sum(meet)?;
    let a = smaller.quotient().hilbert_function(lo..=hi)?;
    let b = e_n.quotient().hilbert_function(lo..=hi)?;
    Ok(a.iter().zip(&b).map(|(x, y)| x - y).sum())
}

fn maximal_ideal<F: Field>(ring: &RingRef<F>) -> Result<Submodule<F>> {
    let vars: Vec<Polynomial<F>> = (0..ring.nvars())
        .map(|i| Polynomial::var(ring, i))
        .collect();
    Submodule::ideal(ring, &vars)
}

/// `(N : a) = N` for every `N`.
fn is_regular_on_all<'s, F: Field + 's>(
    a: &Polynomial<F>,
    modules: impl IntoIterator<Item = &'s Submodule<F>>,
) -> Result<bool> {
    for n in modules {
        if !n.contains_submodule(&n.colon(a)?)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The last variable with a nonzero coefficient in a linear form.
fn linear_pivot<F: Field>(a: &Polynomial<F>) -> Result<usize> {
    if a.is_zero() {
        return Err(Error::InvalidArgument("the linear form is zero".into()));
    }
    let mut pivot = 0;
    for (m, _) in a.terms() {
        let mut support = m.support();
        let (Some(v), None) = (support.next(), support.next()) else {
            return Err(Error::InvalidArgument(format!("{a} is not a linear form")));
        };
        if m.exponents()[v] != 1 {
            return Err(Error::InvalidArgument(format!("{a} is not a linear form")));
        }
        pivot = pivot.max(v);
    }
    if !a.is_homogeneous() {
        return Err(Error::InvalidArgument(format!("{a} is not homogeneous")));
    }
    Ok(pivot)
}

/// `R/(a) ≅ k[x without x_pivot]` and the images of the variables of `R`.
fn quotient_by_linear_form<F: Field>(
    ring: &RingRef<F>,
    a: &Polynomial<F>,
    pivot: usize,
) -> Result<(RingRef<F>, Vec<Polynomial<F>>)> {
    let keep: Vec<usize> = (0..ring.nvars()).filter(|&v| v != pivot).collect();
    let names = keep.iter().map(|&v| ring.names()[v].clone()).collect();
    let weights = keep.iter().map(|&v| ring.weights()[v]).collect();
    let bar = derived_ring(ring, names, weights, ring.order())?;
    let field = ring.field();
    let coeff = |v: usize| {
        a.terms()
            .iter()
            .find(|(m, _)| m.exponents()[v] == 1)
            .map(|(_, c)| c.clone())
    };
    let lead = coeff(pivot).expect("pivot occurs");
    let neg_inv = field.neg(&field.inv(&lead).expect("nonzero"));
    let mut pivot_image = Polynomial::zero(&bar);
    for (k, &v) in keep.iter().enumerate() {
        if let Some(c) = coeff(v) {
            let term = Polynomial::var(&bar, k).scale(&field.mul(&c, &neg_inv));
            pivot_image = pivot_image.checked_add(&term)?;
        }
    }
    let images = (0..ring.nvars())
        .map(|v| match keep.iter().position(|&w| w == v) {
            Some(k) => Polynomial::var(&bar, k),
            None => pivot_image.clone(),
        })
        .collect();
    Ok((bar, images))
}

/// Homogeneous linear forms to try as nonzerodivisors: first those with
/// coefficients in `{0, 1, −1, 2}` (leading coefficient 1), fewest terms
/// first, then pseudo-random combinations from `seed`.
pub fn linear_form_candidates<F: Field>(ring: &RingRef<F>, seed: u64) -> Vec<Polynomial<F>> {
    let mut classes: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
    for v in 0..ring.nvars() {
        classes.entry(ring.weights()[v]).or_default().push(v);
    }
    let field = ring.field();
    let coeffs: Vec<F::Elem> = [1, -1, 2].iter().map(|&c| field.from_i64(c)).collect();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let max_len = classes.values().map(Vec::len).max().unwrap_or(0);
    'outer: for size in 1..=max_len {
        for vars in classes.values() {
            for subset in combinations(vars, size) {
                let mut choice = vec![0usize; size];
                loop {
                    let terms: Vec<(Monomial, F::Elem)> = subset
                        .iter()
                        .zip(&choice)
                        .enumerate()
                        .map(|(k, (&v, &c))| {
                            let coeff = if k == 0 {
                                field.one()
                            } else {
                                coeffs[c].clone()
                            };
                            (Monomial::var(ring.nvars(), v, 1), coeff)
                        })
                        .collect();
                    let p = Polynomial::from_terms(ring, terms);
                    if p.len() == size && seen.insert(p.to_string()) {
                        out.push(p);
                        if out.len() == DETERMINISTIC_CANDIDATES {
                            break 'outer;
                        }
                    }
                    // odometer over the non-leading coefficients
                    let mut k = 1;
                    while k < size && choice[k] == coeffs.len() - 1 {
                        choice[k] = 0;
                        k += 1;
                    }
                    if k >= size {
                        break;
                    }
                    choice[k] += 1;
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RANDOM_CANDIDATES {
        for vars in classes.values() {
            let terms: Vec<(Monomial, F::Elem)> = vars
                .iter()
                .map(|&v| {
                    (
                        Monomial::var(ring.nvars(), v, 1),
                        field.from_i64(rng.gen_range(1..=30_000)),
                    )
                })
                .collect();
            let p = Polynomial::from_terms(ring, terms);
            if !p.is_zero() && seen.insert(p.to_string()) {
                out.push(p);
            }
        }
    }
    out
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if items.len() < k {
        return Vec::new();
    }
    let mut out = Vec::new();
    for (i, &first) in items.iter().enumerate() {
        for mut rest in combinations(&items[i + 1..], k - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Depth of `F/N` as the length of a greedily built regular sequence of
/// linear forms; independent of resolutions.
pub fn regular_sequence_depth<F: Field>(q: &GradedQuotient<F>, seed: u64) -> Result<ExtendedNat> {
    if q.is_zero()? {
        return Ok(ExtendedNat::Infinite);
    }
    let ring = q.ring();
    let candidates = linear_form_candidates(ring, seed);
    let mut current = q.relations().clone();
    let whole = Submodule::whole(q.ambient());
    let mut length = 0;
    'grow: loop {
        if current.is_whole()? {
            return Err(Error::Inconsistency(
                "a regular sequence killed the module".into(),
            ));
        }
        for a in &candidates {
            if current.contains_submodule(&whole.scale(a)?)? {
                continue;
            }
            if is_regular_on_all(a, [&current])? {
                current = current.sum(&whole.scale(a)?)?;
                length += 1;
                continue 'grow;
            }
        }
        return Ok(ExtendedNat::Finite(length));
    }
}

pub fn depth_sequence<F: Field>(ctx: &ReesContext<F>, n_max: usize) -> Result<DepthSequence> {
    with_window(ctx, n_max)?.depth_sequence()
}

pub fn depth_powers<F: Field>(ctx: &ReesContext<F>, n_max: usize) -> Result<Vec<ExtendedNat>> {
    with_window(ctx, n_max)?.depth_powers()
}

pub fn ass_sequence<F: Field>(ctx: &ReesContext<F>, n_max: usize) -> Result<AssSequence> {
    with_window(ctx, n_max)?.ass_sequence()
}

pub fn superficial_element<F: Field>(
    ctx: &ReesContext<F>,
    n_max: usize,
) -> Result<Option<Polynomial<F>>> {
    with_window(ctx, n_max)?.superficial_element()
}

pub fn bar_reduce_check<F: Field>(
    ctx: &ReesContext<F>,
    a: &Polynomial<F>,
    n_max: usize,
) -> Result<CheckerVerdict> {
    with_window(ctx, n_max)?.bar_reduce_check(a)
}

pub fn burch_check<F: Field>(ctx: &ReesContext<F>, n_max: usize) -> Result<CheckerVerdict> {
    with_window(ctx, n_max)?.burch_check()
}

pub fn grade_and_depth_checks<F: Field>(
    ctx: &ReesContext<F>,
    n_max: usize,
) -> Result<CheckerVerdict> {
    with_window(ctx, n_max)?.grade_and_depth_checks()
}

pub fn cm_equality_check<F: Field>(ctx: &ReesContext<F>, n_max: usize) -> Result<CheckerVerdict> {
    with_window(ctx, n_max)?.cm_equality_check()
}

pub fn cowsik_nori_check<F: Field>(
    ctx: &ReesContext<F>,
    n_max: usize,
    primes: Option<&[Submodule<F>]>,
) -> Result<CheckerVerdict> {
    with_window(ctx, n_max)?.cowsik_nori_check(primes)
}

fn with_window<F: Field>(ctx: &ReesContext<F>, n_max: usize) -> Result<Asymptotics<'_, F>> {
    Asymptotics::new(
        ctx,
        WindowOptions {
            n_max,
            ..WindowOptions::default()
        },
    )
}
