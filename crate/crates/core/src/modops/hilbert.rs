//! Hilbert series of monomial quotients and the combinatorial dimension of
//! monomial ideals.

use crate::error::{Error, Result};
use crate::polyring::Monomial;

/// `N(t) / Π (1 − t^{w_i})` with an integer Laurent numerator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertSeries {
    low: i64,
    numerator: Vec<i64>,
    weights: Vec<u32>,
}

impl HilbertSeries {
    fn normalized(mut low: i64, mut numerator: Vec<i64>, weights: Vec<u32>) -> Self {
        while numerator.last() == Some(&0) {
            numerator.pop();
        }
        let lead = numerator.iter().take_while(|&&c| c == 0).count();
        numerator.drain(..lead);
        low += lead as i64;
        if numerator.is_empty() {
            low = 0;
        }
        HilbertSeries {
            low,
            numerator,
            weights,
        }
    }

    /// Series of `⊕ R(−s_i) / I_i` from pairs `(s_i, generators of I_i)`.
    pub fn from_components(parts: &[(i64, Vec<Monomial>)], weights: &[u32]) -> Self {
        let mut acc: Vec<(i64, i64)> = Vec::new();
        for (shift, gens) in parts {
            for (k, c) in monomial_numerator(gens, weights).into_iter().enumerate() {
                if c != 0 {
                    acc.push((shift + k as i64, c));
                }
            }
        }
        let Some(low) = acc.iter().map(|p| p.0).min() else {
            return Self::normalized(0, Vec::new(), weights.to_vec());
        };
        let high = acc.iter().map(|p| p.0).max().unwrap();
        let mut num = vec![0i64; (high - low + 1) as usize];
        for (d, c) in acc {
            num[(d - low) as usize] += c;
        }
        Self::normalized(low, num, weights.to_vec())
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_empty()
    }

    /// Numerator coefficients starting at degree [`Self::low_degree`].
    pub fn numerator(&self) -> &[i64] {
        &self.numerator
    }

    pub fn low_degree(&self) -> i64 {
        self.low
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    /// Hilbert function values on `degrees`.
    pub fn values(&self, degrees: std::ops::RangeInclusive<i64>) -> Vec<i64> {
        let (lo, hi) = (*degrees.start(), *degrees.end());
        if hi < lo {
            return Vec::new();
        }
        if self.is_zero() || hi < self.low {
            return vec![0; (hi - lo + 1) as usize];
        }
        let len = (hi - self.low + 1) as usize;
        let mut a = vec![0i64; len];
        for (k, &c) in self.numerator.iter().enumerate().take(len) {
            a[k] = c;
        }
        for &w in &self.weights {
            let w = w as usize;
            for k in w..len {
                a[k] += a[k - w];
            }
        }
        (lo..=hi)
            .map(|n| {
                if n < self.low {
                    0
                } else {
                    a[(n - self.low) as usize]
                }
            })
            .collect()
    }

    pub fn coefficient(&self, n: i64) -> i64 {
        self.values(n..=n)[0]
    }

    /// Order of the pole at `t = 1`; `-1` for the zero series.
    pub fn dim(&self) -> i64 {
        if self.is_zero() {
            return -1;
        }
        let mut num = self.numerator.clone();
        let mut mult = 0i64;
        while num.iter().sum::<i64>() == 0 {
            // synthetic division by (1 - t)
            let mut q = vec![0i64; num.len() - 1];
            let mut carry = 0;
            for k in 0..q.len() {
                carry += num[k];
                q[k] = carry;
            }
            num = q;
            mult += 1;
        }
        self.weights.len() as i64 - mult
    }

    /// Sum of the Hilbert function over all degrees, for series of finite
    /// length modules. `None` when the module has positive dimension.
    pub fn length(&self) -> Option<i64> {
        if self.dim() > 0 {
            return None;
        }
        let mut num = self.numerator.clone();
        for &w in &self.weights {
            // divide by (1 - t^w); exact because the module has finite length
            let w = w as usize;
            let mut q = vec![0i64; num.len().saturating_sub(w)];
            for k in 0..q.len() {
                q[k] = num[k] + if k >= w { q[k - w] } else { 0 };
            }
            num = q;
        }
        Some(num.iter().sum())
    }

    /// Equality of the underlying Hilbert functions, allowing different
    /// denominators (compared by cross-multiplication).
    pub fn same_function(&self, other: &HilbertSeries) -> bool {
        let a = mul_denominator(self.low, &self.numerator, &other.weights);
        let b = mul_denominator(other.low, &other.numerator, &self.weights);
        Self::normalized(a.0, a.1, Vec::new()) == Self::normalized(b.0, b.1, Vec::new())
    }
}

fn mul_denominator(low: i64, num: &[i64], weights: &[u32]) -> (i64, Vec<i64>) {
    let mut out = num.to_vec();
    for &w in weights {
        let w = w as usize;
        let mut next = vec![0i64; out.len() + w];
        for (k, &c) in out.iter().enumerate() {
            next[k] += c;
            next[k + w] -= c;
        }
        out = next;
    }
    (low, out)
}

/// Removes non-minimal generators and duplicates; sorted for determinism.
pub fn minimize_monomials(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| m.total_degree());
    let mut out: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens {
        if !out.iter().any(|m| m.divides(&g)) {
            out.push(g);
        }
    }
    out.sort();
    out
}

fn poly_sub_shifted(a: &mut Vec<i64>, b: &[i64], shift: usize) {
    if a.len() < b.len() + shift {
        a.resize(b.len() + shift, 0);
    }
    for (k, &c) in b.iter().enumerate() {
        a[k + shift] -= c;
    }
}

/// Numerator `K(I)` with `HS(R/I) = K(I) / Π(1 − t^{w_i})`, by the pivot
/// recursion `K(I) = K(I + (p)) + t^{deg p} K(I : p)`.
fn monomial_numerator(gens: &[Monomial], weights: &[u32]) -> Vec<i64> {
    let gens = minimize_monomials(gens.to_vec());
    numerator_rec(gens, weights)
}

fn numerator_rec(gens: Vec<Monomial>, weights: &[u32]) -> Vec<i64> {
    if gens.is_empty() {
        return vec![1];
    }
    if gens.iter().any(|g| g.is_one()) {
        return Vec::new();
    }
    let n = weights.len();
    // pairwise coprime generators: product of (1 - t^{deg g})
    let mut seen = vec![false; n];
    let mut coprime = true;
    'outer: for g in &gens {
        for v in g.support() {
            if seen[v] {
                coprime = false;
                break 'outer;
            }
            seen[v] = true;
        }
    }
    if coprime {
        let mut acc = vec![1i64];
        for g in &gens {
            let d = g.weighted_degree(weights) as usize;
            let prev = acc.clone();
            poly_sub_shifted(&mut acc, &prev, d);
        }
        return acc;
    }
    // pivot on the variable shared by most generators
    let mut counts = vec![0usize; n];
    for g in &gens {
        for v in g.support() {
            counts[v] += 1;
        }
    }
    let var = (0..n)
        .max_by_key(|&v| (counts[v], std::cmp::Reverse(v)))
        .unwrap();
    let mut exps: Vec<u16> = gens
        .iter()
        .map(|g| g.exponents()[var])
        .filter(|&e| e > 0)
        .collect();
    exps.sort_unstable();
    let e = exps[(exps.len() - 1) / 2];
    let pivot = Monomial::var(n, var, e);

    let mut plus = gens.clone();
    plus.push(pivot.clone());
    let colon: Vec<Monomial> = gens
        .iter()
        .map(|g| g.div(&g.gcd(&pivot)).expect("gcd divides"))
        .collect();
    let mut out = numerator_rec(minimize_monomials(plus), weights);
    let right = numerator_rec(minimize_monomials(colon), weights);
    let shift = pivot.weighted_degree(weights) as usize;
    let neg: Vec<i64> = right.iter().map(|c| -c).collect();
    poly_sub_shifted(&mut out, &neg, shift);
    while out.last() == Some(&0) {
        out.pop();
    }
    out
}

/// `dim R/I` for a monomial ideal: the number of variables minus the size of
/// a smallest set of variables meeting every generator's support. `-1` when
/// `I` is the unit ideal.
pub fn monomial_ideal_dim(gens: &[Monomial], nvars: usize) -> Result<i64> {
    if nvars > 64 {
        return Err(Error::ResourceLimit(format!(
            "{nvars} variables exceed the 64-variable dimension routine"
        )));
    }
    let mut masks: Vec<u64> = Vec::with_capacity(gens.len());
    for g in gens {
        let m = g.support().fold(0u64, |acc, v| acc | (1 << v));
        if m == 0 {
            return Ok(-1);
        }
        masks.push(m);
    }
    masks.sort_unstable();
    masks.dedup();
    let mut best = nvars;
    min_cover(&masks, 0, 0, &mut best);
    Ok((nvars - best) as i64)
}

fn min_cover(masks: &[u64], chosen: u64, size: usize, best: &mut usize) {
    if size >= *best {
        return;
    }
    let Some(&open) = masks.iter().find(|&&m| m & chosen == 0) else {
        *best = size;
        return;
    };
    let mut bits = open;
    while bits != 0 {
        let v = bits.trailing_zeros();
        bits &= bits - 1;
        min_cover(masks, chosen | (1 << v), size + 1, best);
    }
}
