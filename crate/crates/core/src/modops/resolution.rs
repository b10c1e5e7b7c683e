use log::debug;

use crate::error::{Error, Result};
use crate::groebner;
use crate::polyring::{Field, ModuleElement, ModuleRef};

use super::{GradedQuotient, Submodule};

/// A minimal graded free resolution `F_0 ← F_1 ← … ← F_p ← 0`.
#[derive(Clone, Debug)]
pub struct Resolution<F: Field> {
    modules: Vec<ModuleRef<F>>,
    /// `maps[i]` lists the images in `F_i` of the basis of `F_{i+1}`.
    maps: Vec<Vec<ModuleElement<F>>>,
}

impl<F: Field> Resolution<F> {
    /// Prunes the presentation, then iterates minimal syzygies. Each kernel
    /// is minimalized, so every map has entries in the maximal ideal.
    pub(crate) fn minimal(q: &GradedQuotient<F>) -> Result<Self> {
        let pruned = q.prune()?;
        let f0 = pruned.ambient().clone();
        let mut modules = vec![f0.clone()];
        let mut maps = Vec::new();
        if f0.rank() == 0 {
            return Ok(Resolution { modules, maps });
        }
        let mut current = pruned.relations().minimal_generators()?;
        let mut ambient = f0;
        let bound = ambient.ring().nvars() + 1;
        while !current.is_empty() {
            if maps.len() > bound {
                return Err(Error::Inconsistency(
                    "resolution longer than the number of variables".into(),
                ));
            }
            let (next, syz) = groebner::syzygies(&ambient, &current)?;
            maps.push(current);
            modules.push(next.clone());
            current = Submodule::new(&next, syz)?.minimal_generators()?;
            ambient = next;
        }
        debug!(
            "resolution betti numbers {:?}",
            modules.iter().map(|m| m.rank()).collect::<Vec<_>>()
        );
        Ok(Resolution { modules, maps })
    }

    /// Number of nonzero maps (the projective dimension when `F_0 ≠ 0`).
    pub fn length(&self) -> usize {
        self.maps.len()
    }

    pub fn rank(&self, i: usize) -> usize {
        self.modules.get(i).map_or(0, |m| m.rank())
    }

    pub fn betti_numbers(&self) -> Vec<usize> {
        self.modules.iter().map(|m| m.rank()).collect()
    }

    /// Degree shifts of each free module.
    pub fn graded_betti(&self) -> Vec<Vec<i32>> {
        self.modules.iter().map(|m| m.shifts().to_vec()).collect()
    }

    pub fn module(&self, i: usize) -> &ModuleRef<F> {
        &self.modules[i]
    }

    pub fn map(&self, i: usize) -> &[ModuleElement<F>] {
        &self.maps[i]
    }

    /// Image of `v ∈ F_{i+1}` in `F_i`.
    pub fn apply(&self, i: usize, v: &ModuleElement<F>) -> Result<ModuleElement<F>> {
        let mut acc = ModuleElement::zero(&self.modules[i]);
        for (j, c) in v.components().iter().enumerate() {
            if !c.is_zero() {
                acc = acc.checked_add(&self.maps[i][j].mul_poly(c)?)?;
            }
        }
        Ok(acc)
    }
}
