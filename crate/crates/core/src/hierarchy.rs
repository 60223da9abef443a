//! Dyadic multilevel coarsening of a fine tensor space.
//!
//! Level `k` removes every second interior knot of level `k-1`, so on a
//! uniform mesh its element size is `2^k h`. A direction whose element count
//! is exhausted stops coarsening and keeps its coarsest space for the
//! remaining levels.

use crate::error::{invalid, Result};
use crate::spline::{KnotVector, SplineSpace1D, TensorSpace};

/// One coarse level of a [`MeshHierarchy`].
#[derive(Debug, Clone, PartialEq)]
pub struct Level {
    /// Coarse space per direction.
    pub spaces: Vec<SplineSpace1D>,
    /// Largest element size `H^(k)` per direction.
    pub sizes: Vec<f64>,
    /// Weight `c_k = h / H^(k)` from the largest element sizes.
    pub weight: f64,
}

impl Level {
    pub fn max_size(&self) -> f64 {
        self.sizes.iter().copied().fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MeshHierarchy {
    fine: TensorSpace,
    levels: Vec<Level>,
}

impl MeshHierarchy {
    pub fn fine(&self) -> &TensorSpace {
        &self.fine
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    /// Level `k`, counted from 1.
    pub fn level(&self, k: usize) -> &Level {
        &self.levels[k - 1]
    }

    pub fn n_levels(&self) -> usize {
        self.levels.len()
    }

    pub fn weights(&self) -> Vec<f64> {
        self.levels.iter().map(|l| l.weight).collect()
    }
}

/// Removes every second interior knot, doubling the element size.
pub fn dyadic_coarsen(space: &SplineSpace1D) -> Result<SplineSpace1D> {
    let ne = space.n_elements();
    if ne < 2 || !ne.is_multiple_of(2) {
        return invalid(format!(
            "dyadic coarsening needs an even element count of at least 2, found {ne}"
        ));
    }
    let kept: Vec<f64> = space.breaks().iter().step_by(2).copied().collect();
    Ok(SplineSpace1D::new(KnotVector::from_breaks(&kept, space.degree())?))
}

/// Number of dyadic coarsenings a direction with `n_elements` admits.
fn level_cap(n_elements: usize) -> usize {
    n_elements.ilog2() as usize
}

/// Builds `levels` dyadically coarsened levels of `fine`.
pub fn build_hierarchy(fine: &TensorSpace, levels: usize) -> Result<MeshHierarchy> {
    if levels < 1 {
        return invalid("a hierarchy needs at least one level");
    }
    for (k, dir) in fine.directions().iter().enumerate() {
        let ne = dir.n_elements();
        let needed = levels.min(level_cap(ne));
        if ne % (1usize << needed) != 0 {
            return invalid(format!(
                "direction {k}: {ne} elements cannot be halved {needed} times"
            ));
        }
    }
    let h = fine.max_element_size();
    let mut current: Vec<SplineSpace1D> = fine.directions().to_vec();
    let mut out = Vec::with_capacity(levels);
    for _ in 1..=levels {
        current = current
            .iter()
            .map(|s| {
                if s.n_elements() >= 2 {
                    dyadic_coarsen(s)
                } else {
                    Ok(s.clone())
                }
            })
            .collect::<Result<_>>()?;
        let sizes: Vec<f64> = current.iter().map(SplineSpace1D::max_element_size).collect();
        let hk = sizes.iter().copied().fold(0.0, f64::max);
        out.push(Level {
            spaces: current.clone(),
            sizes,
            weight: h / hk,
        });
    }
    Ok(MeshHierarchy {
        fine: fine.clone(),
        levels: out,
    })
}

/// `Σ_k c_k (H^(k))^{2p}` with `H^(k)` the largest level-`k` element size.
pub fn sigma_constant(hier: &MeshHierarchy, p: usize) -> f64 {
    hier.levels
        .iter()
        .map(|l| l.weight * l.max_size().powi(2 * p as i32))
        .sum()
}
