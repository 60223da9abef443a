//! Greville quasi-interpolation onto coarse levels and the fluctuation
//! operator `Id - Π_k` on fine coefficient vectors.
//!
//! The univariate Greville quasi-interpolant samples a function at the coarse
//! Greville points and uses the samples as coarse coefficients. Applied to a
//! fine spline this is the matrix `G_k` of fine basis values at coarse
//! Greville points; prolongation `P_k` maps the result back to the fine
//! basis, so `Π_k = P_k G_k` and the fluctuation is `Id - P_k G_k`. The
//! multivariate operator is the Kronecker product of the per-direction ones.

use crate::error::{Error, Result};
use crate::hierarchy::MeshHierarchy;
use crate::linalg::kron::kron_apply_vec;
use crate::linalg::DenseMatrix;
use crate::spline::SplineSpace1D;

/// Fine basis functions sampled at the coarse Greville abscissae
/// (coarse.dim × fine.dim).
pub fn sampling_matrix(fine: &SplineSpace1D, coarse: &SplineSpace1D) -> Result<DenseMatrix> {
    if !coarse.is_nested_in(fine) {
        return Err(Error::NotNested(format!(
            "coarse space ({} elements) is not nested in fine space ({} elements)",
            coarse.n_elements(),
            fine.n_elements()
        )));
    }
    let p = fine.degree();
    let mut g = DenseMatrix::zeros(coarse.dim(), fine.dim());
    for (i, &x) in coarse.greville_abscissae().iter().enumerate() {
        let bv = fine.eval_basis(x, 0)?;
        let first = bv.first_basis(p);
        for (a, v) in bv.values[0].iter().enumerate() {
            g[(i, first + a)] = *v;
        }
    }
    Ok(g)
}

/// Per-direction matrices of one level.
#[derive(Debug, Clone)]
pub struct LevelOperator {
    pub sampling: Vec<DenseMatrix>,
    pub prolongation: Vec<DenseMatrix>,
    /// `Π_k` per direction in the fine basis, `P_k G_k`.
    pub projector: Vec<DenseMatrix>,
    pub weight: f64,
}

#[derive(Debug, Clone)]
pub struct FluctuationOperator {
    fine_dims: Vec<usize>,
    levels: Vec<LevelOperator>,
}

impl FluctuationOperator {
    pub fn new(hier: &MeshHierarchy) -> Result<Self> {
        let fine = hier.fine();
        let mut levels = Vec::with_capacity(hier.n_levels());
        for level in hier.levels() {
            let mut sampling = Vec::new();
            let mut prolongation = Vec::new();
            let mut projector = Vec::new();
            for (f, c) in fine.directions().iter().zip(&level.spaces) {
                let g = sampling_matrix(f, c)?;
                let p = SplineSpace1D::prolongation_matrix(c, f)?;
                projector.push(p.matmul(&g));
                sampling.push(g);
                prolongation.push(p);
            }
            levels.push(LevelOperator {
                sampling,
                prolongation,
                projector,
                weight: level.weight,
            });
        }
        Ok(Self {
            fine_dims: fine.dims(),
            levels,
        })
    }

    pub fn n_levels(&self) -> usize {
        self.levels.len()
    }

    pub fn fine_dim(&self) -> usize {
        self.fine_dims.iter().product()
    }

    /// Level `k`, counted from 1.
    pub fn level(&self, k: usize) -> Result<&LevelOperator> {
        if k == 0 || k > self.levels.len() {
            return Err(Error::LevelOutOfRange {
                level: k,
                levels: self.levels.len(),
            });
        }
        Ok(&self.levels[k - 1])
    }

    /// `u - Π_k u` for fine coefficients `u`.
    pub fn apply(&self, level: usize, coeffs: &[f64]) -> Result<Vec<f64>> {
        let lvl = self.level(level)?;
        if coeffs.len() != self.fine_dim() {
            return Err(Error::ShapeMismatch {
                expected: self.fine_dim(),
                found: coeffs.len(),
            });
        }
        let factors: Vec<&DenseMatrix> = lvl.projector.iter().collect();
        let proj = kron_apply_vec(&factors, coeffs);
        Ok(coeffs.iter().zip(proj).map(|(u, q)| u - q).collect())
    }

    /// Explicit fluctuation matrix `Id - ⊗_k Π_k`, for small spaces.
    pub fn dense_matrix(&self, level: usize) -> Result<DenseMatrix> {
        let lvl = self.level(level)?;
        let factors: Vec<&DenseMatrix> = lvl.projector.iter().collect();
        let mut f = crate::linalg::kron::kron_dense(&factors);
        f.scale(-1.0);
        for i in 0..f.rows() {
            f[(i, i)] += 1.0;
        }
        Ok(f)
    }
}

/// Free-function form of [`FluctuationOperator::apply`].
pub fn fluctuation_apply(op: &FluctuationOperator, level: usize, coeffs: &[f64]) -> Result<Vec<f64>> {
    op.apply(level, coeffs)
}
