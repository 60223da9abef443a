use crate::error::Result;
use crate::linalg::{DenseMatrix, SparseMatrix};
use crate::spline::TensorSpace;

use super::forms::{assemble_stiffness, assemble_streamline_matrix, assemble_weighted_mass};
use super::problem::ProblemSpec;

/// Matrices of the energy-type norms on the full basis.
#[derive(Debug, Clone)]
pub struct NormMatrices {
    pub epsilon: f64,
    pub stiffness: SparseMatrix,
    /// `∫ σ N_j N_i` with `σ = c − ½ div b`.
    pub sigma_mass: SparseMatrix,
    pub streamline: SparseMatrix,
}

impl NormMatrices {
    pub fn new(space: &TensorSpace, prob: &ProblemSpec, points: usize) -> Result<Self> {
        Ok(Self {
            epsilon: prob.epsilon,
            stiffness: assemble_stiffness(space, points)?,
            sigma_mass: assemble_weighted_mass(space, points, |x| prob.sigma(x))?,
            streamline: assemble_streamline_matrix(space, prob, points)?,
        })
    }
}

/// `ε|v|₁² + ‖σ^{1/2} v‖₀² + vᵀSv`.
pub fn mq_norm_squared(norms: &NormMatrices, stab: &DenseMatrix, v: &[f64]) -> f64 {
    norms.epsilon * norms.stiffness.bilinear(v, v) + norms.sigma_mass.bilinear(v, v) + stab.bilinear(v, v)
}

/// MQ norm plus `τ_h c_L ‖b·∇v‖₀²`.
pub fn mqsd_norm_squared(norms: &NormMatrices, stab: &DenseMatrix, tau_h: f64, c_last: f64, v: &[f64]) -> f64 {
    mq_norm_squared(norms, stab, v) + tau_h * c_last * norms.streamline.bilinear(v, v)
}
