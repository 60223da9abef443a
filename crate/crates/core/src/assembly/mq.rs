//! Multilevel projection stabilization
//! `s(u,v) = τ_h Σ_k c_k ∫ (b·∇(u − Π_k u)) (b·∇(v − Π_k v))`.
//!
//! With `D` the streamline matrix and `F_k = Id − Q_k`, the level term is the
//! congruence `F_kᵀ D F_k = D − Y − Yᵀ + Q_kᵀ Yᵀ` where `Y = Q_kᵀ D`; both
//! products with the Kronecker-structured `Q_kᵀ` are mode products on dense
//! columns, so `Q_k` is never formed.

use faer::Mat;

use crate::error::{invalid, Error, Result};
use crate::hierarchy::MeshHierarchy;
use crate::linalg::kron::kron_apply;
use crate::linalg::DenseMatrix;
use crate::quasi_interp::FluctuationOperator;
use crate::spline::TensorSpace;

use super::forms::{assemble_stiffness, assemble_streamline_matrix};
use super::problem::{Method, ProblemSpec, StabConfig};

/// `S = τ_h Σ_k c_k F_kᵀ D F_k`, with `D` the streamline matrix (`mq`) or
/// the gradient stiffness (`mq-iso`).
pub fn assemble_mq_stabilization(
    space: &TensorSpace,
    hier: &MeshHierarchy,
    fluct: &FluctuationOperator,
    prob: &ProblemSpec,
    cfg: &StabConfig,
) -> Result<DenseMatrix> {
    cfg.validate()?;
    let points = cfg.points(space);
    let d = match cfg.method {
        Method::Mq => assemble_streamline_matrix(space, prob, points)?,
        Method::MqIsotropic => assemble_stiffness(space, points)?,
        other => return invalid(format!("method {other} has no multilevel stabilization")),
    };
    if hier.fine() != space || fluct.fine_dim() != space.dim() {
        return invalid("hierarchy does not belong to the given space");
    }
    if hier.n_levels() < cfg.levels || fluct.n_levels() < cfg.levels {
        return Err(Error::LevelOutOfRange {
            level: cfg.levels,
            levels: hier.n_levels().min(fluct.n_levels()),
        });
    }
    let tau = cfg.tau_h(space);
    let n = space.dim();
    let mut s = DenseMatrix::zeros(n, n);
    if tau == 0.0 {
        return Ok(s);
    }
    let dm = d.to_dense();
    let dmat = dm.as_faer();
    for k in 1..=cfg.levels {
        let level = fluct.level(k)?;
        let qt: Vec<DenseMatrix> = level.projector.iter().map(DenseMatrix::transpose).collect();
        let factors: Vec<&DenseMatrix> = qt.iter().collect();
        let y: Mat<f64> = kron_apply(&factors, dmat);
        let v: Mat<f64> = kron_apply(&factors, y.transpose());
        let scale = tau * level.weight;
        let out = s.as_mut_slice();
        for i in 0..n {
            let row = &mut out[i * n..(i + 1) * n];
            for (j, sij) in row.iter_mut().enumerate() {
                *sij += scale * (dm[(i, j)] - y[(i, j)] - y[(j, i)] + v[(i, j)]);
            }
        }
    }
    // exact symmetry
    for i in 0..n {
        for j in i + 1..n {
            let m = 0.5 * (s[(i, j)] + s[(j, i)]);
            s[(i, j)] = m;
            s[(j, i)] = m;
        }
    }
    Ok(s)
}
