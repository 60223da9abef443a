use crate::assembly::{
    apply_dirichlet, assemble_galerkin, assemble_mq_stabilization, assemble_supg, DiscreteSystem, Method,
    ProblemSpec, StabConfig,
};
use crate::error::{Error, Result};
use crate::hierarchy::{build_hierarchy, MeshHierarchy};
use crate::linalg::{condition_number_2, norm2, DenseMatrix, Operator};
use crate::quasi_interp::FluctuationOperator;
use crate::spline::TensorSpace;

/// Relative residual accepted after refinement.
pub const RESIDUAL_TOLERANCE: f64 = 1e-10;

/// Full coefficient vector of a computed solution.
#[derive(Debug, Clone)]
pub struct DiscreteSolution {
    pub space: TensorSpace,
    pub coefficients: Vec<f64>,
    pub config: StabConfig,
    pub problem: String,
    /// Free coefficients of the solved system.
    pub dofs: usize,
    pub residual: f64,
}

impl DiscreteSolution {
    pub fn eval(&self, x: &[f64]) -> Result<f64> {
        self.space.eval(&self.coefficients, x)
    }

    pub fn eval_with_gradient(&self, x: &[f64]) -> Result<(f64, Vec<f64>)> {
        self.space.eval_with_gradient(&self.coefficients, x)
    }
}

/// Constrained system of one method, with the multilevel pieces kept for
/// norm evaluations.
#[derive(Debug, Clone)]
pub struct AssembledSystem {
    pub system: DiscreteSystem,
    /// Multilevel stabilization on the full basis (multilevel methods only).
    pub stabilization: Option<DenseMatrix>,
    pub hierarchy: Option<MeshHierarchy>,
}

pub fn assemble_system(prob: &ProblemSpec, space: &TensorSpace, cfg: &StabConfig) -> Result<AssembledSystem> {
    cfg.validate()?;
    prob.check_space(space)?;
    let points = cfg.points(space);
    let (a, mut f) = assemble_galerkin(space, prob, points)?;
    let (op, stabilization, hierarchy) = match cfg.method {
        Method::Galerkin => (Operator::Sparse(a), None, None),
        Method::Supg | Method::Gls => {
            let (s, fs) = assemble_supg(space, prob, cfg)?;
            for (fi, v) in f.iter_mut().zip(fs) {
                *fi += v;
            }
            (Operator::Sparse(a.add_scaled(1.0, &s)), None, None)
        }
        Method::Mq | Method::MqIsotropic => {
            let hier = build_hierarchy(space, cfg.levels)?;
            let fluct = FluctuationOperator::new(&hier)?;
            let s = assemble_mq_stabilization(space, &hier, &fluct, prob, cfg)?;
            let mut full = a.to_dense();
            full.add_scaled(1.0, &s);
            (Operator::Dense(full), Some(s), Some(hier))
        }
    };
    let system = apply_dirichlet(&op, &f, space, prob)?;
    Ok(AssembledSystem {
        system,
        stabilization,
        hierarchy,
    })
}

/// Solves `A x = b` with iterative refinement; fails if the relative
/// residual stays above [`RESIDUAL_TOLERANCE`].
pub fn solve_linear(matrix: &Operator, rhs: &[f64]) -> Result<(Vec<f64>, f64)> {
    let n = matrix.rows();
    let bnorm = norm2(rhs);
    if n == 0 {
        return Ok((Vec::new(), 0.0));
    }
    if bnorm == 0.0 {
        return Ok((vec![0.0; n], 0.0));
    }
    let fact = matrix.factorize()?;
    let mut x = fact.solve(rhs);
    let mut rel = f64::INFINITY;
    for _ in 0..4 {
        let ax = matrix.matvec(&x);
        let r: Vec<f64> = rhs.iter().zip(&ax).map(|(b, a)| b - a).collect();
        rel = norm2(&r) / bnorm;
        if !rel.is_finite() {
            break;
        }
        if rel <= RESIDUAL_TOLERANCE * 1e-2 {
            break;
        }
        let dx = fact.solve(&r);
        for (xi, d) in x.iter_mut().zip(dx) {
            *xi += d;
        }
    }
    let ax = matrix.matvec(&x);
    let r: Vec<f64> = rhs.iter().zip(&ax).map(|(b, a)| b - a).collect();
    rel = rel.min(norm2(&r) / bnorm);
    if !(rel <= RESIDUAL_TOLERANCE) {
        let cond = if n <= 2000 {
            format!(", condition number {:.3e}", condition_number_2(&matrix.to_dense()))
        } else {
            String::new()
        };
        return Err(Error::Singular(format!("relative residual {rel:.3e} after refinement{cond}")));
    }
    Ok((x, rel))
}

/// Assembles, constrains and solves one configuration.
pub fn solve(prob: &ProblemSpec, space: &TensorSpace, cfg: &StabConfig) -> Result<DiscreteSolution> {
    let assembled = assemble_system(prob, space, cfg)?;
    solve_assembled(prob, space, cfg, &assembled)
}

pub fn solve_assembled(
    prob: &ProblemSpec,
    space: &TensorSpace,
    cfg: &StabConfig,
    assembled: &AssembledSystem,
) -> Result<DiscreteSolution> {
    let sys = &assembled.system;
    let (x, residual) = solve_linear(&sys.matrix, &sys.rhs)?;
    Ok(DiscreteSolution {
        space: space.clone(),
        coefficients: sys.expand(&x)?,
        config: cfg.clone(),
        problem: prob.name.clone(),
        dofs: sys.dim(),
        residual,
    })
}
