use crate::error::Result;
use crate::linalg::SparseMatrix;
use crate::spline::TensorSpace;

use super::element::{check_finite, tensor_pattern, ElementData, Integrator};
use super::problem::{Method, ProblemSpec, StabConfig};

/// Generic bilinear assembly; `kernel` adds `w`-weighted contributions of
/// one quadrature point into the local `nl × nl` matrix (row = test).
fn assemble_matrix(
    space: &TensorSpace,
    points: usize,
    nder: usize,
    mut kernel: impl FnMut(&ElementData, usize, &mut [f64]) -> Result<()>,
) -> Result<SparseMatrix> {
    let mut a = SparseMatrix::with_pattern(space.dim(), space.dim(), tensor_pattern(space))?;
    let integ = Integrator::new(space, points, nder)?;
    let mut local = Vec::new();
    integ.for_each_element(|el| {
        let nl = el.n_local();
        local.clear();
        local.resize(nl * nl, 0.0);
        for qi in 0..el.nq {
            kernel(el, qi, &mut local)?;
        }
        for (i, &gi) in el.dofs.iter().enumerate() {
            for (j, &gj) in el.dofs.iter().enumerate() {
                let v = local[i * nl + j];
                if v != 0.0 {
                    a.add(gi, gj, v);
                }
            }
        }
        Ok(())
    })?;
    Ok(a)
}

fn assemble_vector(
    space: &TensorSpace,
    points: usize,
    nder: usize,
    mut kernel: impl FnMut(&ElementData, usize, &mut [f64]) -> Result<()>,
) -> Result<Vec<f64>> {
    let mut f = vec![0.0; space.dim()];
    let integ = Integrator::new(space, points, nder)?;
    let mut local = Vec::new();
    integ.for_each_element(|el| {
        local.clear();
        local.resize(el.n_local(), 0.0);
        for qi in 0..el.nq {
            kernel(el, qi, &mut local)?;
        }
        for (&g, v) in el.dofs.iter().zip(&local) {
            f[g] += v;
        }
        Ok(())
    })?;
    Ok(f)
}

/// `loc += w u uᵀ`, bitwise symmetric.
fn add_symmetric(loc: &mut [f64], nl: usize, w: f64, u: &[f64]) {
    for i in 0..nl {
        let wi = w * u[i];
        for j in i..nl {
            let v = wi * u[j];
            loc[i * nl + j] += v;
            if j != i {
                loc[j * nl + i] += v;
            }
        }
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `A_ij = ε(∇N_j,∇N_i) + (b·∇N_j, N_i) + (c N_j, N_i)` and `F_i = (f, N_i)`,
/// with the load integrated by `prob.load_points` (or `points`) per direction.
pub fn assemble_galerkin(
    space: &TensorSpace,
    prob: &ProblemSpec,
    points: usize,
) -> Result<(SparseMatrix, Vec<f64>)> {
    prob.check_space(space)?;
    let d = space.n_dims();
    let eps = prob.epsilon;
    let mut b = vec![0.0; d];
    let mut bg = Vec::new();
    let a = assemble_matrix(space, points, 1, |el, qi, loc| {
        let nl = el.n_local();
        let x = el.point(qi);
        let w = el.w[qi];
        prob.advection_at(x, &mut b);
        for bk in &b {
            check_finite(*bk, x)?;
        }
        let c = check_finite((prob.reaction)(x), x)?;
        let val = el.values(qi);
        bg.clear();
        bg.extend((0..nl).map(|j| dot(&b, el.gradient(qi, j))));
        for i in 0..nl {
            let gi = el.gradient(qi, i);
            for j in 0..nl {
                let diff = if eps != 0.0 { eps * dot(gi, el.gradient(qi, j)) } else { 0.0 };
                loc[i * nl + j] += w * (diff + (bg[j] + c * val[j]) * val[i]);
            }
        }
        Ok(())
    })?;
    let f = assemble_load(space, prob, prob.load_points.unwrap_or(points))?;
    Ok((a, f))
}

/// `F_i = (f, N_i)`.
pub fn assemble_load(space: &TensorSpace, prob: &ProblemSpec, points: usize) -> Result<Vec<f64>> {
    assemble_vector(space, points, 0, |el, qi, loc| {
        let x = el.point(qi);
        let f = check_finite((prob.source)(x), x)?;
        if f != 0.0 {
            for (l, v) in loc.iter_mut().zip(el.values(qi)) {
                *l += el.w[qi] * f * v;
            }
        }
        Ok(())
    })
}

/// `D_ij = ∫ (b·∇N_j)(b·∇N_i)`.
pub fn assemble_streamline_matrix(
    space: &TensorSpace,
    prob: &ProblemSpec,
    points: usize,
) -> Result<SparseMatrix> {
    let mut b = vec![0.0; space.n_dims()];
    let mut bg = Vec::new();
    assemble_matrix(space, points, 1, |el, qi, loc| {
        let nl = el.n_local();
        let x = el.point(qi);
        prob.advection_at(x, &mut b);
        bg.clear();
        bg.extend((0..nl).map(|j| dot(&b, el.gradient(qi, j))));
        add_symmetric(loc, nl, el.w[qi], &bg);
        Ok(())
    })
}

/// `K_ij = ∫ ∇N_j·∇N_i`.
pub fn assemble_stiffness(space: &TensorSpace, points: usize) -> Result<SparseMatrix> {
    assemble_matrix(space, points, 1, |el, qi, loc| {
        let nl = el.n_local();
        let w = el.w[qi];
        for i in 0..nl {
            for j in i..nl {
                let v = w * dot(el.gradient(qi, i), el.gradient(qi, j));
                loc[i * nl + j] += v;
                if j != i {
                    loc[j * nl + i] += v;
                }
            }
        }
        Ok(())
    })
}

/// `M_ij = ∫ ρ N_j N_i`.
pub fn assemble_weighted_mass(
    space: &TensorSpace,
    points: usize,
    rho: impl Fn(&[f64]) -> f64,
) -> Result<SparseMatrix> {
    assemble_matrix(space, points, 0, |el, qi, loc| {
        let nl = el.n_local();
        let x = el.point(qi);
        let wr = el.w[qi] * check_finite(rho(x), x)?;
        add_symmetric(loc, nl, wr, el.values(qi));
        Ok(())
    })
}

pub fn assemble_mass(space: &TensorSpace, points: usize) -> Result<SparseMatrix> {
    assemble_weighted_mass(space, points, |_| 1.0)
}

/// `τ_K = h/(2|b|)(coth Pe − 1/Pe)`, `Pe = |b|h/(2ε)`; `h/(2|b|)` for `ε = 0`
/// and `0` for `b = 0`.
pub fn supg_tau(h: f64, b_norm: f64, epsilon: f64) -> f64 {
    if b_norm == 0.0 {
        return 0.0;
    }
    let base = h / (2.0 * b_norm);
    if epsilon == 0.0 {
        return base;
    }
    let pe = b_norm * h / (2.0 * epsilon);
    let xi = if pe < 1e-3 {
        pe / 3.0 - pe.powi(3) / 45.0
    } else {
        1.0 / pe.tanh() - 1.0 / pe
    };
    base * xi
}

/// Element length along the streamline through a box with edges `sizes`.
pub fn streamline_length(sizes: &[f64], b: &[f64]) -> f64 {
    let norm = dot(b, b).sqrt();
    sizes
        .iter()
        .zip(b)
        .filter(|(_, bk)| **bk != 0.0)
        .map(|(h, bk)| h * norm / bk.abs())
        .fold(f64::INFINITY, f64::min)
}

/// Residual-based addends: SUPG tests the residual with `τ b·∇v`, GLS with
/// `τ(−εΔv + b·∇v + c v)`. `τ_K` is evaluated with `b` at the centroid.
pub fn assemble_supg(
    space: &TensorSpace,
    prob: &ProblemSpec,
    cfg: &StabConfig,
) -> Result<(SparseMatrix, Vec<f64>)> {
    let gls = cfg.method == Method::Gls;
    let d = space.n_dims();
    let eps = prob.epsilon;
    let points = cfg.points(space);
    let tau_of = |el: &ElementData| {
        let mut b = vec![0.0; d];
        prob.advection_at(&el.centroid, &mut b);
        let norm = dot(&b, &b).sqrt();
        if norm == 0.0 {
            0.0
        } else {
            supg_tau(streamline_length(&el.sizes, &b), norm, eps)
        }
    };
    // residual operator L N_j and test operator per quadrature point
    let ops = |el: &ElementData, qi: usize, b: &[f64], c: f64, test: &mut Vec<f64>, res: &mut Vec<f64>| {
        let nl = el.n_local();
        let val = el.values(qi);
        let lap = el.laplacian(qi);
        res.clear();
        test.clear();
        for j in 0..nl {
            let adv = dot(b, el.gradient(qi, j));
            let l = -eps * lap[j] + adv + c * val[j];
            res.push(l);
            test.push(if gls { l } else { adv });
        }
    };
    let mut b = vec![0.0; d];
    let (mut test, mut res) = (Vec::new(), Vec::new());
    let mut cache: Option<(Vec<usize>, f64)> = None;
    let a = assemble_matrix(space, points, 2, |el, qi, loc| {
        if cache.as_ref().is_none_or(|(e, _)| *e != el.element) {
            cache = Some((el.element.clone(), tau_of(el)));
        }
        let tau = cache.as_ref().map_or(0.0, |c| c.1);
        if tau == 0.0 {
            return Ok(());
        }
        let x = el.point(qi);
        prob.advection_at(x, &mut b);
        let c = check_finite((prob.reaction)(x), x)?;
        ops(el, qi, &b, c, &mut test, &mut res);
        let nl = el.n_local();
        let wt = el.w[qi] * tau;
        for i in 0..nl {
            for j in 0..nl {
                loc[i * nl + j] += wt * res[j] * test[i];
            }
        }
        Ok(())
    })?;
    let mut cache: Option<(Vec<usize>, f64)> = None;
    let f = assemble_vector(space, prob.load_points.unwrap_or(points), 2, |el, qi, loc| {
        if cache.as_ref().is_none_or(|(e, _)| *e != el.element) {
            cache = Some((el.element.clone(), tau_of(el)));
        }
        let tau = cache.as_ref().map_or(0.0, |c| c.1);
        let x = el.point(qi);
        let f = check_finite((prob.source)(x), x)?;
        if tau == 0.0 || f == 0.0 {
            return Ok(());
        }
        prob.advection_at(x, &mut b);
        let c = (prob.reaction)(x);
        ops(el, qi, &b, c, &mut test, &mut res);
        for (l, t) in loc.iter_mut().zip(&test) {
            *l += el.w[qi] * tau * f * t;
        }
        Ok(())
    })?;
    Ok((a, f))
}
