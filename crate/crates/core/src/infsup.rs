//! Discrete inf-sup constant between `V_h = S^p(T_h) ∩ H¹₀` and the full
//! coarse space `Q_L = S^{p−1}` on the `L`-fold dyadically coarsened mesh:
//!
//! `β̂² = min_q (B M_V⁻¹ Bᵀ q, q) / (M_Q q, q)`, `B_ij = (C_i, N_j)`.

use crate::assembly::quadrature_rule;
use crate::error::{invalid, Result};
use crate::linalg::{sym_generalized_eigmin, Cholesky, DenseMatrix};
use crate::spline::SplineSpace1D;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InfSupCase {
    pub degree: usize,
    pub levels: usize,
    pub n_elements: usize,
    pub beta: f64,
}

pub fn compute_infsup(p: usize, levels: usize, n: usize) -> Result<f64> {
    if p < 2 {
        return invalid(format!("inf-sup pairing needs degree at least 2, got {p}"));
    }
    if levels < 1 {
        return invalid("at least one level is required");
    }
    let factor = 1usize.checked_shl(levels as u32).unwrap_or(0);
    if factor == 0 || n == 0 || !n.is_multiple_of(factor) {
        return invalid(format!("{n} elements cannot be coarsened {levels} times"));
    }
    let fine = SplineSpace1D::uniform(0.0, 1.0, n, p)?;
    let coarse = SplineSpace1D::uniform(0.0, 1.0, n / factor, p - 1)?;
    let nv = fine.dim() - 2;
    let nq = coarse.dim();
    let rule = quadrature_rule(p + 1)?;

    let mut mv = DenseMatrix::zeros(nv, nv);
    let mut mq = DenseMatrix::zeros(nq, nq);
    let mut b = DenseMatrix::zeros(nq, nv);
    for e in 0..fine.n_elements() {
        let (a, c) = fine.element_bounds(e);
        let (xs, ws) = rule.mapped(a, c);
        for (x, w) in xs.into_iter().zip(ws) {
            let fv = fine.eval_basis(x, 0)?;
            let cv = coarse.eval_basis(x, 0)?;
            let f0 = fv.first_basis(p);
            let c0 = cv.first_basis(p - 1);
            // fine index j maps to free index j − 1
            let free: Vec<(usize, f64)> = fv.values[0]
                .iter()
                .enumerate()
                .filter_map(|(a, v)| {
                    let j = f0 + a;
                    (j >= 1 && j <= nv).then(|| (j - 1, *v))
                })
                .collect();
            for &(i, vi) in &free {
                for &(j, vj) in &free {
                    mv[(i, j)] += w * vi * vj;
                }
            }
            for (ai, ci) in cv.values[0].iter().enumerate() {
                for (aj, cj) in cv.values[0].iter().enumerate() {
                    mq[(c0 + ai, c0 + aj)] += w * ci * cj;
                }
                for &(j, vj) in &free {
                    b[(c0 + ai, j)] += w * ci * vj;
                }
            }
        }
    }
    let chol = Cholesky::new(&mv)?;
    let x = chol.solve_matrix(&b.transpose());
    let mut k = b.matmul(&x);
    for i in 0..nq {
        for j in i + 1..nq {
            let m = 0.5 * (k[(i, j)] + k[(j, i)]);
            k[(i, j)] = m;
            k[(j, i)] = m;
        }
    }
    let lambda = sym_generalized_eigmin(&k, &mq)?;
    Ok(lambda.max(0.0).sqrt())
}

/// Every combination of the given degrees, levels and element counts, in
/// that nesting order. Invalid cases carry the error.
pub fn infsup_table(degrees: &[usize], levels: &[usize], elements: &[usize]) -> Vec<(usize, usize, usize, Result<f64>)> {
    let mut out = Vec::new();
    for &p in degrees {
        for &l in levels {
            for &n in elements {
                out.push((p, l, n, compute_infsup(p, l, n)));
            }
        }
    }
    out
}
