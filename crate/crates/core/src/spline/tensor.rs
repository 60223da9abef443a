use crate::error::{invalid, Error, Result};

use super::SplineSpace1D;

/// Tensor product of univariate spline spaces on an axis-aligned box.
///
/// Basis functions are numbered row-major with the last direction fastest.
#[derive(Debug, Clone, PartialEq)]
pub struct TensorSpace {
    directions: Vec<SplineSpace1D>,
}

impl TensorSpace {
    pub fn new(directions: Vec<SplineSpace1D>) -> Result<Self> {
        if directions.is_empty() {
            return invalid("a tensor space needs at least one direction");
        }
        Ok(Self { directions })
    }

    /// Uniform open spaces on `[0,1]^d`.
    pub fn unit_uniform(elements: &[usize], degrees: &[usize]) -> Result<Self> {
        if elements.len() != degrees.len() {
            return Err(Error::ShapeMismatch {
                expected: elements.len(),
                found: degrees.len(),
            });
        }
        let dirs = elements
            .iter()
            .zip(degrees)
            .map(|(&n, &p)| SplineSpace1D::uniform(0.0, 1.0, n, p))
            .collect::<Result<Vec<_>>>()?;
        Self::new(dirs)
    }

    pub fn directions(&self) -> &[SplineSpace1D] {
        &self.directions
    }

    pub fn direction(&self, k: usize) -> &SplineSpace1D {
        &self.directions[k]
    }

    pub fn n_dims(&self) -> usize {
        self.directions.len()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.directions.iter().map(SplineSpace1D::dim).collect()
    }

    pub fn dim(&self) -> usize {
        self.directions.iter().map(SplineSpace1D::dim).product()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.directions.iter().map(SplineSpace1D::degree).collect()
    }

    pub fn max_degree(&self) -> usize {
        self.degrees().into_iter().max().unwrap_or(0)
    }

    pub fn n_elements(&self) -> Vec<usize> {
        self.directions.iter().map(SplineSpace1D::n_elements).collect()
    }

    /// Box `[a_k, b_k]` per direction.
    pub fn domain(&self) -> Vec<(f64, f64)> {
        self.directions.iter().map(SplineSpace1D::interval).collect()
    }

    /// Largest element edge over all directions.
    pub fn max_element_size(&self) -> f64 {
        self.directions
            .iter()
            .map(SplineSpace1D::max_element_size)
            .fold(0.0, f64::max)
    }

    pub fn flat_index(&self, multi: &[usize]) -> usize {
        multi
            .iter()
            .zip(&self.directions)
            .fold(0, |acc, (&i, s)| acc * s.dim() + i)
    }

    pub fn multi_index(&self, mut flat: usize) -> Vec<usize> {
        let mut out = vec![0; self.n_dims()];
        for (k, s) in self.directions.iter().enumerate().rev() {
            out[k] = flat % s.dim();
            flat /= s.dim();
        }
        out
    }

    /// Greville points per direction.
    pub fn greville(&self) -> Vec<Vec<f64>> {
        self.directions
            .iter()
            .map(SplineSpace1D::greville_abscissae)
            .collect()
    }

    /// Coefficients representing the coordinate function `x_k` (Greville
    /// coordinates, exact by linear reproduction).
    pub fn coordinate_coefficients(&self, k: usize) -> Vec<f64> {
        let g = self.directions[k].greville_abscissae();
        (0..self.dim())
            .map(|flat| g[self.multi_index(flat)[k]])
            .collect()
    }

    /// Spline value and gradient at `x`.
    pub fn eval_with_gradient(&self, coeffs: &[f64], x: &[f64]) -> Result<(f64, Vec<f64>)> {
        if coeffs.len() != self.dim() {
            return Err(Error::ShapeMismatch {
                expected: self.dim(),
                found: coeffs.len(),
            });
        }
        if x.len() != self.n_dims() {
            return Err(Error::ShapeMismatch {
                expected: self.n_dims(),
                found: x.len(),
            });
        }
        let d = self.n_dims();
        let evals = self
            .directions
            .iter()
            .zip(x)
            .map(|(s, &xi)| s.eval_basis(xi, 1))
            .collect::<Result<Vec<_>>>()?;
        let firsts: Vec<usize> = evals
            .iter()
            .zip(&self.directions)
            .map(|(e, s)| e.first_basis(s.degree()))
            .collect();
        let local: Vec<usize> = self.degrees().iter().map(|p| p + 1).collect();
        let mut value = 0.0;
        let mut grad = vec![0.0; d];
        for_each_multi(&local, |a| {
            let multi: Vec<usize> = a.iter().zip(&firsts).map(|(ai, f)| ai + f).collect();
            let c = coeffs[self.flat_index(&multi)];
            let mut v = 1.0;
            for k in 0..d {
                v *= evals[k].values[0][a[k]];
            }
            value += c * v;
            for (g, kd) in grad.iter_mut().zip(0..d) {
                let mut t = 1.0;
                for k in 0..d {
                    t *= evals[k].values[usize::from(k == kd)][a[k]];
                }
                *g += c * t;
            }
        });
        Ok((value, grad))
    }

    pub fn eval(&self, coeffs: &[f64], x: &[f64]) -> Result<f64> {
        self.eval_with_gradient(coeffs, x).map(|(v, _)| v)
    }
}

/// Calls `f` for every multi-index in `0..dims[0] × … × 0..dims[d-1]`,
/// last index fastest.
pub fn for_each_multi(dims: &[usize], mut f: impl FnMut(&[usize])) {
    if dims.iter().any(|&n| n == 0) {
        return;
    }
    let mut idx = vec![0; dims.len()];
    loop {
        f(&idx);
        let mut k = dims.len();
        loop {
            if k == 0 {
                return;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < dims[k] {
                break;
            }
            idx[k] = 0;
        }
    }
}
