//! Per-element tensor-product basis tables at Gauss points.

use crate::error::{Error, Result};
use crate::spline::{for_each_multi, SplineSpace1D, TensorSpace};

use super::quadrature::quadrature_rule;

/// Univariate basis values and derivatives at the Gauss points of every
/// element of one direction.
pub(crate) struct DirectionTable {
    pub q: usize,
    pub p: usize,
    pub nder: usize,
    pub x: Vec<f64>,
    pub w: Vec<f64>,
    /// `[element][point][order][local basis]`, flattened.
    values: Vec<f64>,
}

impl DirectionTable {
    pub fn new(space: &SplineSpace1D, q: usize, nder: usize) -> Result<Self> {
        let rule = quadrature_rule(q)?;
        let p = space.degree();
        let ne = space.n_elements();
        let mut x = Vec::with_capacity(ne * q);
        let mut w = Vec::with_capacity(ne * q);
        let mut values = vec![0.0; ne * q * (nder + 1) * (p + 1)];
        for e in 0..ne {
            let (a, b) = space.element_bounds(e);
            let (xs, ws) = rule.mapped(a, b);
            for (qi, &xq) in xs.iter().enumerate() {
                let ders = space.ders_at_span(p + e, xq, nder.min(p));
                for (r, row) in ders.iter().enumerate() {
                    let base = ((e * q + qi) * (nder + 1) + r) * (p + 1);
                    values[base..base + p + 1].copy_from_slice(row);
                }
            }
            x.extend(xs);
            w.extend(ws);
        }
        Ok(Self {
            q,
            p,
            nder,
            x,
            w,
            values,
        })
    }

    #[inline]
    pub fn value(&self, e: usize, qi: usize, r: usize, a: usize) -> f64 {
        self.values[((e * self.q + qi) * (self.nder + 1) + r) * (self.p + 1) + a]
    }
}

/// Geometry and basis data of one tensor element at its Gauss points.
pub(crate) struct ElementData {
    pub element: Vec<usize>,
    pub dofs: Vec<usize>,
    pub nq: usize,
    pub x: Vec<f64>,
    pub w: Vec<f64>,
    pub val: Vec<f64>,
    pub grad: Vec<f64>,
    pub lap: Vec<f64>,
    pub sizes: Vec<f64>,
    pub centroid: Vec<f64>,
}

impl ElementData {
    pub fn n_local(&self) -> usize {
        self.dofs.len()
    }

    pub fn point(&self, qi: usize) -> &[f64] {
        let d = self.centroid.len();
        &self.x[qi * d..(qi + 1) * d]
    }

    pub fn values(&self, qi: usize) -> &[f64] {
        let nl = self.n_local();
        &self.val[qi * nl..(qi + 1) * nl]
    }

    /// Gradient of local basis `a` at point `qi`.
    pub fn gradient(&self, qi: usize, a: usize) -> &[f64] {
        let d = self.centroid.len();
        let base = (qi * self.n_local() + a) * d;
        &self.grad[base..base + d]
    }

    pub fn laplacian(&self, qi: usize) -> &[f64] {
        let nl = self.n_local();
        &self.lap[qi * nl..(qi + 1) * nl]
    }
}

pub(crate) struct Integrator<'a> {
    space: &'a TensorSpace,
    tables: Vec<DirectionTable>,
}

impl<'a> Integrator<'a> {
    /// Tables with `points` Gauss points per direction and derivatives up to
    /// `nder`.
    pub fn new(space: &'a TensorSpace, points: usize, nder: usize) -> Result<Self> {
        let tables = space
            .directions()
            .iter()
            .map(|s| DirectionTable::new(s, points, nder))
            .collect::<Result<_>>()?;
        Ok(Self { space, tables })
    }

    /// Calls `f` once per element in lexicographic element order.
    pub fn for_each_element(&self, mut f: impl FnMut(&ElementData) -> Result<()>) -> Result<()> {
        let d = self.space.n_dims();
        let q = self.tables[0].q;
        let nder = self.tables[0].nder;
        let local_dims: Vec<usize> = self.space.degrees().iter().map(|p| p + 1).collect();
        let nl: usize = local_dims.iter().product();
        let nq = q.pow(d as u32);
        let mut local = Vec::with_capacity(nl);
        for_each_multi(&local_dims, |a| local.push(a.to_vec()));
        let mut qps = Vec::with_capacity(nq);
        for_each_multi(&vec![q; d], |m| qps.push(m.to_vec()));

        let mut data = ElementData {
            element: vec![0; d],
            dofs: vec![0; nl],
            nq,
            x: vec![0.0; nq * d],
            w: vec![0.0; nq],
            val: vec![0.0; nq * nl],
            grad: vec![0.0; nq * nl * d],
            lap: vec![0.0; nq * nl],
            sizes: vec![0.0; d],
            centroid: vec![0.0; d],
        };
        let mut multi = vec![0; d];
        let mut result = Ok(());
        for_each_multi(&self.space.n_elements(), |e| {
            if result.is_err() {
                return;
            }
            data.element.copy_from_slice(e);
            for k in 0..d {
                let (a, b) = self.space.direction(k).element_bounds(e[k]);
                data.sizes[k] = b - a;
                data.centroid[k] = 0.5 * (a + b);
            }
            for (l, a) in local.iter().enumerate() {
                for k in 0..d {
                    multi[k] = e[k] + a[k];
                }
                data.dofs[l] = self.space.flat_index(&multi);
            }
            for (qi, qm) in qps.iter().enumerate() {
                let mut w = 1.0;
                for k in 0..d {
                    let t = &self.tables[k];
                    let idx = e[k] * q + qm[k];
                    data.x[qi * d + k] = t.x[idx];
                    w *= t.w[idx];
                }
                data.w[qi] = w;
                for (l, a) in local.iter().enumerate() {
                    let v = |k: usize, r: usize| self.tables[k].value(e[k], qm[k], r, a[k]);
                    let mut val = 1.0;
                    for k in 0..d {
                        val *= v(k, 0);
                    }
                    data.val[qi * nl + l] = val;
                    if nder == 0 {
                        continue;
                    }
                    let mut lap = 0.0;
                    for g in 0..d {
                        let mut gr = 1.0;
                        let mut hs = 1.0;
                        for k in 0..d {
                            gr *= v(k, usize::from(k == g));
                            if nder >= 2 {
                                hs *= v(k, if k == g { 2 } else { 0 });
                            }
                        }
                        data.grad[(qi * nl + l) * d + g] = gr;
                        if nder >= 2 {
                            lap += hs;
                        }
                    }
                    data.lap[qi * nl + l] = lap;
                }
            }
            result = f(&data);
        });
        result
    }
}

/// Sparsity of all couplings between basis functions with overlapping
/// supports: `|i_k − j_k| ≤ p_k` in every direction.
pub(crate) fn tensor_pattern(space: &TensorSpace) -> Vec<Vec<usize>> {
    let dims = space.dims();
    let degrees = space.degrees();
    let mut rows = Vec::with_capacity(space.dim());
    for_each_multi(&dims, |i| {
        let lo: Vec<usize> = i.iter().zip(&degrees).map(|(&ik, &p)| ik.saturating_sub(p)).collect();
        let ext: Vec<usize> = i
            .iter()
            .zip(&degrees)
            .zip(&dims)
            .zip(&lo)
            .map(|(((&ik, &p), &n), &l)| (ik + p).min(n - 1) - l + 1)
            .collect();
        let mut cols = Vec::new();
        let mut j = vec![0; i.len()];
        for_each_multi(&ext, |o| {
            for k in 0..o.len() {
                j[k] = lo[k] + o[k];
            }
            cols.push(space.flat_index(&j));
        });
        rows.push(cols);
    });
    rows
}

pub(crate) fn check_finite(value: f64, x: &[f64]) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::NonFiniteCoefficient(x.to_vec()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn element_data_integrates_partition_of_unity() {
        let space = TensorSpace::unit_uniform(&[3, 2], &[2, 1]).unwrap();
        let integ = Integrator::new(&space, 3, 2).unwrap();
        let mut area = 0.0;
        let mut count = 0;
        integ
            .for_each_element(|el| {
                count += 1;
                for qi in 0..el.nq {
                    let s: f64 = el.values(qi).iter().sum();
                    assert!((s - 1.0).abs() < 1e-14);
                    let gsum: f64 = (0..el.n_local()).map(|a| el.gradient(qi, a)[0]).sum();
                    assert!(gsum.abs() < 1e-12);
                    assert!(el.laplacian(qi).iter().sum::<f64>().abs() < 1e-10);
                    area += el.w[qi];
                }
                Ok(())
            })
            .unwrap();
        assert_eq!(count, 6);
        assert!((area - 1.0).abs() < 1e-14);
    }

    #[test]
    fn pattern_is_symmetric_and_sized() {
        let space = TensorSpace::unit_uniform(&[4, 3], &[2, 1]).unwrap();
        let pat = tensor_pattern(&space);
        for (i, row) in pat.iter().enumerate() {
            assert!(row.windows(2).all(|w| w[0] < w[1]));
            assert!(row.len() <= 5 * 3);
            for &j in row {
                assert!(pat[j].contains(&i));
            }
        }
    }
}
