use crate::error::{invalid, Error, Result};
use crate::linalg::DenseMatrix;

use super::KnotVector;

/// Univariate spline space of degree `p` on an open knot vector.
#[derive(Debug, Clone, PartialEq)]
pub struct SplineSpace1D {
    knots: KnotVector,
    breaks: Vec<f64>,
}

/// Nonzero basis functions (and derivatives) at one point.
#[derive(Debug, Clone, PartialEq)]
pub struct BasisValues {
    /// Knot span index `μ` with `t_μ ≤ x < t_{μ+1}`.
    pub span: usize,
    /// `values[r][a]` is the `r`-th derivative of basis `span - p + a`.
    pub values: Vec<Vec<f64>>,
}

impl BasisValues {
    pub fn first_basis(&self, degree: usize) -> usize {
        self.span - degree
    }
}

impl SplineSpace1D {
    pub fn new(knots: KnotVector) -> Self {
        let breaks = knots.breaks();
        Self { knots, breaks }
    }

    /// Open uniform space on `[a, b]` with `n_elements` elements.
    ///
    /// Breakpoints are `a + (b - a) * (i / n)`, so a space with `n / 2`
    /// elements reproduces every second breakpoint bit for bit.
    pub fn uniform(a: f64, b: f64, n_elements: usize, degree: usize) -> Result<Self> {
        if n_elements < 1 {
            return invalid("need at least one element");
        }
        if !(b > a) || !a.is_finite() || !b.is_finite() {
            return invalid(format!("invalid interval [{a}, {b}]"));
        }
        if degree < 1 {
            return invalid("degree must be at least 1");
        }
        let breaks: Vec<f64> = (0..=n_elements)
            .map(|i| {
                if i == n_elements {
                    b
                } else {
                    a + (b - a) * (i as f64 / n_elements as f64)
                }
            })
            .collect();
        Ok(Self::new(KnotVector::from_breaks(&breaks, degree)?))
    }

    pub fn knots(&self) -> &KnotVector {
        &self.knots
    }

    pub fn degree(&self) -> usize {
        self.knots.degree()
    }

    /// Number of basis functions.
    pub fn dim(&self) -> usize {
        self.knots.len() - self.degree() - 1
    }

    pub fn n_elements(&self) -> usize {
        self.breaks.len() - 1
    }

    pub fn breaks(&self) -> &[f64] {
        &self.breaks
    }

    pub fn interval(&self) -> (f64, f64) {
        (self.knots.first(), self.knots.last())
    }

    pub fn element_bounds(&self, e: usize) -> (f64, f64) {
        (self.breaks[e], self.breaks[e + 1])
    }

    pub fn max_element_size(&self) -> f64 {
        self.breaks
            .windows(2)
            .map(|w| w[1] - w[0])
            .fold(0.0, f64::max)
    }

    /// Knot span containing `x`; the last span is closed at `b`.
    pub fn find_span(&self, x: f64) -> Result<usize> {
        let (a, b) = self.interval();
        if !(x >= a && x <= b) {
            return Err(Error::OutOfDomain { x, a, b });
        }
        let p = self.degree();
        let n = self.dim();
        if x == b {
            return Ok(n - 1);
        }
        let t = self.knots.values();
        // largest μ in [p, n-1] with t_μ ≤ x
        let (mut lo, mut hi) = (p, n);
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            if t[mid] <= x {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(lo)
    }

    /// Element index containing `x`.
    pub fn find_element(&self, x: f64) -> Result<usize> {
        Ok(self.find_span(x)? - self.degree())
    }

    /// Nonzero basis functions and their derivatives up to `deriv_order`.
    pub fn eval_basis(&self, x: f64, deriv_order: usize) -> Result<BasisValues> {
        let p = self.degree();
        if deriv_order > p {
            return invalid(format!("derivative order {deriv_order} exceeds degree {p}"));
        }
        let span = self.find_span(x)?;
        Ok(BasisValues {
            span,
            values: self.ders_at_span(span, x, deriv_order),
        })
    }

    /// Cox–de Boor triangle with derivatives for a known span.
    pub(crate) fn ders_at_span(&self, span: usize, x: f64, nder: usize) -> Vec<Vec<f64>> {
        let p = self.degree();
        let t = self.knots.values();
        let mut ndu = vec![vec![0.0; p + 1]; p + 1];
        let mut left = vec![0.0; p + 1];
        let mut right = vec![0.0; p + 1];
        ndu[0][0] = 1.0;
        for j in 1..=p {
            left[j] = x - t[span + 1 - j];
            right[j] = t[span + j] - x;
            let mut saved = 0.0;
            for r in 0..j {
                // lower triangle holds knot differences
                ndu[j][r] = right[r + 1] + left[j - r];
                let temp = ndu[r][j - 1] / ndu[j][r];
                ndu[r][j] = saved + right[r + 1] * temp;
                saved = left[j - r] * temp;
            }
            ndu[j][j] = saved;
        }

        let mut ders = vec![vec![0.0; p + 1]; nder + 1];
        for j in 0..=p {
            ders[0][j] = ndu[j][p];
        }
        let mut a = vec![vec![0.0; p + 1]; 2];
        for r in 0..=p {
            let (mut s1, mut s2) = (0usize, 1usize);
            a[0][0] = 1.0;
            for k in 1..=nder {
                let mut d = 0.0;
                let rk = r as isize - k as isize;
                let pk = p - k;
                if r >= k {
                    a[s2][0] = a[s1][0] / ndu[pk + 1][rk as usize];
                    d = a[s2][0] * ndu[rk as usize][pk];
                }
                let j1 = if rk >= -1 { 1 } else { (-rk) as usize };
                let j2 = if r as isize - 1 <= pk as isize { k - 1 } else { p - r };
                for j in j1..=j2 {
                    let idx = (rk + j as isize) as usize;
                    a[s2][j] = (a[s1][j] - a[s1][j - 1]) / ndu[pk + 1][idx];
                    d += a[s2][j] * ndu[idx][pk];
                }
                if r <= pk {
                    a[s2][k] = -a[s1][k - 1] / ndu[pk + 1][r];
                    d += a[s2][k] * ndu[r][pk];
                }
                ders[k][r] = d;
                std::mem::swap(&mut s1, &mut s2);
            }
        }
        let mut factor = p as f64;
        for k in 1..=nder {
            for v in ders[k].iter_mut() {
                *v *= factor;
            }
            factor *= (p - k) as f64;
        }
        ders
    }

    /// Value of the spline `Σ c_i N_i` (or its `order`-th derivative) at `x`.
    pub fn eval(&self, coeffs: &[f64], x: f64, order: usize) -> Result<f64> {
        if coeffs.len() != self.dim() {
            return Err(Error::ShapeMismatch {
                expected: self.dim(),
                found: coeffs.len(),
            });
        }
        let bv = self.eval_basis(x, order)?;
        let first = bv.first_basis(self.degree());
        Ok(bv.values[order]
            .iter()
            .enumerate()
            .map(|(a, n)| n * coeffs[first + a])
            .sum())
    }

    /// Knot averages `(t_{i+1} + … + t_{i+p}) / p`.
    pub fn greville_abscissae(&self) -> Vec<f64> {
        let p = self.degree();
        let t = self.knots.values();
        (0..self.dim())
            .map(|i| {
                let g = t[i + 1..=i + p].iter().sum::<f64>() / p as f64;
                // clamp rounding at the ends of the basic interval
                g.clamp(t[0], t[t.len() - 1])
            })
            .collect()
    }

    /// Whether `self` is nested in `fine`: same degree and interval, knots a
    /// subsequence.
    pub fn is_nested_in(&self, fine: &SplineSpace1D) -> bool {
        self.degree() == fine.degree()
            && self.interval() == fine.interval()
            && self.knots.is_subsequence_of(&fine.knots)
    }

    /// Matrix `P` (fine.dim × coarse.dim) with `Σ_i (P c)_i N_i^fine = Σ_j c_j N_j^coarse`.
    ///
    /// Built by inserting the missing knots one at a time.
    pub fn prolongation_matrix(coarse: &SplineSpace1D, fine: &SplineSpace1D) -> Result<DenseMatrix> {
        if !coarse.is_nested_in(fine) {
            return Err(Error::NotNested(format!(
                "degree {} space with {} elements is not contained in degree {} space with {} elements",
                coarse.degree(),
                coarse.n_elements(),
                fine.degree(),
                fine.n_elements()
            )));
        }
        let p = coarse.degree();
        let mut knots = coarse.knots.values().to_vec();
        let mut p_mat = DenseMatrix::identity(coarse.dim());
        for x in missing_knots(coarse.knots.values(), fine.knots.values()) {
            let n = knots.len() - p - 1;
            // span k with t_k ≤ x < t_{k+1}
            let k = knots.partition_point(|&t| t <= x) - 1;
            let step = DenseMatrix::from_fn(n + 1, n, |i, j| {
                let alpha = if i + p <= k {
                    1.0
                } else if i > k {
                    0.0
                } else {
                    (x - knots[i]) / (knots[i + p] - knots[i])
                };
                if j == i {
                    alpha
                } else if j + 1 == i {
                    1.0 - alpha
                } else {
                    0.0
                }
            });
            p_mat = step.matmul(&p_mat);
            knots.insert(k + 1, x);
        }
        Ok(p_mat)
    }
}

/// Knots of `fine` not accounted for by `coarse` (multiset difference).
fn missing_knots(coarse: &[f64], fine: &[f64]) -> Vec<f64> {
    let mut out = Vec::new();
    let mut i = 0;
    for &v in fine {
        if i < coarse.len() && coarse[i] == v {
            i += 1;
        } else {
            out.push(v);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn uniform_space_examples() {
        let s = SplineSpace1D::uniform(0.0, 1.0, 2, 2).unwrap();
        assert_eq!(s.knots().values(), &[0.0, 0.0, 0.0, 0.5, 1.0, 1.0, 1.0]);
        assert_eq!(s.dim(), 4);
        let s = SplineSpace1D::uniform(0.0, 1.0, 1, 1).unwrap();
        assert_eq!(s.knots().values(), &[0.0, 0.0, 1.0, 1.0]);
        assert_eq!(s.dim(), 2);
        let s = SplineSpace1D::uniform(0.0, 1.0, 4, 2).unwrap();
        assert_eq!(
            s.knots().values(),
            &[0.0, 0.0, 0.0, 0.25, 0.5, 0.75, 1.0, 1.0, 1.0]
        );
        assert_eq!(s.dim(), 6);
    }

    #[test]
    fn uniform_space_errors() {
        assert!(SplineSpace1D::uniform(0.0, 1.0, 0, 2).is_err());
        assert!(SplineSpace1D::uniform(1.0, 1.0, 4, 2).is_err());
        assert!(SplineSpace1D::uniform(2.0, 1.0, 4, 2).is_err());
    }

    #[test]
    fn basis_at_left_endpoint() {
        let s = SplineSpace1D::uniform(0.0, 1.0, 2, 2).unwrap();
        let bv = s.eval_basis(0.0, 0).unwrap();
        assert_eq!(bv.first_basis(2), 0);
        assert_eq!(bv.values[0], vec![1.0, 0.0, 0.0]);
    }

    #[test]
    fn hat_functions() {
        let s = SplineSpace1D::uniform(0.0, 1.0, 1, 1).unwrap();
        let bv = s.eval_basis(0.3, 1).unwrap();
        assert_relative_eq!(bv.values[0][0], 0.7, epsilon = 1e-15);
        assert_relative_eq!(bv.values[0][1], 0.3, epsilon = 1e-15);
        assert_relative_eq!(bv.values[1][0], -1.0, epsilon = 1e-15);
        assert_relative_eq!(bv.values[1][1], 1.0, epsilon = 1e-15);
    }

    #[test]
    fn right_endpoint_uses_closed_last_span() {
        let s = SplineSpace1D::uniform(0.0, 1.0, 4, 3).unwrap();
        let bv = s.eval_basis(1.0, 0).unwrap();
        assert_eq!(bv.span, s.dim() - 1);
        assert_eq!(*bv.values[0].last().unwrap(), 1.0);
    }

    #[test]
    fn eval_errors() {
        let s = SplineSpace1D::uniform(0.0, 1.0, 4, 2).unwrap();
        assert!(matches!(s.eval_basis(1.5, 0), Err(Error::OutOfDomain { .. })));
        assert!(matches!(s.eval_basis(-1e-9, 0), Err(Error::OutOfDomain { .. })));
        assert!(s.eval_basis(f64::NAN, 0).is_err());
        assert!(s.eval_basis(0.5, 3).is_err());
    }

    #[test]
    fn greville_examples() {
        let g = SplineSpace1D::uniform(0.0, 1.0, 2, 2).unwrap().greville_abscissae();
        assert_eq!(g, vec![0.0, 0.25, 0.75, 1.0]);
        let g = SplineSpace1D::uniform(0.0, 1.0, 1, 1).unwrap().greville_abscissae();
        assert_eq!(g, vec![0.0, 1.0]);
        let g = SplineSpace1D::uniform(0.0, 1.0, 4, 2).unwrap().greville_abscissae();
        assert_eq!(g, vec![0.0, 0.125, 0.375, 0.625, 0.875, 1.0]);
    }

    #[test]
    fn prolongation_identity_when_equal() {
        let s = SplineSpace1D::uniform(0.0, 1.0, 8, 3).unwrap();
        let p = SplineSpace1D::prolongation_matrix(&s, &s).unwrap();
        assert_eq!(p, DenseMatrix::identity(s.dim()));
    }

    #[test]
    fn prolongation_reproduces_constants_and_lines() {
        let coarse = SplineSpace1D::uniform(0.0, 1.0, 2, 3).unwrap();
        let fine = SplineSpace1D::uniform(0.0, 1.0, 8, 3).unwrap();
        let p = SplineSpace1D::prolongation_matrix(&coarse, &fine).unwrap();
        for v in p.matvec(&vec![1.0; coarse.dim()]) {
            assert_relative_eq!(v, 1.0, epsilon = 1e-14);
        }
        let lifted = p.matvec(&coarse.greville_abscissae());
        for (a, b) in lifted.iter().zip(fine.greville_abscissae()) {
            assert_relative_eq!(*a, b, epsilon = 1e-14);
        }
        for i in 0..p.rows() {
            assert!(p.row(i).iter().all(|&v| v >= -1e-15));
        }
    }

    #[test]
    fn prolongation_rejects_non_nested() {
        let a = SplineSpace1D::uniform(0.0, 1.0, 3, 2).unwrap();
        let b = SplineSpace1D::uniform(0.0, 1.0, 4, 2).unwrap();
        assert!(matches!(
            SplineSpace1D::prolongation_matrix(&a, &b),
            Err(Error::NotNested(_))
        ));
        let c = SplineSpace1D::uniform(0.0, 1.0, 4, 3).unwrap();
        assert!(SplineSpace1D::prolongation_matrix(&b, &c).is_err());
    }

    proptest! {
        #[test]
        fn partition_of_unity_and_nonnegativity(
            ne in 1usize..20, p in 1usize..6, u in 0.0f64..=1.0
        ) {
            let s = SplineSpace1D::uniform(-1.0, 2.0, ne, p).unwrap();
            let x = -1.0 + 3.0 * u;
            let bv = s.eval_basis(x, 0).unwrap();
            let sum: f64 = bv.values[0].iter().sum();
            prop_assert!((sum - 1.0).abs() <= 1e-12);
            prop_assert!(bv.values[0].iter().all(|&v| v >= 0.0));
        }
    }
}
