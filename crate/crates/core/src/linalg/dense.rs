use std::ops::{Index, IndexMut};

use faer::linalg::solvers::Solve;
use faer::{Mat, MatRef, Side};

use crate::error::{Error, Result};

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Builds a matrix from a row-major buffer.
    pub fn from_row_major(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::ShapeMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::ShapeMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
            data.extend_from_slice(r);
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn diagonal(values: &[f64]) -> Self {
        let mut m = Self::zeros(values.len(), values.len());
        for (i, v) in values.iter().enumerate() {
            m[(i, i)] = *v;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn as_mut_slice(&mut self) -> &mut [f64] {
        &mut self.data
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn as_faer(&self) -> MatRef<'_, f64> {
        MatRef::from_row_major_slice(&self.data, self.rows, self.cols)
    }

    pub fn from_faer(m: MatRef<'_, f64>) -> Self {
        Self::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)])
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.cols, "matvec dimension mismatch");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn matmul(&self, other: &DenseMatrix) -> DenseMatrix {
        assert_eq!(self.cols, other.rows, "matmul dimension mismatch");
        let prod = self.as_faer() * other.as_faer();
        Self::from_faer(prod.as_ref())
    }

    /// `self += alpha * other`.
    pub fn add_scaled(&mut self, alpha: f64, other: &DenseMatrix) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += alpha * b;
        }
    }

    pub fn scale(&mut self, alpha: f64) {
        self.data.iter_mut().for_each(|v| *v *= alpha);
    }

    /// Quadratic form `x^T A y`.
    pub fn bilinear(&self, x: &[f64], y: &[f64]) -> f64 {
        x.iter()
            .enumerate()
            .map(|(i, xi)| xi * self.row(i).iter().zip(y).map(|(a, b)| a * b).sum::<f64>())
            .sum()
    }

    pub fn norm_max(&self) -> f64 {
        self.data.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
    }

    pub fn norm_frobenius(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    /// Largest entry of `|A - A^T|`.
    pub fn asymmetry(&self) -> f64 {
        let mut worst = 0.0_f64;
        for i in 0..self.rows {
            for j in i + 1..self.cols {
                worst = worst.max((self[(i, j)] - self[(j, i)]).abs());
            }
        }
        worst
    }

    /// Extracts `A[rows, cols]`.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> DenseMatrix {
        DenseMatrix::from_fn(rows.len(), cols.len(), |i, j| self[(rows[i], cols[j])])
    }

    pub(crate) fn to_faer_owned(&self) -> Mat<f64> {
        Mat::from_fn(self.rows, self.cols, |i, j| self[(i, j)])
    }
}

impl Index<(usize, usize)> for DenseMatrix {
    type Output = f64;

    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for DenseMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.cols + j]
    }
}

/// LU factorization with partial pivoting.
pub struct DenseLu {
    n: usize,
    lu: faer::linalg::solvers::PartialPivLu<f64>,
}

impl DenseLu {
    pub fn new(a: &DenseMatrix) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::ShapeMismatch {
                expected: a.rows(),
                found: a.cols(),
            });
        }
        let n = a.rows();
        let lu = a.as_faer().partial_piv_lu();
        let u = lu.U();
        let mut dmax = 0.0_f64;
        let mut dmin = f64::INFINITY;
        for i in 0..n {
            let d = u[(i, i)].abs();
            dmax = dmax.max(d);
            dmin = dmin.min(d);
        }
        if n > 0 && (dmax == 0.0 || !dmin.is_finite() || dmin <= dmax * f64::EPSILON * n as f64) {
            return Err(Error::Singular(format!(
                "pivot ratio {:.3e}",
                if dmax > 0.0 { dmin / dmax } else { 0.0 }
            )));
        }
        Ok(Self { n, lu })
    }

    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        assert_eq!(b.len(), self.n);
        let rhs = Mat::from_fn(self.n, 1, |i, _| b[i]);
        let x = self.lu.solve(&rhs);
        (0..self.n).map(|i| x[(i, 0)]).collect()
    }
}

/// Solves `A x = b` by LU with partial pivoting.
pub fn lu_solve(a: &DenseMatrix, b: &[f64]) -> Result<Vec<f64>> {
    if b.len() != a.rows() {
        return Err(Error::ShapeMismatch {
            expected: a.rows(),
            found: b.len(),
        });
    }
    Ok(DenseLu::new(a)?.solve(b))
}

/// Cholesky factor `M = L L^T` of a symmetric positive definite matrix.
pub struct Cholesky {
    n: usize,
    llt: faer::linalg::solvers::Llt<f64>,
}

impl Cholesky {
    pub fn new(m: &DenseMatrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::ShapeMismatch {
                expected: m.rows(),
                found: m.cols(),
            });
        }
        let llt = m
            .as_faer()
            .llt(Side::Lower)
            .map_err(|_| Error::NotPositiveDefinite)?;
        Ok(Self { n: m.rows(), llt })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Solves `M X = B` column by column.
    pub fn solve_matrix(&self, b: &DenseMatrix) -> DenseMatrix {
        assert_eq!(b.rows(), self.n);
        let x = self.llt.solve(b.as_faer());
        DenseMatrix::from_faer(x.as_ref())
    }

    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        let rhs = Mat::from_fn(self.n, 1, |i, _| b[i]);
        let x = self.llt.solve(&rhs);
        (0..self.n).map(|i| x[(i, 0)]).collect()
    }

    fn factor(&self) -> MatRef<'_, f64> {
        self.llt.L()
    }
}

/// Smallest eigenvalue of the symmetric pencil `A q = λ M q`.
pub fn sym_generalized_eigmin(a: &DenseMatrix, m: &DenseMatrix) -> Result<f64> {
    sym_generalized_eigmin_pair(a, m).map(|(lambda, _)| lambda)
}

/// Smallest eigenpair `(λ, q)` of `A q = λ M q`, with `q^T M q = 1`.
///
/// Reduces to the standard problem `L^{-1} A L^{-T} y = λ y` through the
/// Cholesky factor of `M`, then recovers `q = L^{-T} y`.
pub fn sym_generalized_eigmin_pair(a: &DenseMatrix, m: &DenseMatrix) -> Result<(f64, Vec<f64>)> {
    if a.rows() != m.rows() || !a.is_square() || !m.is_square() {
        return Err(Error::ShapeMismatch {
            expected: m.rows(),
            found: a.rows(),
        });
    }
    let n = a.rows();
    if n == 0 {
        return Err(Error::InvalidArgument("empty pencil".into()));
    }
    let chol = Cholesky::new(m)?;
    let l = chol.factor();

    // X = L^{-1} A, then C = L^{-1} X^T = L^{-1} A L^{-T} for symmetric A.
    let mut x = a.to_faer_owned();
    faer::linalg::triangular_solve::solve_lower_triangular_in_place(
        l,
        x.as_mut(),
        faer::Par::Seq,
    );
    let mut c = x.transpose().to_owned();
    faer::linalg::triangular_solve::solve_lower_triangular_in_place(
        l,
        c.as_mut(),
        faer::Par::Seq,
    );
    let c = Mat::from_fn(n, n, |i, j| 0.5 * (c[(i, j)] + c[(j, i)]));

    let evd = c
        .self_adjoint_eigen(Side::Lower)
        .map_err(|_| Error::NoConvergence)?;
    let lambda = evd.S()[0];
    let mut y = Mat::from_fn(n, 1, |i, _| evd.U()[(i, 0)]);
    faer::linalg::triangular_solve::solve_upper_triangular_in_place(
        l.transpose(),
        y.as_mut(),
        faer::Par::Seq,
    );
    Ok((lambda, (0..n).map(|i| y[(i, 0)]).collect()))
}

/// Singular values in nonincreasing order.
pub fn singular_values(a: &DenseMatrix) -> Result<Vec<f64>> {
    a.as_faer()
        .singular_values()
        .map_err(|_| Error::NoConvergence)
}

/// Spectral condition number `σ_max / σ_min`; `+∞` for singular input.
pub fn condition_number_2(a: &DenseMatrix) -> f64 {
    if a.rows() == 0 || a.cols() == 0 {
        return 1.0;
    }
    match singular_values(a) {
        Ok(s) => {
            let smax = s[0];
            let smin = *s.last().unwrap();
            if smin <= 0.0 || smin <= smax * f64::EPSILON {
                f64::INFINITY
            } else {
                smax / smin
            }
        }
        Err(_) => f64::INFINITY,
    }
}
