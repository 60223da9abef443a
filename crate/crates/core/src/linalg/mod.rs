//! Dense, banded and Kronecker-structured kernels.
//!
//! Dense factorizations (LU, Cholesky, symmetric eigenvalues, SVD) are
//! delegated to `faer`; the band solver and the Kronecker mode products are
//! implemented here.

mod banded;
mod dense;
pub mod kron;
mod sparse;

pub use banded::BandedLu;
pub use dense::{
    condition_number_2, lu_solve, singular_values, sym_generalized_eigmin,
    sym_generalized_eigmin_pair, Cholesky, DenseLu, DenseMatrix,
};
pub use sparse::SparseMatrix;

/// Either storage form of an assembled operator.
#[derive(Debug, Clone)]
pub enum Operator {
    Sparse(SparseMatrix),
    Dense(DenseMatrix),
}

impl Operator {
    pub fn rows(&self) -> usize {
        match self {
            Operator::Sparse(m) => m.rows(),
            Operator::Dense(m) => m.rows(),
        }
    }

    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        match self {
            Operator::Sparse(m) => m.matvec(x),
            Operator::Dense(m) => m.matvec(x),
        }
    }

    pub fn to_dense(&self) -> DenseMatrix {
        match self {
            Operator::Sparse(m) => m.to_dense(),
            Operator::Dense(m) => m.clone(),
        }
    }

    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Operator {
        match self {
            Operator::Sparse(m) => Operator::Sparse(m.select(rows, cols)),
            Operator::Dense(m) => Operator::Dense(m.select(rows, cols)),
        }
    }

    /// Factorizes for repeated solves: band LU for narrow sparse operators,
    /// dense LU otherwise.
    pub fn factorize(&self) -> crate::Result<Factorization> {
        match self {
            Operator::Sparse(m) => {
                let (kl, ku) = m.bandwidths();
                if 4 * (kl + ku + 1) < m.rows() {
                    Ok(Factorization::Banded(BandedLu::new(m)?))
                } else {
                    Ok(Factorization::Dense(DenseLu::new(&m.to_dense())?))
                }
            }
            Operator::Dense(m) => Ok(Factorization::Dense(DenseLu::new(m)?)),
        }
    }
}

pub enum Factorization {
    Banded(BandedLu),
    Dense(DenseLu),
}

impl Factorization {
    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        match self {
            Factorization::Banded(f) => f.solve(b),
            Factorization::Dense(f) => f.solve(b),
        }
    }
}

pub(crate) fn norm2(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}
