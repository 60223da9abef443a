use crate::error::{Error, Result};

use super::DenseMatrix;

/// Compressed-row sparse matrix with sorted, unique column indices per row.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    row_ptr: Vec<usize>,
    col_idx: Vec<usize>,
    values: Vec<f64>,
}

impl SparseMatrix {
    /// Creates a zero matrix with the given sparsity pattern. Each row's
    /// column list is sorted and deduplicated.
    pub fn with_pattern(rows: usize, cols: usize, pattern: Vec<Vec<usize>>) -> Result<Self> {
        if pattern.len() != rows {
            return Err(Error::ShapeMismatch {
                expected: rows,
                found: pattern.len(),
            });
        }
        let mut row_ptr = Vec::with_capacity(rows + 1);
        let mut col_idx = Vec::new();
        row_ptr.push(0);
        for mut r in pattern {
            r.sort_unstable();
            r.dedup();
            if let Some(&last) = r.last() {
                if last >= cols {
                    return Err(Error::InvalidArgument(format!(
                        "column {last} out of range for {cols} columns"
                    )));
                }
            }
            col_idx.extend(r);
            row_ptr.push(col_idx.len());
        }
        let nnz = col_idx.len();
        Ok(Self {
            rows,
            cols,
            row_ptr,
            col_idx,
            values: vec![0.0; nnz],
        })
    }

    /// Sums duplicate `(row, col, value)` entries.
    pub fn from_triplets(rows: usize, cols: usize, triplets: &[(usize, usize, f64)]) -> Result<Self> {
        let mut pattern = vec![Vec::new(); rows];
        for &(i, j, _) in triplets {
            if i >= rows {
                return Err(Error::InvalidArgument(format!("row {i} out of range")));
            }
            pattern[i].push(j);
        }
        let mut m = Self::with_pattern(rows, cols, pattern)?;
        for &(i, j, v) in triplets {
            m.add(i, j, v);
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    fn position(&self, i: usize, j: usize) -> Option<usize> {
        let start = self.row_ptr[i];
        let cols = &self.col_idx[start..self.row_ptr[i + 1]];
        cols.binary_search(&j).ok().map(|k| start + k)
    }

    /// Adds `v` to entry `(i, j)`, which must belong to the pattern.
    pub fn add(&mut self, i: usize, j: usize, v: f64) {
        let k = self
            .position(i, j)
            .unwrap_or_else(|| panic!("entry ({i}, {j}) outside sparsity pattern"));
        self.values[k] += v;
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.position(i, j).map_or(0.0, |k| self.values[k])
    }

    /// Iterates `(column, value)` over stored entries of row `i`.
    pub fn row(&self, i: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let r = self.row_ptr[i]..self.row_ptr[i + 1];
        self.col_idx[r.clone()]
            .iter()
            .copied()
            .zip(self.values[r].iter().copied())
    }

    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.cols, "matvec dimension mismatch");
        (0..self.rows)
            .map(|i| self.row(i).map(|(j, v)| v * x[j]).sum())
            .collect()
    }

    pub fn bilinear(&self, x: &[f64], y: &[f64]) -> f64 {
        x.iter().zip(self.matvec(y)).map(|(a, b)| a * b).sum()
    }

    pub fn scale(&mut self, alpha: f64) {
        self.values.iter_mut().for_each(|v| *v *= alpha);
    }

    /// `self + alpha * other`, over the union of both patterns.
    pub fn add_scaled(&self, alpha: f64, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let pattern = (0..self.rows)
            .map(|i| {
                self.row(i)
                    .map(|(j, _)| j)
                    .chain(other.row(i).map(|(j, _)| j))
                    .collect()
            })
            .collect();
        let mut out = SparseMatrix::with_pattern(self.rows, self.cols, pattern)
            .expect("pattern inherited from valid matrices");
        for i in 0..self.rows {
            for (j, v) in self.row(i) {
                out.add(i, j, v);
            }
            for (j, v) in other.row(i) {
                out.add(i, j, alpha * v);
            }
        }
        out
    }

    pub fn to_dense(&self) -> DenseMatrix {
        let mut d = DenseMatrix::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for (j, v) in self.row(i) {
                d[(i, j)] = v;
            }
        }
        d
    }

    /// Largest entry of `|A - A^T|`.
    pub fn asymmetry(&self) -> f64 {
        let mut worst = 0.0_f64;
        for i in 0..self.rows {
            for (j, v) in self.row(i) {
                worst = worst.max((v - self.get(j, i)).abs());
            }
        }
        worst
    }

    /// Lower and upper bandwidths of the stored pattern.
    pub fn bandwidths(&self) -> (usize, usize) {
        let mut lower = 0;
        let mut upper = 0;
        for i in 0..self.rows {
            for (j, _) in self.row(i) {
                if j < i {
                    lower = lower.max(i - j);
                } else {
                    upper = upper.max(j - i);
                }
            }
        }
        (lower, upper)
    }

    /// Extracts the submatrix `A[rows, cols]`; `cols` must be sorted.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> SparseMatrix {
        let mut map = vec![usize::MAX; self.cols];
        for (k, &j) in cols.iter().enumerate() {
            map[j] = k;
        }
        let mut row_ptr = vec![0];
        let mut col_idx = Vec::new();
        let mut values = Vec::new();
        for &i in rows {
            for (j, v) in self.row(i) {
                if map[j] != usize::MAX {
                    col_idx.push(map[j]);
                    values.push(v);
                }
            }
            row_ptr.push(col_idx.len());
        }
        SparseMatrix {
            rows: rows.len(),
            cols: cols.len(),
            row_ptr,
            col_idx,
            values,
        }
    }

    pub fn norm_max(&self) -> f64 {
        self.values.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
    }
}
