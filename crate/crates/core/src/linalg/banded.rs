use crate::error::{Error, Result};

use super::SparseMatrix;

/// Band LU factorization with partial pivoting.
///
/// Row `i` stores columns `i - kl ..= i + kl + ku`; the extra `kl`
/// superdiagonals absorb fill from row interchanges. Multipliers stay in the
/// row where they were computed and interchanges only touch columns to the
/// right of the pivot, so the forward solve replays swaps and eliminations in
/// factorization order.
pub struct BandedLu {
    n: usize,
    kl: usize,
    ku: usize,
    width: usize,
    band: Vec<f64>,
    pivots: Vec<usize>,
}

impl BandedLu {
    pub fn new(a: &SparseMatrix) -> Result<Self> {
        if a.rows() != a.cols() {
            return Err(Error::ShapeMismatch {
                expected: a.rows(),
                found: a.cols(),
            });
        }
        let n = a.rows();
        let (kl, ku) = a.bandwidths();
        let width = 2 * kl + ku + 1;
        let mut lu = Self {
            n,
            kl,
            ku,
            width,
            band: vec![0.0; n * width],
            pivots: vec![0; n],
        };
        for i in 0..n {
            for (j, v) in a.row(i) {
                *lu.at_mut(i, j) = v;
            }
        }
        lu.factor(a.norm_max())?;
        Ok(lu)
    }

    #[inline]
    fn offset(&self, i: usize, j: usize) -> usize {
        debug_assert!(j + self.kl >= i && j <= i + self.kl + self.ku);
        i * self.width + (j + self.kl - i)
    }

    #[inline]
    fn at(&self, i: usize, j: usize) -> f64 {
        self.band[self.offset(i, j)]
    }

    #[inline]
    fn at_mut(&mut self, i: usize, j: usize) -> &mut f64 {
        let k = self.offset(i, j);
        &mut self.band[k]
    }

    fn factor(&mut self, scale: f64) -> Result<()> {
        let n = self.n;
        let tiny = scale * f64::EPSILON * n.max(1) as f64;
        for k in 0..n {
            let last_row = (k + self.kl).min(n - 1);
            let mut piv = k;
            let mut best = self.at(k, k).abs();
            for i in k + 1..=last_row {
                let v = self.at(i, k).abs();
                if v > best {
                    best = v;
                    piv = i;
                }
            }
            if best <= tiny {
                return Err(Error::Singular(format!("zero pivot in column {k}")));
            }
            self.pivots[k] = piv;
            let last_col = (k + self.kl + self.ku).min(n - 1);
            if piv != k {
                for j in k..=last_col {
                    let a = self.offset(k, j);
                    let b = self.offset(piv, j);
                    self.band.swap(a, b);
                }
            }
            let pivot = self.at(k, k);
            for i in k + 1..=last_row {
                let l = self.at(i, k) / pivot;
                *self.at_mut(i, k) = l;
                if l != 0.0 {
                    for j in k + 1..=last_col {
                        let u = self.at(k, j);
                        *self.at_mut(i, j) -= l * u;
                    }
                }
            }
        }
        Ok(())
    }

    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        assert_eq!(b.len(), self.n);
        let n = self.n;
        let mut x = b.to_vec();
        for k in 0..n {
            x.swap(k, self.pivots[k]);
            let xk = x[k];
            for i in k + 1..=(k + self.kl).min(n.saturating_sub(1)) {
                x[i] -= self.at(i, k) * xk;
            }
        }
        for k in (0..n).rev() {
            let mut s = x[k];
            for j in k + 1..=(k + self.kl + self.ku).min(n - 1) {
                s -= self.at(k, j) * x[j];
            }
            x[k] = s / self.at(k, k);
        }
        x
    }
}
