//! Kronecker-structured operators applied without forming the product.
//!
//! Coefficient tensors are flattened row-major with the last direction
//! fastest, so that `(A_0 ⊗ A_1 ⊗ … ⊗ A_{d-1}) x` acts on direction `k`
//! through `A_k`.

use faer::{Mat, MatRef};

use super::DenseMatrix;

/// Computes `(A_0 ⊗ … ⊗ A_{d-1}) X` column by column. Each factor must be
/// square; `X` has `Π dim(A_k)` rows.
pub fn kron_apply(factors: &[&DenseMatrix], x: MatRef<'_, f64>) -> Mat<f64> {
    let dims: Vec<usize> = factors.iter().map(|f| f.rows()).collect();
    let total: usize = dims.iter().product();
    assert_eq!(x.nrows(), total, "kron_apply row mismatch");
    for f in factors {
        assert!(f.is_square(), "kron_apply needs square factors");
    }
    let mut cur = x.to_owned();
    for (k, f) in factors.iter().enumerate() {
        cur = mode_product(f.as_faer(), &dims, k, cur.as_ref());
    }
    cur
}

/// Applies `A` along direction `k` of a tensor with shape `dims`, for every
/// column of `x`.
fn mode_product(a: MatRef<'_, f64>, dims: &[usize], k: usize, x: MatRef<'_, f64>) -> Mat<f64> {
    let nk = dims[k];
    let inner: usize = dims[k + 1..].iter().product();
    let outer: usize = dims[..k].iter().product();
    let m = x.ncols();
    let mut out = Mat::<f64>::zeros(x.nrows(), m);
    if inner == 1 {
        // contiguous row blocks: one product per block over all columns
        for o in 0..outer {
            let block = a * x.subrows(o * nk, nk);
            out.as_mut().subrows_mut(o * nk, nk).copy_from(&block);
        }
        return out;
    }
    // each column is an (inner × outer·nk) column-major matrix
    let n = x.nrows();
    let at = a.transpose();
    let mut col = vec![0.0; n];
    for c in 0..m {
        for (r, v) in col.iter_mut().enumerate() {
            *v = x[(r, c)];
        }
        for o in 0..outer {
            let off = o * nk * inner;
            let z = MatRef::from_column_major_slice(&col[off..off + nk * inner], inner, nk);
            let prod = z * at;
            for i in 0..nk {
                for s in 0..inner {
                    out[(off + i * inner + s, c)] = prod[(s, i)];
                }
            }
        }
    }
    out
}

/// Vector form of [`kron_apply`].
pub fn kron_apply_vec(factors: &[&DenseMatrix], x: &[f64]) -> Vec<f64> {
    let xm = Mat::from_fn(x.len(), 1, |i, _| x[i]);
    let y = kron_apply(factors, xm.as_ref());
    (0..x.len()).map(|i| y[(i, 0)]).collect()
}

/// Explicit Kronecker product, for small operands.
pub fn kron_dense(factors: &[&DenseMatrix]) -> DenseMatrix {
    let mut acc = DenseMatrix::identity(1);
    for f in factors {
        let (r1, c1) = (acc.rows(), acc.cols());
        let (r2, c2) = (f.rows(), f.cols());
        acc = DenseMatrix::from_fn(r1 * r2, c1 * c2, |i, j| {
            acc[(i / r2, j / c2)] * f[(i % r2, j % c2)]
        });
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn random(r: usize, c: usize, rng: &mut impl Rng) -> DenseMatrix {
        DenseMatrix::from_fn(r, c, |_, _| rng.random_range(-1.0..1.0))
    }

    #[test]
    fn matches_explicit_kronecker() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for dims in [vec![5], vec![3, 4], vec![2, 3, 4]] {
            let fs: Vec<DenseMatrix> = dims.iter().map(|&n| random(n, n, &mut rng)).collect();
            let refs: Vec<&DenseMatrix> = fs.iter().collect();
            let k = kron_dense(&refs);
            let n: usize = dims.iter().product();
            let x = random(n, 3, &mut rng);
            let fast = kron_apply(&refs, x.as_faer());
            let slow = k.matmul(&x);
            for i in 0..n {
                for c in 0..3 {
                    assert!((fast[(i, c)] - slow[(i, c)]).abs() < 1e-13);
                }
            }
        }
    }
}
