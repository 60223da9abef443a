use crate::error::{Error, Result};
use crate::linalg::Operator;
use crate::spline::TensorSpace;

use super::problem::{BoundaryCondition, ProblemSpec};

/// Constrained linear system on the free coefficients.
#[derive(Debug, Clone)]
pub struct DiscreteSystem {
    pub matrix: Operator,
    pub rhs: Vec<f64>,
    /// Full indices of the free coefficients, increasing.
    pub free: Vec<usize>,
    /// Full coefficient vector carrying the Dirichlet values (zero on free
    /// coefficients).
    pub lift: Vec<f64>,
}

impl DiscreteSystem {
    pub fn dim(&self) -> usize {
        self.free.len()
    }

    /// Full coefficients from the free-coefficient solution.
    pub fn expand(&self, free_values: &[f64]) -> Result<Vec<f64>> {
        if free_values.len() != self.free.len() {
            return Err(Error::ShapeMismatch {
                expected: self.free.len(),
                found: free_values.len(),
            });
        }
        let mut u = self.lift.clone();
        for (&g, v) in self.free.iter().zip(free_values) {
            u[g] = *v;
        }
        Ok(u)
    }
}

/// Lift vector and constrained mask from Greville collocation of the
/// Dirichlet data. A coefficient on several Dirichlet faces takes the value
/// of the face with the lowest index (`2·dir + side`).
pub fn dirichlet_lift(space: &TensorSpace, prob: &ProblemSpec) -> Result<(Vec<f64>, Vec<bool>)> {
    prob.check_space(space)?;
    let d = space.n_dims();
    let dims = space.dims();
    let greville = space.greville();
    let mut lift = vec![0.0; space.dim()];
    let mut fixed = vec![false; space.dim()];
    let mut x = vec![0.0; d];
    for flat in 0..space.dim() {
        let multi = space.multi_index(flat);
        for face in 0..2 * d {
            let (dir, side) = (face / 2, face % 2);
            let on_face = if side == 0 { multi[dir] == 0 } else { multi[dir] == dims[dir] - 1 };
            if !on_face {
                continue;
            }
            if let BoundaryCondition::Dirichlet(g) = prob.face(face)? {
                for k in 0..d {
                    x[k] = greville[k][multi[k]];
                }
                let v = g(&x);
                if !v.is_finite() {
                    return Err(Error::NonFiniteCoefficient(x.clone()));
                }
                lift[flat] = v;
                fixed[flat] = true;
                break;
            }
        }
    }
    Ok((lift, fixed))
}

/// Restricts the full system `A u = F` to the free coefficients, moving the
/// Dirichlet lift to the right-hand side.
pub fn apply_dirichlet(
    matrix: &Operator,
    rhs: &[f64],
    space: &TensorSpace,
    prob: &ProblemSpec,
) -> Result<DiscreteSystem> {
    if matrix.rows() != space.dim() || rhs.len() != space.dim() {
        return Err(Error::ShapeMismatch {
            expected: space.dim(),
            found: matrix.rows().min(rhs.len()),
        });
    }
    let (lift, fixed) = dirichlet_lift(space, prob)?;
    let free: Vec<usize> = (0..space.dim()).filter(|&i| !fixed[i]).collect();
    let al = matrix.matvec(&lift);
    let rhs = free.iter().map(|&i| rhs[i] - al[i]).collect();
    Ok(DiscreteSystem {
        matrix: matrix.select(&free, &free),
        rhs,
        free,
        lift,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::assembly::problem::{constant, scalar};
    use crate::linalg::SparseMatrix;

    #[test]
    fn homogeneous_1d_removes_two() {
        let space = TensorSpace::unit_uniform(&[6], &[3]).unwrap();
        let prob = ProblemSpec::new("t", vec![(0.0, 1.0)]);
        let a = Operator::Sparse(SparseMatrix::from_triplets(9, 9, &(0..9).map(|i| (i, i, 1.0)).collect::<Vec<_>>()).unwrap());
        let sys = apply_dirichlet(&a, &[1.0; 9], &space, &prob).unwrap();
        assert_eq!(sys.dim(), 7);
        assert!(sys.lift.iter().all(|v| *v == 0.0));
        assert_eq!(sys.free, (1..8).collect::<Vec<_>>());
    }

    #[test]
    fn constant_data_lifts_to_ones() {
        let space = TensorSpace::unit_uniform(&[4, 3], &[2, 3]).unwrap();
        let mut prob = ProblemSpec::new("t", vec![(0.0, 1.0), (0.0, 1.0)]);
        prob.boundary = vec![BoundaryCondition::Dirichlet(constant(1.0)); 4];
        let (lift, fixed) = dirichlet_lift(&space, &prob).unwrap();
        let dims = space.dims();
        for flat in 0..space.dim() {
            let m = space.multi_index(flat);
            let boundary = m[0] == 0 || m[1] == 0 || m[0] == dims[0] - 1 || m[1] == dims[1] - 1;
            assert_eq!(fixed[flat], boundary);
            assert_eq!(lift[flat], if boundary { 1.0 } else { 0.0 });
        }
    }

    #[test]
    fn parabolic_layer_data() {
        let space = TensorSpace::unit_uniform(&[8, 8], &[3, 3]).unwrap();
        let mut prob = ProblemSpec::new("t", vec![(0.0, 1.0), (0.0, 1.0)]);
        let lateral = BoundaryCondition::Dirichlet(scalar(|x| 1.0 - x[1]));
        prob.boundary = vec![
            lateral.clone(),
            lateral,
            BoundaryCondition::Dirichlet(constant(1.0)),
            BoundaryCondition::Neumann,
        ];
        let (lift, fixed) = dirichlet_lift(&space, &prob).unwrap();
        let gy = space.direction(1).greville_abscissae();
        let ny = space.dims()[1];
        for (j, t) in gy.iter().enumerate() {
            for ix in [0, space.dims()[0] - 1] {
                let flat = ix * ny + j;
                assert!(fixed[flat]);
                assert!((lift[flat] - (1.0 - t)).abs() < 1e-15);
            }
        }
        // top interior coefficients stay free
        assert!(!fixed[3 * ny + ny - 1]);
        // the spline of the lift matches 1 − y on the lateral face
        for &y in &[0.1, 0.37, 0.9] {
            let v = space.eval(&lift, &[0.0, y]).unwrap();
            assert!((v - (1.0 - y)).abs() < 1e-14);
        }
    }

    #[test]
    fn rhs_moves_lift() {
        let space = TensorSpace::unit_uniform(&[1], &[1]).unwrap();
        let mut prob = ProblemSpec::new("t", vec![(0.0, 1.0)]);
        prob.boundary = vec![BoundaryCondition::Dirichlet(constant(2.0)), BoundaryCondition::Neumann];
        let a = Operator::Sparse(SparseMatrix::from_triplets(2, 2, &[(0, 0, 1.0), (0, 1, 1.0), (1, 0, 3.0), (1, 1, 4.0)]).unwrap());
        let sys = apply_dirichlet(&a, &[0.0, 10.0], &space, &prob).unwrap();
        assert_eq!(sys.free, vec![1]);
        assert_eq!(sys.rhs, vec![4.0]);
        assert_eq!(sys.expand(&[7.0]).unwrap(), vec![2.0, 7.0]);
    }
}
