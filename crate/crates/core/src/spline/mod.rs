//! Univariate and tensor-product B-spline spaces.

mod knots;
mod space;
mod tensor;

pub use knots::KnotVector;
pub use space::{BasisValues, SplineSpace1D};
pub use tensor::{for_each_multi, TensorSpace};

/// Open uniform space with `n_elements` elements of degree `degree` on `[a, b]`.
pub fn make_uniform_space(a: f64, b: f64, n_elements: usize, degree: usize) -> crate::Result<SplineSpace1D> {
    SplineSpace1D::uniform(a, b, n_elements, degree)
}
