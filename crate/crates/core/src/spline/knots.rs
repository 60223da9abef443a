use crate::error::{invalid, Result};

/// Open knot vector with simple interior knots.
///
/// The end knots have multiplicity exactly `degree + 1`; every interior knot
/// appears once, so the spline space has maximal `C^{p-1}` smoothness.
#[derive(Debug, Clone, PartialEq)]
pub struct KnotVector {
    values: Vec<f64>,
    degree: usize,
}

impl KnotVector {
    pub fn new(values: Vec<f64>, degree: usize) -> Result<Self> {
        if degree < 1 {
            return invalid("degree must be at least 1");
        }
        let p = degree;
        if values.len() < 2 * p + 2 {
            return invalid(format!(
                "{} knots cannot form an open knot vector of degree {p}",
                values.len()
            ));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return invalid("knots must be finite");
        }
        if values.windows(2).any(|w| w[1] < w[0]) {
            return invalid("knots must be nondecreasing");
        }
        let m = values.len();
        let (a, b) = (values[0], values[m - 1]);
        if !(a < b) {
            return invalid("basic interval is empty");
        }
        let first = values.iter().take_while(|&&v| v == a).count();
        let last = values.iter().rev().take_while(|&&v| v == b).count();
        if first != p + 1 || last != p + 1 {
            return invalid(format!(
                "end knots must have multiplicity {} (found {first} and {last})",
                p + 1
            ));
        }
        let interior = &values[p + 1..m - p - 1];
        if interior.windows(2).any(|w| w[0] == w[1]) {
            return invalid("interior knots must be simple");
        }
        Ok(Self { values, degree })
    }

    /// Open knot vector on `[a, b]` with the given distinct breakpoints.
    pub fn from_breaks(breaks: &[f64], degree: usize) -> Result<Self> {
        if breaks.len() < 2 {
            return invalid("need at least two breakpoints");
        }
        let mut values = Vec::with_capacity(breaks.len() + 2 * degree);
        values.extend(std::iter::repeat_n(breaks[0], degree));
        values.extend_from_slice(breaks);
        values.extend(std::iter::repeat_n(breaks[breaks.len() - 1], degree));
        Self::new(values, degree)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn first(&self) -> f64 {
        self.values[0]
    }

    pub fn last(&self) -> f64 {
        self.values[self.values.len() - 1]
    }

    /// Distinct knot values, i.e. element boundaries.
    pub fn breaks(&self) -> Vec<f64> {
        let p = self.degree;
        self.values[p..self.values.len() - p].to_vec()
    }

    /// Whether `self` is a sub-multiset of `fine`, with exact comparisons.
    pub fn is_subsequence_of(&self, fine: &KnotVector) -> bool {
        let mut it = fine.values.iter();
        self.values.iter().all(|v| it.any(|w| w == v))
    }
}

impl std::ops::Index<usize> for KnotVector {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.values[i]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validates_open_knots() {
        assert!(KnotVector::new(vec![0.0, 0.0, 0.0, 0.5, 1.0, 1.0, 1.0], 2).is_ok());
        // wrong end multiplicity
        assert!(KnotVector::new(vec![0.0, 0.0, 0.5, 1.0, 1.0, 1.0], 2).is_err());
        // repeated interior knot
        assert!(KnotVector::new(vec![0.0, 0.0, 0.5, 0.5, 1.0, 1.0], 1).is_err());
        // decreasing
        assert!(KnotVector::new(vec![0.0, 0.0, 0.7, 0.5, 1.0, 1.0], 1).is_err());
        assert!(KnotVector::new(vec![0.0, 0.0, 1.0, 1.0], 0).is_err());
    }

    #[test]
    fn subsequence() {
        let fine = KnotVector::from_breaks(&[0.0, 0.25, 0.5, 0.75, 1.0], 2).unwrap();
        let coarse = KnotVector::from_breaks(&[0.0, 0.5, 1.0], 2).unwrap();
        let other = KnotVector::from_breaks(&[0.0, 0.4, 1.0], 2).unwrap();
        assert!(coarse.is_subsequence_of(&fine));
        assert!(!other.is_subsequence_of(&fine));
        assert!(!fine.is_subsequence_of(&coarse));
    }
}
