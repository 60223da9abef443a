use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{invalid, Error, Result};
use crate::spline::TensorSpace;

pub type ScalarFn = Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;
/// Writes a vector field value at `x` into the output slice.
pub type VectorFn = Arc<dyn Fn(&[f64], &mut [f64]) + Send + Sync>;

pub fn scalar(f: impl Fn(&[f64]) -> f64 + Send + Sync + 'static) -> ScalarFn {
    Arc::new(f)
}

pub fn constant(c: f64) -> ScalarFn {
    Arc::new(move |_| c)
}

pub fn vector(f: impl Fn(&[f64], &mut [f64]) + Send + Sync + 'static) -> VectorFn {
    Arc::new(f)
}

pub fn constant_vector(b: Vec<f64>) -> VectorFn {
    Arc::new(move |_, out| out.copy_from_slice(&b))
}

/// Condition on one face of the box. Faces are numbered
/// `2·dir + side` with side 0 at the lower end.
#[derive(Clone)]
pub enum BoundaryCondition {
    Dirichlet(ScalarFn),
    /// Homogeneous natural condition (also used for an unconstrained outflow).
    Neumann,
}

impl BoundaryCondition {
    pub fn is_dirichlet(&self) -> bool {
        matches!(self, BoundaryCondition::Dirichlet(_))
    }
}

impl fmt::Debug for BoundaryCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundaryCondition::Dirichlet(_) => f.write_str("Dirichlet"),
            BoundaryCondition::Neumann => f.write_str("Neumann"),
        }
    }
}

#[derive(Clone)]
pub struct ExactSolution {
    pub value: ScalarFn,
    pub gradient: VectorFn,
}

/// `−εΔu + b·∇u + c u = f` on a box with per-face boundary conditions.
#[derive(Clone)]
pub struct ProblemSpec {
    pub name: String,
    pub domain: Vec<(f64, f64)>,
    pub epsilon: f64,
    pub advection: VectorFn,
    /// `div b`, needed for `σ = c − ½ div b`.
    pub divergence: ScalarFn,
    pub reaction: ScalarFn,
    pub source: ScalarFn,
    pub boundary: Vec<BoundaryCondition>,
    pub exact: Option<ExactSolution>,
    /// Gauss points per direction for the load vector; defaults to the
    /// assembly rule.
    pub load_points: Option<usize>,
}

impl fmt::Debug for ProblemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ProblemSpec")
            .field("name", &self.name)
            .field("domain", &self.domain)
            .field("epsilon", &self.epsilon)
            .field("boundary", &self.boundary)
            .field("exact", &self.exact.is_some())
            .finish()
    }
}

impl ProblemSpec {
    /// Problem on `domain` with zero coefficients and homogeneous Dirichlet
    /// data on every face.
    pub fn new(name: impl Into<String>, domain: Vec<(f64, f64)>) -> Self {
        let d = domain.len();
        Self {
            name: name.into(),
            epsilon: 0.0,
            advection: constant_vector(vec![0.0; d]),
            divergence: constant(0.0),
            reaction: constant(0.0),
            source: constant(0.0),
            boundary: vec![BoundaryCondition::Dirichlet(constant(0.0)); 2 * d],
            exact: None,
            load_points: None,
            domain,
        }
    }

    pub fn n_dims(&self) -> usize {
        self.domain.len()
    }

    pub fn advection_at(&self, x: &[f64], out: &mut [f64]) {
        (self.advection)(x, out)
    }

    /// `σ = c − ½ div b`.
    pub fn sigma(&self, x: &[f64]) -> f64 {
        (self.reaction)(x) - 0.5 * (self.divergence)(x)
    }

    /// Condition on `face`, or an error if it was never set.
    pub fn face(&self, face: usize) -> Result<&BoundaryCondition> {
        self.boundary
            .get(face)
            .ok_or(Error::MissingBoundaryData { face })
    }

    /// Checks that the problem lives on the box of `space`.
    pub fn check_space(&self, space: &TensorSpace) -> Result<()> {
        if self.epsilon < 0.0 || !self.epsilon.is_finite() {
            return invalid(format!("diffusion must be finite and nonnegative, got {}", self.epsilon));
        }
        if space.n_dims() != self.n_dims() {
            return Err(Error::ShapeMismatch {
                expected: self.n_dims(),
                found: space.n_dims(),
            });
        }
        for (k, ((a, b), (sa, sb))) in self.domain.iter().zip(space.domain()).enumerate() {
            if *a != sa || *b != sb {
                return invalid(format!(
                    "direction {k}: space covers [{sa}, {sb}] but the problem lives on [{a}, {b}]"
                ));
            }
        }
        for face in 0..2 * self.n_dims() {
            self.face(face)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Galerkin,
    Supg,
    Gls,
    Mq,
    MqIsotropic,
}

impl Method {
    pub const ALL: [Method; 5] = [
        Method::Galerkin,
        Method::Supg,
        Method::Gls,
        Method::Mq,
        Method::MqIsotropic,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Method::Galerkin => "galerkin",
            Method::Supg => "supg",
            Method::Gls => "gls",
            Method::Mq => "mq",
            Method::MqIsotropic => "mq-iso",
        }
    }

    pub fn is_multilevel(self) -> bool {
        matches!(self, Method::Mq | Method::MqIsotropic)
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.as_str())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "galerkin" => Ok(Method::Galerkin),
            "supg" => Ok(Method::Supg),
            "gls" => Ok(Method::Gls),
            "mq" => Ok(Method::Mq),
            "mq-iso" | "mq_iso" | "mq_isotropic" | "mq-isotropic" => Ok(Method::MqIsotropic),
            other => invalid(format!("unknown method '{other}'")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StabConfig {
    pub method: Method,
    pub levels: usize,
    pub cb: f64,
    /// Gauss points per direction for system assembly; defaults to
    /// `max degree + 1`.
    pub quadrature: Option<usize>,
}

impl StabConfig {
    pub fn galerkin() -> Self {
        Self {
            method: Method::Galerkin,
            levels: 0,
            cb: 0.0,
            quadrature: None,
        }
    }

    pub fn new(method: Method, levels: usize, cb: f64) -> Self {
        Self {
            method,
            levels,
            cb,
            quadrature: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.cb >= 0.0 && self.cb.is_finite()) {
            return invalid(format!("cb must be finite and nonnegative, got {}", self.cb));
        }
        if self.method.is_multilevel() && self.levels < 1 {
            return invalid("multilevel stabilization needs at least one level");
        }
        Ok(())
    }

    pub fn points(&self, space: &TensorSpace) -> usize {
        self.quadrature.unwrap_or(space.max_degree() + 1)
    }

    /// `τ_h = c_b h` with `h` the largest fine element edge.
    pub fn tau_h(&self, space: &TensorSpace) -> f64 {
        self.cb * space.max_element_size()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn method_roundtrip() {
        for m in Method::ALL {
            assert_eq!(m.as_str().parse::<Method>().unwrap(), m);
        }
        assert!("upwind".parse::<Method>().is_err());
    }

    #[test]
    fn config_checks() {
        let space = TensorSpace::unit_uniform(&[8, 4], &[2, 3]).unwrap();
        let cfg = StabConfig::new(Method::Mq, 2, 0.1);
        assert!((cfg.tau_h(&space) - 0.025).abs() < 1e-16);
        assert_eq!(cfg.points(&space), 4);
        assert!(StabConfig::new(Method::Mq, 0, 0.1).validate().is_err());
        assert!(StabConfig::new(Method::Supg, 0, -1.0).validate().is_err());
        assert!(StabConfig::galerkin().validate().is_ok());
    }

    #[test]
    fn problem_space_checks() {
        let space = TensorSpace::unit_uniform(&[4], &[2]).unwrap();
        let mut p = ProblemSpec::new("t", vec![(0.0, 1.0)]);
        assert!(p.check_space(&space).is_ok());
        p.boundary.pop();
        assert_eq!(p.check_space(&space), Err(Error::MissingBoundaryData { face: 1 }));
        let q = ProblemSpec::new("t", vec![(0.0, 2.0)]);
        assert!(q.check_space(&space).is_err());
    }
}
