use std::fmt;

use crate::assembly::{
    constant, constant_vector, scalar, vector, BoundaryCondition, ExactSolution, Method, ProblemSpec,
    StabConfig,
};
use crate::error::{invalid, Result};

/// The six transport benchmarks on the unit interval or unit square.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TestId {
    /// 1D advection–reaction with a discontinuous source.
    AdvectionReaction,
    /// 1D advection–diffusion with an outflow boundary layer.
    BoundaryLayer,
    /// 2D parabolic layers.
    ParabolicLayers,
    /// 2D internal layers from a localized source.
    InternalLayers,
    /// 2D rotating flow.
    RotatingFlow,
    /// 2D pure advection of a steep front.
    PureAdvection,
}

impl TestId {
    pub const ALL: [TestId; 6] = [
        TestId::AdvectionReaction,
        TestId::BoundaryLayer,
        TestId::ParabolicLayers,
        TestId::InternalLayers,
        TestId::RotatingFlow,
        TestId::PureAdvection,
    ];

    pub fn from_number(n: usize) -> Result<Self> {
        match n {
            1..=6 => Ok(Self::ALL[n - 1]),
            _ => invalid(format!("unknown test {n}; tests are numbered 1 to 6")),
        }
    }

    pub fn number(self) -> usize {
        Self::ALL.iter().position(|t| *t == self).map_or(0, |i| i + 1)
    }

    pub fn n_dims(self) -> usize {
        match self {
            TestId::AdvectionReaction | TestId::BoundaryLayer => 1,
            _ => 2,
        }
    }

    pub fn problem(self) -> ProblemSpec {
        match self {
            TestId::AdvectionReaction => advection_reaction(),
            TestId::BoundaryLayer => boundary_layer(1e-5),
            TestId::ParabolicLayers => parabolic_layers(),
            TestId::InternalLayers => internal_layers(),
            TestId::RotatingFlow => rotating_flow(),
            TestId::PureAdvection => pure_advection(),
        }
    }

    /// Default degrees (one per direction).
    pub fn default_degrees(self) -> Vec<usize> {
        match self {
            TestId::AdvectionReaction => vec![3],
            TestId::BoundaryLayer => vec![5],
            TestId::PureAdvection => vec![2, 3],
            _ => vec![3, 3],
        }
    }

    /// Default elements per direction.
    pub fn default_elements(self) -> Vec<usize> {
        match self {
            TestId::AdvectionReaction | TestId::BoundaryLayer => vec![512],
            TestId::PureAdvection => vec![8, 256],
            _ => vec![64, 64],
        }
    }

    pub fn default_levels(self, degrees: &[usize]) -> usize {
        match self {
            TestId::AdvectionReaction => 4,
            TestId::BoundaryLayer => 5,
            TestId::ParabolicLayers => {
                if degrees.iter().copied().max().unwrap_or(3) >= 5 {
                    5
                } else {
                    4
                }
            }
            TestId::InternalLayers => 5,
            TestId::RotatingFlow => 4,
            TestId::PureAdvection => 4,
        }
    }

    pub fn default_cb(self) -> f64 {
        if self.n_dims() == 1 {
            0.1
        } else {
            0.01
        }
    }

    pub fn default_config(self, method: Method, degrees: &[usize]) -> StabConfig {
        StabConfig::new(method, self.default_levels(degrees), self.default_cb())
    }

    /// Per-direction degrees from a user list: a single value is repeated in
    /// 2D, except for the pure advection test whose first degree stays 2.
    pub fn expand_degrees(self, given: &[usize]) -> Result<Vec<usize>> {
        expand(self, given, "degree", |t| t.default_degrees())
    }

    pub fn expand_elements(self, given: &[usize]) -> Result<Vec<usize>> {
        expand(self, given, "elements", |t| t.default_elements())
    }

    /// Gauss points per direction for error norms.
    pub fn error_points(self, degrees: &[usize]) -> usize {
        let p = degrees.iter().copied().max().unwrap_or(1);
        match self {
            TestId::PureAdvection => p + 1,
            _ => p + 3,
        }
    }

    /// Gauss points per direction for the load vector of a discontinuous
    /// source; `None` keeps the assembly rule.
    pub fn load_points(self, degrees: &[usize]) -> Option<usize> {
        let p = degrees.iter().copied().max().unwrap_or(1);
        match self {
            TestId::AdvectionReaction | TestId::InternalLayers => Some(p + 3),
            _ => None,
        }
    }

    /// Problem with the load quadrature chosen for `degrees`.
    pub fn problem_for(self, degrees: &[usize]) -> ProblemSpec {
        let mut p = self.problem();
        p.load_points = self.load_points(degrees);
        p
    }

    /// Whether the min/diff layer indicators apply.
    pub fn has_indicators(self) -> bool {
        self == TestId::InternalLayers
    }
}

fn expand(test: TestId, given: &[usize], what: &str, default: impl Fn(TestId) -> Vec<usize>) -> Result<Vec<usize>> {
    let d = test.n_dims();
    match given.len() {
        0 => Ok(default(test)),
        1 if d == 2 && test == TestId::PureAdvection => {
            let mut v = default(test);
            v[1] = given[0];
            Ok(v)
        }
        1 => Ok(vec![given[0]; d]),
        n if n == d => Ok(given.to_vec()),
        n => invalid(format!("test {} is {d}-dimensional but {n} {what} values were given", test.number())),
    }
}

impl fmt::Display for TestId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.number())
    }
}

fn unit(d: usize) -> Vec<(f64, f64)> {
    vec![(0.0, 1.0); d]
}

fn in_closed(x: f64, a: f64, b: f64) -> bool {
    (a..=b).contains(&x)
}

/// `u′ + u = f`, `f = 5` on `[1/3, 2/3]`, `u(0) = 0`, free outflow.
pub fn advection_reaction() -> ProblemSpec {
    let (a, b) = (1.0 / 3.0, 2.0 / 3.0);
    let mut p = ProblemSpec::new("advection-reaction", unit(1));
    p.advection = constant_vector(vec![1.0]);
    p.reaction = constant(1.0);
    p.source = scalar(move |x| if in_closed(x[0], a, b) { 5.0 } else { 0.0 });
    p.boundary = vec![BoundaryCondition::Dirichlet(constant(0.0)), BoundaryCondition::Neumann];
    let top = 5.0 * (1.0 - (-(b - a)).exp());
    p.exact = Some(ExactSolution {
        value: scalar(move |x| {
            let x = x[0];
            if x < a {
                0.0
            } else if x <= b {
                5.0 * (1.0 - (-(x - a)).exp())
            } else {
                top * (-(x - b)).exp()
            }
        }),
        gradient: vector(move |x, g| {
            let x = x[0];
            g[0] = if x < a {
                0.0
            } else if x <= b {
                5.0 * (-(x - a)).exp()
            } else {
                -top * (-(x - b)).exp()
            };
        }),
    });
    p
}

/// `−εu″ + u′ = 1`, homogeneous Dirichlet data.
pub fn boundary_layer(eps: f64) -> ProblemSpec {
    let mut p = ProblemSpec::new("boundary-layer", unit(1));
    p.epsilon = eps;
    p.advection = constant_vector(vec![1.0]);
    p.source = constant(1.0);
    let denom = 1.0 - (-1.0 / eps).exp();
    p.exact = Some(ExactSolution {
        value: scalar(move |x| {
            let x = x[0];
            x - ((x - 1.0) / eps).exp() * (1.0 - (-x / eps).exp()) / denom
        }),
        gradient: vector(move |x, g| {
            g[0] = 1.0 - ((x[0] - 1.0) / eps).exp() / (eps * denom);
        }),
    });
    p
}

pub fn parabolic_layers() -> ProblemSpec {
    let mut p = ProblemSpec::new("parabolic-layers", unit(2));
    p.epsilon = 1e-8;
    p.advection = vector(|x, b| {
        b[0] = 0.0;
        b[1] = 1.0 + x[0] * x[0];
    });
    let lateral = BoundaryCondition::Dirichlet(scalar(|x| 1.0 - x[1]));
    p.boundary = vec![
        lateral.clone(),
        lateral,
        BoundaryCondition::Dirichlet(constant(1.0)),
        BoundaryCondition::Neumann,
    ];
    p
}

pub fn internal_layers() -> ProblemSpec {
    let mut p = ProblemSpec::new("internal-layers", unit(2));
    p.epsilon = 1e-5;
    p.advection = constant_vector(vec![1.0, 0.0]);
    p.source = scalar(|x| {
        if in_closed(x[0], 0.25, 0.75) && in_closed(x[1], 0.25, 0.75) {
            16.0 * (1.0 - 2.0 * x[0])
        } else {
            0.0
        }
    });
    p
}

/// Inflow profile of the rotating-flow test: 1 on `(1/3, 2/3]`.
pub fn rotating_inflow(x: f64) -> f64 {
    if x > 1.0 / 3.0 && x <= 2.0 / 3.0 {
        1.0
    } else {
        0.0
    }
}

pub fn rotating_flow() -> ProblemSpec {
    let mut p = ProblemSpec::new("rotating-flow", unit(2));
    p.epsilon = 1e-7;
    p.advection = vector(|x, b| {
        b[0] = -x[1];
        b[1] = x[0];
    });
    p.boundary = vec![
        BoundaryCondition::Dirichlet(constant(0.0)),
        BoundaryCondition::Dirichlet(constant(0.0)),
        BoundaryCondition::Dirichlet(scalar(|x| rotating_inflow(x[0]))),
        BoundaryCondition::Neumann,
    ];
    p
}

/// `∂_y u = (1 − tanh²((y − a)/δ))/(2δ)` with `u(x, 0) = 0`.
pub fn pure_advection() -> ProblemSpec {
    let (delta, a) = (0.004, 2.0 / 3.0);
    let mut p = ProblemSpec::new("pure-advection", unit(2));
    p.advection = constant_vector(vec![0.0, 1.0]);
    let slope = move |y: f64| {
        let t = ((y - a) / delta).tanh();
        (1.0 - t * t) / (2.0 * delta)
    };
    p.source = scalar(move |x| slope(x[1]));
    p.boundary = vec![
        BoundaryCondition::Neumann,
        BoundaryCondition::Neumann,
        BoundaryCondition::Dirichlet(constant(0.0)),
        BoundaryCondition::Neumann,
    ];
    p.exact = Some(ExactSolution {
        value: scalar(move |x| 0.5 * (((x[1] - a) / delta).tanh() + 1.0)),
        gradient: vector(move |x, g| {
            g[0] = 0.0;
            g[1] = slope(x[1]);
        }),
    });
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exact(p: &ProblemSpec) -> &ExactSolution {
        p.exact.as_ref().unwrap()
    }

    #[test]
    fn numbering() {
        for n in 1..=6 {
            assert_eq!(TestId::from_number(n).unwrap().number(), n);
        }
        assert!(TestId::from_number(0).is_err());
        assert!(TestId::from_number(9).is_err());
    }

    #[test]
    fn boundary_layer_exact() {
        let p = boundary_layer(1e-5);
        let e = exact(&p);
        assert_eq!((e.value)(&[0.5]), 0.5);
        assert_eq!((e.value)(&[0.0]), 0.0);
        assert!((e.value)(&[1.0]).abs() < 1e-15);
        let mut g = [0.0];
        (e.gradient)(&[0.3], &mut g);
        assert_eq!(g[0], 1.0);
        // residual of −εu″ + u′ = 1 by differences away from the layer
        let q = boundary_layer(0.1);
        let u = |x: f64| (exact(&q).value)(&[x]);
        let h = 1e-4;
        for x in [0.2, 0.5, 0.9] {
            let d2 = (u(x + h) - 2.0 * u(x) + u(x - h)) / (h * h);
            let mut g = [0.0];
            (exact(&q).gradient)(&[x], &mut g);
            assert!((-0.1 * d2 + g[0] - 1.0).abs() < 1e-5);
        }
    }

    #[test]
    fn advection_reaction_exact_solves_ode() {
        let p = advection_reaction();
        let e = exact(&p);
        for x in [0.1, 0.4, 0.6, 0.9] {
            let mut g = [0.0];
            (e.gradient)(&[x], &mut g);
            let r = g[0] + (e.value)(&[x]) - (p.source)(&[x]);
            assert!(r.abs() < 1e-13);
        }
        // continuity at the source edges
        let b = 2.0 / 3.0;
        assert!(((e.value)(&[b]) - (e.value)(&[b + 1e-12])).abs() < 1e-10);
    }

    #[test]
    fn pure_advection_exact() {
        let p = pure_advection();
        let e = exact(&p);
        assert!((e.value)(&[0.3, 0.0]).abs() < 1e-100);
        assert!(((e.value)(&[0.3, 2.0 / 3.0]) - 0.5).abs() < 1e-15);
        let mut g = [0.0; 2];
        (e.gradient)(&[0.0, 2.0 / 3.0], &mut g);
        assert!((g[1] - 125.0).abs() < 1e-12 && (g[1] - (p.source)(&[0.0, 2.0 / 3.0])).abs() == 0.0);
    }

    #[test]
    fn rotating_inflow_edges() {
        assert_eq!(rotating_inflow(1.0 / 3.0), 0.0);
        assert_eq!(rotating_inflow(0.5), 1.0);
        assert_eq!(rotating_inflow(2.0 / 3.0), 1.0);
        assert_eq!(rotating_inflow(0.7), 0.0);
    }

    #[test]
    fn degree_expansion() {
        assert_eq!(TestId::PureAdvection.expand_degrees(&[5]).unwrap(), vec![2, 5]);
        assert_eq!(TestId::InternalLayers.expand_degrees(&[4]).unwrap(), vec![4, 4]);
        assert_eq!(TestId::BoundaryLayer.expand_degrees(&[]).unwrap(), vec![5]);
        assert!(TestId::BoundaryLayer.expand_degrees(&[2, 3]).is_err());
        assert_eq!(TestId::ParabolicLayers.default_levels(&[5, 5]), 5);
        assert_eq!(TestId::ParabolicLayers.default_levels(&[3, 3]), 4);
    }
}
