use std::time::Instant;

use crate::assembly::{Method, StabConfig};
use crate::error::{invalid, Result};
use crate::linalg::condition_number_2;
use crate::spline::TensorSpace;

use super::definitions::TestId;
use super::metrics::{error_norms, layer_indicators, rates};
use super::solve::{assemble_system, solve_assembled, DiscreteSolution};

/// Largest constrained system whose condition number is computed (dense SVD).
pub const CONDITION_LIMIT: usize = 6000;

/// One benchmark configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchmarkCase {
    pub test: TestId,
    pub degrees: Vec<usize>,
    pub elements: Vec<usize>,
    pub config: StabConfig,
}

impl BenchmarkCase {
    /// Default degrees, mesh, levels and `cb` of `test` for `method`.
    pub fn default_for(test: TestId, method: Method) -> Self {
        let degrees = test.default_degrees();
        Self {
            config: test.default_config(method, &degrees),
            elements: test.default_elements(),
            degrees,
            test,
        }
    }

    pub fn space(&self) -> Result<TensorSpace> {
        let d = self.test.n_dims();
        if self.degrees.len() != d || self.elements.len() != d {
            return invalid(format!(
                "test {} needs {d} degrees and {d} element counts",
                self.test.number()
            ));
        }
        TensorSpace::unit_uniform(&self.elements, &self.degrees)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchmarkReport {
    pub test: TestId,
    pub method: Method,
    pub degrees: Vec<usize>,
    pub elements: Vec<usize>,
    pub levels: usize,
    pub cb: f64,
    pub rel_l2: Option<f64>,
    pub rel_h1: Option<f64>,
    pub rel_h1_semi: Option<f64>,
    pub rate_l2: Option<f64>,
    pub rate_h1: Option<f64>,
    pub min: Option<f64>,
    pub diff: Option<f64>,
    pub cond: Option<f64>,
    pub dofs: usize,
    pub seconds: f64,
}

/// Runs one case. The condition number is computed when the constrained
/// system has at most `condition_limit` unknowns.
pub fn run_case(case: &BenchmarkCase, condition_limit: usize) -> Result<(BenchmarkReport, DiscreteSolution)> {
    let start = Instant::now();
    let space = case.space()?;
    let prob = case.test.problem_for(&case.degrees);
    let assembled = assemble_system(&prob, &space, &case.config)?;
    let sol = solve_assembled(&prob, &space, &case.config, &assembled)?;
    let cond = (sol.dofs <= condition_limit.min(CONDITION_LIMIT))
        .then(|| condition_number_2(&assembled.system.matrix.to_dense()));
    let errors = match &prob.exact {
        Some(exact) => Some(error_norms(&sol, exact, case.test.error_points(&case.degrees))?),
        None => None,
    };
    let indicators = if case.test.has_indicators() {
        Some(layer_indicators(&sol)?)
    } else {
        None
    };
    let report = BenchmarkReport {
        test: case.test,
        method: case.config.method,
        degrees: case.degrees.clone(),
        elements: case.elements.clone(),
        levels: case.config.levels,
        cb: case.config.cb,
        rel_l2: errors.map(|e| e.rel_l2),
        rel_h1: errors.map(|e| e.rel_h1),
        rel_h1_semi: errors.map(|e| e.rel_h1_semi),
        rate_l2: None,
        rate_h1: None,
        min: indicators.map(|i| i.0),
        diff: indicators.map(|i| i.1),
        cond,
        dofs: sol.dofs,
        seconds: start.elapsed().as_secs_f64(),
    };
    Ok((report, sol))
}

/// Runs `cases` in order and fills the rate columns from successive rows.
pub fn convergence_sweep(cases: &[BenchmarkCase]) -> Result<Vec<BenchmarkReport>> {
    let mut out = cases
        .iter()
        .map(|c| run_case(c, 0).map(|r| r.0))
        .collect::<Result<Vec<_>>>()?;
    fill_rates(&mut out);
    Ok(out)
}

/// Sets `rate_l2`/`rate_h1` from consecutive reports.
pub fn fill_rates(reports: &mut [BenchmarkReport]) {
    let l2: Vec<f64> = reports.iter().map(|r| r.rel_l2.unwrap_or(f64::NAN)).collect();
    let h1: Vec<f64> = reports.iter().map(|r| r.rel_h1.unwrap_or(f64::NAN)).collect();
    for ((r, a), b) in reports.iter_mut().zip(rates(&l2)).zip(rates(&h1)) {
        r.rate_l2 = a.filter(|v| v.is_finite());
        r.rate_h1 = b.filter(|v| v.is_finite());
    }
}

/// Condition number of one constrained system, or the reason it was skipped.
#[derive(Debug, Clone, PartialEq)]
pub struct ConditionEntry {
    pub method: Method,
    pub elements: Vec<usize>,
    pub dofs: usize,
    pub cond: Option<f64>,
    pub note: Option<String>,
}

pub fn condition_of(case: &BenchmarkCase) -> Result<ConditionEntry> {
    let space = case.space()?;
    let prob = case.test.problem_for(&case.degrees);
    let assembled = assemble_system(&prob, &space, &case.config)?;
    let dofs = assembled.system.dim();
    let (cond, note) = if dofs > CONDITION_LIMIT {
        (None, Some(format!("{dofs} unknowns exceed the dense limit {CONDITION_LIMIT}")))
    } else {
        (Some(condition_number_2(&assembled.system.matrix.to_dense())), None)
    };
    Ok(ConditionEntry {
        method: case.config.method,
        elements: case.elements.clone(),
        dofs,
        cond,
        note,
    })
}

/// `κ₂` per method and mesh, meshes outermost.
pub fn condition_sweep(
    test: TestId,
    degrees: &[usize],
    meshes: &[Vec<usize>],
    methods: &[Method],
) -> Result<Vec<ConditionEntry>> {
    let mut out = Vec::new();
    for mesh in meshes {
        for &m in methods {
            let case = BenchmarkCase {
                test,
                degrees: degrees.to_vec(),
                elements: mesh.clone(),
                config: test.default_config(m, degrees),
            };
            out.push(condition_of(&case)?);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn max_error(sol: &DiscreteSolution) -> (f64, f64) {
        let xs = super::super::metrics::uniform_points(0.0, 1.0, 2001);
        let exact = TestId::AdvectionReaction.problem().exact.unwrap();
        let mut worst = 0.0_f64;
        let mut under = 0.0_f64;
        for x in xs {
            let u = sol.eval(&[x]).unwrap();
            worst = worst.max((u - (exact.value)(&[x])).abs());
            if x < 1.0 / 3.0 {
                under = under.min(u);
            }
        }
        (worst, under)
    }

    #[test]
    fn advection_reaction_galerkin_undershoots_and_mq_damps() {
        let case = BenchmarkCase::default_for(TestId::AdvectionReaction, Method::Galerkin);
        let (report, gal) = run_case(&case, 0).unwrap();
        assert_eq!(report.dofs, 514);
        let (gal_err, gal_under) = max_error(&gal);
        assert!(gal_under < -3e-3, "{gal_under}");
        let case = BenchmarkCase::default_for(TestId::AdvectionReaction, Method::Mq);
        let (_, mq) = run_case(&case, 0).unwrap();
        let (mq_err, mq_under) = max_error(&mq);
        assert!(mq_err < 0.5 * gal_err && mq_under > gal_under, "{mq_err} {mq_under}");
    }

    #[test]
    fn condition_of_tiny_system() {
        let mut case = BenchmarkCase::default_for(TestId::BoundaryLayer, Method::Galerkin);
        case.degrees = vec![1];
        case.elements = vec![2];
        let e = condition_of(&case).unwrap();
        assert_eq!(e.dofs, 1);
        assert_eq!(e.cond, Some(1.0));
    }
}
