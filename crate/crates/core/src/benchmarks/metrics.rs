use crate::assembly::{ExactSolution, Integrator};
use crate::error::{invalid, Result};
use crate::spline::{for_each_multi, TensorSpace};

use super::solve::DiscreteSolution;

/// Relative errors of a discrete solution against an exact one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorNorms {
    pub rel_l2: f64,
    /// Full `H¹` norm (value and gradient).
    pub rel_h1: f64,
    /// Gradient seminorm only.
    pub rel_h1_semi: f64,
}

fn ratio(num: f64, den: f64) -> f64 {
    if den > 0.0 {
        (num / den).sqrt()
    } else if num == 0.0 {
        0.0
    } else {
        f64::INFINITY
    }
}

/// Relative `L²` and `H¹` errors by Gauss quadrature with `points` points
/// per direction and element.
pub fn error_norms(sol: &DiscreteSolution, exact: &ExactSolution, points: usize) -> Result<ErrorNorms> {
    let space = &sol.space;
    let d = space.n_dims();
    let integ = Integrator::new(space, points, 1)?;
    let (mut e0, mut e1, mut u0, mut u1) = (0.0, 0.0, 0.0, 0.0);
    let mut g = vec![0.0; d];
    let mut gh = vec![0.0; d];
    integ.for_each_element(|el| {
        for qi in 0..el.nq {
            let x = el.point(qi);
            let w = el.w[qi];
            let mut uh = 0.0;
            gh.iter_mut().for_each(|v| *v = 0.0);
            for (l, &dof) in el.dofs.iter().enumerate() {
                let c = sol.coefficients[dof];
                uh += c * el.values(qi)[l];
                for (k, gk) in gh.iter_mut().enumerate() {
                    *gk += c * el.gradient(qi, l)[k];
                }
            }
            let u = (exact.value)(x);
            (exact.gradient)(x, &mut g);
            e0 += w * (uh - u).powi(2);
            u0 += w * u * u;
            for k in 0..d {
                e1 += w * (gh[k] - g[k]).powi(2);
                u1 += w * g[k] * g[k];
            }
        }
        Ok(())
    })?;
    Ok(ErrorNorms {
        rel_l2: ratio(e0, u0),
        rel_h1: ratio(e0 + e1, u0 + u1),
        rel_h1_semi: ratio(e1, u1),
    })
}

/// Values of the solution on the tensor grid `coords[0] × coords[1] × …`,
/// last direction fastest.
pub fn sample_on_grid(space: &TensorSpace, coeffs: &[f64], coords: &[Vec<f64>]) -> Result<Vec<f64>> {
    let d = space.n_dims();
    if coords.len() != d {
        return invalid(format!("expected {d} coordinate lists, got {}", coords.len()));
    }
    // per direction: first basis index and values at each coordinate
    let mut tables = Vec::with_capacity(d);
    for (s, xs) in space.directions().iter().zip(coords) {
        let mut t = Vec::with_capacity(xs.len());
        for &x in xs {
            let bv = s.eval_basis(x, 0)?;
            t.push((bv.first_basis(s.degree()), bv.values[0].clone()));
        }
        tables.push(t);
    }
    let counts: Vec<usize> = coords.iter().map(Vec::len).collect();
    let local: Vec<usize> = space.degrees().iter().map(|p| p + 1).collect();
    let mut out = Vec::with_capacity(counts.iter().product());
    let mut multi = vec![0; d];
    for_each_multi(&counts, |i| {
        let mut v = 0.0;
        for_each_multi(&local, |a| {
            let mut w = 1.0;
            for k in 0..d {
                let (first, vals) = &tables[k][i[k]];
                multi[k] = first + a[k];
                w *= vals[a[k]];
            }
            v += w * coeffs[space.flat_index(&multi)];
        });
        out.push(v);
    });
    Ok(out)
}

/// `m` equispaced points `a + (b − a)·i/(m − 1)`.
pub fn uniform_points(a: f64, b: f64, m: usize) -> Vec<f64> {
    if m == 1 {
        return vec![a];
    }
    (0..m)
        .map(|i| if i + 1 == m { b } else { a + (b - a) * (i as f64 / (m - 1) as f64) })
        .collect()
}

/// Sampling grid size for the layer indicators.
pub const INDICATOR_GRID: usize = 256;

const REGION_SLACK: f64 = 1e-12;

/// Layer indicators on the `m × m` grid of the unit square:
/// `min = −min_{0.4 ≤ x ≤ 0.6} u_h` and `diff = max − min` of `u_h` over
/// `x ≥ 0.8`, all `y`.
pub fn layer_indicators_on(sol: &DiscreteSolution, m: usize) -> Result<(f64, f64)> {
    if sol.space.n_dims() != 2 {
        return invalid("layer indicators are defined for 2D solutions");
    }
    let g = uniform_points(0.0, 1.0, m);
    let u = sample_on_grid(&sol.space, &sol.coefficients, &[g.clone(), g.clone()])?;
    let mut low = f64::INFINITY;
    let (mut hi, mut lo) = (f64::NEG_INFINITY, f64::INFINITY);
    for (i, &x) in g.iter().enumerate() {
        let row = &u[i * m..(i + 1) * m];
        if (0.4 - REGION_SLACK..=0.6 + REGION_SLACK).contains(&x) {
            low = row.iter().copied().fold(low, f64::min);
        }
        if x >= 0.8 - REGION_SLACK {
            hi = row.iter().copied().fold(hi, f64::max);
            lo = row.iter().copied().fold(lo, f64::min);
        }
    }
    Ok((-low, hi - lo))
}

pub fn layer_indicators(sol: &DiscreteSolution) -> Result<(f64, f64)> {
    layer_indicators_on(sol, INDICATOR_GRID)
}

/// `max_{x ∈ [0, x_max]} |u_h(x) − x|` on `samples` equispaced points, for
/// the 1D boundary-layer test.
pub fn oscillation_amplitude(sol: &DiscreteSolution, x_max: f64, samples: usize) -> Result<f64> {
    let xs = uniform_points(0.0, x_max, samples);
    let u = sample_on_grid(&sol.space, &sol.coefficients, std::slice::from_ref(&xs))?;
    Ok(xs.iter().zip(&u).fold(0.0, |m, (x, v)| m.max((v - x).abs())))
}

/// Convergence rates `log2(e_{i−1}/e_i)`; the first entry has none.
pub fn rates(errors: &[f64]) -> Vec<Option<f64>> {
    let mut out = vec![None; errors.len()];
    for i in 1..errors.len() {
        out[i] = Some((errors[i - 1] / errors[i]).log2());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::assembly::{scalar, vector, StabConfig};

    fn solution(space: TensorSpace, coefficients: Vec<f64>) -> DiscreteSolution {
        DiscreteSolution {
            dofs: space.dim(),
            space,
            coefficients,
            config: StabConfig::galerkin(),
            problem: "t".into(),
            residual: 0.0,
        }
    }

    #[test]
    fn errors_of_exact_and_zero() {
        let space = TensorSpace::unit_uniform(&[4, 3], &[2, 2]).unwrap();
        let cx = space.coordinate_coefficients(0);
        let exact = ExactSolution {
            value: scalar(|x| x[0]),
            gradient: vector(|_, g| {
                g[0] = 1.0;
                g[1] = 0.0;
            }),
        };
        let e = error_norms(&solution(space.clone(), cx), &exact, 4).unwrap();
        assert!(e.rel_l2 < 1e-14 && e.rel_h1 < 1e-14 && e.rel_h1_semi < 1e-14);
        let z = error_norms(&solution(space.clone(), vec![0.0; space.dim()]), &exact, 4).unwrap();
        assert!((z.rel_l2 - 1.0).abs() < 1e-14 && (z.rel_h1 - 1.0).abs() < 1e-14);
    }

    #[test]
    fn indicators_of_simple_fields() {
        let space = TensorSpace::unit_uniform(&[4, 4], &[2, 2]).unwrap();
        let zero = solution(space.clone(), vec![0.0; space.dim()]);
        assert_eq!(layer_indicators(&zero).unwrap(), (0.0, 0.0));
        let x = solution(space.clone(), space.coordinate_coefficients(0));
        let (min, diff) = layer_indicators(&x).unwrap();
        // 0.4 = 102/255 and 0.8 = 204/255 are grid points
        assert!((min + 0.4).abs() < 1e-12, "{min}");
        assert!((diff - 0.2).abs() < 1e-12, "{diff}");
    }

    #[test]
    fn rate_definition() {
        let r = rates(&[0.4, 0.1]);
        assert_eq!(r, vec![None, Some(2.0)]);
        assert_eq!(rates(&[0.3]), vec![None]);
    }

    #[test]
    fn grid_sampling_matches_pointwise() {
        let space = TensorSpace::unit_uniform(&[3, 5], &[3, 2]).unwrap();
        let c: Vec<f64> = (0..space.dim()).map(|i| (i as f64 * 0.37).sin()).collect();
        let gx = uniform_points(0.0, 1.0, 7);
        let gy = uniform_points(0.0, 1.0, 5);
        let u = sample_on_grid(&space, &c, &[gx.clone(), gy.clone()]).unwrap();
        for (i, x) in gx.iter().enumerate() {
            for (j, y) in gy.iter().enumerate() {
                assert!((u[i * 5 + j] - space.eval(&c, &[*x, *y]).unwrap()).abs() < 1e-14);
            }
        }
    }
}
