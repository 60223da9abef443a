//! Rotating flow with a discontinuous inflow profile, p = 3 on 64x64. The
//! exact solution is constant on circles about the origin, so values along
//! the diagonal should reproduce the inflow profile at the same radius.

use mqstab::assembly::Method;
use mqstab::benchmarks::{rotating_inflow, run_case, uniform_points, BenchmarkCase, TestId};

fn main() -> mqstab::Result<()> {
    let radii = uniform_points(0.0, 1.0, 11);
    println!("{:>9}  u at radius 0.0, 0.1, .., 1.0 along x = y", "method");
    let exact: Vec<f64> = radii.iter().map(|&r| rotating_inflow(r)).collect();
    println!("{:>9}  {}", "exact", fmt(&exact));
    for method in [Method::Galerkin, Method::Supg, Method::Mq] {
        let case = BenchmarkCase::default_for(TestId::RotatingFlow, method);
        let (_, sol) = run_case(&case, 0)?;
        let u = radii
            .iter()
            .map(|&r| sol.eval(&[r / 2f64.sqrt(), r / 2f64.sqrt()]))
            .collect::<mqstab::Result<Vec<_>>>()?;
        println!("{method:>9}  {}", fmt(&u));
    }
    Ok(())
}

fn fmt(v: &[f64]) -> String {
    v.iter().map(|x| format!("{x:6.3}")).collect::<Vec<_>>().join(" ")
}
