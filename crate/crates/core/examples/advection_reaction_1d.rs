//! 1D advection-reaction with a discontinuous source, p = 3 on 512
//! elements: pointwise error of each method.

use mqstab::assembly::Method;
use mqstab::benchmarks::{run_case, uniform_points, BenchmarkCase, TestId};

fn main() -> mqstab::Result<()> {
    let exact = TestId::AdvectionReaction.problem().exact.expect("exact solution");
    let xs = uniform_points(0.0, 1.0, 2001);
    println!("{:>9} {:>10} {:>11} {:>10}", "method", "rel L2", "max error", "min u_h");
    for method in Method::ALL {
        let case = BenchmarkCase::default_for(TestId::AdvectionReaction, method);
        let (r, sol) = run_case(&case, 0)?;
        let (mut worst, mut low) = (0.0_f64, f64::INFINITY);
        for &x in &xs {
            let u = sol.eval(&[x])?;
            worst = worst.max((u - (exact.value)(&[x])).abs());
            low = low.min(u);
        }
        println!("{method:>9} {:>10.3e} {worst:>11.3e} {low:>10.2e}", r.rel_l2.unwrap_or(f64::NAN));
    }
    Ok(())
}
