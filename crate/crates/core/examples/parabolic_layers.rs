//! Parabolic layers: over- and undershoots of Galerkin, SUPG and MQ on a
//! 64x64 mesh with p = 3. Writes the MQ solution to `parabolic_mq.csv` when
//! a directory is given.

use std::path::PathBuf;

use mqstab::assembly::Method;
use mqstab::benchmarks::{run_case, sample_on_grid, uniform_points, BenchmarkCase, TestId};

fn main() -> mqstab::Result<()> {
    let out: Option<PathBuf> = std::env::args().nth(1).map(PathBuf::from);
    let g = uniform_points(0.0, 1.0, 129);
    for method in [Method::Galerkin, Method::Supg, Method::Mq] {
        let case = BenchmarkCase::default_for(TestId::ParabolicLayers, method);
        let (r, sol) = run_case(&case, 0)?;
        let u = sample_on_grid(&sol.space, &sol.coefficients, &[g.clone(), g.clone()])?;
        let lo = u.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = u.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        println!("{method:>9}: min u_h = {lo:.4}, max u_h = {hi:.4} ({:.1} s)", r.seconds);
        if let (Some(dir), Method::Mq) = (&out, method) {
            let mut text = String::from("x,y,u\n");
            for (i, x) in g.iter().enumerate() {
                for (j, y) in g.iter().enumerate() {
                    text.push_str(&format!("{x},{y},{}\n", u[i * g.len() + j]));
                }
            }
            std::fs::write(dir.join("parabolic_mq.csv"), text).expect("write csv");
        }
    }
    Ok(())
}
