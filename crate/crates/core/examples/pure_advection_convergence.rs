//! Convergence of Galerkin and MQ on the 2D pure advection problem with a
//! discontinuous source, refining the y direction only.
//!
//! ```text
//! cargo run --release --example pure_advection_convergence [max_ne]
//! ```

use mqstab::assembly::Method;
use mqstab::benchmarks::{convergence_sweep, BenchmarkCase, TestId};

fn fmt(v: Option<f64>) -> String {
    v.map_or_else(|| "-".into(), |x| format!("{x:.4e}"))
}

fn main() -> mqstab::Result<()> {
    let max_ne: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(512);
    let meshes: Vec<usize> = [64, 128, 256, 512].into_iter().filter(|&n| n <= max_ne).collect();

    for method in [Method::Galerkin, Method::Mq] {
        let cases: Vec<BenchmarkCase> = meshes
            .iter()
            .map(|&n| {
                let mut c = BenchmarkCase::default_for(TestId::PureAdvection, method);
                c.elements = vec![8, n];
                c
            })
            .collect();
        let reports = convergence_sweep(&cases)?;
        println!("{method} (p = (2,3), L = {}, cb = {})", cases[0].config.levels, cases[0].config.cb);
        println!("{:>6} {:>10} {:>8} {:>10} {:>8} {:>8}", "ne2", "L2", "rate", "H1", "rate", "sec");
        for r in &reports {
            println!(
                "{:>6} {:>10} {:>8} {:>10} {:>8} {:>8.1}",
                r.elements[1],
                fmt(r.rel_l2),
                fmt(r.rate_l2),
                fmt(r.rel_h1),
                fmt(r.rate_h1),
                r.seconds
            );
        }
        println!();
    }
    Ok(())
}
