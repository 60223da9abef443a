//! Internal layers on a 64x64 mesh: layer indicators for SUPG, streamline
//! MQ and isotropic MQ at p = 2..5.
//!
//! `min` is the undershoot below zero in 0.4 <= x <= 0.6, `diff` the spread
//! of u_h over x >= 0.8.

use mqstab::assembly::{Method, StabConfig};
use mqstab::benchmarks::{run_case, BenchmarkCase, TestId};

fn main() -> mqstab::Result<()> {
    let configs = [
        ("supg", StabConfig::new(Method::Supg, 0, 0.0)),
        ("mq cb=0.01", StabConfig::new(Method::Mq, 5, 0.01)),
        ("mq-iso cb=0.05", StabConfig::new(Method::MqIsotropic, 5, 0.05)),
    ];
    println!("{:>15} {:>2} {:>8} {:>8} {:>7}", "method", "p", "min", "diff", "sec");
    for p in 2..=5 {
        for (name, cfg) in &configs {
            let case = BenchmarkCase {
                test: TestId::InternalLayers,
                degrees: vec![p, p],
                elements: vec![64, 64],
                config: cfg.clone(),
            };
            let (r, _) = run_case(&case, 0)?;
            println!(
                "{name:>15} {p:>2} {:>8.4} {:>8.4} {:>7.1}",
                r.min.unwrap_or(f64::NAN),
                r.diff.unwrap_or(f64::NAN),
                r.seconds
            );
        }
    }
    Ok(())
}
