//! 1D boundary layer with eps = 1e-5, p = 5 on 512 elements: spurious
//! oscillations away from the layer shrink as levels are added.

use mqstab::assembly::{Method, StabConfig};
use mqstab::benchmarks::{oscillation_amplitude, run_case, BenchmarkCase, TestId};

fn main() -> mqstab::Result<()> {
    let mut case = BenchmarkCase::default_for(TestId::BoundaryLayer, Method::Galerkin);
    let (_, gal) = run_case(&case, 0)?;
    println!("galerkin     max |u_h - x| on [0, 0.9] = {:.5}", oscillation_amplitude(&gal, 0.9, 2000)?);
    for l in 1..=5 {
        case.config = StabConfig::new(Method::Mq, l, 0.1);
        let (_, sol) = run_case(&case, 0)?;
        println!("mq L = {l}     max |u_h - x| on [0, 0.9] = {:.5}", oscillation_amplitude(&sol, 0.9, 2000)?);
    }
    Ok(())
}
