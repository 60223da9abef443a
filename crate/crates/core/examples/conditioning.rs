//! Spectral condition numbers of the Galerkin and MQ systems for the 1D
//! boundary layer with p = 5.

use mqstab::assembly::Method;
use mqstab::benchmarks::{condition_sweep, TestId};

fn main() -> mqstab::Result<()> {
    let meshes: Vec<Vec<usize>> = [64, 128, 256, 512].iter().map(|&n| vec![n]).collect();
    let rows = condition_sweep(TestId::BoundaryLayer, &[5], &meshes, &[Method::Galerkin, Method::Mq])?;
    println!("{:>5} {:>6} {:>12}", "ne", "method", "cond");
    for r in rows {
        println!("{:>5} {:>6} {:>12.1}", r.elements[0], r.method.as_str(), r.cond.unwrap_or(f64::NAN));
    }
    Ok(())
}
