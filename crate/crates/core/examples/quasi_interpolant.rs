//! Mesh hierarchy, level weights and the fluctuation operator on a 2D space
//! whose x direction runs out of coarsenings.

use mqstab::hierarchy::build_hierarchy;
use mqstab::quasi_interp::FluctuationOperator;
use mqstab::spline::TensorSpace;

fn main() -> mqstab::Result<()> {
    let fine = TensorSpace::unit_uniform(&[8, 256], &[2, 3])?;
    let hier = build_hierarchy(&fine, 4)?;
    println!("fine: {:?} elements, {} dofs", fine.n_elements(), fine.dim());
    for (k, lvl) in hier.levels().iter().enumerate() {
        let ne: Vec<usize> = lvl.spaces.iter().map(|s| s.n_elements()).collect();
        println!("level {}: elements {ne:?}, H = {:.5}, c_k = {}", k + 1, lvl.max_size(), lvl.weight);
    }

    let op = FluctuationOperator::new(&hier)?;
    let ones = vec![1.0; fine.dim()];
    let x = fine.coordinate_coefficients(0);
    let y = fine.coordinate_coefficients(1);
    // a function with fine-scale content
    let osc: Vec<f64> = y.iter().map(|v| (40.0 * v).sin()).collect();
    let max = |v: Vec<f64>| v.iter().fold(0.0_f64, |m, a| m.max(a.abs()));
    for k in 1..=op.n_levels() {
        println!(
            "level {k}: |F 1| = {:.1e}  |F x| = {:.1e}  |F y| = {:.1e}  |F sin(40y)| = {:.3}",
            max(op.apply(k, &ones)?),
            max(op.apply(k, &x)?),
            max(op.apply(k, &y)?),
            max(op.apply(k, &osc)?)
        );
    }
    Ok(())
}
