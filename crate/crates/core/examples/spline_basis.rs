//! B-spline basics: basis values, derivatives, Greville points and knot
//! insertion.

use mqstab::spline::SplineSpace1D;

fn main() -> mqstab::Result<()> {
    let coarse = SplineSpace1D::uniform(0.0, 1.0, 4, 3)?;
    let fine = SplineSpace1D::uniform(0.0, 1.0, 8, 3)?;
    println!("knots   {:?}", coarse.knots().values());
    println!("greville {:?}", coarse.greville_abscissae());

    let x = 0.3;
    let bv = coarse.eval_basis(x, 1)?;
    let first = bv.first_basis(coarse.degree());
    println!("nonzero basis at x = {x}: N_{first}..N_{}", first + coarse.degree());
    println!("  values      {:?}", bv.values[0]);
    println!("  derivatives {:?}", bv.values[1]);
    println!("  sum = {}", bv.values[0].iter().sum::<f64>());

    // a coarse spline expressed exactly in the fine basis
    let c: Vec<f64> = (0..coarse.dim()).map(|i| (i as f64).sin()).collect();
    let p = SplineSpace1D::prolongation_matrix(&coarse, &fine)?;
    let cf = p.matvec(&c);
    let mut worst = 0.0_f64;
    for i in 0..=100 {
        let t = i as f64 / 100.0;
        worst = worst.max((coarse.eval(&c, t, 0)? - fine.eval(&cf, t, 0)?).abs());
    }
    println!("prolongation {}x{}, max |s_H - P s_H| = {worst:.1e}", p.rows(), p.cols());
    Ok(())
}
