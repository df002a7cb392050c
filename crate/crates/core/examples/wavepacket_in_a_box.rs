//! Crank–Nicolson on its own: a box mode stays put, a displaced packet
//! bounces, and the norm is conserved either way.

use std::f64::consts::PI;

use lambrecon::{cn_propagate, Grid1D, PropagationConfig};
use num_complex::Complex64;

fn main() -> lambrecon::Result<()> {
    let grid = Grid1D::new(0.0, 1.0, 1001)?;
    let v = vec![0.0; grid.len()];

    let mode: Vec<Complex64> = grid.points().iter().map(|&x| Complex64::new((PI * x).sin(), 0.0)).collect();
    let (_, rep) = cn_propagate(&mode, &v, &grid, &PropagationConfig::new(1e-4, 10_000, PI * PI / 2.0))?;
    println!(
        "box mode: fidelity {:.12}, norm drift {:.1e}, fitted E {:.6} (π²/2 = {:.6})",
        rep.min_fidelity(),
        rep.norm_drift(),
        rep.fitted_energy.unwrap(),
        PI * PI / 2.0
    );

    let packet: Vec<Complex64> = grid
        .points()
        .iter()
        .map(|&x| Complex64::from_polar((-(x - 0.3f64).powi(2) / 0.005).exp(), 40.0 * x))
        .collect();
    let (_, rep) = cn_propagate(&packet, &v, &grid, &PropagationConfig::new(1e-5, 2000, 0.0))?;
    println!("packet: final fidelity {:.4}, norm drift {:.1e}", rep.final_fidelity(), rep.norm_drift());
    Ok(())
}
