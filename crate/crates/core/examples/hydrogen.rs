//! Radial reconstruction from the hydrogen 1s amplitude, with the phase
//! anchored at r = 1.

use lambrecon::{norm, potential_radial, reconstruct, Grid1D, Prefactor, ReconstructionConfig};

fn main() -> lambrecon::Result<()> {
    let h = Prefactor::hydrogen();
    let c0 = reconstruct(&h, &ReconstructionConfig::new(&h, 0.0)?)?;
    let coulomb_err = c0
        .xs()
        .iter()
        .zip(&c0.v)
        .map(|(r, v)| (v + 1.0 / r).abs())
        .fold(0.0, f64::max);
    println!("C = 0: max |V + 1/r| = {coulomb_err:.1e} on [{}, {}]", c0.grid.x_lo(), c0.grid.x_hi());

    for r in [0.5, 1.0, 2.0, 3.0] {
        println!("C = 0.1: V({r}) = {:.6}", potential_radial(&h, 0.1, -0.5, r)?);
    }

    // the 4πr² ρ norm needs a wide grid and a low clip to catch the tail
    let cfg = ReconstructionConfig::new(&h, 0.1)?
        .with_clip(1e-7)
        .with_grid(Grid1D::new(0.02, 15.0, 8001)?);
    println!("norm on [0.02, 15]: {:.6}", norm(&reconstruct(&h, &cfg)?));
    Ok(())
}
