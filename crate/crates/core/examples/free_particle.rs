//! A constant amplitude carrying current C is a plane wave in zero potential.

use lambrecon::{reconstruct, Prefactor, ReconstructionConfig};

fn main() -> lambrecon::Result<()> {
    let free = Prefactor::free();
    for c in [0.5, 1.0, 2.0] {
        // default energy for this family is C²/2
        let cfg = ReconstructionConfig::new(&free, c)?;
        let st = reconstruct(&free, &cfg)?;
        let v_max = st.v.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let psi_err = st
            .xs()
            .iter()
            .zip(&st.psi)
            .map(|(&x, z)| (z.re - (c * x).cos()).abs().max((z.im - (c * x).sin()).abs()))
            .fold(0.0, f64::max);
        println!("C = {c}: E = {:.3}, max|V| = {v_max:.1e}, max|ψ - e^(iCx)| = {psi_err:.1e}", cfg.energy);
    }
    Ok(())
}
