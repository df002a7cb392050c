//! The infinite-well ground state with a current: the reconstructed potential
//! -C²/(2cos⁴(πx/2)) is attractive everywhere yet the state carries flux.

use lambrecon::{current_density, reconstruct, CurrentPath, Prefactor, ReconstructionConfig};

fn main() -> lambrecon::Result<()> {
    let well = Prefactor::well();
    for c in [0.0, 0.25, 0.5] {
        let cfg = ReconstructionConfig::new(&well, c)?;
        let st = reconstruct(&well, &cfg)?;
        let mid = st.len() / 2;
        let j = current_density(&st, CurrentPath::Analytic);
        println!(
            "C = {c}: grid [{:.5}, {:.5}], V(0) = {:.4}, V(edge) = {:.3e}, S(edge) = {:.3}, j(0) = {}",
            st.grid.x_lo(),
            st.grid.x_hi(),
            st.v[mid],
            st.v[st.len() - 1],
            st.s[st.len() - 1],
            j[mid]
        );
    }
    Ok(())
}
