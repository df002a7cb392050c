//! The oscillator ground-state amplitude with a current: V picks up a
//! -C²π e^{2x²}/2 term that eventually dominates the x²/2 confinement.

use lambrecon::{reconstruct, Grid1D, Prefactor, ReconstructionConfig};

fn main() -> lambrecon::Result<()> {
    let g = Prefactor::gaussian();
    let grid = Grid1D::new(-2.5, 2.5, 11)?;
    print!("{:>6}", "x");
    let currents = [0.0, 0.04, 0.1, 0.3];
    for c in currents {
        print!("{:>14}", format!("V (C={c})"));
    }
    println!();
    let states = currents
        .iter()
        .map(|&c| reconstruct(&g, &ReconstructionConfig::new(&g, c)?.with_grid(grid.clone())))
        .collect::<lambrecon::Result<Vec<_>>>()?;
    for i in 0..grid.len() {
        print!("{:>6.2}", grid.x(i));
        for st in &states {
            print!("{:>14.5}", st.v[i]);
        }
        println!();
    }
    Ok(())
}
