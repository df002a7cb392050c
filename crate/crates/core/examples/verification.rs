//! Independent checks on reconstructed states, and the detector that tells
//! a reconstructible ψ from one that is not.

use lambrecon::{
    check_recon_condition, reconstruct, residual_split, verify, Geometry, Grid1D, Prefactor, ReconstructionConfig,
    ResidualMode, Tolerances,
};

fn main() -> lambrecon::Result<()> {
    for p in Prefactor::builtins() {
        let st = reconstruct(&p, &ReconstructionConfig::new(&p, 0.5)?)?;
        let rep = verify(&st, ResidualMode::Analytic, Tolerances::default())?;
        println!(
            "{:>9}: residual {:.1e}/{:.1e}, current dev {:.1e}, norm {:.5}, pass = {}",
            p.name(),
            rep.residual_real_max,
            rep.residual_imag_max,
            rep.current_dev_max,
            rep.norm,
            rep.passed()
        );
    }

    // finite differences converge at second order
    let g = Prefactor::gaussian();
    let mut prev = None;
    for n in [201, 401, 801, 1601] {
        let cfg = ReconstructionConfig::new(&g, 0.1)?.with_grid(Grid1D::new(-2.0, 2.0, n)?);
        let (re, _) = residual_split(&reconstruct(&g, &cfg)?, 0.5, ResidualMode::FiniteDifference)?;
        match prev {
            Some(p) => println!("n = {n:>4}: FD residual {re:.3e}, ratio {:.3}", p / re),
            None => println!("n = {n:>4}: FD residual {re:.3e}"),
        }
        prev = Some(re);
    }

    let grid = Grid1D::new(-3.0, 3.0, 6001)?;
    let a: Vec<f64> = grid.points().iter().map(|x| (-x * x / 2.0).exp()).collect();
    let b: Vec<f64> = grid.points().iter().map(|x| x * (-x * x / 2.0).exp()).collect();
    let v = check_recon_condition(&a, &b, &grid, Geometry::Line1D)?;
    println!("(e^(-x²/2), x e^(-x²/2)) violates a''b = ab'' by {v:.3}");
    Ok(())
}
