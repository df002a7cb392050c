//! The phase S(x) = C∫ds/R² by adaptive Gauss–Kronrod, against closed forms.

use lambrecon::quadrature::integrate;
use lambrecon::{phase_at, Prefactor};

fn main() -> lambrecon::Result<()> {
    let well = Prefactor::well();
    // ∫₀ˣ sec²(πs/2) ds = (2/π) tan(πx/2)
    for x in [0.3, 0.9, 0.99] {
        let s = phase_at(&well, 1.0, 0.0, x, 1e-12)?;
        let exact = 2.0 / std::f64::consts::PI * (std::f64::consts::FRAC_PI_2 * x).tan();
        println!("well S({x}) = {s:.15}, closed form {exact:.15}");
    }
    let g = Prefactor::gaussian();
    println!("gaussian S(1) with C = 0.1: {:.15}", phase_at(&g, 0.1, 0.0, 1.0, 1e-12)?);
    println!("∫₀^π sin = {:.15}", integrate(f64::sin, 0.0, std::f64::consts::PI, 1e-12)?);
    Ok(())
}
