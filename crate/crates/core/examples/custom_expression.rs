//! User-supplied amplitudes: parse, differentiate, reconstruct, and the
//! rejection of an amplitude with a node.

use lambrecon::{eval_jet, parse, reconstruct, Domain, Geometry, Prefactor, ReconstructionConfig};

fn main() -> lambrecon::Result<()> {
    let e = parse("exp(-x^2/2) * (1 + 0.2*cos(3*x))")?;
    println!("parsed: {e}");
    let j = eval_jet(&e, 0.4)?;
    println!("R(0.4) = {:.6}, R' = {:.6}, R'' = {:.6}", j.value, j.d1, j.d2);

    let pref = Prefactor::from_expression(e, Domain::new(-3.0, 3.0), Geometry::Line1D, 0.5, 0.0)?;
    let st = reconstruct(&pref, &ReconstructionConfig::new(&pref, 0.1)?)?;
    let (vmin, vmax) = st.v.iter().fold((f64::MAX, f64::MIN), |(a, b), &v| (a.min(v), b.max(v)));
    println!("grid [{:.3}, {:.3}], V in [{vmin:.3}, {vmax:.3}]", st.grid.x_lo(), st.grid.x_hi());

    let nodal = Prefactor::from_expression(parse("sin(pi*x)")?, Domain::new(0.0, 2.0), Geometry::Line1D, 0.0, 0.5);
    println!("sin(pi*x) on (0, 2): {}", nodal.unwrap_err());

    for bad in ["cos(", "2x", "2^x"] {
        println!("{bad:>6}: {}", parse(bad).unwrap_err());
    }
    Ok(())
}
