use std::f64::consts::{PI, SQRT_2};

use lambrecon::cli::{emit_curve, read_curve_csv, read_curve_json, Format, RunConfig};
use lambrecon::expr::{BinOp, Func};
use lambrecon::{
    check_current, cn_propagate, current_density, eval_jet, lamb_protocol, norm, parse, phase_at, phase_kick,
    potential_line, potential_radial, reconstruct, CurrentPath, Domain, Error, Expr, Geometry, Grid1D, Prefactor,
    PropagationConfig, ReconstructionConfig,
};
use num_complex::Complex64;

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

#[test]
fn parser_trees() {
    let x2 = Expr::binary(BinOp::Pow, Expr::Var, Expr::Num(2.0));
    let half = Expr::binary(BinOp::Div, x2, Expr::Num(2.0));
    assert_eq!(parse("x^2/2").unwrap(), half);
    let gauss = Expr::unary(Func::Exp, Expr::unary(Func::Neg, half));
    assert_eq!(parse("exp(-x^2/2)").unwrap(), gauss);
    assert_eq!(parse("cos(").unwrap_err().offset(), Some(4));
}

#[test]
fn jets() {
    let j = eval_jet(&parse("x^2/2").unwrap(), 1.3).unwrap();
    assert!(close(j.value, 0.845, 1e-15) && close(j.d1, 1.3, 1e-15) && j.d2 == 1.0);
    let j = eval_jet(&parse("exp(-x^2/2)").unwrap(), 0.0).unwrap();
    assert_eq!((j.value, j.d1, j.d2), (1.0, 0.0, -1.0));

    let e = parse("cos(pi*x/2)").unwrap();
    let f = |x: f64| (PI * x / 2.0).cos();
    let x = 0.4;
    let j = eval_jet(&e, x).unwrap();
    let h = 1e-5;
    assert!(close(j.d1, (f(x + h) - f(x - h)) / (2.0 * h), 1e-8));
    // a 3-point second difference at h = 1e-5 is rounding-dominated (~1e-6);
    // compare against the closed form instead
    assert!(close(j.d2, -PI * PI / 4.0 * f(x), 1e-14));
}

#[test]
fn family_values() {
    let free = Prefactor::free();
    for x in [7.3, 0.0] {
        let j = free.eval(x).unwrap();
        assert_eq!((j.value, j.d1, j.d2), (1.0, 0.0, 0.0));
    }
    free.check_nodeless(-100.0, 100.0, 10_001).unwrap();

    let g = Prefactor::gaussian();
    let j = g.eval(0.0).unwrap();
    assert!(close(j.value, 0.751_125_544_464_942_5, 1e-15) && j.d1 == 0.0);
    let j = g.eval(1.0).unwrap();
    assert!(close(j.value, PI.powf(-0.25) * (-0.5f64).exp(), 1e-15));
    assert!(close(j.d2 / j.value, 0.0, 1e-15));

    let w = Prefactor::well();
    let j = w.eval(0.0).unwrap();
    assert_eq!((j.value, j.d1), (1.0, 0.0));
    assert!(close(j.d2, -PI * PI / 4.0, 1e-15));
    assert!(close(w.eval(0.5).unwrap().value, SQRT_2 / 2.0, 1e-15));
    w.check_nodeless(-0.999, 0.999, 10_001).unwrap();

    let h = Prefactor::hydrogen();
    let j = h.eval(1.0).unwrap();
    let want = (-1.0f64).exp() / PI.sqrt();
    assert!(close(j.value, want, 1e-16) && close(j.d1, -want, 1e-16) && close(j.d2, want, 1e-16));
    h.check_nodeless(0.01, 20.0, 10_001).unwrap();
}

#[test]
fn unit_normalisations_by_simpson() {
    // ∫R² on the line and ∫4πr²R² on the half line, over ranges wide enough
    // that the tails are below 1e-15
    fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
        let h = (b - a) / n as f64;
        let inner: f64 = (1..n).map(|k| f(a + k as f64 * h) * if k % 2 == 1 { 4.0 } else { 2.0 }).sum();
        h / 3.0 * (f(a) + f(b) + inner)
    }
    let g = Prefactor::gaussian();
    let ng = simpson(|x| g.eval(x).unwrap().value.powi(2), -9.0, 9.0, 20_000);
    assert!(close(ng, 1.0, 1e-13), "{ng}");
    let h = Prefactor::hydrogen();
    // the domain is open at r = 0, where the integrand vanishes anyway
    let shell = |r: f64| if r == 0.0 { 0.0 } else { 4.0 * PI * r * r * h.eval(r).unwrap().value.powi(2) };
    let nh = simpson(shell, 0.0, 40.0, 40_000);
    assert!(close(nh, 1.0, 1e-12), "{nh}");
}

#[test]
fn expression_prefactors() {
    let e = parse("exp(-x^2/2) * pi^(-0.25)").unwrap();
    let p = Prefactor::from_expression(e, Domain::new(-6.0, 6.0), Geometry::Line1D, 0.5, 0.0).unwrap();
    let g = Prefactor::gaussian();
    for k in 0..=120 {
        let x = -5.9 + k as f64 * (11.8 / 120.0);
        let (a, b) = (p.eval(x).unwrap(), g.eval(x).unwrap());
        for (u, v) in [(a.value, b.value), (a.d1, b.d1), (a.d2, b.d2)] {
            assert!(close(u, v, 1e-15), "{x}: {u} vs {v}");
        }
    }

    let err = Prefactor::from_expression(parse("sin(pi*x)").unwrap(), Domain::new(0.0, 2.0), Geometry::Line1D, 0.0, 0.5)
        .unwrap_err();
    assert!(matches!(err, Error::Nodal { .. }), "{err}");

    let p = Prefactor::from_expression(parse("1/(1+x^2)").unwrap(), Domain::new(-5.0, 5.0), Geometry::Line1D, 0.0, 0.0)
        .unwrap();
    assert_eq!(p.eval(0.0).unwrap().value, 1.0);
}

#[test]
fn phase_values() {
    assert!(close(phase_at(&Prefactor::free(), 2.0, 0.0, 1.5, 1e-10).unwrap(), 3.0, 1e-14));
    let s = phase_at(&Prefactor::well(), 1.0, 0.0, 0.5, 1e-10).unwrap();
    assert!(close(s, 2.0 / PI, 1e-12), "{s}");
    // √π ∫₀¹ e^{s²} ds by 10⁶-panel Simpson
    let n = 1_000_000;
    let h = 1.0 / n as f64;
    let f = |s: f64| (s * s).exp();
    let inner: f64 = (1..n).map(|k| f(k as f64 * h) * if k % 2 == 1 { 4.0 } else { 2.0 }).sum();
    let oracle = 0.1 * PI.sqrt() * h / 3.0 * (f(0.0) + f(1.0) + inner);
    let s = phase_at(&Prefactor::gaussian(), 0.1, 0.0, 1.0, 1e-10).unwrap();
    assert!(((s - oracle) / oracle).abs() <= 1e-10, "{s} vs {oracle}");
    // closed form 0.1 (π/2) erfi(1), erfi(1) = 1.650425758797543…
    assert!(close(s, 0.1 * PI / 2.0 * 1.650_425_758_797_543, 1e-12), "{s}");
    for p in Prefactor::builtins() {
        let x0 = p.default_x0();
        assert_eq!(phase_at(&p, 0.0, x0, x0 + 0.5, 1e-10).unwrap(), 0.0);
    }
}

#[test]
fn potential_values() {
    let g = Prefactor::gaussian();
    assert!(close(potential_line(&g, 0.0, 0.5, 1.3).unwrap(), 0.845, 1e-14));
    assert!(close(potential_line(&g, 0.1, 0.5, 0.0).unwrap(), -0.01 * PI / 2.0, 1e-15));
    let w = Prefactor::well();
    assert!(close(potential_line(&w, 0.5, PI * PI / 8.0, 0.0).unwrap(), -0.125, 1e-15));
    let free = Prefactor::free();
    for c in [0.3, 1.0, 4.0] {
        for x in [-50.0, 0.0, 7.0] {
            assert_eq!(potential_line(&free, c, c * c / 2.0, x).unwrap(), 0.0);
        }
    }
    let h = Prefactor::hydrogen();
    assert!(close(potential_radial(&h, 0.0, -0.5, 2.0).unwrap(), -0.5, 1e-15));
    assert!(close(potential_radial(&h, 0.0, -0.5, 1.0).unwrap(), -1.0, 1e-15));
    let want = -1.0 - 0.01 * PI * PI * 4f64.exp() / 2.0;
    let v = potential_radial(&h, 0.1, -0.5, 1.0).unwrap();
    assert!(close(v, want, 1e-13) && close(v, -3.6943, 1e-4), "{v}");
}

#[test]
fn reconstructed_states() {
    let g = Prefactor::gaussian();
    let cfg = ReconstructionConfig::new(&g, 0.0).unwrap().with_clip(1e-5).with_grid(Grid1D::new(-4.0, 4.0, 1001).unwrap());
    let st = reconstruct(&g, &cfg).unwrap();
    for (x, (z, v)) in st.xs().iter().zip(st.psi.iter().zip(&st.v)) {
        assert_eq!(z.im, 0.0);
        assert!(close(*v, x * x / 2.0, 1e-13));
    }

    let free = Prefactor::free();
    let cfg = ReconstructionConfig::new(&free, 1.0)
        .unwrap()
        .with_energy(0.5)
        .with_grid(Grid1D::new(0.0, 2.0 * PI, 629).unwrap());
    let st = reconstruct(&free, &cfg).unwrap();
    for (x, z) in st.xs().iter().zip(&st.psi) {
        assert!(close(z.re, x.cos(), 1e-13) && close(z.im, x.sin(), 1e-13));
    }

    let w = Prefactor::well();
    let cfg = ReconstructionConfig::new(&w, 0.2).unwrap().with_grid(Grid1D::new(-0.95, 0.95, 2001).unwrap());
    let st = reconstruct(&w, &cfg).unwrap();
    assert!(st.s.windows(2).all(|p| p[1] > p[0]));
    assert!(st.v.iter().all(|&v| v <= 0.0));
    let n = st.len();
    for i in 0..n {
        assert!(close(st.v[i], st.v[n - 1 - i], 1e-10 * st.v[i].abs().max(1.0)));
    }
}

#[test]
fn currents() {
    let g = Prefactor::gaussian();
    let cfg = ReconstructionConfig::new(&g, 0.3).unwrap().with_grid(Grid1D::new(-3.0, 3.0, 4001).unwrap());
    let st = reconstruct(&g, &cfg).unwrap();
    assert!(current_density(&st, CurrentPath::Analytic).iter().all(|&j| close(j, 0.3, 1e-16)));
    let fd = current_density(&st, CurrentPath::FiniteDifference);
    assert_eq!(fd.len(), 4001 - 4);
    assert!(fd.iter().all(|&j| close(j, 0.3, 1e-6)));
    assert!(check_current(&st) <= 1e-6);

    // well C = 1 on the default clipped grid: the steep phase near the walls
    // needs n = 4001 before the 5-point current settles below 1e-5
    let w = Prefactor::well();
    let dev = |n| {
        let cfg = ReconstructionConfig::new(&w, 1.0).unwrap().with_grid(w.default_grid(1e-3, n).unwrap());
        check_current(&reconstruct(&w, &cfg).unwrap())
    };
    assert!(dev(4001) <= 1e-5, "{}", dev(4001));

    for p in Prefactor::builtins() {
        let st = reconstruct(&p, &ReconstructionConfig::new(&p, 0.0).unwrap()).unwrap();
        assert!(current_density(&st, CurrentPath::Analytic).iter().all(|&j| j == 0.0));
        assert_eq!(check_current(&st), 0.0);
    }
}

#[test]
fn norms() {
    let free = Prefactor::free();
    let cfg = ReconstructionConfig::new(&free, 0.7).unwrap().with_grid(Grid1D::new(-3.0, 5.0, 101).unwrap());
    assert!(close(norm(&reconstruct(&free, &cfg).unwrap()), 8.0, 1e-13));
}

#[test]
fn propagation_references() {
    let grid = Grid1D::new(0.0, 1.0, 1001).unwrap();
    let mode: Vec<Complex64> = grid.points().iter().map(|&x| Complex64::new((PI * x).sin(), 0.0)).collect();
    let zero = vec![0.0; grid.len()];
    let (out, rep) = cn_propagate(&mode, &zero, &grid, &PropagationConfig::new(1e-4, 0, 0.0)).unwrap();
    assert_eq!(out, mode);
    assert_eq!(rep.fidelity_t, vec![1.0]);

    let (_, rep) = cn_propagate(&mode, &zero, &grid, &PropagationConfig::new(1e-4, 5000, PI * PI / 2.0)).unwrap();
    assert!(rep.min_fidelity() >= 0.9999);
    assert!(rep.phase_err_t.iter().all(|p| p.abs() <= 5e-3));

    let g = Prefactor::gaussian();
    let cfg = ReconstructionConfig::new(&g, 0.0).unwrap().with_clip(1e-14).with_grid(Grid1D::new(-8.0, 8.0, 2049).unwrap());
    let st = reconstruct(&g, &cfg).unwrap();
    let (_, rep) = cn_propagate(&st.psi, &st.v, &st.grid, &PropagationConfig::new(1e-3, 1000, 0.5)).unwrap();
    assert!(rep.min_fidelity() >= 0.9999, "{}", rep.min_fidelity());
    assert!(rep.warnings.is_empty(), "{:?}", rep.warnings);
}

#[test]
fn kick_references() {
    let ones = vec![Complex64::new(1.0, 0.0); 5];
    let out = phase_kick(&ones, &[PI / 2.0; 5]).unwrap();
    assert!(out.iter().all(|z| close(z.re, 0.0, 1e-16) && z.im == 1.0));
    assert_eq!(phase_kick(&ones, &[0.0; 5]).unwrap(), ones);
    assert!(phase_kick(&ones, &[0.0; 4]).is_err());

    let g = Prefactor::gaussian();
    let cfg = ReconstructionConfig::new(&g, 0.0).unwrap().with_clip(1e-14).with_grid(Grid1D::new(-8.0, 8.0, 1601).unwrap());
    let rep = lamb_protocol(&g, &cfg, &PropagationConfig::new(1e-3, 500, 0.5)).unwrap();
    assert!(rep.kick_is_identity && rep.kick_mismatch == 0.0);
    assert_eq!(rep.prepared, rep.kicked);
    assert!(rep.prepared.unwrap().min_fidelity() >= 0.9999);

    let h = Prefactor::hydrogen();
    let rep = lamb_protocol(&h, &ReconstructionConfig::new(&h, 0.1).unwrap(), &PropagationConfig::new(1e-3, 10, -0.5))
        .unwrap();
    assert!(rep.prepared.is_none() && rep.kicked.is_none() && !rep.warnings.is_empty());
    assert!(rep.kick_mismatch <= 1e-15);
}

#[test]
fn curve_files() {
    let dir = tempfile::tempdir().unwrap();
    let meta = RunConfig::default();

    let g = Prefactor::gaussian();
    let st = reconstruct(&g, &ReconstructionConfig::new(&g, 0.0).unwrap()).unwrap();
    let path = dir.path().join("g.csv");
    emit_curve(&st, Format::Csv, &path, &meta).unwrap();
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("x,R,S,V,re_psi,im_psi,rho\n") && !text.contains('\r'));
    assert_eq!(text.lines().count(), st.len() + 1);
    let csv = read_curve_csv(&path).unwrap();
    for (x, v) in csv.x.iter().zip(&csv.v) {
        assert!(close(*v, x * x / 2.0, 1e-13));
    }
    // 17 significant digits are enough to round-trip every double
    assert_eq!(csv.v, st.v);
    assert_eq!(csv.x, st.xs());

    let free = Prefactor::free();
    let st = reconstruct(&free, &ReconstructionConfig::new(&free, 1.0).unwrap()).unwrap();
    let path = dir.path().join("free.json");
    let meta = RunConfig { c: Some(1.0), family: Some(lambrecon::cli::Family::Free), ..Default::default() };
    emit_curve(&st, Format::Json, &path, &meta).unwrap();
    let back = read_curve_json(&path).unwrap();
    assert_eq!(back.meta, meta);
    assert_eq!(back.data.re_psi, st.real_part());
    assert_eq!(back.data.im_psi, st.imag_part());
    assert_eq!(back.data.s, st.s);
    assert_eq!(back.data.rho, st.rho);
    for (x, (re, im)) in back.data.x.iter().zip(back.data.re_psi.iter().zip(&back.data.im_psi)) {
        assert!(close(*re, x.cos(), 1e-13) && close(*im, x.sin(), 1e-13));
    }

    let missing = dir.path().join("no/such/dir/out.csv");
    let err = emit_curve(&st, Format::Csv, &missing, &RunConfig::default()).unwrap_err();
    assert!(err.to_string().contains("no/such/dir"), "{err}");
}
