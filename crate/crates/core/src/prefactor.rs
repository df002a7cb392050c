//! Nodeless amplitudes `R` with exact first and second derivatives.
//!
//! Four closed-form families are built in: the plane wave (`R = 1`), the
//! oscillator ground state, the lowest box mode and the hydrogen 1s state.
//! Anything else comes in through [`Prefactor::from_expression`].

use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expr::{eval_jet, Expr};
use crate::grid::Grid1D;
use crate::jet::Jet2;

/// Samples used to vet user expressions for nodes.
pub const NODE_SAMPLES: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Geometry {
    /// One-dimensional motion on a line.
    #[serde(rename = "line-1d")]
    Line1D,
    /// Spherically symmetric state in three dimensions; `x` is the radius.
    #[serde(rename = "radial-3d")]
    Radial3D,
}

impl std::str::FromStr for Geometry {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "line-1d" => Ok(Geometry::Line1D),
            "radial-3d" => Ok(Geometry::Radial3D),
            _ => Err(format!("unknown geometry `{s}` (expected line-1d or radial-3d)")),
        }
    }
}

impl fmt::Display for Geometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Geometry::Line1D => "line-1d",
            Geometry::Radial3D => "radial-3d",
        })
    }
}

/// Open interval `(lo, hi)`; either end may be infinite.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Domain {
    pub lo: f64,
    pub hi: f64,
}

impl Domain {
    pub const fn new(lo: f64, hi: f64) -> Self {
        Self { lo, hi }
    }

    pub fn contains(&self, x: f64) -> bool {
        x > self.lo && x < self.hi
    }

    pub fn is_bounded(&self) -> bool {
        self.lo.is_finite() && self.hi.is_finite()
    }
}

/// Energy a family is reconstructed at unless the caller overrides it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DefaultEnergy {
    Fixed(f64),
    /// `E = C²/2`, the kinetic energy of a plane wave carrying current `C`.
    HalfCurrentSquared,
}

impl DefaultEnergy {
    pub fn resolve(self, current: f64) -> f64 {
        match self {
            DefaultEnergy::Fixed(e) => e,
            DefaultEnergy::HalfCurrentSquared => 0.5 * current * current,
        }
    }
}

#[derive(Debug, Clone)]
enum Source {
    Free,
    Gaussian,
    Well,
    Hydrogen,
    Expression(Expr),
}

#[derive(Debug, Clone)]
pub struct Prefactor {
    name: String,
    domain: Domain,
    geometry: Geometry,
    default_energy: DefaultEnergy,
    default_x0: f64,
    /// Supremum of R over the domain (sampled for expressions).
    r_max: f64,
    /// Plotting window used when no grid is given.
    window: (f64, f64),
    source: Source,
}

const GAUSS_NORM: f64 = 0.751_125_544_464_942_5; // π^{-1/4}
const HYDROGEN_NORM: f64 = 0.564_189_583_547_756_3; // π^{-1/2}
const HALF_PI: f64 = PI / 2.0;

impl Prefactor {
    /// Plane wave, `R(x) = 1` on the whole line.
    pub fn free() -> Self {
        Self {
            name: "free".into(),
            domain: Domain::new(f64::NEG_INFINITY, f64::INFINITY),
            geometry: Geometry::Line1D,
            default_energy: DefaultEnergy::HalfCurrentSquared,
            default_x0: 0.0,
            r_max: 1.0,
            window: (-10.0, 10.0),
            source: Source::Free,
        }
    }

    /// Oscillator ground state, `R(x) = π^{-1/4} e^{-x²/2}`.
    pub fn gaussian() -> Self {
        Self {
            name: "gaussian".into(),
            domain: Domain::new(f64::NEG_INFINITY, f64::INFINITY),
            geometry: Geometry::Line1D,
            default_energy: DefaultEnergy::Fixed(0.5),
            default_x0: 0.0,
            r_max: GAUSS_NORM,
            window: (-2.5, 2.5),
            source: Source::Gaussian,
        }
    }

    /// Lowest mode of the box `|x| < 1`, `R(x) = cos(πx/2)`.
    pub fn well() -> Self {
        Self {
            name: "well".into(),
            domain: Domain::new(-1.0, 1.0),
            geometry: Geometry::Line1D,
            default_energy: DefaultEnergy::Fixed(PI * PI / 8.0),
            default_x0: 0.0,
            r_max: 1.0,
            window: (-0.95, 0.95),
            source: Source::Well,
        }
    }

    /// Hydrogen 1s amplitude, `R(r) = π^{-1/2} e^{-r}` on `r > 0`.
    pub fn hydrogen() -> Self {
        Self {
            name: "hydrogen".into(),
            domain: Domain::new(0.0, f64::INFINITY),
            geometry: Geometry::Radial3D,
            default_energy: DefaultEnergy::Fixed(-0.5),
            default_x0: 1.0,
            r_max: HYDROGEN_NORM,
            window: (0.05, 5.0),
            source: Source::Hydrogen,
        }
    }

    pub fn builtins() -> [Prefactor; 4] {
        [Self::free(), Self::gaussian(), Self::well(), Self::hydrogen()]
    }

    pub fn builtin(name: &str) -> Option<Prefactor> {
        Self::builtins().into_iter().find(|p| p.name == name)
    }

    /// Wrap a parsed expression. The domain must be bounded and non-empty;
    /// `R` is sampled at [`NODE_SAMPLES`] interior points and rejected if any
    /// sample is not strictly positive.
    pub fn from_expression(
        expr: Expr,
        domain: Domain,
        geometry: Geometry,
        energy: f64,
        x0: f64,
    ) -> Result<Self> {
        if !domain.is_bounded() {
            return Err(Error::InvalidConfig(
                "expression prefactors need a bounded domain".into(),
            ));
        }
        if !(domain.lo < domain.hi) {
            return Err(Error::InvalidConfig(format!(
                "empty domain ({}, {})",
                domain.lo, domain.hi
            )));
        }
        if geometry == Geometry::Radial3D && domain.lo < 0.0 {
            return Err(Error::InvalidConfig("radial domain must lie in r >= 0".into()));
        }
        if !energy.is_finite() {
            return Err(Error::InvalidConfig(format!("energy must be finite, got {energy}")));
        }
        if !domain.contains(x0) {
            return Err(Error::OutsideDomain { x: x0, lo: domain.lo, hi: domain.hi });
        }
        let mut pref = Self {
            name: "expr".into(),
            domain,
            geometry,
            default_energy: DefaultEnergy::Fixed(energy),
            default_x0: x0,
            r_max: f64::NAN,
            window: (domain.lo, domain.hi),
            source: Source::Expression(expr),
        };
        let samples = pref.node_samples(domain.lo, domain.hi, NODE_SAMPLES);
        let mut r_max = 0.0f64;
        for &x in &samples {
            let r = pref.eval(x)?.value;
            if !(r > 0.0) {
                return Err(Error::Nodal { x, value: r });
            }
            r_max = r_max.max(r);
        }
        pref.r_max = r_max;
        pref.window = (samples[0], samples[samples.len() - 1]);
        Ok(pref)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn geometry(&self) -> Geometry {
        self.geometry
    }

    pub fn default_energy(&self) -> DefaultEnergy {
        self.default_energy
    }

    pub fn default_x0(&self) -> f64 {
        self.default_x0
    }

    pub fn r_max(&self) -> f64 {
        self.r_max
    }

    pub fn expression(&self) -> Option<&Expr> {
        match &self.source {
            Source::Expression(e) => Some(e),
            _ => None,
        }
    }

    /// `(R, R', R'')` at `x`.
    pub fn eval(&self, x: f64) -> Result<Jet2> {
        if !self.domain.contains(x) {
            return Err(Error::OutsideDomain { x, lo: self.domain.lo, hi: self.domain.hi });
        }
        Ok(match &self.source {
            Source::Free => Jet2::new(1.0, 0.0, 0.0),
            Source::Gaussian => {
                let r = GAUSS_NORM * (-0.5 * x * x).exp();
                Jet2::new(r, -x * r, (x * x - 1.0) * r)
            }
            Source::Well => {
                let (s, c) = (HALF_PI * x).sin_cos();
                Jet2::new(c, -HALF_PI * s, -HALF_PI * HALF_PI * c)
            }
            Source::Hydrogen => {
                let r = HYDROGEN_NORM * (-x).exp();
                Jet2::new(r, -r, r)
            }
            Source::Expression(e) => eval_jet(e, x)?,
        })
    }

    /// Largest closed interval around the peak on which `R >= clip * max R`,
    /// intersected with the open domain.
    pub fn clip_bounds(&self, clip: f64) -> (f64, f64) {
        let (lo, hi) = (self.domain.lo, self.domain.hi);
        if clip <= 0.0 {
            return (lo, hi);
        }
        if clip > 1.0 {
            return (f64::NAN, f64::NAN);
        }
        match &self.source {
            Source::Free => (lo, hi),
            Source::Gaussian => {
                let w = (-2.0 * clip.ln()).sqrt();
                (-w, w)
            }
            Source::Well => {
                let w = clip.acos() / HALF_PI;
                (-w, w)
            }
            Source::Hydrogen => (lo, -clip.ln()),
            Source::Expression(_) => {
                let thr = clip * self.r_max;
                let samples = self.node_samples(lo, hi, NODE_SAMPLES);
                let keep = |x: &&f64| self.eval(**x).map(|j| j.value >= thr).unwrap_or(false);
                let first = samples.iter().find(keep).copied().unwrap_or(f64::NAN);
                let last = samples.iter().rev().find(keep).copied().unwrap_or(f64::NAN);
                (first, last)
            }
        }
    }

    /// Reject points outside the domain or below the clip threshold.
    pub fn check_clipped(&self, x: f64, clip: f64) -> Result<Jet2> {
        let j = self.eval(x)?;
        if !(j.value > 0.0) {
            return Err(Error::Nodal { x, value: j.value });
        }
        let ratio = j.value / self.r_max;
        if ratio < clip {
            return Err(Error::Clipped { x, ratio, clip });
        }
        Ok(j)
    }

    /// Default grid: the family's plotting window cut down to the clip bounds.
    pub fn default_grid(&self, clip: f64, n: usize) -> Result<Grid1D> {
        let (clo, chi) = self.clip_bounds(clip);
        let lo = self.window.0.max(clo);
        let hi = self.window.1.min(chi);
        Grid1D::new(lo, hi, n)
    }

    /// Sample `R` uniformly on `[lo, hi]` and report the first non-positive value.
    pub fn check_nodeless(&self, lo: f64, hi: f64, samples: usize) -> Result<()> {
        let n = samples.max(2);
        for i in 0..n {
            let x = lo + (hi - lo) * i as f64 / (n - 1) as f64;
            let r = self.eval(x)?.value;
            if !(r > 0.0) {
                return Err(Error::Nodal { x, value: r });
            }
        }
        Ok(())
    }

    fn node_samples(&self, lo: f64, hi: f64, n: usize) -> Vec<f64> {
        let h = (hi - lo) / (n + 1) as f64;
        (1..=n).map(|k| lo + k as f64 * h).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
    }

    #[test]
    fn free_is_flat() {
        let p = Prefactor::free();
        assert_eq!(p.eval(7.3).unwrap(), Jet2::new(1.0, 0.0, 0.0));
        assert_eq!(p.eval(0.0).unwrap(), Jet2::new(1.0, 0.0, 0.0));
        p.check_nodeless(-100.0, 100.0, 10_001).unwrap();
        assert_eq!(p.default_energy().resolve(2.0), 2.0);
    }

    #[test]
    fn gaussian_values() {
        let p = Prefactor::gaussian();
        let j = p.eval(0.0).unwrap();
        assert!((j.value - PI.powf(-0.25)).abs() < 1e-15);
        assert!((j.value - 0.7511255).abs() < 1e-7);
        assert_eq!(j.d1, 0.0);
        let j = p.eval(1.0).unwrap();
        assert!(rel(j.value, PI.powf(-0.25) * (-0.5f64).exp()) < 1e-15);
        assert_eq!(j.d2 / j.value, 0.0);
        assert_eq!(p.default_energy(), DefaultEnergy::Fixed(0.5));
        assert_eq!(p.default_x0(), 0.0);
    }

    #[test]
    fn well_values() {
        let p = Prefactor::well();
        let j = p.eval(0.0).unwrap();
        assert_eq!(j.value, 1.0);
        assert_eq!(j.d1, 0.0);
        assert!((j.d2 + PI * PI / 4.0).abs() < 1e-15);
        assert!((p.eval(0.5).unwrap().value - 0.5f64.sqrt()).abs() < 1e-15);
        p.check_nodeless(-0.999, 0.999, 10_001).unwrap();
        assert!(p.eval(1.0).is_err());
        assert_eq!(p.default_energy(), DefaultEnergy::Fixed(PI * PI / 8.0));
    }

    #[test]
    fn hydrogen_values() {
        let p = Prefactor::hydrogen();
        let j = p.eval(1.0).unwrap();
        let v = PI.powf(-0.5) * (-1.0f64).exp();
        assert!(rel(j.value, v) < 1e-15);
        assert_eq!(j.d1, -j.value);
        assert_eq!(j.d2, j.value);
        p.check_nodeless(0.01, 20.0, 10_001).unwrap();
        assert_eq!(p.geometry(), Geometry::Radial3D);
        assert_eq!(p.default_x0(), 1.0);
        assert_eq!(p.default_energy(), DefaultEnergy::Fixed(-0.5));
        assert!(p.eval(0.0).is_err());
    }

    #[test]
    fn constants_are_exact_enough() {
        assert!(rel(GAUSS_NORM, PI.powf(-0.25)) < 2e-16);
        assert!(rel(HYDROGEN_NORM, PI.powf(-0.5)) < 2e-16);
    }

    #[test]
    fn expression_matches_gaussian() {
        let e = parse("pi^(-0.25) * exp(-x^2/2)").unwrap();
        let p = Prefactor::from_expression(e, Domain::new(-6.0, 6.0), Geometry::Line1D, 0.5, 0.0)
            .unwrap();
        let g = Prefactor::gaussian();
        for i in 0..=100 {
            let x = -5.9 + 0.118 * i as f64;
            let (a, b) = (p.eval(x).unwrap(), g.eval(x).unwrap());
            assert!((a.value - b.value).abs() <= 1e-15);
            assert!((a.d1 - b.d1).abs() <= 1e-15);
            assert!((a.d2 - b.d2).abs() <= 1e-15);
        }
    }

    #[test]
    fn nodal_expression_rejected() {
        let e = parse("sin(pi*x)").unwrap();
        let err = Prefactor::from_expression(e, Domain::new(0.0, 2.0), Geometry::Line1D, 0.0, 0.5)
            .unwrap_err();
        match err {
            Error::Nodal { x, value } => {
                assert!(value <= 0.0);
                assert!(x >= 1.0 && x < 1.001, "{x}");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn rational_expression_accepted() {
        let e = parse("1/(1+x^2)").unwrap();
        let p = Prefactor::from_expression(e, Domain::new(-5.0, 5.0), Geometry::Line1D, 0.0, 0.0)
            .unwrap();
        assert_eq!(p.eval(0.0).unwrap().value, 1.0);
        let (lo, hi) = p.clip_bounds(1e-3);
        assert!(lo > -5.0 && lo < -4.99 && hi < 5.0 && hi > 4.99);
        assert!(p.default_grid(1e-3, 101).is_ok());
    }

    #[test]
    fn expression_domain_validation() {
        let e = parse("1").unwrap();
        let inf = Domain::new(0.0, f64::INFINITY);
        assert!(Prefactor::from_expression(e.clone(), inf, Geometry::Line1D, 0.0, 1.0).is_err());
        let d = Domain::new(0.0, 1.0);
        assert!(Prefactor::from_expression(e.clone(), d, Geometry::Line1D, 0.0, 2.0).is_err());
        assert!(Prefactor::from_expression(e, Domain::new(1.0, 0.0), Geometry::Line1D, 0.0, 0.5).is_err());
        let bad = parse("log(x)").unwrap();
        assert!(matches!(
            Prefactor::from_expression(bad, Domain::new(-1.0, 1.0), Geometry::Line1D, 0.0, 0.5),
            Err(Error::Eval(_)) | Err(Error::Nodal { .. })
        ));
    }

    #[test]
    fn clip_bounds_analytic() {
        let g = Prefactor::gaussian();
        let (lo, hi) = g.clip_bounds(1e-3);
        let r = g.eval(hi).unwrap().value / g.r_max();
        assert!((r - 1e-3).abs() < 1e-15);
        assert_eq!(lo, -hi);
        let w = Prefactor::well();
        let (_, hi) = w.clip_bounds(1e-3);
        assert!((w.eval(hi).unwrap().value - 1e-3).abs() < 1e-15);
        let h = Prefactor::hydrogen();
        let (lo, hi) = h.clip_bounds(1e-3);
        assert_eq!(lo, 0.0);
        assert!((h.eval(hi).unwrap().value / h.r_max() - 1e-3).abs() < 1e-15);
    }

    #[test]
    fn clipping_rejects_tails() {
        let g = Prefactor::gaussian();
        assert!(g.check_clipped(3.0, 1e-3).is_ok());
        assert!(matches!(g.check_clipped(4.0, 1e-3), Err(Error::Clipped { .. })));
        assert!(g.check_clipped(4.0, 0.0).is_ok());
    }

    #[test]
    fn default_grids_are_inside_clip() {
        for p in Prefactor::builtins() {
            let g = p.default_grid(1e-3, 101).unwrap();
            for x in g.points() {
                p.check_clipped(x, 1e-3).unwrap();
            }
        }
    }

    #[test]
    fn identities_hold() {
        let g = Prefactor::gaussian();
        let w = Prefactor::well();
        let h = Prefactor::hydrogen();
        for i in 0..=200 {
            let t = i as f64 / 200.0;
            let x = -3.7 + 7.4 * t;
            let j = g.eval(x).unwrap();
            assert!((j.d2 / j.value + 1.0 - x * x).abs() <= 1e-12);
            let x = -0.999 + 1.998 * t;
            let j = w.eval(x).unwrap();
            assert!((j.d2 / j.value + PI * PI / 4.0).abs() <= 1e-12);
            let r = 0.01 + 20.0 * t;
            let j = h.eval(r).unwrap();
            assert!((j.d2 / j.value - 1.0).abs() <= 1e-12);
        }
    }
}
