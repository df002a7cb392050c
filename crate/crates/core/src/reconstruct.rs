//! Phase, potential and eigenfunction for a given amplitude `R`.
//!
//! With `S(x) = C ∫_{x0}^x ds / R(s)²` the function `ψ = R e^{iS}` solves
//! `-ψ''/2 + V ψ = E ψ` for the real potential
//! `V = E + R''/(2R) - C²/(2R⁴)`. The radial version replaces the phase
//! integrand by `1/(s² R²)` and uses the radial Laplacian.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::grid::Grid1D;
use crate::jet::Jet2;
use crate::prefactor::{Geometry, Prefactor};
use crate::quadrature;
use crate::stencil;

pub const DEFAULT_CLIP: f64 = 1e-3;
pub const DEFAULT_QUAD_TOL: f64 = 1e-10;
pub const DEFAULT_N: usize = 2001;

#[derive(Debug, Clone, PartialEq)]
pub struct ReconstructionConfig {
    /// Probability current carried by the state.
    pub current: f64,
    pub energy: f64,
    /// Lower limit of the phase integral; `S(x0) = 0`.
    pub x0: f64,
    /// Relative amplitude threshold: every sampled point needs `R >= clip * max R`.
    pub clip: f64,
    pub grid: Grid1D,
    pub quad_tol: f64,
}

impl ReconstructionConfig {
    /// Family defaults for energy, `x0` and grid, with default clip and tolerance.
    pub fn new(pref: &Prefactor, current: f64) -> Result<Self> {
        Ok(Self {
            current,
            energy: pref.default_energy().resolve(current),
            x0: pref.default_x0(),
            clip: DEFAULT_CLIP,
            grid: pref.default_grid(DEFAULT_CLIP, DEFAULT_N)?,
            quad_tol: DEFAULT_QUAD_TOL,
        })
    }

    pub fn with_grid(mut self, grid: Grid1D) -> Self {
        self.grid = grid;
        self
    }

    pub fn with_energy(mut self, energy: f64) -> Self {
        self.energy = energy;
        self
    }

    pub fn with_x0(mut self, x0: f64) -> Self {
        self.x0 = x0;
        self
    }

    pub fn with_clip(mut self, clip: f64) -> Self {
        self.clip = clip;
        self
    }

    pub fn validate(&self, pref: &Prefactor) -> Result<()> {
        if !self.current.is_finite() || !self.energy.is_finite() {
            return Err(Error::InvalidConfig(format!(
                "current and energy must be finite (C = {}, E = {})",
                self.current, self.energy
            )));
        }
        if !(self.quad_tol > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "quad_tol must be positive, got {}",
                self.quad_tol
            )));
        }
        if !(self.clip >= 0.0 && self.clip < 1.0) {
            return Err(Error::InvalidConfig(format!(
                "clip must lie in [0, 1), got {}",
                self.clip
            )));
        }
        pref.check_clipped(self.x0, self.clip)?;
        pref.check_clipped(self.grid.x_lo(), self.clip)?;
        pref.check_clipped(self.grid.x_hi(), self.clip)?;
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct ReconstructedState {
    pub grid: Grid1D,
    pub geometry: Geometry,
    /// The constant `C`.
    pub current: f64,
    pub energy: f64,
    pub x0: f64,
    pub r: Vec<f64>,
    pub dr: Vec<f64>,
    pub d2r: Vec<f64>,
    /// Unwrapped phase.
    pub s: Vec<f64>,
    pub v: Vec<f64>,
    pub psi: Vec<Complex64>,
    pub rho: Vec<f64>,
}

impl ReconstructedState {
    pub fn len(&self) -> usize {
        self.r.len()
    }

    pub fn is_empty(&self) -> bool {
        self.r.is_empty()
    }

    pub fn xs(&self) -> Vec<f64> {
        self.grid.points()
    }

    pub fn real_part(&self) -> Vec<f64> {
        self.psi.iter().map(|z| z.re).collect()
    }

    pub fn imag_part(&self) -> Vec<f64> {
        self.psi.iter().map(|z| z.im).collect()
    }
}

/// `1/R²` on a line, `1/(r² R²)` for radial states.
fn phase_density(pref: &Prefactor, s: f64) -> f64 {
    match pref.eval(s) {
        Ok(j) => {
            let r2 = j.value * j.value;
            match pref.geometry() {
                Geometry::Line1D => 1.0 / r2,
                Geometry::Radial3D => 1.0 / (s * s * r2),
            }
        }
        Err(_) => f64::NAN,
    }
}

fn check_phase_endpoint(pref: &Prefactor, x: f64) -> Result<()> {
    let j = pref.eval(x)?;
    if !(j.value > 0.0) {
        return Err(Error::Nodal { x, value: j.value });
    }
    if pref.geometry() == Geometry::Radial3D && !(x > 0.0) {
        return Err(Error::OutsideDomain { x, lo: 0.0, hi: f64::INFINITY });
    }
    Ok(())
}

/// `∫_{x0}^{x}` of the phase density, without the factor `C`.
fn phase_integral(pref: &Prefactor, x0: f64, x: f64, quad_tol: f64) -> Result<f64> {
    quadrature::integrate(|s| phase_density(pref, s), x0, x, quad_tol)
}

/// `S(x) = C ∫_{x0}^{x} ds/R²` (line) or `C ∫ ds/(s²R²)` (radial).
pub fn phase_at(pref: &Prefactor, current: f64, x0: f64, x: f64, quad_tol: f64) -> Result<f64> {
    check_phase_endpoint(pref, x0)?;
    check_phase_endpoint(pref, x)?;
    if current == 0.0 {
        return Ok(0.0);
    }
    Ok(current * phase_integral(pref, x0, x, quad_tol)?)
}

fn non_finite_potential(x: f64) -> Error {
    Error::NonFinite {
        what: "potential (R underflows; raise the clip threshold)",
        x,
    }
}

fn line_shape(j: Jet2, current: f64) -> f64 {
    let r = j.value;
    let r2 = r * r;
    j.d2 / (2.0 * r) - current * current / (2.0 * r2 * r2)
}

fn radial_shape(j: Jet2, current: f64, radius: f64) -> f64 {
    let r = j.value;
    let rr = radius * radius * r * r;
    j.d2 / (2.0 * r) + j.d1 / (radius * r) - current * current / (2.0 * rr * rr)
}

fn potential_from_jet(geometry: Geometry, j: Jet2, x: f64, current: f64, energy: f64) -> Result<f64> {
    let shape = match geometry {
        Geometry::Line1D => line_shape(j, current),
        Geometry::Radial3D => radial_shape(j, current, x),
    };
    let v = energy + shape;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(non_finite_potential(x))
    }
}

fn positive_jet(pref: &Prefactor, x: f64) -> Result<Jet2> {
    let j = pref.eval(x)?;
    if !(j.value > 0.0) {
        return Err(Error::Nodal { x, value: j.value });
    }
    Ok(j)
}

/// `V = E + R''/(2R) - C²/(2R⁴)`.
pub fn potential_line(pref: &Prefactor, current: f64, energy: f64, x: f64) -> Result<f64> {
    let j = positive_jet(pref, x)?;
    potential_from_jet(Geometry::Line1D, j, x, current, energy)
}

/// `V = E + R''/(2R) + R'/(rR) - C²/(2r⁴R⁴)`.
pub fn potential_radial(pref: &Prefactor, current: f64, energy: f64, r: f64) -> Result<f64> {
    if !(r > 0.0) {
        return Err(Error::OutsideDomain { x: r, lo: 0.0, hi: f64::INFINITY });
    }
    let j = positive_jet(pref, r)?;
    potential_from_jet(Geometry::Radial3D, j, r, current, energy)
}

/// Potential for the prefactor's own geometry.
pub fn potential(pref: &Prefactor, current: f64, energy: f64, x: f64) -> Result<f64> {
    match pref.geometry() {
        Geometry::Line1D => potential_line(pref, current, energy, x),
        Geometry::Radial3D => potential_radial(pref, current, energy, x),
    }
}

/// Sample `R`, `S`, `V`, `ψ` and `ρ` on `cfg.grid`.
///
/// The phase is built from one quadrature per grid interval, prefix-summed
/// outward from the node nearest `x0`; that node is offset by one extra
/// integral from `x0` so that `S(x0) = 0` holds exactly.
pub fn reconstruct(pref: &Prefactor, cfg: &ReconstructionConfig) -> Result<ReconstructedState> {
    cfg.validate(pref)?;
    let grid = cfg.grid;
    let xs = grid.points();
    let geometry = pref.geometry();
    let c = cfg.current;

    let jets: Vec<Jet2> = xs
        .par_iter()
        .map(|&x| pref.check_clipped(x, cfg.clip))
        .collect::<Result<_>>()?;

    let s = if c == 0.0 {
        vec![0.0; xs.len()]
    } else {
        let pieces: Vec<f64> = xs
            .par_windows(2)
            .map(|w| phase_integral(pref, w[0], w[1], cfg.quad_tol))
            .collect::<Result<_>>()?;
        let anchor = grid.nearest(cfg.x0);
        let mut acc = vec![0.0; xs.len()];
        acc[anchor] = phase_integral(pref, cfg.x0, xs[anchor], cfg.quad_tol)?;
        for i in anchor..xs.len() - 1 {
            acc[i + 1] = acc[i] + pieces[i];
        }
        for i in (0..anchor).rev() {
            acc[i] = acc[i + 1] - pieces[i];
        }
        acc.into_iter().map(|t| c * t).collect()
    };

    let v: Vec<f64> = xs
        .par_iter()
        .zip(jets.par_iter())
        .map(|(&x, &j)| potential_from_jet(geometry, j, x, c, cfg.energy))
        .collect::<Result<_>>()?;

    let r: Vec<f64> = jets.iter().map(|j| j.value).collect();
    let psi = r
        .iter()
        .zip(&s)
        .map(|(&amp, &phase)| {
            let (sin, cos) = phase.sin_cos();
            Complex64::new(amp * cos, amp * sin)
        })
        .collect();
    let rho = r.iter().map(|&a| a * a).collect();

    Ok(ReconstructedState {
        grid,
        geometry,
        current: c,
        energy: cfg.energy,
        x0: cfg.x0,
        dr: jets.iter().map(|j| j.d1).collect(),
        d2r: jets.iter().map(|j| j.d2).collect(),
        r,
        s,
        v,
        psi,
        rho,
    })
}

/// How [`current_density`] obtains `S'`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurrentPath {
    /// `S' = C/R²` (or `C/(r²R²)`), giving `C` up to rounding at every node.
    Analytic,
    /// 5-point central differences of the sampled phase. Only the interior
    /// nodes `2..n-2` are returned.
    FiniteDifference,
}

/// Probability current `R² S'` (line) or `r² R² S'` (radial).
pub fn current_density(state: &ReconstructedState, path: CurrentPath) -> Vec<f64> {
    let xs = state.grid.points();
    let weight = |i: usize| match state.geometry {
        Geometry::Line1D => state.rho[i],
        Geometry::Radial3D => xs[i] * xs[i] * state.rho[i],
    };
    match path {
        CurrentPath::Analytic => (0..state.len())
            .map(|i| {
                let w = weight(i);
                w * (state.current / w)
            })
            .collect(),
        CurrentPath::FiniteDifference => {
            let n = state.len();
            if n < 5 {
                return Vec::new();
            }
            let h = state.grid.spacing();
            (2..n - 2)
                .map(|i| weight(i) * stencil::d1_5(&state.s, i, h))
                .collect()
        }
    }
}
