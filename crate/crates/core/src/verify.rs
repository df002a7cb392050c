//! Checks on a reconstructed state: Schrödinger residuals of the real and
//! imaginary parts, the reconstructability condition, current constancy and
//! normalisation.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::Grid1D;
use crate::prefactor::Geometry;
use crate::reconstruct::{current_density, CurrentPath, ReconstructedState};
use crate::stencil::{d1_3, d1_5, d2_3, d2_5};

const RECON_FLOOR: f64 = 1e-300;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ResidualMode {
    /// Second derivatives of `a = R cos S`, `b = R sin S` from closed-form
    /// identities in `R, R', R''` and `S' = C/R²`.
    Analytic,
    /// 3-point second differences of the sampled `a`, `b` (second order).
    FiniteDifference,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Residuals {
    pub real: f64,
    pub imag: f64,
    /// `max |E - V| R` over the nodes used.
    pub scale: f64,
}

/// Relative residuals of `-½∇²a + (V-E)a` and the same for `b`.
///
/// Both maxima are divided by `max_i |E - V_i| R_i`; when that scale is zero
/// the absolute maxima are returned.
pub fn residual_split(state: &ReconstructedState, energy: f64, mode: ResidualMode) -> Result<(f64, f64)> {
    residuals(state, energy, mode).map(|r| (r.real, r.imag))
}

type Laplacians = (Vec<f64>, Vec<f64>, std::ops::Range<usize>);

/// `∇²a`, `∇²b` on the nodes they are defined for.
fn laplacians(state: &ReconstructedState, mode: ResidualMode) -> Result<Laplacians> {
    let n = state.len();
    let xs = state.grid.points();
    let c = state.current;
    let radial = state.geometry == Geometry::Radial3D;

    Ok(match mode {
        ResidualMode::Analytic => {
            let mut la = Vec::with_capacity(n);
            let mut lb = Vec::with_capacity(n);
            for i in 0..n {
                let (r, r1, r2) = (state.r[i], state.dr[i], state.d2r[i]);
                let (sin, cos) = state.s[i].sin_cos();
                let x = xs[i];
                let (s1, s2) = if radial {
                    let s1 = c / (x * x * r * r);
                    (s1, -2.0 * s1 / x - 2.0 * s1 * r1 / r)
                } else {
                    let s1 = c / (r * r);
                    (s1, -2.0 * s1 * r1 / r)
                };
                let even = r2 - r * s1 * s1;
                let odd = 2.0 * r1 * s1 + r * s2;
                let mut a2 = even * cos - odd * sin;
                let mut b2 = even * sin + odd * cos;
                if radial {
                    let a1 = r1 * cos - r * s1 * sin;
                    let b1 = r1 * sin + r * s1 * cos;
                    a2 += 2.0 * a1 / x;
                    b2 += 2.0 * b1 / x;
                }
                la.push(a2);
                lb.push(b2);
            }
            (la, lb, 0..n)
        }
        ResidualMode::FiniteDifference => {
            if n < 5 {
                return Err(Error::GridTooCoarse { n, needed: 5 });
            }
            let a = state.real_part();
            let b = state.imag_part();
            let h = state.grid.spacing();
            let mut la = vec![0.0; n];
            let mut lb = vec![0.0; n];
            for i in 2..n - 2 {
                la[i] = d2_3(&a, i, h);
                lb[i] = d2_3(&b, i, h);
                if radial {
                    la[i] += 2.0 * d1_3(&a, i, h) / xs[i];
                    lb[i] += 2.0 * d1_3(&b, i, h) / xs[i];
                }
            }
            (la, lb, 2..n - 2)
        }
    })
}

pub fn residuals(state: &ReconstructedState, energy: f64, mode: ResidualMode) -> Result<Residuals> {
    let (lap_a, lap_b, range) = laplacians(state, mode)?;

    let mut real = 0.0f64;
    let mut imag = 0.0f64;
    let mut scale = 0.0f64;
    for i in range {
        let shift = state.v[i] - energy;
        let z = state.psi[i];
        real = real.max((-0.5 * lap_a[i] + shift * z.re).abs());
        imag = imag.max((-0.5 * lap_b[i] + shift * z.im).abs());
        scale = scale.max(shift.abs() * state.r[i]);
    }
    if scale > 0.0 {
        real /= scale;
        imag /= scale;
    }
    Ok(Residuals { real, imag, scale })
}

/// Normalised violation of `∇²a · b = a · ∇²b`, using 5-point stencils on the
/// interior nodes:
/// `max |∇²a b - a ∇²b| / max (|∇²a b| + |a ∇²b|)`.
pub fn check_recon_condition(a: &[f64], b: &[f64], grid: &Grid1D, geometry: Geometry) -> Result<f64> {
    let n = grid.len();
    if a.len() != n || b.len() != n {
        return Err(Error::LengthMismatch { left: a.len().max(b.len()), right: n });
    }
    if n < 5 {
        return Err(Error::GridTooCoarse { n, needed: 5 });
    }
    let h = grid.spacing();
    let mut num = 0.0f64;
    let mut den = 0.0f64;
    for i in 2..n - 2 {
        let (mut la, mut lb) = (d2_5(a, i, h), d2_5(b, i, h));
        if geometry == Geometry::Radial3D {
            let x = grid.x(i);
            la += 2.0 * d1_5(a, i, h) / x;
            lb += 2.0 * d1_5(b, i, h) / x;
        }
        let (p, q) = (la * b[i], a[i] * lb);
        num = num.max((p - q).abs());
        den = den.max(p.abs() + q.abs());
    }
    Ok(num / (den + RECON_FLOOR))
}

/// `max |j_i - C|` over interior nodes, `j` from finite differences of `S`.
pub fn check_current(state: &ReconstructedState) -> f64 {
    current_density(state, CurrentPath::FiniteDifference)
        .into_iter()
        .map(|j| (j - state.current).abs())
        .fold(0.0, f64::max)
}

/// Trapezoid integral of `ρ` (line) or `4π r² ρ` (radial) over the grid.
pub fn norm(state: &ReconstructedState) -> f64 {
    let h = state.grid.spacing();
    let n = state.len();
    let f = |i: usize| match state.geometry {
        Geometry::Line1D => state.rho[i],
        Geometry::Radial3D => {
            let r = state.grid.x(i);
            4.0 * std::f64::consts::PI * r * r * state.rho[i]
        }
    };
    let inner: f64 = (1..n - 1).map(f).sum();
    h * (inner + 0.5 * (f(0) + f(n - 1)))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub residual: f64,
    pub recon_condition: f64,
    pub current: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            residual: 1e-10,
            recon_condition: 1e-6,
            current: 1e-5,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PassFlags {
    pub residual_real: bool,
    pub residual_imag: bool,
    pub recon_condition: bool,
    pub current: bool,
}

impl PassFlags {
    pub fn all(&self) -> bool {
        self.residual_real && self.residual_imag && self.recon_condition && self.current
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub residual_mode: ResidualMode,
    pub residual_real_max: f64,
    pub residual_imag_max: f64,
    pub recon_condition_max: f64,
    pub current_dev_max: f64,
    pub norm: f64,
    pub scale: f64,
    pub tolerances: Tolerances,
    pub pass: PassFlags,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.pass.all()
    }
}

fn recon_metric(a: &[f64], b: &[f64], lap: &Laplacians) -> f64 {
    let (la, lb, range) = lap;
    let mut num = 0.0f64;
    let mut den = 0.0f64;
    for i in range.clone() {
        let (p, q) = (la[i] * b[i], a[i] * lb[i]);
        num = num.max((p - q).abs());
        den = den.max(p.abs() + q.abs());
    }
    num / (den + RECON_FLOOR)
}

/// Run every check at the state's own energy.
///
/// `mode` selects how derivatives are taken for all checks: closed-form
/// (residuals, reconstructability, current `R²S'`) or finite differences
/// (3-point residuals, 5-point reconstructability and current).
pub fn verify(state: &ReconstructedState, mode: ResidualMode, tol: Tolerances) -> Result<VerificationReport> {
    let res = residuals(state, state.energy, mode)?;
    let (recon, current) = match mode {
        ResidualMode::Analytic => {
            let lap = laplacians(state, mode)?;
            let recon = recon_metric(&state.real_part(), &state.imag_part(), &lap);
            let current = current_density(state, CurrentPath::Analytic)
                .into_iter()
                .map(|j| (j - state.current).abs())
                .fold(0.0, f64::max);
            (recon, current)
        }
        ResidualMode::FiniteDifference => (
            check_recon_condition(&state.real_part(), &state.imag_part(), &state.grid, state.geometry)?,
            check_current(state),
        ),
    };
    Ok(VerificationReport {
        residual_mode: mode,
        residual_real_max: res.real,
        residual_imag_max: res.imag,
        recon_condition_max: recon,
        current_dev_max: current,
        norm: norm(state),
        scale: res.scale,
        tolerances: tol,
        pass: PassFlags {
            residual_real: res.real <= tol.residual,
            residual_imag: res.imag <= tol.residual,
            recon_condition: recon <= tol.recon_condition,
            current: current <= tol.current,
        },
    })
}
