//! Crank–Nicolson propagation and the phase-kick preparation protocol.
//!
//! `H = -½ d²/dx² + V` is discretised with the 3-point Laplacian; the first
//! and last grid nodes are hard walls (`ψ = 0`). Each step solves
//! `(1 + i dt H/2) ψ' = (1 - i dt H/2) ψ`, which is unitary for real `V`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::Grid1D;
use crate::prefactor::{Geometry, Prefactor};
use crate::reconstruct::{reconstruct, ReconstructionConfig};
use crate::tridiag::Tridiagonal;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Boundary {
    Dirichlet,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PropagationConfig {
    pub dt: f64,
    pub steps: usize,
    pub boundary: Boundary,
    /// Energy whose `e^{-iEt}` the overlap phase is compared against.
    pub e_ref: f64,
    /// Optional `[lo, hi]` window for an additional restricted fidelity trace.
    pub window: Option<(f64, f64)>,
}

impl PropagationConfig {
    pub fn new(dt: f64, steps: usize, e_ref: f64) -> Self {
        Self { dt, steps, boundary: Boundary::Dirichlet, e_ref, window: None }
    }

    pub fn with_window(mut self, lo: f64, hi: f64) -> Self {
        self.window = Some((lo, hi));
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PropagationReport {
    pub times: Vec<f64>,
    /// `h Σ |ψ|²`.
    pub norm_t: Vec<f64>,
    /// `|⟨ψ₀|ψ(t)⟩| / (‖ψ₀‖ ‖ψ(t)‖)`.
    pub fidelity_t: Vec<f64>,
    /// `arg⟨ψ₀|ψ(t)⟩ + E_ref t`, wrapped to `(-π, π]`.
    pub phase_err_t: Vec<f64>,
    /// Fidelity restricted to `window`, when one was configured.
    pub window_fidelity_t: Option<Vec<f64>>,
    /// `-d/dt arg⟨ψ₀|ψ(t)⟩` from a least-squares line through the unwrapped phase.
    pub fitted_energy: Option<f64>,
    pub warnings: Vec<String>,
}

impl PropagationReport {
    pub fn final_fidelity(&self) -> f64 {
        *self.fidelity_t.last().expect("report has the t = 0 entry")
    }

    pub fn min_fidelity(&self) -> f64 {
        self.fidelity_t.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn min_window_fidelity(&self) -> Option<f64> {
        self.window_fidelity_t
            .as_ref()
            .map(|w| w.iter().copied().fold(f64::INFINITY, f64::min))
    }

    /// Largest `|norm(t)/norm(0) - 1|`.
    pub fn norm_drift(&self) -> f64 {
        let n0 = self.norm_t[0];
        self.norm_t.iter().map(|n| (n / n0 - 1.0).abs()).fold(0.0, f64::max)
    }

    pub fn final_phase_error(&self) -> f64 {
        *self.phase_err_t.last().expect("report has the t = 0 entry")
    }
}

/// Wrap an angle to `(-π, π]`.
pub fn wrap_phase(theta: f64) -> f64 {
    let w = (theta + PI).rem_euclid(2.0 * PI) - PI;
    if w <= -PI {
        w + 2.0 * PI
    } else {
        w
    }
}

fn inner(h: f64, a: &[Complex64], b: &[Complex64], range: std::ops::Range<usize>) -> Complex64 {
    range.map(|i| a[i].conj() * b[i]).sum::<Complex64>() * h
}

fn sq_norm(h: f64, a: &[Complex64], range: std::ops::Range<usize>) -> f64 {
    range.map(|i| a[i].norm_sqr()).sum::<f64>() * h
}

struct Tracker {
    h: f64,
    psi0: Vec<Complex64>,
    norm0: f64,
    e_ref: f64,
    window: Option<(std::ops::Range<usize>, f64)>,
    report: PropagationReport,
    raw_phase: Vec<f64>,
}

impl Tracker {
    fn record(&mut self, t: f64, psi: &[Complex64]) {
        let n = psi.len();
        let ov = inner(self.h, &self.psi0, psi, 0..n);
        let nrm = sq_norm(self.h, psi, 0..n);
        self.report.times.push(t);
        self.report.norm_t.push(nrm);
        self.report.fidelity_t.push(ov.norm() / (self.norm0 * nrm).sqrt());
        let arg = ov.arg();
        self.raw_phase.push(arg);
        self.report.phase_err_t.push(wrap_phase(arg + self.e_ref * t));
        if let Some((range, n0w)) = &self.window {
            let ovw = inner(self.h, &self.psi0, psi, range.clone());
            let nw = sq_norm(self.h, psi, range.clone());
            let f = ovw.norm() / (n0w * nw).sqrt();
            self.report.window_fidelity_t.get_or_insert_with(Vec::new).push(f);
        }
    }

    fn finish(mut self) -> PropagationReport {
        if self.raw_phase.len() >= 2 {
            let mut unwrapped = Vec::with_capacity(self.raw_phase.len());
            let mut offset = 0.0;
            let mut prev = self.raw_phase[0];
            for &p in &self.raw_phase {
                let d = p - prev;
                if d > PI {
                    offset -= 2.0 * PI;
                } else if d < -PI {
                    offset += 2.0 * PI;
                }
                prev = p;
                unwrapped.push(p + offset);
            }
            let t = &self.report.times;
            let m = t.len() as f64;
            let tm = t.iter().sum::<f64>() / m;
            let pm = unwrapped.iter().sum::<f64>() / m;
            let (mut sxy, mut sxx) = (0.0, 0.0);
            for (ti, pi) in t.iter().zip(&unwrapped) {
                sxy += (ti - tm) * (pi - pm);
                sxx += (ti - tm) * (ti - tm);
            }
            self.report.fitted_energy = Some(-sxy / sxx);
        }
        self.report
    }
}

/// Propagate `psi0` for `cfg.steps` Crank–Nicolson steps under the real potential `v`.
///
/// The boundary nodes are pinned to zero before the first step; the pinned
/// vector is the reference state for every overlap in the report.
pub fn cn_propagate(
    psi0: &[Complex64],
    v: &[f64],
    grid: &Grid1D,
    cfg: &PropagationConfig,
) -> Result<(Vec<Complex64>, PropagationReport)> {
    let n = grid.len();
    if psi0.len() != n {
        return Err(Error::LengthMismatch { left: psi0.len(), right: n });
    }
    if v.len() != n {
        return Err(Error::LengthMismatch { left: v.len(), right: n });
    }
    if !(cfg.dt > 0.0 && cfg.dt.is_finite()) {
        return Err(Error::InvalidConfig(format!("dt must be positive, got {}", cfg.dt)));
    }
    if v.iter().any(|x| !x.is_finite()) || psi0.iter().any(|z| !z.is_finite()) {
        return Err(Error::InvalidConfig("potential and initial state must be finite".into()));
    }
    let h = grid.spacing();
    let mut warnings = Vec::new();

    let v_max = v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    if cfg.dt * v_max > 0.5 {
        warnings.push(format!(
            "dt * max|V| = {:.3e} exceeds 0.5; phases per step are large",
            cfg.dt * v_max
        ));
    }
    let peak = psi0.iter().fold(0.0f64, |m, z| m.max(z.norm_sqr()));
    let edge = psi0[0].norm_sqr().max(psi0[n - 1].norm_sqr());
    if edge > 1e-4 * peak {
        warnings.push(format!(
            "|psi0|^2 at the walls is {:.3e} of its peak; the walls truncate the state",
            edge / peak
        ));
    }
    for w in &warnings {
        log::warn!("{w}");
    }

    let mut psi = psi0.to_vec();
    psi[0] = Complex64::new(0.0, 0.0);
    psi[n - 1] = Complex64::new(0.0, 0.0);
    let norm0 = sq_norm(h, &psi, 0..n);
    if !(norm0 > 0.0) {
        return Err(Error::InvalidConfig("initial state vanishes on the interior nodes".into()));
    }

    let window = match cfg.window {
        Some((lo, hi)) => {
            let idx: Vec<usize> = (0..n).filter(|&i| (lo..=hi).contains(&grid.x(i))).collect();
            let (Some(&first), Some(&last)) = (idx.first(), idx.last()) else {
                return Err(Error::InvalidConfig(format!("window [{lo}, {hi}] holds no grid nodes")));
            };
            let range = first..last + 1;
            let n0w = sq_norm(h, &psi, range.clone());
            Some((range, n0w))
        }
        None => None,
    };

    let mut tracker = Tracker {
        h,
        psi0: psi.clone(),
        norm0,
        e_ref: cfg.e_ref,
        window,
        report: PropagationReport {
            times: Vec::with_capacity(cfg.steps + 1),
            norm_t: Vec::with_capacity(cfg.steps + 1),
            fidelity_t: Vec::with_capacity(cfg.steps + 1),
            phase_err_t: Vec::with_capacity(cfg.steps + 1),
            window_fidelity_t: None,
            fitted_energy: None,
            warnings,
        },
        raw_phase: Vec::with_capacity(cfg.steps + 1),
    };
    tracker.record(0.0, &psi);
    if cfg.steps == 0 || n < 3 {
        return Ok((psi0.to_vec(), tracker.finish()));
    }

    // Interior unknowns 1..n-1.
    let m = n - 2;
    let kin = 0.5 / (h * h);
    let half = Complex64::new(0.0, 0.5 * cfg.dt);
    let off = half * (-kin);
    let diag: Vec<Complex64> = (1..n - 1)
        .map(|i| Complex64::new(1.0, 0.0) + half * (2.0 * kin + v[i]))
        .collect();
    let lu = Tridiagonal::factor(&vec![off; m - 1], &diag, &vec![off; m - 1])?;

    let mut rhs = vec![Complex64::new(0.0, 0.0); m];
    for step in 1..=cfg.steps {
        for j in 0..m {
            let i = j + 1;
            let hpsi = (2.0 * kin + v[i]) * psi[i] - kin * (psi[i - 1] + psi[i + 1]);
            rhs[j] = psi[i] - half * hpsi;
        }
        lu.solve_refined(&mut rhs);
        psi[1..n - 1].copy_from_slice(&rhs);
        if psi.iter().any(|z| !z.is_finite()) {
            return Err(Error::Propagation { step, reason: "non-finite amplitude".into() });
        }
        tracker.record(step as f64 * cfg.dt, &psi);
    }
    Ok((psi, tracker.finish()))
}

/// Instantaneous kick `ψ_i ↦ ψ_i e^{iS_i}`.
pub fn phase_kick(psi: &[Complex64], s: &[f64]) -> Result<Vec<Complex64>> {
    if psi.len() != s.len() {
        return Err(Error::LengthMismatch { left: psi.len(), right: s.len() });
    }
    Ok(psi
        .iter()
        .zip(s)
        .map(|(z, &phase)| {
            let (sin, cos) = phase.sin_cos();
            z * Complex64::new(cos, sin)
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProtocolReport {
    pub current: f64,
    pub energy: f64,
    /// `S ≡ 0`, so the kick does nothing.
    pub kick_is_identity: bool,
    /// `max_i |kick(R, S)_i - ψ_i|`.
    pub kick_mismatch: f64,
    /// Real amplitude `R` evolved under `V₁ = E + R''/(2R)`.
    pub prepared: Option<PropagationReport>,
    /// Kicked state evolved under the full reconstructed potential.
    pub kicked: Option<PropagationReport>,
    pub warnings: Vec<String>,
}

/// Run the preparation sequence: build `V₁` from the real amplitude, check
/// that `R` is stationary under it, kick with `e^{iS}`, compare against the
/// reconstructed `ψ`, then check that the kicked state is stationary under
/// the reconstructed `V`.
///
/// Radial states are reconstructed and kicked but not time-evolved.
pub fn lamb_protocol(
    pref: &Prefactor,
    cfg: &ReconstructionConfig,
    pcfg: &PropagationConfig,
) -> Result<ProtocolReport> {
    let real_cfg = ReconstructionConfig { current: 0.0, ..cfg.clone() };
    let real = reconstruct(pref, &real_cfg)?;
    let full = reconstruct(pref, cfg)?;

    let amplitude: Vec<Complex64> = real.r.iter().map(|&r| Complex64::new(r, 0.0)).collect();
    let kicked = phase_kick(&amplitude, &full.s)?;
    let kick_mismatch = kicked
        .iter()
        .zip(&full.psi)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);

    let mut warnings = Vec::new();
    let (prepared, evolved) = match pref.geometry() {
        Geometry::Line1D => {
            let (_, prepared) = cn_propagate(&amplitude, &real.v, &real.grid, pcfg)?;
            let (_, evolved) = cn_propagate(&kicked, &full.v, &full.grid, pcfg)?;
            (Some(prepared), Some(evolved))
        }
        Geometry::Radial3D => {
            warnings.push("radial states are not time-evolved; stationarity checks skipped".into());
            (None, None)
        }
    };

    Ok(ProtocolReport {
        current: cfg.current,
        energy: cfg.energy,
        kick_is_identity: full.s.iter().all(|&s| s == 0.0),
        kick_mismatch,
        prepared,
        kicked: evolved,
        warnings,
    })
}
