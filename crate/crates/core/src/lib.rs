//! Reconstruction of real potentials from nodeless wavefunction amplitudes.
//!
//! Given a positive amplitude `R(x)` and a current `C`, the phase
//! `S = C ∫ ds/R²` makes `ψ = R e^{iS}` an eigenfunction of energy `E` of the
//! real potential `V = E + R''/(2R) - C²/(2R⁴)`. This crate computes `S`, `V`
//! and `ψ` on a grid ([`reconstruct`]), checks the result independently
//! ([`verify`]), and simulates preparing `ψ` from the real amplitude with an
//! instantaneous phase kick ([`propagate`]).
//!
//! ```
//! use lambrecon::{Prefactor, ReconstructionConfig, reconstruct};
//!
//! let well = Prefactor::well();
//! let cfg = ReconstructionConfig::new(&well, 0.2)?;
//! let state = reconstruct(&well, &cfg)?;
//! assert!(state.v.iter().all(|&v| v <= 0.0));
//! # Ok::<(), lambrecon::Error>(())
//! ```

pub mod cli;
mod error;
pub mod expr;
pub mod grid;
pub mod jet;
pub mod prefactor;
pub mod propagate;
pub mod quadrature;
pub mod reconstruct;
pub mod stencil;
pub mod tridiag;
pub mod verify;

pub use error::{Error, Result};
pub use expr::{eval_jet, parse, Expr};
pub use grid::Grid1D;
pub use jet::Jet2;
pub use prefactor::{DefaultEnergy, Domain, Geometry, Prefactor};
pub use propagate::{cn_propagate, lamb_protocol, phase_kick, PropagationConfig, PropagationReport, ProtocolReport};
pub use reconstruct::{
    current_density, phase_at, potential, potential_line, potential_radial, reconstruct, CurrentPath,
    ReconstructedState, ReconstructionConfig,
};
pub use verify::{
    check_current, check_recon_condition, norm, residual_split, verify, ResidualMode, Tolerances,
    VerificationReport,
};
