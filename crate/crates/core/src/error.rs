use std::path::PathBuf;

use thiserror::Error;

use crate::expr::{EvalError, ParseError};

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("expression: {0}")]
    Parse(#[from] ParseError),
    #[error("expression: {0}")]
    Eval(#[from] EvalError),
    #[error("prefactor has a node: R({x}) = {value} is not positive")]
    Nodal { x: f64, value: f64 },
    #[error("x = {x} lies outside the open domain ({lo}, {hi})")]
    OutsideDomain { x: f64, lo: f64, hi: f64 },
    #[error("x = {x} is clipped: R/max R = {ratio:e} is below the clip threshold {clip:e}")]
    Clipped { x: f64, ratio: f64, clip: f64 },
    #[error("quadrature on [{a}, {b}] failed: {reason}")]
    Quadrature { a: f64, b: f64, reason: String },
    #[error("non-finite {what} at x = {x}")]
    NonFinite { what: &'static str, x: f64 },
    #[error("grid too coarse: {n} nodes, need at least {needed}")]
    GridTooCoarse { n: usize, needed: usize },
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("array length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("propagation failed at step {step}: {reason}")]
    Propagation { step: usize, reason: String },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
}

impl Error {
    /// True for failures of the numerics themselves, as opposed to bad input.
    pub fn is_numeric(&self) -> bool {
        matches!(
            self,
            Error::Quadrature { .. } | Error::NonFinite { .. } | Error::Propagation { .. }
        )
    }
}
