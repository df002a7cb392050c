use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Uniform grid `x_i = x_lo + i h`, `h = (x_hi - x_lo)/(n - 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid1D {
    x_lo: f64,
    x_hi: f64,
    n: usize,
}

impl Grid1D {
    pub fn new(x_lo: f64, x_hi: f64, n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidGrid(format!("need n >= 3, got {n}")));
        }
        if !(x_lo.is_finite() && x_hi.is_finite()) {
            return Err(Error::InvalidGrid(format!("non-finite bounds [{x_lo}, {x_hi}]")));
        }
        if x_lo >= x_hi {
            return Err(Error::InvalidGrid(format!("x_lo = {x_lo} must be below x_hi = {x_hi}")));
        }
        Ok(Self { x_lo, x_hi, n })
    }

    pub fn x_lo(&self) -> f64 {
        self.x_lo
    }

    pub fn x_hi(&self) -> f64 {
        self.x_hi
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn spacing(&self) -> f64 {
        (self.x_hi - self.x_lo) / (self.n - 1) as f64
    }

    pub fn x(&self, i: usize) -> f64 {
        if i + 1 == self.n {
            self.x_hi
        } else {
            self.x_lo + i as f64 * self.spacing()
        }
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.x(i)).collect()
    }

    /// Index of the node closest to `x` (clamped to the grid).
    pub fn nearest(&self, x: f64) -> usize {
        let t = ((x - self.x_lo) / self.spacing()).round();
        t.clamp(0.0, (self.n - 1) as f64) as usize
    }
}
