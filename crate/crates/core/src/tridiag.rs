use num_complex::Complex64;

use crate::error::{Error, Result};

/// LU factors of a complex tridiagonal matrix (Thomas algorithm without pivoting).
#[derive(Debug, Clone)]
pub struct Tridiagonal {
    sub: Vec<Complex64>,
    diag: Vec<Complex64>,
    sup: Vec<Complex64>,
    /// Modified super-diagonal `c'_j`.
    upper: Vec<Complex64>,
    inv_pivot: Vec<Complex64>,
}

impl Tridiagonal {
    /// `sub[j]` is `A[j+1][j]`, `sup[j]` is `A[j][j+1]`.
    pub fn factor(sub: &[Complex64], diag: &[Complex64], sup: &[Complex64]) -> Result<Self> {
        let m = diag.len();
        if m == 0 || sub.len() + 1 != m || sup.len() + 1 != m {
            return Err(Error::LengthMismatch { left: diag.len(), right: sub.len() + 1 });
        }
        let mut upper = vec![Complex64::new(0.0, 0.0); m.saturating_sub(1)];
        let mut inv_pivot = Vec::with_capacity(m);
        for j in 0..m {
            let pivot = if j == 0 { diag[0] } else { diag[j] - sub[j - 1] * upper[j - 1] };
            if pivot.norm() == 0.0 || !pivot.is_finite() {
                return Err(Error::Propagation { step: 0, reason: format!("zero pivot at row {j}") });
            }
            let inv = pivot.inv();
            if j + 1 < m {
                upper[j] = sup[j] * inv;
            }
            inv_pivot.push(inv);
        }
        Ok(Self { sub: sub.to_vec(), diag: diag.to_vec(), sup: sup.to_vec(), upper, inv_pivot })
    }

    pub fn len(&self) -> usize {
        self.inv_pivot.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inv_pivot.is_empty()
    }

    /// `A x`.
    pub fn apply(&self, x: &[Complex64]) -> Vec<Complex64> {
        let m = self.len();
        (0..m)
            .map(|j| {
                let mut y = self.diag[j] * x[j];
                if j > 0 {
                    y += self.sub[j - 1] * x[j - 1];
                }
                if j + 1 < m {
                    y += self.sup[j] * x[j + 1];
                }
                y
            })
            .collect()
    }

    /// Solve, then correct once with the residual against the stored matrix.
    ///
    /// Rounding in the factors is the same at every solve, so repeated solves
    /// (time stepping) accumulate it as a systematic bias; one refinement
    /// step removes it to the level of the residual's own rounding.
    pub fn solve_refined(&self, rhs: &mut [Complex64]) {
        let b = rhs.to_vec();
        self.solve_in_place(rhs);
        let mut r: Vec<Complex64> = b.iter().zip(self.apply(rhs)).map(|(b, ax)| b - ax).collect();
        self.solve_in_place(&mut r);
        for (x, d) in rhs.iter_mut().zip(r) {
            *x += d;
        }
    }

    /// Overwrite `rhs` with the solution.
    pub fn solve_in_place(&self, rhs: &mut [Complex64]) {
        let m = self.len();
        debug_assert_eq!(rhs.len(), m);
        rhs[0] *= self.inv_pivot[0];
        for j in 1..m {
            rhs[j] = (rhs[j] - self.sub[j - 1] * rhs[j - 1]) * self.inv_pivot[j];
        }
        for j in (0..m - 1).rev() {
            let next = rhs[j + 1];
            rhs[j] -= self.upper[j] * next;
        }
    }
}
