//! Central finite-difference stencils on uniform grids. All take the centre
//! index `i` and assume the needed neighbours exist.

#[inline]
pub fn d1_3(f: &[f64], i: usize, h: f64) -> f64 {
    (f[i + 1] - f[i - 1]) / (2.0 * h)
}

#[inline]
pub fn d2_3(f: &[f64], i: usize, h: f64) -> f64 {
    (f[i - 1] - 2.0 * f[i] + f[i + 1]) / (h * h)
}

#[inline]
pub fn d1_5(f: &[f64], i: usize, h: f64) -> f64 {
    (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]) / (12.0 * h)
}

#[inline]
pub fn d2_5(f: &[f64], i: usize, h: f64) -> f64 {
    (-f[i - 2] + 16.0 * f[i - 1] - 30.0 * f[i] + 16.0 * f[i + 1] - f[i + 2]) / (12.0 * h * h)
}
