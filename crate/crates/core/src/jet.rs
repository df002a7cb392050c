//! Second-order forward-mode jets.
//!
//! A [`Jet2`] carries a value together with its first and second derivative
//! with respect to a single scalar variable. Arithmetic and the elementary
//! functions propagate all three components with the usual calculus rules,
//! so evaluating a formula on the seed `(x, 1, 0)` yields `(f, f', f'')`
//! without any truncation error.

use std::ops::{Add, Div, Mul, Neg, Sub};

/// `(f, f', f'')` at a point.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Jet2 {
    pub value: f64,
    pub d1: f64,
    pub d2: f64,
}

impl Jet2 {
    pub const fn new(value: f64, d1: f64, d2: f64) -> Self {
        Self { value, d1, d2 }
    }

    /// The independent variable at `x`.
    pub const fn variable(x: f64) -> Self {
        Self::new(x, 1.0, 0.0)
    }

    pub const fn constant(c: f64) -> Self {
        Self::new(c, 0.0, 0.0)
    }

    pub fn is_finite(&self) -> bool {
        self.value.is_finite() && self.d1.is_finite() && self.d2.is_finite()
    }

    /// Compose with a scalar function `g`, given `g(v)`, `g'(v)`, `g''(v)`.
    #[inline]
    fn chain(self, g0: f64, g1: f64, g2: f64) -> Self {
        Self {
            value: g0,
            d1: g1 * self.d1,
            d2: g2 * self.d1 * self.d1 + g1 * self.d2,
        }
    }

    pub fn exp(self) -> Self {
        let e = self.value.exp();
        self.chain(e, e, e)
    }

    pub fn sin(self) -> Self {
        let (s, c) = self.value.sin_cos();
        self.chain(s, c, -s)
    }

    pub fn cos(self) -> Self {
        let (s, c) = self.value.sin_cos();
        self.chain(c, -s, -c)
    }

    pub fn tan(self) -> Self {
        let t = self.value.tan();
        let sec2 = 1.0 + t * t;
        self.chain(t, sec2, 2.0 * t * sec2)
    }

    pub fn sqrt(self) -> Self {
        let r = self.value.sqrt();
        let g1 = 0.5 / r;
        self.chain(r, g1, -0.5 * g1 / self.value)
    }

    pub fn ln(self) -> Self {
        let inv = self.value.recip();
        self.chain(self.value.ln(), inv, -inv * inv)
    }

    /// `self^p` for a constant exponent. Integer exponents go through
    /// `powi` so that small polynomials stay exact.
    pub fn powf(self, p: f64) -> Self {
        let v = self.value;
        if p == 0.0 {
            return Self::constant(1.0);
        }
        if p.fract() == 0.0 && p.abs() <= i32::MAX as f64 {
            let k = p as i32;
            let g0 = v.powi(k);
            let g1 = p * v.powi(k - 1);
            let g2 = if k == 1 { 0.0 } else { p * (p - 1.0) * v.powi(k - 2) };
            return self.chain(g0, g1, g2);
        }
        let g0 = v.powf(p);
        let g1 = p * v.powf(p - 1.0);
        let g2 = p * (p - 1.0) * v.powf(p - 2.0);
        self.chain(g0, g1, g2)
    }
}

impl From<f64> for Jet2 {
    fn from(c: f64) -> Self {
        Self::constant(c)
    }
}

impl Add for Jet2 {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.value + rhs.value, self.d1 + rhs.d1, self.d2 + rhs.d2)
    }
}

impl Sub for Jet2 {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.value - rhs.value, self.d1 - rhs.d1, self.d2 - rhs.d2)
    }
}

impl Mul for Jet2 {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self::new(
            self.value * rhs.value,
            self.d1 * rhs.value + self.value * rhs.d1,
            self.d2 * rhs.value + 2.0 * self.d1 * rhs.d1 + self.value * rhs.d2,
        )
    }
}

impl Div for Jet2 {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        // (u/w)' = (u' - q w')/w,  (u/w)'' = (u'' - 2 q' w' - q w'')/w
        let q = self.value / rhs.value;
        let q1 = (self.d1 - q * rhs.d1) / rhs.value;
        let q2 = (self.d2 - 2.0 * q1 * rhs.d1 - q * rhs.d2) / rhs.value;
        Self::new(q, q1, q2)
    }
}

impl Neg for Jet2 {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.value, -self.d1, -self.d2)
    }
}

impl Mul<f64> for Jet2 {
    type Output = Self;
    fn mul(self, rhs: f64) -> Self {
        Self::new(self.value * rhs, self.d1 * rhs, self.d2 * rhs)
    }
}
