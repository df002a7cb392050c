//! Adaptive Gauss–Kronrod (G7/K15) integration.
//!
//! Panels are bisected, largest error estimate first, until the summed
//! estimate `sum |K15 - G7|` drops below `tol * |integral| + ABS_FLOOR`.
//! The accepted panels are summed left to right so the result does not
//! depend on the refinement order.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

pub const ABS_FLOOR: f64 = 1e-14;
pub const MAX_LEVELS: u32 = 60;
const MAX_PANELS: usize = 1 << 18;

// Positive half of the 15-point Kronrod abscissae; odd indices are the 7-point Gauss nodes.
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];

const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];

const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    level: u32,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.a.total_cmp(&self.a))
    }
}

/// One G7/K15 panel: `(kronrod estimate, |kronrod - gauss|)`.
fn gk15<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> Result<(f64, f64)> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    check(fc, center, a, b)?;
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for (j, (&x, &w)) in XGK.iter().zip(WGK.iter()).take(7).enumerate() {
        let dx = half * x;
        let (lo, hi) = (center - dx, center + dx);
        let (f1, f2) = (f(lo), f(hi));
        check(f1, lo, a, b)?;
        check(f2, hi, a, b)?;
        kronrod += w * (f1 + f2);
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    Ok((kronrod * half, ((kronrod - gauss) * half).abs()))
}

fn check(v: f64, x: f64, a: f64, b: f64) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(Error::Quadrature {
            a,
            b,
            reason: format!("integrand is {v} at x = {x}"),
        })
    }
}

/// Integrate `f` over `[a, b]` (either orientation) to relative tolerance `tol`.
pub fn integrate<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, tol: f64) -> Result<f64> {
    if !(tol > 0.0) {
        return Err(Error::InvalidConfig(format!("quadrature tolerance must be positive, got {tol}")));
    }
    if a == b {
        return Ok(0.0);
    }
    if a > b {
        return integrate(f, b, a, tol).map(|v| -v);
    }
    let (value, error) = gk15(&mut f, a, b)?;
    let mut heap = BinaryHeap::new();
    heap.push(Panel { a, b, value, error, level: 0 });
    let mut total = value;
    let mut total_err = error;
    while total_err > tol * total.abs() + ABS_FLOOR {
        let worst = heap.pop().expect("heap never empties");
        if worst.level >= MAX_LEVELS || heap.len() + 2 > MAX_PANELS {
            return Err(Error::Quadrature {
                a,
                b,
                reason: format!(
                    "no convergence after {} bisection levels (error {:e} near [{}, {}])",
                    worst.level, total_err, worst.a, worst.b
                ),
            });
        }
        let mid = 0.5 * (worst.a + worst.b);
        let (v1, e1) = gk15(&mut f, worst.a, mid)?;
        let (v2, e2) = gk15(&mut f, mid, worst.b)?;
        total += v1 + v2 - worst.value;
        total_err += e1 + e2 - worst.error;
        let level = worst.level + 1;
        heap.push(Panel { a: worst.a, b: mid, value: v1, error: e1, level });
        heap.push(Panel { a: mid, b: worst.b, value: v2, error: e2, level });
        // running sums drift; resynchronise occasionally
        if heap.len() % 64 == 0 {
            total = heap.iter().map(|p| p.value).sum();
            total_err = heap.iter().map(|p| p.error).sum();
        }
    }
    let mut panels = heap.into_vec();
    panels.sort_by(|p, q| p.a.total_cmp(&q.a));
    Ok(panels.iter().map(|p| p.value).sum())
}
