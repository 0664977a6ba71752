//! Adaptive Simpson quadrature for real and complex integrands.

use crate::error::{Error, Result};
use num_complex::Complex64;
use std::ops::{Add, Mul, Sub};

/// Values an integrand may return.
pub trait QuadValue: Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> {
    fn zero() -> Self;
    fn magnitude(self) -> f64;
}

impl QuadValue for f64 {
    fn zero() -> Self {
        0.0
    }
    fn magnitude(self) -> f64 {
        self.abs()
    }
}

impl QuadValue for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn magnitude(self) -> f64 {
        self.norm()
    }
}

const MAX_DEPTH: u32 = 48;

/// Integrates `f` over `[a, b]` to absolute tolerance `tol`.
///
/// The interval is first cut into `panels` equal pieces so that oscillatory
/// integrands are sampled densely enough before the adaptive test kicks in;
/// the tolerance is shared out in proportion to panel length.
pub fn simpson<T, F>(f: F, a: f64, b: f64, tol: f64, panels: usize) -> Result<T>
where
    T: QuadValue,
    F: Fn(f64) -> T,
{
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::Quadrature(format!("non-finite limits [{a}, {b}]")));
    }
    if a == b {
        return Ok(T::zero());
    }
    let panels = panels.max(1);
    let h = (b - a) / panels as f64;
    let mut total = T::zero();
    for k in 0..panels {
        let lo = a + h * k as f64;
        let hi = if k + 1 == panels { b } else { lo + h };
        let flo = f(lo);
        let fhi = f(hi);
        let mid = 0.5 * (lo + hi);
        let fmid = f(mid);
        let whole = (flo + fmid * 4.0 + fhi) * ((hi - lo) / 6.0);
        total = total + step(&f, lo, hi, flo, fmid, fhi, whole, tol / panels as f64, MAX_DEPTH)?;
    }
    Ok(total)
}

#[allow(clippy::too_many_arguments)]
fn step<T, F>(f: &F, a: f64, b: f64, fa: T, fm: T, fb: T, whole: T, tol: f64, depth: u32) -> Result<T>
where
    T: QuadValue,
    F: Fn(f64) -> T,
{
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = (fa + flm * 4.0 + fm) * ((m - a) / 6.0);
    let right = (fm + frm * 4.0 + fb) * ((b - m) / 6.0);
    let diff = left + right - whole;
    // Past the rounding floor of the panel sum further halving cannot help.
    let floor = 1e-15 * (left + right).magnitude();
    if diff.magnitude() <= (15.0 * tol).max(floor) || (b - a).abs() < 1e-14 * (1.0 + a.abs()) {
        return Ok(left + right + diff * (1.0 / 15.0));
    }
    if depth == 0 {
        return Err(Error::Quadrature(format!(
            "depth limit on [{a}, {b}], local error {:e}",
            diff.magnitude()
        )));
    }
    let l = step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)?;
    let r = step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)?;
    Ok(l + r)
}

/// Gauss–Legendre nodes and weights on `[-1, 1]`, by Newton iteration on
/// the Legendre recurrence.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            if n == 1 {
                p0 = 1.0;
                p1 = x;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        out.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
    }
    out
}

/// Composite Gauss–Legendre rule with `panels` equal panels of `nodes` points.
pub fn gauss_panels<T, F>(f: F, a: f64, b: f64, panels: usize, rule: &[(f64, f64)]) -> T
where
    T: QuadValue,
    F: Fn(f64) -> T,
{
    let h = (b - a) / panels as f64;
    let mut total = T::zero();
    for k in 0..panels {
        let c = a + h * (k as f64 + 0.5);
        let mut acc = T::zero();
        for &(x, w) in rule {
            acc = acc + f(c + 0.5 * h * x) * w;
        }
        total = total + acc * (0.5 * h);
    }
    total
}
