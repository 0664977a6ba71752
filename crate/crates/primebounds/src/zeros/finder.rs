//! Zero finding on the critical line by sign changes of Z(t).

use super::hardy::{hardy_z, theta};
use super::ZeroList;
use crate::error::{Error, Result};
use crate::special_fn::zeta_em;
use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::PI;

/// Largest height the finder accepts.
pub const FINDER_HEIGHT_CAP: f64 = 2.5e4;
/// Coarsest requested accuracy accepted.
pub const FINDER_MIN_TOL: f64 = 1e-9;
const SCAN_START: f64 = 10.0;
/// Every ordinate is bisected to this width whatever tolerance the caller
/// asked for. Near t = 2·10⁴ the Riemann–Siegel sum carries about 10⁻¹⁰ of
/// rounding noise (phases of size 10⁵), so finer brackets are not meaningful.
const REFINE_WIDTH: f64 = 1e-9;
/// Midpoint-sampled S(t) = N(t) - θ(t)/π - 1 averaged over this many
/// consecutive gaps; a missed or spurious pair shifts the mean by ±2.
const S_WINDOW: usize = 40;
const S_MEAN_LIMIT: f64 = 1.0;
const ZETA_AT_ZERO_LIMIT: f64 = 1e-6;

/// All zeros 0 < γ ≤ t_max, each located to ±10⁻⁹ (hence to ±tol), with completeness checked through the Q(t) bound and the
/// running mean of S(t).
pub fn find_zeros(t_max: f64, tol: f64) -> Result<ZeroList> {
    if !(t_max > 0.0 && t_max <= FINDER_HEIGHT_CAP) {
        return Err(Error::Domain(format!("t_max must lie in (0, {FINDER_HEIGHT_CAP}], got {t_max}")));
    }
    if !(tol >= FINDER_MIN_TOL) {
        return Err(Error::Domain(format!("tol must be at least {FINDER_MIN_TOL}, got {tol}")));
    }
    let width = REFINE_WIDTH;
    let mut last_err = None;
    for refine in [1.0, 2.0, 4.0] {
        let ordinates = if t_max <= SCAN_START { Vec::new() } else { scan(SCAN_START, t_max, refine, width)? };
        let zl = ZeroList::new_unchecked(ordinates, t_max, "computed".into(), true);
        match zl.check_completeness().and_then(|_| s_mean_check(&zl.ordinates)) {
            Ok(()) => {
                verify(&zl.ordinates, width)?;
                return Ok(zl);
            }
            Err(e) => last_err = Some(e),
        }
    }
    Err(last_err.expect("at least one scan ran"))
}

/// A fifth of the mean gap 2π/log(t/2π), capped at 1/2 at low height.
fn scan_step(t: f64) -> f64 {
    let mean_gap = 2.0 * PI / (t / (2.0 * PI)).ln().max(1e-3);
    (0.2 * mean_gap).min(0.5)
}

fn scan(a: f64, b: f64, refine: f64, width: f64) -> Result<Vec<f64>> {
    let mut ts = vec![a];
    let mut t = a;
    while t < b {
        t = (t + scan_step(t) / refine).min(b);
        ts.push(t);
    }
    let zs = ts.par_iter().map(|&t| hardy_z(t)).collect::<Result<Vec<f64>>>()?;
    let mut found = Vec::new();
    for i in 1..ts.len() {
        if sign(zs[i - 1]) != sign(zs[i]) {
            found.push(bisect(ts[i - 1], ts[i], zs[i - 1], width)?);
        } else if i + 1 < ts.len() {
            let s = sign(zs[i]);
            let dips = sign(zs[i + 1]) == s && zs[i].abs() <= zs[i - 1].abs() && zs[i].abs() <= zs[i + 1].abs();
            if dips {
                if let Some(c) = probe_pair(ts[i - 1], ts[i + 1], s)? {
                    let z_lo = zs[i - 1];
                    let left = bisect(ts[i - 1], c, z_lo, width)?;
                    let right = bisect(c, ts[i + 1], -z_lo, width)?;
                    // The first of the pair may sit left of ts[i], where the
                    // previous interval did not see it; keep order.
                    found.push(left);
                    found.push(right);
                }
            }
        }
    }
    found.sort_by(|x, y| x.total_cmp(y));
    found.dedup_by(|x, y| (*x - *y).abs() < 4.0 * width);
    found.retain(|&g| g <= b);
    Ok(found)
}

fn sign(z: f64) -> bool {
    z >= 0.0
}

/// Bisection on a bracket [lo, hi] with Z(lo) of sign `z_lo`, down to `width`.
fn bisect(mut lo: f64, mut hi: f64, z_lo: f64, width: f64) -> Result<f64> {
    let s_lo = sign(z_lo);
    while hi - lo > width {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if sign(hardy_z(mid)?) == s_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Golden-section search for the extremum of Z between two samples of
/// sign `s`; returns a point where Z has the opposite sign, if one is met.
fn probe_pair(a: f64, b: f64, s: bool) -> Result<Option<f64>> {
    let g = |t: f64| -> Result<f64> {
        let z = hardy_z(t)?;
        Ok(if s { z } else { -z })
    };
    let r = 0.5 * (5f64.sqrt() - 1.0);
    let (mut lo, mut hi) = (a, b);
    let mut x1 = hi - r * (hi - lo);
    let mut x2 = lo + r * (hi - lo);
    let mut g1 = g(x1)?;
    let mut g2 = g(x2)?;
    for _ in 0..60 {
        if g1 < 0.0 {
            return Ok(Some(x1));
        }
        if g2 < 0.0 {
            return Ok(Some(x2));
        }
        if hi - lo < 1e-9 {
            break;
        }
        if g1 < g2 {
            hi = x2;
            x2 = x1;
            g2 = g1;
            x1 = hi - r * (hi - lo);
            g1 = g(x1)?;
        } else {
            lo = x1;
            x1 = x2;
            g1 = g2;
            x2 = lo + r * (hi - lo);
            g2 = g(x2)?;
        }
    }
    Ok(None)
}

/// S(t) = N(t) - θ(t)/π - 1 at midpoints between consecutive zeros,
/// averaged over sliding windows.
fn s_mean_check(ordinates: &[f64]) -> Result<()> {
    if ordinates.len() < S_WINDOW + 1 {
        return Ok(());
    }
    let s: Vec<f64> = ordinates
        .windows(2)
        .enumerate()
        .map(|(k, w)| {
            let m = 0.5 * (w[0] + w[1]);
            (k + 1) as f64 - theta(m) / PI - 1.0
        })
        .collect();
    let mut sum: f64 = s[..S_WINDOW].iter().sum();
    for k in S_WINDOW..=s.len() {
        let mean = sum / S_WINDOW as f64;
        if mean.abs() > S_MEAN_LIMIT {
            let t = ordinates[k];
            return Err(Error::MissedZero { t, count: k + 1, q: mean, limit: S_MEAN_LIMIT });
        }
        if k < s.len() {
            sum += s[k] - s[k - S_WINDOW];
        }
    }
    Ok(())
}

/// Each ordinate must bracket a sign change of Z within ±width and have
/// |ζ(1/2 + iγ)| below 10⁻⁶ by Euler–Maclaurin.
fn verify(ordinates: &[f64], width: f64) -> Result<()> {
    ordinates.par_iter().try_for_each(|&g| {
        let a = hardy_z(g - width)?;
        let b = hardy_z(g + width)?;
        if sign(a) == sign(b) {
            return Err(Error::PrecisionUnreachable { target: width, achieved: f64::NAN });
        }
        let z = zeta_em(Complex64::new(0.5, g), 1e-7)?;
        let bound = z.value.norm() + z.abs_error;
        if bound >= ZETA_AT_ZERO_LIMIT {
            return Err(Error::PrecisionUnreachable { target: ZETA_AT_ZERO_LIMIT, achieved: bound });
        }
        Ok(())
    })
}
