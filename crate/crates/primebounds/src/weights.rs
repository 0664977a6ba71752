//! The weights ω⁺_{T,σ} and θ_{T,σ} of the explicit formula, the model
//! function F on the critical line, and the integrals that bound their
//! total size over zeros.

use crate::error::{Error, Result};
use crate::quad::simpson;
use crate::special_fn::{coth_real, cot_stable, zeta_even, zeta_even_minus_one};
use num_complex::Complex64;
use std::f64::consts::{E, PI};

const QUAD_TOL: f64 = 1e-9;
/// The integrands are split just short of t = T.
const END_SPLIT: f64 = 1e-6;
/// Below this distance from the removable points the series is used.
const SERIES_RADIUS: f64 = 0.1;
const SERIES_TERMS: usize = 16;
const KONSTANZ_TERMS: usize = 50;
const TREMIC_SAMPLES: usize = 1000;

/// Height, abscissa and the derived constants λ = 2π(σ−1)/T and
/// c_{T,σ} = θ(1+iT) cot πθ(1+iT) = (u coth u)/π with u = π(σ−1)/T.
#[derive(Clone, Copy, Debug)]
pub struct WeightContext {
    t_height: f64,
    sigma: f64,
    lambda: f64,
    c: Complex64,
    limit_branch: bool,
}

impl WeightContext {
    pub fn new(t_height: f64, sigma: f64) -> Result<Self> {
        if !(t_height > 0.0 && t_height.is_finite()) || !sigma.is_finite() {
            return Err(Error::Domain(format!("need T > 0 and finite σ, got T = {t_height}, σ = {sigma}")));
        }
        let lambda = 2.0 * PI * (sigma - 1.0) / t_height;
        let u = PI * (sigma - 1.0) / t_height;
        // σ = 1: the limit of u cot u is 1, so c = 1/π.
        let limit_branch = u == 0.0;
        let c = if limit_branch { 1.0 / PI } else { u * coth_real(u) / PI };
        Ok(WeightContext { t_height, sigma, lambda, c: Complex64::new(c, 0.0), limit_branch })
    }

    pub fn t_height(&self) -> f64 {
        self.t_height
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn c(&self) -> Complex64 {
        self.c
    }

    /// True when σ = 1 and c is the analytic limit 1/π.
    pub fn is_limit_branch(&self) -> bool {
        self.limit_branch
    }
}

/// θ_{T,σ}(s) = 1 − (s − σ)/(iT).
pub fn theta(ctx: &WeightContext, s: Complex64) -> Complex64 {
    1.0 - (s - ctx.sigma) / Complex64::new(0.0, ctx.t_height)
}

/// θ_{T,1}(s) = 1 − (s − 1)/(iT).
pub fn theta_one(t_height: f64, s: Complex64) -> Complex64 {
    1.0 - (s - 1.0) / Complex64::new(0.0, t_height)
}

/// 1/(πu) − cot πu = (2/π) Σ ζ(2k) u^{2k−1}, for |u| < 1/2.
fn inv_minus_cot_series(u: Complex64) -> Complex64 {
    let u2 = u * u;
    let mut pow = u;
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 1..=SERIES_TERMS {
        acc += pow * zeta_even(k);
        pow *= u2;
    }
    acc * (2.0 / PI)
}

/// u cot πu, equal to 1/π at u = 0; pole error at nonzero integers.
fn u_cot(u: Complex64) -> Result<Complex64> {
    if u.norm() < SERIES_RADIUS {
        return Ok(1.0 / PI - u * inv_minus_cot_series(u));
    }
    Ok(u * cot_stable(u)?)
}

/// ω⁺_{T,σ}(s) = −θ cot πθ + c_{T,σ} with θ = θ_{T,σ}(s).
pub fn omega_plus(ctx: &WeightContext, s: Complex64) -> Result<Complex64> {
    let th = theta(ctx, s);
    Ok(ctx.c - u_cot(th)?)
}

/// F(z) = 1/π − (1−z) cot π(1−z) and A(z) = F(z) − 1/(πz).
///
/// F(1) = 0 and A(0) = 0 are filled in; F has a pole at z = 0 and at every
/// integer other than 1.
pub fn f_and_a(z: Complex64) -> Result<(Complex64, Complex64)> {
    if z == Complex64::new(0.0, 0.0) {
        return Err(Error::Pole { what: "F", at: format!("{z}") });
    }
    let f = big_f(z)?;
    let a = if z.norm() < SERIES_RADIUS { small_a(z) } else { f - 1.0 / (PI * z) };
    Ok((f, a))
}

/// A(z) alone, continuous through A(0) = 0.
pub fn a_fn(z: Complex64) -> Result<Complex64> {
    if z.norm() < SERIES_RADIUS {
        return Ok(small_a(z));
    }
    f_and_a(z).map(|(_, a)| a)
}

/// A(z) = −(1−z)(1/(πz) − cot πz).
fn small_a(z: Complex64) -> Complex64 {
    -(1.0 - z) * inv_minus_cot_series(z)
}

/// Near z = 1 the series in w = 1 − z (exact there); elsewhere
/// 1/π + (1 − z) cot πz, which keeps full relative accuracy as z → 0.
fn big_f(z: Complex64) -> Result<Complex64> {
    let w = 1.0 - z;
    if w.norm() < SERIES_RADIUS {
        return Ok(1.0 / PI - u_cot(w)?);
    }
    Ok(1.0 / PI + w * cot_stable(z)?)
}

/// F on the real axis.
pub fn f_real(x: f64) -> Result<f64> {
    big_f(Complex64::new(x, 0.0)).map(|v| v.re)
}

/// Which approximation of ω⁺ + ξθ_{T,1}i on the critical line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SplitForm {
    /// F(t/T) + ξ(1 − t/T)i, valid for 0 < t ≤ T.
    Model,
    /// iT/((s − σ)π), valid for 0 < t ≤ T/2.
    Polar,
}

/// Exact ω⁺_{T,σ}(s) + ξθ_{T,1}(s)i at s = 1/2 + it, its approximation by
/// `form`, and the radius that bounds their difference.
pub fn weight_split_error(
    ctx: &WeightContext,
    t: f64,
    xi: f64,
    form: SplitForm,
) -> Result<(Complex64, Complex64, f64)> {
    let t_height = ctx.t_height;
    let dist = (ctx.sigma - 0.5).abs();
    if !(t > 0.0 && t <= t_height) {
        return Err(Error::Domain(format!("need 0 < t ≤ T, got t = {t}, T = {t_height}")));
    }
    if !(-1.0..=1.0).contains(&xi) {
        return Err(Error::Domain(format!("ξ must lie in [−1, 1], got {xi}")));
    }
    if dist > t_height / 2.0 {
        return Err(Error::Domain(format!("need |σ − 1/2| ≤ T/2, got σ = {}", ctx.sigma)));
    }
    if form == SplitForm::Polar && t > t_height / 2.0 {
        return Err(Error::Domain(format!("the polar form needs t ≤ T/2, got t = {t}")));
    }
    let s = Complex64::new(0.5, t);
    let i = Complex64::i();
    let exact = omega_plus(ctx, s)? + i * theta_one(t_height, s) * xi;
    let shared = (2.78 * dist + 1.0) / t_height;
    let (approx, radius) = match form {
        SplitForm::Model => {
            let u = t / t_height;
            let approx = Complex64::new(f_real(u)?, xi * (1.0 - u));
            (approx, dist * t_height / (PI * t * t) + shared)
        }
        SplitForm::Polar => (i * t_height / ((s - ctx.sigma) * PI), 1.0 + shared),
    };
    Ok((exact, approx, radius))
}

/// √(F(u)² + (1−u)²), the size of the model weight at u = t/T.
fn model_norm(u: f64) -> f64 {
    let f = f_real(u).unwrap_or(f64::NAN);
    f.hypot(1.0 - u)
}

fn check_heights(t_height: f64, t0: f64) -> Result<()> {
    if !(t0 >= 2.0 * PI && t_height >= t0 && t_height.is_finite()) {
        return Err(Error::Domain(format!("need T ≥ t0 ≥ 2π, got T = {t_height}, t0 = {t0}")));
    }
    Ok(())
}

/// ∫_{t0}^{T} of `g(t)·√(F(t/T)² + (1−t/T)²)` times 2π/T.
fn integrate_model(t_height: f64, t0: f64, g: impl Fn(f64) -> f64) -> Result<f64> {
    let integrand = |t: f64| model_norm(t / t_height) * g(t);
    let split = (t_height * (1.0 - END_SPLIT)).max(t0);
    let panels = ((t_height / t0).log2().ceil() as usize).clamp(8, 64);
    let body = simpson(integrand, t0, split, QUAD_TOL, panels)?;
    let end = simpson(integrand, split, t_height, QUAD_TOL, 1)?;
    let v = 2.0 * PI / t_height * (body + end);
    if !v.is_finite() {
        return Err(Error::Quadrature(format!("non-finite weighted integral at T = {t_height}, t0 = {t0}")));
    }
    Ok(v)
}

/// (2π/T)∫_{t0}^{T} √(F(t/T)² + (1−t/T)²) log(t/2π) dt, the bound
/// log²(T/2π) − log²(t0/2π), and, when t0 ≥ 2πe and T ≥ 3t0, the sharper
/// bound that also subtracts 2C₁ log(eT/2π) − 2C₂.
pub fn weighted_log_integral(t_height: f64, t0: f64) -> Result<(f64, f64, Option<f64>)> {
    check_heights(t_height, t0)?;
    let q = integrate_model(t_height, t0, |t| (t / (2.0 * PI)).ln())?;
    let lt = (t_height / (2.0 * PI)).ln();
    let l0 = (t0 / (2.0 * PI)).ln();
    let loose = lt * lt - l0 * l0;
    let sharp = (t0 >= 2.0 * PI * E && t_height >= 3.0 * t0)
        .then(|| loose - 2.0 * constants_c(1).unwrap() * (lt + 1.0) + 2.0 * constants_c(2).unwrap());
    Ok((q, loose, sharp))
}

/// (2π/T)∫_{t0}^{T} √(F(t/T)² + (1−t/T)²) dt/t and the bound 2/t0 − 2/T.
pub fn weighted_inv_integral(t_height: f64, t0: f64) -> Result<(f64, f64)> {
    check_heights(t_height, t0)?;
    let q = integrate_model(t_height, t0, |t| 1.0 / t)?;
    Ok((q, 2.0 / t0 - 2.0 / t_height))
}

/// C_k = Σ_n ζ(2n)(1/(2n)^k − 2/(2n+1)^k + 1/(2n+2)^k) for k = 1, 2.
///
/// The ζ(2n) = 1 part sums in closed form (3/2 − 2 log 2 and 7/4 − π²/6);
/// the rest decays like 4^{−n}.
pub fn constants_c(k: u32) -> Result<f64> {
    let closed = match k {
        1 => 1.5 - 2.0 * std::f64::consts::LN_2,
        2 => 1.75 - PI * PI / 6.0,
        _ => return Err(Error::Domain(format!("C_k is provided for k = 1, 2, got {k}"))),
    };
    let kk = k as i32;
    let mut acc = 0.0;
    for n in (1..=KONSTANZ_TERMS).rev() {
        let m = 2.0 * n as f64;
        let shape = m.powi(-kk) - 2.0 * (m + 1.0).powi(-kk) + (m + 2.0).powi(-kk);
        acc += zeta_even_minus_one(n) * shape;
    }
    Ok(closed + acc)
}

fn tremic_parts(n: u64, t: f64) -> (f64, f64) {
    let m = 2.0 * n as f64;
    let base = (1.0 - t) * (1.0 - t);
    let lin = 1.0 / m - 2.0 * t / (m + 1.0) + t * t / (m + 2.0);
    let sq = 1.0 / (m * m) - 2.0 * t / ((m + 1.0) * (m + 1.0)) + t * t / ((m + 2.0) * (m + 2.0));
    (base - lin, base - 2.0 * lin + sq)
}

/// a_n(t) = (1−t)² − (1/(2n) − 2t/(2n+1) + t²/(2n+2)).
pub fn tremic_a(n: u64, t: f64) -> f64 {
    tremic_parts(n, t).0
}

/// b_n(t) = (1−t)² − 2(1/(2n) − 2t/(2n+1) + t²/(2n+2))
/// + (1/(2n)² − 2t/(2n+1)² + t²/(2n+2)²).
pub fn tremic_b(n: u64, t: f64) -> f64 {
    tremic_parts(n, t).1
}

/// Samples a_n on [0, 1/2] and b_n on [0, 1/3] at 1000 points each for
/// 1 ≤ n ≤ n_max; true when no sample falls below −10⁻¹⁵.
pub fn tremic_check(n_max: u64) -> Result<bool> {
    if n_max < 1 {
        return Err(Error::Domain("n_max must be at least 1".into()));
    }
    let last = (TREMIC_SAMPLES - 1) as f64;
    for n in 1..=n_max {
        for j in 0..TREMIC_SAMPLES {
            let r = j as f64 / last;
            if tremic_a(n, 0.5 * r) < -1e-15 || tremic_b(n, r / 3.0) < -1e-15 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
