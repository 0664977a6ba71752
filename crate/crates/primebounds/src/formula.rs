//! The finite explicit formula for A(s) = −ζ′/ζ: the terms of the bound on
//! Σ_{n≤x} Λ(n)n^{−σ}/x^{1−σ}, the closed-form estimates behind them, the
//! counterexample showing the π/T error is sharp, and a numerical check of
//! the Fourier–Perron identity.

use crate::error::{Error, Result};
use crate::extremal::{phi_hat, phi_weight, sinc_sq, ApproximantParams};
use crate::quad::{gauss_legendre, gauss_panels, simpson};
use crate::special_fn::{coth_real, fejer, log_deriv_zeta, log_deriv_zeta_slope, zeta_em, EULER_GAMMA, LOG_2PI};
use crate::summation::Neumaier;
use crate::weights::{constants_c, omega_plus, theta_one, WeightContext};
use crate::zeros::ZeroList;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::f64::consts::{E, PI, SQRT_2};
use std::io::Write;

/// Smallest height accepted by the bound assembly.
pub const MIN_HEIGHT: f64 = 4.0 * PI;
/// From this height on, the closed-form zero-sum bound is proved.
pub const CLOSED_FORM_HEIGHT: f64 = 1e7;
/// Lower end of the height range covered by the literal I₊,C bound.
pub const HARDIN_HEIGHT: f64 = 1e6;
pub const SIGMA_MIN: f64 = -1.999;
pub const SIGMA_MAX: f64 = 100.0;
/// Direct summation ceiling for the counterexample.
pub const COUNTEREXAMPLE_CEILING: f64 = 1e9;
/// ξ grid for the absolute zero sum.
pub const XI_GRID: [f64; 5] = [-1.0, -0.5, 0.0, 0.5, 1.0];

const TRIVIAL_TAIL: f64 = 1e-30;
const CHUNK: u64 = 1 << 16;

fn domain(msg: String) -> Error {
    Error::Domain(msg)
}

// ---------------------------------------------------------------------------
// Decimal output

/// `v` in positional decimal notation with 17 significant digits, which
/// parses back to the same double.
pub fn decimal17(v: f64) -> String {
    if !v.is_finite() {
        return v.to_string();
    }
    if v == 0.0 {
        return "0.0000000000000000".into();
    }
    let sci = format!("{:.16e}", v.abs());
    let (mant, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("exponent");
    let digits: String = mant.chars().filter(|c| c.is_ascii_digit()).collect();
    let sign = if v < 0.0 { "-" } else { "" };
    let body = if exp >= 16 {
        format!("{digits}{}", "0".repeat((exp - 16) as usize))
    } else if exp >= 0 {
        let k = exp as usize + 1;
        format!("{}.{}", &digits[..k], &digits[k..])
    } else {
        format!("0.{}{digits}", "0".repeat((-exp - 1) as usize))
    };
    format!("{sign}{body}")
}

fn ser_dec<S: Serializer>(v: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&decimal17(*v))
}

fn ser_dec_opt<S: Serializer>(v: &Option<f64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(v) => s.serialize_str(&decimal17(*v)),
        None => s.serialize_none(),
    }
}

fn de_dec<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<f64, D::Error> {
    let s = String::deserialize(d)?;
    s.parse().map_err(serde::de::Error::custom)
}

fn de_dec_opt<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Option<f64>, D::Error> {
    match Option::<String>::deserialize(d)? {
        Some(s) => s.parse().map(Some).map_err(serde::de::Error::custom),
        None => Ok(None),
    }
}

// ---------------------------------------------------------------------------
// Real poles

/// Contributions of the trivial zeros −2n.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrivialZeroTerms {
    /// Σ_n coth(π(2n+σ)/T) x^{−2n−1}.
    pub weighted: f64,
    /// Σ_n x^{−2n−1} = 1/(x³(1 − x⁻²)).
    pub plain: f64,
    /// (1/(2+σ) + 2π/T)/(x³(1 − x⁻²)), which bounds (π/T)(weighted + plain).
    pub bound: f64,
}

pub fn trivial_zero_terms(t_height: f64, sigma: f64, x: f64) -> Result<TrivialZeroTerms> {
    if !(sigma > -2.0) {
        return Err(domain(format!("trivial-zero bound needs σ > −2, got {sigma}")));
    }
    if !(x > 1.0) || !(t_height > 0.0) {
        return Err(domain(format!("need x > 1 and T > 0, got x = {x}, T = {t_height}")));
    }
    let inv_x2 = x.powi(-2);
    let plain = 1.0 / (x.powi(3) * (1.0 - inv_x2));
    let mut weighted = Neumaier::new();
    let mut pow = 1.0 / x;
    for n in 1.. {
        pow *= inv_x2;
        if pow == 0.0 {
            break;
        }
        let term = coth_real(PI * (2.0 * n as f64 + sigma) / t_height) * pow;
        weighted.add(term);
        // The terms decrease at least geometrically with ratio x⁻².
        if term / (1.0 - inv_x2) < TRIVIAL_TAIL {
            break;
        }
    }
    let bound = (1.0 / (2.0 + sigma) + 2.0 * PI / t_height) * plain;
    Ok(TrivialZeroTerms { weighted: weighted.value(), plain, bound })
}

// ---------------------------------------------------------------------------
// Sums over nontrivial zeros

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZeroSumMode {
    /// The signed sum of the formula and the radius of its O* companion.
    ExactSigned,
    /// (2π/T) Σ |ω⁺(ρ) + ξθ_{T,1}(ρ)i|, maximised over `XI_GRID`.
    AbsBound,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ZeroSum {
    /// value = (2π/T) Im Σ ω⁺(ρ)x^{ρ−1}·(−1) and
    /// radius = (2π/T) |Re Σ θ_{T,1}(ρ)x^{ρ−1}·(−1)|.
    Signed { value: f64, radius: f64 },
    /// The maximum over ξ and the ξ attaining it.
    Abs { value: f64, xi: f64 },
}

impl ZeroSum {
    pub fn value(&self) -> f64 {
        match *self {
            ZeroSum::Signed { value, .. } | ZeroSum::Abs { value, .. } => value,
        }
    }
}

fn check_zeros(zl: &ZeroList, t_height: f64) -> Result<()> {
    if zl.t_max() < t_height {
        return Err(Error::HeightExceeded { t: t_height, t_max: zl.t_max() });
    }
    if !zl.rh_assumed() {
        return Err(domain(format!("zero list {} does not assert RH up to its height", zl.source())));
    }
    Ok(())
}

/// Ordinates γ with lo < γ < hi.
fn ordinates_between(zl: &ZeroList, lo: f64, hi: f64) -> &[f64] {
    let g = zl.ordinates();
    let a = g.partition_point(|&v| v <= lo);
    let b = g.partition_point(|&v| v < hi);
    &g[a..b.max(a)]
}

/// Sums a per-zero map in parallel; the addition order is fixed, so the
/// result does not depend on the thread count.
fn ordered_sum<F>(gammas: &[f64], f: F) -> Result<Neumaier>
where
    F: Fn(f64) -> Result<f64> + Sync,
{
    let terms: Vec<f64> = gammas.par_iter().map(|&g| f(g)).collect::<Result<_>>()?;
    Ok(terms.into_iter().collect())
}

/// (2π/T) Σ_{lo<γ<hi} |ω⁺_{T,σ}(ρ) + ξθ_{T,1}(ρ)i| for ρ = 1/2 + iγ.
pub fn weighted_abs_sum(zl: &ZeroList, ctx: &WeightContext, xi: f64, lo: f64, hi: f64) -> Result<f64> {
    let t = ctx.t_height();
    check_zeros(zl, hi.min(t))?;
    let gammas = ordinates_between(zl, lo.max(0.0), hi.min(t));
    let i = Complex64::new(0.0, 1.0);
    let sum = ordered_sum(gammas, |g| {
        let rho = Complex64::new(0.5, g);
        Ok((omega_plus(ctx, rho)? + i * xi * theta_one(t, rho)).norm())
    })?;
    Ok(2.0 * PI / t * sum.value())
}

pub fn nontrivial_zero_sum(zl: &ZeroList, ctx: &WeightContext, x: f64, mode: ZeroSumMode) -> Result<ZeroSum> {
    let t = ctx.t_height();
    check_zeros(zl, t)?;
    if !(x > 0.0) {
        return Err(domain(format!("need x > 0, got {x}")));
    }
    match mode {
        ZeroSumMode::AbsBound => {
            let mut best = (f64::NEG_INFINITY, 0.0);
            for xi in XI_GRID {
                let v = weighted_abs_sum(zl, ctx, xi, 0.0, t)?;
                if v > best.0 {
                    best = (v, xi);
                }
            }
            Ok(ZeroSum::Abs { value: best.0, xi: best.1 })
        }
        ZeroSumMode::ExactSigned => {
            let gammas = ordinates_between(zl, 0.0, t);
            let lx = x.ln();
            let scale = x.powf(-0.5);
            // x^{ρ−1} = x^{−1/2} e^{iγ log x}; the residue at each zero is −1.
            let power = |g: f64| Complex64::from_polar(scale, g * lx);
            let im = ordered_sum(gammas, |g| {
                let rho = Complex64::new(0.5, g);
                Ok(-(omega_plus(ctx, rho)? * power(g)).im)
            })?;
            let re = ordered_sum(gammas, |g| {
                let rho = Complex64::new(0.5, g);
                Ok(-(theta_one(t, rho) * power(g)).re)
            })?;
            Ok(ZeroSum::Signed { value: 2.0 * PI / t * im.value(), radius: 2.0 * PI / t * re.value().abs() })
        }
    }
}

/// (1/2π)log²(T/2π) − (1.01/6π)log(T/2π), valid for T ≥ 10⁷ and
/// |σ − 1/2| ≤ 100.
pub fn vihuela_bound(t_height: f64) -> f64 {
    let l = (t_height / (2.0 * PI)).ln();
    l * l / (2.0 * PI) - 1.01 / (6.0 * PI) * l
}

/// (1/2π)log²(T/2π) − (1/6π)log(T/2π), the factor of √x in the ψ bound.
pub fn psi_zero_factor(t_height: f64) -> f64 {
    let l = (t_height / (2.0 * PI)).ln();
    l * l / (2.0 * PI) - l / (6.0 * PI)
}

/// Bound on the weighted sum over zeros with t0 < γ ≤ T:
/// (1/2π)(log²(T/2π) − log²(t0/2π) − P₁(log(T/2π))) + err₁/t0 + err₂/T,
/// with P₁(y) = 2C₁y + 2(C₁ − C₂).
pub fn adar_bound(t_height: f64, t0: f64, sigma: f64) -> Result<f64> {
    if !(t0 >= 2.0 * PI * E && t_height >= 3.0 * t0) {
        return Err(domain(format!("need t0 ≥ 2πe and T ≥ 3t0, got t0 = {t0}, T = {t_height}")));
    }
    let ds = (sigma - 0.5).abs();
    if ds > t_height / 2.0 {
        return Err(domain(format!("need |σ − 1/2| ≤ T/2, got σ = {sigma}")));
    }
    let (c1, c2) = (constants_c(1)?, constants_c(2)?);
    let y = (t_height / (2.0 * PI)).ln();
    let y0 = (t0 / (2.0 * PI)).ln();
    let p1 = 2.0 * c1 * y + 2.0 * (c1 - c2);
    let lt0 = t0.ln();
    let err1 = 2.0 * (0.4 * lt0 + 4.2) + ((E * t0 / (2.0 * PI)).ln() / PI + 0.8 / t0 * (lt0 + 10.25)) * ds;
    let err2 = (2.78 * ds + 1.0) * y - 0.4 + PI * PI * t0 / t_height * (0.4 * lt0 + 4.0);
    Ok((y * y - y0 * y0 - p1) / (2.0 * PI) + err1 / t0 + err2 / t_height)
}

/// Bound on the weighted sum over zeros with 0 < γ ≤ t0:
/// 2Σ 1/|ρ − σ| + c(t0/T)log(t0/2π), c = 1 + (2.78|σ − 1/2| + 1)/T.
pub fn salmon_bound(zl: &ZeroList, t_height: f64, t0: f64, sigma: f64) -> Result<f64> {
    if !(t_height >= 4.0 * PI && t0 >= 2.0 * PI && t0 <= t_height / 2.0) {
        return Err(domain(format!("need T ≥ 4π and 2π ≤ t0 ≤ T/2, got T = {t_height}, t0 = {t0}")));
    }
    let ds = (sigma - 0.5).abs();
    if ds > t_height / 2.0 {
        return Err(domain(format!("need |σ − 1/2| ≤ T/2, got σ = {sigma}")));
    }
    check_zeros(zl, t0)?;
    let g = zl.ordinates();
    let gammas = &g[..g.partition_point(|&v| v <= t0)];
    let inv = ordered_sum(gammas, |gm| Ok(1.0 / Complex64::new(0.5 - sigma, gm).norm()))?;
    let c = 1.0 + (2.78 * ds + 1.0) / t_height;
    Ok(2.0 * inv.value() + c * t0 / t_height * (t0 / (2.0 * PI)).ln())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ZeroSumPath {
    /// The sum was computed from the zeros.
    Direct,
    /// The closed form for T ≥ 10⁷ was used.
    ClosedForm,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroSumBound {
    pub value: f64,
    pub path: ZeroSumPath,
}

/// Bound on the zero sums of the formula: the closed form from T = 10⁷ on,
/// below that the directly computed maximum over ξ.
pub fn zero_sum_bound(zl: Option<&ZeroList>, t_height: f64, sigma: f64) -> Result<ZeroSumBound> {
    if (sigma - 0.5).abs() > 100.0 {
        return Err(domain(format!("need |σ − 1/2| ≤ 100, got σ = {sigma}")));
    }
    if t_height >= CLOSED_FORM_HEIGHT {
        return Ok(ZeroSumBound { value: vihuela_bound(t_height), path: ZeroSumPath::ClosedForm });
    }
    let zl = zl.ok_or_else(|| domain(format!("T = {t_height} < 10⁷ needs zeros for the direct sum")))?;
    let ctx = WeightContext::new(t_height, sigma)?;
    let value = nontrivial_zero_sum(zl, &ctx, 1.0, ZeroSumMode::AbsBound)?.value();
    Ok(ZeroSumBound { value, path: ZeroSumPath::Direct })
}

// ---------------------------------------------------------------------------
// The integral term I₊,C

/// Ã(s) = −ζ′/ζ(s) − 1/(s − 1) at real s, with Ã(1) = −γ.
pub fn a_tilde(s: f64) -> Result<f64> {
    if (s - 1.0).abs() < 1e-6 {
        // Ã(s) = −γ + (2γ₁ + γ²)(s − 1) + ..., γ₁ the Stieltjes constant.
        let a1 = 2.0 * STIELTJES_1 + EULER_GAMMA * EULER_GAMMA;
        return Ok(-EULER_GAMMA + a1 * (s - 1.0));
    }
    Ok(-log_deriv_zeta(Complex64::new(s, 0.0))?.re() - 1.0 / (s - 1.0))
}

const STIELTJES_1: f64 = -0.072_815_845_483_676_72;
const STIELTJES_2: f64 = -0.009_690_363_192_872_318;

/// c = ζ′/ζ(−1) − 2(ζ′/ζ)′(−1).
pub fn arles_constant() -> Result<f64> {
    let v = log_deriv_zeta(Complex64::new(-1.0, 0.0))?.re();
    let d = log_deriv_zeta_slope(-1.0)?.re();
    Ok(v - 2.0 * d)
}

/// γx/L² + ((c−γ)/2)x/L³ − (c+γ)/(xL) − c/(xL²) − (c−γ)/(2xL³), bounding
/// −∫_{−1}^{1} Ã(s)(1−s)x^s ds.
pub fn arles_bound(x: f64) -> Result<f64> {
    if !(x > 1.0) {
        return Err(domain(format!("need x > 1, got {x}")));
    }
    let c = arles_constant()?;
    let g = EULER_GAMMA;
    let l = x.ln();
    Ok(g * x / (l * l) + (c - g) / 2.0 * x / l.powi(3) - (c + g) / (x * l) - c / (x * l * l) - (c - g) / (2.0 * x * l.powi(3)))
}

/// −2Ã(−1)/(x log x).
pub fn moruno_bound(x: f64) -> Result<f64> {
    if !(x >= 2.0) {
        return Err(domain(format!("need x ≥ 2, got {x}")));
    }
    Ok(-2.0 * a_tilde(-1.0)? / (x * x.ln()))
}

/// (π²/4x)(2√2/L² + (2+√2)/L³ + (1/√2)/L⁴).
pub fn ranadi_bound(x: f64) -> Result<f64> {
    if !(x > 1.0) {
        return Err(domain(format!("need x > 1, got {x}")));
    }
    let l = x.ln();
    Ok(PI * PI / (4.0 * x) * (2.0 * SQRT_2 / (l * l) + (2.0 + SQRT_2) / l.powi(3) + 1.0 / (SQRT_2 * l.powi(4))))
}

/// γ/L² + (5/3)/L³: the contour integral divided by x.
pub fn coronidis_bound(x: f64) -> Result<f64> {
    if !(x >= 15.0) {
        return Err(domain(format!("need x ≥ 15, got {x}")));
    }
    let l = x.ln();
    Ok(EULER_GAMMA / (l * l) + 5.0 / 3.0 / l.powi(3))
}

/// c_{σ0} = |ζ′/ζ(1+σ0)| + 4 + π/2.
pub fn adioso_constant(sigma0: f64) -> Result<f64> {
    Ok(log_deriv_zeta(Complex64::new(1.0 + sigma0, 0.0))?.re().abs() + 4.0 + PI / 2.0)
}

fn adioso_raw(sigma0: f64, t: f64, x: f64) -> Result<f64> {
    let l = x.ln();
    let c = adioso_constant(sigma0)?;
    Ok(((t.ln() + c) * (1.0 + 1.0 / l + sigma0) + 1.5 / (t * t) * (1.0 + sigma0).powi(3)) * x.powf(-1.0 - sigma0) / l)
}

/// ((log T + c_{σ0})(1 + 1/L + σ0) + (3/2T²)(1+σ0)³) x^{−1−σ0}/L, bounding
/// ∫_{−∞}^{−σ0} |ζ′/ζ(σ+iT)|(1−σ)x^{−(1−σ)} dσ.
pub fn adioso_bound(sigma0: f64, t: f64, x: f64) -> Result<f64> {
    if !(sigma0 > 0.0 && t >= 1.0 && x >= 3f64.exp()) {
        return Err(domain(format!("need σ0 > 0, T ≥ 1, x ≥ e³, got {sigma0}, {t}, {x}")));
    }
    adioso_raw(sigma0, t, x)
}

fn adiaro_raw(t_height: f64, x: f64) -> f64 {
    let r = t_height.ln();
    let l = x.ln();
    let kappa = (r + 7.3) * (5.0 * r.ln() / l + 2.0);
    (7.8 * r + 68.0) / (l * l) + (37.0 * r + 311.0) / l.powi(3) + kappa / x.sqrt()
}

/// ((39/5)log T + 68)/L² + (37 log T + 311)/L³ + κ(log T, L)/√x with
/// κ(R, L) = (R + 7.3)(5 log R/L + 2), bounding the integral of
/// |ζ′/ζ(σ+it)|(1−σ)x^{−(1−σ)} over [−1/2, 1] for a good t near T.
pub fn adiaro_bound(t_height: f64, x: f64) -> Result<f64> {
    if !(t_height >= HARDIN_HEIGHT && x >= 1e6) {
        return Err(domain(format!("need T ≥ 10⁶ and x ≥ 10⁶, got T = {t_height}, x = {x}")));
    }
    Ok(adiaro_raw(t_height, x))
}

/// (13 + 60/L)(log T)/L² + 5 log T/√x.
pub fn hardin_bound(t_height: f64, x: f64) -> Result<f64> {
    if !(t_height >= HARDIN_HEIGHT && x >= t_height) {
        return Err(domain(format!("need T ≥ 10⁶ and x ≥ T, got T = {t_height}, x = {x}")));
    }
    let l = x.ln();
    let r = t_height.ln();
    Ok((13.0 + 60.0 / l) * r / (l * l) + 5.0 * r / x.sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IPlusC {
    pub value: f64,
    /// True when T ≥ 10⁶ and x ≥ T, where the closed form is proved.
    pub literal: bool,
}

/// Bound on I₊,C. In the proved range this is the closed form; below it,
/// the unsimplified sum of the component bounds (the [−1/2, 1] piece,
/// the piece left of −1/2, the 1/(tL²) term and the contour integral),
/// which dominates the closed form there.
pub fn i_plus_c_bound(t_height: f64, x: f64) -> Result<IPlusC> {
    if t_height >= HARDIN_HEIGHT && x >= t_height {
        return Ok(IPlusC { value: hardin_bound(t_height, x)?, literal: true });
    }
    if !(t_height >= MIN_HEIGHT && x >= 3f64.exp()) {
        return Err(domain(format!("need T ≥ 4π and x ≥ e³, got T = {t_height}, x = {x}")));
    }
    let l = x.ln();
    let t = t_height - 0.5;
    let value = adiaro_raw(t_height, x) + adioso_raw(0.5, t, x)? + 1.0 / (t * l * l) + coronidis_bound(x)?;
    Ok(IPlusC { value, literal: false })
}

// ---------------------------------------------------------------------------
// Assembly

/// Main(x, σ): (π/T)coth(π(1−σ)/T) − ζ′/ζ(σ)x^{σ−1} for σ ≠ 1, the second
/// term dropped at σ = 0; log x − γ at σ = 1.
pub fn main_term(t_height: f64, sigma: f64, x: f64) -> Result<f64> {
    if sigma == 1.0 {
        return Ok(x.ln() - EULER_GAMMA);
    }
    let pole = PI / t_height * coth_real(PI * (1.0 - sigma) / t_height);
    if sigma == 0.0 {
        return Ok(pole);
    }
    let a = -log_deriv_zeta(Complex64::new(sigma, 0.0))?.re();
    Ok(pole + a * x.powf(sigma - 1.0))
}

/// Decomposed bound on Σ_{n≤x} Λ(n)n^{−σ}/x^{1−σ}. All numbers serialise
/// as 17-digit decimal strings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    #[serde(rename = "T", serialize_with = "ser_dec", deserialize_with = "de_dec")]
    pub t_height: f64,
    #[serde(serialize_with = "ser_dec", deserialize_with = "de_dec")]
    pub sigma: f64,
    #[serde(serialize_with = "ser_dec", deserialize_with = "de_dec")]
    pub x: f64,
    #[serde(serialize_with = "ser_dec", deserialize_with = "de_dec")]
    pub main_term: f64,
    /// (π/T) Σ_n coth(π(2n+σ)/T)x^{−2n−1}; covered by `trivial_zero_bound`.
    #[serde(serialize_with = "ser_dec", deserialize_with = "de_dec")]
    pub real_pole_term: f64,
    /// Directly computed (2π/T) max_ξ Σ |ω⁺ + ξθ_{T,1}i|.
    #[serde(serialize_with = "ser_dec_opt", deserialize_with = "de_dec_opt")]
    pub zero_sum_exact: Option<f64>,
    /// The closed form (1/2π)log²(T/2π) − (1.01/6π)log(T/2π).
    #[serde(serialize_with = "ser_dec", deserialize_with = "de_dec")]
    pub zero_sum_bound: f64,
    pub zero_sum_path: ZeroSumPath,
    #[serde(serialize_with = "ser_dec", deserialize_with = "de_dec")]
    pub trivial_zero_bound: f64,
    #[serde(serialize_with = "ser_dec", deserialize_with = "de_dec")]
    pub i_plus_c_bound: f64,
    pub i_plus_c_literal: bool,
    #[serde(serialize_with = "ser_dec", deserialize_with = "de_dec")]
    pub total_upper: f64,
    #[serde(serialize_with = "ser_dec", deserialize_with = "de_dec")]
    pub total_lower: f64,
}

impl BoundReport {
    /// Half-width of [total_lower, total_upper].
    pub fn radius(&self) -> f64 {
        0.5 * (self.total_upper - self.total_lower)
    }

    /// max(total_upper − 1, 1 − total_lower): the ε of |ψ(x) − x| ≤ εx
    /// when σ = 0.
    pub fn epsilon(&self) -> f64 {
        (self.total_upper - 1.0).max(1.0 - self.total_lower)
    }

    /// True when `observed` (the normalised prime sum) lies in the interval.
    pub fn contains(&self, observed: f64) -> bool {
        self.total_lower <= observed && observed <= self.total_upper
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }
}

/// The bound at height T for the normalised sum Σ_{n≤x} Λ(n)n^{−σ}/x^{1−σ}.
///
/// The radius is π/(T−1) + 2I₊,C/(T−1/2)² + Z/√x + the trivial-zero
/// bound, plus log(2π)/x at σ = 0 for the dropped ζ′/ζ(0) term. Z is the
/// direct zero sum when T < 10⁷ and the closed form otherwise.
pub fn explicit_formula_bound(zl: &ZeroList, t_height: f64, sigma: f64, x: f64) -> Result<BoundReport> {
    if !(t_height >= MIN_HEIGHT) {
        return Err(domain(format!("need T ≥ 4π, got {t_height}")));
    }
    if !(x > t_height) {
        return Err(domain(format!("need x > T, got x = {x}, T = {t_height}")));
    }
    if !(SIGMA_MIN..=SIGMA_MAX).contains(&sigma) {
        return Err(domain(format!("need −1.999 ≤ σ ≤ 100, got {sigma}")));
    }
    let direct = if t_height < CLOSED_FORM_HEIGHT {
        check_zeros(zl, t_height)?;
        Some(zero_sum_bound(Some(zl), t_height, sigma)?.value)
    } else {
        None
    };
    let closed = vihuela_bound(t_height);
    let (z, path) = match direct {
        Some(v) => (v, ZeroSumPath::Direct),
        None => (closed, ZeroSumPath::ClosedForm),
    };
    let main = main_term(t_height, sigma, x)?;
    let t_low = t_height - 0.5;
    let trivial = trivial_zero_terms(t_low, sigma, x)?;
    let real_pole = PI / t_height * trivial_zero_terms(t_height, sigma, x)?.weighted;
    let ipc = i_plus_c_bound(t_height, x)?;
    let dropped = if sigma == 0.0 { LOG_2PI / x } else { 0.0 };
    let radius = PI / (t_height - 1.0) + 2.0 * ipc.value / (t_low * t_low) + z / x.sqrt() + trivial.bound + dropped;
    Ok(BoundReport {
        t_height,
        sigma,
        x,
        main_term: main,
        real_pole_term: real_pole,
        zero_sum_exact: direct,
        zero_sum_bound: closed,
        zero_sum_path: path,
        trivial_zero_bound: trivial.bound,
        i_plus_c_bound: ipc.value,
        i_plus_c_literal: ipc.literal,
        total_upper: main + radius,
        total_lower: main - radius,
    })
}

/// CSV of reports joined with observed values: header
/// `x,T,sigma,total_lower,total_upper,observed`, 17-digit decimals.
pub fn write_reports_csv<W: Write>(mut w: W, rows: &[(BoundReport, Option<f64>)]) -> std::io::Result<()> {
    writeln!(w, "x,T,sigma,total_lower,total_upper,observed")?;
    for (r, obs) in rows {
        let obs = obs.map(decimal17).unwrap_or_default();
        writeln!(
            w,
            "{},{},{},{},{},{}",
            decimal17(r.x),
            decimal17(r.t_height),
            decimal17(r.sigma),
            decimal17(r.total_lower),
            decimal17(r.total_upper),
            obs
        )?;
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Concrete ψ bounds

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PsiEnvelope {
    /// π x/(3·10¹²) + 113.67√x, valid for all x ≥ 1.
    pub envelope: f64,
    /// √x/(8π)((log x − 2 log(log x/(πe)))² − 4), when T = 2π²√x/log x ≥ 10⁷.
    pub refined: Option<f64>,
}

/// Height 2π²√x/log x at which the refined envelope is taken.
pub fn refined_height(x: f64) -> f64 {
    2.0 * PI * PI * x.sqrt() / x.ln()
}

pub fn psi_concrete_bound(x: f64) -> Result<PsiEnvelope> {
    if !(x >= 1.0) {
        return Err(domain(format!("need x ≥ 1, got {x}")));
    }
    let envelope = PI * x / 3e12 + 113.67 * x.sqrt();
    let l = x.ln();
    // √x/log x increases for log x > 2; below that the height is spurious.
    let refined = (l > 2.0 && refined_height(x) >= CLOSED_FORM_HEIGHT).then(|| {
        let w = l - 2.0 * (l / (PI * E)).ln();
        x.sqrt() / (8.0 * PI) * (w * w - 4.0)
    });
    Ok(PsiEnvelope { envelope, refined })
}

// ---------------------------------------------------------------------------
// Counterexample

/// a_n = F_K(T log n), with F_K the Fejér kernel; x is taken at
/// exp((2πN ± δ)/T).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CounterexampleSpec {
    k: u32,
    t_height: f64,
    delta: f64,
}

impl CounterexampleSpec {
    pub fn new(k: u32, t_height: f64, delta: f64) -> Result<Self> {
        if k < 1 || !(t_height >= 1.0) || !(delta > 0.0 && delta < PI) {
            return Err(domain(format!("need K ≥ 1, T ≥ 1, 0 < δ < π, got {k}, {t_height}, {delta}")));
        }
        Ok(Self { k, t_height, delta })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn t_height(&self) -> f64 {
        self.t_height
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Plus,
    Minus,
}

impl Branch {
    pub fn sign(self) -> f64 {
        match self {
            Branch::Plus => 1.0,
            Branch::Minus => -1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CounterexampleRow {
    pub n: u32,
    pub branch: Branch,
    pub x: f64,
    /// (1/x) Σ_{n≤x} a_n by direct summation.
    pub empirical: f64,
    /// Σ_{|k|≤K}(1 − |k|/(K+1)) x^{ikT}/(ikT + 1).
    pub finite_k: f64,
    /// (π/T)(coth(π/T) ± 1)e^{∓δ/T}, the K → ∞ limit of `finite_k`.
    pub prediction: f64,
    /// (1/x) Σ_{|k|≤K}(1 − |k|/(K+1))(|k|T log x + 3), which bounds
    /// |empirical − finite_k|.
    pub allowance: f64,
}

/// Σ_{n≤x} F_K(T log n) in fixed-size chunks summed in order.
fn fejer_sum(k: u32, t_height: f64, x: u64) -> f64 {
    let chunks: Vec<(u64, u64)> = (0..x.div_ceil(CHUNK)).map(|c| (c * CHUNK + 1, ((c + 1) * CHUNK).min(x))).collect();
    let parts: Vec<f64> = chunks
        .par_iter()
        .map(|&(lo, hi)| (lo..=hi).map(|n| fejer(k, t_height * (n as f64).ln())).collect::<Neumaier>().value())
        .collect();
    parts.into_iter().collect::<Neumaier>().value()
}

pub fn counterexample_mean(spec: &CounterexampleSpec, n: u32, branch: Branch) -> Result<CounterexampleRow> {
    let (k, t, delta) = (spec.k, spec.t_height, spec.delta);
    let s = branch.sign();
    let x = ((2.0 * PI * n as f64 + s * delta) / t).exp();
    if !(x <= COUNTEREXAMPLE_CEILING) {
        return Err(Error::Range(format!("x = {x:e} exceeds the direct-summation ceiling 1e9")));
    }
    let empirical = fejer_sum(k, t, x.floor() as u64) / x;
    let kp1 = (k + 1) as f64;
    let lx = x.ln();
    let mut finite = Neumaier::new();
    let mut allow = Neumaier::new();
    for j in -(k as i64)..=(k as i64) {
        let w = 1.0 - j.unsigned_abs() as f64 / kp1;
        // x^{ijT} = e^{ij(2πN ± δ)} = e^{±ijδ}.
        let phase = Complex64::from_polar(1.0, s * j as f64 * delta);
        finite.add(w * (phase / Complex64::new(1.0, j as f64 * t)).re);
        allow.add(w * ((j.unsigned_abs() as f64) * t * lx + 3.0));
    }
    let a = PI / t;
    let prediction = a * (coth_real(a) + s) * (-s * delta / t).exp();
    Ok(CounterexampleRow { n, branch, x, empirical, finite_k: finite.value(), prediction, allowance: allow.value() / x })
}

// ---------------------------------------------------------------------------
// Fourier–Perron identity

/// A weight φ supported on [−1, 1] with its transform
/// φ̂(y) = ∫ φ(t)e^{−2πiyt} dt.
pub trait FourierPair: Sync {
    fn phi(&self, t: f64) -> Complex64;
    fn phi_hat(&self, y: f64) -> Complex64;
    /// Points in (−1, 1) where φ may fail to be smooth.
    fn breaks(&self) -> Vec<f64> {
        vec![0.0]
    }
}

impl FourierPair for ApproximantParams {
    fn phi(&self, t: f64) -> Complex64 {
        phi_weight(self, t)
    }
    fn phi_hat(&self, y: f64) -> Complex64 {
        Complex64::new(phi_hat(self, y), 0.0)
    }
}

/// φ(t) = max(1 − |t|, 0), φ̂(y) = (sin πy/πy)².
#[derive(Debug, Clone, Copy)]
pub struct FejerPair;

impl FourierPair for FejerPair {
    fn phi(&self, t: f64) -> Complex64 {
        Complex64::new((1.0 - t.abs()).max(0.0), 0.0)
    }
    fn phi_hat(&self, y: f64) -> Complex64 {
        Complex64::new(sinc_sq(y), 0.0)
    }
}

/// The smooth bump φ(t) = exp(−1/(1 − t²)) on (−1, 1); φ̂ by Gauss–Legendre.
/// Its transform decays like exp(−c√|y|).
#[derive(Debug, Clone)]
pub struct BumpPair {
    rule: Vec<(f64, f64)>,
}

impl BumpPair {
    pub fn new() -> Self {
        Self { rule: gauss_legendre(20) }
    }

    fn bump(t: f64) -> f64 {
        let q = 1.0 - t * t;
        if q <= 0.0 {
            0.0
        } else {
            (-1.0 / q).exp()
        }
    }

    /// ∫_{−1}^{1} φ(t)g(t) dt for an even φ and oscillation frequency `freq`.
    fn integrate(&self, freq: f64, g: impl Fn(f64) -> f64) -> f64 {
        let panels = 8usize.max((freq / 2.0).ceil() as usize);
        2.0 * gauss_panels(|t| Self::bump(t) * g(t), 0.0, 1.0, panels, &self.rule)
    }
}

impl Default for BumpPair {
    fn default() -> Self {
        Self::new()
    }
}

impl FourierPair for BumpPair {
    fn phi(&self, t: f64) -> Complex64 {
        Complex64::new(Self::bump(t), 0.0)
    }
    fn phi_hat(&self, y: f64) -> Complex64 {
        let w = 2.0 * PI * y;
        Complex64::new(self.integrate(w.abs(), |t| (w * t).cos()), 0.0)
    }
    fn breaks(&self) -> Vec<f64> {
        Vec::new()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PerronCheck {
    /// (1/2πiT) ∫_{σ−iT}^{σ+iT} φ(Im s/T)A(s)x^s ds by quadrature.
    pub integral: Complex64,
    /// (1/2π) Σ a_n (x/n)^σ φ̂((T/2π)log(n/x)).
    pub sum: Complex64,
    pub discrepancy: f64,
}

const PERRON_TOL: f64 = 1e-11;
const PERRON_MAX_LEN: usize = 100_000;

/// ∫_{−1}^{1} φ(t)g(t) dt split at the breakpoints, with panels scaled to
/// the oscillation frequency.
fn integrate_weight(phi: &dyn FourierPair, freq: f64, tol: f64, g: impl Fn(f64) -> Complex64) -> Result<Complex64> {
    let mut cuts = vec![-1.0];
    cuts.extend(phi.breaks().into_iter().filter(|b| b.abs() < 1.0));
    cuts.push(1.0);
    let mut total = Complex64::new(0.0, 0.0);
    for w in cuts.windows(2) {
        let panels = 16usize.max((freq * (w[1] - w[0]) / PI).ceil() as usize);
        total += simpson(|t| phi.phi(t) * g(t), w[0], w[1], tol / (cuts.len() - 1) as f64, panels)?;
    }
    Ok(total)
}

/// Both sides of (1/2πiT)∫ φ(Im s/T)A(s)x^s ds = (1/2π) Σ a_n (x/n)^σ
/// φ̂((T/2π)log(n/x)) for the Dirichlet polynomial A(s) = Σ a_n n^{−s},
/// `coeffs[n−1]` = a_n.
pub fn perron_identity_check(coeffs: &[f64], phi: &dyn FourierPair, t_height: f64, sigma: f64, x: f64) -> Result<PerronCheck> {
    if coeffs.is_empty() || coeffs.len() > PERRON_MAX_LEN {
        return Err(domain(format!("need 1 to {PERRON_MAX_LEN} coefficients, got {}", coeffs.len())));
    }
    if !(t_height > 0.0 && x > 0.0 && sigma.is_finite()) {
        return Err(domain(format!("need T > 0, x > 0, finite σ; got {t_height}, {x}, {sigma}")));
    }
    let lx = x.ln();
    let terms: Vec<(f64, f64)> = coeffs.iter().enumerate().filter(|e| *e.1 != 0.0).map(|(i, &a)| (a, ((i + 1) as f64).ln())).collect();
    let scale: f64 = terms.iter().map(|&(a, ln)| a.abs() * ((lx - ln) * sigma).exp()).sum::<f64>().max(1.0);
    let max_ln = terms.iter().map(|e| (lx - e.1).abs()).fold(0.0, f64::max);
    // On Re s = σ: A(s)x^s = Σ a_n (x/n)^σ e^{iTt log(x/n)}.
    let integrand = |t: f64| {
        terms.iter().fold(Complex64::new(0.0, 0.0), |acc, &(a, ln)| {
            acc + Complex64::from_polar(a * ((lx - ln) * sigma).exp(), t_height * t * (lx - ln))
        })
    };
    let integral = integrate_weight(phi, t_height * max_ln, PERRON_TOL * scale, integrand)? / (2.0 * PI);
    let sum = terms.iter().fold(Complex64::new(0.0, 0.0), |acc, &(a, ln)| {
        acc + phi.phi_hat(t_height / (2.0 * PI) * (ln - lx)) * (a * ((lx - ln) * sigma).exp())
    }) / (2.0 * PI);
    Ok(PerronCheck { integral, sum, discrepancy: (integral - sum).norm() })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgePoleCheck {
    /// (1/2π) Σ_n (x/n) φ̂((T/2π)log(n/x)), truncated where φ̂ is negligible.
    pub sum: f64,
    /// (1/2πiT)∫_{1−iT}^{1+iT} φ(Im s/T)(ζ(s) − 1/(s−1))x^s ds.
    pub integral: f64,
    /// (φ(0) − ∫_{−∞}^{−(T/2π)log x} φ̂(y) dy) x/T.
    pub pole_term: f64,
    pub discrepancy: f64,
    pub terms: u64,
}

/// ζ(s) − 1/(s−1), through the Stieltjes series near s = 1.
fn zeta_regular(s: Complex64) -> Result<Complex64> {
    let w = s - 1.0;
    if w.norm() < 1e-3 {
        return Ok(EULER_GAMMA - STIELTJES_1 * w + STIELTJES_2 / 2.0 * w * w);
    }
    Ok(zeta_em(s, 1e-10)?.value - 1.0 / w)
}

/// Checks the edge-of-convergence identity for A(s) = ζ(s) (a_n = 1), for
/// the even real bump weight.
pub fn edge_pole_identity_check(phi: &BumpPair, t_height: f64, x: f64) -> Result<EdgePoleCheck> {
    if !(t_height > 0.0 && x > 1.0) {
        return Err(domain(format!("need T > 0 and x > 1, got {t_height}, {x}")));
    }
    let lx = x.ln();
    let y_of = |n: u64| t_height / (2.0 * PI) * ((n as f64).ln() - lx);
    // φ̂(y) ≈ exp(−√(4π|y|)) is below 10⁻¹⁸ past |y| = 150.
    let y_cut = 150.0;
    let n_max = (x * (2.0 * PI * y_cut / t_height).exp()).ceil() as u64;
    if n_max > 50_000_000 {
        return Err(Error::Range(format!("x = {x} and T = {t_height} need {n_max} terms")));
    }
    let ns: Vec<u64> = (1..=n_max).collect();
    let parts: Vec<f64> = ns.par_iter().map(|&n| x / n as f64 * phi.phi_hat(y_of(n)).re).collect();
    let sum = parts.into_iter().collect::<Neumaier>().value() / (2.0 * PI);
    let integrand = |t: f64| -> Result<Complex64> {
        let s = Complex64::new(1.0, t_height * t);
        Ok(zeta_regular(s)? * Complex64::from_polar(x, t_height * t * lx))
    };
    // Evaluate ζ on the Gauss nodes once; the bump is smooth.
    let panels = 16usize.max((t_height * lx / PI).ceil() as usize);
    let rule = gauss_legendre(20);
    let h = 2.0 / panels as f64;
    let mut acc = Complex64::new(0.0, 0.0);
    for p in 0..panels {
        let c = -1.0 + h * (p as f64 + 0.5);
        for &(u, wt) in &rule {
            let t = c + 0.5 * h * u;
            acc += integrand(t)? * (BumpPair::bump(t) * wt * 0.5 * h);
        }
    }
    let integral = acc.re / (2.0 * PI);
    let y = t_height / (2.0 * PI) * lx;
    let phi0 = BumpPair::bump(0.0);
    // For even φ, ∫_{−∞}^{−Y} φ̂ = (φ(0) − ∫ φ(t) sin(2πYt)/(πt) dt)/2.
    let w = 2.0 * PI * y;
    let inner = phi.integrate(w, |t| if t == 0.0 { 2.0 * y } else { (w * t).sin() / (PI * t) });
    let tail = 0.5 * (phi0 - inner);
    let pole_term = (phi0 - tail) * x / t_height;
    let discrepancy = (sum - integral - pole_term).abs();
    Ok(EdgePoleCheck { sum, integral, pole_term, discrepancy, terms: n_max })
}
