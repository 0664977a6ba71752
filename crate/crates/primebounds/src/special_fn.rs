//! Special functions in double precision, each carrying an absolute error
//! budget: zeta by Euler–Maclaurin, its logarithmic derivative, digamma and
//! log-gamma, pole-safe cot/coth, the Fejér kernel, the Lerch transcendent,
//! the exponential integral, and the Laurent expansion of -ζ'/ζ at s = 1.

use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
pub const LOG_2PI: f64 = 1.837_877_066_409_345_5;

/// A complex value together with an upper bound on its absolute error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalWithError {
    pub value: Complex64,
    pub abs_error: f64,
}

impl EvalWithError {
    pub fn new(value: Complex64, abs_error: f64) -> Self {
        debug_assert!(abs_error >= 0.0);
        Self { value, abs_error }
    }

    pub fn re(&self) -> f64 {
        self.value.re
    }
}

/// B_2, B_4, ..., B_26.
const BERNOULLI_2K: [f64; 13] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
];

/// Stieltjes constants γ_0..γ_13 in ζ(s) = 1/(s-1) + Σ (-1)^n γ_n (s-1)^n / n!.
const STIELTJES: [f64; 14] = [
    0.577_215_664_901_532_860_61,
    -0.072_815_845_483_676_724_861,
    -0.009_690_363_192_872_318_484_5,
    0.002_053_834_420_303_345_866_2,
    0.002_325_370_065_467_300_057_5,
    0.000_793_323_817_301_062_701_75,
    -0.000_238_769_345_430_199_609_87,
    -0.000_527_289_567_057_751_046_07,
    -0.000_352_123_353_803_039_509_6,
    -0.000_034_394_774_418_088_048_178,
    0.000_205_332_814_909_064_794_68,
    0.000_270_184_439_543_903_526_67,
    0.000_167_272_912_105_140_193_35,
    -0.000_027_463_806_603_760_158_86,
];

fn factorial(n: usize) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}

/// ζ(2k) for k ≥ 1: from the Bernoulli numbers up to k = 13, beyond that
/// as 1 + (ζ(2k) − 1).
pub fn zeta_even(k: usize) -> f64 {
    assert!(k >= 1, "ζ(2k) needs k >= 1");
    if k > BERNOULLI_2K.len() {
        return 1.0 + zeta_even_minus_one(k);
    }
    let b = BERNOULLI_2K[k - 1];
    let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
    sign * b * (2.0 * PI).powi(2 * k as i32) / (2.0 * factorial(2 * k))
}

/// ζ(2k) − 1 without cancellation: Σ_{m≥2} m^{−2k} for k ≥ 4, summed from
/// the smallest retained term up.
pub fn zeta_even_minus_one(k: usize) -> f64 {
    assert!(k >= 1, "ζ(2k) needs k >= 1");
    if k < 4 {
        return zeta_even(k) - 1.0;
    }
    let e = -2 * k as i32;
    let first = 2f64.powi(e);
    let terms: Vec<f64> = (2u32..).map(|m| (m as f64).powi(e)).take_while(|&t| t >= first * 1e-18).collect();
    terms.iter().rev().sum()
}

// ---------------------------------------------------------------------------
// Euler–Maclaurin zeta

const EM_BERNOULLI_TERMS: usize = 8;
const EM_MAX_TERMS: usize = 8_000_000;

/// Documented validity ceiling for |Im s|.
pub const EM_IM_CEILING: f64 = 1e5;

struct EmParts {
    zeta: Complex64,
    dzeta: Complex64,
    remainder: f64,
    d_remainder: f64,
    rounding: f64,
    d_rounding: f64,
}

/// First omitted Euler–Maclaurin term times the usual |s+2M+1|/(σ+2M+1)
/// factor, an upper bound for the remainder when σ + 2M + 1 > 0.
fn em_remainder(s: Complex64, n: usize, m: usize) -> f64 {
    let sigma = s.re;
    let mut poly = 1.0;
    for j in 0..=(2 * m) {
        poly *= (s + j as f64).norm();
    }
    let b = BERNOULLI_2K[m].abs() / factorial(2 * m + 2);
    let nf = n as f64;
    let term = b * poly * (-(sigma + 2.0 * m as f64 + 1.0) * nf.ln()).exp();
    term * (s + (2 * m + 1) as f64).norm() / (sigma + (2 * m + 1) as f64)
}

fn em_rounding_floor(s: Complex64, n: usize) -> f64 {
    let sigma = s.re;
    let nf = n as f64;
    let abs_sum = if (sigma - 1.0).abs() < 1e-9 {
        1.0 + nf.ln()
    } else {
        1.0 + (nf.powf(1.0 - sigma) - 1.0) / (1.0 - sigma)
    };
    4.0 * f64::EPSILON * (s.norm() * nf.ln() + 4.0) * abs_sum.max(1.0)
}

fn em_terms(s: Complex64) -> usize {
    let need = ((1.0 - s.re) / 2.0).ceil().max(0.0) as usize + 2;
    EM_BERNOULLI_TERMS.max(need).min(BERNOULLI_2K.len() - 1)
}

fn em_start(s: Complex64) -> usize {
    ((s.im.abs() / (2.0 * PI)).ceil() as usize + 20).max(30)
}

/// Smallest N (growing from the standard starting point) whose remainder
/// bound is at most `budget`.
fn em_choose_n(s: Complex64, m: usize, budget: f64) -> Option<usize> {
    let mut n = em_start(s);
    while n <= EM_MAX_TERMS {
        if em_remainder(s, n, m) <= budget {
            return Some(n);
        }
        n += n / 4 + 1;
    }
    None
}

fn em_core(s: Complex64, n: usize, m: usize) -> EmParts {
    let mut zeta = Complex64::new(0.0, 0.0);
    let mut dzeta = Complex64::new(0.0, 0.0);
    let mut abs_sum = 0.0;
    let mut dabs_sum = 0.0;
    for k in 1..n {
        let l = (k as f64).ln();
        let term = (-s * l).exp();
        zeta += term;
        dzeta -= term * l;
        let a = term.norm();
        abs_sum += a;
        dabs_sum += a * l;
    }
    let nf = n as f64;
    let ln_n = nf.ln();
    let n_pow = (-s * ln_n).exp();
    let sm1 = s - 1.0;
    let head = n_pow * nf / sm1;
    zeta += head + 0.5 * n_pow;
    dzeta += -head * ln_n - head / sm1 - 0.5 * n_pow * ln_n;

    let mut poly = s;
    let mut dpoly = Complex64::new(1.0, 0.0);
    let mut n_fac = 1.0 / nf;
    for k in 1..=m {
        // n_fac = N^{1-2k}
        let c = BERNOULLI_2K[k - 1] / factorial(2 * k);
        let base = n_pow * (c * n_fac);
        zeta += base * poly;
        dzeta += base * (dpoly - poly * ln_n);
        for j in [2 * k - 1, 2 * k] {
            let f = s + j as f64;
            dpoly = dpoly * f + poly;
            poly *= f;
        }
        n_fac /= nf * nf;
    }

    let remainder = em_remainder(s, n, m);
    let mut log_poles = 0.0;
    for j in 0..=(2 * m) {
        log_poles += 1.0 / (s + j as f64).norm().max(0.5);
    }
    let d_remainder = remainder * (ln_n + log_poles + 1.0);
    let scale = 4.0 * f64::EPSILON * (s.norm() * ln_n + 4.0);
    let rounding = scale * (abs_sum + head.norm() + 1.0);
    let d_rounding = scale * (dabs_sum + head.norm() * (ln_n + 1.0) + 1.0) * 2.0;
    EmParts { zeta, dzeta, remainder, d_remainder, rounding, d_rounding }
}

fn em_check_domain(s: Complex64) -> Result<()> {
    if s == Complex64::new(1.0, 0.0) {
        return Err(Error::PoleAtOne);
    }
    if !(s.re.is_finite() && s.im.is_finite()) {
        return Err(Error::Domain(format!("non-finite argument {s}")));
    }
    if s.im.abs() > EM_IM_CEILING {
        return Err(Error::Domain(format!("|Im s| = {} above the 1e5 ceiling", s.im.abs())));
    }
    if s.re <= -20.0 {
        return Err(Error::Domain(format!("Re s = {} too negative for Euler–Maclaurin", s.re)));
    }
    Ok(())
}

/// ζ(s) by Euler–Maclaurin summation, with absolute error at most
/// `target_abs_error`.
///
/// The number of main terms starts at max(⌈|Im s|/2π⌉ + 20, 30) and grows
/// until the remainder bound meets half the budget; rounding error is
/// estimated from the magnitude of the summed terms.
pub fn zeta_em(s: Complex64, target_abs_error: f64) -> Result<EvalWithError> {
    Ok(zeta_em_with_derivative(s, target_abs_error)?.0)
}

/// ζ(s) and ζ'(s) from the same Euler–Maclaurin pass (ζ' by term-wise
/// differentiation). The budget applies to ζ; ζ' carries its own estimate.
pub fn zeta_em_with_derivative(s: Complex64, target_abs_error: f64) -> Result<(EvalWithError, EvalWithError)> {
    em_check_domain(s)?;
    if !(target_abs_error > 0.0) {
        return Err(Error::Domain("target_abs_error must be positive".into()));
    }
    let m = em_terms(s);
    let n = em_choose_n(s, m, 0.5 * target_abs_error).ok_or(Error::PrecisionUnreachable {
        target: target_abs_error,
        achieved: em_remainder(s, EM_MAX_TERMS, m),
    })?;
    let floor = em_rounding_floor(s, n);
    if floor > target_abs_error {
        return Err(Error::PrecisionUnreachable { target: target_abs_error, achieved: floor });
    }
    let p = em_core(s, n, m);
    let err = p.remainder + p.rounding;
    if err > target_abs_error {
        return Err(Error::PrecisionUnreachable { target: target_abs_error, achieved: err });
    }
    Ok((
        EvalWithError::new(p.zeta, err),
        EvalWithError::new(p.dzeta, p.d_remainder + p.d_rounding),
    ))
}

/// ζ(s) and ζ'(s) at the best accuracy double precision supports for `s`.
pub fn zeta_em_auto(s: Complex64) -> Result<(EvalWithError, EvalWithError)> {
    em_check_domain(s)?;
    let m = em_terms(s);
    let mut target = 2.0 * em_rounding_floor(s, em_start(s)).max(1e-16);
    for _ in 0..8 {
        if let Some(n) = em_choose_n(s, m, 0.5 * target) {
            let floor = em_rounding_floor(s, n);
            if floor <= target {
                let p = em_core(s, n, m);
                return Ok((
                    EvalWithError::new(p.zeta, p.remainder + p.rounding),
                    EvalWithError::new(p.dzeta, p.d_remainder + p.d_rounding),
                ));
            }
            target = 2.0 * floor;
        } else {
            target *= 16.0;
        }
    }
    Err(Error::PrecisionUnreachable { target, achieved: f64::INFINITY })
}

/// ζ'(s)/ζ(s) (note the sign: this is -A(s) for A = -ζ'/ζ), with the
/// error of numerator and denominator propagated to first order.
pub fn log_deriv_zeta(s: Complex64) -> Result<EvalWithError> {
    let (z, dz) = zeta_em_auto(s)?;
    let a = z.value.norm();
    if a <= 10.0 * z.abs_error {
        return Err(Error::NearZero { abs: a, err: z.abs_error });
    }
    let q = dz.value / z.value;
    let err = (dz.abs_error + q.norm() * z.abs_error) / (a - z.abs_error);
    Ok(EvalWithError::new(q, err + 4.0 * f64::EPSILON * q.norm()))
}

/// d/dt of ζ'/ζ at real t, by the complex-step rule Im f(t + ih)/h, which
/// is free of subtractive cancellation because ζ'/ζ is real on the real axis.
pub fn log_deriv_zeta_slope(t: f64) -> Result<EvalWithError> {
    let h = 1e-20;
    let v = log_deriv_zeta(Complex64::new(t, h))?;
    let slope = v.value.im / h;
    Ok(EvalWithError::new(Complex64::new(slope, 0.0), v.abs_error.max(1e-14) * (1.0 + slope.abs())))
}

// ---------------------------------------------------------------------------
// Gamma and digamma

const STIRLING_SHIFT: f64 = 12.0;

/// Principal-sum branch of log Γ(z), via upward recurrence and Stirling's
/// series; continuous in z on the upper half plane.
pub fn ln_gamma(z: Complex64) -> Result<Complex64> {
    if z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round() {
        return Err(Error::Pole { what: "gamma", at: format!("{}", z.re) });
    }
    let mut w = z;
    let mut shift = Complex64::new(0.0, 0.0);
    while w.re < STIRLING_SHIFT {
        shift += w.ln();
        w += 1.0;
    }
    let inv = 1.0 / w;
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    let mut pow = inv;
    for k in 1..=10 {
        let b = BERNOULLI_2K[k - 1];
        series += pow * (b / ((2 * k) as f64 * (2 * k - 1) as f64));
        pow *= inv2;
    }
    Ok((w - 0.5) * w.ln() - w + 0.5 * LOG_2PI + series - shift)
}

/// Γ(z) = exp(log Γ(z)).
pub fn gamma(z: Complex64) -> Result<Complex64> {
    Ok(ln_gamma(z)?.exp())
}

/// The digamma function ϝ(z) = Γ'(z)/Γ(z).
///
/// For Re z < 1/2 the reflection ϝ(z) = ϝ(1-z) - π cot πz is used; otherwise
/// recurrence up to Re z ≥ 12 followed by the asymptotic series.
pub fn digamma(z: Complex64) -> Result<EvalWithError> {
    if z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round() {
        return Err(Error::Pole { what: "digamma", at: format!("{}", z.re) });
    }
    if z.re < 0.5 {
        let r = digamma(1.0 - z)?;
        let c = cot_stable(z)?;
        let v = r.value - PI * c;
        return Ok(EvalWithError::new(v, r.abs_error + 8.0 * f64::EPSILON * (PI * c.norm())));
    }
    let mut w = z;
    let mut shift = Complex64::new(0.0, 0.0);
    let mut shift_abs = 0.0;
    while w.re < STIRLING_SHIFT {
        let inv = 1.0 / w;
        shift += inv;
        shift_abs += inv.norm();
        w += 1.0;
    }
    let inv = 1.0 / w;
    let inv2 = inv * inv;
    let mut series = w.ln() - 0.5 * inv;
    let mut pow = inv2;
    for k in 1..=8 {
        series -= pow * (BERNOULLI_2K[k - 1] / (2 * k) as f64);
        pow *= inv2;
    }
    let tail = (BERNOULLI_2K[8].abs() / 18.0) * pow.norm() * 2.0;
    let v = series - shift;
    let err = tail + 4.0 * f64::EPSILON * (series.norm() + shift_abs + 1.0);
    Ok(EvalWithError::new(v, err))
}

// ---------------------------------------------------------------------------
// cot and coth

const POLE_SWITCH: f64 = 0.1;
const LAURENT_TERMS: usize = 12;

/// coth u = 1/u + Σ_{k≥1} 2^{2k} B_{2k} u^{2k-1}/(2k)!, for small u.
fn coth_laurent(u: Complex64) -> Complex64 {
    let u2 = u * u;
    let mut pow = u;
    let mut acc = 1.0 / u;
    for k in 1..=LAURENT_TERMS {
        let c = 2f64.powi(2 * k as i32) * BERNOULLI_2K[k - 1] / factorial(2 * k);
        acc += pow * c;
        pow *= u2;
    }
    acc
}

/// coth(a + ib) = (sinh 2a - i sin 2b)/(cosh 2a - cos 2b), scaled by sech 2a
/// so large |a| does not overflow.
fn coth_direct(z: Complex64) -> Complex64 {
    let (a, b) = (2.0 * z.re, 2.0 * z.im);
    let sech = 1.0 / a.cosh();
    let num = Complex64::new(a.tanh(), -b.sin() * sech);
    num / (1.0 - b.cos() * sech)
}

/// coth z, using the Laurent expansion within distance 0.1 of a pole iπn.
pub fn coth_stable(z: Complex64) -> Result<Complex64> {
    let n = (z.im / PI).round();
    let u = Complex64::new(z.re, z.im - PI * n);
    if u.norm() == 0.0 {
        return Err(Error::Pole { what: "coth", at: format!("{z}") });
    }
    if u.norm() < POLE_SWITCH {
        Ok(coth_laurent(u))
    } else {
        Ok(coth_direct(u))
    }
}

/// cot πz, using π cot πu = 1/u - 2Σ ζ(2k) u^{2k-1} within 0.1 of an integer.
pub fn cot_stable(z: Complex64) -> Result<Complex64> {
    let n = z.re.round();
    let u = Complex64::new(z.re - n, z.im);
    if u.norm() == 0.0 {
        return Err(Error::Pole { what: "cot(pi z)", at: format!("{z}") });
    }
    if u.norm() < POLE_SWITCH {
        let u2 = u * u;
        let mut pow = u;
        let mut acc = 1.0 / u;
        for k in 1..=LAURENT_TERMS {
            acc -= pow * (2.0 * zeta_even(k));
            pow *= u2;
        }
        Ok(acc / PI)
    } else {
        // cot w = i coth(i w)
        let w = u * PI;
        Ok(Complex64::i() * coth_direct(Complex64::i() * w))
    }
}

/// Real coth y for y ≠ 0.
pub fn coth_real(y: f64) -> f64 {
    coth_stable(Complex64::new(y, 0.0)).map(|c| c.re).unwrap_or(f64::INFINITY)
}

// ---------------------------------------------------------------------------
// Fejér kernel

/// F_K(t) = (1/(K+1)) (sin((K+1)t/2)/sin(t/2))², equal to
/// Σ_{|k|≤K} (1 - |k|/(K+1)) e^{ikt}; the value at t ∈ 2πℤ is K+1.
pub fn fejer(k: u32, t: f64) -> f64 {
    assert!(k >= 1, "Fejér kernel needs K >= 1");
    let kp1 = (k + 1) as f64;
    let u = t - 2.0 * PI * (t / (2.0 * PI)).round();
    let den = (0.5 * u).sin();
    if den == 0.0 {
        return kp1;
    }
    let r = (0.5 * kp1 * u).sin() / den;
    (r * r / kp1).max(0.0)
}

// ---------------------------------------------------------------------------
// Lerch transcendent

/// Φ(z, s, α) = Σ_{n≥0} zⁿ/(n+α)^s for |z| < 1.
///
/// Summation stops once the geometric tail bound falls below 10⁻¹⁴ of the
/// partial sum (or below 10⁻³⁰ absolutely); the bound is returned as error.
pub fn lerch(z: Complex64, s: u32, alpha: Complex64) -> Result<EvalWithError> {
    let r = z.norm();
    if !(r < 1.0) {
        return Err(Error::Divergence(format!("Lerch transcendent needs |z| < 1, got {r}")));
    }
    if alpha.im == 0.0 && alpha.re <= 0.0 && alpha.re == alpha.re.round() {
        return Err(Error::Pole { what: "Lerch transcendent", at: format!("alpha = {}", alpha.re) });
    }
    let mut acc = Complex64::new(0.0, 0.0);
    let mut abs_acc = 0.0;
    let mut zn = Complex64::new(1.0, 0.0);
    let mut rn = 1.0;
    let mut n = 0u64;
    loop {
        let d = alpha + n as f64;
        let term = zn / d.powi(s as i32);
        acc += term;
        abs_acc += term.norm();
        n += 1;
        zn *= z;
        rn *= r;
        let lower = n as f64 + alpha.re;
        if lower > 0.0 {
            let tail = rn / lower.powi(s as i32) / (1.0 - r);
            if tail <= 1e-14 * acc.norm() || tail <= 1e-30 {
                let err = tail + 4.0 * f64::EPSILON * abs_acc;
                return Ok(EvalWithError::new(acc, err));
            }
        }
        if n > 50_000_000 {
            return Err(Error::Divergence("Lerch series did not reach its tolerance".into()));
        }
    }
}

// ---------------------------------------------------------------------------
// Exponential integral

/// Ei(x) for x > 0 (power series up to 30, ten-term asymptotic expansion
/// beyond), together with the upper bound (eˣ/x)(1 + 1/x + 2/x² + (40/3)/x³).
pub fn ei_and_bound(x: f64) -> Result<(EvalWithError, f64)> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!("Ei needs x > 0, got {x}")));
    }
    let bound = x.exp() / x * (1.0 + 1.0 / x + 2.0 / (x * x) + (40.0 / 3.0) / (x * x * x));
    let ei = if x <= 30.0 {
        let mut term = 1.0;
        let mut sum = 0.0;
        let mut k = 1.0;
        loop {
            term *= x / k;
            let add = term / k;
            sum += add;
            if add < 1e-17 * sum {
                break;
            }
            k += 1.0;
        }
        let v = EULER_GAMMA + x.ln() + sum;
        EvalWithError::new(Complex64::new(v, 0.0), 8.0 * f64::EPSILON * (sum + x.ln().abs() + 1.0))
    } else {
        let mut term = 1.0;
        let mut sum = 0.0;
        for k in 0..10 {
            sum += term;
            term *= (k + 1) as f64 / x;
        }
        let pre = x.exp() / x;
        EvalWithError::new(Complex64::new(pre * sum, 0.0), pre * (term + 4.0 * f64::EPSILON * sum))
    };
    Ok((ei, bound))
}

// ---------------------------------------------------------------------------
// Laurent coefficients of -ζ'/ζ at s = 1

/// Coefficients Ã_n of (s-1)ⁿ in -ζ'/ζ(s) - 1/(s-1) = Σ Ã_n (s-1)ⁿ.
#[derive(Debug, Clone, PartialEq)]
pub struct LaurentCoeffs {
    pub coeffs: Vec<f64>,
}

impl LaurentCoeffs {
    /// The positive magnitudes a_n = (-1)^{n+1} Ã_n.
    pub fn magnitudes(&self) -> Vec<f64> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| if n % 2 == 0 { -c } else { *c })
            .collect()
    }

    /// Whether every a_n is strictly positive.
    pub fn signs_alternate(&self) -> bool {
        self.magnitudes().iter().all(|a| *a > 0.0)
    }

    /// Truncated series for -ζ'/ζ(s) - 1/(s-1).
    pub fn eval(&self, s: f64) -> f64 {
        let u = s - 1.0;
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * u + c)
    }
}

pub const LAURENT_MAX_ORDER: usize = 12;

/// Series division of the Stieltjes expansion: with g(u) = u ζ(1+u),
/// -ζ'/ζ(1+u) - 1/u = -g'(u)/g(u).
pub fn laurent_coeffs_a(n_max: usize) -> Result<LaurentCoeffs> {
    if n_max > LAURENT_MAX_ORDER {
        return Err(Error::PrecisionUnreachable { target: n_max as f64, achieved: LAURENT_MAX_ORDER as f64 });
    }
    let len = n_max + 2;
    let mut g = vec![0.0; len];
    g[0] = 1.0;
    for n in 0..(len - 1) {
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        g[n + 1] = sign * STIELTJES[n] / factorial(n);
    }
    let dg: Vec<f64> = (0..=n_max).map(|m| (m + 1) as f64 * g[m + 1]).collect();
    let mut q = vec![0.0; n_max + 1];
    for m in 0..=n_max {
        let mut v = dg[m];
        for j in 1..=m {
            v -= g[j] * q[m - j];
        }
        q[m] = v;
    }
    Ok(LaurentCoeffs { coeffs: q.into_iter().map(|v| -v).collect() })
}

/// f(t) = ζ'/ζ(t) + ϝ(t) - log 2π for real t > 1.
pub fn badabook_f(t: f64) -> Result<f64> {
    if !(t > 1.0) {
        return Err(Error::Domain(format!("f(t) needs t > 1, got {t}")));
    }
    let s = Complex64::new(t, 0.0);
    Ok(log_deriv_zeta(s)?.re() + digamma(s)?.re() - LOG_2PI)
}

/// d/dt f(t), by complex step.
pub fn badabook_f_slope(t: f64) -> Result<f64> {
    let h = 1e-20;
    let s = Complex64::new(t, h);
    let v = log_deriv_zeta(s)?.value + digamma(s)?.value;
    Ok(v.im / h)
}
