//! Nontrivial zeros of ζ: finding, persistence, the counting function
//! N(t) with its remainder Q(t) = N(t) - (t/2π)log(t/2πe) - 7/8, and
//! Lehman-type sums over ordinates.

pub mod finder;
pub mod hardy;

pub use finder::{find_zeros, FINDER_HEIGHT_CAP};

use crate::error::{Error, Result};
use crate::quad::simpson;
use crate::special_fn::log_deriv_zeta;
use crate::summation::Neumaier;
use num_complex::Complex64;
use std::f64::consts::{E, PI};
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

/// Ordinate of the first zero, used as a sanity check on input files.
pub const FIRST_ORDINATE: f64 = 14.134_725_141_734_693;
const FIRST_ORDINATE_TOL: f64 = 1e-4;

/// The first 100 ordinates to nine decimals, complete through t = 236.6.
pub const BUNDLED_FIRST_100: &str = include_str!("../../data/zeros_100.txt");

/// Ascending ordinates γ of zeros 1/2 + iγ, complete up to `t_max`.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroList {
    ordinates: Vec<f64>,
    t_max: f64,
    source: String,
    rh_assumed: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroCountStats {
    pub t: f64,
    pub n: usize,
    pub q: f64,
}

/// (t/2π)log(t/2πe) + 7/8, the smooth part of N(t).
pub fn smooth_count(t: f64) -> f64 {
    t / (2.0 * PI) * (t / (2.0 * PI * E)).ln() + 0.875
}

/// Bound on |Q(t)|: strict 1 up to t = 280, (1/5)log t + 2 from t = 1.
pub fn q_limit(t: f64) -> f64 {
    if t <= 280.0 {
        1.0
    } else {
        0.2 * t.ln() + 2.0
    }
}

fn q_within(t: f64, q: f64) -> bool {
    if t <= 280.0 {
        q.abs() < 1.0
    } else {
        q.abs() <= q_limit(t)
    }
}

impl ZeroList {
    /// Builds a list and enforces its invariants: strictly ascending,
    /// first ordinate 14.1347..., no ordinate above `t_max`, and the Q(t)
    /// bound at every jump.
    pub fn new(ordinates: Vec<f64>, t_max: f64, source: String, rh_assumed: bool) -> Result<Self> {
        if let Some(k) = ordinates.windows(2).position(|w| !(w[0] < w[1])) {
            return Err(Error::NotAscending { path: source.clone().into(), line: k + 2 });
        }
        if let Some(&g) = ordinates.first() {
            if (g - FIRST_ORDINATE).abs() > FIRST_ORDINATE_TOL {
                return Err(Error::FirstZero { value: g });
            }
        }
        if let Some(&g) = ordinates.last() {
            if g > t_max {
                return Err(Error::Range(format!("ordinate {g} lies above t_max = {t_max}")));
            }
        }
        let zl = Self::new_unchecked(ordinates, t_max, source, rh_assumed);
        zl.check_completeness()?;
        Ok(zl)
    }

    pub(crate) fn new_unchecked(ordinates: Vec<f64>, t_max: f64, source: String, rh_assumed: bool) -> Self {
        Self { ordinates, t_max, source, rh_assumed }
    }

    pub fn ordinates(&self) -> &[f64] {
        &self.ordinates
    }

    pub fn t_max(&self) -> f64 {
        self.t_max
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn rh_assumed(&self) -> bool {
        self.rh_assumed
    }

    pub fn len(&self) -> usize {
        self.ordinates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ordinates.is_empty()
    }

    /// The same zeros cut down to height `t ≤ t_max`.
    pub fn truncated(&self, t: f64) -> Result<Self> {
        self.check_height(t)?;
        let n = self.count(t);
        Ok(Self::new_unchecked(self.ordinates[..n].to_vec(), t, self.source.clone(), self.rh_assumed))
    }

    fn check_height(&self, t: f64) -> Result<()> {
        if t > self.t_max {
            Err(Error::HeightExceeded { t, t_max: self.t_max })
        } else {
            Ok(())
        }
    }

    /// N(t): number of ordinates γ ≤ t.
    fn count(&self, t: f64) -> usize {
        self.ordinates.partition_point(|&g| g <= t)
    }

    /// Number of ordinates in [t - a, t + a], i.e. N(t+a) - N((t-a)⁻).
    pub fn count_window(&self, t: f64, a: f64) -> Result<usize> {
        self.check_height(t + a)?;
        Ok(self.count(t + a) - self.ordinates.partition_point(|&g| g < t - a))
    }

    /// Checks |Q| at each jump (t = γ and t = γ⁻, where Q is extremal) and
    /// at t_max.
    pub(crate) fn check_completeness(&self) -> Result<()> {
        let fail = |t: f64, count: usize, q: f64| Error::MissedZero { t, count, q, limit: q_limit(t) };
        for (k, &g) in self.ordinates.iter().enumerate() {
            let m = smooth_count(g);
            let (q_at, q_before) = ((k + 1) as f64 - m, k as f64 - m);
            if !q_within(g, q_at) {
                return Err(fail(g, k + 1, q_at));
            }
            if !q_within(g, q_before) {
                return Err(fail(g, k, q_before));
            }
        }
        if self.t_max >= 1.0 {
            let n = self.ordinates.len();
            let q = n as f64 - smooth_count(self.t_max);
            if !q_within(self.t_max, q) {
                return Err(fail(self.t_max, n, q));
            }
        }
        Ok(())
    }
}

/// N(t) and Q(t), checked against |Q(t)| ≤ (1/5)log t + 2 (|Q| < 1 up to
/// 280) and, for t ≥ 2π, N(t) ≤ (t/2π)log(t/2π).
pub fn count_and_q(zl: &ZeroList, t: f64) -> Result<ZeroCountStats> {
    zl.check_height(t)?;
    let n = zl.count(t);
    let q = n as f64 - smooth_count(t);
    if t >= 1.0 && !q_within(t, q) {
        return Err(Error::MissedZero { t, count: n, q, limit: q_limit(t) });
    }
    if t >= 2.0 * PI && n as f64 > t / (2.0 * PI) * (t / (2.0 * PI)).ln() {
        return Err(Error::MissedZero { t, count: n, q, limit: q_limit(t) });
    }
    Ok(ZeroCountStats { t, n, q })
}

// ---------------------------------------------------------------------------
// Persistence

/// Text form: `# t_max=<v> rh=<0|1>`, then one ordinate per line. With
/// `decimals = None` the shortest round-trip representation is written.
pub fn format_zeros(zl: &ZeroList, decimals: Option<usize>) -> String {
    let mut out = String::with_capacity(24 * zl.len() + 32);
    let _ = writeln!(out, "# t_max={} rh={}", zl.t_max, u8::from(zl.rh_assumed));
    for &g in &zl.ordinates {
        let _ = match decimals {
            Some(d) => writeln!(out, "{g:.d$}"),
            None => writeln!(out, "{g}"),
        };
    }
    out
}

/// Writes the list atomically: a temporary file in the same directory is
/// renamed over `path`.
pub fn save_zeros(zl: &ZeroList, path: &Path) -> Result<()> {
    write_atomic(path, format_zeros(zl, None).as_bytes())
}

pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d.to_path_buf(),
        _ => std::path::PathBuf::from("."),
    };
    let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    let tmp = dir.join(format!(".{name}.tmp{}", std::process::id()));
    let result = (|| {
        let mut f = std::fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
        std::fs::rename(&tmp, path)
    })();
    if result.is_err() {
        let _ = std::fs::remove_file(&tmp);
    }
    Ok(result?)
}

pub fn load_zeros(path: &Path) -> Result<ZeroList> {
    let text = std::fs::read_to_string(path)?;
    parse_zeros(&text, path)
}

/// Parses the text form; `origin` is used in error messages and as the
/// list's source tag.
pub fn parse_zeros(text: &str, origin: &Path) -> Result<ZeroList> {
    let parse_err = |line: usize, msg: String| Error::Parse { path: origin.to_path_buf(), line, msg };
    let mut ordinates: Vec<f64> = Vec::new();
    let mut t_max = None;
    let mut rh = false;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            for token in comment.split_whitespace() {
                if let Some(v) = token.strip_prefix("t_max=") {
                    let v: f64 = v.parse().map_err(|_| parse_err(line_no, format!("bad t_max value {v:?}")))?;
                    t_max = Some(v);
                } else if let Some(v) = token.strip_prefix("rh=") {
                    rh = match v {
                        "1" => true,
                        "0" => false,
                        _ => return Err(parse_err(line_no, format!("bad rh flag {v:?}"))),
                    };
                }
            }
            continue;
        }
        if line.contains(['e', 'E']) {
            return Err(parse_err(line_no, "exponent notation is not allowed".into()));
        }
        let g: f64 = line.parse().map_err(|_| parse_err(line_no, format!("not a decimal number: {line:?}")))?;
        if !(g.is_finite() && g > 0.0) {
            return Err(parse_err(line_no, format!("ordinate must be positive and finite, got {line}")));
        }
        if let Some(&prev) = ordinates.last() {
            if !(prev < g) {
                return Err(Error::NotAscending { path: origin.to_path_buf(), line: line_no });
            }
        }
        if ordinates.is_empty() && (g - FIRST_ORDINATE).abs() > FIRST_ORDINATE_TOL {
            return Err(Error::FirstZero { value: g });
        }
        ordinates.push(g);
    }
    let t_max = match t_max {
        Some(v) => v,
        None => ordinates.last().copied().unwrap_or(0.0),
    };
    ZeroList::new(ordinates, t_max, origin.display().to_string(), rh)
}

/// The bundled fixture of the first 100 zeros.
pub fn bundled_first_100() -> ZeroList {
    parse_zeros(BUNDLED_FIRST_100, Path::new("zeros_100.txt")).expect("bundled fixture is valid")
}

// ---------------------------------------------------------------------------
// Sums over zeros

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Monotone {
    Increasing,
    Decreasing,
}

/// Exact Σ_{t0<γ≤t1} φ(γ) with the two one-sided bounds: for decreasing
/// non-negative φ,
/// (1/2π)∫φ log(t/2π) + φ(t0)((1/5)log t0 + 2 - Q(t0)) + (1/5)∫φ/t,
/// and for increasing non-negative φ,
/// (1/2π)∫φ log(t/2π) + φ(t1)((1/5)log t1 + 2 + Q(t1)) - (1/5)∫φ/t
/// - φ(t0)((1/5)log t0 + 2 + Q(t0)).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LehmanSums {
    pub exact: f64,
    pub decreasing_bound: f64,
    pub increasing_bound: f64,
}

impl LehmanSums {
    pub fn bound_for(&self, direction: Monotone) -> f64 {
        match direction {
            Monotone::Increasing => self.increasing_bound,
            Monotone::Decreasing => self.decreasing_bound,
        }
    }
}

const MONOTONE_SAMPLES: usize = 256;

pub fn lehman_sum(zl: &ZeroList, phi: &dyn Fn(f64) -> f64, direction: Monotone, t0: f64, t1: f64) -> Result<LehmanSums> {
    if !(t0 >= 14.0 && t0 <= t1) {
        return Err(Error::Domain(format!("need 14 <= t0 <= t1, got t0 = {t0}, t1 = {t1}")));
    }
    zl.check_height(t1)?;
    let mut prev = phi(t0);
    for k in 1..=MONOTONE_SAMPLES {
        let v = phi(t0 + (t1 - t0) * k as f64 / MONOTONE_SAMPLES as f64);
        let slack = 1e-12 * (1.0 + v.abs());
        let ok = match direction {
            Monotone::Increasing => v >= prev - slack,
            Monotone::Decreasing => v <= prev + slack,
        };
        if !ok || v < 0.0 {
            let expected = match direction {
                Monotone::Increasing => "non-negative and increasing",
                Monotone::Decreasing => "non-negative and decreasing",
            };
            return Err(Error::MonotonicityMismatch { expected });
        }
        prev = v;
    }
    let lo = zl.count(t0);
    let hi = zl.count(t1);
    let exact: Neumaier = zl.ordinates[lo..hi].iter().map(|&g| phi(g)).collect();
    let panels = 64;
    let main = simpson(|t: f64| phi(t) * (t / (2.0 * PI)).ln(), t0, t1, 1e-11, panels)? / (2.0 * PI);
    let inv = simpson(|t: f64| phi(t) / t, t0, t1, 1e-11, panels)?;
    let q0 = lo as f64 - smooth_count(t0);
    let q1 = hi as f64 - smooth_count(t1);
    let c0 = 0.2 * t0.ln() + 2.0;
    let c1 = 0.2 * t1.ln() + 2.0;
    Ok(LehmanSums {
        exact: exact.value(),
        decreasing_bound: main + phi(t0) * (c0 - q0) + 0.2 * inv,
        increasing_bound: main + phi(t1) * (c1 + q1) - 0.2 * inv - phi(t0) * (c0 + q0),
    })
}

/// Upper bound for N(T+a) - N((T-a)⁻): (2/5)log T + 4 + (a/π)log(T/2π).
pub fn box_count_bound(t: f64, a: f64) -> Result<f64> {
    if !(t >= 1.0 && a > 0.0 && a < t) {
        return Err(Error::Domain(format!("need T >= 1 and 0 < a < T, got T = {t}, a = {a}")));
    }
    Ok(0.4 * t.ln() + 4.0 + a / PI * (t / (2.0 * PI)).ln())
}

/// Σ_{γ>t0} 1/γ² from the list plus an estimate of the part beyond t_max,
/// and the closed-form bound (1/2πt0)log(et0/2π) + ((2/5)log t0 + 41/10)/t0².
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InverseSquareTail {
    pub value: f64,
    /// Bound on the error of the estimate used beyond t_max.
    pub remainder_error: f64,
    pub bound: f64,
}

const TAIL_ERROR_CAP: f64 = 1e-6;

/// The part beyond T = t_max is estimated as (1/2πT)log(eT/2π) - Q(T)/T²,
/// off by at most ((1/5)log T + 21/10)/T².
pub fn inverse_square_tail(zl: &ZeroList, t0: f64) -> Result<InverseSquareTail> {
    if !(t0 >= 14.0) {
        return Err(Error::Domain(format!("need t0 >= 14, got {t0}")));
    }
    zl.check_height(t0)?;
    let big_t = zl.t_max;
    let remainder_error = (0.2 * big_t.ln() + 2.1) / (big_t * big_t);
    if remainder_error >= TAIL_ERROR_CAP {
        return Err(Error::Range(format!(
            "zero list height {big_t} leaves a tail uncertainty {remainder_error:e} >= {TAIL_ERROR_CAP:e}"
        )));
    }
    let q_t = zl.len() as f64 - smooth_count(big_t);
    let beyond = (E * big_t / (2.0 * PI)).ln() / (2.0 * PI * big_t) - q_t / (big_t * big_t);
    let lo = zl.count(t0);
    let mut acc: Neumaier = zl.ordinates[lo..].iter().rev().map(|&g| 1.0 / (g * g)).collect();
    acc.add(beyond);
    let bound = (E * t0 / (2.0 * PI)).ln() / (2.0 * PI * t0) + (0.4 * t0.ln() + 4.1) / (t0 * t0);
    Ok(InverseSquareTail { value: acc.value(), remainder_error, bound })
}

/// Σ_{|γ-t|≤a} 1/(s-ρ) and the radius within which ζ'/ζ(s) lies:
/// κ₁log(t/2π) + κ₂((2/5)log t + 4) + 2.02·10⁻³ + |ζ'/ζ(σ₊)|, with
/// κ₁ = ((σ₊-σ)/a + a/d)/π, κ₂ = (σ₊-σ)/a² + |(σ₊-σ)/a² - 1/d|, and
/// d = σ₊ - 1/2 when the zeros are on the critical line (σ₊ - 1 otherwise).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalLogDeriv {
    pub sum: Complex64,
    pub radius: f64,
}

pub fn local_log_deriv(zl: &ZeroList, s: Complex64, a: f64, sigma_plus: f64) -> Result<LocalLogDeriv> {
    let (sigma, t) = (s.re, s.im);
    if !(sigma_plus > 1.0 && sigma_plus <= 2.0 && sigma >= -2.0 && sigma <= sigma_plus) {
        return Err(Error::Domain(format!("need -2 <= σ <= σ₊ <= 2 and σ₊ > 1, got σ = {sigma}, σ₊ = {sigma_plus}")));
    }
    if !(a > 0.0 && t >= 1000f64.max(a)) {
        return Err(Error::Domain(format!("need a > 0 and t >= max(1000, a), got t = {t}, a = {a}")));
    }
    zl.check_height(t + a)?;
    let lo = zl.ordinates.partition_point(|&g| g < t - a);
    let hi = zl.count(t + a);
    let sum = zl.ordinates[lo..hi]
        .iter()
        .fold(Complex64::new(0.0, 0.0), |acc, &g| acc + 1.0 / (s - Complex64::new(0.5, g)));
    let d = if zl.rh_assumed { sigma_plus - 0.5 } else { sigma_plus - 1.0 };
    let w = sigma_plus - sigma;
    let k1 = (w / a + a / d) / PI;
    let k2 = w / (a * a) + (w / (a * a) - 1.0 / d).abs();
    let at_plus = log_deriv_zeta(Complex64::new(sigma_plus, 0.0))?;
    let radius = k1 * (t / (2.0 * PI)).ln() + k2 * (0.4 * t.ln() + 4.0) + 2.02e-3 + at_plus.value.norm() + at_plus.abs_error;
    Ok(LocalLogDeriv { sum, radius })
}
