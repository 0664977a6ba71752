//! Segmented sieve for Λ(n), with streaming ψ(x) and Σ Λ(n)/n and a scan
//! for the extrema of the normalised error terms.

use crate::error::{Error, Result};
use crate::special_fn::EULER_GAMMA;
use crate::summation::Neumaier;
use rayon::prelude::*;
use std::io::{BufRead, Write};

/// Largest x accepted anywhere in this module.
pub const MAX_X: u64 = 10_000_000_000;
/// Default ceiling for scans run without the long-run option.
pub const DESK_CEILING: u64 = 1_000_000_000;
/// Longest range `lambda_segment` returns in one call.
pub const MAX_SEGMENT: u64 = 100_000_000;
/// Integers per sieve segment.
pub const SEGMENT_LEN: u64 = 1 << 22;
/// Segments sieved in parallel before their output is consumed in order.
const BATCH: usize = 16;

/// ψ(x) and δ(x) = 2γ + Σ_{n≤x} (Λ(n) − 1)/n at an integer x.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SieveCheckpoint {
    pub x: u64,
    pub psi: f64,
    pub delta: f64,
}

/// The two normalised error terms the scan tracks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Statistic {
    /// (ψ(x) − x)/√x.
    PsiDeviation,
    /// (Σ_{n≤x} Λ(n)/n − (log x − γ))·√x.
    LambdaOverN,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExtremumKind {
    Max,
    Min,
}

/// A point of the scan: x = n, or the left limit x = n⁻.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ScanPoint {
    pub n: u64,
    pub left_limit: bool,
}

impl std::fmt::Display for ScanPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.left_limit {
            write!(f, "{}-", self.n)
        } else {
            write!(f, "{}", self.n)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExtremaRecord {
    pub at: ScanPoint,
    pub value: f64,
    pub kind: ExtremumKind,
    pub statistic: Statistic,
}

/// Every new running maximum or minimum, in scan order.
#[derive(Clone, Debug, Default)]
pub struct ExtremaScan {
    pub records: Vec<ExtremaRecord>,
}

impl ExtremaScan {
    pub fn max(&self) -> Option<&ExtremaRecord> {
        self.records.iter().rev().find(|r| r.kind == ExtremumKind::Max)
    }

    pub fn min(&self) -> Option<&ExtremaRecord> {
        self.records.iter().rev().find(|r| r.kind == ExtremumKind::Min)
    }
}

fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// Primes up to `limit` by the plain sieve of Eratosthenes.
fn base_primes(limit: u64) -> Vec<u64> {
    let limit = limit as usize;
    if limit < 2 {
        return Vec::new();
    }
    let mut composite = vec![false; limit + 1];
    let mut primes = Vec::new();
    for i in 2..=limit {
        if !composite[i] {
            primes.push(i as u64);
            let mut j = i * i;
            while j <= limit {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}

/// (n, Λ(n)) for the prime powers in [lo, hi], ascending. `base` must hold
/// every prime up to √hi.
fn sieve_segment(lo: u64, hi: u64, base: &[u64]) -> Vec<(u64, f64)> {
    let mut out = Vec::new();
    if lo <= 2 && 2 <= hi {
        out.push((2, std::f64::consts::LN_2));
    }
    // Odd n in [lo, hi], slot i holding first_odd + 2i.
    let first_odd = if lo % 2 == 1 { lo.max(3) } else { (lo + 1).max(3) };
    if first_odd <= hi {
        let len = ((hi - first_odd) / 2 + 1) as usize;
        let mut composite = vec![false; len];
        for &p in base.iter().skip(1) {
            let p2 = p * p;
            if p2 > hi {
                break;
            }
            let mut m = if p2 >= first_odd { p2 } else { first_odd.div_ceil(p) * p };
            if m % 2 == 0 {
                m += p;
            }
            let mut i = ((m - first_odd) / 2) as usize;
            while i < len {
                composite[i] = true;
                i += p as usize;
            }
        }
        for (i, &c) in composite.iter().enumerate() {
            if !c {
                let n = first_odd + 2 * i as u64;
                out.push((n, (n as f64).ln()));
            }
        }
    }
    let mut powers = Vec::new();
    for &p in base {
        let Some(mut pk) = p.checked_mul(p) else { break };
        if pk > hi {
            break;
        }
        let lp = (p as f64).ln();
        while pk <= hi {
            if pk >= lo {
                powers.push((pk, lp));
            }
            match pk.checked_mul(p) {
                Some(next) => pk = next,
                None => break,
            }
        }
    }
    if !powers.is_empty() {
        out.extend(powers);
        out.sort_unstable_by_key(|e| e.0);
    }
    out
}

fn check_top(hi: u64) -> Result<()> {
    if hi > MAX_X {
        return Err(Error::Range(format!("x = {hi} exceeds the sieve ceiling {MAX_X}")));
    }
    Ok(())
}

/// The prime powers n in [lo, hi] with Λ(n) = log p.
pub fn lambda_segment(lo: u64, hi: u64) -> Result<Vec<(u64, f64)>> {
    if !(2 <= lo && lo <= hi) {
        return Err(Error::Range(format!("need 2 ≤ lo ≤ hi, got [{lo}, {hi}]")));
    }
    check_top(hi)?;
    if hi - lo > MAX_SEGMENT {
        return Err(Error::Range(format!("segment [{lo}, {hi}] is longer than {MAX_SEGMENT}")));
    }
    let base = base_primes(isqrt(hi));
    let mut pieces: Vec<(u64, u64)> = Vec::new();
    let mut a = lo;
    while a <= hi {
        let b = hi.min(a.saturating_add(SEGMENT_LEN - 1));
        pieces.push((a, b));
        a = b + 1;
    }
    let parts: Vec<Vec<(u64, f64)>> = pieces.par_iter().map(|&(a, b)| sieve_segment(a, b, &base)).collect();
    Ok(parts.concat())
}

/// Calls `f(n, Λ(n))` for every prime power n ≤ hi in increasing order.
/// Segments are sieved in parallel batches and consumed in order, so the
/// sequence is the same for any thread count.
pub fn for_each_prime_power(hi: u64, mut f: impl FnMut(u64, f64)) -> Result<()> {
    check_top(hi)?;
    if hi < 2 {
        return Ok(());
    }
    let base = base_primes(isqrt(hi));
    let mut next = 2u64;
    while next <= hi {
        let mut batch = Vec::with_capacity(BATCH);
        while batch.len() < BATCH && next <= hi {
            let b = hi.min(next + SEGMENT_LEN - 1);
            batch.push((next, b));
            next = b + 1;
        }
        let parts: Vec<Vec<(u64, f64)>> = batch.par_iter().map(|&(a, b)| sieve_segment(a, b, &base)).collect();
        for part in parts {
            for (n, l) in part {
                f(n, l);
            }
        }
    }
    Ok(())
}

/// H_x = Σ_{n≤x} 1/n: directly up to 10³, by the asymptotic series above.
pub fn harmonic(x: u64) -> f64 {
    if x <= 1000 {
        return (1..=x).rev().map(|n| 1.0 / n as f64).sum();
    }
    let y = x as f64;
    let y2 = y * y;
    y.ln() + EULER_GAMMA + 1.0 / (2.0 * y) - 1.0 / (12.0 * y2) + 1.0 / (120.0 * y2 * y2) - 1.0 / (252.0 * y2 * y2 * y2)
}

fn delta_from(sum_lambda_over_n: &Neumaier, x: u64) -> f64 {
    let mut d = *sum_lambda_over_n;
    d.add(2.0 * EULER_GAMMA);
    d.minus(harmonic(x))
}

/// ψ and δ at each x of an ascending list, in one pass of the sieve.
pub fn psi_checkpoints(xs: &[u64]) -> Result<Vec<SieveCheckpoint>> {
    if xs.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::Range("checkpoints must be ascending".into()));
    }
    if xs.first() == Some(&0) {
        return Err(Error::Range("checkpoints must be positive".into()));
    }
    let top = xs.last().copied().unwrap_or(1);
    check_top(top)?;
    let mut out = Vec::with_capacity(xs.len());
    let mut psi = Neumaier::new();
    let mut sum = Neumaier::new();
    let mut k = 0;
    let emit = |x: u64, psi: &Neumaier, sum: &Neumaier, out: &mut Vec<SieveCheckpoint>| {
        out.push(SieveCheckpoint { x, psi: psi.value(), delta: delta_from(sum, x) });
    };
    for_each_prime_power(top, |n, l| {
        while k < xs.len() && xs[k] < n {
            emit(xs[k], &psi, &sum, &mut out);
            k += 1;
        }
        psi.add(l);
        sum.add(l / n as f64);
    })?;
    while k < xs.len() {
        emit(xs[k], &psi, &sum, &mut out);
        k += 1;
    }
    Ok(out)
}

/// Running maxima and minima of `statistic` over x ∈ [x_lo, x_max].
///
/// Both statistics decrease between consecutive prime powers (the second
/// has slope (D − 2)/(2√x) with D = Σ Λ(n)/n − log x + γ, and D < 2), so
/// the extrema sit at a jump n (after adding Λ(n)), at a left limit n⁻, or at
/// an end of the range; exactly those points are evaluated.
pub fn extrema_scan(x_lo: u64, x_max: u64, statistic: Statistic) -> Result<ExtremaScan> {
    if !(1 <= x_lo && x_lo <= x_max) {
        return Err(Error::Range(format!("need 1 ≤ x_lo ≤ x_max, got [{x_lo}, {x_max}]")));
    }
    check_top(x_max)?;
    let value = |acc: &Neumaier, x: u64| match statistic {
        Statistic::PsiDeviation => acc.minus(x as f64) / (x as f64).sqrt(),
        Statistic::LambdaOverN => (acc.minus((x as f64).ln()) + EULER_GAMMA) * (x as f64).sqrt(),
    };
    let mut scan = ExtremaScan::default();
    let mut best: Option<(f64, f64)> = None;
    let mut record = |at: ScanPoint, v: f64, scan: &mut ExtremaScan| {
        let (hi, lo) = best.unwrap_or((f64::NEG_INFINITY, f64::INFINITY));
        if v > hi {
            scan.records.push(ExtremaRecord { at, value: v, kind: ExtremumKind::Max, statistic });
        }
        if v < lo {
            scan.records.push(ExtremaRecord { at, value: v, kind: ExtremumKind::Min, statistic });
        }
        best = Some((hi.max(v), lo.min(v)));
    };
    let mut acc = Neumaier::new();
    let mut started = false;
    for_each_prime_power(x_max, |n, l| {
        if n > x_lo {
            if !started {
                record(ScanPoint { n: x_lo, left_limit: false }, value(&acc, x_lo), &mut scan);
                started = true;
            }
            record(ScanPoint { n, left_limit: true }, value(&acc, n), &mut scan);
        }
        acc.add(match statistic {
            Statistic::PsiDeviation => l,
            Statistic::LambdaOverN => l / n as f64,
        });
        if n > x_lo {
            record(ScanPoint { n, left_limit: false }, value(&acc, n), &mut scan);
        }
    })?;
    if !started {
        record(ScanPoint { n: x_lo, left_limit: false }, value(&acc, x_lo), &mut scan);
    }
    record(ScanPoint { n: x_max, left_limit: false }, value(&acc, x_max), &mut scan);
    Ok(scan)
}

/// Writes checkpoints as CSV with header `x,psi,delta`.
pub fn write_checkpoints_csv<W: Write>(mut w: W, rows: &[SieveCheckpoint]) -> std::io::Result<()> {
    writeln!(w, "x,psi,delta")?;
    for r in rows {
        writeln!(w, "{},{},{}", r.x, r.psi, r.delta)?;
    }
    Ok(())
}

/// Reads CSV written by `write_checkpoints_csv`.
pub fn read_checkpoints_csv<R: BufRead>(r: R, origin: &std::path::Path) -> Result<Vec<SieveCheckpoint>> {
    let parse_err = |line: usize, msg: String| Error::Parse { path: origin.to_path_buf(), line, msg };
    let mut rows = Vec::new();
    for (i, line) in r.lines().enumerate() {
        let line = line?;
        let lineno = i + 1;
        if i == 0 {
            if line.trim() != "x,psi,delta" {
                return Err(parse_err(lineno, format!("expected header x,psi,delta, got {line:?}")));
            }
            continue;
        }
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 3 {
            return Err(parse_err(lineno, format!("expected 3 fields, got {}", fields.len())));
        }
        let x = fields[0].trim().parse::<u64>().map_err(|e| parse_err(lineno, format!("x: {e}")))?;
        let psi = fields[1].trim().parse::<f64>().map_err(|e| parse_err(lineno, format!("psi: {e}")))?;
        let delta = fields[2].trim().parse::<f64>().map_err(|e| parse_err(lineno, format!("delta: {e}")))?;
        rows.push(SieveCheckpoint { x, psi, delta });
    }
    Ok(rows)
}
