//! Verification suites: each check recomputes a quantity and compares it
//! with a reference value or inequality.

use crate::Failure;
use clap::ValueEnum;
use num_complex::Complex64;
use primebounds::extremal::{l1_gap, l1_gap_quadrature, phi_hat, truncated_exp, ApproximantParams, Side};
use primebounds::formula::{
    a_tilde, adioso_constant, arles_constant, decimal17, edge_pole_identity_check, explicit_formula_bound,
    nontrivial_zero_sum, perron_identity_check, psi_concrete_bound, psi_zero_factor, vihuela_bound, BumpPair,
    ZeroSumMode,
};
use primebounds::sieve::{extrema_scan, psi_checkpoints, Statistic};
use primebounds::special_fn::{
    badabook_f, badabook_f_slope, coth_real, digamma, ei_and_bound, gamma, laurent_coeffs_a, log_deriv_zeta, EULER_GAMMA,
};
use primebounds::weights::{constants_c, tremic_check, weighted_inv_integral, weighted_log_integral, WeightContext};
use primebounds::zeros::{find_zeros, smooth_count, ZeroList, FIRST_ORDINATE};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use std::f64::consts::PI;

/// Zeros for the zero-based suites: enough for every table height used.
const ZERO_HEIGHT: f64 = 21808.0;
const SEED: u64 = 20_240_601;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    /// Special-function inequalities.
    AppendixA,
    /// Zero counting: Q(t) regime and N(T) bounds.
    AppendixB,
    /// Numerical constants and elementary inequalities.
    AppendixC,
    /// Optimality gaps and domination of the extremal approximants.
    Extremal,
    /// Fourier–Perron identity on random Dirichlet polynomials.
    Perron,
    /// Weighted log and 1/t integrals against their closed-form bounds.
    WeightedIntegrals,
    /// Zero sums, table epsilons and the end-to-end sandwich.
    ZeroSums,
    /// Extrema of the normalised prime sums and the ψ envelope.
    Sieve,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::AppendixA => "appendix-a",
            Suite::AppendixB => "appendix-b",
            Suite::AppendixC => "appendix-c",
            Suite::Extremal => "extremal",
            Suite::Perron => "perron",
            Suite::WeightedIntegrals => "weighted-integrals",
            Suite::ZeroSums => "zero-sums",
            Suite::Sieve => "sieve",
            Suite::All => "all",
        }
    }

    fn members(self) -> Vec<Suite> {
        match self {
            Suite::All => vec![
                Suite::AppendixA,
                Suite::AppendixB,
                Suite::AppendixC,
                Suite::Extremal,
                Suite::Perron,
                Suite::WeightedIntegrals,
                Suite::ZeroSums,
                Suite::Sieve,
            ],
            s => vec![s],
        }
    }
}

pub struct Row {
    pub suite: &'static str,
    pub check: String,
    pub value: f64,
    pub reference: String,
    pub pass: bool,
}

impl Row {
    pub fn to_json(&self) -> Value {
        json!({
            "suite": self.suite,
            "check": self.check,
            "value": decimal17(self.value),
            "reference": self.reference,
            "pass": self.pass,
        })
    }
}

struct Rows {
    suite: &'static str,
    rows: Vec<Row>,
}

impl Rows {
    fn push(&mut self, check: impl Into<String>, value: f64, reference: impl Into<String>, pass: bool) {
        self.rows.push(Row { suite: self.suite, check: check.into(), value, reference: reference.into(), pass });
    }

    fn near(&mut self, check: &str, value: f64, expected: f64, tol: f64) {
        let pass = (value - expected).abs() <= tol;
        self.push(check, value, format!("{expected} ± {tol:e}"), pass);
    }

    fn at_most(&mut self, check: &str, value: f64, bound: f64) {
        self.push(check, value, format!("≤ {}", decimal17(bound)), value <= bound);
    }
}

pub fn run(suite: Suite) -> Result<Vec<Row>, Failure> {
    let mut zeros: Option<ZeroList> = None;
    let mut out = Vec::new();
    for s in suite.members() {
        let mut rows = Rows { suite: s.name(), rows: Vec::new() };
        match s {
            Suite::AppendixA => appendix_a(&mut rows)?,
            Suite::AppendixB => appendix_b(&mut rows, cached(&mut zeros)?)?,
            Suite::AppendixC => appendix_c(&mut rows)?,
            Suite::Extremal => extremal(&mut rows)?,
            Suite::Perron => perron(&mut rows)?,
            Suite::WeightedIntegrals => weighted_integrals(&mut rows)?,
            Suite::ZeroSums => zero_sums(&mut rows, cached(&mut zeros)?)?,
            Suite::Sieve => sieve(&mut rows)?,
            Suite::All => unreachable!("expanded by members()"),
        }
        out.extend(rows.rows);
    }
    Ok(out)
}

fn cached(slot: &mut Option<ZeroList>) -> Result<&ZeroList, Failure> {
    if slot.is_none() {
        *slot = Some(find_zeros(ZERO_HEIGHT, 1e-9)?);
    }
    Ok(slot.as_ref().expect("filled above"))
}

fn appendix_a(r: &mut Rows) -> Result<(), Failure> {
    // Re ϝ(z) ≤ log|z| for Re z ≥ 1/2.
    let mut excess = f64::NEG_INFINITY;
    for &x in &[0.5, 0.75, 1.0, 2.0, 5.0, 20.0] {
        for k in 0..200 {
            let z = Complex64::new(x, 0.25 * k as f64);
            let d = digamma(z)?;
            excess = excess.max(d.value.re - d.abs_error - z.norm().ln());
        }
    }
    r.at_most("digamma-real-part-below-log-modulus", excess, 0.0);

    let mut worst: f64 = 0.0;
    for &y in &[0.5, 1.0, 3.0, 10.0] {
        let g = gamma(Complex64::new(0.5, y))?;
        let exact = PI / (PI * y).cosh();
        worst = worst.max((g.norm_sqr() / exact - 1.0).abs());
    }
    r.at_most("gamma-on-critical-line", worst, 1e-10);

    let l = laurent_coeffs_a(10)?;
    r.push("laurent-coefficients-alternate", l.magnitudes()[0], "a_0 = γ, all a_n > 0", l.signs_alternate() && (l.magnitudes()[0] - EULER_GAMMA).abs() < 1e-14);

    // t·f(t) and f(t) + 1/t increasing on [2, 50].
    let (mut up, mut down) = (f64::INFINITY, f64::INFINITY);
    for k in 0..=480 {
        let t = 2.0 + 0.1 * k as f64;
        let f = badabook_f(t)?;
        let slope = badabook_f_slope(t)?;
        up = up.min(f + t * slope);
        down = down.min(slope - 1.0 / (t * t));
    }
    r.push("t-f-increasing", up, "(t f)′ > 0 on [2, 50]", up > 0.0);
    r.push("f-plus-inverse-increasing", down, "(f + 1/t)′ > 0 on [2, 50]", down > 0.0);

    r.near("log-derivative-constant-half", adioso_constant(0.5)?, 7.076_031_682_583_16, 1e-9);
    r.near("coth-half-pi", coth_real(PI / 2.0), 1.09033, 1e-5);
    Ok(())
}

fn appendix_b(r: &mut Rows, zl: &ZeroList) -> Result<(), Failure> {
    r.near("first-ordinate", zl.ordinates()[0], FIRST_ORDINATE, 1e-9);
    let n100 = zl.ordinates().iter().take_while(|&&g| g <= 100.0).count();
    r.push("count-to-100", n100 as f64, "29", n100 == 29);

    // Q jumps at each ordinate; its extremes are at γ and γ⁻.
    let (mut low, mut high) = (0.0f64, f64::NEG_INFINITY);
    for (i, &g) in zl.ordinates().iter().enumerate() {
        let smooth = smooth_count(g);
        let q = ((i + 1) as f64 - smooth).abs().max((i as f64 - smooth).abs());
        if g <= 280.0 {
            low = low.max(q);
        }
        high = high.max(q - (0.2 * g.ln() + 2.0));
    }
    r.push("q-below-one-to-280", low, "< 1", low < 1.0);
    r.at_most("q-below-log-bound", high, 0.0);

    let mut slack = f64::NEG_INFINITY;
    for k in 1..=40 {
        let t = ZERO_HEIGHT * k as f64 / 40.0;
        let n = zl.ordinates().iter().take_while(|&&g| g <= t).count() as f64;
        slack = slack.max(n - t / (2.0 * PI) * (t / (2.0 * PI)).ln());
    }
    r.at_most("count-below-t-log-t", slack, 0.0);
    Ok(())
}

fn appendix_c(r: &mut Rows) -> Result<(), Failure> {
    r.near("C1", constants_c(1)?, 0.168938, 1e-6);
    r.near("C2", constants_c(2)?, 0.164184, 1e-6);
    r.near("arles-constant", arles_constant()?, 3.86102, 1e-4);
    r.near("a-tilde-at-minus-one", a_tilde(-1.0)?, -1.48505, 1e-4);
    r.near("log-derivative-three-halves", log_deriv_zeta(Complex64::new(1.5, 0.0))?.re(), -1.50523, 1e-5);
    let ok = tremic_check(100)?;
    r.push("tremic-nonnegative", 100.0, "a_n ≥ 0 on [0, 1/2], b_n ≥ 0 on [0, 1/3] for n ≤ 100", ok);
    let mut worst = f64::NEG_INFINITY;
    for &x in &[1.0, 2.0, 5.0, 10.0, 30.0, 31.0, 60.0, 100.0] {
        let (ei, bound) = ei_and_bound(x)?;
        worst = worst.max(ei.value.re / bound);
    }
    r.at_most("exponential-integral-bound-ratio", worst, 1.0);
    Ok(())
}

fn extremal(r: &mut Rows) -> Result<(), Failure> {
    for &lambda in &[0.25, 1.0, 4.0] {
        for side in [Side::Majorant, Side::Minorant] {
            let p = ApproximantParams::new(lambda, side)?;
            let tag = match side {
                Side::Majorant => "majorant",
                Side::Minorant => "minorant",
            };
            let q = l1_gap_quadrature(&p, 1000.0)?;
            r.near(&format!("{tag}-gap-lambda-{lambda}"), q, l1_gap(&p), 1e-5);
            let target = p.target();
            let mut worst = f64::NEG_INFINITY;
            for k in 0..1000 {
                let x = -50.0 + 100.0 * k as f64 / 999.0;
                worst = worst.max(side.sign() * (truncated_exp(&target, x) - phi_hat(&p, x)));
            }
            r.at_most(&format!("{tag}-domination-lambda-{lambda}"), worst, 1e-12);
        }
    }
    Ok(())
}

fn perron(r: &mut Rows) -> Result<(), Failure> {
    let p = ApproximantParams::new(1.0, Side::Majorant)?;
    r.at_most("single-term", perron_identity_check(&[1.0], &p, 30.0, 0.5, 7.3)?.discrepancy, 1e-10);
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let len = rng.gen_range(1..=100);
        let coeffs: Vec<f64> = (0..len).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        let lambda = sign * rng.gen_range(0.25..4.0);
        let side = if rng.gen_bool(0.5) { Side::Majorant } else { Side::Minorant };
        let t = rng.gen_range(2.0..30.0);
        let sigma = rng.gen_range(-1.0..2.0);
        let x = rng.gen_range(1.5..200.0);
        let c = perron_identity_check(&coeffs, &ApproximantParams::new(lambda, side)?, t, sigma, x)?;
        worst = worst.max(c.discrepancy);
    }
    r.at_most("random-polynomials", worst, 1e-6);
    r.at_most("edge-pole", edge_pole_identity_check(&BumpPair::new(), 200.0, 10.5)?.discrepancy, 1e-6);
    Ok(())
}

fn weighted_integrals(r: &mut Rows) -> Result<(), Failure> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 1);
    let (mut log_worst, mut inv_worst) = (f64::NEG_INFINITY, f64::NEG_INFINITY);
    for _ in 0..20 {
        let t = 10f64.powf(rng.gen_range(2.0..6.0));
        let t0 = (2.0 * PI).max(t * 10f64.powf(rng.gen_range(-3.0..-0.1)));
        let (q, loose, sharp) = weighted_log_integral(t, t0)?;
        log_worst = log_worst.max(q - sharp.unwrap_or(loose));
        let (q, bound) = weighted_inv_integral(t, t0)?;
        inv_worst = inv_worst.max(q - bound);
    }
    r.at_most("log-weight-integral", log_worst, 0.0);
    r.at_most("inverse-weight-integral", inv_worst, 0.0);
    Ok(())
}

fn zero_sums(r: &mut Rows, zl: &ZeroList) -> Result<(), Failure> {
    let inv: primebounds::summation::Neumaier = zl.ordinates().iter().filter(|&&g| g <= 2e4).map(|g| 2.0 / g).collect();
    r.near("inverse-ordinate-sum-2e4", inv.value(), 10.319317, 1e-4);

    let abs_sum = |t: f64| -> Result<f64, Failure> {
        let ctx = WeightContext::new(t, 0.0)?;
        Ok(nontrivial_zero_sum(zl, &ctx, 1.0, ZeroSumMode::AbsBound)?.value())
    };
    let z1468 = abs_sum(1468.0)?;
    r.near("direct-sum-1468", z1468, 4.281, 0.01);
    r.at_most("direct-below-closed-form-1468", z1468, vihuela_bound(1468.0));
    r.at_most("direct-below-psi-factor-2e4", abs_sum(2e4)?, psi_zero_factor(2e4));

    let x = 60f64.exp();
    for &(t, expected) in &[(1468.0, 0.0021431), (21808.0, 1.44071e-4)] {
        let eps = explicit_formula_bound(zl, t, 0.0, x)?.epsilon();
        let rel = (eps / expected - 1.0).abs();
        r.push(format!("epsilon-e60-T-{t}"), eps, format!("{expected} to 3 significant figures"), rel < 5e-4);
    }

    let xs: Vec<u64> = vec![100_000, 1_000_000, 10_000_000];
    let rows = psi_checkpoints(&xs)?;
    let mut inside = true;
    let mut margin = f64::INFINITY;
    for row in &rows {
        let rep = explicit_formula_bound(zl, 5000.0, 0.0, row.x as f64)?;
        let obs = row.psi / row.x as f64;
        inside &= rep.contains(obs);
        margin = margin.min((obs - rep.total_lower).min(rep.total_upper - obs));
    }
    r.push("sandwich-T-5000", margin, "ψ(x)/x inside the interval at x = 1e5, 1e6, 1e7", inside);
    Ok(())
}

fn sieve(r: &mut Rows) -> Result<(), Failure> {
    let scan = extrema_scan(1, 1_000_000, Statistic::LambdaOverN)?;
    let min = scan.min().expect("scan is nonempty");
    r.near("lambda-over-n-minimum-1e6", min.value, -0.7585825520, 1e-7);
    r.push("lambda-over-n-argmin", min.at.n as f64, "1423-", min.at.to_string() == "1423-");

    let scan = extrema_scan(10_000, 100_000_000, Statistic::PsiDeviation)?;
    let (max, min) = (scan.max().expect("nonempty"), scan.min().expect("nonempty"));
    r.at_most("psi-deviation-max-to-1e8", max.value, 0.79059275);
    r.near("psi-deviation-min-to-1e8", min.value, -0.7509024438, 1e-7);
    r.push("psi-deviation-argmin", min.at.n as f64, "36917099-", min.at.to_string() == "36917099-");

    let xs: Vec<u64> = (4..=32).map(|k| 10f64.powf(k as f64 / 4.0).round() as u64).collect();
    let mut worst = f64::NEG_INFINITY;
    for row in psi_checkpoints(&xs)? {
        let x = row.x as f64;
        worst = worst.max((row.psi - x).abs() / psi_concrete_bound(x)?.envelope);
    }
    r.at_most("psi-envelope-ratio-to-1e8", worst, 1.0);
    Ok(())
}
