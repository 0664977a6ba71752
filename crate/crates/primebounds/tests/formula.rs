use num_complex::Complex64;
use primebounds::extremal::{ApproximantParams, Side};
use primebounds::formula::*;
use primebounds::quad::simpson;
use primebounds::sieve::{for_each_prime_power, psi_checkpoints};
use primebounds::special_fn::{cot_stable, digamma, log_deriv_zeta, zeta_em, EULER_GAMMA, LOG_2PI};
use primebounds::summation::Neumaier;
use primebounds::weights::{omega_plus, WeightContext};
use primebounds::zeros::{find_zeros, ZeroList};
use primebounds::Error;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;
use std::sync::OnceLock;

fn zeros() -> &'static ZeroList {
    static CELL: OnceLock<ZeroList> = OnceLock::new();
    CELL.get_or_init(|| find_zeros(21808.0, 1e-9).expect("finder reaches 21808"))
}

fn low_zeros() -> &'static ZeroList {
    static CELL: OnceLock<ZeroList> = OnceLock::new();
    CELL.get_or_init(|| find_zeros(5000.0, 1e-9).expect("finder reaches 5000"))
}

/// Σ_{n≤x} Λ(n)n^{−σ}/x^{1−σ} from the sieve.
fn normalised_prime_sum(x: u64, sigma: f64) -> f64 {
    let mut acc = Neumaier::new();
    for_each_prime_power(x, |n, l| acc.add(l * (n as f64).powf(-sigma))).unwrap();
    acc.value() / (x as f64).powf(1.0 - sigma)
}

// ---------------------------------------------------------------------------
// Trivial zeros

#[test]
fn trivial_plain_sum_is_geometric() {
    let t = trivial_zero_terms(100.0, 0.0, 10.0).unwrap();
    assert!((t.plain - 1.0 / 990.0).abs() < 1e-18);
}

#[test]
fn trivial_terms_below_lemma_bound() {
    let t = trivial_zero_terms(100.0, 0.0, 10.0).unwrap();
    assert!(PI / 100.0 * (t.weighted + t.plain) <= t.bound);
    assert!((t.bound - (0.5 + 2.0 * PI / 100.0) / 990.0).abs() < 1e-18);
    // Direct sum with coth written out.
    let direct: f64 = (1..40).map(|n| (1.0 / (PI * 2.0 * n as f64 / 100.0).tanh()) * 10f64.powi(-2 * n - 1)).sum();
    assert!((t.weighted - direct).abs() < 1e-15 * direct);
}

#[test]
fn trivial_terms_vanish_at_large_x() {
    let t = trivial_zero_terms(100.0, 0.5, 1e30).unwrap();
    assert!(t.weighted < 1e-88 && t.plain < 1e-89 && t.bound < 1e-89);
}

#[test]
fn trivial_terms_reject_sigma_at_minus_two() {
    assert!(matches!(trivial_zero_terms(100.0, -2.0, 10.0), Err(Error::Domain(_))));
}

// ---------------------------------------------------------------------------
// Zero sums

#[test]
fn classical_inverse_ordinate_sum() {
    let zl = zeros();
    let s: Neumaier = zl.ordinates().iter().filter(|&&g| g <= 2e4).map(|g| 2.0 / g).collect();
    assert!((s.value() - 10.319317).abs() < 1e-4, "{}", s.value());
}

#[test]
fn direct_sum_at_1468() {
    let ctx = WeightContext::new(1468.0, 0.0).unwrap();
    let z = nontrivial_zero_sum(zeros(), &ctx, 1.0, ZeroSumMode::AbsBound).unwrap();
    assert!((z.value() - 4.281).abs() < 0.01, "{z:?}");
    assert!(z.value() < vihuela_bound(1468.0));
    assert!((vihuela_bound(1468.0) - 4.441).abs() < 1e-3);
}

#[test]
fn direct_sum_below_psi_factor_at_2e4() {
    let ctx = WeightContext::new(2e4, 0.0).unwrap();
    let z = nontrivial_zero_sum(zeros(), &ctx, 1.0, ZeroSumMode::AbsBound).unwrap();
    assert!(z.value() <= psi_zero_factor(2e4), "{} vs {}", z.value(), psi_zero_factor(2e4));
}

#[test]
fn xi_endpoints_dominate() {
    for &(t, sigma) in &[(1468.0, 0.0), (5000.0, 1.0), (2e4, 0.5)] {
        let ctx = WeightContext::new(t, sigma).unwrap();
        let vals: Vec<f64> = XI_GRID.iter().map(|&xi| weighted_abs_sum(zeros(), &ctx, xi, 0.0, t).unwrap()).collect();
        let ends = vals[0].max(vals[4]);
        assert!(vals.iter().all(|&v| v <= ends), "{vals:?}");
    }
}

#[test]
fn signed_sum_at_x_one_is_sum_of_weights() {
    let t = 300.0;
    let ctx = WeightContext::new(t, 0.0).unwrap();
    let z = nontrivial_zero_sum(zeros(), &ctx, 1.0, ZeroSumMode::ExactSigned).unwrap();
    let direct: f64 = zeros()
        .ordinates()
        .iter()
        .filter(|&&g| g < t)
        .map(|&g| -omega_plus(&ctx, Complex64::new(0.5, g)).unwrap().im)
        .sum();
    match z {
        ZeroSum::Signed { value, .. } => assert!((value - 2.0 * PI / t * direct).abs() < 1e-12),
        _ => panic!("expected the signed form"),
    }
}

#[test]
fn zero_sums_identical_across_thread_counts() {
    let ctx = WeightContext::new(2e4, 0.0).unwrap();
    let run = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| {
            let a = nontrivial_zero_sum(zeros(), &ctx, 1.0, ZeroSumMode::AbsBound).unwrap().value();
            let b = nontrivial_zero_sum(zeros(), &ctx, 1e8, ZeroSumMode::ExactSigned).unwrap().value();
            (a.to_bits(), b.to_bits())
        })
    };
    assert_eq!(run(1), run(4));
}

#[test]
fn zero_sum_needs_height_and_rh() {
    let ctx = WeightContext::new(3e4, 0.0).unwrap();
    assert!(matches!(
        nontrivial_zero_sum(zeros(), &ctx, 1.0, ZeroSumMode::AbsBound),
        Err(Error::HeightExceeded { .. })
    ));
    let plain = ZeroList::new(zeros().ordinates()[..10].to_vec(), 50.0, "no-rh".into(), false).unwrap();
    let ctx = WeightContext::new(45.0, 0.0).unwrap();
    assert!(matches!(nontrivial_zero_sum(&plain, &ctx, 1.0, ZeroSumMode::AbsBound), Err(Error::Domain(_))));
}

#[test]
fn zero_sum_bound_paths() {
    let b = zero_sum_bound(None, 1e7, 0.0).unwrap();
    assert_eq!(b.path, ZeroSumPath::ClosedForm);
    let l = (1e7 / (2.0 * PI)).ln();
    assert!((b.value - (l * l / (2.0 * PI) - 1.01 / (6.0 * PI) * l)).abs() < 1e-12);
    assert!(zero_sum_bound(None, 1468.0, 0.0).is_err());
    let d = zero_sum_bound(Some(zeros()), 1468.0, 0.0).unwrap();
    assert_eq!(d.path, ZeroSumPath::Direct);
    assert!((d.value - 4.281).abs() < 0.01);
}

#[test]
fn adar_and_salmon_cover_the_direct_sums() {
    let (t, t0) = (2e4, 1000.0);
    for sigma in [0.0, 0.5, 1.0] {
        let ctx = WeightContext::new(t, sigma).unwrap();
        for xi in [-1.0, 1.0] {
            let high = weighted_abs_sum(zeros(), &ctx, xi, t0, t).unwrap();
            let low = weighted_abs_sum(zeros(), &ctx, xi, 0.0, t0 + 1e-9).unwrap();
            assert!(high <= adar_bound(t, t0, sigma).unwrap(), "σ = {sigma}: {high}");
            assert!(low <= salmon_bound(zeros(), t, t0, sigma).unwrap(), "σ = {sigma}: {low}");
        }
    }
}

#[test]
fn adar_sigma_dependence_is_linear_in_distance_from_half() {
    let (t, t0): (f64, f64) = (1e5, 1000.0);
    let lt0 = t0.ln();
    let slope = ((std::f64::consts::E * t0 / (2.0 * PI)).ln() / PI + 0.8 / t0 * (lt0 + 10.25)) / t0
        + 2.78 * (t / (2.0 * PI)).ln() / t;
    let a0 = adar_bound(t, t0, 0.0).unwrap();
    let ah = adar_bound(t, t0, 0.5).unwrap();
    let a2 = adar_bound(t, t0, 2.0).unwrap();
    assert!((a0 - ah - 0.5 * slope).abs() < 1e-12);
    assert!((a2 - ah - 1.5 * slope).abs() < 1e-12);
    assert!(adar_bound(t, 10.0, 0.0).is_err());
    assert!(adar_bound(2000.0, 1000.0, 0.0).is_err());
}

// ---------------------------------------------------------------------------
// Constants and the I₊,C components

#[test]
fn arles_constant_value() {
    // mpmath: ζ′/ζ(−1) − 2(ζ′/ζ)′(−1) at 30 digits.
    assert!((arles_constant().unwrap() - 3.861_024_123_326_59).abs() < 1e-8);
}

#[test]
fn a_tilde_values() {
    assert!((a_tilde(-1.0).unwrap() - (-1.485_053_724_405_411)).abs() < 1e-10);
    assert!((a_tilde(1.0).unwrap() + EULER_GAMMA).abs() < 1e-15);
    // Continuity across the Laurent switch.
    let inside = a_tilde(1.0 - 0.9e-6).unwrap();
    let outside = a_tilde(1.0 - 1.1e-6).unwrap();
    assert!((inside - outside).abs() < 1e-7);
    for s in [-1.9, -1.0, 0.0, 0.5, 0.99] {
        assert!(a_tilde(s).unwrap() < 0.0);
    }
}

#[test]
fn adioso_constant_value() {
    let ld = log_deriv_zeta(Complex64::new(1.5, 0.0)).unwrap().re();
    assert!((ld + 1.505_235_355_788_268).abs() < 1e-10);
    assert!((adioso_constant(0.5).unwrap() - 7.076_031_682_583_165).abs() < 1e-10);
}

#[test]
fn ranadi_at_one_hundred() {
    let l = 100f64.ln();
    let s2 = std::f64::consts::SQRT_2;
    let expected = PI * PI / 400.0 * (2.0 * s2 / l.powi(2) + (2.0 + s2) / l.powi(3) + (1.0 / s2) / l.powi(4));
    assert!((ranadi_bound(100.0).unwrap() - expected).abs() < 1e-16);
}

/// Ã(s) at complex s, through the functional equation
/// Ã(s) = ζ′/ζ(1−s) + ψ(1−s) + 1/(1−s) − log 2π − (π/2)cot(πs/2) left of −1/2.
fn a_tilde_c(s: Complex64) -> Complex64 {
    if s.re > -0.5 {
        return -log_deriv_zeta(s).unwrap().value - 1.0 / (s - 1.0);
    }
    guruno(s) - cot_stable(s / 2.0).unwrap() * (PI / 2.0)
}

/// Ã(s) + (π/2)cot(πs/2).
fn guruno(s: Complex64) -> Complex64 {
    let w = 1.0 - s;
    log_deriv_zeta(w).unwrap().value + digamma(w).unwrap().value + 1.0 / w - LOG_2PI
}

#[test]
fn functional_equation_form_matches_direct() {
    for s in [Complex64::new(-1.5, 0.3), Complex64::new(-0.7, 2.0), Complex64::new(-3.2, 1.0)] {
        let direct = -log_deriv_zeta(s).unwrap().value - 1.0 / (s - 1.0);
        assert!((a_tilde_c(s) - direct).norm() < 1e-7 * direct.norm(), "{s}");
    }
}

#[test]
fn arles_quadrature() {
    // The bound keeps the leading term of the expansion in 1/log x, so it
    // tightens as x grows.
    let mut last = 0.0;
    for x in [1e3, 1e6, 1e9, 1e15] {
        let lhs: f64 = simpson(|s: f64| -a_tilde(s).unwrap() * (1.0 - s) * x.powf(s), -1.0, 1.0, 1e-10 * x, 16).unwrap();
        let rhs = arles_bound(x).unwrap();
        assert!(lhs <= rhs && lhs / rhs > last, "x = {x}: {lhs} vs {rhs}");
        last = lhs / rhs;
    }
    assert!(last > 0.94);
}

#[test]
fn moruno_quadrature() {
    let x: f64 = 1e4;
    for scale in [1.0, 0.5] {
        let f = |s: f64| guruno(Complex64::new(s, 0.0)).re * (-scale * (1.0 - s)) * x.powf(s);
        let lhs: f64 = simpson(f, -12.0, -1.0, 1e-16, 32).unwrap();
        assert!(lhs.abs() <= moruno_bound(x).unwrap(), "{lhs}");
    }
}

/// ∫ along straight segments a→b of g(s) ds.
fn segment(a: Complex64, b: Complex64, g: impl Fn(Complex64) -> Complex64) -> Complex64 {
    let d = b - a;
    simpson(|u: f64| g(a + d * u) * d, 0.0, 1.0, 1e-14, 64).unwrap()
}

#[test]
fn ranadi_quadrature() {
    let x: f64 = 100.0;
    let g = |s: Complex64| cot_stable(s / 2.0).unwrap() * (PI / 2.0) * (s - 1.0) * (s * x.ln()).exp();
    let p0 = Complex64::new(-1.0, 0.0);
    let p1 = Complex64::new(-2.0, 1.0);
    let p2 = Complex64::new(-14.0, 1.0);
    let total = segment(p0, p1, g) + segment(p1, p2, g);
    assert!(total.norm() <= ranadi_bound(x).unwrap(), "{} vs {}", total.norm(), ranadi_bound(x).unwrap());
}

#[test]
fn coronidis_quadrature() {
    let x: f64 = 1e6;
    let phi = |s: Complex64| s - 1.0;
    let g = |s: Complex64| a_tilde_c(s) * phi(s) * ((s - 1.0) * x.ln()).exp();
    let real: f64 = simpson(|s: f64| a_tilde(s).unwrap() * (s - 1.0) * x.powf(s - 1.0), -1.0, 1.0, 1e-14, 16).unwrap();
    let p0 = Complex64::new(-1.0, 0.0);
    let p1 = Complex64::new(-2.0, 1.0);
    let p2 = Complex64::new(-8.0, 1.0);
    // The real segment runs from 1 to −1.
    let total = -real + segment(p0, p1, g) + segment(p1, p2, g);
    assert!(total.norm() <= coronidis_bound(x).unwrap(), "{} vs {}", total.norm(), coronidis_bound(x).unwrap());
}

#[test]
fn adioso_quadrature() {
    let (t, x): (f64, f64) = (1000.0, 1e4);
    let f = |sigma: f64| {
        let s = Complex64::new(sigma, t);
        // −ζ′/ζ(s) = Ã(s) + 1/(s − 1).
        let ld = a_tilde_c(s) + 1.0 / (s - 1.0);
        ld.norm() * (1.0 - sigma) * x.powf(-(1.0 - sigma))
    };
    let lhs: f64 = simpson(f, -12.0, -0.5, 1e-14, 64).unwrap();
    let rhs = adioso_bound(0.5, t, x).unwrap();
    assert!(lhs <= rhs, "{lhs} vs {rhs}");
}

#[test]
fn component_chain_dominates_closed_form() {
    for &t in &[1e6, 1e7, 1e9] {
        for &k in &[1.0, 10.0, 1e3, 1e6] {
            let x: f64 = t * k;
            let l = x.ln();
            let ts = t - 0.5;
            let chain = adiaro_bound(t, x).unwrap()
                + adioso_bound(0.5, ts, x).unwrap()
                + 1.0 / (ts * l * l)
                + coronidis_bound(x).unwrap();
            assert!(chain <= hardin_bound(t, x).unwrap(), "T = {t}, x = {x}");
        }
    }
}

#[test]
fn i_plus_c_paths() {
    let lit = i_plus_c_bound(1e6, 1e7).unwrap();
    assert!(lit.literal);
    assert_eq!(lit.value, hardin_bound(1e6, 1e7).unwrap());
    let ext = i_plus_c_bound(5000.0, 1e5).unwrap();
    assert!(!ext.literal && ext.value > 0.0);
    assert!(hardin_bound(1e5, 1e6).is_err());
    assert!(hardin_bound(1e6, 1e5).is_err());
    assert!(adiaro_bound(1e6, 1e5).is_err());
    assert!(coronidis_bound(10.0).is_err());
    assert!(moruno_bound(1.5).is_err());
}

// ---------------------------------------------------------------------------
// Assembly

#[test]
fn main_term_branches() {
    let x = 1e6;
    assert_eq!(main_term(5000.0, 1.0, x).unwrap(), x.ln() - EULER_GAMMA);
    let m0 = main_term(5000.0, 0.0, x).unwrap();
    assert!((m0 - PI / 5000.0 / (PI / 5000.0).tanh()).abs() < 1e-15);
    let a = -log_deriv_zeta(Complex64::new(0.5, 0.0)).unwrap().re();
    let mh = main_term(5000.0, 0.5, x).unwrap();
    assert!((mh - (PI / 5000.0 / (PI * 0.5 / 5000.0).tanh() + a / x.sqrt())).abs() < 1e-12);
}

#[test]
fn pole_bookkeeping_at_sigma_one() {
    // Richardson extrapolation of σ → 1⁻ removes the O(1 − σ) term.
    let (t, x) = (5000.0, 1e5);
    let h = 2e-5;
    let f = |h: f64| main_term(t, 1.0 - h, x).unwrap();
    let limit = 2.0 * f(h / 2.0) - f(h);
    assert!((limit - (x.ln() - EULER_GAMMA)).abs() < 1e-6, "{limit} {}", limit - (x.ln() - EULER_GAMMA));
}

#[test]
fn report_invariants_and_json() {
    let r = explicit_formula_bound(low_zeros(), 5000.0, 0.0, 1e6).unwrap();
    assert!(r.total_lower <= r.total_upper);
    assert!(r.zero_sum_exact.unwrap() <= r.zero_sum_bound);
    assert_eq!(r.zero_sum_path, ZeroSumPath::Direct);
    assert!(!r.i_plus_c_literal);
    let json = r.to_json();
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    for key in [
        "T",
        "sigma",
        "x",
        "main_term",
        "real_pole_term",
        "zero_sum_exact",
        "zero_sum_bound",
        "trivial_zero_bound",
        "i_plus_c_bound",
        "total_upper",
        "total_lower",
    ] {
        let s = v[key].as_str().unwrap_or_else(|| panic!("{key} is not a string"));
        let digits = s.trim_start_matches(['-', '0', '.']).chars().filter(|c| c.is_ascii_digit()).count();
        if s.parse::<f64>().unwrap() != 0.0 {
            assert_eq!(digits, 17, "{key} = {s}");
        }
        assert!(!s.contains(['e', 'E']));
    }
    let back: BoundReport = serde_json::from_str(&json).unwrap();
    assert_eq!(back, r);
}

#[test]
fn report_domain_errors() {
    let zl = low_zeros();
    assert!(matches!(explicit_formula_bound(zl, 5000.0, 0.0, 100.0), Err(Error::Domain(_))));
    assert!(matches!(explicit_formula_bound(zl, 5000.0, -2.5, 1e6), Err(Error::Domain(_))));
    assert!(matches!(explicit_formula_bound(zl, 5000.0, 101.0, 1e6), Err(Error::Domain(_))));
    assert!(matches!(explicit_formula_bound(zl, 6000.0, 0.0, 1e6), Err(Error::HeightExceeded { .. })));
}

#[test]
fn decimal_strings_round_trip() {
    for v in [1.0, -0.1, 1.0 / 3.0, 6.02e23, 1.602e-19, 123456.789, f64::MAX, 5e-324, -2.5e-7] {
        let s = decimal17(v);
        assert_eq!(s.parse::<f64>().unwrap(), v, "{s}");
        assert!(!s.contains('e'));
    }
    assert_eq!(decimal17(1.5), "1.5000000000000000");
    assert_eq!(decimal17(-0.00125), "-0.0012500000000000000");
}

#[test]
fn sandwich_with_sieve() {
    let zl = low_zeros();
    let t = 5000.0;
    for x in [100_000u64, 1_000_000, 10_000_000] {
        for sigma in [-1.5, 0.0, 0.5, 1.0, 2.0] {
            let r = explicit_formula_bound(zl, t, sigma, x as f64).unwrap();
            let observed = normalised_prime_sum(x, sigma);
            assert!(r.contains(observed), "x = {x}, σ = {sigma}: {observed} not in [{}, {}]", r.total_lower, r.total_upper);
        }
    }
}

#[test]
fn signed_sandwich_with_sieve() {
    // The formula with the signed zero sum in the centre and only the O*
    // terms in the radius.
    let zl = low_zeros();
    let t = 5000.0;
    for x in [20_011u64, 123_457, 1_000_003, 9_999_991] {
        for sigma in [0.0, 1.0] {
            let xf = x as f64;
            let ctx = WeightContext::new(t, sigma).unwrap();
            let (value, radius) = match nontrivial_zero_sum(zl, &ctx, xf, ZeroSumMode::ExactSigned).unwrap() {
                ZeroSum::Signed { value, radius } => (value, radius),
                _ => unreachable!(),
            };
            let abs = nontrivial_zero_sum(zl, &ctx, xf, ZeroSumMode::AbsBound).unwrap().value();
            assert!(value.abs() + radius <= abs / xf.sqrt() + 1e-15);
            let r = explicit_formula_bound(zl, t, sigma, xf).unwrap();
            let other = r.radius() - abs / xf.sqrt();
            let observed = normalised_prime_sum(x, sigma);
            let centre = r.main_term + value;
            assert!((observed - centre).abs() <= other + radius, "x = {x}, σ = {sigma}");
        }
    }
}

#[test]
fn width_shrinks_with_height_at_large_x() {
    let zl = zeros();
    for x in [1e8, 1e9, 60f64.exp()] {
        let widths: Vec<f64> = [1e3, 5e3, 2e4]
            .iter()
            .map(|&t| {
                let r = explicit_formula_bound(zl, t, 0.0, x).unwrap();
                r.total_upper - r.total_lower
            })
            .collect();
        assert!(widths.windows(2).all(|w| w[1] <= w[0]), "x = {x}: {widths:?}");
    }
}

#[test]
fn width_can_grow_with_height_at_moderate_x() {
    // Z(T)/√x grows with T, so for x not far above T more zeros cost more
    // than the π/T term saves.
    let zl = zeros();
    let w = |t: f64| {
        let r = explicit_formula_bound(zl, t, 0.0, 1e7).unwrap();
        r.total_upper - r.total_lower
    };
    assert!(w(2e4) > w(5e3));
}

#[test]
fn table_epsilons() {
    let x = 60f64.exp();
    let e1 = explicit_formula_bound(zeros(), 1468.0, 0.0, x).unwrap().epsilon();
    let e2 = explicit_formula_bound(zeros(), 21808.0, 0.0, x).unwrap().epsilon();
    assert!((e1 / 0.0021431 - 1.0).abs() < 5e-4, "{e1}");
    assert!((e2 / 1.44071e-4 - 1.0).abs() < 5e-4, "{e2}");
}

#[test]
fn reports_csv() {
    let r = explicit_formula_bound(low_zeros(), 5000.0, 0.0, 1e6).unwrap();
    let mut buf = Vec::new();
    write_reports_csv(&mut buf, &[(r.clone(), Some(0.999)), (r, None)]).unwrap();
    let text = String::from_utf8(buf).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "x,T,sigma,total_lower,total_upper,observed");
    assert!(lines[1].ends_with(",0.99900000000000000"));
    assert!(lines[2].ends_with(','));
}

// ---------------------------------------------------------------------------
// Concrete ψ bounds

#[test]
fn psi_envelope_at_one_million() {
    let b = psi_concrete_bound(1e6).unwrap();
    assert!((b.envelope - (PI * 1e6 / 3e12 + 113.67e3)).abs() < 1e-9);
    assert!(b.refined.is_none());
}

#[test]
fn refined_envelope_threshold() {
    // Bisect for 2π²√x/log x = 10⁷.
    let (mut lo, mut hi) = (1e14f64, 1e15f64);
    for _ in 0..200 {
        let mid = (lo * hi).sqrt();
        if refined_height(mid) >= 1e7 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    assert!((hi / 2.8427e14 - 1.0).abs() < 1e-4, "{hi:e}");
    assert!(psi_concrete_bound(lo * (1.0 - 1e-9)).unwrap().refined.is_none());
    assert!(psi_concrete_bound(hi * (1.0 + 1e-9)).unwrap().refined.is_some());
    assert!(psi_concrete_bound(33f64.exp()).unwrap().refined.is_none());
    for x in [1e15, 1e20, 1e30] {
        let b = psi_concrete_bound(x).unwrap();
        let schoen = x.sqrt() / (8.0 * PI) * x.ln().powi(2);
        assert!(b.refined.unwrap() <= schoen);
    }
    assert!(psi_concrete_bound(1.0001).unwrap().refined.is_none());
}

#[test]
fn psi_envelope_holds_on_sieve_grid() {
    let xs: Vec<u64> = (1..=32).map(|k| 10f64.powf(k as f64 / 4.0).round() as u64).collect();
    for row in psi_checkpoints(&xs).unwrap() {
        let x = row.x as f64;
        let b = psi_concrete_bound(x).unwrap();
        assert!((row.psi - x).abs() <= b.envelope, "x = {}", row.x);
    }
}

// ---------------------------------------------------------------------------
// Counterexample

#[test]
fn counterexample_single_term() {
    let spec = CounterexampleSpec::new(1, 10.0, 0.1).unwrap();
    let row = counterexample_mean(&spec, 1, Branch::Minus).unwrap();
    assert!(row.x < 2.0);
    assert!((row.empirical - 2.0 / row.x).abs() < 1e-15);
}

#[test]
fn counterexample_means_match_oracle() {
    // numpy direct sums of the Fejér kernel.
    let spec = CounterexampleSpec::new(500, 1.0, 0.1).unwrap();
    let cases = [(2, Branch::Plus, 5.652211348601928), (2, Branch::Minus, 0.04699492962825737), (1, Branch::Plus, 6.486595667785243)];
    for (n, branch, expected) in cases {
        let row = counterexample_mean(&spec, n, branch).unwrap();
        assert!((row.empirical - expected).abs() < 1e-9, "{row:?}");
        assert!((row.empirical - row.finite_k).abs() <= row.allowance, "{row:?}");
    }
}

#[test]
fn counterexample_predictions() {
    let spec = CounterexampleSpec::new(500, 1.0, 0.1).unwrap();
    let plus = counterexample_mean(&spec, 2, Branch::Plus).unwrap();
    let minus = counterexample_mean(&spec, 2, Branch::Minus).unwrap();
    assert!((plus.prediction - 5.69589793358648).abs() < 1e-12);
    assert!((minus.prediction - 0.0129917719062565).abs() < 1e-12);
    assert!(plus.empirical > plus.prediction - plus.allowance);
    assert!(minus.empirical < minus.prediction + minus.allowance);
    // The finite-K means approach the limit as K grows.
    let big = counterexample_mean(&CounterexampleSpec::new(20_000, 1.0, 0.1).unwrap(), 1, Branch::Plus).unwrap();
    assert!((big.finite_k - big.prediction).abs() < (plus.finite_k - plus.prediction).abs());
}

#[test]
fn counterexample_residue_at_one() {
    // (s − 1)Σ_k (1 − |k|/(K+1))ζ(s − ikT) → 1 as s → 1, with an O(s − 1) gap.
    let (k, t) = (3i32, 1.0);
    let gap = |h: f64| {
        let s = Complex64::new(1.0 + h, 0.0);
        let mut a = Complex64::new(0.0, 0.0);
        for j in -k..=k {
            let w = 1.0 - j.abs() as f64 / (k + 1) as f64;
            a += zeta_em(s - Complex64::new(0.0, j as f64 * t), 1e-9).unwrap().value * w;
        }
        (a * h - 1.0).norm()
    };
    let (g1, g2) = (gap(1e-3), gap(1e-4));
    assert!(g1 < 1e-2 && g2 < 1e-3, "{g1} {g2}");
    assert!((g1 / g2 - 10.0).abs() < 0.1, "{g1} {g2}");
}

#[test]
fn counterexample_guards() {
    assert!(CounterexampleSpec::new(0, 1.0, 0.1).is_err());
    assert!(CounterexampleSpec::new(5, 0.5, 0.1).is_err());
    assert!(CounterexampleSpec::new(5, 1.0, 3.5).is_err());
    let spec = CounterexampleSpec::new(5, 1.0, 0.1).unwrap();
    assert!(matches!(counterexample_mean(&spec, 4, Branch::Plus), Err(Error::Range(_))));
}

#[test]
fn counterexample_identical_across_thread_counts() {
    let spec = CounterexampleSpec::new(50, 1.0, 0.1).unwrap();
    let run = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| counterexample_mean(&spec, 2, Branch::Plus).unwrap().empirical.to_bits())
    };
    assert_eq!(run(1), run(3));
}

// ---------------------------------------------------------------------------
// Fourier–Perron identity

#[test]
fn perron_single_term() {
    let p = ApproximantParams::new(1.0, Side::Majorant).unwrap();
    let c = perron_identity_check(&[1.0], &p, 30.0, 0.5, 7.3).unwrap();
    assert!(c.discrepancy < 1e-10, "{c:?}");
}

#[test]
fn perron_von_mangoldt_coefficients() {
    let lambda: Vec<f64> = (1..=50u64)
        .map(|n| {
            let mut found = 0.0;
            for p in 2..=n {
                if (2..p).all(|d| p % d != 0) {
                    let mut m = n;
                    while m % p == 0 {
                        m /= p;
                    }
                    if m == 1 && n % p == 0 {
                        found = (p as f64).ln();
                    }
                    if n % p == 0 {
                        break;
                    }
                }
            }
            found
        })
        .collect();
    assert!((lambda[7] - 2f64.ln()).abs() < 1e-15 && lambda[5] == 0.0);
    for side in [Side::Majorant, Side::Minorant] {
        let p = ApproximantParams::new(-2.0, side).unwrap();
        let c = perron_identity_check(&lambda, &p, 20.0, 1.5, 12.5).unwrap();
        assert!(c.discrepancy < 1e-6, "{c:?}");
    }
}

#[test]
fn perron_fejer_pair() {
    let coeffs: Vec<f64> = (1..=30).map(|n| 1.0 / n as f64).collect();
    let c = perron_identity_check(&coeffs, &FejerPair, 15.0, 0.0, 9.5).unwrap();
    assert!(c.discrepancy < 1e-6, "{c:?}");
}

#[test]
fn perron_rejects_bad_input() {
    assert!(perron_identity_check(&[], &FejerPair, 1.0, 0.0, 2.0).is_err());
    assert!(perron_identity_check(&[1.0], &FejerPair, -1.0, 0.0, 2.0).is_err());
}

#[test]
fn edge_pole_identity() {
    let c = edge_pole_identity_check(&BumpPair::new(), 200.0, 10.5).unwrap();
    assert!(c.discrepancy < 1e-6, "{c:?}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn perron_random_polynomials(seed in 0u64..1_000_000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let len = rng.gen_range(1..=100);
        let coeffs: Vec<f64> = (0..len).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let lambda = if rng.gen_bool(0.5) { 1.0 } else { -1.0 } * rng.gen_range(0.25..4.0);
        let side = if rng.gen_bool(0.5) { Side::Majorant } else { Side::Minorant };
        let p = ApproximantParams::new(lambda, side).unwrap();
        let t = rng.gen_range(2.0..30.0);
        let sigma = rng.gen_range(-1.0..2.0);
        let x = rng.gen_range(1.5..200.0);
        let c = perron_identity_check(&coeffs, &p, t, sigma, x).unwrap();
        prop_assert!(c.discrepancy < 1e-6, "{:?}", c);
    }

    #[test]
    fn trivial_total_below_bound(t in 1.0f64..1e5, sigma in -1.99f64..50.0, x in 1.01f64..1e6) {
        let r = trivial_zero_terms(t, sigma, x).unwrap();
        prop_assert!(PI / t * (r.weighted + r.plain) <= r.bound * (1.0 + 1e-12));
    }

    #[test]
    fn signed_sum_within_abs_bound(x in 20.0f64..1e12, sigma in -1.0f64..2.0) {
        let ctx = WeightContext::new(1468.0, sigma).unwrap();
        let abs = nontrivial_zero_sum(zeros(), &ctx, x, ZeroSumMode::AbsBound).unwrap().value();
        match nontrivial_zero_sum(zeros(), &ctx, x, ZeroSumMode::ExactSigned).unwrap() {
            ZeroSum::Signed { value, radius } => prop_assert!(value.abs() + radius <= abs / x.sqrt() * (1.0 + 1e-12)),
            _ => prop_assert!(false),
        }
    }
}

