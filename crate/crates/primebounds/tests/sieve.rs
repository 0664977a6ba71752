use primebounds::sieve::*;
use primebounds::special_fn::EULER_GAMMA;
use primebounds::summation::Neumaier;
use proptest::prelude::*;
use std::path::Path;

/// Λ(n) by trial division.
fn mangoldt(n: u64) -> f64 {
    if n < 2 {
        return 0.0;
    }
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut m = n;
            while m % p == 0 {
                m /= p;
            }
            return if m == 1 { (p as f64).ln() } else { 0.0 };
        }
        p += 1;
    }
    (n as f64).ln()
}

fn by_trial_division(lo: u64, hi: u64) -> Vec<(u64, f64)> {
    (lo..=hi).filter_map(|n| {
        let l = mangoldt(n);
        (l > 0.0).then_some((n, l))
    })
    .collect()
}

#[test]
fn first_prime_powers() {
    let v = lambda_segment(2, 10).unwrap();
    let expected: Vec<(u64, f64)> =
        [(2, 2.0), (3, 3.0), (4, 2.0), (5, 5.0), (7, 7.0), (8, 2.0), (9, 3.0)].iter().map(|&(n, p)| (n, f64::ln(p))).collect();
    assert_eq!(v, expected);
}

#[test]
fn primes_past_one_hundred() {
    let v = lambda_segment(100, 110).unwrap();
    let ns: Vec<u64> = v.iter().map(|e| e.0).collect();
    assert_eq!(ns, vec![101, 103, 107, 109]);
    assert!(v.iter().all(|&(n, l)| l == (n as f64).ln()));
}

#[test]
fn matches_trial_division_to_twenty_thousand() {
    assert_eq!(lambda_segment(2, 20_000).unwrap(), by_trial_division(2, 20_000));
}

#[test]
fn segments_concatenate() {
    let whole = lambda_segment(2, 1_000_000).unwrap();
    let mut pieces = Vec::new();
    let cuts: Vec<u64> = (0..=10).map(|k| 2 + k * 99_999 + if k == 10 { 8 } else { 0 }).collect();
    for w in cuts.windows(2) {
        let hi = if w[1] == *cuts.last().unwrap() { w[1] } else { w[1] - 1 };
        pieces.extend(lambda_segment(w[0], hi).unwrap());
    }
    assert_eq!(*cuts.last().unwrap(), 1_000_000);
    assert_eq!(pieces, whole);
}

#[test]
fn high_segment_matches_trial_division() {
    let lo = 9_999_990_000;
    let hi = 10_000_000_000;
    assert_eq!(lambda_segment(lo, hi).unwrap(), by_trial_division(lo, hi));
}

#[test]
fn psi_small_checkpoints() {
    let rows = psi_checkpoints(&[1, 10]).unwrap();
    assert_eq!(rows[0].psi, 0.0);
    assert!((rows[0].delta - (2.0 * EULER_GAMMA - 1.0)).abs() < 1e-16);
    let psi10 = 3.0 * 2f64.ln() + 2.0 * 3f64.ln() + 5f64.ln() + 7f64.ln();
    assert!((rows[1].psi - psi10).abs() < 1e-14);
}

#[test]
fn delta_accumulation_at_one_million() {
    let x = 1_000_000u64;
    let row = psi_checkpoints(&[x]).unwrap()[0];
    let direct: Neumaier = by_trial_division(2, x).into_iter().map(|(n, l)| l / n as f64).collect();
    let xf = x as f64;
    let gap = row.delta - (direct.value() - xf.ln() + EULER_GAMMA);
    assert!(gap.abs() <= 1.0 / xf);
    // The gap is log x + γ − H_x = −1/(2x) + 1/(12x²) − ...
    let exact_gap = -1.0 / (2.0 * xf) + 1.0 / (12.0 * xf * xf);
    assert!((gap - exact_gap).abs() < 1e-12, "{gap} vs {exact_gap}");
}

#[test]
fn psi_envelope_and_chebyshev_bounds() {
    let xs: Vec<u64> = (8..=36).map(|k| (10f64.powf(k as f64 / 4.0)).round() as u64).collect();
    let rows = psi_checkpoints(&xs).unwrap();
    for w in rows.windows(2) {
        assert!(w[0].psi <= w[1].psi);
    }
    for r in &rows {
        let x = r.x as f64;
        assert!(0.9 * x < r.psi && r.psi < 1.1 * x, "x = {}", r.x);
        let dev = (r.psi - x) / x.sqrt();
        assert!(-0.750_902_443_9 < dev && dev <= 0.790_592_76, "x = {}: {dev}", r.x);
    }
}

#[test]
fn psi_minimum_at_two() {
    let scan = extrema_scan(1, 100_000, Statistic::PsiDeviation).unwrap();
    let min = scan.min().unwrap();
    assert_eq!(min.at, ScanPoint { n: 2, left_limit: true });
    assert!((min.value + 2f64.sqrt()).abs() < 1e-15);
    assert_eq!(format!("{}", min.at), "2-");
}

#[test]
fn lambda_over_n_minimum() {
    let scan = extrema_scan(1, 1_000_000, Statistic::LambdaOverN).unwrap();
    let min = scan.min().unwrap();
    assert_eq!(min.at, ScanPoint { n: 1423, left_limit: true });
    assert!((min.value + 0.758_582_552_0).abs() < 1e-7, "{}", min.value);
}

#[test]
fn scan_records_are_running_extrema() {
    let scan = extrema_scan(10, 50_000, Statistic::PsiDeviation).unwrap();
    let mut hi = f64::NEG_INFINITY;
    let mut lo = f64::INFINITY;
    for r in &scan.records {
        match r.kind {
            ExtremumKind::Max => {
                assert!(r.value > hi);
                hi = r.value;
            }
            ExtremumKind::Min => {
                assert!(r.value < lo);
                lo = r.value;
            }
        }
        assert!(r.at.n >= 10 && r.at.n <= 50_000);
    }
}

#[test]
fn scan_checks_range() {
    assert!(extrema_scan(0, 10, Statistic::PsiDeviation).is_err());
    assert!(extrema_scan(20, 10, Statistic::PsiDeviation).is_err());
    assert!(extrema_scan(1, MAX_X + 1, Statistic::PsiDeviation).is_err());
}

#[test]
fn identical_across_thread_counts() {
    let xs: Vec<u64> = (1..=40).map(|k| k * 1_000_000).collect();
    let run = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| psi_checkpoints(&xs).unwrap())
    };
    let one = run(1);
    let four = run(4);
    for (a, b) in one.iter().zip(&four) {
        assert_eq!(a.psi.to_bits(), b.psi.to_bits());
        assert_eq!(a.delta.to_bits(), b.delta.to_bits());
    }
}

#[test]
fn csv_round_trip() {
    let rows = psi_checkpoints(&[10, 100, 1000, 12345]).unwrap();
    let mut buf = Vec::new();
    write_checkpoints_csv(&mut buf, &rows).unwrap();
    let text = String::from_utf8(buf.clone()).unwrap();
    assert!(text.starts_with("x,psi,delta\n"));
    assert!(text.lines().skip(1).all(|l| !l.contains(['e', 'E'])), "decimal output only");
    let back = read_checkpoints_csv(&buf[..], Path::new("mem")).unwrap();
    assert_eq!(back, rows);
}

#[test]
fn csv_rejects_bad_input() {
    let bad_header = b"x,psi\n10,1.0\n";
    assert!(read_checkpoints_csv(&bad_header[..], Path::new("a.csv")).is_err());
    let bad_row = b"x,psi,delta\n10,abc,0.1\n";
    match read_checkpoints_csv(&bad_row[..], Path::new("b.csv")) {
        Err(e) => assert_eq!(e.kind(), "parse"),
        Ok(_) => panic!("accepted a bad row"),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn random_segments_match_trial_division(lo in 2u64..5_000_000, len in 0u64..3000) {
        prop_assert_eq!(lambda_segment(lo, lo + len).unwrap(), by_trial_division(lo, lo + len));
    }

    #[test]
    fn psi_is_sum_over_prime_powers(x in 1u64..30_000) {
        let row = psi_checkpoints(&[x]).unwrap()[0];
        let direct: f64 = by_trial_division(2, x.max(2)).iter().filter(|e| e.0 <= x).map(|e| e.1).sum();
        prop_assert!((row.psi - direct).abs() < 1e-9);
    }
}
