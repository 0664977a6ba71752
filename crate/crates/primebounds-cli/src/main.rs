//! `primebounds`: batch front end for zero acquisition, sieving, bound
//! assembly and the verification suites.
//!
//! Results are JSON (numbers as 17-digit decimal strings) on stdout or in
//! `--out`, written atomically. Errors go to stderr as
//! `{"error": {"kind": ..., "message": ...}}`. Exit status: 0 success,
//! 1 computation error, 2 usage error, 3 a check failed.

mod constants;
mod verify;

use clap::{Args, Parser, Subcommand, ValueEnum};
use primebounds::formula::{
    counterexample_mean, decimal17, explicit_formula_bound, write_reports_csv, Branch, CounterexampleRow,
    CounterexampleSpec,
};
use primebounds::sieve::{
    extrema_scan, for_each_prime_power, psi_checkpoints, write_checkpoints_csv, ExtremaRecord, Statistic, DESK_CEILING,
    MAX_X,
};
use primebounds::summation::Neumaier;
use primebounds::zeros::{count_and_q, find_zeros, load_zeros, q_limit, save_zeros, write_atomic, ZeroList, FINDER_HEIGHT_CAP};
use serde_json::{json, Value};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

const ZERO_TOL: f64 = 1e-9;
const Q_SAMPLES: usize = 16;

#[derive(Parser, Debug)]
#[command(name = "primebounds", version, about = "Explicit bounds for prime sums from zeta zeros")]
struct Cli {
    /// Print the table of published constants with recomputed values and exit.
    #[arg(long)]
    reference_constants: bool,

    /// Worker threads for the parallel reductions (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Find (or load) zeta zeros up to a height and write them with count statistics.
    Zeros(ZerosArgs),
    /// Two-sided bounds for Σ Λ(n)n^{−σ}/x^{1−σ}, compared with the sieve.
    PsiBound(PsiBoundArgs),
    /// Empirical means of the Fejér-kernel counterexample sequence.
    Counterexample(CounterexampleArgs),
    /// ψ(x) checkpoints or an extrema scan.
    Sieve(SieveArgs),
    /// Run a verification suite and emit its pass/fail matrix.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
struct ZerosArgs {
    #[arg(long)]
    t_max: f64,
    /// Read ordinates from this file instead of running the finder.
    #[arg(long)]
    load: Option<PathBuf>,
    /// Zero file to write.
    #[arg(long, default_value = "zeros.txt")]
    out: PathBuf,
    /// Statistics JSON path (stdout when absent).
    #[arg(long)]
    stats: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct PsiBoundArgs {
    /// Height T of the zero data.
    #[arg(long)]
    t_max: f64,
    /// Ascending, comma-separated x values; scientific notation allowed.
    #[arg(long, value_delimiter = ',', required = true)]
    x: Vec<f64>,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    sigma: f64,
    /// Zero file to use instead of running the finder.
    #[arg(long)]
    zero_file: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write `x,T,sigma,total_lower,total_upper,observed` rows here.
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct CounterexampleArgs {
    #[arg(long = "K")]
    k: u32,
    #[arg(long = "T")]
    t: f64,
    #[arg(long)]
    delta: f64,
    #[arg(long = "N", value_delimiter = ',', required = true)]
    n: Vec<u32>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ScanKind {
    /// (ψ(x) − x)/√x.
    PsiDeviation,
    /// (Σ_{n≤x} Λ(n)/n − log x + γ)·√x.
    LambdaOverN,
}

#[derive(Args, Debug)]
struct SieveArgs {
    /// Comma-separated checkpoints for ψ(x) and δ(x).
    #[arg(long, value_delimiter = ',', conflicts_with = "scan")]
    x: Vec<f64>,
    /// Scan for running extrema instead of checkpoints.
    #[arg(long, value_enum, requires = "x_max")]
    scan: Option<ScanKind>,
    #[arg(long, default_value_t = 1.0)]
    x_min: f64,
    #[arg(long)]
    x_max: Option<f64>,
    /// Allow x above 10⁹ (up to 10¹⁰).
    #[arg(long)]
    long_run: bool,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write the checkpoints as `x,psi,delta` CSV.
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value = "all")]
    suite: verify::Suite,
    #[arg(long)]
    out: Option<PathBuf>,
}

enum Failure {
    Usage(String),
    Compute(primebounds::Error),
    /// The command ran to completion, but a check it performs failed.
    Check { kind: &'static str, message: String },
}

impl From<primebounds::Error> for Failure {
    fn from(e: primebounds::Error) -> Self {
        Failure::Compute(e)
    }
}

type CmdResult = Result<(), Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn error_json(kind: &str, message: &str) -> String {
    json!({ "error": { "kind": kind, "message": message } }).to_string()
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                e.exit();
            }
            eprintln!("{}", error_json("usage", e.to_string().trim_end()));
            return ExitCode::from(2);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(m)) => {
            eprintln!("{}", error_json("usage", &m));
            ExitCode::from(2)
        }
        Err(Failure::Compute(e)) => {
            eprintln!("{}", error_json(e.kind(), &e.to_string()));
            ExitCode::from(1)
        }
        Err(Failure::Check { kind, message }) => {
            eprintln!("{}", error_json(kind, &message));
            ExitCode::from(3)
        }
    }
}

fn run(cli: Cli) -> CmdResult {
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(usage("--threads must be positive"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| usage(format!("cannot start {n} threads: {e}")))?;
    }
    if cli.reference_constants {
        return emit(&constants::table()?, None);
    }
    match cli.command {
        Some(Command::Zeros(a)) => cmd_zeros(a),
        Some(Command::PsiBound(a)) => cmd_psi_bound(a),
        Some(Command::Counterexample(a)) => cmd_counterexample(a),
        Some(Command::Sieve(a)) => cmd_sieve(a),
        Some(Command::Verify(a)) => cmd_verify(a),
        None => Err(usage("no subcommand given; see --help")),
    }
}

/// Pretty JSON plus a trailing newline, to `path` atomically or to stdout.
fn emit(v: &Value, path: Option<&Path>) -> CmdResult {
    let mut text = serde_json::to_string_pretty(v).expect("JSON values serialise");
    text.push('\n');
    match path {
        Some(p) => write_atomic(p, text.as_bytes())?,
        None => print!("{text}"),
    }
    Ok(())
}

fn dec(v: f64) -> Value {
    Value::String(decimal17(v))
}

fn positive_height(t: f64, flag: &str) -> Result<(), Failure> {
    if !(t.is_finite() && t > 0.0) {
        return Err(usage(format!("{flag} must be positive and finite, got {t}")));
    }
    Ok(())
}

/// Zeros through `t_max`: loaded from `file` (any height it certifies) or
/// found from scratch (up to the finder's cap).
fn acquire_zeros(t_max: f64, file: Option<&Path>) -> Result<ZeroList, Failure> {
    match file {
        Some(f) => Ok(load_zeros(f)?.truncated(t_max)?),
        None => {
            if t_max > FINDER_HEIGHT_CAP {
                return Err(usage(format!(
                    "--t-max {t_max} is above the finder's limit {FINDER_HEIGHT_CAP}; supply a zero file of that height"
                )));
            }
            Ok(find_zeros(t_max, ZERO_TOL)?)
        }
    }
}

fn cmd_zeros(a: ZerosArgs) -> CmdResult {
    positive_height(a.t_max, "--t-max")?;
    let zl = acquire_zeros(a.t_max, a.load.as_deref())?;
    let mut samples = Vec::with_capacity(Q_SAMPLES);
    let mut q_max: f64 = 0.0;
    for k in 1..=Q_SAMPLES {
        let t = a.t_max * k as f64 / Q_SAMPLES as f64;
        let s = count_and_q(&zl, t)?;
        q_max = q_max.max(s.q.abs());
        samples.push(json!({ "t": dec(t), "N": s.n, "Q": dec(s.q), "limit": dec(q_limit(t)) }));
    }
    save_zeros(&zl, &a.out)?;
    let stats = json!({
        "zero_file": a.out.display().to_string(),
        "source": zl.source(),
        "t_max": dec(zl.t_max()),
        "count": zl.len(),
        "rh_assumed": zl.rh_assumed(),
        "max_abs_Q": dec(q_max),
        "samples": samples,
    });
    emit(&stats, a.stats.as_deref())
}

/// Σ_{n≤x} Λ(n)n^{−σ}/x^{1−σ} at each x of an ascending grid, in one pass.
fn normalised_prime_sums(xs: &[f64], sigma: f64) -> Result<Vec<f64>, Failure> {
    let tops: Vec<u64> = xs.iter().map(|&x| x.floor() as u64).collect();
    let hi = *tops.last().expect("grid is nonempty");
    let mut out = Vec::with_capacity(xs.len());
    let mut acc = Neumaier::new();
    let mut next = 0usize;
    for_each_prime_power(hi, |n, l| {
        while next < tops.len() && tops[next] < n {
            out.push(acc.value());
            next += 1;
        }
        acc.add(l * (n as f64).powf(-sigma));
    })?;
    while out.len() < xs.len() {
        out.push(acc.value());
    }
    Ok(out.iter().zip(xs).map(|(s, &x)| s / x.powf(1.0 - sigma)).collect())
}

fn cmd_psi_bound(a: PsiBoundArgs) -> CmdResult {
    positive_height(a.t_max, "--t-max")?;
    if !a.sigma.is_finite() {
        return Err(usage("--sigma must be finite"));
    }
    if a.x.iter().any(|x| !x.is_finite()) || a.x.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(usage("--x must be finite and strictly ascending"));
    }
    if let Some(&x) = a.x.iter().find(|&&x| x <= a.t_max) {
        return Err(usage(format!("every x must exceed T = {}; got x = {x}", a.t_max)));
    }
    let zl = acquire_zeros(a.t_max, a.zero_file.as_deref())?;
    let reports = a.x.iter().map(|&x| explicit_formula_bound(&zl, a.t_max, a.sigma, x)).collect::<Result<Vec<_>, _>>()?;
    let sieved: Vec<f64> = a.x.iter().copied().take_while(|&x| x <= DESK_CEILING as f64).collect();
    let observed = if sieved.is_empty() { Vec::new() } else { normalised_prime_sums(&sieved, a.sigma)? };
    let mut rows = Vec::with_capacity(reports.len());
    let mut violations = Vec::new();
    for (i, r) in reports.iter().enumerate() {
        let mut v = serde_json::to_value(r).expect("reports serialise");
        let obs = observed.get(i).copied();
        let inside = obs.map(|o| r.contains(o));
        if inside == Some(false) {
            violations.push(decimal17(r.x));
        }
        v["observed"] = obs.map_or(Value::Null, dec);
        v["inside"] = inside.map_or(Value::Null, Value::Bool);
        rows.push(v);
    }
    if let Some(p) = &a.csv {
        let pairs: Vec<_> = reports.iter().cloned().zip(a.x.iter().enumerate().map(|(i, _)| observed.get(i).copied())).collect();
        let mut buf = Vec::new();
        write_reports_csv(&mut buf, &pairs).map_err(primebounds::Error::from)?;
        write_atomic(p, &buf)?;
    }
    let doc = json!({
        "T": dec(a.t_max),
        "sigma": dec(a.sigma),
        "zero_source": zl.source(),
        "zero_count": zl.len(),
        "sieve_ceiling": DESK_CEILING,
        "reports": rows,
        "sandwich_holds": violations.is_empty(),
    });
    emit(&doc, a.out.as_deref())?;
    if !violations.is_empty() {
        return Err(Failure::Check {
            kind: "sandwich_violation",
            message: format!("sieve value outside the bound interval at x = {}", violations.join(", ")),
        });
    }
    Ok(())
}

fn counterexample_json(r: &CounterexampleRow) -> Value {
    json!({
        "x": dec(r.x),
        "empirical": dec(r.empirical),
        "finite_k": dec(r.finite_k),
        "prediction": dec(r.prediction),
        "allowance": dec(r.allowance),
    })
}

fn cmd_counterexample(a: CounterexampleArgs) -> CmdResult {
    let spec = CounterexampleSpec::new(a.k, a.t, a.delta)?;
    let mut rows = Vec::with_capacity(a.n.len());
    for &n in &a.n {
        if n == 0 {
            return Err(usage("--N values must be positive"));
        }
        let plus = counterexample_mean(&spec, n, Branch::Plus)?;
        let minus = counterexample_mean(&spec, n, Branch::Minus)?;
        rows.push(json!({ "N": n, "plus": counterexample_json(&plus), "minus": counterexample_json(&minus) }));
    }
    let doc = json!({ "K": a.k, "T": dec(a.t), "delta": dec(a.delta), "rows": rows });
    emit(&doc, a.out.as_deref())
}

fn integer_x(x: f64, long_run: bool) -> Result<u64, Failure> {
    if !(x >= 1.0 && x.is_finite() && x.fract() == 0.0) {
        return Err(usage(format!("x must be a positive integer, got {x}")));
    }
    if x > MAX_X as f64 {
        return Err(usage(format!("x = {x} is above the sieve limit {MAX_X}")));
    }
    if x > DESK_CEILING as f64 && !long_run {
        return Err(usage(format!("x = {x} is above {DESK_CEILING}; pass --long-run to allow it")));
    }
    Ok(x as u64)
}

fn record_json(r: Option<&ExtremaRecord>) -> Value {
    r.map_or(Value::Null, |r| json!({ "at": r.at.to_string(), "value": dec(r.value) }))
}

fn cmd_sieve(a: SieveArgs) -> CmdResult {
    if let Some(kind) = a.scan {
        let hi = integer_x(a.x_max.expect("clap requires --x-max"), a.long_run)?;
        let lo = integer_x(a.x_min, a.long_run)?;
        let statistic = match kind {
            ScanKind::PsiDeviation => Statistic::PsiDeviation,
            ScanKind::LambdaOverN => Statistic::LambdaOverN,
        };
        let scan = extrema_scan(lo, hi, statistic)?;
        let name = match kind {
            ScanKind::PsiDeviation => "psi-deviation",
            ScanKind::LambdaOverN => "lambda-over-n",
        };
        let doc = json!({
            "statistic": name,
            "x_min": lo,
            "x_max": hi,
            "max": record_json(scan.max()),
            "min": record_json(scan.min()),
            "records": scan.records.len(),
        });
        return emit(&doc, a.out.as_deref());
    }
    if a.x.is_empty() {
        return Err(usage("give --x checkpoints or --scan with --x-max"));
    }
    let xs = a.x.iter().map(|&x| integer_x(x, a.long_run)).collect::<Result<Vec<_>, _>>()?;
    let rows = psi_checkpoints(&xs)?;
    if let Some(p) = &a.csv {
        let mut buf = Vec::new();
        write_checkpoints_csv(&mut buf, &rows).map_err(primebounds::Error::from)?;
        write_atomic(p, &buf)?;
    }
    let doc = json!({
        "checkpoints": rows.iter().map(|r| json!({ "x": r.x, "psi": dec(r.psi), "delta": dec(r.delta) })).collect::<Vec<_>>(),
    });
    emit(&doc, a.out.as_deref())
}

fn cmd_verify(a: VerifyArgs) -> CmdResult {
    let rows = verify::run(a.suite)?;
    let failed: Vec<String> = rows.iter().filter(|r| !r.pass).map(|r| format!("{}/{}", r.suite, r.check)).collect();
    let doc = json!({
        "suite": a.suite.name(),
        "rows": rows.iter().map(verify::Row::to_json).collect::<Vec<_>>(),
        "passed": failed.is_empty(),
    });
    emit(&doc, a.out.as_deref())?;
    if !failed.is_empty() {
        return Err(Failure::Check { kind: "verification_failed", message: format!("failed: {}", failed.join(", ")) });
    }
    Ok(())
}
