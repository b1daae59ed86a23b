//! Command-line frontend for the relay-channel toolkit: single-channel rate
//! and gap queries, relay-position sweeps, asymptotic scans, the
//! bound-approach search, and the verification suites.
//!
//! Results print as a table by default; `--format json` and `--format csv`
//! switch to machine formats with stable field names, and every number in
//! them is the untouched library value. Exit codes are part of the
//! contract: 0 success, 1 domain error, 2 usage error, 3 verification
//! failure.

use clap::{Args, Parser, Subcommand, ValueEnum};
use relaylab::channel::{snr_from_geometry, Geometry, SnrTriple};
use relaylab::error::Error;
use relaylab::experiments::{
    bound_approach_search, position_sweep, power_scan, proximity_scan_with, run_with_threads,
    ProximityConfig, ProximityKind, SweepSpec,
};
use relaylab::export::{fmt_sig, sweep_to_csv, sweep_to_svg};
use relaylab::gap::{gap_report, GapReport};
use relaylab::rate::{direct_rate, solve_cdf, solve_pdf, RateSolution};
use relaylab::verify::{asymptotic_reference_geometry, asymptotics_suite, oracle_suite, theorem_suite};
use serde_json::{json, Value};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "relaylab",
    version,
    about = "Achievable-rate and gap analysis for the half-duplex AWGN relay channel"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format (the verify subcommand always emits JSON).
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,

    /// Significant digits in table and CSV output (1–17).
    #[arg(long, global = true, default_value_t = 12)]
    precision: usize,

    /// Worker threads for the experiment drivers; 0 means automatic. The
    /// RELAYLAB_THREADS environment variable overrides this flag.
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Solve the achievable rate(s) for one channel.
    Rate(RateArgs),
    /// Full gap analysis for one channel.
    Gap(GapArgs),
    /// Sweep relay positions on a lattice and report the worst normalized gap.
    Sweep(SweepArgs),
    /// Scale both transmit powers through a range and track the gap caps.
    ScanPower(ScanPowerArgs),
    /// Slide the relay toward the source or the destination.
    ScanProximity(ScanProximityArgs),
    /// For each forward-link SNR, search the channel maximizing the normalized gap.
    SearchBound(SearchBoundArgs),
    /// Run the verification suites and emit a JSON summary.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
}

/// A channel given either as the three raw SNRs or as a geometry file —
/// never both.
#[derive(Args)]
struct ChannelArgs {
    /// Source→relay SNR λ01.
    #[arg(long)]
    l01: Option<f64>,
    /// Source→destination SNR λ02.
    #[arg(long)]
    l02: Option<f64>,
    /// Relay→destination SNR λ12.
    #[arg(long)]
    l12: Option<f64>,
    /// JSON geometry file (positions, powers, noises) the SNRs are derived from.
    #[arg(long)]
    scenario: Option<PathBuf>,
}

#[derive(Args)]
struct RateArgs {
    #[command(flatten)]
    channel: ChannelArgs,
    /// Which scheme(s) to solve.
    #[arg(long, value_enum, default_value_t = Scheme::All)]
    scheme: Scheme,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Scheme {
    Cdf,
    Pdf,
    Direct,
    All,
}

#[derive(Args)]
struct GapArgs {
    #[command(flatten)]
    channel: ChannelArgs,
    /// Include the bound columns (r_pdf_ub, g_bar_ub, lemma5_bound, g_ub).
    #[arg(long)]
    bounds: bool,
}

#[derive(Args)]
struct SweepArgs {
    /// Lattice spacing along both axes.
    #[arg(long, default_value_t = 0.01)]
    step: f64,
    /// Write the full per-position table to this CSV file.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write a heatmap of the normalized gap to this SVG file.
    #[arg(long)]
    svg: Option<PathBuf>,
    /// Source transmit power.
    #[arg(long, default_value_t = 100.0)]
    p0: f64,
    /// Relay transmit power.
    #[arg(long, default_value_t = 100.0)]
    p1: f64,
    /// Relay-side noise level.
    #[arg(long, default_value_t = 1.0)]
    n1: f64,
    /// Destination-side noise level.
    #[arg(long, default_value_t = 1.0)]
    n2: f64,
}

#[derive(Args)]
struct ScanPowerArgs {
    /// Smallest power multiplier.
    #[arg(long, default_value_t = 1e-6)]
    p_min: f64,
    /// Largest power multiplier.
    #[arg(long, default_value_t = 1e6)]
    p_max: f64,
    /// Number of log-spaced multipliers from p-min to p-max.
    #[arg(long, default_value_t = 13)]
    points: usize,
    /// JSON geometry file; defaults to the built-in reference geometry.
    #[arg(long)]
    scenario: Option<PathBuf>,
}

#[derive(Args)]
struct ScanProximityArgs {
    /// Which endpoint the relay approaches.
    #[arg(long, value_enum)]
    kind: Kind,
    /// Comma-separated offsets from that endpoint, in (0, 1).
    #[arg(long, value_delimiter = ',', default_values_t = [0.1, 0.01, 0.001, 0.0001])]
    d: Vec<f64>,
    /// Source transmit power.
    #[arg(long, default_value_t = 0.01)]
    p0: f64,
    /// Relay transmit power.
    #[arg(long, default_value_t = 0.01)]
    p1: f64,
    /// Relay-side noise level.
    #[arg(long, default_value_t = 1.0)]
    n1: f64,
    /// Destination-side noise level.
    #[arg(long, default_value_t = 1.0)]
    n2: f64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    NearSource,
    NearDest,
}

#[derive(Args)]
struct SearchBoundArgs {
    /// Comma-separated relay→destination SNRs to search at.
    #[arg(long, value_delimiter = ',', default_values_t = [1e3, 1e4, 1e5])]
    l12: Vec<f64>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Which suite to run.
    #[arg(long, value_enum, default_value_t = Suite::All)]
    suite: Suite,
    /// Seed for the randomized suites.
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Sample count for the randomized suites (defaults: theorem 10000,
    /// oracle 200).
    #[arg(long)]
    samples: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Theorem,
    Oracle,
    Asymptotics,
    All,
}

/// A failed run, carrying which exit-code class it belongs to.
enum Failure {
    /// Exit 1: the computation itself rejected the inputs.
    Domain(String),
    /// Exit 2: the invocation was malformed.
    Usage(String),
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        Failure::Domain(err.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode, Failure> {
    if !(1..=17).contains(&cli.precision) {
        return Err(Failure::Usage(
            "--precision must be between 1 and 17 significant digits".into(),
        ));
    }
    let printer = Printer {
        format: cli.format,
        precision: cli.precision,
    };
    let threads = resolve_threads(cli.threads)?;
    run_with_threads(threads, || match &cli.command {
        Command::Rate(args) => cmd_rate(args, &printer),
        Command::Gap(args) => cmd_gap(args, &printer),
        Command::Sweep(args) => cmd_sweep(args, &printer),
        Command::ScanPower(args) => cmd_scan_power(args, &printer),
        Command::ScanProximity(args) => cmd_scan_proximity(args, &printer),
        Command::SearchBound(args) => cmd_search_bound(args, &printer),
        Command::Verify(args) => cmd_verify(args),
    })
}

/// The environment variable wins over the flag so wrappers and CI can pin
/// the worker count without editing every invocation.
fn resolve_threads(flag: Option<usize>) -> Result<Option<usize>, Failure> {
    match std::env::var("RELAYLAB_THREADS") {
        Ok(raw) => {
            let raw = raw.trim();
            if raw.is_empty() {
                Ok(flag)
            } else {
                raw.parse().map(Some).map_err(|_| {
                    Failure::Usage(format!(
                        "RELAYLAB_THREADS must be a nonnegative integer, got {raw:?}"
                    ))
                })
            }
        }
        Err(_) => Ok(flag),
    }
}

impl ChannelArgs {
    /// Resolves the channel, enforcing that exactly one input style is used.
    /// Flag-sourced SNRs fail as usage errors; scenario-file content fails as
    /// domain errors.
    fn resolve(&self) -> Result<SnrTriple, Failure> {
        let snr_flags = [("--l01", self.l01), ("--l02", self.l02), ("--l12", self.l12)];
        let any_snr = snr_flags.iter().any(|(_, v)| v.is_some());
        match (&self.scenario, any_snr) {
            (Some(_), true) => Err(Failure::Usage(
                "give either --l01/--l02/--l12 or --scenario, not both".into(),
            )),
            (Some(path), false) => {
                let geometry = load_geometry(path)?;
                Ok(snr_from_geometry(&geometry)?)
            }
            (None, _) => {
                for (flag, value) in snr_flags {
                    if value.is_none() {
                        return Err(Failure::Usage(format!(
                            "{flag} is required (or give --scenario instead)"
                        )));
                    }
                }
                SnrTriple::new(
                    self.l01.unwrap(),
                    self.l02.unwrap(),
                    self.l12.unwrap(),
                )
                .map_err(|err| Failure::Usage(format!("invalid SNR flags: {err}")))
            }
        }
    }
}

fn load_geometry(path: &Path) -> Result<Geometry, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|err| Failure::Domain(format!("cannot read {}: {err}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|err| Failure::Domain(format!("invalid scenario {}: {err}", path.display())))
}

/// Formats and prints result rows in the selected output format.
struct Printer {
    format: Format,
    precision: usize,
}

impl Printer {
    fn num(&self, value: f64) -> String {
        fmt_sig(value, self.precision)
    }

    fn opt(&self, value: Option<f64>) -> String {
        value.map(|v| self.num(v)).unwrap_or_else(|| "-".into())
    }

    /// Prints `rows` under `headers` as a table or CSV, or `json` verbatim.
    fn emit(&self, headers: &[&str], rows: &[Vec<String>], json: &Value) {
        match self.format {
            Format::Json => {
                println!(
                    "{}",
                    serde_json::to_string_pretty(json).expect("results serialize")
                );
            }
            Format::Csv => {
                println!("{}", headers.join(","));
                for row in rows {
                    println!("{}", row.join(","));
                }
            }
            Format::Table => {
                let mut widths: Vec<usize> =
                    headers.iter().map(|h| h.chars().count()).collect();
                for row in rows {
                    for (w, cell) in widths.iter_mut().zip(row) {
                        *w = (*w).max(cell.chars().count());
                    }
                }
                let render = |cells: Vec<String>| {
                    cells
                        .iter()
                        .zip(&widths)
                        .map(|(cell, w)| format!("{cell:<w$}"))
                        .collect::<Vec<_>>()
                        .join("  ")
                        .trim_end()
                        .to_string()
                };
                println!(
                    "{}",
                    render(headers.iter().map(|h| h.to_string()).collect())
                );
                for row in rows {
                    println!("{}", render(row.clone()));
                }
            }
        }
    }
}

fn solution_row(p: &Printer, scheme: &str, sol: &RateSolution) -> Vec<String> {
    vec![
        scheme.to_string(),
        p.num(sol.rate),
        p.num(sol.alpha),
        p.num(sol.beta),
        sol.binding.to_string(),
    ]
}

fn solution_json(scheme: &str, sol: &RateSolution) -> Value {
    json!({
        "scheme": scheme,
        "rate": sol.rate,
        "alpha": sol.alpha,
        "beta": sol.beta,
        "binding": sol.binding.to_string(),
    })
}

fn cmd_rate(args: &RateArgs, p: &Printer) -> Result<ExitCode, Failure> {
    let s = args.channel.resolve()?;
    let mut rows = Vec::new();
    let mut entries = Vec::new();
    if matches!(args.scheme, Scheme::Pdf | Scheme::All) {
        let sol = solve_pdf(&s);
        rows.push(solution_row(p, "pdf", &sol));
        entries.push(solution_json("pdf", &sol));
    }
    if matches!(args.scheme, Scheme::Cdf | Scheme::All) {
        let sol = solve_cdf(&s);
        rows.push(solution_row(p, "cdf", &sol));
        entries.push(solution_json("cdf", &sol));
    }
    if matches!(args.scheme, Scheme::Direct | Scheme::All) {
        let rate = direct_rate(&s);
        rows.push(vec![
            "direct".into(),
            p.num(rate),
            p.num(0.0),
            p.num(0.0),
            "-".into(),
        ]);
        entries.push(json!({
            "scheme": "direct",
            "rate": rate,
            "alpha": 0.0,
            "beta": 0.0,
            "binding": Value::Null,
        }));
    }
    p.emit(
        &["scheme", "rate", "alpha", "beta", "binding"],
        &rows,
        &Value::Array(entries),
    );
    Ok(ExitCode::SUCCESS)
}

fn gap_headers(bounds: bool) -> Vec<&'static str> {
    if bounds {
        vec![
            "r_cdf",
            "r_pdf",
            "r_pdf_ub",
            "g",
            "g_bar",
            "g_bar_ub",
            "lemma5_bound",
            "g_ub",
            "regime",
        ]
    } else {
        vec!["r_cdf", "r_pdf", "g", "g_bar", "regime"]
    }
}

fn gap_row(p: &Printer, report: &GapReport, bounds: bool) -> Vec<String> {
    let mut row = vec![p.num(report.r_cdf), p.num(report.r_pdf)];
    if bounds {
        row.push(p.opt(report.r_pdf_ub));
    }
    row.push(p.num(report.g));
    row.push(p.num(report.g_bar));
    if bounds {
        row.push(p.opt(report.g_bar_ub));
        row.push(p.opt(report.lemma5_bound));
        row.push(p.opt(report.g_ub));
    }
    row.push(format!("{:?}", report.regime));
    row
}

fn cmd_gap(args: &GapArgs, p: &Printer) -> Result<ExitCode, Failure> {
    let s = args.channel.resolve()?;
    let report = gap_report(&s)?;
    let mut json = serde_json::to_value(report).expect("report serializes");
    if !args.bounds {
        let obj = json.as_object_mut().expect("report is an object");
        for key in ["r_pdf_ub", "g_bar_ub", "lemma5_bound", "g_ub"] {
            obj.remove(key);
        }
    }
    p.emit(
        &gap_headers(args.bounds),
        &[gap_row(p, &report, args.bounds)],
        &json,
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_sweep(args: &SweepArgs, p: &Printer) -> Result<ExitCode, Failure> {
    let spec = SweepSpec {
        step: args.step,
        p0: args.p0,
        p1: args.p1,
        n1: args.n1,
        n2: args.n2,
        ..SweepSpec::default()
    };
    // Every spec field here came from a flag, so validation failures are
    // usage errors, not domain errors.
    spec.validate()
        .map_err(|err| Failure::Usage(format!("invalid sweep flags: {err}")))?;
    let result = position_sweep(&spec)?;
    if let Some(path) = &args.out {
        std::fs::write(path, sweep_to_csv(&result, p.precision))
            .map_err(|err| Failure::Domain(format!("cannot write {}: {err}", path.display())))?;
    }
    if let Some(path) = &args.svg {
        std::fs::write(path, sweep_to_svg(&result))
            .map_err(|err| Failure::Domain(format!("cannot write {}: {err}", path.display())))?;
    }
    if p.format == Format::Csv {
        // CSV output means the full per-position table.
        print!("{}", sweep_to_csv(&result, p.precision));
        return Ok(ExitCode::SUCCESS);
    }
    let (ax, ay) = match result.argmax {
        Some(point) => (p.num(point.x()), p.num(point.y())),
        None => ("-".into(), "-".into()),
    };
    let rows = vec![
        vec!["max_g_bar".into(), p.num(result.max_g_bar)],
        vec!["argmax_x".into(), ax],
        vec!["argmax_y".into(), ay],
        vec!["evaluated".into(), result.evaluated.to_string()],
        vec!["grid_points".into(), result.grid_points.to_string()],
        vec![
            "runtime_seconds".into(),
            format!("{:.3}", result.runtime_seconds),
        ],
    ];
    let json = json!({
        "max_g_bar": result.max_g_bar,
        "argmax": result.argmax,
        "evaluated": result.evaluated,
        "grid_points": result.grid_points,
        "runtime_seconds": result.runtime_seconds,
    });
    p.emit(&["quantity", "value"], &rows, &json);
    Ok(ExitCode::SUCCESS)
}

fn cmd_scan_power(args: &ScanPowerArgs, p: &Printer) -> Result<ExitCode, Failure> {
    if !(args.p_min.is_finite() && args.p_min > 0.0) {
        return Err(Failure::Usage("--p-min must be positive and finite".into()));
    }
    if !(args.p_max.is_finite() && args.p_max >= args.p_min) {
        return Err(Failure::Usage(
            "--p-max must be finite and at least --p-min".into(),
        ));
    }
    if args.points == 0 {
        return Err(Failure::Usage("--points must be at least 1".into()));
    }
    let geometry = match &args.scenario {
        Some(path) => load_geometry(path)?,
        None => asymptotic_reference_geometry(),
    };
    let (lo, hi) = (args.p_min.log10(), args.p_max.log10());
    let factors: Vec<f64> = if args.points == 1 {
        vec![args.p_min]
    } else {
        (0..args.points)
            .map(|i| 10f64.powf(lo + (hi - lo) * i as f64 / (args.points - 1) as f64))
            .collect()
    };
    let points = power_scan(&geometry, &factors)?;
    let rows: Vec<Vec<String>> = points
        .iter()
        .map(|point| {
            vec![
                p.num(point.p),
                p.num(point.report.r_cdf),
                p.num(point.report.r_pdf),
                p.num(point.report.g_bar),
                p.opt(point.gbar_ub()),
                p.opt(point.g_ub()),
            ]
        })
        .collect();
    let json = serde_json::to_value(&points).expect("scan serializes");
    p.emit(
        &["p", "r_cdf", "r_pdf", "g_bar", "g_bar_ub", "g_ub"],
        &rows,
        &json,
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_scan_proximity(args: &ScanProximityArgs, p: &Printer) -> Result<ExitCode, Failure> {
    let config = ProximityConfig {
        p0: args.p0,
        p1: args.p1,
        n1: args.n1,
        n2: args.n2,
        ..ProximityConfig::default()
    };
    let kind = match args.kind {
        Kind::NearSource => ProximityKind::NearSource,
        Kind::NearDest => ProximityKind::NearDestination,
    };
    let points = proximity_scan_with(&config, kind, &args.d)
        .map_err(|err| Failure::Usage(format!("invalid --d offsets: {err}")))?;
    let rows: Vec<Vec<String>> = points
        .iter()
        .map(|point| {
            vec![
                p.num(point.d),
                p.num(point.report.r_cdf),
                p.num(point.report.r_pdf),
                p.num(point.report.g_bar),
                p.opt(point.gbar_ub()),
                p.opt(point.g_ub()),
            ]
        })
        .collect();
    let json = serde_json::to_value(&points).expect("scan serializes");
    p.emit(
        &["d", "r_cdf", "r_pdf", "g_bar", "g_bar_ub", "g_ub"],
        &rows,
        &json,
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_search_bound(args: &SearchBoundArgs, p: &Printer) -> Result<ExitCode, Failure> {
    let points = bound_approach_search(&args.l12)
        .map_err(|err| Failure::Usage(format!("invalid --l12 values: {err}")))?;
    let rows: Vec<Vec<String>> = points
        .iter()
        .map(|point| {
            vec![
                p.num(point.lambda12),
                p.num(point.lambda01),
                p.num(point.lambda02),
                p.num(point.g_bar),
            ]
        })
        .collect();
    let json = serde_json::to_value(&points).expect("search serializes");
    p.emit(&["lambda12", "lambda01", "lambda02", "g_bar"], &rows, &json);
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(args: &VerifyArgs) -> Result<ExitCode, Failure> {
    let mut suites = Vec::new();
    let mut fuzz = None;
    if matches!(args.suite, Suite::Theorem | Suite::All) {
        let (report, summary) = theorem_suite(args.seed, args.samples.unwrap_or(10_000));
        suites.push(report);
        fuzz = Some(summary);
    }
    if matches!(args.suite, Suite::Oracle | Suite::All) {
        suites.push(oracle_suite(args.seed, args.samples.unwrap_or(200)));
    }
    if matches!(args.suite, Suite::Asymptotics | Suite::All) {
        suites.push(asymptotics_suite());
    }
    let passed = suites.iter().all(|suite| suite.passed);
    let json = json!({
        "passed": passed,
        "suites": suites,
        "fuzz": fuzz,
    });
    println!(
        "{}",
        serde_json::to_string_pretty(&json).expect("summary serializes")
    );
    if passed {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(3))
    }
}
