//! `fnoise`: reproducible command-line runs of the library's pipelines with
//! CSV outputs. Frequencies are given in Hz at the CLI (converted to
//! ω = 2πf rad/s internally) with one exception: `kernels --omega` is an
//! angular frequency in rad/s, matching the kernel's natural variable.
//! Lengths enter through sample descriptor files in µm/nm and are converted
//! to cm internally. Exit codes: 0 success, 1 validation error, 2 numerical
//! failure; error messages name the offending field or flag.

use clap::{error::ErrorKind, Args, Parser, Subcommand, ValueEnum};
use fnoise::covariance::CovarianceModel;
use fnoise::noisefloor::{noise_floor, parse_sample_descriptor, table_one_report, write_report_csv};
use fnoise::processlab::{slope_fit, synthesize_ensemble, SynthesisSpec, SynthesisVariant};
use fnoise::quantumtoy::{random_sweep, SweepSummary};
use fnoise::spectral::io::{read_signal_windows, read_spectrum, write_signal_windows, write_spectrum};
use fnoise::spectral::kernels::kernel_asymptotics;
use fnoise::spectral::{power_spectrum, sigma_of_f, SpectrumSeries, SpectrumUnit};
use fnoise::units::{convert, CarrierSpecies, Unit};
use fnoise::{geometric_factor, Error, Result};
use std::f64::consts::PI;
use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::PathBuf;
use std::process;

// Human-readable summary lines go through `emit` so that a downstream
// reader closing stdout (e.g. `fnoise table1 | head`) ends the run
// quietly instead of panicking mid-pipe.
macro_rules! say {
    ($($arg:tt)*) => { emit(format_args!($($arg)*)) };
}

fn emit(args: std::fmt::Arguments) {
    let mut out = io::stdout().lock();
    let result = out.write_fmt(args).and_then(|()| out.write_all(b"\n"));
    if let Err(e) = result {
        if e.kind() == io::ErrorKind::BrokenPipe {
            process::exit(0);
        }
        eprintln!("error: cannot write to stdout: {e}");
        process::exit(1);
    }
}

// The five published sample descriptors ship with the binary so `table1`
// runs without any input files.
const BUNDLED_SAMPLES: [&str; 5] = [
    include_str!("../data/samples/v1.txt"),
    include_str!("../data/samples/v1_5.txt"),
    include_str!("../data/samples/v2.txt"),
    include_str!("../data/samples/v5.txt"),
    include_str!("../data/samples/v80.txt"),
];

#[derive(Parser)]
#[command(
    name = "fnoise",
    version,
    about = "Quantum lower bound on 1/f voltage noise: geometry, noise-floor coefficients, \
             spectral kernels, and synthetic-process estimators"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Geometric factor g (cm^-1) of a box sample from a descriptor file
    Gfactor(GfactorArgs),
    /// Noise-floor coefficient kappa from a geometric factor and carrier masses
    Kappa(KappaArgs),
    /// Comparison report for sample descriptors (defaults to the five bundled samples)
    Table1(Table1Args),
    /// Finite-window spectral functional Sigma(f) of a covariance model
    Sigma(SigmaArgs),
    /// Asymptotics of the logarithmic window kernels and the sinc tail check
    Kernels(KernelsArgs),
    /// Random-system sweep verifying the uncertainty bound and commutator identity
    ToyVerify(ToyVerifyArgs),
    /// Draw stationary Gaussian signal windows from a covariance or power-law model
    Synthesize(SynthesizeArgs),
    /// Ensemble power spectral density of signal windows read from CSV
    Spectrum(SpectrumArgs),
    /// Log-log slope fit of a spectrum CSV, reported as the exponent gamma
    Slope(SlopeArgs),
}

#[derive(Args)]
struct GfactorArgs {
    /// Sample descriptor file (key=value; width/length in um, thickness in nm)
    #[arg(long)]
    sample: PathBuf,
    /// CSV output path (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct KappaArgs {
    /// Geometric factor g in cm^-1
    #[arg(long)]
    g: f64,
    /// Carrier mass ratios m/m0 (dimensionless), comma-separated
    #[arg(long, value_delimiter = ',', required = true)]
    masses: Vec<f64>,
    /// Optional bias voltage in volts; adds the S_F(f) level to the summary
    #[arg(long)]
    u0_volts: Option<f64>,
    /// CSV output path (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct Table1Args {
    /// Sample descriptor files; when omitted the five bundled samples are used
    #[arg(long)]
    sample: Vec<PathBuf>,
    /// CSV output path (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum ModelKind {
    /// Ornstein-Uhlenbeck covariance (needs --sigma2, --tauc)
    Ou,
    /// Logarithmic covariance (needs --a, --tau0); not synthesizable
    Log,
    /// Band-limited 1/f^gamma spectrum (needs --gamma, --f-low, --f-high)
    Powerlaw,
}

#[derive(Args)]
struct SigmaArgs {
    /// Covariance model: ou or log
    #[arg(long, value_enum)]
    model: ModelKind,
    /// OU variance sigma^2 in V^2 (model = ou)
    #[arg(long)]
    sigma2: Option<f64>,
    /// OU correlation time tau_c in seconds (model = ou)
    #[arg(long)]
    tauc: Option<f64>,
    /// Offset parameter a of ln(a + (tau/tau0)^2), dimensionless (model = log)
    #[arg(long)]
    a: Option<f64>,
    /// Reference time tau0 in seconds (model = log)
    #[arg(long)]
    tau0: Option<f64>,
    /// Measurement window t_m in seconds
    #[arg(long)]
    tm: f64,
    /// Lowest frequency of the log-spaced grid in Hz (> 0)
    #[arg(long)]
    f_min: f64,
    /// Highest frequency of the log-spaced grid in Hz
    #[arg(long)]
    f_max: f64,
    /// Number of log-spaced grid points (>= 2)
    #[arg(long, default_value_t = 25)]
    points: usize,
    /// CSV output path (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct KernelsArgs {
    /// Angular frequency omega in rad/s (not Hz)
    #[arg(long)]
    omega: f64,
    /// Window half-length t_m in seconds
    #[arg(long)]
    tm: f64,
    /// CSV output path (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ToyVerifyArgs {
    /// Number of random systems to draw
    #[arg(long, default_value_t = 100)]
    count: usize,
    /// RNG seed (dimensionless)
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Largest Hilbert-space dimension (>= 2)
    #[arg(long, default_value_t = 6)]
    max_dim: usize,
    /// Largest number of time nodes (>= 2)
    #[arg(long, default_value_t = 64)]
    max_nodes: usize,
    /// CSV output path (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SynthesizeArgs {
    /// Synthesis model: ou or powerlaw
    #[arg(long, value_enum)]
    model: ModelKind,
    /// OU variance sigma^2 in V^2 (model = ou)
    #[arg(long)]
    sigma2: Option<f64>,
    /// OU correlation time tau_c in seconds (model = ou)
    #[arg(long)]
    tauc: Option<f64>,
    /// Spectral exponent gamma in [0, 2] (model = powerlaw)
    #[arg(long)]
    gamma: Option<f64>,
    /// Low-frequency plateau edge in Hz (model = powerlaw)
    #[arg(long)]
    f_low: Option<f64>,
    /// High-frequency cutoff in Hz, at most Nyquist (model = powerlaw)
    #[arg(long)]
    f_high: Option<f64>,
    /// Samples per window (power of two >= 64)
    #[arg(long)]
    n: usize,
    /// Sample spacing dt in seconds
    #[arg(long)]
    dt: f64,
    /// Number of independent windows
    #[arg(long, default_value_t = 1)]
    windows: usize,
    /// RNG seed (dimensionless); same seed and flags give byte-identical CSV
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// CSV output path (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SpectrumArgs {
    /// Signal-windows CSV to read (as written by `synthesize`)
    #[arg(long)]
    input: PathBuf,
    /// Lowest frequency of the log-spaced grid in Hz (> 0)
    #[arg(long)]
    f_min: f64,
    /// Highest frequency of the log-spaced grid in Hz
    #[arg(long)]
    f_max: f64,
    /// Number of log-spaced grid points (>= 2)
    #[arg(long, default_value_t = 25)]
    points: usize,
    /// CSV output path (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SlopeArgs {
    /// Spectrum CSV to read (as written by `spectrum`)
    #[arg(long)]
    input: PathBuf,
    /// Fit-range lower edge in Hz
    #[arg(long)]
    f_min: f64,
    /// Fit-range upper edge in Hz
    #[arg(long)]
    f_max: f64,
    /// CSV output path (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            e.print().expect("stderr");
            process::exit(code);
        }
    };
    if let Err(err) = run(cli.command) {
        // a downstream reader (e.g. `head`) closing stdout is not a failure
        if is_broken_pipe(&err) {
            process::exit(0);
        }
        eprintln!("error: {err}");
        process::exit(exit_code(&err));
    }
}

fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Validation { .. } => 1,
        Error::Numerical { .. } => 2,
    }
}

fn is_broken_pipe(err: &Error) -> bool {
    matches!(err, Error::Validation { field, reason }
        if (field == "out" || field == "output") && reason.contains("Broken pipe"))
}

fn run(command: Command) -> Result<()> {
    match command {
        Command::Gfactor(args) => run_gfactor(args),
        Command::Kappa(args) => run_kappa(args),
        Command::Table1(args) => run_table1(args),
        Command::Sigma(args) => run_sigma(args),
        Command::Kernels(args) => run_kernels(args),
        Command::ToyVerify(args) => run_toy_verify(args),
        Command::Synthesize(args) => run_synthesize(args),
        Command::Spectrum(args) => run_spectrum(args),
        Command::Slope(args) => run_slope(args),
    }
}

fn open_output(path: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p).map_err(|e| {
            Error::validation("out", format!("{}: {e}", p.display()))
        })?)),
        None => Box::new(io::stdout().lock()),
    })
}

fn finish_output(mut out: Box<dyn Write>) -> Result<()> {
    out.flush()
        .map_err(|e| Error::validation("out", e.to_string()))
}

fn read_file(path: &PathBuf, field: &str) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::validation(field, format!("{}: {e}", path.display())))
}

fn open_input(path: &PathBuf) -> Result<BufReader<File>> {
    Ok(BufReader::new(File::open(path).map_err(|e| {
        Error::validation("input", format!("{}: {e}", path.display()))
    })?))
}

fn log_grid(f_min: f64, f_max: f64, points: usize) -> Result<Vec<f64>> {
    if !(f_min.is_finite() && f_min > 0.0) {
        return Err(Error::validation(
            "f_min",
            format!("must be positive and finite, got {f_min}"),
        ));
    }
    if !(f_max.is_finite() && f_max > f_min) {
        return Err(Error::validation(
            "f_max",
            format!("must exceed f_min = {f_min}, got {f_max}"),
        ));
    }
    if points < 2 {
        return Err(Error::validation("points", "need at least two grid points"));
    }
    let ratio = f_max / f_min;
    Ok((0..points)
        .map(|i| f_min * ratio.powf(i as f64 / (points - 1) as f64))
        .collect())
}

// Missing model parameters are reported by flag name.
fn need(value: Option<f64>, flag: &str) -> Result<f64> {
    value.ok_or_else(|| Error::validation(flag, "required for the selected model"))
}

fn covariance_model(
    kind: ModelKind,
    sigma2: Option<f64>,
    tauc: Option<f64>,
    a: Option<f64>,
    tau0: Option<f64>,
) -> Result<CovarianceModel> {
    let model = match kind {
        ModelKind::Ou => CovarianceModel::Ou {
            sigma2: need(sigma2, "sigma2")?,
            tau_c: need(tauc, "tauc")?,
        },
        ModelKind::Log => CovarianceModel::Log {
            a: need(a, "a")?,
            tau0: need(tau0, "tau0")?,
        },
        ModelKind::Powerlaw => {
            return Err(Error::validation(
                "model",
                "powerlaw is a synthesis target, not a covariance model",
            ))
        }
    };
    model.validate()?;
    Ok(model)
}

fn run_gfactor(args: GfactorArgs) -> Result<()> {
    let record = parse_sample_descriptor(&read_file(&args.sample, "sample")?)?;
    let g = geometric_factor(record.sample(), record.probes())?;
    say!("sample {}: g = {g:.4} cm^-1", record.name());
    let mut out = open_output(&args.out)?;
    writeln!(out, "name,g_per_cm").map_err(|e| Error::validation("out", e.to_string()))?;
    writeln!(out, "{},{g:e}", record.name()).map_err(|e| Error::validation("out", e.to_string()))?;
    finish_output(out)
}

fn run_kappa(args: KappaArgs) -> Result<()> {
    let species = args
        .masses
        .iter()
        .enumerate()
        .map(|(i, &m)| CarrierSpecies::new(format!("species{}", i + 1), m))
        .collect::<Result<Vec<_>>>()?;
    let u0_statvolt = args
        .u0_volts
        .map(|v| convert(v, Unit::Volt, Unit::Statvolt))
        .transpose()?;
    let result = noise_floor(args.g, &species, u0_statvolt)?;
    say!(
        "kappa = {:.6e} (g = {} cm^-1, {} species)",
        result.kappa(),
        args.g,
        species.len()
    );
    if let Some(u0) = args.u0_volts {
        say!(
            "S_F(f) = {:.6e}/|f| V^2/Hz at U0 = {u0} V",
            result.kappa() * u0 * u0
        );
    }
    let mut out = open_output(&args.out)?;
    let io_err = |e: io::Error| Error::validation("out", e.to_string());
    writeln!(out, "label,kappa_contribution").map_err(io_err)?;
    for (label, contribution) in result.per_species() {
        writeln!(out, "{label},{contribution:e}").map_err(io_err)?;
    }
    writeln!(out, "total,{:e}", result.kappa()).map_err(io_err)?;
    finish_output(out)
}

fn run_table1(args: Table1Args) -> Result<()> {
    let records = if args.sample.is_empty() {
        BUNDLED_SAMPLES
            .iter()
            .map(|text| parse_sample_descriptor(text))
            .collect::<Result<Vec<_>>>()?
    } else {
        args.sample
            .iter()
            .map(|p| parse_sample_descriptor(&read_file(p, "sample")?))
            .collect::<Result<Vec<_>>>()?
    };
    let rows = table_one_report(&records)?;
    for row in &rows {
        let published = |v: Option<f64>| v.map(|x| format!("{x:.3e}")).unwrap_or_else(|| "-".into());
        let exp_over_th = match (row.kappa_exp_paper, row.kappa_th_paper) {
            (Some(e), Some(t)) if t > 0.0 => format!("{:.1}", e / t),
            _ => "-".into(),
        };
        let flag = if row.flagged == Some(true) {
            "  [FLAGGED: computed kappa deviates >10% from the published value]"
        } else {
            ""
        };
        say!(
            "{}: g = {:.1} cm^-1 (published {}), kappa = {:.3e} (published {}), kappa_exp/kappa_th = {}{}",
            row.name,
            row.g_calc_per_cm,
            row.g_paper_per_cm.map(|x| format!("{x}")).unwrap_or_else(|| "-".into()),
            row.kappa_calc,
            published(row.kappa_th_paper),
            exp_over_th,
            flag
        );
    }
    let mut out = open_output(&args.out)?;
    write_report_csv(&mut out, &rows)?;
    finish_output(out)
}

fn run_sigma(args: SigmaArgs) -> Result<()> {
    let model = covariance_model(args.model, args.sigma2, args.tauc, args.a, args.tau0)?;
    let grid = log_grid(args.f_min, args.f_max, args.points)?;
    let values = grid
        .iter()
        .map(|f| sigma_of_f(&model, 2.0 * PI * f, args.tm))
        .collect::<Result<Vec<_>>>()?;
    let series = SpectrumSeries::new(grid, values, SpectrumUnit::Dimensionless)?;
    let (f0, v0) = series.iter().next().expect("non-empty grid");
    say!(
        "sigma(f) on {} points in [{}, {}] Hz at t_m = {} s; sigma*|f| at f = {f0:.6e} Hz: {:.6}",
        series.f_hz().len(),
        args.f_min,
        args.f_max,
        args.tm,
        v0 * f0.abs()
    );
    let mut out = open_output(&args.out)?;
    write_spectrum(&mut out, &series)?;
    finish_output(out)
}

fn run_kernels(args: KernelsArgs) -> Result<()> {
    let check = kernel_asymptotics::<f64>(args.omega, args.tm)?;
    say!(
        "A - B = {:.6} vs -pi/|omega| = {:.6} (residual {:.3e}); sign-kernel residual {:.3e}; sinc residual {:.3e}",
        check.difference,
        check.predicted_limit,
        check.difference_residual,
        check.sign_kernel_residual,
        check.sinc_residual
    );
    let mut out = open_output(&args.out)?;
    let io_err = |e: io::Error| Error::validation("out", e.to_string());
    writeln!(
        out,
        "omega_rad_s,t_m_s,log_transform,weighted_log_transform,difference,predicted_limit,difference_residual,sign_kernel_residual,sinc_residual"
    )
    .map_err(io_err)?;
    writeln!(
        out,
        "{:e},{:e},{:e},{:e},{:e},{:e},{:e},{:e},{:e}",
        check.omega,
        check.t_m,
        check.log_transform,
        check.weighted_log_transform,
        check.difference,
        check.predicted_limit,
        check.difference_residual,
        check.sign_kernel_residual,
        check.sinc_residual
    )
    .map_err(io_err)?;
    finish_output(out)
}

fn run_toy_verify(args: ToyVerifyArgs) -> Result<()> {
    let records = random_sweep(args.count, args.seed, args.max_dim, args.max_nodes)?;
    let summary = SweepSummary::from_records(&records)?;
    say!(
        "{} systems (dim <= {}, nodes <= {}, seed {}): min sum/product slack {:.3e}/{:.3e}, \
         max identity residual {:.3e}, max odd-in-omega defect {:.3e}",
        summary.count,
        args.max_dim,
        args.max_nodes,
        args.seed,
        summary.min_sum_slack,
        summary.min_product_slack,
        summary.max_commutator_residual,
        summary.max_odd_defect
    );
    let mut out = open_output(&args.out)?;
    let io_err = |e: io::Error| Error::validation("out", e.to_string());
    writeln!(
        out,
        "index,dim,nodes,omega_rad_s,sum_slack,product_slack,commutator_residual,commutator_real_part,odd_defect"
    )
    .map_err(io_err)?;
    for r in &records {
        writeln!(
            out,
            "{},{},{},{:e},{:e},{:e},{:e},{:e},{:e}",
            r.index,
            r.dim,
            r.nodes,
            r.omega,
            r.sum_slack,
            r.product_slack,
            r.commutator_residual,
            r.commutator_real_part,
            r.odd_defect
        )
        .map_err(io_err)?;
    }
    finish_output(out)?;
    if summary.min_sum_slack < -1e-10 || summary.min_product_slack < -1e-10 {
        return Err(Error::numerical(
            "toy-verify",
            format!(
                "uncertainty bound violated: min slack {:.3e}",
                summary.min_sum_slack.min(summary.min_product_slack)
            ),
        ));
    }
    if summary.max_commutator_residual > 1e-10 {
        return Err(Error::numerical(
            "toy-verify",
            format!(
                "commutator identity residual {:.3e} exceeds 1e-10",
                summary.max_commutator_residual
            ),
        ));
    }
    say!("all bounds hold");
    Ok(())
}

fn run_synthesize(args: SynthesizeArgs) -> Result<()> {
    let variant = match args.model {
        ModelKind::Powerlaw => SynthesisVariant::PowerLaw {
            gamma: need(args.gamma, "gamma")?,
            f_low: need(args.f_low, "f-low")?,
            f_high: need(args.f_high, "f-high")?,
        },
        kind => SynthesisVariant::Covariance(covariance_model(
            kind, args.sigma2, args.tauc, None, None,
        )?),
    };
    let spec = SynthesisSpec::new(variant, args.n, args.dt, args.seed)?;
    let ensemble = synthesize_ensemble(&spec, args.windows)?;
    say!(
        "synthesized {} windows of {} samples (dt = {} s, seed = {})",
        args.windows, args.n, args.dt, args.seed
    );
    let mut out = open_output(&args.out)?;
    write_signal_windows(&mut out, &ensemble)?;
    finish_output(out)
}

fn run_spectrum(args: SpectrumArgs) -> Result<()> {
    let ensemble = read_signal_windows(open_input(&args.input)?)?;
    let grid = log_grid(args.f_min, args.f_max, args.points)?;
    let series = power_spectrum(&ensemble, &grid)?;
    say!(
        "PSD from {} windows of {} samples at {} frequencies in [{}, {}] Hz",
        ensemble.len(),
        ensemble[0].len(),
        series.f_hz().len(),
        args.f_min,
        args.f_max
    );
    let mut out = open_output(&args.out)?;
    write_spectrum(&mut out, &series)?;
    finish_output(out)
}

fn run_slope(args: SlopeArgs) -> Result<()> {
    let series = read_spectrum(open_input(&args.input)?)?;
    let gamma = slope_fit(&series, args.f_min, args.f_max)?;
    let points_used = series
        .f_hz()
        .iter()
        .filter(|f| args.f_min <= **f && **f <= args.f_max)
        .count();
    say!(
        "gamma = {gamma:.4} from {points_used} points in [{}, {}] Hz",
        args.f_min, args.f_max
    );
    let mut out = open_output(&args.out)?;
    let io_err = |e: io::Error| Error::validation("out", e.to_string());
    writeln!(out, "f_min_hz,f_max_hz,points_used,gamma").map_err(io_err)?;
    writeln!(
        out,
        "{:e},{:e},{points_used},{gamma:e}",
        args.f_min, args.f_max
    )
    .map_err(io_err)?;
    finish_output(out)
}
