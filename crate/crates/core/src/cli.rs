//! Command-line front end. Exit codes: 0 success, 1 verification failure,
//! 2 invalid parameters, 3 I/O error.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::bench;
use crate::continuous::{chirp_signal, lowpass_crosscorr, LowpassSignal, Period, WaveformGrid};
use crate::dft::{compare, dft_chi, dft_closed_with, dft_naive, DftMethod, DftResult};
use crate::error::ZcError;
use crate::io::{
    load_or_build_table, table_path, write_correlation_csv, write_json, write_lag_correlation_csv,
    write_sequence_csv, write_spectrum_csv, write_waveform_csv, SequenceDocument, SpectrumDocument,
    SCHEMA_VERSION, TABLE_DIR_ENV,
};
use crate::number_theory::{LegendreTable, PrimeModulus};
use crate::sequence::{correlation_sweep, generate, ZcParams};
use crate::verify::verify;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "zckit", version, about = "Zadoff-Chu sequence toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate one sequence period
    Gen(GenArgs),
    /// Compute the DFT of a sequence
    Dft(DftArgs),
    /// Discrete or continuous correlation between two roots
    Corr(CorrArgs),
    /// Sample the continuous-time waveform
    Wave(WaveArgs),
    /// Check every identity for one length and print a JSON report
    Verify(VerifyArgs),
    /// Write a packed Legendre table
    Table(TableArgs),
    /// Time brute-force against closed-form DFT coefficients
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Method {
    Naive,
    Closed,
    Chi,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum CorrKind {
    Discrete,
    Continuous,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum WaveKind {
    Lowpass,
    Chirp,
}

#[derive(Debug, Args)]
struct Output {
    /// Write to this file instead of stdout
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct GenArgs {
    #[arg(long)]
    n: u64,
    #[arg(long)]
    u: u64,
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    q: i64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[command(flatten)]
    out: Output,
}

#[derive(Debug, Args)]
struct DftArgs {
    #[arg(long)]
    n: u64,
    #[arg(long)]
    u: u64,
    #[arg(long, value_enum, default_value_t = Method::Closed)]
    method: Method,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Print error statistics against the naive DFT instead of coefficients
    #[arg(long)]
    compare: bool,
    #[command(flatten)]
    out: Output,
}

#[derive(Debug, Args)]
struct CorrArgs {
    #[arg(long)]
    n: u64,
    #[arg(long)]
    u: u64,
    #[arg(long)]
    v: u64,
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    q: i64,
    #[arg(long, value_enum, default_value_t = CorrKind::Discrete)]
    kind: CorrKind,
    /// Waveform period in seconds
    #[arg(long, default_value_t = 1.0)]
    period: f64,
    /// Lags per period for the continuous correlation
    #[arg(long, default_value_t = 256)]
    tau_steps: usize,
    #[command(flatten)]
    out: Output,
}

#[derive(Debug, Args)]
struct WaveArgs {
    #[arg(long)]
    n: u64,
    #[arg(long)]
    u: u64,
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    q: i64,
    #[arg(long, value_enum, default_value_t = WaveKind::Lowpass)]
    kind: WaveKind,
    #[arg(long, default_value_t = 1.0)]
    period: f64,
    #[arg(long, default_value_t = crate::continuous::DEFAULT_OVERSAMPLING)]
    oversampling: usize,
    #[command(flatten)]
    out: Output,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long)]
    n: u64,
    #[command(flatten)]
    out: Output,
}

#[derive(Debug, Args)]
struct TableArgs {
    #[arg(long)]
    n: u64,
    /// Table file; defaults to the cache directory in ZCKIT_TABLE_DIR
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct BenchArgs {
    #[arg(long)]
    n: u64,
    #[arg(long, default_value_t = bench::MIN_ITERATIONS)]
    iterations: usize,
    #[command(flatten)]
    out: Output,
}

enum Failure {
    Invalid(String),
    Io(String),
    Verify,
}

impl From<ZcError> for Failure {
    fn from(e: ZcError) -> Self {
        Failure::Invalid(e.to_string())
    }
}

type Outcome = std::result::Result<Vec<u8>, (Failure, Vec<u8>)>;

fn table_dir() -> Option<PathBuf> {
    std::env::var_os(TABLE_DIR_ENV)
        .filter(|v| !v.is_empty())
        .map(PathBuf::from)
}

fn json_bytes<T: Serialize>(doc: &T) -> Vec<u8> {
    let mut buf = Vec::new();
    write_json(&mut buf, doc).expect("writing to memory");
    buf
}

fn csv_bytes(
    f: impl FnOnce(&mut Vec<u8>) -> crate::Result<()>,
) -> std::result::Result<Vec<u8>, Failure> {
    let mut buf = Vec::new();
    f(&mut buf)?;
    Ok(buf)
}

fn gen(a: &GenArgs) -> std::result::Result<Vec<u8>, Failure> {
    let params = ZcParams::with_q(a.n, a.u, a.q)?;
    let seq = generate(&params);
    match a.format {
        Format::Csv => csv_bytes(|b| write_sequence_csv(b, &seq)),
        Format::Json => Ok(json_bytes(&SequenceDocument::new(&params, &seq))),
    }
}

#[derive(Serialize)]
struct Comparison {
    schema_version: u32,
    n_zc: u64,
    u: u64,
    method: &'static str,
    reference: &'static str,
    max_abs_error: f64,
    max_rel_error: f64,
}

fn spectrum(n: u64, u: u64, method: Method) -> std::result::Result<DftResult, Failure> {
    let params = ZcParams::new(n, u)?;
    Ok(match method {
        Method::Naive => dft_naive(&generate(&params)),
        Method::Closed => {
            let m = PrimeModulus::new(n)?;
            dft_closed_with(&load_or_build_table(table_dir().as_deref(), m), u)?
        }
        Method::Chi => dft_chi(PrimeModulus::new(n)?, u)?,
    })
}

fn dft(a: &DftArgs) -> std::result::Result<Vec<u8>, Failure> {
    let result = spectrum(a.n, a.u, a.method)?;
    if a.compare {
        let reference = dft_naive(&generate(&ZcParams::new(a.n, a.u)?));
        let (max_abs_error, max_rel_error) = compare(&result.coefficients, &reference.coefficients);
        return Ok(json_bytes(&Comparison {
            schema_version: SCHEMA_VERSION,
            n_zc: a.n,
            u: a.u,
            method: result.method.as_str(),
            reference: DftMethod::Naive.as_str(),
            max_abs_error,
            max_rel_error,
        }));
    }
    match a.format {
        Format::Csv => csv_bytes(|b| write_spectrum_csv(b, &result.coefficients)),
        Format::Json => Ok(json_bytes(&SpectrumDocument::new(a.n, a.u, &result))),
    }
}

fn corr(a: &CorrArgs) -> std::result::Result<Vec<u8>, Failure> {
    let pu = ZcParams::with_q(a.n, a.u, a.q)?;
    let pv = ZcParams::with_q(a.n, a.v, a.q)?;
    match a.kind {
        CorrKind::Discrete => {
            let lags = correlation_sweep(&pu, &pv)?;
            csv_bytes(|b| write_lag_correlation_csv(b, &lags))
        }
        CorrKind::Continuous => {
            let period = Period::new(a.period)?;
            if a.tau_steps == 0 {
                return Err(Failure::Invalid("--tau-steps must be at least 1".into()));
            }
            let rows = (0..a.tau_steps)
                .map(|i| {
                    let tau = a.period * i as f64 / a.tau_steps as f64;
                    lowpass_crosscorr(&pu, &pv, tau, period).map(|r| (tau, r))
                })
                .collect::<crate::Result<Vec<_>>>()?;
            csv_bytes(|b| write_correlation_csv(b, &rows))
        }
    }
}

fn wave(a: &WaveArgs) -> std::result::Result<Vec<u8>, Failure> {
    let params = ZcParams::with_q(a.n, a.u, a.q)?;
    let period = Period::new(a.period)?;
    let grid = WaveformGrid::new(period, a.oversampling, a.n)?;
    let signal = match a.kind {
        WaveKind::Lowpass => LowpassSignal::new(&params, period)?.sample(&grid)?,
        WaveKind::Chirp => chirp_signal(&params, &grid),
    };
    csv_bytes(|b| write_waveform_csv(b, &signal))
}

#[derive(Serialize)]
struct TableSummary {
    schema_version: u32,
    modulus: u64,
    payload_bits: usize,
    bytes: usize,
    path: PathBuf,
}

fn table(a: &TableArgs) -> std::result::Result<Vec<u8>, Failure> {
    let m = PrimeModulus::new(a.n)?;
    let path = match (&a.output, table_dir()) {
        (Some(path), _) => path.clone(),
        (None, Some(dir)) => {
            fs::create_dir_all(&dir).map_err(|e| io_failure(&dir, e))?;
            table_path(&dir, m)
        }
        (None, None) => {
            return Err(Failure::Invalid(format!(
                "no --output given and {TABLE_DIR_ENV} is not set"
            )))
        }
    };
    let table = LegendreTable::build(m);
    let bytes = table.to_bytes();
    fs::write(&path, &bytes).map_err(|e| io_failure(&path, e))?;
    Ok(json_bytes(&TableSummary {
        schema_version: SCHEMA_VERSION,
        modulus: m.value(),
        payload_bits: table.payload_bits(),
        bytes: bytes.len(),
        path,
    }))
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure::Io(format!("{}: {e}", path.display()))
}

fn execute(command: &Command) -> Outcome {
    let plain = |r: std::result::Result<Vec<u8>, Failure>| r.map_err(|f| (f, Vec::new()));
    match command {
        Command::Gen(a) => plain(gen(a)),
        Command::Dft(a) => plain(dft(a)),
        Command::Corr(a) => plain(corr(a)),
        Command::Wave(a) => plain(wave(a)),
        Command::Table(a) => plain(table(a)),
        Command::Bench(a) => {
            let m = PrimeModulus::new(a.n).map_err(|e| (e.into(), Vec::new()))?;
            let report = bench::run(m, a.iterations).map_err(|e| (e.into(), Vec::new()))?;
            Ok(json_bytes(&report))
        }
        Command::Verify(a) => {
            let report = verify(a.n).map_err(|e| (e.into(), Vec::new()))?;
            let bytes = json_bytes(&report);
            if report.pass {
                Ok(bytes)
            } else {
                Err((Failure::Verify, bytes))
            }
        }
    }
}

fn destination(command: &Command) -> Option<&Path> {
    match command {
        Command::Gen(a) => a.out.output.as_deref(),
        Command::Dft(a) => a.out.output.as_deref(),
        Command::Corr(a) => a.out.output.as_deref(),
        Command::Wave(a) => a.out.output.as_deref(),
        Command::Verify(a) => a.out.output.as_deref(),
        Command::Bench(a) => a.out.output.as_deref(),
        Command::Table(_) => None,
    }
}

fn emit(path: Option<&Path>, bytes: &[u8], stdout: &mut dyn Write) -> Result<(), Failure> {
    match path {
        Some(path) => fs::write(path, bytes).map_err(|e| io_failure(path, e)),
        None => stdout
            .write_all(bytes)
            .and_then(|_| stdout.flush())
            .map_err(|e| Failure::Io(e.to_string())),
    }
}

/// Runs the command line `args` (program name first) and returns the exit
/// code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_INVALID
            } else {
                EXIT_OK
            };
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let (bytes, failure) = match execute(&cli.command) {
        Ok(bytes) => (bytes, None),
        Err((failure, bytes)) => (bytes, Some(failure)),
    };
    if !bytes.is_empty() {
        if let Err(f) = emit(destination(&cli.command), &bytes, stdout) {
            return report(f, stderr);
        }
    }
    match failure {
        None => EXIT_OK,
        Some(f) => report(f, stderr),
    }
}

fn report(failure: Failure, stderr: &mut dyn Write) -> i32 {
    match failure {
        Failure::Invalid(msg) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_INVALID
        }
        Failure::Io(msg) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_IO
        }
        Failure::Verify => {
            let _ = writeln!(stderr, "verification failed");
            EXIT_VERIFY
        }
    }
}
