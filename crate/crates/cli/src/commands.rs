use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use gaugeform::verify::{estimate_order, expected_order, lemma_check, sample_check};
use gaugeform::{
    forward_map, inverse_map, normalize, Complex, Error, MatrixSeries, PuiseuxExpansion, DEFAULT_PRECISION,
};
use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::codec::{Codec, Entry};
use crate::document::{
    to_json, CoefficientInput, GaugeDocument, NormalFormDocument, PuiseuxDocument, Series, SeriesDocument,
};
use crate::error::{CliError, EXIT_IO};
use crate::selftest;

/// Tolerance on the fitted truncation exponent in `verify`.
pub const SLOPE_TOLERANCE: f64 = 0.3;
/// Tolerance on each roots-of-unity sum in `lemma-check`.
pub const LEMMA_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Parser)]
#[command(name = "gaugeform", version, about = "Normal forms and Puiseux eigenvalue expansions of matrix series")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Reduce a series to normal form and write the last-row entries b_1..b_nk.
    Normalize {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        order: usize,
        /// Also write the gauge transformation.
        #[arg(long)]
        emit_gauge: Option<PathBuf>,
        #[arg(long)]
        output: PathBuf,
        /// Working precision for complex input, in bits.
        #[arg(long, default_value_t = DEFAULT_PRECISION)]
        precision: u32,
    },
    /// Normalize, then recover the Puiseux coefficients of the eigenvalue branches.
    Puiseux {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        order: usize,
        /// Number of coefficients a_1..a_M to write (at most n * order).
        #[arg(long)]
        terms: usize,
        /// Only this branch (default: all n).
        #[arg(long)]
        branch: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_PRECISION)]
        precision: u32,
        #[arg(long)]
        output: PathBuf,
    },
    /// Normal-form entries b_1..b_nk from Puiseux coefficients a_1..a_nk.
    EigenToCoeffs {
        #[arg(long)]
        a_file: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        order: usize,
        #[arg(long)]
        output: PathBuf,
        #[arg(long, default_value_t = DEFAULT_PRECISION)]
        precision: u32,
    },
    /// Compare the expansion with numeric eigenvalues and fit the truncation order.
    Verify {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        order: usize,
        /// Sample point (repeatable); defaults to 1e-3 and 1e-4.
        #[arg(long = "z0")]
        z0: Vec<String>,
        #[arg(long, default_value_t = DEFAULT_PRECISION)]
        precision: u32,
    },
    /// Check the roots-of-unity sum identity on every valid weight vector.
    LemmaCheck {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        t: Option<usize>,
    },
    /// Run the randomized property suites.
    SelfTest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Parses `args` (program name first), runs the command and returns the exit status.
///
/// Failures are printed to stderr as one JSON object each.
pub fn run<I, A>(args: I) -> u8
where
    I: IntoIterator<Item = A>,
    A: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return 0;
            }
            let message =
                e.to_string().lines().next().unwrap_or("invalid arguments").trim_start_matches("error: ").to_string();
            eprintln!("{}", CliError { code: "UsageError".into(), message, location: None, exit: EXIT_IO }.to_json());
            return EXIT_IO;
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("{}", e.to_json());
            e.exit
        }
    }
}

fn dispatch(command: Command) -> Result<u8, CliError> {
    match command {
        Command::Normalize { input, order, emit_gauge, output, precision } => {
            check_precision(precision)?;
            let doc: SeriesDocument = read_json(&input)?;
            let k = effective_order(&doc, order)?;
            match doc.to_series(precision).map_err(|e| e.within(&input.display().to_string()))? {
                Series::Rational(a) => run_normalize(&a, k, emit_gauge.as_deref(), &output),
                Series::Complex(a) => run_normalize(&a, k, emit_gauge.as_deref(), &output),
            }?;
            Ok(0)
        }
        Command::Puiseux { input, order, terms, branch, precision, output } => {
            check_precision(precision)?;
            let doc: SeriesDocument = read_json(&input)?;
            let k = effective_order(&doc, order)?;
            let n = doc.n;
            if terms == 0 || terms > n * k {
                return Err(CliError::validation(
                    "InvalidArgument",
                    format!("--terms must be between 1 and n * order = {}, got {terms}", n * k),
                )
                .at("--terms"));
            }
            if let Some(i) = branch {
                if i >= n {
                    return Err(CliError::validation(
                        "InvalidArgument",
                        format!("branch {i} out of range for n = {n}"),
                    )
                    .at("--branch"));
                }
            }
            let b = match doc.to_series(precision).map_err(|e| e.within(&input.display().to_string()))? {
                Series::Rational(a) => normalize(&a, k)?.normal_form.to_complex(precision),
                Series::Complex(a) => normalize(&a, k)?.normal_form,
            };
            let expansion = inverse_map(b.entries(), n, 0)?.truncated(terms);
            let branches: Vec<usize> = match branch {
                Some(i) => vec![i],
                None => (0..n).collect(),
            };
            write_json(&output, &PuiseuxDocument::from_expansion(&expansion, &branches)?)?;
            Ok(0)
        }
        Command::EigenToCoeffs { a_file, n, order, output, precision } => {
            check_precision(precision)?;
            if n == 0 || order == 0 {
                return Err(CliError::validation("InvalidArgument", "--n and --order must be positive"));
            }
            let input: CoefficientInput = read_json(&a_file)?;
            let coeffs = input.coefficients(n, precision).map_err(|e| e.within(&a_file.display().to_string()))?;
            let expansion = PuiseuxExpansion::new(n, coeffs, 0)?;
            let b = forward_map(&expansion, order)?;
            let nf = gaugeform::NormalForm::new(n, order, b)?;
            write_json(&output, &NormalFormDocument::from_normal_form(&nf))?;
            Ok(0)
        }
        Command::Verify { input, order, z0, precision } => {
            check_precision(precision)?;
            let doc: SeriesDocument = read_json(&input)?;
            let k = effective_order(&doc, order)?;
            let points = parse_points(&z0, precision)?;
            let report = match doc.to_series(precision).map_err(|e| e.within(&input.display().to_string()))? {
                Series::Rational(a) => verify_report(&a, k, &points, precision),
                Series::Complex(a) => verify_report(&a, k, &points, precision),
            }?;
            print!("{}", to_json(&report));
            Ok(if report.status == "fail" { 1 } else { 0 })
        }
        Command::LemmaCheck { n, t } => {
            if n < 2 {
                return Err(CliError::validation("InvalidArgument", "n must be at least 2").at("--n"));
            }
            if let Some(t) = t {
                if t == 0 || t >= n {
                    return Err(CliError::validation("InvalidArgument", format!("t must satisfy 1 <= t < n, got {t}"))
                        .at("--t"));
                }
            }
            let report = lemma_report(n, t);
            print!("{}", to_json(&report));
            Ok(if report.failures.is_empty() { 0 } else { 1 })
        }
        Command::SelfTest { seed } => {
            let report = selftest::run(seed);
            print!("{}", to_json(&report));
            Ok(if report.passed { 0 } else { 1 })
        }
    }
}

fn check_precision(bits: u32) -> Result<(), CliError> {
    if !(16..=1 << 20).contains(&bits) {
        return Err(CliError::validation("InvalidArgument", format!("precision {bits} outside 16..=1048576 bits"))
            .at("--precision"));
    }
    Ok(())
}

/// `--order` must be positive and within the document's truncation order.
fn effective_order(doc: &SeriesDocument, order: usize) -> Result<usize, CliError> {
    if order == 0 {
        return Err(CliError::validation("InvalidArgument", "--order must be positive").at("--order"));
    }
    let available = doc.coefficients.len().saturating_sub(1);
    if order > available {
        return Err(CliError::validation(
            "OrderTooSmall",
            format!("--order {order} exceeds the document's truncation order {available}"),
        )
        .at("--order"));
    }
    Ok(order)
}

fn run_normalize<T: Codec>(
    a: &MatrixSeries<T>,
    k: usize,
    emit_gauge: Option<&Path>,
    output: &Path,
) -> Result<(), CliError> {
    let out = normalize(a, k)?;
    write_json(output, &NormalFormDocument::from_normal_form(&out.normal_form))?;
    if let Some(path) = emit_gauge {
        write_json(path, &GaugeDocument::from_gauge(&out.gauge))?;
    }
    Ok(())
}

fn parse_points(raw: &[String], prec: u32) -> Result<Vec<Complex>, CliError> {
    let defaults = ["1e-3".to_string(), "1e-4".to_string()];
    let raw = if raw.is_empty() { &defaults[..] } else { raw };
    let points = raw
        .iter()
        .map(|s| {
            let z = Complex::parse(s, "0", prec).map_err(|e| CliError::parse(e.to_string()).at("--z0"))?;
            if z.is_zero() {
                return Err(CliError::validation("InvalidArgument", "sample point must be nonzero").at("--z0"));
            }
            Ok(z)
        })
        .collect::<Result<Vec<_>, _>>()?;
    if points.len() < 2 {
        return Err(
            CliError::validation("InvalidArgument", "need at least two --z0 values for the order fit").at("--z0")
        );
    }
    Ok(points)
}

#[derive(Debug, Serialize)]
pub struct SampleSummary {
    pub z0: Entry,
    pub max_error: f64,
    pub errors: Vec<f64>,
    pub noise_floor: f64,
    pub ambiguous: bool,
}

#[derive(Debug, Serialize)]
pub struct VerifyReport {
    pub n: usize,
    pub k: usize,
    pub precision: u32,
    pub expected_slope: f64,
    pub slope: Option<f64>,
    pub slope_tolerance: f64,
    /// `"pass"`, `"fail"`, or `"noise-floor"` when the errors are too small to fit.
    pub status: &'static str,
    pub samples: Vec<SampleSummary>,
}

fn summarize(s: &gaugeform::verify::SampleReport) -> SampleSummary {
    SampleSummary {
        z0: s.z0.encode(),
        max_error: s.max_error,
        errors: s.errors.clone(),
        noise_floor: s.noise_floor,
        ambiguous: s.ambiguous,
    }
}

fn verify_report<T: Codec>(
    a: &MatrixSeries<T>,
    k: usize,
    points: &[Complex],
    precision: u32,
) -> Result<VerifyReport, CliError> {
    let n = a.dim();
    let expected = expected_order(n, k);
    let base = VerifyReport {
        n,
        k,
        precision,
        expected_slope: expected,
        slope: None,
        slope_tolerance: SLOPE_TOLERANCE,
        status: "fail",
        samples: vec![],
    };
    match estimate_order(a, k, points) {
        Ok(est) => {
            let ok = (est.slope - expected).abs() <= SLOPE_TOLERANCE;
            Ok(VerifyReport {
                slope: Some(est.slope),
                status: if ok { "pass" } else { "fail" },
                samples: est.samples.iter().map(summarize).collect(),
                ..base
            })
        }
        Err(Error::DegenerateFit) => {
            let samples = points.iter().map(|z| sample_check(a, k, z)).collect::<Result<Vec<_>, _>>()?;
            Ok(VerifyReport { status: "noise-floor", samples: samples.iter().map(summarize).collect(), ..base })
        }
        Err(e) => Err(e.into()),
    }
}

#[derive(Debug, Serialize)]
pub struct LemmaFailure {
    pub weights: Vec<i64>,
    pub value: Entry,
    pub error: f64,
}

#[derive(Debug, Serialize)]
pub struct LemmaReport {
    pub n: usize,
    pub t: Option<usize>,
    pub precision: u32,
    pub tolerance: f64,
    pub checked: usize,
    pub max_error: f64,
    pub failures: Vec<LemmaFailure>,
}

fn lemma_report(n: usize, t: Option<usize>) -> LemmaReport {
    let outcomes = lemma_check(n, t, DEFAULT_PRECISION);
    let max_error = outcomes.iter().map(|o| o.error).fold(0.0, f64::max);
    let failures = outcomes
        .iter()
        .filter(|o| !o.passed(LEMMA_TOLERANCE))
        .map(|o| LemmaFailure { weights: o.weights.weights().to_vec(), value: o.value.encode(), error: o.error })
        .collect();
    LemmaReport {
        n,
        t,
        precision: DEFAULT_PRECISION,
        tolerance: LEMMA_TOLERANCE,
        checked: outcomes.len(),
        max_error,
        failures,
    }
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let loc = path.display().to_string();
    let text = fs::read_to_string(path).map_err(|e| CliError::io(e.to_string()).at(&loc))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::parse(e.to_string()).at(format!("{loc}:{}:{}", e.line(), e.column())))
}

fn write_json<T: Serialize>(path: &Path, doc: &T) -> Result<(), CliError> {
    fs::write(path, to_json(doc)).map_err(|e| CliError::io(e.to_string()).at(path.display().to_string()))
}
