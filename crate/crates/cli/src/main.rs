//! Command-line front end for the bound pipeline.
//!
//! Exit codes: 0 success, 2 usage or domain error, 3 certification
//! failure, 4 I/O error.

mod grid;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use hlbounds::certify::{report_to_json, reports_to_csv, reports_to_json, DEFAULT_CERTIFICATION_GAP};
use hlbounds::fmt::format_sig15;
use hlbounds::norm_engine::{
    DEFAULT_ASCENT_RESTARTS, DEFAULT_ASCENT_TOL,
};
use hlbounds::{
    build_report, certified_bilinear_upper, extremal_form, hl_exponent, lift_bilinear_upper,
    norm_exact_linf, norm_lower_alternating, sample_plot_series, verify_nontrivial_constant,
    bilinear_seed, BoundReport, Error, HlParams, PExponent, ReportOptions,
    SparseMultilinearForm,
};

#[derive(Parser)]
#[command(
    name = "hlbounds",
    version,
    about = "Certified lower bounds for Hardy-Littlewood inequality constants",
    arg_required_else_help = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Print the mixed-sum exponent rho and its conjugate for (m, p)
    Exponent {
        #[arg(long)]
        m: u32,
        /// Finite value or "inf"
        #[arg(long)]
        p: String,
    },
    /// Bound reports for one pair or a grid like "m=2..10,p=2m,4m"
    Bounds {
        #[arg(long, conflicts_with = "grid", requires = "p")]
        m: Option<u32>,
        #[arg(long, conflicts_with = "grid")]
        p: Option<String>,
        #[arg(long)]
        grid: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
        /// Write to a file instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
        /// Bracket width requested from the certified norm enclosure
        #[arg(long, default_value_t = DEFAULT_CERTIFICATION_GAP)]
        gap: f64,
    },
    /// Norm estimates for a form (t2, tm:M, or file:PATH)
    Norm {
        #[arg(long)]
        form: String,
        /// Finite value or "inf"
        #[arg(long)]
        p: String,
        /// Certified enclosure bracket instead of an ascent lower bound
        /// (built-in family, finite p >= 4)
        #[arg(long)]
        certify: bool,
        #[arg(long, default_value_t = DEFAULT_CERTIFICATION_GAP)]
        gap: f64,
        #[arg(long, default_value_t = DEFAULT_ASCENT_RESTARTS)]
        restarts: usize,
        #[arg(long, default_value_t = DEFAULT_ASCENT_TOL)]
        tol: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Sample the chart functions f and g over [0, 1] as CSV
    Plotdata {
        #[arg(long, default_value = "4")]
        p: String,
        /// Number of equispaced sample intervals
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Certify C(m, 2m) > 1 for every m up to a maximum
    Verify {
        #[arg(long = "max-m", default_value_t = 10)]
        max_m: u32,
        #[arg(long, default_value_t = DEFAULT_CERTIFICATION_GAP)]
        gap: f64,
    },
    /// Inspect forms
    Form {
        #[command(subcommand)]
        action: FormAction,
    },
}

#[derive(Subcommand)]
enum FormAction {
    /// Canonical text dump: one "j_1 ... j_m coefficient" line per entry
    Dump {
        /// t2, tm:M, or file:PATH
        #[arg(long)]
        form: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// A failure with the exit code it maps to.
struct Failure {
    message: String,
    code: u8,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match e {
            Error::CertificationFailed(_) => 3,
            _ => 2,
        };
        Failure {
            message: e.to_string(),
            code,
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Failure {
        Failure {
            message: format!("i/o error: {e}"),
            code: 4,
        }
    }
}

/// Diagnostics to stderr when HLBOUNDS_VERBOSE is set (and not "0").
fn verbose() -> bool {
    std::env::var("HLBOUNDS_VERBOSE")
        .map(|v| !v.is_empty() && v != "0")
        .unwrap_or(false)
}

macro_rules! diag {
    ($($arg:tt)*) => {
        if verbose() {
            eprintln!($($arg)*);
        }
    };
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn parse_p(s: &str) -> Result<PExponent, Failure> {
    Ok(s.parse::<PExponent>()?)
}

fn parse_form_selector(s: &str) -> Result<SparseMultilinearForm, Failure> {
    if s == "t2" {
        return Ok(bilinear_seed());
    }
    if let Some(m) = s.strip_prefix("tm:") {
        let m: u32 = m
            .parse()
            .map_err(|_| Failure::from(Error::Parse(format!("bad arity in {s:?}"))))?;
        return Ok(extremal_form(m)?);
    }
    if let Some(path) = s.strip_prefix("file:") {
        let text = std::fs::read_to_string(Path::new(path))?;
        return Ok(SparseMultilinearForm::parse_canonical_text(&text)?);
    }
    Err(Failure::from(Error::Parse(format!(
        "form selector {s:?} is not t2, tm:M or file:PATH"
    ))))
}

/// Arity of a built-in selector, if it is one.
fn builtin_arity(s: &str) -> Option<u32> {
    if s == "t2" {
        return Some(2);
    }
    s.strip_prefix("tm:").and_then(|m| m.parse().ok())
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Exponent { m, p } => {
            let params = HlParams::new(m, parse_p(&p)?)?;
            let e = hl_exponent(params);
            println!("rho={}", format_sig15(e.rho));
            println!("dual_rho={}", format_sig15(e.dual_rho));
            Ok(())
        }
        Command::Bounds {
            m,
            p,
            grid,
            format,
            out,
            gap,
        } => {
            let (pairs, single) = match (grid, m, p) {
                (Some(spec), None, None) => (grid::parse_grid(&spec)?, false),
                (None, Some(m), Some(p)) => {
                    (vec![HlParams::new(m, parse_p(&p)?)?], true)
                }
                _ => {
                    return Err(Failure::from(Error::Domain(
                        "pass either --grid or both --m and --p".into(),
                    )))
                }
            };
            let options = ReportOptions { gap };
            diag!("bounds: {} pair(s), enclosure gap {gap}", pairs.len());
            let reports: Vec<BoundReport> = pairs
                .into_iter()
                .map(|pr| {
                    diag!("bounds: m={} p={}", pr.m(), pr.p());
                    build_report(pr, options)
                })
                .collect::<Result<_, Error>>()?;
            let text = match format {
                Format::Table => {
                    let blocks: Vec<String> = reports.iter().map(BoundReport::to_kv).collect();
                    blocks.join("\n")
                }
                Format::Json if single => report_to_json(&reports[0]) + "\n",
                Format::Json => reports_to_json(&reports) + "\n",
                Format::Csv => reports_to_csv(&reports),
            };
            emit(&text, out.as_deref())
        }
        Command::Norm {
            form,
            p,
            certify,
            gap,
            restarts,
            tol,
            seed,
        } => {
            let p = parse_p(&p)?;
            match (p, certify) {
                (PExponent::Infinity, _) => {
                    let f = parse_form_selector(&form)?;
                    let value = norm_exact_linf(&f)?;
                    println!("norm={} (exact)", format_sig15(value));
                    println!("method=extreme_points");
                    println!("certified=true");
                }
                (PExponent::Finite(pf), true) => {
                    let arity = builtin_arity(&form).ok_or_else(|| {
                        Failure::from(Error::Domain(
                            "certified enclosures cover the built-in family only (t2, tm:M)"
                                .into(),
                        ))
                    })?;
                    let est = lift_bilinear_upper(arity, &certified_bilinear_upper(pf, gap)?)?;
                    println!("lower={}", format_sig15(est.lower));
                    println!("upper={}", format_sig15(est.upper));
                    println!("method={}", est.method_upper);
                    println!("certified={}", est.certified_upper);
                    println!("conditional={}", est.conditional);
                }
                (PExponent::Finite(_), false) => {
                    let f = parse_form_selector(&form)?;
                    let value = norm_lower_alternating(&f, p, restarts, tol, seed)?;
                    println!("lower={}", format_sig15(value));
                    println!("method=alternating_ascent");
                    println!("restarts={restarts}");
                    println!("seed={seed}");
                }
            }
            Ok(())
        }
        Command::Plotdata { p, samples, out } => {
            let p = match parse_p(&p)? {
                PExponent::Finite(v) => v,
                PExponent::Infinity => {
                    return Err(Failure::from(Error::Domain(
                        "chart sampling needs a finite p".into(),
                    )))
                }
            };
            let series = sample_plot_series(p, samples)?;
            emit(&series.to_csv(), out.as_deref())
        }
        Command::Verify { max_m, gap } => {
            if max_m < 2 {
                return Err(Failure::from(Error::Domain(
                    "--max-m must be at least 2".into(),
                )));
            }
            let mut all_hold = true;
            for m in 2..=max_m {
                let report = verify_nontrivial_constant(m, gap)?;
                let q = &report.quotient;
                diag!(
                    "verify: m={m} bracket=[{}, {}]",
                    format_sig15(q.norm_lower),
                    format_sig15(q.norm_upper)
                );
                println!(
                    "m={m} p={} quotient={} norm_upper={} certified={} nontrivial={}",
                    format_sig15(2.0 * f64::from(m)),
                    format_sig15(q.value),
                    format_sig15(q.norm_upper),
                    q.certified,
                    report.nontrivial
                );
                all_hold &= report.nontrivial && q.certified && !q.conditional;
            }
            if all_hold {
                println!("constant exceeds 1 for every m=2..{max_m}");
                Ok(())
            } else {
                Err(Failure {
                    message: format!("could not certify the constant above 1 up to m={max_m}"),
                    code: 3,
                })
            }
        }
        Command::Form { action } => match action {
            FormAction::Dump { form, out } => {
                let f = parse_form_selector(&form)?;
                emit(&f.to_canonical_text(), out.as_deref())
            }
        },
    }
}
