//! Command-line interface. Every subcommand prints one JSON document to
//! standard output; exit code 0 on success, 2 on precondition or input
//! violations, 3 when a consistency alarm fired.

use std::fs;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::hankel::{self, CoeffSeq};
use crate::operator::commutator_norm;
use crate::report::{fmt_f64, fmt_symbol, sandwich, SandwichReport};
use crate::symbol::TaylorSymbol;
use crate::torsion::{
    pullback_solution, torsional_rigidity_exact, torsional_rigidity_exact_forced,
    torsional_rigidity_fd, torsional_rigidity_fd_forced, TorsionResult,
};

#[derive(Parser)]
#[command(
    name = "bergman",
    about = "Self-commutator norms, torsional rigidity, and isoperimetric sandwich checks for polynomial symbols on the unit disk",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Exact,
    Fd,
}

#[derive(Subcommand)]
enum Command {
    /// Operator norm of the self-commutator [T*, T] for the symbol
    Commutator {
        /// Coefficients as a JSON array of [re, im] pairs, index = degree
        #[arg(long)]
        coeffs: Option<String>,
        /// Read the coefficient JSON from a file instead
        #[arg(long)]
        file: Option<PathBuf>,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Torsional rigidity of the image domain
    Torsion {
        #[arg(long)]
        coeffs: Option<String>,
        #[arg(long)]
        file: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Method::Exact)]
        method: Method,
        /// Finite-difference grid as RADIALxANGULAR
        #[arg(long, default_value = "128x256")]
        grid: String,
        /// Compute the multiplicity-weighted value even without a
        /// univalence certificate
        #[arg(long)]
        force: bool,
        /// Dump the pulled-back Poisson solution to stderr (exact method)
        #[arg(long)]
        dump_solution: bool,
    },
    /// Full isoperimetric sandwich report
    Sandwich {
        #[arg(long)]
        coeffs: Option<String>,
        #[arg(long)]
        file: Option<PathBuf>,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        /// Also write the output document to this path
        #[arg(long)]
        json: Option<PathBuf>,
        /// Emit CSV instead of JSON
        #[arg(long)]
        csv: bool,
        /// Process a JSON array of symbols from this file, one report per line
        #[arg(long)]
        batch: Option<PathBuf>,
    },
    /// Nullspace of the extremality equality system
    Extremal {
        #[arg(long)]
        coeffs: Option<String>,
        #[arg(long)]
        file: Option<PathBuf>,
        /// Unknowns b_1..b_N; defaults to 4 (K + 1)
        #[arg(long)]
        truncation: Option<usize>,
    },
    /// Coefficient-space Hankel norm against its half-energy bound
    OrCheck {
        #[arg(long)]
        coeffs: Option<String>,
        #[arg(long)]
        file: Option<PathBuf>,
        /// Test-function coefficients as a JSON array of [re, im] pairs
        #[arg(long)]
        f_coeffs: String,
    },
}

pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // clap renders its own message; usage errors exit 2, help/version 0
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            error_exit_code(&e)
        }
    }
}

fn error_exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_)
        | Error::NonFinite(_)
        | Error::TooFewSamples { .. }
        | Error::TruncationTooSmall { .. }
        | Error::GridTooCoarse { .. }
        | Error::UnivalenceUncertified
        | Error::DegreeCap { .. }
        | Error::NotReal(_)
        | Error::NotHermitian
        | Error::NonPositiveTolerance(_) => 2,
        Error::BoundViolation { .. } => 3,
        Error::NoConvergence { .. }
        | Error::SectionCap { .. }
        | Error::LinearSolve(_)
        | Error::Io(_) => 1,
    }
}

fn dispatch(cmd: Command) -> Result<i32> {
    match cmd {
        Command::Commutator { coeffs, file, tol } => {
            let s = load_symbol(coeffs.as_deref(), file.as_deref())?;
            let out = commutator_norm(&s, tol)?;
            println!(
                "{{\"value\":{},\"truncationUsed\":{},\"tolerance\":{}}}",
                fmt_f64(out.value),
                out.truncation,
                fmt_f64(tol)
            );
            Ok(0)
        }
        Command::Torsion { coeffs, file, method, grid, force, dump_solution } => {
            let s = load_symbol(coeffs.as_deref(), file.as_deref())?;
            let result = match method {
                Method::Exact => {
                    if dump_solution {
                        eprintln!("{}", pullback_solution(&s)?.to_json_string());
                    }
                    if force {
                        torsional_rigidity_exact_forced(&s)?
                    } else {
                        torsional_rigidity_exact(&s)?
                    }
                }
                Method::Fd => {
                    let (radial, angular) = parse_grid(&grid)?;
                    if force {
                        torsional_rigidity_fd_forced(&s, radial, angular)?
                    } else {
                        torsional_rigidity_fd(&s, radial, angular)?
                    }
                }
            };
            println!("{}", torsion_json(&result));
            Ok(0)
        }
        Command::Sandwich { coeffs, file, tol, json, csv, batch } => {
            let symbols = if let Some(path) = batch {
                load_batch(&path)?
            } else {
                vec![load_symbol(coeffs.as_deref(), file.as_deref())?]
            };
            let mut reports = Vec::new();
            let mut alarmed = false;
            for s in &symbols {
                let report = sandwich(s, tol)?;
                alarmed |= !report.alarms.is_empty();
                reports.push(report);
            }
            let rendered = render_reports(&reports, csv);
            print!("{rendered}");
            if let Some(path) = json {
                fs::write(path, &rendered)?;
            }
            Ok(if alarmed { 3 } else { 0 })
        }
        Command::Extremal { coeffs, file, truncation } => {
            let s = load_symbol(coeffs.as_deref(), file.as_deref())?;
            let n = truncation.unwrap_or(4 * (s.degree() + 1));
            let result = hankel::extremal_nullspace(&s, n)?;
            let mut basis = String::from("[");
            for (i, seq) in result.nullspace_basis.iter().enumerate() {
                if i > 0 {
                    basis.push(',');
                }
                basis.push_str(&fmt_symbol(&seq.as_symbol()));
            }
            basis.push(']');
            println!(
                "{{\"classification\":\"{}\",\"nullspaceDim\":{},\"truncation\":{},\"basis\":{}}}",
                result.classification.as_str(),
                result.nullspace_dim,
                result.truncation,
                basis
            );
            Ok(0)
        }
        Command::OrCheck { coeffs, file, f_coeffs } => {
            let s = load_symbol(coeffs.as_deref(), file.as_deref())?;
            let f = CoeffSeq::from_pairs(&parse_pairs(&f_coeffs)?)?;
            let norm_sq = hankel::hankel_norm_sq_on(&f, &s);
            let bound = hankel::half_energy_bound(&f, &s);
            let h = crate::operator::hankel_apply(&s, &f.as_symbol())?;
            let direct = h.multiply(&h.conj())?.disk_integral().re / std::f64::consts::PI;
            println!(
                "{{\"hankelNormSq\":{},\"bound\":{},\"slack\":{},\"directHankelNormSq\":{}}}",
                fmt_f64(norm_sq),
                fmt_f64(bound),
                fmt_f64(bound - norm_sq),
                fmt_f64(direct)
            );
            Ok(0)
        }
    }
}

fn torsion_json(t: &TorsionResult) -> String {
    let rho_over_pi = match &t.rho_over_pi {
        Some(r) => format!("\"{r}\""),
        None => "null".to_string(),
    };
    format!(
        "{{\"rho\":{},\"rhoOverPi\":{},\"method\":\"{}\",\"maxBoundaryResidual\":{},\"maxLaplacianResidual\":{}}}",
        fmt_f64(t.rho),
        rho_over_pi,
        t.method.as_str(),
        fmt_f64(t.max_boundary_residual),
        fmt_f64(t.max_laplacian_residual)
    )
}

fn render_reports(reports: &[SandwichReport], csv: bool) -> String {
    let mut out = String::new();
    if csv {
        out.push_str(SandwichReport::csv_header());
        out.push('\n');
        for r in reports {
            out.push_str(&r.to_csv_row());
            out.push('\n');
        }
    } else {
        for r in reports {
            out.push_str(&r.to_json_string());
            out.push('\n');
        }
    }
    out
}

fn load_symbol(inline: Option<&str>, file: Option<&std::path::Path>) -> Result<TaylorSymbol> {
    let text = match (inline, file) {
        (Some(t), None) => t.to_string(),
        (None, Some(p)) => fs::read_to_string(p)?,
        (Some(_), Some(_)) => {
            return Err(Error::Parse("pass either --coeffs or --file, not both".into()))
        }
        (None, None) => {
            return Err(Error::Parse("missing coefficients: pass --coeffs or --file".into()))
        }
    };
    TaylorSymbol::from_pairs(&parse_pairs(&text)?)
}

fn load_batch(path: &std::path::Path) -> Result<Vec<TaylorSymbol>> {
    let text = fs::read_to_string(path)?;
    let value: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| Error::Parse(format!("malformed batch JSON: {e}")))?;
    let arr = value
        .as_array()
        .ok_or_else(|| Error::Parse("batch file must hold a JSON array of symbols".into()))?;
    arr.iter()
        .enumerate()
        .map(|(i, item)| {
            let pairs = pairs_from_value(item)
                .map_err(|e| Error::Parse(format!("symbol at position {i}: {e}")))?;
            TaylorSymbol::from_pairs(&pairs)
        })
        .collect()
}

fn parse_pairs(text: &str) -> Result<Vec<[f64; 2]>> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| {
        Error::Parse(format!(
            "malformed coefficient JSON ({e}); offending input near `{}`",
            snippet(text, e.column())
        ))
    })?;
    pairs_from_value(&value).map_err(Error::Parse)
}

fn pairs_from_value(value: &serde_json::Value) -> std::result::Result<Vec<[f64; 2]>, String> {
    let arr = value
        .as_array()
        .ok_or_else(|| format!("expected a JSON array of [re, im] pairs, found `{value}`"))?;
    arr.iter()
        .enumerate()
        .map(|(i, item)| {
            let pair = item
                .as_array()
                .filter(|p| p.len() == 2)
                .ok_or_else(|| format!("coefficient {i}: expected [re, im], found `{item}`"))?;
            let mut out = [0.0; 2];
            for (slot, v) in out.iter_mut().zip(pair) {
                *slot = v
                    .as_f64()
                    .ok_or_else(|| format!("coefficient {i}: expected a number, found `{v}`"))?;
            }
            Ok(out)
        })
        .collect()
}

fn snippet(text: &str, column: usize) -> String {
    let chars: Vec<char> = text.chars().collect();
    let at = column.saturating_sub(1).min(chars.len());
    let lo = at.saturating_sub(8);
    let hi = (at + 8).min(chars.len());
    chars[lo..hi].iter().collect()
}

fn parse_grid(text: &str) -> Result<(usize, usize)> {
    let (r, a) = text
        .split_once(['x', 'X'])
        .ok_or_else(|| Error::Parse(format!("grid must look like 128x256, got `{text}`")))?;
    let radial = r
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad radial node count `{r}`")))?;
    let angular = a
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad angular node count `{a}`")))?;
    Ok((radial, angular))
}
