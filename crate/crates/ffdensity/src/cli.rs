//! Argument parsing and subcommand dispatch for the `ffdensity` binary.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use ffdensity_core::density::{compare, DensityExperiment, DensityReport, Mode, Predicate};
use ffdensity_core::eisenstein::{
    classify, is_eisenstein, local_measure_u, local_measure_u_bruteforce, ramified_density_truncated,
    ramified_density_truncated_f64, ramified_tail_bound, shifted_eisenstein_witness, Branch,
};
use ffdensity_core::rational::to_f64;
use ffdensity_core::unimodular::{
    is_unimodular, local_nonunimodular_bruteforce, local_nonunimodular_measure, maximal_minors, residue_rank,
    unimodular_density_exact,
};
use ffdensity_core::zeta::{zeta_f, zeta_h, zeta_h_euler_truncated, zeta_h_euler_truncated_f64};
use ffdensity_core::{BigRational, Error, HolomorphySpec};
use serde_json::{json, Map, Value};

use crate::config::{experiment_from_str, DEFAULT_SAMPLES, DEFAULT_SEED};
use crate::json;
use crate::parallel::run_parallel;
use crate::text::{
    format_place, format_poly_list, format_rational_function, format_spec, parse_lpoly, parse_matrix, parse_place,
    parse_poly_over_f, parse_spec, ParseError,
};

pub const DEFAULT_SPEC: &str = "q=2; excluded=inf";
pub const DEFAULT_MAX_ENUM: u64 = 1 << 24;
pub const MAX_ENUM_VAR: &str = "FFDENSITY_MAX_ENUM";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Domain(#[from] Error),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Parse(_) => 2,
            CliError::Domain(_) | CliError::Io(_) => 1,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Output {
    Json,
    Table,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum MeasureKind {
    Ramified,
    Unimodular,
}

#[derive(Debug, Parser)]
#[command(name = "ffdensity", version, about = "Densities over holomorphy rings of F_q(x)")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub output: Output,
    /// Threads used by the density harness; results do not depend on it.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    pub workers: u16,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, clap::Args)]
pub struct SpecArg {
    /// Holomorphy ring, e.g. `q=2; excluded=inf` or `q=4; excluded=inf,(x); modulus=1,1,1`.
    #[arg(long, default_value = DEFAULT_SPEC)]
    pub spec: String,
}

#[derive(Debug, clap::Args)]
pub struct EmpiricalArgs {
    /// Estimate by enumeration or sampling of a Riemann-Roch box.
    #[arg(long)]
    pub empirical: bool,
    /// Chain index j of the box L(D_j), D_j = j * sum of excluded places.
    #[arg(long, default_value_t = 6)]
    pub deg: u64,
    /// Number of samples (ignored with --exhaustive).
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    pub samples: u64,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Enumerate the whole box instead of sampling.
    #[arg(long)]
    pub exhaustive: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Places of the ring of a given degree.
    Places {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long)]
        degree: usize,
        /// Print the count only.
        #[arg(long)]
        count_only: bool,
    },
    /// Eisenstein test of a polynomial over F at a place.
    Eisenstein {
        #[command(flatten)]
        spec: SpecArg,
        /// Coefficients a_0..a_n, e.g. `[x,x,0,1]`.
        #[arg(long)]
        f: String,
        #[arg(long)]
        place: String,
        /// Also report the shift witness and the U_P branch.
        #[arg(long)]
        detail: bool,
    },
    /// Density of polynomials that are in U_P at some place.
    RamifiedDensity {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long)]
        n: usize,
        /// Truncate the Euler product at places of degree <= t.
        #[arg(long)]
        truncate: Option<usize>,
        #[command(flatten)]
        empirical: EmpiricalArgs,
        /// Largest place degree scanned by the empirical predicate.
        #[arg(long, default_value_t = 4)]
        scan_degree: usize,
    },
    /// Unimodularity test of a k x m matrix.
    Unimodular {
        #[command(flatten)]
        spec: SpecArg,
        /// Rows separated by `;`, entries by `,`.
        #[arg(long)]
        matrix: String,
        /// Also report the maximal minors.
        #[arg(long)]
        detail: bool,
    },
    /// Density of unimodular k x m matrices.
    UnimodularDensity {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        m: usize,
        /// L-polynomial coefficients, constant first.
        #[arg(long, default_value = "1")]
        lpoly: String,
        #[command(flatten)]
        empirical: EmpiricalArgs,
    },
    /// zeta_H(s) at an integer s >= 2.
    Zeta {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long)]
        s: i64,
        #[arg(long, default_value = "1")]
        lpoly: String,
        /// Also evaluate the Euler product over places of degree <= t.
        #[arg(long)]
        truncate: Option<usize>,
        /// Also report zeta_F(s).
        #[arg(long)]
        detail: bool,
    },
    /// Run an experiment file; prints one JSON line per chain point.
    Run {
        #[arg(long)]
        experiment: PathBuf,
    },
    /// Local measure at one place.
    LocalMeasure {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long, value_enum)]
        kind: MeasureKind,
        #[arg(long)]
        place: String,
        /// Degree of the polynomial (ramified).
        #[arg(long)]
        n: Option<usize>,
        /// Matrix shape (unimodular).
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
        /// Compare with an exhaustive census over the residue ring.
        #[arg(long)]
        bruteforce: bool,
    },
}

/// Reads `FFDENSITY_MAX_ENUM`.
pub fn max_enum() -> Result<u64, CliError> {
    match std::env::var(MAX_ENUM_VAR) {
        Err(_) => Ok(DEFAULT_MAX_ENUM),
        Ok(v) => match v.trim().parse::<u64>() {
            Ok(n) if n > 0 => Ok(n),
            _ => Err(CliError::Usage(format!(
                "{MAX_ENUM_VAR} must be a positive integer, got `{v}`"
            ))),
        },
    }
}

/// Parses `args`, runs the command and returns the process exit code.
pub fn main_with_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return ExitCode::from(code);
        }
    };
    match execute(&cli, out) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn spec_of(a: &SpecArg) -> Result<HolomorphySpec, CliError> {
    Ok(parse_spec(&a.spec)?)
}

fn emit(out: &mut dyn Write, cli: &Cli, v: &Value) -> Result<(), CliError> {
    match cli.output {
        Output::Json => writeln!(out, "{v}")?,
        Output::Table => writeln!(out, "{}", json::table(v))?,
    }
    Ok(())
}

fn emit_report(out: &mut dyn Write, cli: &Cli, report: &DensityReport) -> Result<(), CliError> {
    let cmp = if report.reference.is_some() {
        Some(compare(report)?)
    } else {
        None
    };
    let lines = json::report_lines(report, cmp.as_ref());
    match cli.output {
        Output::Json => {
            for l in &lines {
                writeln!(out, "{l}")?;
            }
        }
        Output::Table => {
            let mut cols = vec![
                "chain_index",
                "divisor",
                "deg_D",
                "hits",
                "total",
                "ratio",
                "ratio_approx",
            ];
            if report.points.iter().any(|p| p.std_error.is_some()) {
                cols.push("std_error_approx");
            }
            if cmp.is_some() {
                cols.extend(["reference", "gap_approx"]);
            }
            writeln!(out, "{}", json::rows_table(&lines, &cols))?;
            for n in &report.notes {
                writeln!(out, "# {n}")?;
            }
        }
    }
    Ok(())
}

fn empirical_mode(a: &EmpiricalArgs, cap: u64) -> Mode {
    if a.exhaustive {
        Mode::Exhaustive { cap }
    } else {
        Mode::Sample {
            seed: a.seed,
            count: a.samples,
        }
    }
}

fn need<T: Copy>(v: Option<T>, flag: &str) -> Result<T, CliError> {
    v.ok_or_else(|| CliError::Usage(format!("missing required flag --{flag}")))
}

pub fn execute(cli: &Cli, out: &mut dyn Write) -> Result<(), CliError> {
    let cap = max_enum()?;
    let workers = cli.workers as usize;
    match &cli.command {
        Command::Places {
            spec,
            degree,
            count_only,
        } => {
            let spec = spec_of(spec)?;
            let count = spec.count_places_of_degree(*degree)?;
            let mut m = Map::new();
            m.insert("spec".into(), json!(format_spec(&spec)));
            m.insert("degree".into(), json!(degree));
            m.insert(
                "count".into(),
                u64::try_from(count).map_or(json!(count.to_string()), |c| json!(c)),
            );
            if !count_only {
                if count > cap as u128 {
                    return Err(Error::TooLarge {
                        what: "place list".into(),
                        size: count.to_string(),
                        cap,
                    }
                    .into());
                }
                let list: Vec<Value> = spec
                    .places_of_degree(*degree)?
                    .iter()
                    .map(|p| match p.as_poly() {
                        Some(poly) => json!(format_poly_list(poly)),
                        None => json!(format_place(p)),
                    })
                    .collect();
                m.insert("places".into(), Value::Array(list));
            }
            emit(out, cli, &Value::Object(m))
        }
        Command::Eisenstein { spec, f, place, detail } => {
            let spec = spec_of(spec)?;
            let ff = spec.function_field();
            let f = parse_poly_over_f(ff, f)?;
            let place = parse_place(ff, place)?;
            let mut m = Map::new();
            m.insert("eisenstein".into(), json!(is_eisenstein(ff, &f, &place)));
            if *detail {
                let witness = shifted_eisenstein_witness(ff, &f, &place)?;
                m.insert(
                    "shift_witness".into(),
                    witness
                        .as_ref()
                        .map_or(Value::Null, |a| json!(format_rational_function(a))),
                );
                let branch = match classify(ff, &f, &place)? {
                    None => Value::Null,
                    Some(Branch::Shift(_)) => json!("shift"),
                    Some(Branch::Inversion) => json!("inversion"),
                };
                m.insert("in_U_P".into(), json!(!branch.is_null()));
                m.insert("branch".into(), branch);
            }
            emit(out, cli, &Value::Object(m))
        }
        Command::RamifiedDensity {
            spec,
            n,
            truncate,
            empirical,
            scan_degree,
        } => {
            let spec = spec_of(spec)?;
            match (truncate, empirical.empirical) {
                (Some(_), true) | (None, false) => Err(CliError::Usage(
                    "ramified-density needs exactly one of --truncate or --empirical".into(),
                )),
                (Some(t), false) => {
                    let mut m = Map::new();
                    m.insert("n".into(), json!(n));
                    m.insert("t".into(), json!(t));
                    match ramified_density_truncated(*n, &spec, *t) {
                        Ok(r) => {
                            m.insert("density_truncated".into(), json::rational(&r));
                            m.insert("density_truncated_approx".into(), json::approx(to_f64(&r)));
                        }
                        Err(Error::Overflow(_)) => {
                            m.insert("density_truncated".into(), Value::Null);
                            let x = ramified_density_truncated_f64(*n, &spec, *t)?;
                            m.insert("density_truncated_approx".into(), json::approx(x));
                        }
                        Err(e) => return Err(e.into()),
                    }
                    m.insert(
                        "tail_bound_approx".into(),
                        json::approx(ramified_tail_bound(*n, &spec, *t)?),
                    );
                    emit(out, cli, &Value::Object(m))
                }
                (None, true) => {
                    let reference = match ramified_density_truncated(*n, &spec, *scan_degree) {
                        Ok(r) => Some(r),
                        Err(Error::Overflow(_)) => None,
                        Err(e) => return Err(e.into()),
                    };
                    let chain = vec![spec.chain_point(empirical.deg)];
                    let exp = DensityExperiment::new(
                        Predicate::RamifiedSomePlace {
                            n: *n,
                            t_scan: *scan_degree,
                        },
                        spec,
                        n + 1,
                        chain,
                        empirical_mode(empirical, cap),
                        reference,
                    )?;
                    emit_report(out, cli, &run_parallel(&exp, workers)?)
                }
            }
        }
        Command::Unimodular { spec, matrix, detail } => {
            let spec = spec_of(spec)?;
            let mat = parse_matrix(&spec, matrix)?;
            let mut m = Map::new();
            m.insert("unimodular".into(), json!(is_unimodular(&mat, &spec)));
            if *detail {
                let ff = spec.function_field();
                let minors: Vec<Value> = maximal_minors(ff, &mat)
                    .iter()
                    .map(|u| json!(format_rational_function(u)))
                    .collect();
                m.insert("minors".into(), Value::Array(minors));
                let mut ranks = Map::new();
                for place in spec.places_up_to(2)? {
                    ranks.insert(format_place(&place), json!(residue_rank(ff, &mat, &place)?));
                }
                m.insert("residue_ranks".into(), Value::Object(ranks));
            }
            emit(out, cli, &Value::Object(m))
        }
        Command::UnimodularDensity {
            spec,
            k,
            m,
            lpoly,
            empirical,
        } => {
            let spec = spec_of(spec)?;
            let l = parse_lpoly(lpoly)?;
            let density = unimodular_density_exact(&spec, *k, *m, &l)?;
            if !empirical.empirical {
                return emit(out, cli, &json!({ "density": json::rational(&density) }));
            }
            let chain = vec![spec.chain_point(empirical.deg)];
            let exp = DensityExperiment::new(
                Predicate::Unimodular { k: *k, m: *m },
                spec,
                k * m,
                chain,
                empirical_mode(empirical, cap),
                Some(density),
            )?;
            emit_report(out, cli, &run_parallel(&exp, workers)?)
        }
        Command::Zeta {
            spec,
            s,
            lpoly,
            truncate,
            detail,
        } => {
            let spec = spec_of(spec)?;
            let l = parse_lpoly(lpoly)?;
            let mut m = Map::new();
            m.insert("zeta_H".into(), json::rational(&zeta_h(*s, &spec, &l)?));
            if *detail {
                m.insert("zeta_F".into(), json::rational(&zeta_f(*s, spec.q() as u64, &l)?));
            }
            if let Some(t) = truncate {
                if l.genus() > 0 {
                    return Err(Error::Domain("the Euler truncation is only available for L = 1".into()).into());
                }
                match zeta_h_euler_truncated(*s, &spec, *t) {
                    Ok(z) => {
                        m.insert("euler_truncated_approx".into(), json::approx(to_f64(&z)));
                        m.insert("euler_truncated".into(), json::rational(&z));
                    }
                    Err(Error::Overflow(_)) => {
                        m.insert("euler_truncated".into(), Value::Null);
                        m.insert(
                            "euler_truncated_approx".into(),
                            json::approx(zeta_h_euler_truncated_f64(*s, &spec, *t)?),
                        );
                    }
                    Err(e) => return Err(e.into()),
                }
            }
            emit(out, cli, &Value::Object(m))
        }
        Command::Run { experiment } => {
            let src = std::fs::read_to_string(experiment)?;
            let exp = experiment_from_str(&src, cap)?;
            emit_report(out, cli, &run_parallel(&exp, workers)?)
        }
        Command::LocalMeasure {
            spec,
            kind,
            place,
            n,
            k,
            m: cols,
            bruteforce,
        } => {
            let spec = spec_of(spec)?;
            let ff = spec.function_field();
            let place = parse_place(ff, place)?;
            let q = spec.q() as u64;
            let (exact, brute): (BigRational, Option<BigRational>) = match kind {
                MeasureKind::Ramified => {
                    let n = need(*n, "n")?;
                    let exact = local_measure_u(q, &place, n)?.value;
                    let brute = if *bruteforce {
                        Some(local_measure_u_bruteforce(ff, &place, n, cap)?.value)
                    } else {
                        None
                    };
                    (exact, brute)
                }
                MeasureKind::Unimodular => {
                    let (k, mm) = (need(*k, "k")?, need(*cols, "m")?);
                    let exact = local_nonunimodular_measure(q, &place, k, mm)?;
                    let brute = if *bruteforce {
                        Some(local_nonunimodular_bruteforce(ff, &place, k, mm, cap)?)
                    } else {
                        None
                    };
                    (exact, brute)
                }
            };
            let mut m = Map::new();
            m.insert("place".into(), json!(format_place(&place)));
            m.insert("measure".into(), json::rational(&exact));
            if let Some(b) = brute {
                m.insert("bruteforce_agrees".into(), json!(b == exact));
                m.insert("bruteforce".into(), json::rational(&b));
            }
            emit(out, cli, &Value::Object(m))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> (u8, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = main_with_args(
            std::iter::once("ffdensity").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        let code = if code == ExitCode::SUCCESS {
            0
        } else if code == ExitCode::from(1) {
            1
        } else {
            2
        };
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn exact_outputs() {
        assert_eq!(
            run(&["unimodular-density", "--k", "1", "--m", "2"]).1,
            "{\"density\":\"1/2\"}\n"
        );
        assert_eq!(run(&["zeta", "--s", "2"]).1, "{\"zeta_H\":\"2/1\"}\n");
        let (code, out, _) = run(&["eisenstein", "--f", "[x,x,0,1]", "--place", "(x)"]);
        assert_eq!((code, out.as_str()), (0, "{\"eisenstein\":true}\n"));
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run(&["frobnicate"]).0, 2);
        assert_eq!(run(&["zeta", "--s", "2", "--spec", "q=6"]).0, 2);
        assert_eq!(run(&["zeta", "--s", "1"]).0, 1);
        assert_eq!(run(&["ramified-density", "--n", "3"]).0, 2);
        assert_eq!(run(&["--help"]).0, 0);
    }
}
