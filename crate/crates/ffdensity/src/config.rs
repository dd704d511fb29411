//! Experiment files: one `key = value` per line, `#` starts a comment.
//!
//! ```text
//! spec = q=2; excluded=inf
//! predicate = unimodular
//! k = 1
//! m = 2
//! mode = exhaustive
//! j_max = 8
//! reference = auto
//! ```

use std::collections::BTreeMap;

use ffdensity_core::density::{DensityExperiment, Mode, Predicate};
use ffdensity_core::eisenstein::ramified_density_truncated;
use ffdensity_core::unimodular::unimodular_density_exact;
use ffdensity_core::zeta::LPolynomial;
use ffdensity_core::{BigRational, DivisorOnT};

use crate::cli::CliError;
use crate::text::{parse_divisor, parse_lpoly, parse_rational, parse_spec, parse_tuple_form};

pub const DEFAULT_SEED: u64 = 7;
pub const DEFAULT_J_MAX: u64 = 8;
pub const DEFAULT_SAMPLES: u64 = 10_000;

const KEYS: &[&str] = &[
    "spec",
    "predicate",
    "k",
    "m",
    "n",
    "t_scan",
    "f",
    "g",
    "t",
    "t_max",
    "arity",
    "chain",
    "j_max",
    "mode",
    "cap",
    "seed",
    "samples",
    "reference",
    "reference_t",
    "lpoly",
];

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// Raw `key = value` pairs.
pub fn parse_pairs(src: &str) -> Result<BTreeMap<String, String>, CliError> {
    let mut out = BTreeMap::new();
    for (no, line) in src.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((k, v)) = line.split_once('=') else {
            return Err(usage(format!("line {}: expected key = value", no + 1)));
        };
        let k = k.trim().to_string();
        if !KEYS.contains(&k.as_str()) {
            return Err(usage(format!("line {}: unknown key `{k}`", no + 1)));
        }
        if out.insert(k.clone(), v.trim().to_string()).is_some() {
            return Err(usage(format!("line {}: duplicate key `{k}`", no + 1)));
        }
    }
    Ok(out)
}

fn num<T: std::str::FromStr>(pairs: &BTreeMap<String, String>, key: &str) -> Result<Option<T>, CliError> {
    match pairs.get(key) {
        None => Ok(None),
        Some(v) => v
            .parse()
            .map(Some)
            .map_err(|_| usage(format!("`{key}` must be a number, got `{v}`"))),
    }
}

fn required<T: std::str::FromStr>(pairs: &BTreeMap<String, String>, key: &str) -> Result<T, CliError> {
    num(pairs, key)?.ok_or_else(|| usage(format!("missing `{key}`")))
}

/// Builds the experiment; `cap` is the default exhaustive cap.
pub fn experiment_from_str(src: &str, cap: u64) -> Result<DensityExperiment, CliError> {
    let pairs = parse_pairs(src)?;
    let spec = parse_spec(pairs.get("spec").ok_or_else(|| usage("missing `spec`"))?)?;
    let field = spec.function_field().field().clone();
    let lpoly = match pairs.get("lpoly") {
        Some(s) => parse_lpoly(s)?,
        None => LPolynomial::one(),
    };
    let kind = pairs
        .get("predicate")
        .map(String::as_str)
        .ok_or_else(|| usage("missing `predicate`"))?;
    let (predicate, arity) = match kind {
        "unimodular" => {
            let (k, m): (usize, usize) = (required(&pairs, "k")?, required(&pairs, "m")?);
            (Predicate::Unimodular { k, m }, k * m)
        }
        "ramified" | "in_U_P_some_place" => {
            let n: usize = required(&pairs, "n")?;
            let t_scan = required(&pairs, "t_scan")?;
            (Predicate::RamifiedSomePlace { n, t_scan }, n + 1)
        }
        "congruence" | "custom_congruence" => {
            let f = parse_tuple_form(&field, pairs.get("f").ok_or_else(|| usage("missing `f`"))?)?;
            let g = parse_tuple_form(&field, pairs.get("g").ok_or_else(|| usage("missing `g`"))?)?;
            let arity = num(&pairs, "arity")?.unwrap_or(f.variables().max(g.variables()).max(1));
            let t = required(&pairs, "t")?;
            let t_max = num(&pairs, "t_max")?;
            (Predicate::CustomCongruence { f, g, t, t_max }, arity)
        }
        other => return Err(usage(format!("unknown predicate `{other}`"))),
    };
    if let Some(a) = num::<usize>(&pairs, "arity")? {
        if a != arity {
            return Err(usage(format!("arity {a} does not match the predicate ({arity})")));
        }
    }
    let chain: Vec<DivisorOnT> = match pairs.get("chain").map(String::as_str) {
        None | Some("default") => spec.default_chain(num(&pairs, "j_max")?.unwrap_or(DEFAULT_J_MAX)),
        Some(list) => list
            .split(';')
            .map(|d| parse_divisor(&spec, d))
            .collect::<Result<_, _>>()?,
    };
    let mode = match pairs.get("mode").map(String::as_str).unwrap_or("exhaustive") {
        "exhaustive" => Mode::Exhaustive {
            cap: num(&pairs, "cap")?.unwrap_or(cap),
        },
        "sample" => Mode::Sample {
            seed: num(&pairs, "seed")?.unwrap_or(DEFAULT_SEED),
            count: num(&pairs, "samples")?.unwrap_or(DEFAULT_SAMPLES),
        },
        other => return Err(usage(format!("unknown mode `{other}`"))),
    };
    let reference: Option<BigRational> = match pairs.get("reference").map(String::as_str) {
        None | Some("none") => None,
        Some("auto") => match &predicate {
            Predicate::Unimodular { k, m } => Some(unimodular_density_exact(&spec, *k, *m, &lpoly)?),
            Predicate::RamifiedSomePlace { n, t_scan } => {
                let t = num(&pairs, "reference_t")?.unwrap_or(*t_scan);
                Some(ramified_density_truncated(*n, &spec, t)?)
            }
            Predicate::CustomCongruence { .. } => None,
        },
        Some(r) => Some(parse_rational(r)?),
    };
    Ok(DensityExperiment::new(predicate, spec, arity, chain, mode, reference)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unimodular_config() {
        let src =
            "spec = q=2; excluded=inf\npredicate = unimodular\nk = 1\nm = 2 # comment\nj_max = 3\nreference = auto\n";
        let exp = experiment_from_str(src, 1 << 20).unwrap();
        assert_eq!(exp.chain().len(), 4);
        assert_eq!(exp.reference().unwrap(), &BigRational::new(1.into(), 2.into()));
        assert_eq!(exp.arity(), 2);
    }

    #[test]
    fn rejects_bad_configs() {
        assert!(experiment_from_str("predicate = unimodular", 10).is_err());
        assert!(experiment_from_str("spec = q=2\nspec = q=3", 10).is_err());
        assert!(experiment_from_str("spec = q=2\npredicate = other", 10).is_err());
        assert!(experiment_from_str("spec = q=2\nfoo = 1", 10).is_err());
    }

    #[test]
    fn congruence_and_custom_chain() {
        let src = "spec = q=2\npredicate = congruence\nf = y0\ng = y1\nt = 1\nchain = 0; inf; 3*inf\nmode = sample\nsamples = 50";
        let exp = experiment_from_str(src, 1 << 20).unwrap();
        assert_eq!(exp.chain().len(), 3);
        assert_eq!(
            exp.mode(),
            Mode::Sample {
                seed: DEFAULT_SEED,
                count: 50
            }
        );
    }
}
