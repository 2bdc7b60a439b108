//! Flag value parsers shared by the subcommands.

use std::path::Path;

use num_rational::Ratio;
use p2lsg::par::Workers;
use p2lsg::sequences::SequenceSpec;

use crate::{CliError, CliResult};

/// clap value parser for one sequence spec.
pub fn spec(text: &str) -> Result<SequenceSpec, String> {
    text.parse().map_err(|e: p2lsg::Error| e.to_string())
}

/// A spec that still lacks the seed its family needs.
pub fn missing_seed(spec: &SequenceSpec) -> bool {
    spec.is_seeded() && spec.clone().with_default_seed(0) != *spec
}

pub fn require_seed(spec: &SequenceSpec, flag: &str) -> CliResult<()> {
    if missing_seed(spec) {
        return Err(CliError::usage(format!(
            "{} is seeded: give seed=<u64> in {flag} or pass --seed",
            spec.family()
        )));
    }
    Ok(())
}

/// clap value parser for `--workers`.
pub fn worker_count(text: &str) -> Result<usize, String> {
    match text.parse::<usize>() {
        Ok(k) if k >= 1 => Ok(k),
        _ => Err(format!("'{text}' is not a worker count of at least 1")),
    }
}

pub fn workers(count: Option<usize>) -> CliResult<Workers> {
    match count {
        None => Ok(Workers::all_cores()),
        Some(k) => Workers::new(k).map_err(|e| CliError::usage(e.to_string())),
    }
}

/// Parsed `--lengths` value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Exponents(pub Vec<u32>);

pub fn exponent_list(text: &str) -> Result<Exponents, String> {
    exponents(text).map(Exponents)
}

/// Stream-length exponents: `8`, `6..16` (inclusive) or `6,8,10`.
pub fn exponents(text: &str) -> Result<Vec<u32>, String> {
    let one = |t: &str| -> Result<u32, String> {
        let e: u32 = t.trim().parse().map_err(|_| format!("'{t}' is not an exponent"))?;
        if e > 32 {
            return Err(format!("exponent {e} is above 32"));
        }
        Ok(e)
    };
    let mut out = if let Some((lo, hi)) = text.split_once("..") {
        let (lo, hi) = (one(lo)?, one(hi.trim_start_matches('='))?);
        if lo > hi {
            return Err(format!("empty range {text}"));
        }
        (lo..=hi).collect()
    } else {
        text.split(',').map(one).collect::<Result<Vec<_>, _>>()?
    };
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// A scale factor given as `2`, `3/2` or `1.5`.
pub fn factor(text: &str) -> Result<Ratio<u64>, String> {
    let bad = || format!("'{text}' is not a positive factor");
    let int = |t: &str| t.parse::<u64>().map_err(|_| bad());
    let r = if let Some((n, d)) = text.split_once('/') {
        let (n, d) = (int(n)?, int(d)?);
        if d == 0 {
            return Err(bad());
        }
        Ratio::new(n, d)
    } else if let Some((whole, frac)) = text.split_once('.') {
        if frac.is_empty() || frac.len() > 9 || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let den = 10u64.pow(frac.len() as u32);
        let whole = if whole.is_empty() { 0 } else { int(whole)? };
        let num = whole.checked_mul(den).and_then(|w| w.checked_add(int(frac).ok()?)).ok_or_else(bad)?;
        Ratio::new(num, den)
    } else {
        Ratio::from_integer(int(text)?)
    };
    if r == Ratio::from_integer(0) {
        return Err(bad());
    }
    Ok(r)
}

pub fn read_file(path: &Path) -> CliResult<Vec<u8>> {
    std::fs::read(path).map_err(|e| io_error(path, e))
}

pub fn io_error(path: &Path, err: std::io::Error) -> CliError {
    CliError::Lib(p2lsg::Error::Io {
        path: path.display().to_string(),
        message: err.to_string(),
    })
}
