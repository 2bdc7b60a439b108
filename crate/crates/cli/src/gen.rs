//! `gen` and `scc`.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, ValueEnum};
use num_rational::Ratio;
use p2lsg::bench::format_half_even;
use p2lsg::bitstream::{read_bitfile, scc, BitFileFormat};
use p2lsg::p2lsg::{p2lsg_parallel, P2lsgConfig};
use p2lsg::sequences::{P2lsgBase, Sample, SequenceSpec};

use crate::args::{self, read_file};
use crate::{CliError, CliResult};

/// Decimal places for `--decimal` and fixed-point output.
const DECIMALS: u32 = 12;

#[derive(Debug, Args)]
pub struct GenArgs {
    /// Family name or a full sequence spec; the flags below add parameters.
    #[arg(long)]
    family: String,
    /// Radix (`N` for the stream length with p2lsg).
    #[arg(long)]
    base: Option<String>,
    /// Counter width (p2lsg) or register width (lfsr).
    #[arg(long)]
    bits: Option<u32>,
    #[arg(long)]
    prime: Option<u64>,
    #[arg(long)]
    dim: Option<u64>,
    /// `natural` or `gray` (sobol, niederreiter).
    #[arg(long)]
    order: Option<String>,
    #[arg(long)]
    skip: Option<u64>,
    /// Weyl increment: pi, e, sqrt2, golden, silver, ...
    #[arg(long)]
    alpha: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    /// Poisson-disk minimum distance, `a/b` or a decimal.
    #[arg(long)]
    r: Option<String>,
    #[arg(long)]
    attempts: Option<u64>,
    /// LFSR tap mask, decimal or 0x-hex.
    #[arg(long)]
    taps: Option<String>,
    /// Values to print (cycles with --par).
    #[arg(long)]
    count: u64,
    /// Index of the first value printed.
    #[arg(long, default_value_t = 0)]
    index: u64,
    /// Print every value as a decimal fraction.
    #[arg(long, conflicts_with = "scale_bits")]
    decimal: bool,
    /// Print `floor(v * 2^n)` instead of the value.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..=64))]
    scale_bits: Option<u32>,
    /// Parallel P2LSG lanes: P comma-separated values per line.
    #[arg(long, alias = "parallel", value_parser = clap::value_parser!(u64).range(1..))]
    par: Option<u64>,
}

impl GenArgs {
    fn spec(&self) -> CliResult<SequenceSpec> {
        let mut text = self.family.clone();
        let params = [
            ("base", self.base.clone()),
            ("bits", self.bits.map(|v| v.to_string())),
            ("prime", self.prime.map(|v| v.to_string())),
            ("dim", self.dim.map(|v| v.to_string())),
            ("order", self.order.clone()),
            ("skip", self.skip.map(|v| v.to_string())),
            ("alpha", self.alpha.clone()),
            ("seed", self.seed.map(|v| v.to_string())),
            ("r", self.r.clone()),
            ("attempts", self.attempts.map(|v| v.to_string())),
            ("taps", self.taps.clone()),
        ];
        for (key, value) in params {
            if let Some(value) = value {
                text.push(if text.contains(':') { ',' } else { ':' });
                let _ = write!(text, "{key}={value}");
            }
        }
        let spec: SequenceSpec = text.parse().map_err(|e: p2lsg::Error| CliError::usage(e.to_string()))?;
        args::require_seed(&spec, "--family")?;
        Ok(spec)
    }
}

fn decimal(r: Ratio<u128>) -> String {
    format_half_even(&r, DECIMALS)
}

fn render(sample: &Sample, a: &GenArgs) -> String {
    if let Some(bits) = a.scale_bits {
        return sample.to_frac64().quantize(bits).to_string();
    }
    match sample {
        Sample::Integer { value, bits } if a.decimal => decimal(Ratio::new(*value as u128, 1u128 << bits)),
        Sample::Integer { value, .. } => value.to_string(),
        Sample::Exact(r) if a.decimal => decimal(*r),
        Sample::Exact(r) => r.to_string(),
        Sample::Fixed(f) => decimal(Ratio::new(f.0 as u128, 1u128 << 64)),
    }
}

pub fn run_gen(a: &GenArgs, out: &mut String) -> CliResult<()> {
    let spec = a.spec()?;
    let total = a
        .index
        .checked_add(a.count)
        .ok_or_else(|| CliError::usage("--index + --count overflows"))?;
    if let Some(par) = a.par {
        return run_parallel(&spec, par, total, a, out);
    }
    for sample in spec.samples(total)?.iter().skip(a.index as usize) {
        out.push_str(&render(sample, a));
        out.push('\n');
    }
    Ok(())
}

fn run_parallel(spec: &SequenceSpec, par: u64, cycles: u64, a: &GenArgs, out: &mut String) -> CliResult<()> {
    let SequenceSpec::P2lsg { base, bits } = spec else {
        return Err(CliError::usage(format!("--par needs the p2lsg family, not {}", spec.family())));
    };
    if a.decimal || a.scale_bits.is_some() {
        return Err(CliError::usage("--par prints counter integers; drop --decimal/--scale-bits"));
    }
    let bits = match bits {
        Some(b) => *b,
        None => {
            let values = cycles.checked_mul(par).ok_or_else(|| CliError::usage("--count x --par overflows"))?;
            values.max(2).next_power_of_two().trailing_zeros()
        }
    };
    let base = match base {
        P2lsgBase::Fixed(b) => *b,
        P2lsgBase::StreamLength => 1u64
            .checked_shl(bits)
            .ok_or_else(|| CliError::usage(format!("base 2^{bits} does not fit in 64 bits")))?,
    };
    let config = P2lsgConfig::with_par(base, bits, par)?;
    for tuple in p2lsg_parallel(&config, cycles)?.iter().skip(a.index as usize) {
        let line: Vec<String> = tuple.iter().map(u64::to_string).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FileFormat {
    /// '0'/'1' characters, whitespace ignored.
    Ascii,
    /// 8-byte little-endian bit count, then packed bytes.
    Binary,
}

#[derive(Debug, Args)]
pub struct SccArgs {
    #[arg(long)]
    a: PathBuf,
    #[arg(long)]
    b: PathBuf,
    #[arg(long, value_enum, default_value_t = FileFormat::Ascii)]
    format: FileFormat,
}

pub fn run_scc(a: &SccArgs, out: &mut String) -> CliResult<()> {
    let format = match a.format {
        FileFormat::Ascii => BitFileFormat::Ascii,
        FileFormat::Binary => BitFileFormat::Binary,
    };
    let s1 = read_bitfile(&read_file(&a.a)?, format)?;
    let s2 = read_bitfile(&read_file(&a.b)?, format)?;
    let _ = writeln!(out, "{}", scc(&s1, &s2)?);
    Ok(())
}
