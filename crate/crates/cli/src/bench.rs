//! `bench-mul` and `bench-add`.

use std::fmt::Write as _;

use clap::{Args, ValueEnum};
use p2lsg::bench::{
    add_presets, emit_report, emit_table, format_full, mul_presets, run_sweep, BenchConfig, MaeReport, Operation,
    ReportFormat,
};
use p2lsg::sequences::SequenceSpec;

use crate::args;
use crate::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    /// Published rounding, sequences as rows.
    Table,
    /// Full precision, one row per length.
    Csv,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Two comma-separated specs (addends, select for bench-add); default:
    /// every preset pair.
    #[arg(long)]
    seqs: Option<String>,
    /// Exponents of the stream lengths: `8`, `6..16` or `6,8,10`
    /// [default: 6..16 for bench-mul, 2..9 for bench-add].
    #[arg(long, value_parser = args::exponent_list)]
    lengths: Option<args::Exponents>,
    #[arg(long, value_enum, default_value_t = Output::Table)]
    out: Output,
    /// Worker threads [default: one per core].
    #[arg(long, value_parser = args::worker_count)]
    workers: Option<usize>,
    /// Seed for seeded families (the second stream gets seed + 1).
    #[arg(long)]
    seed: Option<u64>,
    /// Fill the wall_seconds column (output then varies between runs).
    #[arg(long)]
    timing: bool,
}

fn pairs(operation: Operation, a: &BenchArgs) -> CliResult<Vec<(String, (SequenceSpec, SequenceSpec))>> {
    let Some(text) = &a.seqs else {
        let seed = a
            .seed
            .ok_or_else(|| CliError::usage("the preset pairs include seeded families: pass --seed or pick --seqs"))?;
        let presets = match operation {
            Operation::Mul => mul_presets(seed),
            Operation::Add => add_presets(seed),
        };
        return Ok(presets.into_iter().map(|(name, p)| (name.to_string(), p)).collect());
    };
    let specs = SequenceSpec::parse_list(text).map_err(|e| CliError::usage(e.to_string()))?;
    let [first, second]: [SequenceSpec; 2] = specs
        .try_into()
        .map_err(|v: Vec<_>| CliError::usage(format!("--seqs needs exactly two specs, got {}", v.len())))?;
    let (first, second) = match a.seed {
        Some(seed) => (first.with_default_seed(seed), second.with_default_seed(seed.wrapping_add(1))),
        None => (first, second),
    };
    args::require_seed(&first, "--seqs")?;
    args::require_seed(&second, "--seqs")?;
    Ok(vec![(format!("{first} x {second}"), (first, second))])
}

pub fn run(operation: Operation, a: &BenchArgs, out: &mut String) -> CliResult<()> {
    let exponents = a.lengths.clone().map(|e| e.0).unwrap_or_else(|| match operation {
        Operation::Mul => (6..=16).collect(),
        Operation::Add => (2..=9).collect(),
    });
    let lengths: Vec<u64> = exponents.iter().map(|&e| 1u64 << e).collect();
    let workers = args::workers(a.workers)?;
    let pairs = pairs(operation, a)?;
    let single = a.seqs.is_some();
    let mut reports: Vec<(String, MaeReport)> = Vec::with_capacity(pairs.len());
    for (label, specs) in pairs {
        let mut config = BenchConfig::new(operation, specs, lengths.clone())?;
        config.workers = workers;
        config.timing = a.timing;
        reports.push((label, run_sweep(&config)?));
    }
    match (a.out, single) {
        (Output::Table, _) => out.push_str(&emit_table(&reports)),
        (Output::Csv, true) => out.push_str(&emit_report(&reports[0].1, ReportFormat::Csv)),
        (Output::Csv, false) => {
            out.push_str("sequence,length,mae_percent,wall_seconds\n");
            for (label, report) in &reports {
                for row in &report.rows {
                    let _ = writeln!(
                        out,
                        "{label},{},{},{}",
                        row.length,
                        format_full(&row.mae_percent_exact()),
                        row.wall_seconds.as_deref().unwrap_or("")
                    );
                }
            }
        }
    }
    Ok(())
}
