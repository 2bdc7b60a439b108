//! Exhaustive MAE sweeps for SC multiplication and scaled addition.
//!
//! Every `(k1, k2)` pair of `n`-bit inputs is encoded, combined and decoded
//! at each stream length. Per-pair errors are kept as exact integer
//! numerators over a common denominator, so the sums are independent of how
//! the pairs are split across workers.

use std::fmt::Write as _;
use std::time::Instant;

use num_rational::Ratio;

use crate::bitstream::{encode_all_levels, encode_level, Bitstream, Thresholds};
use crate::error::{Error, Result};
use crate::ops::{and_popcount, mux2_popcount};
use crate::par::Workers;
use crate::sequences::SequenceSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Operation {
    /// AND of two uncorrelated streams against `x1 * x2`.
    Mul,
    /// MUX of two correlated addend streams, select at 1/2, against
    /// `(x1 + x2) / 2`.
    Add,
}

impl Operation {
    pub fn name(&self) -> &'static str {
        match self {
            Operation::Mul => "mul",
            Operation::Add => "add",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchConfig {
    pub operation: Operation,
    /// For `Add` the first spec drives both addends and the second the select.
    pub sequences: (SequenceSpec, SequenceSpec),
    pub lengths: Vec<u64>,
    pub input_bits: u32,
    pub workers: Workers,
    /// Record wall-clock seconds per length (makes output run-dependent).
    pub timing: bool,
}

impl BenchConfig {
    pub fn new(
        operation: Operation,
        sequences: (SequenceSpec, SequenceSpec),
        lengths: Vec<u64>,
    ) -> Result<Self> {
        let config = Self {
            operation,
            sequences,
            lengths,
            input_bits: 8,
            workers: Workers::default(),
            timing: false,
        };
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        if self.input_bits == 0 || self.input_bits > 16 {
            return Err(Error::config(format!(
                "input precision {} outside 1..=16",
                self.input_bits
            )));
        }
        if let Some(bad) = self.lengths.iter().find(|l| !l.is_power_of_two()) {
            return Err(Error::config(format!("stream length {bad} is not a power of two")));
        }
        if self.lengths.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::config("stream lengths must be strictly ascending"));
        }
        Ok(())
    }

    /// `2^lo ..= 2^hi`.
    pub fn power_range(lo: u32, hi: u32) -> Vec<u64> {
        (lo..=hi).map(|e| 1u64 << e).collect()
    }
}

/// One stream length's result: `MAE% = 100 * error_sum / denominator`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaeRow {
    pub length: u64,
    pub error_sum: u128,
    pub denominator: u128,
    pub wall_seconds: Option<String>,
}

impl MaeRow {
    pub fn mae_percent_exact(&self) -> Ratio<u128> {
        Ratio::new(100 * self.error_sum, self.denominator)
    }

    pub fn mae_percent(&self) -> f64 {
        let r = self.mae_percent_exact();
        *r.numer() as f64 / *r.denom() as f64
    }

    /// Percent MAE rounded half-to-even at `decimals` places.
    pub fn mae_percent_rounded(&self, decimals: u32) -> String {
        format_half_even(&self.mae_percent_exact(), decimals)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaeReport {
    pub operation: Operation,
    pub sequences: (SequenceSpec, SequenceSpec),
    pub input_bits: u32,
    pub rows: Vec<MaeRow>,
}

impl MaeReport {
    pub fn row(&self, length: u64) -> Option<&MaeRow> {
        self.rows.iter().find(|r| r.length == length)
    }
}

/// Writes `r` with `decimals` fractional digits, ties to even.
pub fn format_half_even(r: &Ratio<u128>, decimals: u32) -> String {
    let scale = 10u128.pow(decimals);
    let (num, den) = (*r.numer() * scale, *r.denom());
    let (mut q, rem) = (num / den, num % den);
    if 2 * rem > den || (2 * rem == den && q % 2 == 1) {
        q += 1;
    }
    if decimals == 0 {
        return q.to_string();
    }
    let (int, frac) = (q / scale, q % scale);
    format!("{int}.{frac:0width$}", width = decimals as usize)
}

/// Full-precision rendering: 12 places, trailing zeros dropped.
pub fn format_full(r: &Ratio<u128>) -> String {
    let s = format_half_even(r, 12);
    let s = s.trim_end_matches('0');
    if s.ends_with('.') {
        format!("{s}0")
    } else {
        s.to_string()
    }
}

/// Decimal places the published tables use for a column.
pub fn display_decimals(operation: Operation, length: u64) -> u32 {
    match operation {
        Operation::Mul if length <= 1 << 8 => 2,
        Operation::Mul if length <= 1 << 12 => 3,
        Operation::Mul => 4,
        Operation::Add if length == 1 << 8 => 3,
        Operation::Add => 2,
    }
}

fn thresholds_for(spec: &SequenceSpec, length: u64, bits: u32) -> Result<Thresholds> {
    spec.thresholds(length, bits).map_err(|e| match e {
        Error::Range(msg) => Error::generation(msg),
        other => other,
    })
}

fn sweep_length(config: &BenchConfig, length: u64) -> Result<MaeRow> {
    let n = config.input_bits;
    let levels = 1usize << n;
    let (spec_a, spec_b) = &config.sequences;
    let a = thresholds_for(spec_a, length, n)?;
    let b = thresholds_for(spec_b, length, n)?;
    let streams_a: Vec<Bitstream> = encode_all_levels(&a)?;
    let started = config.timing.then(Instant::now);
    let len = length as u128;
    let (error_sum, denominator) = match config.operation {
        Operation::Mul => {
            let streams_b = encode_all_levels(&b)?;
            // |c/N - k1 k2 / 2^2n| = |c 2^2n - k1 k2 N| / (N 2^2n)
            let scale = 1u128 << (2 * n);
            let sum = config.workers.sum(levels, |k1| {
                (0..levels)
                    .map(|k2| {
                        let c = and_popcount(&streams_a[k1], &streams_b[k2])
                            .expect("streams share one length") as u128;
                        (c * scale).abs_diff((k1 * k2) as u128 * len)
                    })
                    .sum()
            });
            (sum, (levels * levels) as u128 * len * scale)
        }
        Operation::Add => {
            let select = encode_level(1 << (n - 1), &b)?;
            // |c/N - (k1 + k2) / 2^(n+1)| = |c 2^(n+1) - (k1 + k2) N| / (N 2^(n+1))
            let scale = 1u128 << (n + 1);
            let sum = config.workers.sum(levels, |k1| {
                (0..levels)
                    .map(|k2| {
                        let c = mux2_popcount(&streams_a[k1], &streams_a[k2], &select)
                            .expect("streams share one length") as u128;
                        (c * scale).abs_diff((k1 + k2) as u128 * len)
                    })
                    .sum()
            });
            (sum, (levels * levels) as u128 * len * scale)
        }
    };
    Ok(MaeRow {
        length,
        error_sum,
        denominator,
        wall_seconds: started.map(|t| format!("{:.3}", t.elapsed().as_secs_f64())),
    })
}

fn sweep(config: &BenchConfig) -> Result<MaeReport> {
    config.validate()?;
    let rows = config
        .lengths
        .iter()
        .map(|&l| sweep_length(config, l))
        .collect::<Result<_>>()?;
    Ok(MaeReport {
        operation: config.operation,
        sequences: config.sequences.clone(),
        input_bits: config.input_bits,
        rows,
    })
}

pub fn mae_mul_sweep(config: &BenchConfig) -> Result<MaeReport> {
    if config.operation != Operation::Mul {
        return Err(Error::config("mae_mul_sweep needs a mul configuration"));
    }
    sweep(config)
}

pub fn mae_add_sweep(config: &BenchConfig) -> Result<MaeReport> {
    if config.operation != Operation::Add {
        return Err(Error::config("mae_add_sweep needs an add configuration"));
    }
    sweep(config)
}

pub fn run_sweep(config: &BenchConfig) -> Result<MaeReport> {
    sweep(config)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Table,
}

fn length_label(length: u64) -> String {
    if length.is_power_of_two() {
        format!("2^{}", length.trailing_zeros())
    } else {
        length.to_string()
    }
}

/// CSV (`length,mae_percent,wall_seconds`, full precision) or a one-row table.
pub fn emit_report(report: &MaeReport, format: ReportFormat) -> String {
    match format {
        ReportFormat::Csv => {
            let mut out = String::from("length,mae_percent,wall_seconds\n");
            for row in &report.rows {
                let _ = writeln!(
                    out,
                    "{},{},{}",
                    row.length,
                    format_full(&row.mae_percent_exact()),
                    row.wall_seconds.as_deref().unwrap_or("")
                );
            }
            out
        }
        ReportFormat::Table => {
            let label = format!("{} x {}", report.sequences.0, report.sequences.1);
            emit_table(&[(label, report.clone())])
        }
    }
}

/// Sequences as rows, lengths as columns, values in the published rounding.
pub fn emit_table(rows: &[(String, MaeReport)]) -> String {
    let mut lengths: Vec<u64> = rows
        .iter()
        .flat_map(|(_, r)| r.rows.iter().map(|row| row.length))
        .collect();
    lengths.sort_unstable();
    lengths.dedup();
    let mut grid: Vec<Vec<String>> = Vec::with_capacity(rows.len() + 1);
    let mut header = vec!["sequence".to_string()];
    header.extend(lengths.iter().map(|&l| length_label(l)));
    grid.push(header);
    for (label, report) in rows {
        let mut line = vec![label.clone()];
        for &l in &lengths {
            line.push(match report.row(l) {
                Some(row) => row.mae_percent_rounded(display_decimals(report.operation, l)),
                None => "-".to_string(),
            });
        }
        grid.push(line);
    }
    let widths: Vec<usize> = (0..grid[0].len())
        .map(|c| grid.iter().map(|r| r[c].len()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for (i, line) in grid.iter().enumerate() {
        let cells: Vec<String> = line
            .iter()
            .enumerate()
            .map(|(c, cell)| {
                if c == 0 {
                    format!("{cell:<w$}", w = widths[c])
                } else {
                    format!("{cell:>w$}", w = widths[c])
                }
            })
            .collect();
        out.push_str(cells.join(" | ").trim_end());
        out.push('\n');
        if i == 0 {
            let rule: Vec<String> = widths.iter().map(|&w| "-".repeat(w)).collect();
            out.push_str(&rule.join("-+-"));
            out.push('\n');
        }
    }
    out
}

/// Named sequence pairs for the multiplication table, in display order.
/// Seeded families use `seed` and `seed + 1`.
pub fn mul_presets(seed: u64) -> Vec<(&'static str, (SequenceSpec, SequenceSpec))> {
    presets(seed)
}

/// Pairs for the scaled-addition table; the first spec drives the addends.
pub fn add_presets(seed: u64) -> Vec<(&'static str, (SequenceSpec, SequenceSpec))> {
    presets(seed)
}

fn presets(seed: u64) -> Vec<(&'static str, (SequenceSpec, SequenceSpec))> {
    use crate::sequences::additive::Irrational;
    use crate::sequences::sobol::NetOrder;
    use crate::sequences::DEFAULT_POISSON_ATTEMPTS;
    let poisson = |s| SequenceSpec::PoissonDisk {
        seed: Some(s),
        min_distance: None,
        max_attempts: DEFAULT_POISSON_ATTEMPTS,
    };
    let niederreiter = |d| SequenceSpec::Niederreiter {
        dimension: d,
        order: NetOrder::GrayCode,
        skip: 1,
    };
    vec![
        ("Sobol", (SequenceSpec::sobol(1), SequenceSpec::sobol(2))),
        ("R2", (SequenceSpec::R2 { dimension: 0 }, SequenceSpec::R2 { dimension: 1 })),
        (
            "Weyl",
            (
                SequenceSpec::Weyl { alpha: Irrational::PI },
                SequenceSpec::Weyl { alpha: Irrational::SILVER },
            ),
        ),
        (
            "Latin Hypercube",
            (
                SequenceSpec::LatinHypercube { seed: Some(seed) },
                SequenceSpec::LatinHypercube { seed: Some(seed.wrapping_add(1)) },
            ),
        ),
        (
            "Faure",
            (
                SequenceSpec::Faure { prime: 7, dimension: 0 },
                SequenceSpec::Faure { prime: 7, dimension: 1 },
            ),
        ),
        ("Halton", (SequenceSpec::Halton { prime: 11 }, SequenceSpec::Halton { prime: 13 })),
        (
            "Hammersley",
            (
                SequenceSpec::Hammersley { dimension: 0 },
                SequenceSpec::Hammersley { dimension: 1 },
            ),
        ),
        ("Niederreiter", (niederreiter(0), niederreiter(1))),
        ("Poisson Disk", (poisson(seed), poisson(seed.wrapping_add(1)))),
        ("P2LSG", (SequenceSpec::p2lsg(2), SequenceSpec::p2lsg_n())),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p2lsg_config(op: Operation, lengths: Vec<u64>) -> BenchConfig {
        BenchConfig::new(op, (SequenceSpec::p2lsg(2), SequenceSpec::p2lsg_n()), lengths).unwrap()
    }

    #[test]
    fn half_even_rounding() {
        let r = |n, d| Ratio::new(n, d);
        assert_eq!(format_half_even(&r(5, 1000), 2), "0.00");
        assert_eq!(format_half_even(&r(15, 1000), 2), "0.02");
        assert_eq!(format_half_even(&r(25, 1000), 2), "0.02");
        assert_eq!(format_half_even(&r(251, 10000), 2), "0.03");
        assert_eq!(format_half_even(&r(1759, 1000), 2), "1.76");
        assert_eq!(format_half_even(&r(0, 1), 4), "0.0000");
        assert_eq!(format_full(&r(25, 64)), "0.390625");
        assert_eq!(format_full(&r(0, 1)), "0.0");
    }

    #[test]
    fn p2lsg_mul_row_points() {
        let report = mae_mul_sweep(&p2lsg_config(Operation::Mul, vec![1 << 8])).unwrap();
        assert_eq!(report.rows[0].mae_percent_rounded(2), "0.39");
    }

    #[test]
    fn p2lsg_add_row_points() {
        let report = mae_add_sweep(&p2lsg_config(Operation::Add, vec![1 << 5, 1 << 9])).unwrap();
        assert_eq!(report.rows[0].mae_percent_rounded(2), "1.55");
        assert_eq!(report.rows[1].error_sum, 0);
    }

    #[test]
    fn zero_operand_contributes_nothing() {
        // the k1 = 0 stream is all zeros, so its AND with anything has no ones
        let t = SequenceSpec::p2lsg(2).thresholds(64, 8).unwrap();
        let zero = encode_level(0, &t).unwrap();
        assert_eq!(zero.count_ones(), 0);
    }

    #[test]
    fn csv_shapes() {
        let mut report = mae_mul_sweep(&p2lsg_config(Operation::Mul, vec![1 << 6])).unwrap();
        let csv = emit_report(&report, ReportFormat::Csv);
        assert_eq!(csv.lines().count(), 2);
        assert!(csv.starts_with("length,mae_percent,wall_seconds\n64,"));
        report.rows.clear();
        assert_eq!(emit_report(&report, ReportFormat::Csv), "length,mae_percent,wall_seconds\n");
    }

    #[test]
    fn rejects_bad_configs() {
        let pair = (SequenceSpec::p2lsg(2), SequenceSpec::p2lsg_n());
        assert!(BenchConfig::new(Operation::Mul, pair.clone(), vec![256, 64]).is_err());
        assert!(BenchConfig::new(Operation::Mul, pair.clone(), vec![100]).is_err());
        let short = (
            SequenceSpec::P2lsg { base: crate::sequences::P2lsgBase::Fixed(2), bits: Some(6) },
            SequenceSpec::p2lsg_n(),
        );
        let cfg = BenchConfig::new(Operation::Mul, short, vec![128]).unwrap();
        assert!(matches!(mae_mul_sweep(&cfg), Err(Error::Generation(_))));
        assert!(mae_add_sweep(&p2lsg_config(Operation::Mul, vec![64])).is_err());
    }

    #[test]
    fn table_layout() {
        let report = mae_mul_sweep(&p2lsg_config(Operation::Mul, vec![64, 128])).unwrap();
        let text = emit_table(&[("P2LSG".to_string(), report)]);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 3);
        assert!(lines[0].contains("2^6") && lines[0].contains("2^7"));
        assert!(lines[2].starts_with("P2LSG"));
        assert!(lines[2].contains("1.76"));
    }
}
