//! `p2lsg`: sequence generation, SCC measurement, MAE sweeps and the SC
//! media pipelines behind one command.
//!
//! Exit codes: 0 success, 1 usage error, 2 runtime or domain error, 3 file
//! or parse error.

mod args;
mod bench;
mod gen;
mod media;

use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use thiserror::Error;

const SPEC_GRAMMAR: &str = "\
Sequence specs use <family>[:<key>=<value>,...], for example
  p2lsg:base=16,bits=8   p2lsg2   p2lsgN   vdc:base=3   halton:prime=11
  hammersley:dim=1   faure:prime=7,dim=1   sobol:dim=2,order=gray,skip=1
  niederreiter:dim=1   weyl:alpha=pi   r2:dim=0   lhs:seed=42
  poisson:seed=7,r=1/1024,attempts=100000   lfsr:taps=0xb8,seed=1
Seeded families (lhs, poisson) need an explicit seed.

Exit codes: 0 success, 1 usage error, 2 runtime error, 3 file or parse error.";

#[derive(Debug, Parser)]
#[command(name = "p2lsg", version, about = "Low-discrepancy sequences and stochastic-computing experiments", after_help = SPEC_GRAMMAR)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the first values of a sequence, one per line.
    Gen(gen::GenArgs),
    /// Stochastic cross-correlation of two bit-stream files.
    Scc(gen::SccArgs),
    /// Exhaustive MAE sweep of AND multiplication.
    BenchMul(bench::BenchArgs),
    /// Exhaustive MAE sweep of MUX scaled addition.
    BenchAdd(bench::BenchArgs),
    /// Bilinear image scaling with stochastic MUX trees.
    Scale(media::ScaleArgs),
    /// Green-screen compositing with stochastic MUXes.
    Merge(media::MergeArgs),
    /// PSNR and SSIM of a test image against a reference.
    Score(media::ScoreArgs),
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Lib(#[from] p2lsg::Error),
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Lib(p2lsg::Error::Parse { .. } | p2lsg::Error::Io { .. }) => 3,
            CliError::Lib(_) => 2,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

fn run(command: Command, out: &mut String) -> CliResult<()> {
    match command {
        Command::Gen(a) => gen::run_gen(&a, out),
        Command::Scc(a) => gen::run_scc(&a, out),
        Command::BenchMul(a) => bench::run(p2lsg::bench::Operation::Mul, &a, out),
        Command::BenchAdd(a) => bench::run(p2lsg::bench::Operation::Add, &a, out),
        Command::Scale(a) => media::run_scale(&a, out),
        Command::Merge(a) => media::run_merge(&a, out),
        Command::Score(a) => media::run_score(&a, out),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    let mut out = String::new();
    match run(cli.command, &mut out) {
        Ok(()) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(3);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
