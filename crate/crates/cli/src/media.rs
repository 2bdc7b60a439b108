//! `scale`, `merge` and `score`.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::Args;
use num_rational::Ratio;
use p2lsg::media::merge::{
    chroma_key_alpha, frame_name, list_frames, MergeAssignment, Merger, DEFAULT_DOMINANCE_MARGIN,
    DEFAULT_GREEN_THRESHOLD,
};
use p2lsg::media::metrics::{psnr, ssim};
use p2lsg::media::pnm::{read_pgm, read_pnm_file, read_ppm, write_pnm_file};
use p2lsg::media::scale::{scale_image_sc, ScaleAssignment};
use p2lsg::media::{AlphaMap, Image, RgbImage};
use p2lsg::sequences::SequenceSpec;

use crate::args::{self, io_error, read_file};
use crate::{CliError, CliResult};

#[derive(Debug, Args)]
pub struct ScaleArgs {
    /// Input PGM or PPM.
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    out: PathBuf,
    /// Scale factor >= 1: `2`, `3/2` or `1.5`.
    #[arg(long, value_parser = args::factor)]
    factor: Ratio<u64>,
    /// Stream length (power of two).
    #[arg(long, default_value_t = 256)]
    n: u64,
    /// Pixel streams [default: p2lsg2].
    #[arg(long, value_parser = args::spec)]
    seq_data: Option<SequenceSpec>,
    /// Horizontal select [default: p2lsgN].
    #[arg(long, value_parser = args::spec)]
    seq_u: Option<SequenceSpec>,
    /// Vertical select [default: sobol:dim=2].
    #[arg(long, value_parser = args::spec)]
    seq_v: Option<SequenceSpec>,
    #[arg(long, value_parser = args::worker_count)]
    workers: Option<usize>,
}

pub fn run_scale(a: &ScaleArgs, out: &mut String) -> CliResult<()> {
    let defaults = ScaleAssignment::default();
    let assignment = ScaleAssignment {
        data: a.seq_data.clone().unwrap_or(defaults.data),
        u: a.seq_u.clone().unwrap_or(defaults.u),
        v: a.seq_v.clone().unwrap_or(defaults.v),
    };
    for (spec, flag) in [(&assignment.data, "--seq-data"), (&assignment.u, "--seq-u"), (&assignment.v, "--seq-v")] {
        args::require_seed(spec, flag)?;
    }
    let workers = args::workers(a.workers)?;
    let img = read_pnm_file(&a.input)?;
    let scaled = scale_image_sc(&img, a.factor, a.n, &assignment, workers)?;
    write_pnm_file(&a.out, &scaled)?;
    let _ = writeln!(
        out,
        "{}x{} -> {}x{}",
        img.width(),
        img.height(),
        scaled.width(),
        scaled.height()
    );
    Ok(())
}

#[derive(Debug, Args)]
pub struct MergeArgs {
    /// Background PPM shared by every frame.
    #[arg(long)]
    bg: PathBuf,
    /// Directory of foreground frames `frame_NNNNNN.ppm`.
    #[arg(long, requires = "out_dir", conflicts_with_all = ["fg", "out", "alpha"])]
    fg_dir: Option<PathBuf>,
    /// Output directory for merged frames.
    #[arg(long, requires = "fg_dir")]
    out_dir: Option<PathBuf>,
    /// Alpha maps `frame_NNNNNN.pgm` matching the foreground frames.
    #[arg(long, requires = "fg_dir", conflicts_with_all = ["green_threshold", "margin"])]
    alpha_dir: Option<PathBuf>,
    /// Single foreground frame.
    #[arg(long, requires = "out")]
    fg: Option<PathBuf>,
    /// Output for the single frame.
    #[arg(long, requires = "fg")]
    out: Option<PathBuf>,
    /// Alpha map PGM for the single frame.
    #[arg(long, requires = "fg", conflicts_with_all = ["green_threshold", "margin"])]
    alpha: Option<PathBuf>,
    /// Keyed when G exceeds this...
    #[arg(long)]
    green_threshold: Option<u8>,
    /// ...and exceeds max(R, B) by more than this.
    #[arg(long)]
    margin: Option<u8>,
    /// Stream length (power of two).
    #[arg(long, default_value_t = 256)]
    n: u64,
    /// Pixel streams [default: p2lsg2].
    #[arg(long, value_parser = args::spec)]
    seq_data: Option<SequenceSpec>,
    /// Alpha select [default: p2lsgN].
    #[arg(long, value_parser = args::spec)]
    seq_select: Option<SequenceSpec>,
    #[arg(long, value_parser = args::worker_count)]
    workers: Option<usize>,
}

fn read_rgb(path: &Path) -> CliResult<RgbImage> {
    read_ppm(&read_file(path)?).map_err(|e| located(path, e))
}

fn read_alpha(path: &Path) -> CliResult<AlphaMap> {
    Ok(read_pgm(&read_file(path)?).map_err(|e| located(path, e))?.into())
}

/// Prefixes parse errors with the file they came from.
fn located(path: &Path, e: p2lsg::Error) -> CliError {
    match e {
        p2lsg::Error::Parse { offset, message } => CliError::Lib(p2lsg::Error::Parse {
            offset,
            message: format!("{}: {message}", path.display()),
        }),
        other => other.into(),
    }
}

pub fn run_merge(a: &MergeArgs, out: &mut String) -> CliResult<()> {
    let defaults = MergeAssignment::default();
    let assignment = MergeAssignment {
        data: a.seq_data.clone().unwrap_or(defaults.data),
        select: a.seq_select.clone().unwrap_or(defaults.select),
    };
    args::require_seed(&assignment.data, "--seq-data")?;
    args::require_seed(&assignment.select, "--seq-select")?;
    let workers = args::workers(a.workers)?;
    let threshold = a.green_threshold.unwrap_or(DEFAULT_GREEN_THRESHOLD);
    let margin = a.margin.unwrap_or(DEFAULT_DOMINANCE_MARGIN);
    let merger = Merger::new(a.n, &assignment)?;
    let background = read_rgb(&a.bg)?;
    let alpha_for = |frame: &RgbImage, path: Option<PathBuf>| match path {
        Some(p) => read_alpha(&p),
        None => Ok(chroma_key_alpha(frame, threshold, margin)),
    };

    match (&a.fg_dir, &a.out_dir, &a.fg, &a.out) {
        (Some(fg_dir), Some(out_dir), None, None) => {
            let frames = list_frames(fg_dir, "ppm")?;
            if frames.is_empty() {
                return Err(p2lsg::Error::Domain(format!("no frame_NNNNNN.ppm files in {}", fg_dir.display())).into());
            }
            std::fs::create_dir_all(out_dir).map_err(|e| io_error(out_dir, e))?;
            for (index, path) in &frames {
                let frame = read_rgb(path)?;
                let alpha = alpha_for(&frame, a.alpha_dir.as_ref().map(|d| d.join(frame_name(*index, "pgm"))))?;
                let merged = merger.merge(&background, &frame, &alpha, workers)?;
                write_pnm_file(&out_dir.join(frame_name(*index, "ppm")), &Image::Rgb(merged))?;
            }
            let _ = writeln!(out, "merged {} frames into {}", frames.len(), out_dir.display());
        }
        (None, None, Some(fg), Some(dest)) => {
            let frame = read_rgb(fg)?;
            let alpha = alpha_for(&frame, a.alpha.clone())?;
            let merged = merger.merge(&background, &frame, &alpha, workers)?;
            write_pnm_file(dest, &Image::Rgb(merged))?;
            let _ = writeln!(out, "merged 1 frame into {}", dest.display());
        }
        _ => return Err(CliError::usage("give either --fg-dir and --out-dir, or --fg and --out")),
    }
    Ok(())
}

#[derive(Debug, Args)]
pub struct ScoreArgs {
    /// Reference image.
    #[arg(long = "ref")]
    reference: PathBuf,
    /// Image under test, same size and kind.
    #[arg(long)]
    test: PathBuf,
}

pub fn run_score(a: &ScoreArgs, out: &mut String) -> CliResult<()> {
    let reference = read_pnm_file(&a.reference)?;
    let test = read_pnm_file(&a.test)?;
    let db = psnr(&reference, &test)?;
    let s = ssim(&reference, &test)?;
    let _ = writeln!(out, "psnr {db}\nssim {s:.6}");
    Ok(())
}
