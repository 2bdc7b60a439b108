//! Green-screen scene merging through a 2-to-1 MUX.
//!
//! Background and foreground channels are encoded against one data sequence;
//! alpha drives the select line from a second sequence, so each output bit
//! comes from the foreground with probability `alpha / 255`.

use std::fs;
use std::path::{Path, PathBuf};

use super::scale::{decode_pixel, stream_bits, PIXEL_BITS};
use super::{AlphaMap, RgbImage};
use crate::bitstream::{encode_all_levels, encode_level, Bitstream};
use crate::error::{Error, Result};
use crate::ops::mux2_popcount;
use crate::par::Workers;
use crate::sequences::SequenceSpec;

pub const DEFAULT_GREEN_THRESHOLD: u8 = 100;
pub const DEFAULT_DOMINANCE_MARGIN: u8 = 50;

#[derive(Debug, Clone, PartialEq)]
pub struct MergeAssignment {
    pub data: SequenceSpec,
    pub select: SequenceSpec,
}

impl Default for MergeAssignment {
    fn default() -> Self {
        MergeAssignment {
            data: SequenceSpec::p2lsg(2),
            select: SequenceSpec::p2lsg_n(),
        }
    }
}

/// Select level `round(alpha * n / 255)`; alpha 255 is the all-ones stream.
pub fn alpha_level(alpha: u8, n: u64) -> u64 {
    (2 * alpha as u64 * n + 255) / 510
}

/// Encoded streams reused across frames of one merge job.
#[derive(Debug, Clone)]
pub struct Merger {
    n: u64,
    levels: Vec<Bitstream>,
    selects: Vec<Bitstream>,
}

impl Merger {
    pub fn new(n: u64, assignment: &MergeAssignment) -> Result<Merger> {
        let bits = stream_bits(n)?;
        let data = assignment.data.thresholds(n, PIXEL_BITS)?;
        let select = assignment.select.thresholds(n, bits)?;
        let selects = (0..=255u8)
            .map(|a| encode_level(alpha_level(a, n), &select))
            .collect::<Result<_>>()?;
        Ok(Merger { n, levels: encode_all_levels(&data)?, selects })
    }

    pub fn stream_length(&self) -> u64 {
        self.n
    }

    pub fn merge(
        &self,
        background: &RgbImage,
        foreground: &RgbImage,
        alpha: &AlphaMap,
        workers: Workers,
    ) -> Result<RgbImage> {
        let dims = |w: usize, h: usize| (w, h);
        let want = dims(background.width(), background.height());
        for (what, got) in [
            ("foreground", dims(foreground.width(), foreground.height())),
            ("alpha map", dims(alpha.width(), alpha.height())),
        ] {
            if got != want {
                return Err(Error::domain(format!(
                    "{what} is {}x{} but the background is {}x{}",
                    got.0, got.1, want.0, want.1
                )));
            }
        }
        let (bg, fg, a) = (background.pixels(), foreground.pixels(), alpha.alpha());
        let pixels = workers.map(bg.len(), |i| {
            let count = mux2_popcount(
                &self.levels[bg[i] as usize],
                &self.levels[fg[i] as usize],
                &self.selects[a[i / 3] as usize],
            )
            .expect("all streams share length n");
            decode_pixel(count, self.n)
        });
        RgbImage::new(want.0, want.1, pixels)
    }
}

pub fn merge_scene_sc(
    background: &RgbImage,
    foreground: &RgbImage,
    alpha: &AlphaMap,
    n: u64,
    assignment: &MergeAssignment,
    workers: Workers,
) -> Result<RgbImage> {
    Merger::new(n, assignment)?.merge(background, foreground, alpha, workers)
}

/// Reference compositing `bg (1 - a/255) + fg a/255`, rounded half up.
pub fn merge_exact(background: &RgbImage, foreground: &RgbImage, alpha: &AlphaMap) -> Result<RgbImage> {
    if (background.width(), background.height()) != (foreground.width(), foreground.height())
        || (background.width(), background.height()) != (alpha.width(), alpha.height())
    {
        return Err(Error::domain("background, foreground and alpha differ in size"));
    }
    let (bg, fg, a) = (background.pixels(), foreground.pixels(), alpha.alpha());
    let pixels = (0..bg.len())
        .map(|i| {
            let a = a[i / 3] as u32;
            let sum = bg[i] as u32 * (255 - a) + fg[i] as u32 * a;
            ((2 * sum + 255) / 510) as u8
        })
        .collect();
    RgbImage::new(background.width(), background.height(), pixels)
}

/// Binary matte: 0 where the pixel is bright, dominant green, else 255.
pub fn chroma_key_alpha(frame: &RgbImage, green_threshold: u8, dominance_margin: u8) -> AlphaMap {
    let alpha = frame
        .pixels()
        .chunks_exact(3)
        .map(|p| {
            let (r, g, b) = (p[0], p[1], p[2]);
            let keyed = g > green_threshold && g as i16 - r.max(b) as i16 > dominance_margin as i16;
            if keyed {
                0
            } else {
                255
            }
        })
        .collect();
    AlphaMap::new(frame.width(), frame.height(), alpha).expect("frame dimensions are valid")
}

/// `frame_000001.ppm` for `index = 1`.
pub fn frame_name(index: usize, extension: &str) -> String {
    format!("frame_{index:06}.{extension}")
}

/// Files named `frame_<digits>.<extension>` in `dir`, in frame order.
pub fn list_frames(dir: &Path, extension: &str) -> Result<Vec<(usize, PathBuf)>> {
    let entries = fs::read_dir(dir).map_err(|e| Error::io(dir, e))?;
    let mut frames = Vec::new();
    for entry in entries {
        let path = entry.map_err(|e| Error::io(dir, e))?.path();
        let index = path
            .file_name()
            .and_then(|n| n.to_str())
            .and_then(|n| n.strip_prefix("frame_"))
            .and_then(|n| n.strip_suffix(extension))
            .and_then(|n| n.strip_suffix('.'))
            .filter(|d| !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit()))
            .and_then(|d| d.parse().ok());
        if let Some(index) = index {
            frames.push((index, path));
        }
    }
    frames.sort();
    Ok(frames)
}
