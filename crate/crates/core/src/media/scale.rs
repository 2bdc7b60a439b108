//! Bilinear up-scaling through a 4-to-1 MUX.
//!
//! The four neighbours of an output pixel share one data sequence; `u`
//! drives the column select and `v` the row select, so the MUX emits `I11`,
//! `I12`, `I21` or `I22` with probabilities `(1-u)(1-v)`, `(1-u)v`,
//! `u(1-v)` and `uv`.

use num_rational::Ratio;

use super::{GrayImage, Image, RgbImage};
use crate::bitstream::{encode_all_levels, encode_level, Bitstream, Thresholds};
use crate::error::{Error, Result};
use crate::ops::mux4_popcount;
use crate::par::Workers;
use crate::sequences::SequenceSpec;

/// Precision of pixel inputs.
pub const PIXEL_BITS: u32 = 8;

/// Sequences feeding the data inputs and the two select lines.
#[derive(Debug, Clone, PartialEq)]
pub struct ScaleAssignment {
    pub data: SequenceSpec,
    pub u: SequenceSpec,
    pub v: SequenceSpec,
}

impl Default for ScaleAssignment {
    fn default() -> Self {
        ScaleAssignment {
            data: SequenceSpec::p2lsg(2),
            u: SequenceSpec::p2lsg_n(),
            v: SequenceSpec::sobol(2),
        }
    }
}

/// Power-of-two stream length of at least 2, returned as its log2.
pub(crate) fn stream_bits(n: u64) -> Result<u32> {
    if n < 2 || !n.is_power_of_two() {
        return Err(Error::config(format!(
            "stream length must be a power of two of at least 2, got {n}"
        )));
    }
    Ok(n.trailing_zeros())
}

/// `round(count * 2^8 / n)`, clamped to a pixel.
pub(crate) fn decode_pixel(count: u64, n: u64) -> u8 {
    let scaled = ((2 * (count as u128)) << PIXEL_BITS) + n as u128;
    (scaled / (2 * n as u128)).min(255) as u8
}

/// Output size `floor(size * factor)`.
pub fn scaled_size(size: usize, factor: Ratio<u64>) -> Result<usize> {
    if *factor.denom() == 0 || factor < Ratio::from_integer(1) {
        return Err(Error::domain(format!("scale factor {factor} is below 1")));
    }
    let out = (size as u128 * *factor.numer() as u128) / *factor.denom() as u128;
    usize::try_from(out)
        .ok()
        .filter(|&o| o <= u32::MAX as usize)
        .ok_or_else(|| Error::domain(format!("scaled size {out} is too large")))
}

/// Corner-aligned source position of output index `dst`: the integer part
/// and the fractional offset `(num, den)`.
pub fn source_coordinate(dst: usize, size: usize, out: usize) -> (usize, u64, u64) {
    if out <= 1 || size <= 1 {
        return (0, 0, 1);
    }
    let num = dst as u64 * (size as u64 - 1);
    let den = out as u64 - 1;
    ((num / den) as usize, num % den, den)
}

/// Select level `round(frac * n)` for a fractional offset `num/den`.
fn offset_level(num: u64, den: u64, n: u64) -> u64 {
    ((2 * num as u128 * n as u128 + den as u128) / (2 * den as u128)) as u64
}

struct Axis {
    lo: Vec<usize>,
    hi: Vec<usize>,
    select: Vec<Bitstream>,
}

impl Axis {
    fn new(size: usize, out: usize, n: u64, thresholds: &Thresholds) -> Result<Axis> {
        let mut axis = Axis { lo: Vec::with_capacity(out), hi: Vec::with_capacity(out), select: Vec::with_capacity(out) };
        for dst in 0..out {
            let (lo, num, den) = source_coordinate(dst, size, out);
            axis.lo.push(lo);
            axis.hi.push((lo + 1).min(size - 1));
            axis.select.push(encode_level(offset_level(num, den, n), thresholds)?);
        }
        Ok(axis)
    }
}

struct Kernel {
    n: u64,
    levels: Vec<Bitstream>,
    cols: Axis,
    rows: Axis,
}

impl Kernel {
    fn new(
        width: usize,
        height: usize,
        factor: Ratio<u64>,
        n: u64,
        assignment: &ScaleAssignment,
    ) -> Result<Kernel> {
        let bits = stream_bits(n)?;
        let (out_w, out_h) = (scaled_size(width, factor)?, scaled_size(height, factor)?);
        let data = assignment.data.thresholds(n, PIXEL_BITS)?;
        let u = assignment.u.thresholds(n, bits)?;
        let v = assignment.v.thresholds(n, bits)?;
        Ok(Kernel {
            n,
            levels: encode_all_levels(&data)?,
            cols: Axis::new(width, out_w, n, &u)?,
            rows: Axis::new(height, out_h, n, &v)?,
        })
    }

    fn run(&self, plane: &GrayImage, workers: Workers) -> Result<GrayImage> {
        let out_w = self.cols.lo.len();
        let out_h = self.rows.lo.len();
        let level = |x: usize, y: usize| &self.levels[plane.get(x, y) as usize];
        let pixels = workers.map(out_w * out_h, |i| {
            let (x, y) = (i % out_w, i / out_w);
            let (x1, x2) = (self.cols.lo[x], self.cols.hi[x]);
            let (y1, y2) = (self.rows.lo[y], self.rows.hi[y]);
            // I12 sits one row down (v = 1, u = 0); I21 one column across.
            let count = mux4_popcount(
                level(x1, y1),
                level(x1, y2),
                level(x2, y1),
                level(x2, y2),
                &self.cols.select[x],
                &self.rows.select[y],
            )
            .expect("all streams share length n");
            decode_pixel(count, self.n)
        });
        GrayImage::new(out_w, out_h, pixels)
    }
}

pub fn scale_gray_sc(
    img: &GrayImage,
    factor: Ratio<u64>,
    n: u64,
    assignment: &ScaleAssignment,
    workers: Workers,
) -> Result<GrayImage> {
    Kernel::new(img.width(), img.height(), factor, n, assignment)?.run(img, workers)
}

/// Scales gray images directly and RGB images plane by plane.
pub fn scale_image_sc(
    img: &Image,
    factor: Ratio<u64>,
    n: u64,
    assignment: &ScaleAssignment,
    workers: Workers,
) -> Result<Image> {
    let kernel = Kernel::new(img.width(), img.height(), factor, n, assignment)?;
    match img {
        Image::Gray(g) => Ok(Image::Gray(kernel.run(g, workers)?)),
        Image::Rgb(c) => {
            let [r, g, b] = c.planes();
            let planes = [kernel.run(&r, workers)?, kernel.run(&g, workers)?, kernel.run(&b, workers)?];
            Ok(Image::Rgb(RgbImage::from_planes(&planes)?))
        }
    }
}

/// Exact bilinear value at output pixel `(x, y)` as a rational.
pub fn bilinear_exact(img: &GrayImage, out_w: usize, out_h: usize, x: usize, y: usize) -> Ratio<u128> {
    let (x1, un, ud) = source_coordinate(x, img.width(), out_w);
    let (y1, vn, vd) = source_coordinate(y, img.height(), out_h);
    let (un, ud, vn, vd) = (un as u128, ud as u128, vn as u128, vd as u128);
    let x2 = (x1 + 1).min(img.width() - 1);
    let y2 = (y1 + 1).min(img.height() - 1);
    let p = |x, y| img.get(x, y) as u128;
    let sum = (ud - un) * (vd - vn) * p(x1, y1)
        + (ud - un) * vn * p(x1, y2)
        + un * (vd - vn) * p(x2, y1)
        + un * vn * p(x2, y2);
    Ratio::new(sum, ud * vd)
}

/// Reference scaler: the exact bilinear value rounded half up.
pub fn scale_gray_exact(img: &GrayImage, factor: Ratio<u64>) -> Result<GrayImage> {
    let out_w = scaled_size(img.width(), factor)?;
    let out_h = scaled_size(img.height(), factor)?;
    GrayImage::from_fn(out_w, out_h, |x, y| {
        bilinear_exact(img, out_w, out_h, x, y).round().to_integer().min(255) as u8
    })
}
