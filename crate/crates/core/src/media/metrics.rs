//! PSNR and windowed SSIM.

use std::fmt;

use super::{GrayImage, Image};
use crate::error::{Error, Result};

/// Side of the square SSIM window.
pub const SSIM_WINDOW: usize = 8;
const C1: f64 = (0.01 * 255.0) * (0.01 * 255.0);
const C2: f64 = (0.03 * 255.0) * (0.03 * 255.0);

#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub enum Psnr {
    Finite(f64),
    /// Identical inputs.
    Infinite,
}

impl Psnr {
    pub fn is_infinite(&self) -> bool {
        matches!(self, Psnr::Infinite)
    }

    pub fn db(&self) -> f64 {
        match self {
            Psnr::Finite(db) => *db,
            Psnr::Infinite => f64::INFINITY,
        }
    }
}

impl fmt::Display for Psnr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Psnr::Finite(db) => write!(f, "{db:.2}"),
            Psnr::Infinite => f.write_str("inf"),
        }
    }
}

fn same_shape(a: &Image, b: &Image) -> Result<()> {
    let kind = |i: &Image| matches!(i, Image::Rgb(_));
    if a.width() != b.width() || a.height() != b.height() || kind(a) != kind(b) {
        return Err(Error::domain(format!(
            "cannot compare a {}x{} {} image with a {}x{} {} image",
            a.width(),
            a.height(),
            if kind(a) { "RGB" } else { "gray" },
            b.width(),
            b.height(),
            if kind(b) { "RGB" } else { "gray" },
        )));
    }
    Ok(())
}

/// Sum of squared sample differences over every channel.
pub fn squared_error(a: &Image, b: &Image) -> Result<u64> {
    same_shape(a, b)?;
    Ok(a.samples()
        .iter()
        .zip(b.samples())
        .map(|(&x, &y)| (x.abs_diff(y) as u64).pow(2))
        .sum())
}

pub fn psnr(a: &Image, b: &Image) -> Result<Psnr> {
    psnr_with_max(a, b, 255)
}

/// `10 log10(max^2 / MSE)` over all samples of all channels.
pub fn psnr_with_max(a: &Image, b: &Image, max_value: u32) -> Result<Psnr> {
    let sse = squared_error(a, b)?;
    if sse == 0 {
        return Ok(Psnr::Infinite);
    }
    let count = a.samples().len() as f64;
    let mse = sse as f64 / count;
    Ok(Psnr::Finite(10.0 * ((max_value as f64).powi(2) / mse).log10()))
}

/// Summed-area table with a zero border row and column.
struct Integral {
    stride: usize,
    sums: Vec<u64>,
}

impl Integral {
    fn new(width: usize, height: usize, value: impl Fn(usize, usize) -> u64) -> Integral {
        let stride = width + 1;
        let mut sums = vec![0u64; stride * (height + 1)];
        for y in 0..height {
            let mut row = 0u64;
            for x in 0..width {
                row += value(x, y);
                sums[(y + 1) * stride + x + 1] = sums[y * stride + x + 1] + row;
            }
        }
        Integral { stride, sums }
    }

    fn window(&self, x: usize, y: usize, size: usize) -> u64 {
        let at = |x: usize, y: usize| self.sums[y * self.stride + x];
        at(x + size, y + size) + at(x, y) - at(x + size, y) - at(x, y + size)
    }
}

fn ssim_plane(a: &GrayImage, b: &GrayImage) -> f64 {
    let (w, h) = (a.width(), a.height());
    let sa = Integral::new(w, h, |x, y| a.get(x, y) as u64);
    let sb = Integral::new(w, h, |x, y| b.get(x, y) as u64);
    let saa = Integral::new(w, h, |x, y| (a.get(x, y) as u64).pow(2));
    let sbb = Integral::new(w, h, |x, y| (b.get(x, y) as u64).pow(2));
    let sab = Integral::new(w, h, |x, y| a.get(x, y) as u64 * b.get(x, y) as u64);
    let n = (SSIM_WINDOW * SSIM_WINDOW) as i128;
    let nn = (n * n) as f64;
    let mut total = 0.0;
    for y in 0..=h - SSIM_WINDOW {
        for x in 0..=w - SSIM_WINDOW {
            let get = |s: &Integral| s.window(x, y, SSIM_WINDOW) as i128;
            let (ta, tb) = (get(&sa), get(&sb));
            // population moments scaled by n^2, exact in integers
            let var_a = (n * get(&saa) - ta * ta) as f64 / nn;
            let var_b = (n * get(&sbb) - tb * tb) as f64 / nn;
            let cov = (n * get(&sab) - ta * tb) as f64 / nn;
            let (mu_a, mu_b) = (ta as f64 / n as f64, tb as f64 / n as f64);
            total += ((2.0 * mu_a * mu_b + C1) * (2.0 * cov + C2))
                / ((mu_a * mu_a + mu_b * mu_b + C1) * (var_a + var_b + C2));
        }
    }
    total / ((w - SSIM_WINDOW + 1) * (h - SSIM_WINDOW + 1)) as f64
}

/// Mean SSIM over every 8x8 window; RGB images average their channels.
pub fn ssim(a: &Image, b: &Image) -> Result<f64> {
    same_shape(a, b)?;
    if a.width() < SSIM_WINDOW || a.height() < SSIM_WINDOW {
        return Err(Error::domain(format!(
            "{}x{} image is smaller than the {SSIM_WINDOW}x{SSIM_WINDOW} SSIM window",
            a.width(),
            a.height()
        )));
    }
    let (pa, pb) = (a.planes(), b.planes());
    let sum: f64 = pa.iter().zip(&pb).map(|(x, y)| ssim_plane(x, y)).sum();
    Ok(sum / pa.len() as f64)
}
