//! Oracles and fixtures shared by the integration tests. Everything here
//! works on plain `Vec<bool>` streams and integer arithmetic so it shares no
//! code with the packed kernels it checks.

#![allow(dead_code)]

use p2lsg::bitstream::Bitstream;
use p2lsg::media::{GrayImage, RgbImage};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_bits(rng: &mut ChaCha8Rng, len: usize) -> Vec<bool> {
    (0..len).map(|_| rng.random()).collect()
}

pub fn packed(bits: &[bool]) -> Bitstream {
    Bitstream::from_bits(bits).unwrap()
}

pub fn naive_and(a: &[bool], b: &[bool]) -> Vec<bool> {
    a.iter().zip(b).map(|(&x, &y)| x && y).collect()
}

pub fn naive_xnor(a: &[bool], b: &[bool]) -> Vec<bool> {
    a.iter().zip(b).map(|(&x, &y)| x == y).collect()
}

pub fn naive_mux2(a: &[bool], b: &[bool], s: &[bool]) -> Vec<bool> {
    (0..a.len()).map(|i| if s[i] { b[i] } else { a[i] }).collect()
}

pub fn naive_mux2_sub(a: &[bool], b: &[bool], s: &[bool]) -> Vec<bool> {
    (0..a.len()).map(|i| if s[i] { !b[i] } else { a[i] }).collect()
}

pub fn naive_mux4(inputs: [&[bool]; 4], u: &[bool], v: &[bool]) -> Vec<bool> {
    (0..u.len())
        .map(|i| inputs[2 * u[i] as usize + v[i] as usize][i])
        .collect()
}

pub fn ones(bits: &[bool]) -> u64 {
    bits.iter().filter(|&&b| b).count() as u64
}

/// Unipolar stream for `k / 2^bits` against explicit comparator thresholds.
pub fn naive_encode(k: u64, thresholds: &[u64]) -> Vec<bool> {
    thresholds.iter().map(|&t| k > t).collect()
}

/// SCC as `(numerator, denominator)` from the overlap table, bit by bit.
pub fn naive_scc(x: &[bool], y: &[bool]) -> Option<(i128, i128)> {
    let (mut a, mut b, mut c, mut d) = (0i128, 0i128, 0i128, 0i128);
    for (&p, &q) in x.iter().zip(y) {
        match (p, q) {
            (true, true) => a += 1,
            (true, false) => b += 1,
            (false, true) => c += 1,
            (false, false) => d += 1,
        }
    }
    let n = a + b + c + d;
    let num = a * d - b * c;
    let den = if a * d > b * c {
        n * (a + b).min(a + c) - (a + b) * (a + c)
    } else {
        (a + b) * (a + c) - n * 0i128.max(a - d)
    };
    (den != 0).then_some((num, den))
}

/// Published rows as printed, so the decimal count of each entry is known.
pub const MUL_REF_LENGTHS: [u32; 11] = [6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16];
pub const MUL_REF_SOBOL: [&str; 11] = ["0.92", "0.45", "0.19", "0.092", "0.041", "0.019", "0.009", "0.0035", "0.0013", "0.0003", "0.0000"];
pub const MUL_REF_FAURE: [&str; 11] = ["2.60", "1.40", "0.88", "0.480", "0.210", "0.110", "0.077", "0.0360", "0.0136", "0.0113", "0.0040"];
pub const MUL_REF_HALTON: [&str; 11] = ["3.31", "1.42", "1.14", "0.780", "0.380", "0.150", "0.093", "0.0570", "0.0330", "0.0150", "0.0083"];
pub const MUL_REF_HAMMERSLEY: [&str; 11] = ["1.31", "0.85", "0.37", "0.200", "0.120", "0.061", "0.030", "0.0170", "0.0098", "0.0043", "0.0019"];
pub const MUL_REF_NIEDERREITER: [&str; 11] = ["0.95", "0.51", "0.34", "0.130", "0.072", "0.032", "0.019", "0.0067", "0.0039", "0.0015", "0.0011"];
pub const MUL_REF_P2LSG: [&str; 11] = ["1.76", "0.88", "0.39", "0.170", "0.073", "0.030", "0.012", "0.0045", "0.0015", "0.0003", "0.0000"];

pub const ADD_REF_LENGTHS: [u32; 8] = [2, 3, 4, 5, 6, 7, 8, 9];
pub const ADD_REF_P2LSG: [&str; 8] = ["13.40", "6.63", "3.24", "1.55", "0.71", "0.29", "0.097", "0.00"];

pub fn decimals_of(printed: &str) -> u32 {
    printed.split_once('.').map_or(0, |(_, f)| f.len() as u32)
}

/// A printed decimal as an integer count of its last-place units.
pub fn units_of(printed: &str) -> i64 {
    printed.replace('.', "").parse().unwrap()
}

/// Smooth, photo-like content: low-frequency shading plus mild texture.
pub fn natural_image(w: usize, h: usize) -> GrayImage {
    GrayImage::from_fn(w, h, |x, y| {
        let (fx, fy) = (x as f64, y as f64);
        let shade = 128.0 + 70.0 * (fx / 17.0).sin() * (fy / 23.0).cos() + 30.0 * ((fx + fy) / 41.0).sin();
        let texture = 6.0 * ((fx * 0.9).sin() + (fy * 1.3).cos());
        (shade + texture).round().clamp(0.0, 255.0) as u8
    })
    .unwrap()
}

pub fn ramp_image(w: usize, h: usize) -> GrayImage {
    GrayImage::from_fn(w, h, |x, y| ((x * 255 / (w - 1) + y * 255 / (h - 1)) / 2) as u8).unwrap()
}

pub fn noise_image(w: usize, h: usize, seed: u64) -> GrayImage {
    let mut r = rng(seed);
    let pixels = (0..w * h).map(|_| r.random()).collect();
    GrayImage::new(w, h, pixels).unwrap()
}

pub fn checker_image(w: usize, h: usize) -> GrayImage {
    GrayImage::from_fn(w, h, |x, y| if (x + y) % 2 == 0 { 0 } else { 255 }).unwrap()
}

pub fn gradient_background(w: usize, h: usize) -> RgbImage {
    RgbImage::from_fn(w, h, |x, y| {
        [(x * 255 / (w - 1)) as u8, (y * 255 / (h - 1)) as u8, ((x + y) * 255 / (w + h - 2)) as u8]
    })
    .unwrap()
}

/// Green-screen frame with a textured square whose corner moves with `t`.
pub fn green_screen_frame(w: usize, h: usize, side: usize, t: usize) -> RgbImage {
    let (x0, y0) = ((5 * t) % (w - side), (3 * t + 2) % (h - side));
    RgbImage::from_fn(w, h, |x, y| {
        if (x0..x0 + side).contains(&x) && (y0..y0 + side).contains(&y) {
            [200 - (x - x0) as u8 * 3, 40 + (y - y0) as u8 * 4, 90 + ((x + y) % 7) as u8 * 10]
        } else {
            [0, 255, 0]
        }
    })
    .unwrap()
}
