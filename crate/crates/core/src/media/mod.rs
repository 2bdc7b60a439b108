//! Raster types and the two SC case studies: bilinear scaling through a
//! 4-to-1 MUX and green-screen scene merging through a 2-to-1 MUX.

pub mod merge;
pub mod metrics;
pub mod pnm;
pub mod scale;

use crate::error::{Error, Result};

fn check_dims(width: usize, height: usize, samples: usize, per_pixel: usize) -> Result<()> {
    if width == 0 || height == 0 {
        return Err(Error::domain(format!("empty {width}x{height} image")));
    }
    let want = width
        .checked_mul(height)
        .and_then(|p| p.checked_mul(per_pixel))
        .ok_or_else(|| Error::domain(format!("{width}x{height} image is too large")))?;
    if samples != want {
        return Err(Error::domain(format!(
            "{width}x{height} image needs {want} samples, got {samples}"
        )));
    }
    Ok(())
}

/// Row-major 8-bit samples.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GrayImage {
    width: usize,
    height: usize,
    pixels: Vec<u8>,
}

impl GrayImage {
    pub fn new(width: usize, height: usize, pixels: Vec<u8>) -> Result<Self> {
        check_dims(width, height, pixels.len(), 1)?;
        Ok(Self { width, height, pixels })
    }

    pub fn filled(width: usize, height: usize, value: u8) -> Result<Self> {
        Self::new(width, height, vec![value; width.saturating_mul(height)])
    }

    pub fn from_fn(width: usize, height: usize, f: impl Fn(usize, usize) -> u8) -> Result<Self> {
        let pixels = (0..height)
            .flat_map(|y| (0..width).map(move |x| (x, y)))
            .map(|(x, y)| f(x, y))
            .collect();
        Self::new(width, height, pixels)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn pixels(&self) -> &[u8] {
        &self.pixels
    }

    pub fn get(&self, x: usize, y: usize) -> u8 {
        self.pixels[y * self.width + x]
    }
}

/// Row-major interleaved RGB triples.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RgbImage {
    width: usize,
    height: usize,
    pixels: Vec<u8>,
}

impl RgbImage {
    pub fn new(width: usize, height: usize, pixels: Vec<u8>) -> Result<Self> {
        check_dims(width, height, pixels.len(), 3)?;
        Ok(Self { width, height, pixels })
    }

    pub fn from_fn(width: usize, height: usize, f: impl Fn(usize, usize) -> [u8; 3]) -> Result<Self> {
        let pixels = (0..height)
            .flat_map(|y| (0..width).map(move |x| (x, y)))
            .flat_map(|(x, y)| f(x, y))
            .collect();
        Self::new(width, height, pixels)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn pixels(&self) -> &[u8] {
        &self.pixels
    }

    pub fn get(&self, x: usize, y: usize) -> [u8; 3] {
        let i = 3 * (y * self.width + x);
        [self.pixels[i], self.pixels[i + 1], self.pixels[i + 2]]
    }

    /// Splits into R, G and B planes.
    pub fn planes(&self) -> [GrayImage; 3] {
        let plane = |c: usize| GrayImage {
            width: self.width,
            height: self.height,
            pixels: self.pixels.iter().skip(c).step_by(3).copied().collect(),
        };
        [plane(0), plane(1), plane(2)]
    }

    pub fn from_planes(planes: &[GrayImage; 3]) -> Result<Self> {
        let (w, h) = (planes[0].width, planes[0].height);
        if planes.iter().any(|p| p.width != w || p.height != h) {
            return Err(Error::domain("colour planes differ in size"));
        }
        let pixels = (0..w * h)
            .flat_map(|i| [planes[0].pixels[i], planes[1].pixels[i], planes[2].pixels[i]])
            .collect();
        Self::new(w, h, pixels)
    }
}

/// Per-pixel foreground coverage: 0 shows the background, 255 the foreground.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AlphaMap {
    width: usize,
    height: usize,
    alpha: Vec<u8>,
}

impl AlphaMap {
    pub fn new(width: usize, height: usize, alpha: Vec<u8>) -> Result<Self> {
        check_dims(width, height, alpha.len(), 1)?;
        Ok(Self { width, height, alpha })
    }

    pub fn from_fn(width: usize, height: usize, f: impl Fn(usize, usize) -> u8) -> Result<Self> {
        let g = GrayImage::from_fn(width, height, f)?;
        Ok(g.into())
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn alpha(&self) -> &[u8] {
        &self.alpha
    }

    pub fn get(&self, x: usize, y: usize) -> u8 {
        self.alpha[y * self.width + x]
    }
}

impl From<GrayImage> for AlphaMap {
    fn from(g: GrayImage) -> Self {
        AlphaMap {
            width: g.width,
            height: g.height,
            alpha: g.pixels,
        }
    }
}

impl From<AlphaMap> for GrayImage {
    fn from(a: AlphaMap) -> Self {
        GrayImage {
            width: a.width,
            height: a.height,
            pixels: a.alpha,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Image {
    Gray(GrayImage),
    Rgb(RgbImage),
}

impl Image {
    pub fn width(&self) -> usize {
        match self {
            Image::Gray(g) => g.width,
            Image::Rgb(c) => c.width,
        }
    }

    pub fn height(&self) -> usize {
        match self {
            Image::Gray(g) => g.height,
            Image::Rgb(c) => c.height,
        }
    }

    /// One plane for gray, three for RGB.
    pub fn planes(&self) -> Vec<GrayImage> {
        match self {
            Image::Gray(g) => vec![g.clone()],
            Image::Rgb(c) => c.planes().to_vec(),
        }
    }

    pub fn samples(&self) -> &[u8] {
        match self {
            Image::Gray(g) => &g.pixels,
            Image::Rgb(c) => &c.pixels,
        }
    }
}

impl From<GrayImage> for Image {
    fn from(g: GrayImage) -> Self {
        Image::Gray(g)
    }
}

impl From<RgbImage> for Image {
    fn from(c: RgbImage) -> Self {
        Image::Rgb(c)
    }
}
