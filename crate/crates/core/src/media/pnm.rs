//! Binary PGM (`P5`) and PPM (`P6`) with maxval 255.

use std::fs;
use std::path::Path;

use super::{GrayImage, Image, RgbImage};
use crate::error::{Error, Result};

struct Header<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Header<'a> {
    /// Skips whitespace and `#` comments running to the end of the line.
    fn skip_separators(&mut self) {
        while let Some(&b) = self.bytes.get(self.pos) {
            if b.is_ascii_whitespace() {
                self.pos += 1;
            } else if b == b'#' {
                while self.bytes.get(self.pos).is_some_and(|&c| c != b'\n' && c != b'\r') {
                    self.pos += 1;
                }
            } else {
                break;
            }
        }
    }

    fn number(&mut self, what: &str) -> Result<usize> {
        self.skip_separators();
        let start = self.pos;
        while self.bytes.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::parse(start, format!("expected {what}")));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::parse(start, format!("{what} out of range")))
    }
}

pub fn read_pnm(bytes: &[u8]) -> Result<Image> {
    let channels = match bytes.get(..2) {
        Some(b"P5") => 1,
        Some(b"P6") => 3,
        Some(other) => {
            return Err(Error::parse(
                0,
                format!(
                    "unsupported format {:?}; only P5 and P6 are read",
                    String::from_utf8_lossy(other)
                ),
            ))
        }
        None => return Err(Error::parse(bytes.len(), "file too short for a PNM magic number")),
    };
    let mut h = Header { bytes, pos: 2 };
    if !bytes.get(2).is_some_and(|b| b.is_ascii_whitespace() || *b == b'#') {
        return Err(Error::parse(2, "expected whitespace after the magic number"));
    }
    let width = h.number("width")?;
    let height = h.number("height")?;
    let maxval_at = {
        h.skip_separators();
        h.pos
    };
    let maxval = h.number("maxval")?;
    if maxval != 255 {
        return Err(Error::parse(maxval_at, format!("maxval {maxval} is not supported, only 255")));
    }
    match bytes.get(h.pos) {
        Some(b) if b.is_ascii_whitespace() => h.pos += 1,
        _ => return Err(Error::parse(h.pos, "expected one whitespace byte before the raster")),
    }
    if width == 0 || height == 0 {
        return Err(Error::parse(h.pos, format!("empty {width}x{height} image")));
    }
    let need = width
        .checked_mul(height)
        .and_then(|p| p.checked_mul(channels))
        .ok_or_else(|| Error::parse(h.pos, "image dimensions overflow"))?;
    let body = &bytes[h.pos..];
    if body.len() < need {
        return Err(Error::parse(
            bytes.len(),
            format!("raster truncated: {need} bytes expected, {} present", body.len()),
        ));
    }
    let pixels = body[..need].to_vec();
    Ok(if channels == 1 {
        Image::Gray(GrayImage::new(width, height, pixels)?)
    } else {
        Image::Rgb(RgbImage::new(width, height, pixels)?)
    })
}

pub fn write_pnm(image: &Image) -> Vec<u8> {
    let magic = match image {
        Image::Gray(_) => "P5",
        Image::Rgb(_) => "P6",
    };
    let mut out = format!("{magic}\n{} {}\n255\n", image.width(), image.height()).into_bytes();
    out.extend_from_slice(image.samples());
    out
}

pub fn read_pnm_file(path: &Path) -> Result<Image> {
    read_pnm(&fs::read(path).map_err(|e| Error::io(path, e))?)
}

pub fn write_pnm_file(path: &Path, image: &Image) -> Result<()> {
    fs::write(path, write_pnm(image)).map_err(|e| Error::io(path, e))
}

pub fn read_pgm(bytes: &[u8]) -> Result<GrayImage> {
    match read_pnm(bytes)? {
        Image::Gray(g) => Ok(g),
        Image::Rgb(_) => Err(Error::parse(0, "expected a P5 graymap, found P6")),
    }
}

pub fn read_ppm(bytes: &[u8]) -> Result<RgbImage> {
    match read_pnm(bytes)? {
        Image::Rgb(c) => Ok(c),
        Image::Gray(_) => Err(Error::parse(0, "expected a P6 pixmap, found P5")),
    }
}
