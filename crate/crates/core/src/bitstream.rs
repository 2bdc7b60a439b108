//! Packed stochastic bit-streams, the comparator-based SNG, decoding and
//! the SCC correlation metric.
//!
//! Bit `i` of a stream lives in word `i / 64` at bit position `i % 64`;
//! unused high bits of the last word are always zero.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;

use crate::error::{Error, Result};

/// `numerator / 2^bits`, a value in `[0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FixedUnipolar {
    numerator: u64,
    bits: u32,
}

impl FixedUnipolar {
    pub fn new(numerator: u64, bits: u32) -> Result<Self> {
        if bits == 0 || bits > 63 {
            return Err(Error::config(format!("precision {bits} outside 1..=63")));
        }
        if numerator >> bits != 0 {
            return Err(Error::domain(format!("{numerator} does not fit in {bits} bits")));
        }
        Ok(Self { numerator, bits })
    }

    pub fn numerator(&self) -> u64 {
        self.numerator
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn value(&self) -> Ratio<u64> {
        Ratio::new(self.numerator, 1 << self.bits)
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Bitstream {
    words: Vec<u64>,
    len: usize,
}

fn words_for(len: usize) -> usize {
    len.div_ceil(64)
}

impl Bitstream {
    fn check_len(len: usize) -> Result<()> {
        if len == 0 {
            return Err(Error::domain("bit-stream length must be at least 1"));
        }
        Ok(())
    }

    pub fn zeros(len: usize) -> Result<Self> {
        Self::check_len(len)?;
        Ok(Self {
            words: vec![0; words_for(len)],
            len,
        })
    }

    pub fn ones(len: usize) -> Result<Self> {
        let mut s = Self::zeros(len)?;
        s.words.fill(u64::MAX);
        s.clear_padding();
        Ok(s)
    }

    pub fn from_bits(bits: &[bool]) -> Result<Self> {
        let mut s = Self::zeros(bits.len())?;
        for (i, &b) in bits.iter().enumerate() {
            if b {
                s.words[i / 64] |= 1 << (i % 64);
            }
        }
        Ok(s)
    }

    /// Takes ownership of packed words; padding bits must already be zero.
    pub fn from_words(words: Vec<u64>, len: usize) -> Result<Self> {
        Self::check_len(len)?;
        if words.len() != words_for(len) {
            return Err(Error::domain(format!(
                "{} words cannot hold exactly {len} bits",
                words.len()
            )));
        }
        let s = Self { words, len };
        if s.padding_mask() & s.words[s.words.len() - 1] != 0 {
            return Err(Error::domain("nonzero padding bits after the stream end"));
        }
        Ok(s)
    }

    /// Builds a stream from words computed without regard to the padding.
    pub(crate) fn from_words_masked(words: Vec<u64>, len: usize) -> Self {
        debug_assert_eq!(words.len(), words_for(len));
        let mut s = Self { words, len };
        s.clear_padding();
        s
    }

    fn padding_mask(&self) -> u64 {
        match self.len % 64 {
            0 => 0,
            r => !((1u64 << r) - 1),
        }
    }

    fn clear_padding(&mut self) {
        let mask = self.padding_mask();
        if let Some(last) = self.words.last_mut() {
            *last &= !mask;
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    /// Always false: streams hold at least one bit.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, bit: bool) {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        let m = 1u64 << (i % 64);
        if bit {
            self.words[i / 64] |= m;
        } else {
            self.words[i / 64] &= !m;
        }
    }

    pub fn count_ones(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(|i| self.get(i))
    }

    pub fn to_bits(&self) -> Vec<bool> {
        self.iter().collect()
    }
}

impl fmt::Display for Bitstream {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Bitstream {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.len <= 128 {
            write!(f, "Bitstream({self})")
        } else {
            write!(f, "Bitstream(len={}, ones={})", self.len, self.count_ones())
        }
    }
}

impl FromStr for Bitstream {
    type Err = Error;

    /// `'0'`/`'1'` characters; ASCII whitespace is skipped.
    fn from_str(s: &str) -> Result<Self> {
        let mut bits = Vec::with_capacity(s.len());
        for (offset, byte) in s.bytes().enumerate() {
            match byte {
                b'0' => bits.push(false),
                b'1' => bits.push(true),
                b if b.is_ascii_whitespace() => {}
                other => {
                    return Err(Error::parse(
                        offset,
                        format!("unexpected byte {:?} in bit-stream text", other as char),
                    ))
                }
            }
        }
        if bits.is_empty() {
            return Err(Error::parse(s.len(), "bit-stream text holds no bits"));
        }
        Self::from_bits(&bits)
    }
}

/// Comparator thresholds: one `bits`-bit random number per clock cycle.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Thresholds {
    bits: u32,
    values: Vec<u64>,
}

impl Thresholds {
    pub fn new(bits: u32, values: Vec<u64>) -> Result<Self> {
        if bits == 0 || bits > 63 {
            return Err(Error::config(format!("threshold precision {bits} outside 1..=63")));
        }
        if let Some(pos) = values.iter().position(|&v| v >> bits != 0) {
            return Err(Error::domain(format!(
                "threshold {} at position {pos} exceeds {bits} bits",
                values[pos]
            )));
        }
        Ok(Self { bits, values })
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// First `len` thresholds.
    pub fn prefix(&self, len: usize) -> Result<Self> {
        if len > self.values.len() {
            return Err(Error::generation(format!(
                "sequence holds {} values, {len} requested",
                self.values.len()
            )));
        }
        Ok(Self {
            bits: self.bits,
            values: self.values[..len].to_vec(),
        })
    }
}

/// Stream whose bit `i` is `level > t_i`. `level` may equal `2^bits`, which
/// yields the all-ones stream.
pub fn encode_level(level: u64, thresholds: &Thresholds) -> Result<Bitstream> {
    let len = thresholds.len();
    Bitstream::check_len(len)?;
    let words = thresholds
        .values
        .chunks(64)
        .map(|chunk| {
            chunk
                .iter()
                .enumerate()
                .fold(0u64, |w, (j, &t)| w | ((level > t) as u64) << j)
        })
        .collect();
    Ok(Bitstream::from_words_masked(words, len))
}

/// Comparator SNG: bit `i` is 1 iff `x > R_i`.
pub fn sng_generate(x: FixedUnipolar, sequence: &Thresholds, length: usize) -> Result<Bitstream> {
    if x.bits != sequence.bits {
        return Err(Error::config(format!(
            "{}-bit input compared against {}-bit random numbers",
            x.bits, sequence.bits
        )));
    }
    if sequence.len() < length {
        return Err(Error::generation(format!(
            "sequence exhausted after {} of {length} values",
            sequence.len()
        )));
    }
    Bitstream::check_len(length)?;
    let words = sequence.values[..length]
        .chunks(64)
        .map(|chunk| {
            chunk
                .iter()
                .enumerate()
                .fold(0u64, |w, (j, &t)| w | ((x.numerator > t) as u64) << j)
        })
        .collect();
    Ok(Bitstream::from_words_masked(words, length))
}

/// Streams for every level `0..=2^bits`, indexed by level.
pub fn encode_all_levels(thresholds: &Thresholds) -> Result<Vec<Bitstream>> {
    let top = 1u64 << thresholds.bits;
    (0..=top).map(|k| encode_level(k, thresholds)).collect()
}

pub fn decode_unipolar(s: &Bitstream) -> Ratio<u64> {
    Ratio::new(s.count_ones(), s.len as u64)
}

pub fn decode_bipolar(s: &Bitstream) -> Ratio<i64> {
    Ratio::new(2 * s.count_ones() as i64 - s.len as i64, s.len as i64)
}

/// Overlap counts: `a` = (1,1), `b` = (1,0), `c` = (0,1), `d` = (0,0).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SccCounts {
    pub a: u64,
    pub b: u64,
    pub c: u64,
    pub d: u64,
    pub n: u64,
}

impl SccCounts {
    pub fn from_streams(s1: &Bitstream, s2: &Bitstream) -> Result<Self> {
        check_lengths(&[s1, s2])?;
        let (mut a, mut ones1, mut ones2) = (0u64, 0u64, 0u64);
        for (&x, &y) in s1.words.iter().zip(&s2.words) {
            a += (x & y).count_ones() as u64;
            ones1 += x.count_ones() as u64;
            ones2 += y.count_ones() as u64;
        }
        let n = s1.len as u64;
        let (b, c) = (ones1 - a, ones2 - a);
        Ok(Self {
            a,
            b,
            c,
            d: n - a - b - c,
            n,
        })
    }

    pub fn scc(&self) -> Scc {
        let (a, b, c, d, n) = (
            self.a as i128,
            self.b as i128,
            self.c as i128,
            self.d as i128,
            self.n as i128,
        );
        let num = a * d - b * c;
        let den = if a * d > b * c {
            n * (a + b).min(a + c) - (a + b) * (a + c)
        } else {
            (a + b) * (a + c) - n * (a - d).max(0)
        };
        if den == 0 {
            Scc::Undefined
        } else {
            Scc::Value(Ratio::new(num, den))
        }
    }
}

/// Stochastic cross-correlation; `Undefined` when the selected denominator
/// vanishes (a constant stream is involved).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scc {
    Value(Ratio<i128>),
    Undefined,
}

impl Scc {
    pub fn value(&self) -> Option<Ratio<i128>> {
        match self {
            Scc::Value(v) => Some(*v),
            Scc::Undefined => None,
        }
    }

    pub fn to_f64(&self) -> Option<f64> {
        self.value().map(|v| *v.numer() as f64 / *v.denom() as f64)
    }
}

impl fmt::Display for Scc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_f64() {
            Some(v) => write!(f, "{v:.6}"),
            None => f.write_str("undefined"),
        }
    }
}

pub fn scc(s1: &Bitstream, s2: &Bitstream) -> Result<Scc> {
    Ok(SccCounts::from_streams(s1, s2)?.scc())
}

pub(crate) fn check_lengths(streams: &[&Bitstream]) -> Result<()> {
    let len = streams[0].len;
    if let Some(bad) = streams.iter().find(|s| s.len != len) {
        return Err(Error::domain(format!(
            "bit-stream lengths differ: {len} vs {}",
            bad.len
        )));
    }
    Ok(())
}

/// On-disk bit-stream encodings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BitFileFormat {
    /// `'0'`/`'1'` text, whitespace ignored.
    Ascii,
    /// 8-byte little-endian bit count, then `ceil(len / 8)` bytes, bit `i`
    /// at byte `i / 8`, position `i % 8`.
    Binary,
}

pub fn write_bitfile(s: &Bitstream, format: BitFileFormat) -> Vec<u8> {
    match format {
        BitFileFormat::Ascii => {
            let mut out = s.to_string().into_bytes();
            out.push(b'\n');
            out
        }
        BitFileFormat::Binary => {
            let mut out = (s.len as u64).to_le_bytes().to_vec();
            let bytes = s.len.div_ceil(8);
            out.extend(s.words.iter().flat_map(|w| w.to_le_bytes()).take(bytes));
            out
        }
    }
}

pub fn read_bitfile(bytes: &[u8], format: BitFileFormat) -> Result<Bitstream> {
    match format {
        BitFileFormat::Ascii => {
            let text = std::str::from_utf8(bytes)
                .map_err(|e| Error::parse(e.valid_up_to(), "bit-stream text is not UTF-8"))?;
            text.parse()
        }
        BitFileFormat::Binary => {
            let header: [u8; 8] = bytes
                .get(..8)
                .and_then(|h| h.try_into().ok())
                .ok_or_else(|| Error::parse(bytes.len(), "missing 8-byte length header"))?;
            let len = u64::from_le_bytes(header);
            if len == 0 {
                return Err(Error::parse(0, "zero-length bit-stream"));
            }
            let need = usize::try_from(len.div_ceil(8))
                .map_err(|_| Error::parse(0, format!("length {len} too large")))?;
            let body = &bytes[8..];
            if body.len() < need {
                return Err(Error::parse(bytes.len(), format!("body truncated: {need} bytes expected")));
            }
            if body.len() > need {
                return Err(Error::parse(8 + need, "trailing bytes after the bit-stream body"));
            }
            let len = len as usize;
            let words: Vec<u64> = body
                .chunks(8)
                .map(|c| {
                    let mut w = [0u8; 8];
                    w[..c.len()].copy_from_slice(c);
                    u64::from_le_bytes(w)
                })
                .collect();
            Bitstream::from_words(words, len)
                .map_err(|_| Error::parse(bytes.len() - 1, "nonzero padding bits in the last byte"))
        }
    }
}
