//! Base-2 Niederreiter sequence.
//!
//! Dimension `d` uses the `d`-th irreducible polynomial over GF(2) in
//! increasing order (`x`, `x + 1`, `x^2 + x + 1`, ...). Output digit
//! `j = Q·e + u + 1` (1-based from the radix point, `e` the degree) takes
//! the Laurent coefficients of `x^(e-u-1) / p(x)^(Q+1)` as its matrix row.
//! Dimension 0 reduces to bit reversal, dimension 1 to Pascal's triangle
//! mod 2.

use super::sobol::NetOrder;
use crate::error::{Error, Result};

/// Highest supported output precision.
pub const MAX_NIEDERREITER_BITS: u32 = 32;

/// Number of supported dimensions (0-based indices below this).
pub const MAX_NIEDERREITER_DIMENSION: usize = 20;

/// Polynomials over GF(2) as bit masks, bit `i` holding the `x^i` coefficient.
fn degree(p: u64) -> u32 {
    63 - p.leading_zeros()
}

fn poly_mod(mut a: u64, b: u64) -> u64 {
    let db = degree(b);
    while a != 0 && degree(a) >= db {
        a ^= b << (degree(a) - db);
    }
    a
}

fn is_irreducible(p: u64) -> bool {
    let d = degree(p);
    (2u64..1 << (d / 2 + 1))
        .filter(|&q| degree(q) <= d / 2)
        .all(|q| poly_mod(p, q) != 0)
}

/// The first `count` irreducible polynomials over GF(2).
pub fn irreducible_polynomials(count: usize) -> Vec<u64> {
    (2u64..).filter(|&p| is_irreducible(p)).take(count).collect()
}

fn poly_mul(a: &[u8], b: &[u8]) -> Vec<u8> {
    let mut out = vec![0u8; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 1 {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] ^= y;
            }
        }
    }
    out
}

/// Coefficients of `x^-(r+1)`, `r = 0..count`, in the expansion of
/// `x^k / den(x)`, where `den` is monic and `k < deg den`.
fn laurent(k: usize, den: &[u8], count: usize) -> Vec<u8> {
    let d = den.len() - 1;
    // den(x) / x^d = 1 + c_1 y + ... + c_d y^d with y = 1/x; invert that series
    let c = |i: usize| den[d - i];
    let shift = d - k;
    let terms = count + 1;
    let mut s = vec![0u8; terms];
    s[0] = 1;
    for m in 1..terms {
        s[m] = (1..=m.min(d)).fold(0, |acc, i| acc ^ (c(i) & s[m - i]));
    }
    (0..count)
        .map(|r| if r + 1 >= shift { s[r + 1 - shift] } else { 0 })
        .collect()
}

/// Generator-matrix columns for one dimension: column `r` is the `n`-bit
/// output contributed by bit `r` of the index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NiederreiterMatrix {
    bits: u32,
    polynomial: u64,
    columns: Vec<u64>,
}

impl NiederreiterMatrix {
    pub fn new(dimension: usize, bits: u32) -> Result<Self> {
        if dimension >= MAX_NIEDERREITER_DIMENSION {
            return Err(Error::config(format!(
                "Niederreiter dimension {dimension} outside 0..{MAX_NIEDERREITER_DIMENSION}"
            )));
        }
        if bits == 0 || bits > MAX_NIEDERREITER_BITS {
            return Err(Error::config(format!(
                "Niederreiter precision {bits} outside 1..={MAX_NIEDERREITER_BITS}"
            )));
        }
        let polynomial = irreducible_polynomials(dimension + 1)[dimension];
        let e = degree(polynomial) as usize;
        let p: Vec<u8> = (0..=e).map(|i| ((polynomial >> i) & 1) as u8).collect();
        let n = bits as usize;
        let mut columns = vec![0u64; n];
        let mut power = p.clone();
        for q in 0..n.div_ceil(e) {
            if q > 0 {
                power = poly_mul(&power, &p);
            }
            for u in 0..e {
                let j = q * e + u + 1;
                if j > n {
                    break;
                }
                let row = laurent(e - u - 1, &power, n);
                for (r, &bit) in row.iter().enumerate() {
                    if bit == 1 {
                        columns[r] |= 1 << (n - j);
                    }
                }
            }
        }
        Ok(Self {
            bits,
            polynomial,
            columns,
        })
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn polynomial(&self) -> u64 {
        self.polynomial
    }

    pub fn columns(&self) -> &[u64] {
        &self.columns
    }

    /// Output for index `i`.
    pub fn apply(&self, index: u64) -> u64 {
        self.columns
            .iter()
            .enumerate()
            .filter(|(r, _)| (index >> r) & 1 == 1)
            .fold(0, |acc, (_, &c)| acc ^ c)
    }
}

/// First `count` outputs of `dimension` as `bits`-bit integers, index 0 first.
pub fn gen_niederreiter(dimension: usize, count: u64, bits: u32) -> Result<Vec<u64>> {
    gen_niederreiter_ordered(dimension, count, bits, NetOrder::Natural, 0)
}

/// As [`gen_niederreiter`], visiting indices in `order` and dropping the first
/// `skip` points.
pub fn gen_niederreiter_ordered(
    dimension: usize,
    count: u64,
    bits: u32,
    order: NetOrder,
    skip: u64,
) -> Result<Vec<u64>> {
    let matrix = NiederreiterMatrix::new(dimension, bits)?;
    let period = 1u64 << bits;
    if count.checked_add(skip).is_none_or(|end| end > period) {
        return Err(Error::range(format!(
            "{count} points after skipping {skip} exceed the {bits}-bit period"
        )));
    }
    Ok((skip..skip + count)
        .map(|i| match order {
            NetOrder::Natural => matrix.apply(i),
            NetOrder::GrayCode => matrix.apply(i ^ (i >> 1)),
        })
        .collect())
}
