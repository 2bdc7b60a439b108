//! Stochastic arithmetic as word-parallel bitwise kernels.
//!
//! None of these check correlation preconditions; they model gates, not
//! validators.

use crate::bitstream::{check_lengths, Bitstream};
use crate::error::Result;

fn zip2(s1: &Bitstream, s2: &Bitstream, f: impl Fn(u64, u64) -> u64) -> Result<Bitstream> {
    check_lengths(&[s1, s2])?;
    let words = s1.words().iter().zip(s2.words()).map(|(&x, &y)| f(x, y)).collect();
    Ok(Bitstream::from_words_masked(words, s1.len()))
}

/// Unipolar multiply: bitwise AND.
pub fn mul_unipolar(s1: &Bitstream, s2: &Bitstream) -> Result<Bitstream> {
    zip2(s1, s2, |x, y| x & y)
}

/// Bipolar multiply: bitwise XNOR.
pub fn mul_bipolar(s1: &Bitstream, s2: &Bitstream) -> Result<Bitstream> {
    zip2(s1, s2, |x, y| !(x ^ y))
}

/// AND of maximally correlated streams, which decodes to the minimum.
pub fn min_correlated(s1: &Bitstream, s2: &Bitstream) -> Result<Bitstream> {
    mul_unipolar(s1, s2)
}

/// Select 0 routes `s1`, select 1 routes `s2`.
pub fn mux2(s1: &Bitstream, s2: &Bitstream, select: &Bitstream) -> Result<Bitstream> {
    check_lengths(&[s1, s2, select])?;
    let words = s1
        .words()
        .iter()
        .zip(s2.words())
        .zip(select.words())
        .map(|((&x, &y), &s)| (x & !s) | (y & s))
        .collect();
    Ok(Bitstream::from_words_masked(words, s1.len()))
}

/// Bipolar scaled subtraction: select 1 routes the complement of `s2`.
pub fn mux2_sub(s1: &Bitstream, s2: &Bitstream, select: &Bitstream) -> Result<Bitstream> {
    check_lengths(&[s1, s2, select])?;
    let words = s1
        .words()
        .iter()
        .zip(s2.words())
        .zip(select.words())
        .map(|((&x, &y), &s)| (x & !s) | (!y & s))
        .collect();
    Ok(Bitstream::from_words_masked(words, s1.len()))
}

/// 4-to-1 MUX; `(sel_u, sel_v)` = (0,0), (0,1), (1,0), (1,1) route
/// `i11`, `i12`, `i21`, `i22`.
pub fn mux4(
    i11: &Bitstream,
    i12: &Bitstream,
    i21: &Bitstream,
    i22: &Bitstream,
    sel_u: &Bitstream,
    sel_v: &Bitstream,
) -> Result<Bitstream> {
    check_lengths(&[i11, i12, i21, i22, sel_u, sel_v])?;
    let words = (0..i11.words().len())
        .map(|w| {
            let (u, v) = (sel_u.words()[w], sel_v.words()[w]);
            (i11.words()[w] & !u & !v)
                | (i12.words()[w] & !u & v)
                | (i21.words()[w] & u & !v)
                | (i22.words()[w] & u & v)
        })
        .collect();
    Ok(Bitstream::from_words_masked(words, i11.len()))
}

/// `popcount(s1 & s2)` without materialising the product.
pub fn and_popcount(s1: &Bitstream, s2: &Bitstream) -> Result<u64> {
    check_lengths(&[s1, s2])?;
    Ok(s1
        .words()
        .iter()
        .zip(s2.words())
        .map(|(&x, &y)| (x & y).count_ones() as u64)
        .sum())
}

/// `popcount(mux2(s1, s2, select))` without materialising the output.
pub fn mux2_popcount(s1: &Bitstream, s2: &Bitstream, select: &Bitstream) -> Result<u64> {
    check_lengths(&[s1, s2, select])?;
    Ok(s1
        .words()
        .iter()
        .zip(s2.words())
        .zip(select.words())
        .map(|((&x, &y), &s)| ((x & !s) | (y & s)).count_ones() as u64)
        .sum())
}

/// `popcount(mux4(..))` without materialising the output.
pub fn mux4_popcount(
    i11: &Bitstream,
    i12: &Bitstream,
    i21: &Bitstream,
    i22: &Bitstream,
    sel_u: &Bitstream,
    sel_v: &Bitstream,
) -> Result<u64> {
    check_lengths(&[i11, i12, i21, i22, sel_u, sel_v])?;
    Ok((0..i11.words().len())
        .map(|w| {
            let (u, v) = (sel_u.words()[w], sel_v.words()[w]);
            ((i11.words()[w] & !u & !v)
                | (i12.words()[w] & !u & v)
                | (i21.words()[w] & u & !v)
                | (i22.words()[w] & u & v))
                .count_ones() as u64
        })
        .sum())
}
