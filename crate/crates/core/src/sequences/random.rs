//! Seeded stratified and dart-throwing samplers.
//!
//! Both draw from Xoshiro256** seeded through SplitMix64, so a seed fixes the
//! output on every platform. Each raw 64-bit draw `w` is read as `w / 2^64`.

use num_rational::Ratio;
use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256StarStar;

use super::radical::UnitRatio;
use crate::error::{Error, Result};
use std::collections::BTreeSet;

const TWO_64: u128 = 1 << 64;

fn rng(seed: u64) -> Xoshiro256StarStar {
    Xoshiro256StarStar::seed_from_u64(seed)
}

/// Uniform integer in `0..bound` by widening multiply.
fn below(rng: &mut Xoshiro256StarStar, bound: u64) -> u64 {
    ((rng.next_u64() as u128 * bound as u128) >> 64) as u64
}

/// One point per stratum `[j/N, (j+1)/N)`, strata visited in a seeded
/// Fisher-Yates order.
pub fn gen_latin_hypercube(n_points: u64, seed: u64) -> Result<Vec<UnitRatio>> {
    if n_points == 0 {
        return Err(Error::range("latin hypercube needs at least one point"));
    }
    let mut rng = rng(seed);
    let mut strata: Vec<u64> = (0..n_points).collect();
    for i in (1..strata.len()).rev() {
        let j = below(&mut rng, i as u64 + 1) as usize;
        strata.swap(i, j);
    }
    let den = n_points as u128 * TWO_64;
    Ok(strata
        .into_iter()
        .map(|j| Ratio::new(j as u128 * TWO_64 + rng.next_u64() as u128, den))
        .collect())
}

/// 1-D dart throwing: a candidate is kept when it lies at least
/// `min_distance` from every kept point. Gives up after `max_attempts`
/// consecutive rejections.
pub fn gen_poisson_disk(
    n_points: u64,
    min_distance: UnitRatio,
    seed: u64,
    max_attempts: u64,
) -> Result<Vec<UnitRatio>> {
    if n_points == 0 {
        return Err(Error::range("poisson disk needs at least one point"));
    }
    if max_attempts == 0 {
        return Err(Error::config("max_attempts must be at least 1"));
    }
    let (num, den) = (*min_distance.numer(), *min_distance.denom());
    if num.checked_mul(n_points as u128 - 1).is_none_or(|span| span >= den) {
        return Err(Error::generation(format!(
            "{n_points} points cannot be spaced {min_distance} apart inside [0, 1)"
        )));
    }
    // distance w/2^64 >= num/den  <=>  w >= ceil(num * 2^64 / den)
    let scaled = num
        .checked_mul(TWO_64)
        .ok_or_else(|| Error::config(format!("min_distance {min_distance} is too finely specified")))?;
    let gap = scaled.div_ceil(den);

    let mut rng = rng(seed);
    let mut kept = BTreeSet::new();
    let mut order = Vec::with_capacity(n_points as usize);
    let mut misses = 0u64;
    while (order.len() as u64) < n_points {
        let w = rng.next_u64();
        let clear_below = kept.range(..=w).next_back().is_none_or(|&p| (w - p) as u128 >= gap);
        let clear_above = kept.range(w..).next().is_none_or(|&p| (p - w) as u128 >= gap);
        if clear_below && clear_above {
            kept.insert(w);
            order.push(w);
            misses = 0;
        } else {
            misses += 1;
            if misses >= max_attempts {
                return Err(Error::generation(format!(
                    "gave up after {max_attempts} rejected candidates with {} of {n_points} points placed",
                    order.len()
                )));
            }
        }
    }
    Ok(order.into_iter().map(|w| Ratio::new(w as u128, TWO_64)).collect())
}
