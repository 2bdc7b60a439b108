//! Fibonacci linear-feedback shift register.
//!
//! Each step shifts the state left by one and feeds in the parity of the
//! tapped bits: `s' = ((s << 1) | parity(s & taps)) & (2^n - 1)`.

use crate::error::{Error, Result};

/// Maximal-length tap masks for widths 2..=16; bit `t - 1` set for tap `t`.
const MAXIMAL_TAPS: [u64; 15] = [
    0b11,                // 2, 1
    0b110,               // 3, 2
    0b1100,              // 4, 3
    0b1_0100,            // 5, 3
    0b11_0000,           // 6, 5
    0b110_0000,          // 7, 6
    0xB8,                // 8, 6, 5, 4
    0b1_0001_0000,       // 9, 5
    0b10_0100_0000,      // 10, 7
    0b101_0000_0000,     // 11, 9
    0b1000_0010_1001,    // 12, 6, 4, 1
    0b1_0000_0000_1101,  // 13, 4, 3, 1
    0b10_0000_0001_0101, // 14, 5, 3, 1
    0b110_0000_0000_0000, // 15, 14
    0xD008,              // 16, 15, 13, 4
];

/// Default 8-bit register: x^8 + x^6 + x^5 + x^4 + 1, seeded with 1.
pub const DEFAULT_TAPS: u64 = 0xB8;
pub const DEFAULT_SEED: u64 = 1;

/// Maximal-length taps for an `n`-bit register, `2 <= n <= 16`.
pub fn maximal_taps(bits: u32) -> Result<u64> {
    if !(2..=16).contains(&bits) {
        return Err(Error::config(format!("no built-in taps for a {bits}-bit register")));
    }
    Ok(MAXIMAL_TAPS[bits as usize - 2])
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lfsr {
    taps: u64,
    state: u64,
    mask: u64,
}

impl Lfsr {
    /// Register width is the position of the highest tap.
    pub fn new(taps: u64, seed: u64) -> Result<Self> {
        if taps == 0 {
            return Err(Error::config("LFSR tap mask is empty"));
        }
        let bits = 64 - taps.leading_zeros();
        if bits > 63 {
            return Err(Error::config("LFSR wider than 63 bits"));
        }
        let mask = (1u64 << bits) - 1;
        if seed & mask == 0 || seed > mask {
            return Err(Error::config(format!(
                "LFSR seed {seed} must be a nonzero {bits}-bit value"
            )));
        }
        Ok(Self {
            taps,
            state: seed,
            mask,
        })
    }

    pub fn bits(&self) -> u32 {
        self.mask.count_ones()
    }

    pub fn state(&self) -> u64 {
        self.state
    }

    fn step(&mut self) {
        let feedback = (self.state & self.taps).count_ones() as u64 & 1;
        self.state = ((self.state << 1) | feedback) & self.mask;
    }
}

impl Iterator for Lfsr {
    type Item = u64;

    /// Emits the current state, then steps.
    fn next(&mut self) -> Option<u64> {
        let out = self.state;
        self.step();
        Some(out)
    }
}

/// First `count` states, starting with the seed.
pub fn gen_lfsr(taps: u64, seed: u64, count: u64) -> Result<Vec<u64>> {
    Ok(Lfsr::new(taps, seed)?.take(count as usize).collect())
}
