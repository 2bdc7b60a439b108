//! Sobol generator driven by a direction-vector array.
//!
//! Hardware Sobol generators pick a direction vector with a priority encoder
//! on the least significant zero (LSZ) of a counter and XOR it into the
//! previous output. Doing that with the raw vectors walks the points in
//! Gray-code order. XORing the prefix-combined vectors `V_0 ^ .. ^ V_k`
//! instead walks the same points in natural order, where output `i` is the
//! XOR of `V_k` over the set bits `k` of `i`; natural order is the default.

use crate::error::{Error, Result};

/// Joe-Kuo initialisation `(degree s, coefficients a, m_1..m_s)` for
/// dimensions 2 and up; dimension 1 is the identity (all `m_k = 1`).
const JOE_KUO: &[(u32, u32, &[u64])] = &[
    (1, 0, &[1]),
    (2, 1, &[1, 3]),
    (3, 1, &[1, 3, 1]),
    (3, 2, &[1, 1, 1]),
    (4, 1, &[1, 1, 3, 3]),
    (4, 4, &[1, 3, 5, 13]),
    (5, 2, &[1, 1, 5, 5, 17]),
    (5, 4, &[1, 1, 5, 5, 5]),
    (5, 7, &[1, 1, 7, 11, 19]),
];

/// Highest dimension with built-in direction numbers.
pub const MAX_SOBOL_DIMENSION: usize = JOE_KUO.len() + 1;

/// Direction vectors `V_0..V_{n-1}` for an `n`-bit generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectionVectorArray {
    bits: u32,
    vectors: Vec<u64>,
}

impl DirectionVectorArray {
    pub fn new(vectors: Vec<u64>) -> Result<Self> {
        let bits = vectors.len() as u32;
        if bits == 0 {
            return Err(Error::config("direction-vector array is empty"));
        }
        if bits > 63 {
            return Err(Error::config(format!("{bits}-bit direction vectors are not supported")));
        }
        if let Some(pos) = vectors.iter().position(|&v| v == 0 || v >> bits != 0) {
            return Err(Error::config(format!(
                "direction vector {pos} is zero or wider than {bits} bits"
            )));
        }
        Ok(Self { bits, vectors })
    }

    /// `V_k = 2^(n-1-k)`: the base-2 radical inverse.
    pub fn identity(bits: u32) -> Result<Self> {
        if bits == 0 || bits > 63 {
            return Err(Error::config(format!("{bits}-bit direction vectors are not supported")));
        }
        Self::new((0..bits).map(|k| 1u64 << (bits - 1 - k)).collect())
    }

    /// Joe-Kuo direction vectors for `dimension` (1-based, as in the
    /// published table).
    pub fn joe_kuo(dimension: usize, bits: u32) -> Result<Self> {
        if dimension == 0 || dimension > MAX_SOBOL_DIMENSION {
            return Err(Error::config(format!(
                "Sobol dimension {dimension} outside 1..={MAX_SOBOL_DIMENSION}"
            )));
        }
        if dimension == 1 {
            return Self::identity(bits);
        }
        if bits == 0 || bits > 63 {
            return Err(Error::config(format!("{bits}-bit direction vectors are not supported")));
        }
        let (s, a, init) = JOE_KUO[dimension - 2];
        let s = s as usize;
        let mut m: Vec<u64> = init.to_vec();
        for k in s..bits as usize {
            let mut next = m[k - s] ^ (m[k - s] << s);
            for j in 1..s {
                if (a >> (s - 1 - j)) & 1 == 1 {
                    next ^= m[k - j] << j;
                }
            }
            m.push(next);
        }
        m.truncate(bits as usize);
        Self::new(
            m.iter()
                .enumerate()
                .map(|(k, &mk)| mk << (bits as usize - 1 - k))
                .collect(),
        )
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn vectors(&self) -> &[u64] {
        &self.vectors
    }
}

/// Visiting order of the generated points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum NetOrder {
    #[default]
    Natural,
    GrayCode,
}

/// Counter + LSZ encoder + XOR register.
#[derive(Debug, Clone)]
pub struct SobolIter {
    table: Vec<u64>,
    state: u64,
    counter: u64,
    limit: u64,
}

impl SobolIter {
    pub fn new(dva: &DirectionVectorArray, order: NetOrder) -> Self {
        let table = match order {
            NetOrder::GrayCode => dva.vectors.clone(),
            NetOrder::Natural => dva
                .vectors
                .iter()
                .scan(0u64, |acc, &v| {
                    *acc ^= v;
                    Some(*acc)
                })
                .collect(),
        };
        Self {
            table,
            state: 0,
            counter: 0,
            limit: 1u64 << dva.bits,
        }
    }
}

impl Iterator for SobolIter {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        if self.counter >= self.limit {
            return None;
        }
        let out = self.state;
        let lsz = (!self.counter).trailing_zeros() as usize;
        if let Some(v) = self.table.get(lsz) {
            self.state ^= v;
        }
        self.counter += 1;
        Some(out)
    }
}

/// First `count` outputs (natural order) as `n`-bit integers.
pub fn gen_sobol(dva: &DirectionVectorArray, count: u64) -> Result<Vec<u64>> {
    gen_sobol_ordered(dva, count, NetOrder::Natural)
}

pub fn gen_sobol_ordered(dva: &DirectionVectorArray, count: u64, order: NetOrder) -> Result<Vec<u64>> {
    let period = 1u64 << dva.bits;
    if count > period {
        return Err(Error::range(format!(
            "{count} Sobol points requested from a {}-bit generator",
            dva.bits
        )));
    }
    Ok(SobolIter::new(dva, order).take(count as usize).collect())
}
