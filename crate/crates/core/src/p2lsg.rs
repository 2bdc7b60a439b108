//! The powers-of-2 Van der Corput generator: an up-counter whose bits are
//! re-wired group by group.
//!
//! For base `B = 2^g` the counter value is cut into `g`-bit groups starting at
//! the least significant bit, the topmost group is zero-padded when `g` does
//! not divide the counter width, and the groups are emitted in reverse order
//! with the bits inside every group left untouched. The result is truncated to
//! the counter width by keeping the most significant bits, so the pad bits are
//! what gets discarded. Since the whole transformation is a fixed wiring of
//! counter bits to output bits it is modelled here as exactly that: a
//! [`Wiring`] table computed once per configuration.

use crate::error::{Error, Result};

/// Largest supported counter width.
pub const MAX_COUNTER_BITS: u32 = 63;

/// Returns `log2(base)` when `base` is a power of two no smaller than 2.
pub fn base_log2(base: u64) -> Result<u32> {
    if base < 2 || !base.is_power_of_two() {
        return Err(Error::config(format!(
            "base {base} is not a power of two >= 2"
        )));
    }
    Ok(base.trailing_zeros())
}

/// Parameters of one generator instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct P2lsgConfig {
    base: u64,
    counter_bits: u32,
    par: u64,
}

impl P2lsgConfig {
    /// Serial generator (`par = 1`).
    pub fn new(base: u64, counter_bits: u32) -> Result<Self> {
        Self::with_par(base, counter_bits, 1)
    }

    pub fn with_par(base: u64, counter_bits: u32, par: u64) -> Result<Self> {
        base_log2(base)?;
        if counter_bits == 0 || counter_bits > MAX_COUNTER_BITS {
            return Err(Error::config(format!(
                "counter width {counter_bits} outside 1..={MAX_COUNTER_BITS}"
            )));
        }
        if par == 0 || !par.is_power_of_two() {
            return Err(Error::config(format!("parallelism {par} is not a power of two")));
        }
        if par.trailing_zeros() >= counter_bits {
            return Err(Error::config(format!(
                "parallelism {par} needs at least {} counter bits, have {counter_bits}",
                par.trailing_zeros() + 1
            )));
        }
        Ok(Self {
            base,
            counter_bits,
            par,
        })
    }

    pub fn base(&self) -> u64 {
        self.base
    }

    pub fn counter_bits(&self) -> u32 {
        self.counter_bits
    }

    pub fn par(&self) -> u64 {
        self.par
    }

    /// Number of distinct counter states, `2^counter_bits`.
    pub fn period(&self) -> u64 {
        1u64 << self.counter_bits
    }

    /// True when every output group is a complete digit, which makes the
    /// full-period output a permutation.
    pub fn is_bijective(&self) -> bool {
        self.counter_bits.is_multiple_of(self.base.trailing_zeros())
    }

    pub fn wiring(&self) -> Wiring {
        Wiring::new(self.counter_bits, self.base.trailing_zeros())
    }
}

/// Binary up-counter of fixed width that wraps at `2^width`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CounterState {
    value: u64,
    width: u32,
}

impl CounterState {
    pub fn new(width: u32) -> Result<Self> {
        if width == 0 || width > MAX_COUNTER_BITS {
            return Err(Error::config(format!(
                "counter width {width} outside 1..={MAX_COUNTER_BITS}"
            )));
        }
        Ok(Self { value: 0, width })
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    /// Advances by `step` and wraps.
    pub fn tick(&mut self, step: u64) {
        let mask = (1u64 << self.width) - 1;
        self.value = self.value.wrapping_add(step) & mask;
    }
}

/// Hard-wired bit permutation: output bit `j` is driven by counter bit
/// `source[j]`, or tied to zero when the slot came from padding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Wiring {
    source: Vec<Option<u32>>,
}

impl Wiring {
    /// Builds the wiring for an `counter_bits`-wide counter read as
    /// `group_bits`-bit digits.
    pub fn new(counter_bits: u32, group_bits: u32) -> Self {
        let groups = counter_bits.div_ceil(group_bits);
        let padded = groups * group_bits;
        let dropped = padded - counter_bits;
        let mut source = vec![None; counter_bits as usize];
        for bit in 0..padded {
            let group = bit / group_bits;
            let offset = bit % group_bits;
            let target = (groups - 1 - group) * group_bits + offset;
            // Targets below `dropped` fall off the truncated end.
            if target < dropped {
                continue;
            }
            let out = (target - dropped) as usize;
            if bit < counter_bits {
                source[out] = Some(bit);
            }
        }
        Self { source }
    }

    pub fn width(&self) -> u32 {
        self.source.len() as u32
    }

    /// Counter bit feeding output bit `j`, `None` for a constant-zero pad.
    pub fn source_of(&self, output_bit: u32) -> Option<u32> {
        self.source.get(output_bit as usize).copied().flatten()
    }

    #[inline]
    pub fn apply(&self, counter: u64) -> u64 {
        self.source
            .iter()
            .enumerate()
            .fold(0u64, |acc, (out, src)| match src {
                Some(bit) => acc | (((counter >> bit) & 1) << out),
                None => acc,
            })
    }
}

/// Reverses the `log2(base)`-bit groups of `counter_value`.
///
/// ```
/// assert_eq!(p2lsg::p2lsg::group_reverse(0x12, 8, 16).unwrap(), 0x21);
/// assert_eq!(p2lsg::p2lsg::group_reverse(255, 8, 8).unwrap(), 253);
/// ```
pub fn group_reverse(counter_value: u64, counter_bits: u32, base: u64) -> Result<u64> {
    let config = P2lsgConfig::new(base, counter_bits)?;
    if counter_value >= config.period() {
        return Err(Error::domain(format!(
            "counter value {counter_value} does not fit in {counter_bits} bits"
        )));
    }
    Ok(config.wiring().apply(counter_value))
}

/// Serial generator; yields one output per counter tick for one full period.
#[derive(Debug, Clone)]
pub struct P2lsg {
    wiring: Wiring,
    counter: CounterState,
    remaining: u64,
}

impl P2lsg {
    pub fn new(config: &P2lsgConfig) -> Self {
        Self {
            wiring: config.wiring(),
            counter: CounterState {
                value: 0,
                width: config.counter_bits,
            },
            remaining: config.period(),
        }
    }
}

impl Iterator for P2lsg {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        if self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        let out = self.wiring.apply(self.counter.value);
        self.counter.tick(1);
        Some(out)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = usize::try_from(self.remaining).unwrap_or(usize::MAX);
        (n, Some(n))
    }
}

/// First `count` outputs of the serial generator.
pub fn p2lsg_sequence(config: &P2lsgConfig, count: u64) -> Result<Vec<u64>> {
    if count > config.period() {
        return Err(Error::range(format!(
            "{count} outputs requested but the counter period is {}",
            config.period()
        )));
    }
    Ok(P2lsg::new(config).take(count as usize).collect())
}

/// Parallel generator: a reduced counter drives the high bits while the
/// `log2(par)` low bits are filled with every pattern at once, so each cycle
/// yields `par` consecutive sequence elements.
#[derive(Debug, Clone)]
pub struct ParallelP2lsg {
    wiring: Wiring,
    counter: CounterState,
    lanes: u32,
    remaining: u64,
}

impl ParallelP2lsg {
    pub fn new(config: &P2lsgConfig) -> Self {
        let lanes = config.par.trailing_zeros();
        Self {
            wiring: config.wiring(),
            counter: CounterState {
                value: 0,
                width: config.counter_bits - lanes,
            },
            lanes,
            remaining: config.period() / config.par,
        }
    }
}

impl Iterator for ParallelP2lsg {
    type Item = Vec<u64>;

    fn next(&mut self) -> Option<Vec<u64>> {
        if self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        let high = self.counter.value << self.lanes;
        let tuple = (0..1u64 << self.lanes)
            .map(|lane| self.wiring.apply(high | lane))
            .collect();
        self.counter.tick(1);
        Some(tuple)
    }
}

/// `cycles` parallel output tuples of `par` elements each.
pub fn p2lsg_parallel(config: &P2lsgConfig, cycles: u64) -> Result<Vec<Vec<u64>>> {
    let needed = cycles.saturating_mul(config.par);
    if needed > config.period() {
        return Err(Error::range(format!(
            "{cycles} cycles x {} lanes exceed the counter period {}",
            config.par,
            config.period()
        )));
    }
    Ok(ParallelP2lsg::new(config).take(cycles as usize).collect())
}

/// The generator pair used for two-input operations at stream length `n`:
/// base 2 for the first operand and base `n` for the second, both with a
/// `log2(n)`-bit counter.
pub fn p2lsg_pair_for_length(stream_length: u64) -> Result<(P2lsgConfig, P2lsgConfig)> {
    if stream_length < 2 || !stream_length.is_power_of_two() {
        return Err(Error::config(format!(
            "stream length {stream_length} is not a power of two >= 2"
        )));
    }
    let bits = stream_length.trailing_zeros();
    Ok((
        P2lsgConfig::new(2, bits)?,
        P2lsgConfig::new(stream_length, bits)?,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Digit-string oracle: write the value in base `2^g` as explicit binary
    /// digit strings, reverse their order, and cut back to `bits` characters.
    fn digit_string_reverse(value: u64, bits: u32, base: u64) -> u64 {
        let g = base.trailing_zeros() as usize;
        let groups = (bits as usize).div_ceil(g);
        let padded = format!("{:0width$b}", value, width = groups * g);
        let digits: Vec<&str> = (0..groups)
            .map(|i| &padded[padded.len() - (i + 1) * g..padded.len() - i * g])
            .collect();
        let reversed: String = digits.concat();
        u64::from_str_radix(&reversed[..bits as usize], 2).unwrap()
    }

    #[test]
    fn group_reverse_examples() {
        assert_eq!(group_reverse(0x12, 8, 16).unwrap(), 0x21);
        assert_eq!(group_reverse(1, 8, 2).unwrap(), 128);
        assert_eq!(group_reverse(0b000110, 6, 4).unwrap(), 0b100100);
        assert_eq!(digit_string_reverse(255, 8, 8), 253);
        assert_eq!(group_reverse(255, 8, 8).unwrap(), 253);
    }

    #[test]
    fn wiring_matches_digit_strings() {
        for bits in 1..=10u32 {
            for g in 1..=bits + 2 {
                let base = 1u64 << g;
                for v in 0..(1u64 << bits) {
                    assert_eq!(
                        group_reverse(v, bits, base).unwrap(),
                        digit_string_reverse(v, bits, base),
                        "v={v} bits={bits} base={base}"
                    );
                }
            }
        }
    }

    #[test]
    fn group_reverse_rejects_bad_input() {
        assert!(matches!(group_reverse(1, 8, 3), Err(Error::Config(_))));
        assert!(matches!(group_reverse(1, 8, 1), Err(Error::Config(_))));
        assert!(matches!(group_reverse(256, 8, 2), Err(Error::Domain(_))));
    }

    #[test]
    fn sequence_examples() {
        let c = P2lsgConfig::new(2, 2).unwrap();
        assert_eq!(p2lsg_sequence(&c, 4).unwrap(), vec![0, 2, 1, 3]);
        let c = P2lsgConfig::new(16, 8).unwrap();
        assert_eq!(p2lsg_sequence(&c, 4).unwrap(), vec![0, 16, 32, 48]);
        let c = P2lsgConfig::new(4, 8).unwrap();
        assert_eq!(p2lsg_sequence(&c, 3).unwrap(), vec![0, 64, 128]);
        assert!(matches!(p2lsg_sequence(&c, 257), Err(Error::Range(_))));
    }

    #[test]
    fn base4_prefix_matches_digit_reversal() {
        // i in base 4 with 4 digits, mirrored, read back as base 4
        let c = P2lsgConfig::new(4, 8).unwrap();
        let seq = p2lsg_sequence(&c, 256).unwrap();
        for (i, &s) in seq.iter().enumerate() {
            let mut v = i as u64;
            let mut out = 0;
            for _ in 0..4 {
                out = out * 4 + v % 4;
                v /= 4;
            }
            assert_eq!(s, out);
        }
    }

    #[test]
    fn parallel_examples() {
        let c = P2lsgConfig::with_par(16, 8, 4).unwrap();
        assert_eq!(p2lsg_parallel(&c, 1).unwrap()[0], vec![0, 16, 32, 48]);
        let c = P2lsgConfig::with_par(2, 8, 2).unwrap();
        assert_eq!(p2lsg_parallel(&c, 2).unwrap()[1], vec![64, 192]);
        let c = P2lsgConfig::with_par(4, 8, 4).unwrap();
        let flat: Vec<u64> = p2lsg_parallel(&c, 64).unwrap().concat();
        assert_eq!(flat, p2lsg_sequence(&P2lsgConfig::new(4, 8).unwrap(), 256).unwrap());
        assert!(p2lsg_parallel(&c, 65).is_err());
    }

    #[test]
    fn par_validation() {
        assert!(P2lsgConfig::with_par(2, 8, 3).is_err());
        assert!(P2lsgConfig::with_par(2, 8, 256).is_err());
        assert!(P2lsgConfig::with_par(2, 8, 128).is_ok());
        assert!(P2lsgConfig::with_par(2, 8, 0).is_err());
        assert!(P2lsgConfig::new(2, 0).is_err());
    }

    #[test]
    fn pair_for_length() {
        let (a, b) = p2lsg_pair_for_length(256).unwrap();
        assert_eq!((a.base(), a.counter_bits()), (2, 8));
        assert_eq!((b.base(), b.counter_bits()), (256, 8));
        let (a, b) = p2lsg_pair_for_length(4).unwrap();
        assert_eq!((a.base(), a.counter_bits(), b.base()), (2, 2, 4));
        let (a, b) = p2lsg_pair_for_length(1 << 16).unwrap();
        assert_eq!((a.base(), b.base(), b.counter_bits()), (2, 1 << 16, 16));
        assert!(p2lsg_pair_for_length(96).is_err());
        assert!(p2lsg_pair_for_length(1).is_err());
    }

    #[test]
    fn counter_wraps() {
        let mut c = CounterState::new(3).unwrap();
        c.tick(7);
        assert_eq!(c.value(), 7);
        c.tick(1);
        assert_eq!(c.value(), 0);
        assert_eq!(c.width(), 3);
    }

    #[test]
    fn wiring_pads_are_zero() {
        // 8 bits read as 3-bit digits: output bit 0 comes from the pad
        let w = Wiring::new(8, 3);
        assert_eq!(w.source_of(0), Some(7));
        assert_eq!(w.source_of(1), None);
        assert_eq!(w.width(), 8);
    }
}
