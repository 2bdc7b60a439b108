//! The sequence families, plus [`SequenceSpec`]: a parsed, tagged
//! description of one family that can be materialised as comparator
//! thresholds.
//!
//! Spec strings follow `<family>[:<key>=<value>,...]`:
//!
//! ```text
//! p2lsg:base=16,bits=8   p2lsg2   p2lsgN   vdc:base=3   halton:prime=11
//! hammersley:dim=1       faure:prime=7,dim=1           sobol:dim=2,order=gray,skip=1
//! niederreiter:dim=1     weyl:alpha=pi     r2:dim=0    lhs:seed=42
//! poisson:seed=7,r=1/1024,attempts=100000              lfsr:taps=0xb8,seed=1
//! ```
//!
//! `p2lsgN` (or `base=N`) picks the base equal to the stream length.

pub mod additive;
pub mod lfsr;
pub mod niederreiter;
pub mod radical;
pub mod random;
pub mod sobol;

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;

use crate::bitstream::Thresholds;
use crate::error::{Error, Result};
use crate::p2lsg::{p2lsg_sequence, P2lsgConfig};
use additive::Irrational;
use radical::UnitRatio;
use sobol::{DirectionVectorArray, NetOrder};

/// A value in `[0, 1)` as `k / 2^64`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Frac64(pub u64);

impl Frac64 {
    /// `floor(r * 2^64)` for `0 <= r < 1`, by binary long division.
    pub fn from_ratio(r: &UnitRatio) -> Result<Self> {
        let (num, den) = (*r.numer(), *r.denom());
        if num >= den {
            return Err(Error::domain(format!("{r} is not below 1")));
        }
        let mut rem = num;
        let mut out = 0u64;
        for _ in 0..64 {
            // 2*rem >= den, written so it cannot overflow
            let bit = rem >= den - rem;
            rem = if bit { rem - (den - rem) } else { rem << 1 };
            out = (out << 1) | bit as u64;
        }
        Ok(Frac64(out))
    }

    /// `value / 2^bits`.
    pub fn from_fixed(value: u64, bits: u32) -> Self {
        debug_assert!(bits <= 64 && (bits == 64 || value >> bits == 0));
        Frac64(if bits == 0 { 0 } else { value << (64 - bits) })
    }

    /// `floor(self * 2^bits)`.
    pub fn quantize(self, bits: u32) -> u64 {
        if bits == 0 {
            0
        } else {
            self.0 >> (64 - bits)
        }
    }

    pub fn to_f64(self) -> f64 {
        self.0 as f64 / 2f64.powi(64)
    }
}

/// One sequence output in its native representation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Sample {
    /// `value / 2^bits`, from a counter- or register-based generator.
    Integer { value: u64, bits: u32 },
    /// Exact digit-mirroring or sampler output.
    Exact(UnitRatio),
    /// Fixed-point additive recurrence output.
    Fixed(Frac64),
}

impl Sample {
    pub fn to_frac64(&self) -> Frac64 {
        match self {
            Sample::Integer { value, bits } => Frac64::from_fixed(*value, *bits),
            Sample::Exact(r) => Frac64::from_ratio(r).expect("samples lie in [0, 1)"),
            Sample::Fixed(f) => *f,
        }
    }
}

/// Base choice for a P2LSG stream.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum P2lsgBase {
    Fixed(u64),
    /// Base equal to the stream length N (the `VDC-N` partner of base 2).
    StreamLength,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SequenceSpec {
    /// `bits` defaults to `log2` of the stream length.
    P2lsg { base: P2lsgBase, bits: Option<u32> },
    Vdc { base: u64 },
    Halton { prime: u64 },
    /// Coordinate 0 is base 2, coordinate 1 base 3.
    Hammersley { dimension: u32 },
    Faure { prime: u64, dimension: u64 },
    /// `dimension` is 1-based as in the Joe-Kuo table.
    Sobol { dimension: usize, order: NetOrder, skip: u64 },
    Niederreiter { dimension: usize, order: NetOrder, skip: u64 },
    Weyl { alpha: Irrational },
    R2 { dimension: u32 },
    LatinHypercube { seed: Option<u64> },
    /// `min_distance` defaults to `1 / (4N)` for an N-point stream.
    PoissonDisk { seed: Option<u64>, min_distance: Option<UnitRatio>, max_attempts: u64 },
    Lfsr { taps: u64, seed: u64 },
}

/// Output precision used for Sobol and Niederreiter samples.
pub const NET_BITS: u32 = 32;

pub const DEFAULT_POISSON_ATTEMPTS: u64 = 1_000_000;

fn log2_ceil(n: u64) -> u32 {
    if n <= 1 {
        0
    } else {
        64 - (n - 1).leading_zeros()
    }
}

impl SequenceSpec {
    pub fn p2lsg(base: u64) -> Self {
        SequenceSpec::P2lsg { base: P2lsgBase::Fixed(base), bits: None }
    }

    pub fn p2lsg_n() -> Self {
        SequenceSpec::P2lsg { base: P2lsgBase::StreamLength, bits: None }
    }

    pub fn sobol(dimension: usize) -> Self {
        SequenceSpec::Sobol { dimension, order: NetOrder::Natural, skip: 0 }
    }

    pub fn niederreiter(dimension: usize) -> Self {
        SequenceSpec::Niederreiter { dimension, order: NetOrder::Natural, skip: 0 }
    }

    pub fn family(&self) -> &'static str {
        match self {
            SequenceSpec::P2lsg { .. } => "p2lsg",
            SequenceSpec::Vdc { .. } => "vdc",
            SequenceSpec::Halton { .. } => "halton",
            SequenceSpec::Hammersley { .. } => "hammersley",
            SequenceSpec::Faure { .. } => "faure",
            SequenceSpec::Sobol { .. } => "sobol",
            SequenceSpec::Niederreiter { .. } => "niederreiter",
            SequenceSpec::Weyl { .. } => "weyl",
            SequenceSpec::R2 { .. } => "r2",
            SequenceSpec::LatinHypercube { .. } => "lhs",
            SequenceSpec::PoissonDisk { .. } => "poisson",
            SequenceSpec::Lfsr { .. } => "lfsr",
        }
    }

    pub fn is_seeded(&self) -> bool {
        matches!(self, SequenceSpec::LatinHypercube { .. } | SequenceSpec::PoissonDisk { .. })
    }

    /// Fills in a missing seed; explicit seeds are kept.
    pub fn with_default_seed(mut self, default: u64) -> Self {
        match &mut self {
            SequenceSpec::LatinHypercube { seed } | SequenceSpec::PoissonDisk { seed, .. } => {
                seed.get_or_insert(default);
            }
            _ => {}
        }
        self
    }

    fn require_seed(&self, seed: Option<u64>) -> Result<u64> {
        seed.ok_or_else(|| Error::config(format!("{} needs an explicit seed", self.family())))
    }

    /// First `count` outputs. `count` doubles as the stream length for
    /// length-dependent families (`p2lsgN`, default P2LSG width, sampler
    /// point counts).
    pub fn samples(&self, count: u64) -> Result<Vec<Sample>> {
        if count == 0 {
            return Ok(Vec::new());
        }
        let exact = |f: &dyn Fn(u64) -> Result<UnitRatio>| -> Result<Vec<Sample>> {
            (0..count).map(|i| f(i).map(Sample::Exact)).collect()
        };
        match self {
            SequenceSpec::P2lsg { base, bits } => {
                let base = match base {
                    P2lsgBase::Fixed(b) => *b,
                    P2lsgBase::StreamLength if count.is_power_of_two() && count >= 2 => count,
                    P2lsgBase::StreamLength => {
                        return Err(Error::config(format!(
                            "base N needs a power-of-two stream length, got {count}"
                        )))
                    }
                };
                let bits = bits.unwrap_or_else(|| log2_ceil(count).max(1));
                let config = P2lsgConfig::new(base, bits)?;
                Ok(p2lsg_sequence(&config, count)?
                    .into_iter()
                    .map(|value| Sample::Integer { value, bits })
                    .collect())
            }
            SequenceSpec::Vdc { base } => exact(&|i| radical::gen_vdc(*base, i)),
            SequenceSpec::Halton { prime } => exact(&|i| radical::gen_halton(*prime, i)),
            SequenceSpec::Hammersley { dimension } => {
                if *dimension > 1 {
                    return Err(Error::config(format!(
                        "Hammersley has coordinates 0 and 1, got {dimension}"
                    )));
                }
                exact(&|i| {
                    let (a, b) = radical::gen_hammersley_pair(i);
                    Ok(if *dimension == 0 { a } else { b })
                })
            }
            SequenceSpec::Faure { prime, dimension } => {
                exact(&|i| radical::gen_faure(*prime, *dimension, i))
            }
            SequenceSpec::Sobol { dimension, order, skip } => {
                let bits = NET_BITS.max(log2_ceil(count + skip));
                let dva = DirectionVectorArray::joe_kuo(*dimension, bits)?;
                let all = sobol::gen_sobol_ordered(&dva, count + skip, *order)?;
                Ok(all[*skip as usize..]
                    .iter()
                    .map(|&value| Sample::Integer { value, bits })
                    .collect())
            }
            SequenceSpec::Niederreiter { dimension, order, skip } => {
                let bits = NET_BITS;
                Ok(
                    niederreiter::gen_niederreiter_ordered(*dimension, count, bits, *order, *skip)?
                        .into_iter()
                        .map(|value| Sample::Integer { value, bits })
                        .collect(),
                )
            }
            SequenceSpec::Weyl { alpha } => Ok((0..count)
                .map(|i| Sample::Fixed(additive::gen_weyl(*alpha, i)))
                .collect()),
            SequenceSpec::R2 { dimension } => (0..count)
                .map(|i| additive::gen_r2(*dimension, i).map(Sample::Fixed))
                .collect(),
            SequenceSpec::LatinHypercube { seed } => {
                let seed = self.require_seed(*seed)?;
                Ok(random::gen_latin_hypercube(count, seed)?
                    .into_iter()
                    .map(Sample::Exact)
                    .collect())
            }
            SequenceSpec::PoissonDisk { seed, min_distance, max_attempts } => {
                let seed = self.require_seed(*seed)?;
                let r = min_distance.unwrap_or_else(|| Ratio::new(1, 4 * count as u128));
                Ok(random::gen_poisson_disk(count, r, seed, *max_attempts)?
                    .into_iter()
                    .map(Sample::Exact)
                    .collect())
            }
            SequenceSpec::Lfsr { taps, seed } => {
                let reg = lfsr::Lfsr::new(*taps, *seed)?;
                let bits = reg.bits();
                Ok(reg.take(count as usize).map(|value| Sample::Integer { value, bits }).collect())
            }
        }
    }

    pub fn unit_values(&self, count: u64) -> Result<Vec<Frac64>> {
        Ok(self.samples(count)?.iter().map(Sample::to_frac64).collect())
    }

    /// Comparator thresholds `floor(v_i * 2^bits)` for the first `count`
    /// outputs. A `bits`-bit input `k` exceeds `v_i` exactly when it exceeds
    /// this threshold.
    pub fn thresholds(&self, count: u64, bits: u32) -> Result<Thresholds> {
        let values = self
            .unit_values(count)?
            .into_iter()
            .map(|f| f.quantize(bits))
            .collect();
        Thresholds::new(bits, values)
    }

    /// Parses a comma-separated list of specs. A token holding `=` but no
    /// `:` continues the previous spec's parameter list.
    pub fn parse_list(text: &str) -> Result<Vec<SequenceSpec>> {
        let mut groups: Vec<String> = Vec::new();
        for token in text.split(',').map(str::trim) {
            if token.is_empty() {
                return Err(Error::config(format!("empty entry in sequence list '{text}'")));
            }
            match groups.last_mut() {
                Some(last) if token.contains('=') && !token.contains(':') => {
                    last.push(',');
                    last.push_str(token);
                }
                _ => groups.push(token.to_string()),
            }
        }
        groups.iter().map(|g| g.parse()).collect()
    }
}

fn parse_u64(key: &str, value: &str) -> Result<u64> {
    let parsed = match value.strip_prefix("0x").or_else(|| value.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => value.parse(),
    };
    parsed.map_err(|_| Error::config(format!("{key}={value} is not an unsigned integer")))
}

/// `a/b` or a plain decimal such as `0.05`.
fn parse_unit_ratio(key: &str, value: &str) -> Result<UnitRatio> {
    let bad = || Error::config(format!("{key}={value} is not a fraction in (0, 1)"));
    let r = if let Some((n, d)) = value.split_once('/') {
        let (n, d): (u128, u128) = (n.parse().map_err(|_| bad())?, d.parse().map_err(|_| bad())?);
        if d == 0 {
            return Err(bad());
        }
        Ratio::new(n, d)
    } else {
        let (int, frac) = value.split_once('.').unwrap_or((value, ""));
        if frac.len() > 30 || !int.bytes().chain(frac.bytes()).all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let digits = format!("{int}{frac}");
        let n: u128 = digits.parse().map_err(|_| bad())?;
        Ratio::new(n, 10u128.pow(frac.len() as u32))
    };
    if r == Ratio::from_integer(0) || r >= Ratio::from_integer(1) {
        return Err(bad());
    }
    Ok(r)
}

fn parse_order(value: &str) -> Result<NetOrder> {
    match value {
        "natural" => Ok(NetOrder::Natural),
        "gray" => Ok(NetOrder::GrayCode),
        other => Err(Error::config(format!("order={other}: expected natural or gray"))),
    }
}

impl FromStr for SequenceSpec {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let (name, params) = text.split_once(':').unwrap_or((text, ""));
        let mut pairs: Vec<(&str, &str)> = Vec::new();
        for item in params.split(',').filter(|s| !s.is_empty()) {
            let (k, v) = item
                .split_once('=')
                .ok_or_else(|| Error::config(format!("'{item}' in '{text}' is not key=value")))?;
            pairs.push((k.trim(), v.trim()));
        }
        let mut spec = match name.trim() {
            "p2lsgN" | "p2lsgn" => SequenceSpec::p2lsg_n(),
            "p2lsg" => SequenceSpec::p2lsg(2),
            n if n.starts_with("p2lsg") => SequenceSpec::p2lsg(parse_u64("base", &n[5..])?),
            "vdc" => SequenceSpec::Vdc { base: 2 },
            "halton" => SequenceSpec::Halton { prime: 2 },
            "hammersley" => SequenceSpec::Hammersley { dimension: 0 },
            "faure" => SequenceSpec::Faure { prime: 2, dimension: 0 },
            "sobol" => SequenceSpec::sobol(1),
            "niederreiter" => SequenceSpec::niederreiter(0),
            "weyl" => SequenceSpec::Weyl { alpha: Irrational::PI },
            "r2" => SequenceSpec::R2 { dimension: 0 },
            "lhs" | "latin_hypercube" => SequenceSpec::LatinHypercube { seed: None },
            "poisson" | "poisson_disk" => SequenceSpec::PoissonDisk {
                seed: None,
                min_distance: None,
                max_attempts: DEFAULT_POISSON_ATTEMPTS,
            },
            "lfsr" => SequenceSpec::Lfsr { taps: lfsr::DEFAULT_TAPS, seed: lfsr::DEFAULT_SEED },
            other => return Err(Error::config(format!("unknown sequence family '{other}'"))),
        };
        for (key, value) in pairs {
            let family = spec.family();
            match (&mut spec, key) {
                (SequenceSpec::P2lsg { base, .. }, "base") => {
                    *base = if value == "N" || value == "n" {
                        P2lsgBase::StreamLength
                    } else {
                        P2lsgBase::Fixed(parse_u64(key, value)?)
                    }
                }
                (SequenceSpec::P2lsg { bits, .. }, "bits") => {
                    *bits = Some(parse_u64(key, value)? as u32)
                }
                (SequenceSpec::Vdc { base }, "base") => *base = parse_u64(key, value)?,
                (SequenceSpec::Halton { prime }, "prime" | "base")
                | (SequenceSpec::Faure { prime, .. }, "prime" | "base") => {
                    *prime = parse_u64(key, value)?
                }
                (SequenceSpec::Hammersley { dimension }, "dim")
                | (SequenceSpec::R2 { dimension }, "dim") => {
                    *dimension = parse_u64(key, value)? as u32
                }
                (SequenceSpec::Faure { dimension, .. }, "dim") => *dimension = parse_u64(key, value)?,
                (SequenceSpec::Sobol { dimension, .. }, "dim")
                | (SequenceSpec::Niederreiter { dimension, .. }, "dim") => {
                    *dimension = parse_u64(key, value)? as usize
                }
                (SequenceSpec::Sobol { order, .. }, "order")
                | (SequenceSpec::Niederreiter { order, .. }, "order") => *order = parse_order(value)?,
                (SequenceSpec::Sobol { skip, .. }, "skip")
                | (SequenceSpec::Niederreiter { skip, .. }, "skip") => *skip = parse_u64(key, value)?,
                (SequenceSpec::Weyl { alpha }, "alpha") => *alpha = Irrational::parse(value)?,
                (SequenceSpec::LatinHypercube { seed }, "seed")
                | (SequenceSpec::PoissonDisk { seed, .. }, "seed") => {
                    *seed = Some(parse_u64(key, value)?)
                }
                (SequenceSpec::PoissonDisk { min_distance, .. }, "r") => {
                    *min_distance = Some(parse_unit_ratio(key, value)?)
                }
                (SequenceSpec::PoissonDisk { max_attempts, .. }, "attempts") => {
                    *max_attempts = parse_u64(key, value)?
                }
                (SequenceSpec::Lfsr { taps, .. }, "taps") => *taps = parse_u64(key, value)?,
                (SequenceSpec::Lfsr { taps, .. }, "bits") => {
                    *taps = lfsr::maximal_taps(parse_u64(key, value)? as u32)?
                }
                (SequenceSpec::Lfsr { seed, .. }, "seed") => *seed = parse_u64(key, value)?,
                _ => {
                    return Err(Error::config(format!("'{key}' is not a parameter of {family}")))
                }
            }
        }
        Ok(spec)
    }
}

impl fmt::Display for SequenceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let order = |o: &NetOrder| match o {
            NetOrder::Natural => "natural",
            NetOrder::GrayCode => "gray",
        };
        match self {
            SequenceSpec::P2lsg { base, bits } => {
                match base {
                    P2lsgBase::Fixed(b) => write!(f, "p2lsg:base={b}")?,
                    P2lsgBase::StreamLength => write!(f, "p2lsg:base=N")?,
                }
                match bits {
                    Some(n) => write!(f, ",bits={n}"),
                    None => Ok(()),
                }
            }
            SequenceSpec::Vdc { base } => write!(f, "vdc:base={base}"),
            SequenceSpec::Halton { prime } => write!(f, "halton:prime={prime}"),
            SequenceSpec::Hammersley { dimension } => write!(f, "hammersley:dim={dimension}"),
            SequenceSpec::Faure { prime, dimension } => write!(f, "faure:prime={prime},dim={dimension}"),
            SequenceSpec::Sobol { dimension, order: o, skip } => {
                write!(f, "sobol:dim={dimension},order={},skip={skip}", order(o))
            }
            SequenceSpec::Niederreiter { dimension, order: o, skip } => {
                write!(f, "niederreiter:dim={dimension},order={},skip={skip}", order(o))
            }
            SequenceSpec::Weyl { alpha } => write!(f, "weyl:alpha={alpha}"),
            SequenceSpec::R2 { dimension } => write!(f, "r2:dim={dimension}"),
            SequenceSpec::LatinHypercube { seed } => match seed {
                Some(s) => write!(f, "lhs:seed={s}"),
                None => write!(f, "lhs"),
            },
            SequenceSpec::PoissonDisk { seed, min_distance, max_attempts } => {
                write!(f, "poisson:attempts={max_attempts}")?;
                if let Some(s) = seed {
                    write!(f, ",seed={s}")?;
                }
                if let Some(r) = min_distance {
                    write!(f, ",r={r}")?;
                }
                Ok(())
            }
            SequenceSpec::Lfsr { taps, seed } => write!(f, "lfsr:taps={taps:#x},seed={seed}"),
        }
    }
}
