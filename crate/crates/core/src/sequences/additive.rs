//! Additive recurrences `frac(i * alpha)`: Weyl and R2.
//!
//! The constant is held as a 128-bit binary fraction and the product is
//! taken modulo 2^128 with integer arithmetic, so every output is
//! bit-reproducible. Outputs keep the top 64 fractional bits.

use std::fmt;
use std::str::FromStr;

use super::Frac64;
use crate::error::{Error, Result};

/// Fractional part of an irrational constant, as `frac / 2^128`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Irrational {
    frac: u128,
}

impl Irrational {
    /// pi mod 1.
    pub const PI: Irrational = Irrational {
        frac: 0x243f6a8885a308d313198a2e03707344,
    };
    /// sqrt(2) - 1.
    pub const SILVER: Irrational = Irrational {
        frac: 0x6a09e667f3bcc908b2fb1366ea957d3e,
    };
    /// 1 / rho, rho the real root of x^3 = x + 1.
    pub const PLASTIC_INV: Irrational = Irrational {
        frac: 0xc13fa9a902a6328f434ff71b2d97724b,
    };
    /// 1 / rho^2.
    pub const PLASTIC_INV_SQ: Irrational = Irrational {
        frac: 0x91e10da5c79e7b1cd438a0a8e6c9c0fc,
    };

    pub const fn from_fraction_bits(frac: u128) -> Self {
        Self { frac }
    }

    pub fn fraction_bits(&self) -> u128 {
        self.frac
    }

    pub fn to_f64(self) -> f64 {
        (self.frac >> 64) as f64 / 2f64.powi(64) + (self.frac as u64) as f64 / 2f64.powi(128)
    }

    /// Parses a positive decimal such as `3.14159265358979323846`; only the
    /// fractional part is kept.
    pub fn parse_decimal(text: &str) -> Result<Self> {
        let text = text.trim();
        let bad = || Error::config(format!("'{text}' is not a positive decimal number"));
        let (int_part, frac_part) = text.split_once('.').unwrap_or((text, ""));
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(bad());
        }
        if !int_part.bytes().all(|b| b.is_ascii_digit())
            || !frac_part.bytes().all(|b| b.is_ascii_digit())
        {
            return Err(bad());
        }
        let mut digits: Vec<u8> = frac_part.bytes().map(|b| b - b'0').collect();
        // Repeated doubling of the decimal fraction peels off binary digits.
        let mut frac = 0u128;
        for _ in 0..128 {
            let mut carry = 0u8;
            for d in digits.iter_mut().rev() {
                let v = *d * 2 + carry;
                *d = v % 10;
                carry = v / 10;
            }
            frac = (frac << 1) | carry as u128;
        }
        let positive = int_part.bytes().any(|b| b != b'0') || frac_part.bytes().any(|b| b != b'0');
        if !positive {
            return Err(Error::config("alpha must be positive"));
        }
        Ok(Self { frac })
    }

    /// Named constants (`pi`, `silver`, `plastic`), raw fraction bits as
    /// `0x` followed by up to 32 hex digits, or a decimal literal.
    pub fn parse(text: &str) -> Result<Self> {
        match text {
            "pi" => Ok(Self::PI),
            "silver" => Ok(Self::SILVER),
            "plastic" => Ok(Self::PLASTIC_INV),
            other => match other.strip_prefix("0x") {
                Some(hex) => {
                    let frac = u128::from_str_radix(hex, 16)
                        .ok()
                        .filter(|_| hex.len() <= 32)
                        .ok_or_else(|| Error::config(format!("'{other}' is not 128-bit hex")))?;
                    if frac == 0 {
                        return Err(Error::config("alpha must not be an integer"));
                    }
                    Ok(Self::from_fraction_bits(frac << (4 * (32 - hex.len()))))
                }
                None => Self::parse_decimal(other),
            },
        }
    }
}

impl FromStr for Irrational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

impl fmt::Display for Irrational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Self::PI => f.write_str("pi"),
            Self::SILVER => f.write_str("silver"),
            Self::PLASTIC_INV => f.write_str("plastic"),
            _ => write!(f, "0x{:032x}", self.frac),
        }
    }
}

/// `frac(index * alpha)`.
pub fn gen_weyl(alpha: Irrational, index: u64) -> Frac64 {
    Frac64((alpha.frac.wrapping_mul(index as u128) >> 64) as u64)
}

/// R2 coordinate `dimension_index` (0 or 1).
pub fn gen_r2(dimension_index: u32, index: u64) -> Result<Frac64> {
    let alpha = match dimension_index {
        0 => Irrational::PLASTIC_INV,
        1 => Irrational::PLASTIC_INV_SQ,
        d => return Err(Error::config(format!("R2 supports dimensions 0 and 1, got {d}"))),
    };
    Ok(gen_weyl(alpha, index))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn newton_plastic() -> f64 {
        let mut x = 1.5f64;
        loop {
            let next = x - (x * x * x - x - 1.0) / (3.0 * x * x - 1.0);
            if (next - x).abs() < 1e-15 {
                return next;
            }
            x = next;
        }
    }

    #[test]
    fn embedded_constants_match_independent_derivations() {
        let rho = newton_plastic();
        assert!((rho - 1.324_717_957_24).abs() < 1e-11);
        assert!((Irrational::PLASTIC_INV.to_f64() - 1.0 / rho).abs() < 1e-15);
        assert!((Irrational::PLASTIC_INV_SQ.to_f64() - 1.0 / (rho * rho)).abs() < 1e-15);
        assert!((Irrational::SILVER.to_f64() - (2f64.sqrt() - 1.0)).abs() < 1e-15);
        assert!((Irrational::PI.to_f64() - (std::f64::consts::PI - 3.0)).abs() < 1e-15);
    }

    /// Residuals of the defining polynomials in 64-bit fixed point:
    /// s^2 + 2s = 1 for s = sqrt(2) - 1 and x^3 + x^2 = 1 for x = 1/rho.
    #[test]
    fn embedded_constants_solve_their_equations() {
        let one = 1u128 << 64;
        let s = Irrational::SILVER.fraction_bits() >> 64;
        let residual = ((s * s) >> 64) + 2 * s;
        assert!(residual.abs_diff(one) <= 2, "{residual} vs {one}");
        let x = Irrational::PLASTIC_INV.fraction_bits() >> 64;
        let x2 = (x * x) >> 64;
        let x3 = (x2 * x) >> 64;
        assert!((x2 + x3).abs_diff(one) <= 4);
        let y = Irrational::PLASTIC_INV_SQ.fraction_bits() >> 64;
        assert!(y.abs_diff(x2) <= 2);
    }

    #[test]
    fn decimal_parser_matches_constants() {
        let pi = Irrational::parse_decimal("3.14159265358979323846264338327950288419716939937510")
            .unwrap();
        // 50 decimal digits pin the leading ~160 bits; compare the top 120
        assert_eq!(pi.fraction_bits() >> 8, Irrational::PI.fraction_bits() >> 8);
        assert_eq!(Irrational::parse_decimal("0.5").unwrap().fraction_bits(), 1u128 << 127);
        assert_eq!(Irrational::parse_decimal("2").unwrap().fraction_bits(), 0);
        assert!(Irrational::parse_decimal("0").is_err());
        assert!(Irrational::parse_decimal("-1.5").is_err());
        assert!(Irrational::parse_decimal("abc").is_err());
        assert_eq!(Irrational::parse("silver").unwrap(), Irrational::SILVER);
        assert_eq!(Irrational::parse("0x8").unwrap().fraction_bits(), 1u128 << 127);
        let odd = Irrational::PLASTIC_INV_SQ;
        assert_eq!(Irrational::parse(&odd.to_string()).unwrap(), odd);
    }

    #[test]
    fn weyl_examples() {
        assert_eq!(gen_weyl(Irrational::SILVER, 0), Frac64(0));
        assert!((gen_weyl(Irrational::SILVER, 1).to_f64() - 0.414_213_56).abs() < 1e-8);
        // high-precision oracle: frac(5 * 0.41421356237309504880168872) = 0.0710678118654752440084436
        assert!((gen_weyl(Irrational::SILVER, 5).to_f64() - 0.071_067_811_865_475_24).abs() < 1e-16);
    }

    #[test]
    fn weyl_matches_wide_multiply() {
        // frac(i * alpha) recomputed from the 128-bit constant with a
        // schoolbook multiply of the two 64-bit halves
        let a = Irrational::PI.fraction_bits();
        let (hi, lo) = ((a >> 64) as u64, a as u64);
        for i in [1u64, 2, 3, 1000, 65_535, 1 << 40, u64::MAX] {
            let lo_prod = lo as u128 * i as u128;
            let hi_prod = (hi as u128 * i as u128) as u64 as u128;
            let top = (hi_prod + (lo_prod >> 64)) as u64;
            assert_eq!(gen_weyl(Irrational::PI, i).0, top);
        }
    }

    #[test]
    fn r2_examples() {
        assert_eq!(gen_r2(0, 0).unwrap(), Frac64(0));
        assert!((gen_r2(0, 1).unwrap().to_f64() - 0.754_877_66).abs() < 1e-8);
        assert!((gen_r2(1, 1).unwrap().to_f64() - 0.569_840_29).abs() < 1e-8);
        assert!(gen_r2(2, 1).is_err());
    }
}
