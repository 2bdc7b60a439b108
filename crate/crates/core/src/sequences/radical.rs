//! Digit-mirroring constructions: Van der Corput, Halton, Hammersley, Faure.

use num_rational::Ratio;

use crate::error::{Error, Result};

/// Exact value in `[0, 1)`.
pub type UnitRatio = Ratio<u128>;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

fn check_base(base: u64) -> Result<()> {
    if base < 2 {
        return Err(Error::config(format!("base {base} must be at least 2")));
    }
    if base > u32::MAX as u64 {
        return Err(Error::config(format!("base {base} exceeds 32 bits")));
    }
    Ok(())
}

fn digits(mut index: u64, base: u64) -> Vec<u64> {
    let mut out = Vec::new();
    while index > 0 {
        out.push(index % base);
        index /= base;
    }
    out
}

/// Mirrors little-endian `digits` across the radix point:
/// `sum_j digits[j] * base^-(j+1)`.
fn mirror(digits: &[u64], base: u64) -> UnitRatio {
    let base = base as u128;
    let (num, den) = digits
        .iter()
        .fold((0u128, 1u128), |(num, den), &d| (num * base + d as u128, den * base));
    Ratio::new(num, den)
}

/// Radical inverse of `index` in any integer base.
pub fn gen_vdc(base: u64, index: u64) -> Result<UnitRatio> {
    check_base(base)?;
    Ok(radical_inverse(base, index))
}

pub(crate) fn radical_inverse(base: u64, index: u64) -> UnitRatio {
    mirror(&digits(index, base), base)
}

/// One Halton coordinate; identical to [`gen_vdc`] but insists on a prime base.
pub fn gen_halton(prime_base: u64, index: u64) -> Result<UnitRatio> {
    if !is_prime(prime_base) {
        return Err(Error::config(format!("{prime_base} is not prime")));
    }
    gen_vdc(prime_base, index)
}

/// Hammersley point built from bases 2 and 3.
pub fn gen_hammersley_pair(index: u64) -> (UnitRatio, UnitRatio) {
    (radical_inverse(2, index), radical_inverse(3, index))
}

fn binomial_mod(n: u64, k: u64, p: u64) -> u64 {
    // Lucas' theorem
    let (mut n, mut k) = (n, k);
    let mut acc = 1u64;
    while n > 0 || k > 0 {
        let (ni, ki) = (n % p, k % p);
        if ki > ni {
            return 0;
        }
        let mut c = 1u128;
        for j in 0..ki {
            c = c * (ni - j) as u128 / (j + 1) as u128;
        }
        acc = acc * (c % p as u128) as u64 % p;
        n /= p;
        k /= p;
    }
    acc
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// Faure coordinate `dimension` in prime base `p`.
///
/// Dimension 0 is the plain radical inverse; dimension `d` first scrambles the
/// digit vector with the `d`-th power of the upper-triangular Pascal matrix,
/// `y_r = sum_{j>=r} C(j, r) d^(j-r) a_j mod p`.
pub fn gen_faure(p: u64, dimension: u64, index: u64) -> Result<UnitRatio> {
    if !is_prime(p) {
        return Err(Error::config(format!("{p} is not prime")));
    }
    check_base(p)?;
    if dimension >= p {
        return Err(Error::config(format!(
            "Faure base {p} supports dimensions 0..{p}, got {dimension}"
        )));
    }
    let a = digits(index, p);
    if dimension == 0 {
        return Ok(radical_inverse(p, index));
    }
    let y: Vec<u64> = (0..a.len() as u64)
        .map(|r| {
            (r..a.len() as u64).fold(0u64, |acc, j| {
                let term = binomial_mod(j, r, p) * pow_mod(dimension, j - r, p) % p;
                (acc + term * a[j as usize]) % p
            })
        })
        .collect();
    Ok(mirror(&y, p))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: u128, d: u128) -> UnitRatio {
        Ratio::new(n, d)
    }

    /// Oracle: explicit digit string, mirrored, evaluated with powers of the base.
    fn digit_string_vdc(base: u64, index: u64) -> UnitRatio {
        let mut s = Vec::new();
        let mut i = index;
        while i > 0 {
            s.push(i % base);
            i /= base;
        }
        let mut acc = r(0, 1);
        let mut scale = 1u128;
        for d in s {
            scale *= base as u128;
            acc += r(d as u128, scale);
        }
        acc
    }

    #[test]
    fn vdc_examples() {
        assert_eq!(gen_vdc(3, 11).unwrap(), r(19, 27));
        assert_eq!(gen_vdc(2, 0).unwrap(), r(0, 1));
        assert_eq!(gen_vdc(7, 7).unwrap(), r(1, 49));
        assert_eq!(digit_string_vdc(7, 7), r(1, 49));
        assert!(gen_vdc(1, 3).is_err());
    }

    #[test]
    fn vdc_matches_digit_oracle() {
        for base in 2..20 {
            for i in 0..500 {
                assert_eq!(gen_vdc(base, i).unwrap(), digit_string_vdc(base, i));
            }
        }
        assert_eq!(gen_vdc(2, u64::MAX).unwrap(), digit_string_vdc(2, u64::MAX));
    }

    #[test]
    fn halton_examples() {
        assert_eq!(gen_halton(11, 1).unwrap(), r(1, 11));
        assert_eq!(gen_halton(13, 1).unwrap(), r(1, 13));
        assert_eq!(gen_halton(11, 12).unwrap(), r(12, 121));
        assert!(matches!(gen_halton(12, 1), Err(Error::Config(_))));
    }

    #[test]
    fn hammersley_examples() {
        assert_eq!(gen_hammersley_pair(0), (r(0, 1), r(0, 1)));
        assert_eq!(gen_hammersley_pair(1), (r(1, 2), r(1, 3)));
        assert_eq!(gen_hammersley_pair(2), (r(1, 4), r(2, 3)));
    }

    /// Oracle: build the Pascal matrix explicitly, raise it to the power `d`
    /// by repeated matrix multiplication mod p, and apply it to the digits.
    fn faure_matrix_oracle(p: u64, d: u64, index: u64) -> UnitRatio {
        let a = digits(index, p);
        let n = a.len().max(1);
        let mut pascal = vec![vec![0u64; n]; n];
        let mut c = vec![vec![0u64; n]; n];
        for j in 0..n {
            c[j][0] = 1;
            for k in 1..=j {
                c[j][k] = (c[j - 1][k - 1] + if k < j { c[j - 1][k] } else { 0 }) % p;
            }
        }
        for row in 0..n {
            for col in row..n {
                pascal[row][col] = c[col][row];
            }
        }
        let mut m = vec![vec![0u64; n]; n];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1;
        }
        for _ in 0..d {
            let mut next = vec![vec![0u64; n]; n];
            for i in 0..n {
                for j in 0..n {
                    next[i][j] = (0..n).map(|k| m[i][k] * pascal[k][j]).sum::<u64>() % p;
                }
            }
            m = next;
        }
        let mut acc = r(0, 1);
        let mut scale = 1u128;
        for row in m.iter().take(a.len()) {
            let y = row.iter().zip(&a).map(|(x, y)| x * y).sum::<u64>() % p;
            scale *= p as u128;
            acc += r(y as u128, scale);
        }
        acc
    }

    #[test]
    fn faure_examples() {
        assert_eq!(gen_faure(7, 0, 7).unwrap(), r(1, 49));
        assert_eq!(gen_faure(7, 1, 3).unwrap(), r(3, 7));
        assert_eq!(faure_matrix_oracle(7, 1, 3), r(3, 7));
        assert_eq!(gen_faure(7, 0, 0).unwrap(), r(0, 1));
        assert!(gen_faure(8, 1, 3).is_err());
        assert!(gen_faure(7, 7, 3).is_err());
    }

    #[test]
    fn faure_matches_matrix_power_oracle() {
        for p in [2u64, 3, 5, 7] {
            for d in 0..p.min(4) {
                for i in 0..400 {
                    assert_eq!(
                        gen_faure(p, d, i).unwrap(),
                        faure_matrix_oracle(p, d, i),
                        "p={p} d={d} i={i}"
                    );
                }
            }
        }
    }

    #[test]
    fn lucas_binomials() {
        assert_eq!(binomial_mod(10, 3, 7), 120 % 7);
        assert_eq!(binomial_mod(49, 7, 7), 0);
        assert_eq!(binomial_mod(8, 7, 7), 1);
        assert_eq!(binomial_mod(3, 5, 7), 0);
    }

    #[test]
    fn primes() {
        let ps: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(ps, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }

    #[test]
    fn vdc_prefix_is_permutation() {
        for base in [2u64, 3, 5, 7, 10] {
            for m in 1..=4u32 {
                let total = base.pow(m);
                let mut scaled: Vec<u128> = (0..total)
                    .map(|i| {
                        let v = gen_vdc(base, i).unwrap() * Ratio::from_integer(total as u128);
                        assert!(v.is_integer());
                        v.to_integer()
                    })
                    .collect();
                scaled.sort_unstable();
                assert_eq!(scaled, (0..total as u128).collect::<Vec<_>>());
            }
        }
    }
}
